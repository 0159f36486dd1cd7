#pragma once

#include <stdexcept>
#include <string>

namespace isocodec {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inputs of incompatible size (e.g. composing permutations on different [n]).
struct DimensionError : Error {
    using Error::Error;
};

// Malformed textual or binary input.
struct ParseError : Error {
    using Error::Error;
};

// A numeric argument outside its admissible range.
struct RangeError : Error {
    using Error::Error;
};

// Request exceeds the configured brute-force limit.
struct CapabilityError : Error {
    using Error::Error;
};

// encode() was handed a graph that is not a copy of the base graph.
struct NotIsomorphicError : Error {
    using Error::Error;
};

}  // namespace isocodec
