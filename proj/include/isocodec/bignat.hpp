#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "isocodec/errors.hpp"

namespace isocodec {

// Arbitrary-precision natural number. All encodings in this library are exact
// integer arithmetic; values routinely reach n! and (n!)^b, so a fixed-width
// carrier is not an option.
using BigNat = boost::multiprecision::cpp_int;

inline BigNat factorial(int n) {
    BigNat r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// C(n, k), 0 when k < 0 or k > n.
inline BigNat binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigNat r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline BigNat pow_nat(const BigNat& base, unsigned exp) {
    BigNat r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

// Number of bits in the binary representation; 0 for value 0.
inline unsigned bit_length(const BigNat& x) {
    if (x == 0) return 0;
    return boost::multiprecision::msb(x) + 1;
}

// Bits needed to store any value in [0, count-1]; 0 when count <= 1.
inline unsigned bits_for_range(const BigNat& count) {
    if (count <= 1) return 0;
    return bit_length(count - 1);
}

inline std::string to_decimal(const BigNat& x) { return x.str(); }

inline BigNat from_decimal(const std::string& s) {
    if (s.empty()) throw ParseError("empty number");
    for (char c : s)
        if (c < '0' || c > '9') throw ParseError("not a decimal natural: " + s);
    return BigNat(s);
}

}  // namespace isocodec
