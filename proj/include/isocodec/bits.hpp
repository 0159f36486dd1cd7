#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isocodec/bignat.hpp"
#include "isocodec/errors.hpp"

namespace isocodec {

// Dynamic bit string. Bit 0 is the first bit written; in serialized bytes the
// first bit occupies the most significant position of byte 0.
class Bits {
public:
    Bits() = default;

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool operator[](std::size_t i) const {
        return (words_[i >> 6] >> (63 - (i & 63))) & 1u;
    }

    void push_back(bool b) {
        if ((size_ & 63) == 0) words_.push_back(0);
        if (b) words_.back() |= std::uint64_t{1} << (63 - (size_ & 63));
        ++size_;
    }

    void append(const Bits& other) {
        for (std::size_t i = 0; i < other.size_; ++i) push_back(other[i]);
    }

    // value's bits from position width-1 down to 0 (most significant first).
    void append_uint(std::uint64_t value, unsigned width) {
        for (unsigned i = width; i-- > 0;) push_back((value >> i) & 1u);
    }

    void append_bignat(const BigNat& value, unsigned width) {
        for (unsigned i = width; i-- > 0;) push_back(boost::multiprecision::bit_test(value, i));
    }

    std::uint64_t read_uint(std::size_t pos, unsigned width) const {
        std::uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i) v = (v << 1) | std::uint64_t((*this)[pos + i]);
        return v;
    }

    BigNat read_bignat(std::size_t pos, unsigned width) const {
        BigNat v = 0;
        for (unsigned i = 0; i < width; ++i) {
            v <<= 1;
            if ((*this)[pos + i]) v |= 1;
        }
        return v;
    }

    std::string to_string01() const {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if ((*this)[i]) s[i] = '1';
        return s;
    }

    static Bits from_string01(const std::string& s) {
        Bits b;
        for (char c : s) {
            if (c != '0' && c != '1') throw ParseError("bit string must be 0/1");
            b.push_back(c == '1');
        }
        return b;
    }

    std::vector<std::uint8_t> to_bytes() const {
        std::vector<std::uint8_t> out((size_ + 7) / 8, 0);
        for (std::size_t i = 0; i < size_; ++i)
            if ((*this)[i]) out[i >> 3] |= std::uint8_t(0x80u >> (i & 7));
        return out;
    }

    // bit_count must be recorded out of band; trailing pad bits are dropped.
    static Bits from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t bit_count) {
        if (bit_count > bytes.size() * 8) throw ParseError("byte buffer shorter than bit count");
        Bits b;
        for (std::size_t i = 0; i < bit_count; ++i)
            b.push_back((bytes[i >> 3] >> (7 - (i & 7))) & 1u);
        return b;
    }

    bool operator==(const Bits& other) const {
        if (size_ != other.size_) return false;
        for (std::size_t i = 0; i < size_; ++i)
            if ((*this)[i] != other[i]) return false;
        return true;
    }

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

}  // namespace isocodec
