#pragma once

#include <vector>

#include "isocodec/bignat.hpp"
#include "isocodec/errors.hpp"

namespace isocodec {

// Colexicographic rank of a k-subset of [n] (combinatorial number system):
// {1..k} -> 0, {n-k+1..n} -> C(n,k)-1.
inline BigNat subset_rank(int n, const std::vector<int>& subset) {
    BigNat r = 0;
    int prev = 0;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        int c = subset[i];
        if (c <= prev || c > n) throw RangeError("subset must be strictly increasing within [n]");
        prev = c;
        r += binomial(c - 1, static_cast<int>(i) + 1);
    }
    return r;
}

inline std::vector<int> subset_unrank(int n, int k, const BigNat& rank) {
    if (k < 0 || k > n) throw RangeError("subset_unrank: k out of [0, n]");
    if (rank < 0 || rank >= binomial(n, k)) throw RangeError("subset_unrank: rank out of range");
    std::vector<int> out(k);
    BigNat rem = rank;
    int hi = n;
    for (int i = k; i >= 1; --i) {
        // largest c with C(c-1, i) <= rem
        int c = i;  // C(i-1, i) = 0 <= rem always
        for (int cand = hi; cand >= i; --cand) {
            if (binomial(cand - 1, i) <= rem) {
                c = cand;
                break;
            }
        }
        rem -= binomial(c - 1, i);
        out[i - 1] = c;
        hi = c - 1;
    }
    return out;
}

// Mixed-radix packing, first value least significant:
// x = v1 + r1*(v2 + r2*(v3 + ...)).
inline BigNat radix_pack(const std::vector<BigNat>& values, const std::vector<BigNat>& radices) {
    if (values.size() != radices.size()) throw DimensionError("radix_pack: length mismatch");
    BigNat x = 0;
    for (std::size_t i = values.size(); i-- > 0;) {
        if (values[i] < 0 || values[i] >= radices[i])
            throw RangeError("radix_pack: value out of its radix");
        x = x * radices[i] + values[i];
    }
    return x;
}

inline std::vector<BigNat> radix_unpack(const BigNat& x, const std::vector<BigNat>& radices) {
    BigNat product = 1;
    for (const BigNat& r : radices) product *= r;
    if (x < 0 || x >= product) throw RangeError("radix_unpack: value out of range");
    std::vector<BigNat> out(radices.size());
    BigNat rem = x;
    for (std::size_t i = 0; i < radices.size(); ++i) {
        out[i] = rem % radices[i];
        rem /= radices[i];
    }
    return out;
}

// Streaming forms of radix_pack/radix_unpack with the same digit layout;
// the codec emits and consumes choices in one fixed order.
class RadixWriter {
public:
    void push(const BigNat& value, const BigNat& radix) {
        if (value < 0 || value >= radix) throw RangeError("RadixWriter: value out of its radix");
        value_ += multiplier_ * value;
        multiplier_ *= radix;
    }
    const BigNat& value() const { return value_; }
    const BigNat& range() const { return multiplier_; }

private:
    BigNat value_ = 0;
    BigNat multiplier_ = 1;
};

class RadixReader {
public:
    explicit RadixReader(BigNat value) : rem_(std::move(value)) {}
    BigNat pull(const BigNat& radix) {
        BigNat v = rem_ % radix;
        rem_ /= radix;
        return v;
    }
    const BigNat& remainder() const { return rem_; }

private:
    BigNat rem_;
};

}  // namespace isocodec
