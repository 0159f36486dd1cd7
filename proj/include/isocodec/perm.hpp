#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "isocodec/bignat.hpp"
#include "isocodec/errors.hpp"
#include "isocodec/rng.hpp"

namespace isocodec {

// Bijection on [n], 1-based. images[i-1] is the image of point i.
struct Permutation {
    std::vector<int> images;

    Permutation() = default;
    explicit Permutation(std::vector<int> imgs) : images(std::move(imgs)) {
        validate();
    }

    int n() const { return static_cast<int>(images.size()); }
    int operator()(int i) const { return images[i - 1]; }

    bool is_identity() const {
        for (int i = 1; i <= n(); ++i)
            if (images[i - 1] != i) return false;
        return true;
    }

    // Image-list (lexicographic) order.
    auto operator<=>(const Permutation&) const = default;

private:
    void validate() const {
        std::vector<char> seen(images.size(), 0);
        for (int v : images) {
            if (v < 1 || v > n() || seen[v - 1]) throw ParseError("not a bijection of [n]");
            seen[v - 1] = 1;
        }
    }
};

inline Permutation identity_perm(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    return Permutation(std::move(img));
}

// (p∘q)(i) = p(q(i)): q is applied first.
inline Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.n() != q.n()) throw DimensionError("compose: mismatched n");
    std::vector<int> img(p.n());
    for (int i = 1; i <= p.n(); ++i) img[i - 1] = p(q(i));
    return Permutation(std::move(img));
}

inline Permutation inverse(const Permutation& p) {
    std::vector<int> img(p.n());
    for (int i = 1; i <= p.n(); ++i) img[p(i) - 1] = i;
    return Permutation(std::move(img));
}

// Rank within the lexicographic enumeration of S_n: identity -> 0,
// [n, n-1, ..., 1] -> n!-1.
inline BigNat lehmer_rank(const Permutation& p) {
    int n = p.n();
    BigNat rank = 0;
    BigNat fact = factorial(n);
    for (int i = 0; i < n; ++i) {
        fact /= n - i;
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (p.images[j] < p.images[i]) ++smaller;
        rank += smaller * fact;
    }
    return rank;
}

inline Permutation lehmer_unrank(int n, const BigNat& r) {
    if (r < 0 || r >= factorial(n)) throw RangeError("lehmer_unrank: rank out of [0, n!)");
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> img;
    img.reserve(n);
    BigNat rem = r;
    BigNat fact = factorial(n);
    for (int i = 0; i < n; ++i) {
        fact /= n - i;
        BigNat digit = rem / fact;
        rem %= fact;
        int d = static_cast<int>(digit);
        img.push_back(pool[d]);
        pool.erase(pool.begin() + d);
    }
    return Permutation(std::move(img));
}

inline Permutation random_permutation(int n, std::mt19937_64& rng) {
    return lehmer_unrank(n, uniform_bignat_below(rng, factorial(n)));
}

// Text form: space-separated image list, e.g. "2 3 1".
inline std::string format_permutation(const Permutation& p) {
    std::ostringstream os;
    for (int i = 0; i < p.n(); ++i) {
        if (i) os << ' ';
        os << p.images[i];
    }
    return os.str();
}

inline Permutation parse_permutation(const std::string& text) {
    std::istringstream is(text);
    std::vector<int> img;
    int v;
    while (is >> v) img.push_back(v);
    if (img.empty()) throw ParseError("empty permutation");
    return Permutation(std::move(img));
}

}  // namespace isocodec
