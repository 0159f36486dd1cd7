#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "isocodec/errors.hpp"
#include "isocodec/graph.hpp"
#include "isocodec/perm.hpp"

namespace isocodec {

inline constexpr int kDefaultBruteLimit = 10;

// Env override for the brute-force vertex limit (ISOCODEC_BRUTE_LIMIT).
inline int brute_force_limit() {
    if (const char* s = std::getenv("ISOCODEC_BRUTE_LIMIT")) {
        int v = std::atoi(s);
        if (v >= 1) return v;
    }
    return kDefaultBruteLimit;
}

// A permutation group on [n] as an explicit element list (small-n regime),
// kept in image-list lexicographic order.
struct GroupElements {
    int n = 0;
    std::vector<Permutation> elements;

    std::uint64_t order() const { return elements.size(); }
    bool trivial() const { return elements.size() == 1; }
};

// Disjoint blocks covering a domain; blocks sorted by minimum element,
// elements ascending within each block.
struct OrbitPartition {
    std::vector<std::vector<int>> blocks;

    int block_of(int v) const {
        for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
            if (std::binary_search(blocks[b].begin(), blocks[b].end(), v)) return b;
        throw RangeError("vertex not covered by partition");
    }

    bool operator==(const OrbitPartition&) const = default;
};

namespace detail {

// Enumerates color/adjacency-preserving bijections g -> h in lexicographic
// image order; stops when visit returns false. Prunes on the first violated
// adjacency row.
inline void for_each_isomorphism(const ColoredGraph& g, const ColoredGraph& h,
                                 const std::function<bool(const Permutation&)>& visit) {
    const int n = g.n();
    if (h.n() != n) return;

    std::vector<int> deg_g(n + 1), deg_h(n + 1);
    for (int v = 1; v <= n; ++v) {
        deg_g[v] = g.graph.degree(v);
        deg_h[v] = h.graph.degree(v);
    }
    {
        auto a = deg_g, b = deg_h;
        std::sort(a.begin() + 1, a.end());
        std::sort(b.begin() + 1, b.end());
        if (a != b) return;
        auto ca = g.color, cb = h.color;
        std::sort(ca.begin(), ca.end());
        std::sort(cb.begin(), cb.end());
        if (ca != cb) return;
    }

    std::vector<int> img(n + 1, 0);
    std::vector<char> used(n + 1, 0);
    bool stop = false;

    std::function<void(int)> rec = [&](int v) {
        if (stop) return;
        if (v > n) {
            std::vector<int> images(img.begin() + 1, img.end());
            if (!visit(Permutation(std::move(images)))) stop = true;
            return;
        }
        for (int c = 1; c <= n && !stop; ++c) {
            if (used[c]) continue;
            if (g.color[v - 1] != h.color[c - 1]) continue;
            if (deg_g[v] != deg_h[c]) continue;
            bool ok = true;
            for (int u = 1; u < v; ++u) {
                if (g.graph.edge(u, v) != h.graph.edge(img[u], c)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            img[v] = c;
            used[c] = 1;
            rec(v + 1);
            used[c] = 0;
            img[v] = 0;
        }
    };
    rec(1);
}

}  // namespace detail

// First isomorphism g -> h in lexicographic order, if any.
inline std::optional<Permutation> find_isomorphism(const ColoredGraph& g, const ColoredGraph& h) {
    std::optional<Permutation> found;
    detail::for_each_isomorphism(g, h, [&](const Permutation& p) {
        found = p;
        return false;
    });
    return found;
}

// All color-preserving automorphisms, by exhaustive pruned search.
inline GroupElements automorphism_group(const ColoredGraph& g, int limit = brute_force_limit()) {
    if (g.n() > limit)
        throw CapabilityError("automorphism search limited to n <= " + std::to_string(limit) +
                              "; lower n or raise ISOCODEC_BRUTE_LIMIT");
    GroupElements out;
    out.n = g.n();
    detail::for_each_isomorphism(g, g, [&](const Permutation& p) {
        out.elements.push_back(p);
        return true;
    });
    return out;
}

inline bool is_rigid(const ColoredGraph& g, int limit = brute_force_limit()) {
    return automorphism_group(g, limit).order() == 1;
}

// Orbits of `domain` under the group, in canonical partition order. The
// domain must be closed under the group action.
inline OrbitPartition orbits(const GroupElements& group, const std::vector<int>& domain) {
    std::vector<char> in_domain(group.n + 1, 0), seen(group.n + 1, 0);
    for (int v : domain) {
        if (v < 1 || v > group.n) throw RangeError("orbit domain outside [n]");
        in_domain[v] = 1;
    }
    std::vector<int> sorted_domain = domain;
    std::sort(sorted_domain.begin(), sorted_domain.end());

    OrbitPartition part;
    for (int v : sorted_domain) {
        if (seen[v]) continue;
        std::set<int> orbit;
        for (const Permutation& p : group.elements) {
            int u = p(v);
            if (!in_domain[u]) throw Error("orbit escapes the domain");
            orbit.insert(u);
        }
        std::vector<int> block(orbit.begin(), orbit.end());
        for (int u : block) seen[u] = 1;
        part.blocks.push_back(std::move(block));
    }
    return part;
}

inline std::vector<int> full_domain(int n) {
    std::vector<int> d(n);
    std::iota(d.begin(), d.end(), 1);
    return d;
}

// A_0 >= A_1 >= ... >= A_n where A_i fixes 1..i pointwise; each level keeps
// its elements, order, and orbit partition of the whole domain.
struct StabilizerChain {
    struct Level {
        GroupElements group;
        OrbitPartition orbit_partition;  // of [n]
        std::uint64_t order = 0;
    };
    int n = 0;
    std::vector<Level> levels;  // size n+1

    const Level& level(int i) const { return levels[i]; }
};

inline StabilizerChain stabilizer_chain(const GroupElements& aut, int n) {
    StabilizerChain chain;
    chain.n = n;
    chain.levels.resize(n + 1);
    GroupElements current = aut;
    for (int i = 0; i <= n; ++i) {
        if (i > 0) {
            GroupElements next;
            next.n = n;
            for (const Permutation& p : current.elements)
                if (p(i) == i) next.elements.push_back(p);
            current = std::move(next);
        }
        chain.levels[i].group = current;
        chain.levels[i].order = current.order();
        chain.levels[i].orbit_partition = orbits(current, full_domain(n));
    }
    return chain;
}

// Lexicographically least element of the left coset {p∘a : a in aut}.
inline Permutation canonical_coset_rep(const GroupElements& aut, const Permutation& p) {
    if (aut.n != p.n()) throw DimensionError("canonical_coset_rep: mismatched n");
    Permutation best = p;
    for (const Permutation& a : aut.elements) {
        Permutation cand = compose(p, a);
        if (cand < best) best = cand;
    }
    return best;
}

namespace detail {

inline std::set<Permutation> generated_subgroup(int n, const std::vector<Permutation>& gens) {
    std::set<Permutation> closure;
    closure.insert(identity_perm(n));
    std::vector<Permutation> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const Permutation& x : frontier)
            for (const Permutation& g : gens) {
                Permutation y = compose(g, x);
                if (closure.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return closure;
}

}  // namespace detail

// Greedy generating subset, then pruned so no generator is redundant.
inline std::vector<Permutation> minimal_generators(const GroupElements& group) {
    std::vector<Permutation> gens;
    std::set<Permutation> have;
    have.insert(identity_perm(group.n));
    for (const Permutation& p : group.elements) {
        if (have.count(p)) continue;
        gens.push_back(p);
        have = detail::generated_subgroup(group.n, gens);
    }
    for (std::size_t i = 0; i < gens.size();) {
        std::vector<Permutation> rest;
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (j != i) rest.push_back(gens[j]);
        if (detail::generated_subgroup(group.n, rest).size() == group.order())
            gens = std::move(rest);
        else
            ++i;
    }
    return gens;
}

}  // namespace isocodec
