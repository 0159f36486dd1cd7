#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <utility>
#include <vector>

#include "isocodec/bignat.hpp"
#include "isocodec/bits.hpp"
#include "isocodec/errors.hpp"
#include "isocodec/graph.hpp"
#include "isocodec/group.hpp"
#include "isocodec/ranks.hpp"

namespace isocodec {

// Everything a decoder needs to rebuild any copy of G from its code: the
// orbit partition of the full automorphism group, the stabilizer orbit
// partitions at every level with per-orbit adjacency flags, and the vertex
// colors of the base graph. Holds no group elements.
struct AuxData {
    struct Level {
        OrbitPartition orbits;                    // of V \ [i]
        std::vector<std::uint8_t> neighbor_of_i;  // per block: adjacent to vertex i
    };

    int n = 0;
    std::vector<int> base_color;  // colors of G, size n
    OrbitPartition full_orbits;   // orbits of Aut(G) on [n]
    std::vector<Level> levels;    // levels[i-1] describes stabilizer level i, i = 1..n
};

// Identifies one copy of G among the n!/|Aut(G)| distinct copies.
// value is 0-based; range * |Aut(G)| = n!.
struct CosetCode {
    BigNat value;
    BigNat range;
};

// Per-stage bookkeeping of the encoding: the cumulative range consumed, the
// color-class sizes, and the group orders on both sides of the stage
// identity r_i * |Aut(H_i)| / |Aut(G_i)| = n!/|Aut(G)|.
struct StageTrace {
    struct Stage {
        int index = 0;                // -1 .. n
        BigNat consumed;              // r_i, cumulative
        BigNat multiplier;            // r_i / r_{i-1}
        std::vector<int> class_sizes; // n_{i,j}, canonical order, covering [n]
        BigNat aut_h;                 // prod_j n_{i,j}!
        std::uint64_t aut_g = 0;      // |Aut(G_i)| = |A_i|
    };
    std::vector<Stage> stages;  // size n+2
    BigNat total_range;
};

// One subset choice of the encoding: pick `take` elements out of an `avail`
// pool. The whole slot sequence, and hence the code range, depends only on
// the aux data.
struct ChoiceSlot {
    int stage = 0;         // 0 .. n
    int parent_block = -1; // index in the stage's parent partition; -1 = universe
    int child_block = 0;   // index in the stage's own partition
    int avail = 0;
    int take = 0;
    BigNat radix;
};

struct StagePlan {
    std::vector<ChoiceSlot> slots;
    BigNat range;                              // product of all radices
    std::vector<BigNat> stage_multiplier;      // per stage 0..n
    std::vector<std::vector<int>> child_parent;// child_parent[i-1][c]: parent block of child c at level i
};

namespace detail {

inline const OrbitPartition& parent_partition(const AuxData& aux, int stage) {
    return stage == 1 ? aux.full_orbits : aux.levels[stage - 2].orbits;
}

inline std::vector<int> positions_in_pool(const std::vector<int>& pool,
                                          const std::vector<int>& chosen) {
    std::vector<int> pos;
    pos.reserve(chosen.size());
    for (int v : chosen) {
        auto it = std::lower_bound(pool.begin(), pool.end(), v);
        if (it == pool.end() || *it != v) throw Error("chosen element not in pool");
        pos.push_back(static_cast<int>(it - pool.begin()) + 1);
    }
    std::sort(pos.begin(), pos.end());
    return pos;
}

inline std::vector<int> select_positions(const std::vector<int>& pool,
                                         const std::vector<int>& positions) {
    std::vector<int> out;
    out.reserve(positions.size());
    for (int p : positions) out.push_back(pool[p - 1]);
    return out;
}

inline void remove_from_pool(std::vector<int>& pool, const std::vector<int>& chosen) {
    std::vector<int> rest;
    rest.reserve(pool.size() - chosen.size());
    std::size_t k = 0;
    for (int v : pool) {
        if (k < chosen.size() && chosen[k] == v) {
            ++k;
            continue;
        }
        rest.push_back(v);
    }
    if (k != chosen.size()) throw Error("removal element not in pool");
    pool = std::move(rest);
}

inline std::vector<int> image_of_block(const Permutation& pi, const std::vector<int>& block) {
    std::vector<int> img;
    img.reserve(block.size());
    for (int v : block) img.push_back(pi(v));
    std::sort(img.begin(), img.end());
    return img;
}

}  // namespace detail

inline StagePlan build_plan(const AuxData& aux) {
    StagePlan plan;
    plan.range = 1;
    plan.stage_multiplier.assign(aux.n + 1, BigNat(1));
    plan.child_parent.resize(aux.n);

    int avail = aux.n;
    for (int b = 0; b < static_cast<int>(aux.full_orbits.blocks.size()); ++b) {
        int take = static_cast<int>(aux.full_orbits.blocks[b].size());
        ChoiceSlot slot{0, -1, b, avail, take, binomial(avail, take)};
        plan.stage_multiplier[0] *= slot.radix;
        plan.range *= slot.radix;
        plan.slots.push_back(std::move(slot));
        avail -= take;
    }
    if (avail != 0) throw Error("full orbit partition does not cover [n]");

    for (int i = 1; i <= aux.n; ++i) {
        const OrbitPartition& parents = detail::parent_partition(aux, i);
        const OrbitPartition& children = aux.levels[i - 1].orbits;

        plan.child_parent[i - 1].resize(children.blocks.size());
        std::vector<std::vector<int>> kids(parents.blocks.size());
        for (int c = 0; c < static_cast<int>(children.blocks.size()); ++c) {
            int p = parents.block_of(children.blocks[c][0]);
            for (int v : children.blocks[c])
                if (parents.block_of(v) != p) throw Error("orbit refinement violated");
            plan.child_parent[i - 1][c] = p;
            kids[p].push_back(c);
        }

        int parent_of_i = parents.block_of(i);
        for (int p = 0; p < static_cast<int>(parents.blocks.size()); ++p) {
            int pool = static_cast<int>(parents.blocks[p].size()) - (p == parent_of_i ? 1 : 0);
            for (int c : kids[p]) {
                int take = static_cast<int>(children.blocks[c].size());
                ChoiceSlot slot{i, p, c, pool, take, binomial(pool, take)};
                plan.stage_multiplier[i] *= slot.radix;
                plan.range *= slot.radix;
                plan.slots.push_back(std::move(slot));
                pool -= take;
            }
            if (pool != 0) throw Error("stage partition does not refine its parent block");
        }
    }
    return plan;
}

namespace codec_detail {

// Instrumentation: counts group-search invocations so tests can check that
// decoding never reaches into the group machinery.
inline std::atomic<std::uint64_t>& group_search_counter() {
    static std::atomic<std::uint64_t> counter{0};
    return counter;
}

}  // namespace codec_detail

inline AuxData build_aux_from_chain(const ColoredGraph& g, const StabilizerChain& chain) {
    AuxData aux;
    aux.n = g.n();
    aux.base_color = g.color;
    aux.full_orbits = chain.level(0).orbit_partition;
    aux.levels.resize(aux.n);
    for (int i = 1; i <= aux.n; ++i) {
        AuxData::Level& level = aux.levels[i - 1];
        for (const auto& block : chain.level(i).orbit_partition.blocks) {
            if (block[0] <= i) {
                // fixed vertices 1..i appear as singletons; not stored
                if (block.size() != 1) throw Error("stabilizer fails to fix its prefix");
                continue;
            }
            bool adjacent = g.graph.edge(i, block[0]);
            for (int v : block)
                if (g.graph.edge(i, v) != adjacent)
                    throw Error("orbit vertices disagree on adjacency to the stage vertex");
            level.orbits.blocks.push_back(block);
            level.neighbor_of_i.push_back(adjacent);
        }
    }
    return aux;
}

// Deterministic binary form of the aux data; its exact length is the measured
// side-information cost of a graph.
inline Bits serialize_aux(const AuxData& aux) {
    Bits out;
    unsigned w = std::max(1u, bit_length(BigNat(aux.n)));
    out.append_uint(static_cast<std::uint64_t>(aux.n), 16);
    bool colored = false;
    for (int c : aux.base_color) colored |= (c != 0);
    out.push_back(colored);
    if (colored)
        for (int c : aux.base_color) out.append_uint(static_cast<std::uint64_t>(c), w + 1);

    auto write_partition = [&](const OrbitPartition& part, const std::vector<std::uint8_t>* flags) {
        out.append_uint(part.blocks.size(), w + 1);
        for (std::size_t b = 0; b < part.blocks.size(); ++b) {
            out.append_uint(part.blocks[b].size(), w + 1);
            for (int v : part.blocks[b]) out.append_uint(static_cast<std::uint64_t>(v - 1), w);
            if (flags) out.push_back((*flags)[b] != 0);
        }
    };
    write_partition(aux.full_orbits, nullptr);
    for (const auto& level : aux.levels) write_partition(level.orbits, &level.neighbor_of_i);
    return out;
}

inline std::size_t aux_serialized_bits(const AuxData& aux) { return serialize_aux(aux).size(); }

// Rebuilds the copy of G identified by `code`. Uses only the aux data and
// subset/radix unranking: no isomorphism or automorphism search.
inline ColoredGraph decode(const AuxData& aux, const CosetCode& code) {
    StagePlan plan = build_plan(aux);
    if (code.range != plan.range) throw RangeError("decode: code range does not match aux data");
    if (code.value < 0 || code.value >= plan.range) throw RangeError("decode: code out of range");

    RadixReader reader(code.value);
    std::size_t slot_idx = 0;

    // stage 0: images of the full-group orbits
    std::vector<std::vector<int>> parent_images(aux.full_orbits.blocks.size());
    {
        std::vector<int> pool = full_domain(aux.n);
        for (std::size_t b = 0; b < aux.full_orbits.blocks.size(); ++b) {
            const ChoiceSlot& slot = plan.slots[slot_idx++];
            BigNat v = reader.pull(slot.radix);
            std::vector<int> positions = subset_unrank(slot.avail, slot.take, v);
            parent_images[b] = detail::select_positions(pool, positions);
            detail::remove_from_pool(pool, parent_images[b]);
        }
    }

    std::vector<int> pi_of(aux.n + 1, 0);  // pi_of[i] = image of vertex i
    Graph h(aux.n);

    for (int i = 1; i <= aux.n; ++i) {
        const OrbitPartition& parents = detail::parent_partition(aux, i);
        const AuxData::Level& level = aux.levels[i - 1];
        int parent_of_i = parents.block_of(i);

        pi_of[i] = parent_images[parent_of_i].front();  // smallest element of the image

        std::vector<std::vector<int>> pools = parent_images;
        detail::remove_from_pool(pools[parent_of_i], {pi_of[i]});

        std::vector<std::vector<int>> child_images(level.orbits.blocks.size());
        for (std::size_t c = 0; c < level.orbits.blocks.size(); ++c) {
            const ChoiceSlot& slot = plan.slots[slot_idx++];
            std::vector<int>& pool = pools[slot.parent_block];
            BigNat v = reader.pull(slot.radix);
            std::vector<int> positions = subset_unrank(slot.avail, slot.take, v);
            child_images[slot.child_block] = detail::select_positions(pool, positions);
            detail::remove_from_pool(pool, child_images[slot.child_block]);
        }

        for (std::size_t c = 0; c < level.orbits.blocks.size(); ++c)
            if (level.neighbor_of_i[c])
                for (int u : child_images[c]) h.set_edge(pi_of[i], u);

        parent_images = std::move(child_images);
    }

    std::vector<int> colors(aux.n, 0);
    for (int v = 1; v <= aux.n; ++v) colors[pi_of[v] - 1] = aux.base_color[v - 1];
    return ColoredGraph(std::move(h), std::move(colors));
}

// Prepared encoder/decoder for one base graph; builds Aut(G), the stabilizer
// chain, and the choice plan once.
class CosetCodec {
public:
    explicit CosetCodec(ColoredGraph g, int limit = brute_force_limit())
        : base_(std::move(g)),
          aut_(automorphism_group(base_, limit)),
          chain_(stabilizer_chain(aut_, base_.n())),
          aux_(build_aux_from_chain(base_, chain_)),
          plan_(build_plan(aux_)) {
        BigNat expected = factorial(base_.n()) / BigNat(aut_.order());
        if (plan_.range != expected) throw Error("stage plan range disagrees with n!/|Aut|");
    }

    const ColoredGraph& base() const { return base_; }
    const GroupElements& aut() const { return aut_; }
    const StabilizerChain& chain() const { return chain_; }
    const AuxData& aux() const { return aux_; }
    const BigNat& range() const { return plan_.range; }

    StageTrace stage_trace() const {
        StageTrace trace;
        trace.total_range = plan_.range;
        BigNat consumed = 1;
        for (int i = -1; i <= base_.n(); ++i) {
            StageTrace::Stage stage;
            stage.index = i;
            if (i == -1) {
                stage.multiplier = 1;
                stage.class_sizes = {base_.n()};
                stage.aut_g = aut_.order();
            } else {
                stage.multiplier = plan_.stage_multiplier[i];
                for (const auto& block : chain_.level(i).orbit_partition.blocks)
                    stage.class_sizes.push_back(static_cast<int>(block.size()));
                stage.aut_g = chain_.level(i).order;
            }
            consumed *= stage.multiplier;
            stage.consumed = consumed;
            stage.aut_h = 1;
            for (int size : stage.class_sizes) stage.aut_h *= factorial(size);
            trace.stages.push_back(std::move(stage));
        }
        return trace;
    }

    // Code of the copy pi(base); pi must be an isomorphism base -> pi(base).
    // The result depends only on the copy, not on the witness.
    CosetCode encode_witness(const Permutation& pi_in) const {
        if (pi_in.n() != base_.n()) throw DimensionError("encode: permutation size mismatch");
        Permutation pi = pi_in;
        RadixWriter writer;
        std::size_t slot_idx = 0;

        std::vector<std::vector<int>> parent_images(aux_.full_orbits.blocks.size());
        {
            std::vector<int> pool = full_domain(aux_.n);
            for (std::size_t b = 0; b < aux_.full_orbits.blocks.size(); ++b) {
                const ChoiceSlot& slot = plan_.slots[slot_idx++];
                std::vector<int> img = detail::image_of_block(pi, aux_.full_orbits.blocks[b]);
                writer.push(subset_rank(slot.avail, detail::positions_in_pool(pool, img)),
                            slot.radix);
                parent_images[b] = img;
                detail::remove_from_pool(pool, img);
            }
        }

        for (int i = 1; i <= aux_.n; ++i) {
            const OrbitPartition& parents = detail::parent_partition(aux_, i);
            const AuxData::Level& level = aux_.levels[i - 1];
            int parent_of_i = parents.block_of(i);

            // Normalize pi by an element of A_{i-1} so that pi(i) lands on the
            // smallest element of the image of i's orbit. This never changes
            // the copy or any information already emitted.
            int target = parent_images[parent_of_i].front();
            if (pi(i) != target) {
                int source = inverse(pi)(target);
                bool normalized = false;
                for (const Permutation& a : chain_.level(i - 1).group.elements) {
                    if (a(i) == source) {
                        pi = compose(pi, a);
                        normalized = true;
                        break;
                    }
                }
                if (!normalized) throw Error("stabilizer cannot realize the stage normalization");
            }

            std::vector<std::vector<int>> pools = parent_images;
            detail::remove_from_pool(pools[parent_of_i], {pi(i)});

            std::vector<std::vector<int>> child_images(level.orbits.blocks.size());
            for (std::size_t c = 0; c < level.orbits.blocks.size(); ++c) {
                const ChoiceSlot& slot = plan_.slots[slot_idx++];
                std::vector<int>& pool = pools[slot.parent_block];
                std::vector<int> img =
                    detail::image_of_block(pi, level.orbits.blocks[slot.child_block]);
                writer.push(subset_rank(slot.avail, detail::positions_in_pool(pool, img)),
                            slot.radix);
                child_images[slot.child_block] = img;
                detail::remove_from_pool(pool, img);
            }
            parent_images = std::move(child_images);
        }

        if (writer.range() != plan_.range) throw Error("encode consumed an unexpected range");
        return CosetCode{writer.value(), plan_.range};
    }

    // Finds an isomorphism base -> h by pruned backtracking, then encodes.
    std::pair<CosetCode, StageTrace> encode(const ColoredGraph& h) const {
        std::optional<Permutation> pi = find_isomorphism(base_, h);
        if (!pi) throw NotIsomorphicError("encode: graphs are not isomorphic");
        return {encode_witness(*pi), stage_trace()};
    }

private:
    ColoredGraph base_;
    GroupElements aut_;
    StabilizerChain chain_;
    AuxData aux_;
    StagePlan plan_;
};

inline AuxData build_aux(const ColoredGraph& g, int limit = brute_force_limit()) {
    GroupElements aut = automorphism_group(g, limit);
    return build_aux_from_chain(g, stabilizer_chain(aut, g.n()));
}

inline std::pair<CosetCode, StageTrace> encode(const ColoredGraph& g, const ColoredGraph& h,
                                               int limit = brute_force_limit()) {
    return CosetCodec(g, limit).encode(h);
}

inline BigNat code_range(const ColoredGraph& g, int limit = brute_force_limit()) {
    return CosetCodec(g, limit).range();
}

}  // namespace isocodec
