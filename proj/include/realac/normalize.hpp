#ifndef REALAC_NORMALIZE_HPP
#define REALAC_NORMALIZE_HPP

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "realac/circuit.hpp"
#include "realac/error.hpp"

namespace realac {

namespace detail {

inline std::int64_t max_gate_id(const Circuit& C) {
    std::int64_t m = 0;
    for (const Gate& g : C.gates()) m = std::max(m, g.id);
    return m;
}

// Ids of gates of the wanted types, ascending, so fresh ids come out the
// same on every run.
inline std::vector<std::int64_t> gates_of_types(const Circuit& C,
                                                std::initializer_list<int> types) {
    std::vector<std::int64_t> ids;
    for (const Gate& g : C.gates())
        for (int t : types)
            if (g.gtype == t) ids.push_back(g.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace detail

// t1 <= t2 becomes sign((t1 < t2) + (t1 = t2)); likewise >= with >. The
// rewritten gate keeps its id as the new sign gate, so successors are
// untouched. Three gates are added per rewrite.
inline Circuit lower_le_ge(Circuit C) {
    std::int64_t next = detail::max_gate_id(C) + 1;
    for (std::int64_t id : detail::gates_of_types(C, {kLe, kGe})) {
        // add() may grow the gate store, so snapshot before and re-find after.
        std::vector<std::int64_t> preds = C.at(id).preds;
        int rel = C.at(id).gtype == kLe ? kLt : kGt;
        std::int64_t rel_id = next++;
        std::int64_t eq_id = next++;
        std::int64_t add_id = next++;
        C.add(make_gate(rel_id, rel, {preds[0], preds[1]}));
        C.add(make_gate(eq_id, kEq, {preds[0], preds[1]}));
        C.add(make_gate(add_id, kAdd, {rel_id, eq_id}));
        Gate& g = *C.find(id);
        g.gtype = kSign;
        g.preds = {add_id};
    }
    return C;
}

// t1 = t2 becomes sign(sign(0 - (t1-t2)^2) + 1), the square built from a
// subtraction fanned through two identity + gates into one x gate (a gate
// may not list the same predecessor twice). Nine gates are added.
inline Circuit lower_eq(Circuit C) {
    std::int64_t next = detail::max_gate_id(C) + 1;
    for (std::int64_t id : detail::gates_of_types(C, {kEq})) {
        std::vector<std::int64_t> preds = C.at(id).preds;
        std::int64_t diff = next++;
        std::int64_t pass_a = next++;
        std::int64_t pass_b = next++;
        std::int64_t square = next++;
        std::int64_t zero = next++;
        std::int64_t neg = next++;
        std::int64_t inner_sign = next++;
        std::int64_t one = next++;
        std::int64_t shift = next++;
        C.add(make_gate(diff, kSub, {preds[0], preds[1]}));
        C.add(make_gate(pass_a, kAdd, {diff}));
        C.add(make_gate(pass_b, kAdd, {diff}));
        C.add(make_gate(square, kMul, {pass_a, pass_b}));
        C.add(make_const(zero, Rational(0)));
        C.add(make_gate(neg, kSub, {zero, square}));
        C.add(make_gate(inner_sign, kSign, {neg}));
        C.add(make_const(one, Rational(1)));
        C.add(make_gate(shift, kAdd, {one, inner_sign}));
        Gate& g = *C.find(id);
        g.gtype = kSign;
        g.preds = {shift};
    }
    return C;
}

// t1 < t2 becomes 1 - sign(sign(t1-t2) + 1); > swaps the subtraction.
// Six gates are added per rewrite.
inline Circuit lower_lt_gt(Circuit C) {
    std::int64_t next = detail::max_gate_id(C) + 1;
    for (std::int64_t id : detail::gates_of_types(C, {kLt, kGt})) {
        std::vector<std::int64_t> preds = C.at(id).preds;
        bool is_lt = C.at(id).gtype == kLt;
        std::int64_t a = is_lt ? preds[0] : preds[1];
        std::int64_t b = is_lt ? preds[1] : preds[0];
        std::int64_t diff = next++;
        std::int64_t inner_sign = next++;
        std::int64_t one_b = next++;
        std::int64_t shift = next++;
        std::int64_t outer_sign = next++;
        std::int64_t one_a = next++;
        C.add(make_gate(diff, kSub, {a, b}));
        C.add(make_gate(inner_sign, kSign, {diff}));
        C.add(make_const(one_b, Rational(1)));
        C.add(make_gate(shift, kAdd, {one_b, inner_sign}));
        C.add(make_gate(outer_sign, kSign, {shift}));
        C.add(make_const(one_a, Rational(1)));
        Gate& g = *C.find(id);
        g.gtype = kSub;
        g.preds = {one_a, outer_sign};
    }
    return C;
}

// t1 - t2 becomes t1 + (-1) x t2. Two gates are added per rewrite.
inline Circuit lower_sub(Circuit C) {
    std::int64_t next = detail::max_gate_id(C) + 1;
    for (std::int64_t id : detail::gates_of_types(C, {kSub})) {
        std::vector<std::int64_t> preds = C.at(id).preds;
        std::int64_t minus_one = next++;
        std::int64_t product = next++;
        C.add(make_const(minus_one, Rational(-1)));
        C.add(make_gate(product, kMul, {minus_one, preds[1]}));
        Gate& g = *C.find(id);
        g.gtype = kAdd;
        g.preds = {preds[0], product};
    }
    return C;
}

// Full lowering to types 1-6. Later passes pick up the relational and
// subtraction gates the earlier ones introduce.
inline Circuit eliminate_aux_gates(Circuit C) {
    detail::require_core_valid(C);
    return lower_sub(lower_lt_gt(lower_eq(lower_le_ge(std::move(C)))));
}

namespace detail {

// Successor edges of a gate: (successor id, position in its pred list),
// sorted so the rewiring order is deterministic.
inline std::vector<std::pair<std::int64_t, std::size_t>> out_edges(const Circuit& C,
                                                                   std::int64_t id) {
    std::vector<std::pair<std::int64_t, std::size_t>> edges;
    for (const Gate& g : C.gates())
        for (std::size_t i = 0; i < g.preds.size(); ++i)
            if (g.preds[i] == id) edges.emplace_back(g.id, i);
    std::sort(edges.begin(), edges.end());
    return edges;
}

}  // namespace detail

// Duplicates shared non-input gates until every one has outdegree <= 1.
// Offenders are handled inside out (a gate is picked only when its own
// subcircuit is already clean), smallest id first; input gates stay
// shared. Evaluation and depth are preserved.
inline Circuit make_tree_like(Circuit C) {
    detail::require_core_valid(C);
    std::int64_t next = detail::max_gate_id(C) + 1;
    while (true) {
        auto outdeg = detail::outdegrees(C);
        std::vector<std::int64_t> offenders;
        for (const Gate& g : C.gates())
            if (g.gtype != kInput && outdeg[g.id] > 1) offenders.push_back(g.id);
        if (offenders.empty()) break;
        std::sort(offenders.begin(), offenders.end());
        std::unordered_set<std::int64_t> offender_set(offenders.begin(), offenders.end());
        std::int64_t chosen = -1;
        for (std::int64_t id : offenders) {
            Circuit sub = induced_subcircuit(C, id);
            bool clean = true;
            for (const Gate& g : sub.gates())
                if (g.id != id && offender_set.count(g.id)) {
                    clean = false;
                    break;
                }
            if (clean) {
                chosen = id;
                break;
            }
        }
        Circuit sub = induced_subcircuit(C, chosen);
        auto edges = detail::out_edges(C, chosen);
        // The first edge keeps the original; each further edge gets a copy.
        for (std::size_t e = 1; e < edges.size(); ++e) {
            std::unordered_map<std::int64_t, std::int64_t> remap;
            for (std::int64_t sid : sub.sorted_ids()) {
                const Gate& g = sub.at(sid);
                remap[sid] = g.gtype == kInput ? sid : next++;
            }
            for (std::int64_t sid : sub.sorted_ids()) {
                const Gate& g = sub.at(sid);
                if (g.gtype == kInput) continue;
                Gate copy = g;
                copy.id = remap[sid];
                for (std::int64_t& p : copy.preds) p = remap[p];
                C.add(std::move(copy));
            }
            C.find(edges[e].first)->preds[edges[e].second] = remap[chosen];
        }
    }
    return C;
}

// Pads every short input->output path with identity + gates directly above
// the input, so all paths get the full depth. Requires a tree-like circuit
// with one output gate.
inline Circuit level_paths(Circuit C) {
    detail::require_core_valid(C);
    if (!is_tree_like(C)) fail(ErrorCode::NotTreeLike, "circuit is not tree-like");
    auto outputs = C.output_ids();
    if (outputs.size() != 1)
        fail(ErrorCode::InvalidCircuit, "path leveling needs exactly one output gate");
    std::int64_t output = outputs.front();

    // Distance from each gate to the output along the unique successor
    // chain; -1 where no such path exists.
    std::unordered_map<std::int64_t, std::int64_t> dist;
    for (const Gate& g : C.gates()) dist[g.id] = -1;
    dist[output] = 0;
    auto order = detail::topo_order(C);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Gate& g = C.at(*it);
        if (dist[g.id] < 0) continue;
        for (std::int64_t p : g.preds)
            dist[p] = std::max(dist[p], dist[g.id] + 1);
    }

    std::int64_t d = static_cast<std::int64_t>(depth(C));
    std::int64_t next = detail::max_gate_id(C) + 1;
    std::vector<std::int64_t> inputs;
    for (const Gate& g : C.gates())
        if (g.gtype == kInput) inputs.push_back(g.id);
    std::sort(inputs.begin(), inputs.end());
    for (std::int64_t in_id : inputs) {
        for (auto [succ_id, pos] : detail::out_edges(C, in_id)) {
            std::int64_t below = dist[succ_id];
            if (below < 0) continue;  // dead branch, nothing to level against
            std::int64_t pads = d - (1 + below);
            std::int64_t feed = in_id;
            for (std::int64_t k = 0; k < pads; ++k) {
                std::int64_t pad_id = next++;
                C.add(make_gate(pad_id, kAdd, {feed}));
                feed = pad_id;
            }
            C.find(succ_id)->preds[pos] = feed;
        }
    }
    return C;
}

}  // namespace realac

#endif
