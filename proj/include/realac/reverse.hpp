#ifndef REALAC_REVERSE_HPP
#define REALAC_REVERSE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "realac/ast.hpp"
#include "realac/circuit.hpp"
#include "realac/error.hpp"
#include "realac/normalize.hpp"
#include "realac/structure.hpp"

namespace realac {

// Description of one circuit against universe size u: gates live at base-u
// digit tuples of length q, and four tables give the gate type, constant
// payload, input wiring and edge relation. Exposed to formulas as the
// auxiliary symbols t/q, c/q, in/(q+1), pred/2q over a structure whose
// single number function f/1 carries the circuit's input vector.
struct FamilyDescriptor {
    std::int64_t u = 0;
    int q = 0;
    int d = 0;  // number of levels; the output gate's value is val_d
    std::vector<Rational> t_table;     // u^q entries
    std::vector<Rational> c_table;     // u^q entries
    std::vector<Rational> in_table;    // u^(q+1) entries
    std::vector<Rational> pred_table;  // u^(2q) entries, (pred tuple, succ tuple)
};

namespace detail {

// Distance from each gate to the end of its successor chain (the output,
// for connected gates). Requires a tree-like circuit.
inline std::unordered_map<std::int64_t, std::int64_t> sink_distances(const Circuit& C) {
    std::unordered_map<std::int64_t, std::int64_t> succ;
    for (const Gate& g : C.gates())
        for (std::int64_t p : g.preds) succ[p] = g.id;
    std::unordered_map<std::int64_t, std::int64_t> dist;
    auto order = topo_order(C);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        auto s = succ.find(*it);
        dist[*it] = s == succ.end() ? 0 : dist[s->second] + 1;
    }
    return dist;
}

// The level count a descriptor for C needs: the input-path depth, but
// also deep enough that every constant gate sits at least one level below
// the gate reading it (constants are picked up by the t=2 branch, which
// exists from level 1 on). At least 1 when no inputs are present.
inline std::int64_t target_depth(const Circuit& C) {
    auto dist = sink_distances(C);
    std::int64_t max_const = -1;
    bool any_input = false;
    for (const Gate& g : C.gates()) {
        if (g.gtype == kConst) max_const = std::max(max_const, dist[g.id]);
        if (g.gtype == kInput) any_input = true;
    }
    std::int64_t want = static_cast<std::int64_t>(depth(C));
    if (max_const >= 0) want = std::max(want, max_const + 1);
    if (!any_input) want = std::max<std::int64_t>(want, 1);
    return want;
}

}  // namespace detail

// Pads input edges until every input-to-output path has the target length,
// so constants end up at least two levels below the top. Leveling and
// evaluation are preserved; for circuits already deep enough this is the
// identity.
inline Circuit align_levels(const Circuit& C) {
    detail::require_core_valid(C);
    if (!is_tree_like(C)) fail(ErrorCode::NotTreeLike, "circuit is not tree-like");
    if (!is_leveled(C)) fail(ErrorCode::NotLeveled, "circuit is not leveled");
    std::int64_t have = static_cast<std::int64_t>(depth(C));
    std::int64_t want = detail::target_depth(C);
    std::int64_t pads = C.input_count > 0 ? want - have : 0;
    Circuit out = C;
    if (pads > 0) {
        std::int64_t next = detail::max_gate_id(out) + 1;
        std::vector<std::int64_t> inputs;
        for (const Gate& g : out.gates())
            if (g.gtype == kInput) inputs.push_back(g.id);
        std::sort(inputs.begin(), inputs.end());
        for (std::int64_t in_id : inputs) {
            for (auto [succ_id, pos] : detail::out_edges(out, in_id)) {
                std::int64_t feed = in_id;
                for (std::int64_t k = 0; k < pads; ++k) {
                    std::int64_t pad_id = next++;
                    out.add(make_gate(pad_id, kAdd, {feed}));
                    feed = pad_id;
                }
                out.find(succ_id)->preds[pos] = feed;
            }
        }
    }
    return out;
}

// Number of val levels the descriptor of C will use.
inline int aligned_depth(const Circuit& C) {
    Circuit A = align_levels(C);
    return static_cast<int>(detail::target_depth(A));
}

inline FamilyDescriptor descriptor_from_circuit(const Circuit& C, std::int64_t u) {
    Circuit A = align_levels(C);
    for (const Gate& g : A.gates())
        if (g.gtype > kOutput)
            fail(ErrorCode::InvalidCircuit,
                 "gate " + std::to_string(g.id) + " uses an auxiliary type; lower it first");

    std::int64_t sz = static_cast<std::int64_t>(A.gates().size());
    if (u < 2 && sz > 1) fail(ErrorCode::TooManyGates, "universe too small to index the gates");
    int q = 1;
    std::int64_t cap = u;
    while (cap < sz) {
        if (q >= 40) fail(ErrorCode::TooManyGates, "gate count needs too many coordinates");
        cap *= u;
        ++q;
    }

    FamilyDescriptor desc;
    desc.u = u;
    desc.q = q;
    desc.d = static_cast<int>(detail::target_depth(A));

    std::size_t tuples = table_size(q, u);
    std::size_t in_size = tuples * static_cast<std::size_t>(u);
    std::size_t pred_size = tuples * tuples;
    if (pred_size > (std::size_t(1) << 26))
        fail(ErrorCode::TooManyGates, "pred table would be too large");
    desc.t_table.assign(tuples, Rational(0));
    desc.c_table.assign(tuples, Rational(0));
    desc.in_table.assign(in_size, Rational(0));
    desc.pred_table.assign(pred_size, Rational(0));

    std::unordered_map<std::int64_t, std::size_t> rank;
    std::size_t next = 0;
    for (std::int64_t id : A.sorted_ids()) rank[id] = next++;
    for (const Gate& g : A.gates()) {
        std::size_t r = rank[g.id];
        desc.t_table[r] = Rational(g.gtype);
        if (g.gtype == kConst) desc.c_table[r] = g.constant;
        if (g.gtype == kInput && g.input_index >= 1 && g.input_index <= u)
            desc.in_table[r * static_cast<std::size_t>(u) +
                          static_cast<std::size_t>(g.input_index - 1)] = Rational(1);
        for (std::int64_t p : g.preds) desc.pred_table[rank[p] * tuples + r] = Rational(1);
    }
    return desc;
}

// Signature the reverse sentence speaks: one unary number function f
// carrying the encoded input, plus the four descriptor symbols.
inline Signature descriptor_signature(const FamilyDescriptor& desc) {
    Signature sig;
    sig.add(SymbolKind::Number, "f", 1);
    sig.add(SymbolKind::AuxNumber, "t", desc.q);
    sig.add(SymbolKind::AuxNumber, "c", desc.q);
    sig.add(SymbolKind::AuxNumber, "in", desc.q + 1);
    sig.add(SymbolKind::AuxNumber, "pred", 2 * desc.q);
    return sig;
}

inline ArbInterpretation descriptor_arb(const FamilyDescriptor& desc) {
    ArbInterpretation I;
    I.number_tables["t"] = desc.t_table;
    I.number_tables["c"] = desc.c_table;
    I.number_tables["in"] = desc.in_table;
    I.number_tables["pred"] = desc.pred_table;
    return I;
}

// The structure a circuit input vector becomes: universe {0..u-1} with
// f(i) = x_i. The descriptor must have been built for u = |x|.
inline RStructure descriptor_input_structure(const FamilyDescriptor& desc,
                                             const std::vector<Rational>& x) {
    if (static_cast<std::int64_t>(x.size()) != desc.u)
        fail(ErrorCode::LengthMismatch, "input vector length " + std::to_string(x.size()) +
                                            " does not match universe size " +
                                            std::to_string(desc.u));
    RStructure D(descriptor_signature(desc), desc.u);
    D.number_table("f") = x;
    return D;
}

// Free variables of val_x: one name per tuple coordinate, distinct across
// levels so the nested binders never shadow each other.
inline std::vector<std::string> level_vars(int level, int q) {
    std::vector<std::string> vars;
    vars.reserve(static_cast<std::size_t>(q));
    for (int j = 1; j <= q; ++j)
        vars.push_back("l" + std::to_string(level) + "_" + std::to_string(j));
    return vars;
}

namespace detail {

inline std::vector<IndexTermPtr> var_args(const std::vector<std::string>& names) {
    std::vector<IndexTermPtr> args;
    args.reserve(names.size());
    for (const auto& n : names) args.push_back(mk_var(n));
    return args;
}

inline NumberTermPtr nest_sums(const std::vector<std::string>& binders, NumberTermPtr body) {
    for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        body = mk_sum(*it, std::move(body));
    return body;
}

inline NumberTermPtr nest_prods(const std::vector<std::string>& binders, NumberTermPtr body) {
    for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        body = mk_prod(*it, std::move(body));
    return body;
}

}  // namespace detail

// val_0 .. val_d. val_x has the level-x tuple as free variables and gives
// the value of any level-x gate: the input product for level 0, then one
// chi-selected branch per gate type. The x-gate branch is gated so that
// non-predecessor factors contribute 1 instead of 0.
inline std::vector<NumberTermPtr> build_val_terms(const FamilyDescriptor& desc) {
    int q = desc.q;
    std::vector<NumberTermPtr> vals;
    vals.reserve(static_cast<std::size_t>(desc.d) + 1);

    // Level 0: sum_i in(v, i) x f(i).
    {
        std::vector<std::string> here = level_vars(0, q);
        std::string i = "l0_i";
        std::vector<IndexTermPtr> in_args = detail::var_args(here);
        in_args.push_back(mk_var(i));
        NumberTermPtr body = mk_mul(mk_aux_num_app("in", std::move(in_args)),
                                    mk_num_app("f", {mk_var(i)}));
        vals.push_back(mk_sum(i, std::move(body)));
    }

    for (int x = 1; x <= desc.d; ++x) {
        std::vector<std::string> here = level_vars(x, q);
        std::vector<std::string> below = level_vars(x - 1, q);
        const NumberTermPtr& prev = vals.back();

        auto pred_app = [&]() {
            std::vector<IndexTermPtr> args = detail::var_args(below);
            for (const auto& v : detail::var_args(here)) args.push_back(v);
            return mk_aux_num_app("pred", std::move(args));
        };
        auto branch_guard = [&](int k) {
            return mk_char(mk_num_eq(mk_aux_num_app("t", detail::var_args(here)),
                                     mk_const(Rational(k))));
        };

        // T_2: the constant table.
        NumberTermPtr t2 = mk_aux_num_app("c", detail::var_args(here));
        // T_3 / T_6: gated sum of the level below.
        NumberTermPtr t3 = detail::nest_sums(below, mk_mul(pred_app(), prev));
        // T_4: gated product, off-edge factors forced to 1.
        NumberTermPtr gated =
            mk_add(mk_mul(pred_app(), prev),
                   mk_add(mk_const(Rational(1)), mk_mul(mk_const(Rational(-1)), pred_app())));
        NumberTermPtr t4 = detail::nest_prods(below, std::move(gated));
        // T_5: gated sum of signs.
        NumberTermPtr t5 = detail::nest_sums(below, mk_mul(pred_app(), mk_sign(prev)));

        NumberTermPtr val = mk_mul(branch_guard(2), std::move(t2));
        val = mk_add(std::move(val), mk_mul(branch_guard(3), t3));
        val = mk_add(std::move(val), mk_mul(branch_guard(4), std::move(t4)));
        val = mk_add(std::move(val), mk_mul(branch_guard(5), std::move(t5)));
        val = mk_add(std::move(val), mk_mul(branch_guard(6), t3));
        vals.push_back(std::move(val));
    }
    return vals;
}

// forall v ( t(v) = 6  ->  val_d(v) = 1 ).
inline FormulaPtr build_sentence(const FamilyDescriptor& desc) {
    std::vector<NumberTermPtr> vals = build_val_terms(desc);
    std::vector<std::string> top = level_vars(desc.d, desc.q);
    FormulaPtr body =
        mk_implies(mk_num_eq(mk_aux_num_app("t", detail::var_args(top)), mk_const(Rational(6))),
                   mk_num_eq(vals.back(), mk_const(Rational(1))));
    for (auto it = top.rbegin(); it != top.rend(); ++it) body = mk_forall(*it, std::move(body));
    return body;
}

}  // namespace realac

#endif
