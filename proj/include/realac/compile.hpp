#ifndef REALAC_COMPILE_HPP
#define REALAC_COMPILE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "realac/ast.hpp"
#include "realac/circuit.hpp"
#include "realac/error.hpp"
#include "realac/eval.hpp"
#include "realac/structure.hpp"

namespace realac {

// Answer to a single oracle query: gate type, number of the requested
// predecessor (0 if absent), and the payload (constant value or input
// index as a rational).
struct GateRecord {
    int t = 0;
    std::int64_t p_nr = 0;
    Rational c = Rational(0);

    bool operator==(const GateRecord& other) const {
        return t == other.t && p_nr == other.p_nr && c == other.c;
    }
};

namespace detail {

// Gate-level derivation tree shared by the compiler, the tree-shape-size
// computation, the numbering and the oracle. Nodes that emit no gates
// (quantifiers over a variable the body ignores, Char wrappers) never
// appear here. The tree is assignment-independent: all u copies under a
// quantifier or aggregate share one child node, and copy-specific values
// (bound variables, selected tuples) are resolved during the walk.
struct Shape;
using ShapeP = std::shared_ptr<const Shape>;

struct Shape {
    enum class Kind {
        Quant,      // sign over +/x over u copies of child         [flag: forall]
        Not,        // sub(const 1, sign(child))
        Junction,   // sign over x (and) / + (or) of a, b           [flag: and]
        Atom,       // eq / lt gate over term children a, b         [flag: eq]
        Leaf,       // one constant gate: bound variable or literal
        Select,     // + over u^l x gates comparing args to tuples
        Arith,      // binary + / x over term children a, b         [flag: mul]
        SignT,      // sign gate over child
        Aggregate,  // + (sum) / x (prod) over u copies of child    [flag: prod]
    };

    Kind kind = Kind::Leaf;
    bool flag = false;
    std::string var;             // binder (Quant/Aggregate) or variable leaf
    bool var_leaf = false;       // Leaf: variable reference vs literal
    Rational value;              // Leaf literal
    ShapeP a, b;                 // children
    std::vector<ShapeP> args;    // Select argument terms

    // Select payload.
    std::string symbol;          // function symbol name
    SymbolKind sym_kind = SymbolKind::Skeleton;
    std::int64_t input_offset = 0;  // L_s/L_f: block offset inside enc(D)
    std::int64_t copies = 0;        // u^arity

    std::int64_t tss = 0;        // tree-shape-size of this fragment
};

struct ShapeContext {
    const Signature* sig;
    std::int64_t u;
    std::map<std::string, std::int64_t> input_offsets;
    std::int64_t n;  // encoded length
};

inline ShapeContext make_shape_context(const Signature& sig, std::int64_t u) {
    if (u < 1) fail(ErrorCode::RangeViolation, "universe size must be at least 1");
    ShapeContext ctx;
    ctx.sig = &sig;
    ctx.u = u;
    std::int64_t off = 0;
    for (const Symbol& s : sig.encoded_symbols()) {
        ctx.input_offsets[s.name] = off;
        off += pow_clamped(u, s.arity > 0 ? s.arity : 1,
                           std::numeric_limits<std::int64_t>::max() / 2);
    }
    ctx.n = off;
    return ctx;
}

constexpr std::int64_t kTssCap = std::int64_t(1) << 50;

inline std::int64_t tss_checked(std::int64_t v) {
    if (v >= kTssCap) fail(ErrorCode::TooManyGates, "circuit would be too large");
    return v;
}

inline ShapeP build_shape(const FormulaPtr& f, const ShapeContext& ctx);
inline ShapeP build_shape(const NumberTermPtr& t, const ShapeContext& ctx);
inline ShapeP build_shape(const IndexTermPtr& h, const ShapeContext& ctx);

inline ShapeP shape_node(Shape s) { return std::make_shared<Shape>(std::move(s)); }

inline ShapeP make_select(const std::string& name, const std::vector<IndexTermPtr>& args,
                          const ShapeContext& ctx) {
    const Symbol& sym = ctx.sig->require(name);
    Shape s;
    s.kind = Shape::Kind::Select;
    s.symbol = name;
    s.sym_kind = sym.kind;
    s.copies = pow_clamped(ctx.u, sym.arity, kTssCap);
    if (sym.kind == SymbolKind::Skeleton || sym.kind == SymbolKind::Number)
        s.input_offset = ctx.input_offsets.at(name);
    std::int64_t per_copy = 2;
    for (const auto& arg : args) {
        ShapeP as = build_shape(arg, ctx);
        per_copy = tss_checked(per_copy + as->tss + 2);
        s.args.push_back(std::move(as));
    }
    if (s.copies >= kTssCap || per_copy >= kTssCap / s.copies)
        fail(ErrorCode::TooManyGates, "circuit would be too large");
    s.tss = tss_checked(1 + s.copies * per_copy);
    return shape_node(std::move(s));
}

inline ShapeP make_junction(bool is_and, ShapeP a, ShapeP b) {
    Shape s;
    s.kind = Shape::Kind::Junction;
    s.flag = is_and;
    s.tss = tss_checked(a->tss + b->tss + 2);
    s.a = std::move(a);
    s.b = std::move(b);
    return shape_node(std::move(s));
}

inline ShapeP make_negation(ShapeP a) {
    Shape s;
    s.kind = Shape::Kind::Not;
    s.tss = tss_checked(a->tss + 3);
    s.a = std::move(a);
    return shape_node(std::move(s));
}

inline ShapeP build_shape(const IndexTermPtr& h, const ShapeContext& ctx) {
    if (h->kind == IndexTerm::Kind::Var) {
        Shape s;
        s.kind = Shape::Kind::Leaf;
        s.var_leaf = true;
        s.var = h->name;
        s.tss = 1;
        return shape_node(std::move(s));
    }
    return make_select(h->name, h->args, ctx);
}

inline ShapeP build_shape(const NumberTermPtr& t, const ShapeContext& ctx) {
    switch (t->kind) {
        case NumberTerm::Kind::Const: {
            Shape s;
            s.kind = Shape::Kind::Leaf;
            s.value = t->value;
            s.tss = 1;
            return shape_node(std::move(s));
        }
        case NumberTerm::Kind::NumApp:
        case NumberTerm::Kind::AuxNumApp:
            return make_select(t->name, t->args, ctx);
        case NumberTerm::Kind::Add:
        case NumberTerm::Kind::Mul: {
            Shape s;
            s.kind = Shape::Kind::Arith;
            s.flag = t->kind == NumberTerm::Kind::Mul;
            s.a = build_shape(t->t1, ctx);
            s.b = build_shape(t->t2, ctx);
            s.tss = tss_checked(1 + s.a->tss + s.b->tss);
            return shape_node(std::move(s));
        }
        case NumberTerm::Kind::Sign: {
            Shape s;
            s.kind = Shape::Kind::SignT;
            s.a = build_shape(t->t1, ctx);
            s.tss = tss_checked(1 + s.a->tss);
            return shape_node(std::move(s));
        }
        case NumberTerm::Kind::Sum:
        case NumberTerm::Kind::Prod: {
            Shape s;
            s.kind = Shape::Kind::Aggregate;
            s.flag = t->kind == NumberTerm::Kind::Prod;
            s.var = t->name;
            s.a = build_shape(t->t1, ctx);
            if (s.a->tss >= kTssCap / ctx.u)
                fail(ErrorCode::TooManyGates, "circuit would be too large");
            s.tss = tss_checked(1 + ctx.u * s.a->tss);
            return shape_node(std::move(s));
        }
        case NumberTerm::Kind::Max:
            fail(ErrorCode::UnsupportedNesting,
                 "max must be eliminated before compilation");
        case NumberTerm::Kind::Char: return build_shape(t->phi, ctx);
    }
    fail(ErrorCode::UnknownGate, "unreachable");
}

inline ShapeP build_shape(const FormulaPtr& f, const ShapeContext& ctx) {
    switch (f->kind) {
        case Formula::Kind::IndexEq:
        case Formula::Kind::NumEq:
        case Formula::Kind::NumLt: {
            Shape s;
            s.kind = Shape::Kind::Atom;
            s.flag = f->kind != Formula::Kind::NumLt;
            if (f->kind == Formula::Kind::IndexEq) {
                s.a = build_shape(f->h1, ctx);
                s.b = build_shape(f->h2, ctx);
            } else {
                s.a = build_shape(f->t1, ctx);
                s.b = build_shape(f->t2, ctx);
            }
            s.tss = tss_checked(1 + s.a->tss + s.b->tss);
            return shape_node(std::move(s));
        }
        case Formula::Kind::Not: return make_negation(build_shape(f->f1, ctx));
        case Formula::Kind::And:
            return make_junction(true, build_shape(f->f1, ctx), build_shape(f->f2, ctx));
        case Formula::Kind::Or:
            return make_junction(false, build_shape(f->f1, ctx), build_shape(f->f2, ctx));
        case Formula::Kind::Implies:
            // a -> b as !a | b.
            return make_junction(false, make_negation(build_shape(f->f1, ctx)),
                                 build_shape(f->f2, ctx));
        case Formula::Kind::Iff: {
            // a <-> b as (a -> b) & (b -> a); both operand shapes are built
            // twice because the circuit genuinely duplicates them.
            ShapeP fwd = make_junction(false, make_negation(build_shape(f->f1, ctx)),
                                       build_shape(f->f2, ctx));
            ShapeP bwd = make_junction(false, make_negation(build_shape(f->f2, ctx)),
                                       build_shape(f->f1, ctx));
            return make_junction(true, std::move(fwd), std::move(bwd));
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            std::set<std::string> fv = free_vars(f->f1);
            ShapeP child = build_shape(f->f1, ctx);
            if (!fv.count(f->var)) return child;  // no witness needed, no gates
            Shape s;
            s.kind = Shape::Kind::Quant;
            s.flag = f->kind == Formula::Kind::Forall;
            s.var = f->var;
            if (child->tss >= (kTssCap - 2) / ctx.u)
                fail(ErrorCode::TooManyGates, "circuit would be too large");
            s.tss = tss_checked(ctx.u * child->tss + 2);
            s.a = std::move(child);
            return shape_node(std::move(s));
        }
    }
    fail(ErrorCode::UnknownGate, "unreachable");
}

// Compile-time validation: closed formula, no shadowed binder, no Max.
inline void check_no_shadowing(const FormulaPtr& f, std::set<std::string>& scope);

inline void check_no_shadowing(const NumberTermPtr& t, std::set<std::string>& scope) {
    switch (t->kind) {
        case NumberTerm::Kind::Const:
        case NumberTerm::Kind::NumApp:
        case NumberTerm::Kind::AuxNumApp:
            return;
        case NumberTerm::Kind::Add:
        case NumberTerm::Kind::Mul:
            check_no_shadowing(t->t1, scope);
            check_no_shadowing(t->t2, scope);
            return;
        case NumberTerm::Kind::Sign: check_no_shadowing(t->t1, scope); return;
        case NumberTerm::Kind::Sum:
        case NumberTerm::Kind::Prod:
        case NumberTerm::Kind::Max: {
            if (!scope.insert(t->name).second)
                fail(ErrorCode::ShadowedVariable,
                     "variable '" + t->name + "' shadows an enclosing binder");
            check_no_shadowing(t->t1, scope);
            scope.erase(t->name);
            return;
        }
        case NumberTerm::Kind::Char: check_no_shadowing(t->phi, scope); return;
    }
}

inline void check_no_shadowing(const FormulaPtr& f, std::set<std::string>& scope) {
    switch (f->kind) {
        case Formula::Kind::IndexEq: return;
        case Formula::Kind::NumEq:
        case Formula::Kind::NumLt:
            check_no_shadowing(f->t1, scope);
            check_no_shadowing(f->t2, scope);
            return;
        case Formula::Kind::Not: check_no_shadowing(f->f1, scope); return;
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff:
            check_no_shadowing(f->f1, scope);
            check_no_shadowing(f->f2, scope);
            return;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            if (!scope.insert(f->var).second)
                fail(ErrorCode::ShadowedVariable,
                     "variable '" + f->var + "' shadows an enclosing binder");
            check_no_shadowing(f->f1, scope);
            scope.erase(f->var);
            return;
        }
    }
}

inline void check_compilable(const FormulaPtr& f, const Signature& sig) {
    check_well_formed(f, sig);
    auto fv = free_vars(f);
    if (!fv.empty())
        fail(ErrorCode::FreeVariable, "formula is not a sentence; '" + *fv.begin() + "' is free");
    std::set<std::string> scope;
    check_no_shadowing(f, scope);
}

// --- numbering arithmetic, shared by materializer and oracle ------------

inline std::int64_t quant_copy_root(std::int64_t q, std::int64_t u, std::int64_t s,
                                    std::int64_t i) {
    return q - 2 - (u - i) * s;  // i = 1..u
}

inline std::int64_t aggregate_copy_root(std::int64_t q, std::int64_t u, std::int64_t s,
                                        std::int64_t i) {
    return q - 1 - (u - i) * s;  // i = 1..u
}

inline std::int64_t select_per_copy(const Shape& s) {
    std::int64_t per = 2;
    for (const auto& a : s.args) per += a->tss + 2;
    return per;
}

inline std::int64_t select_copy_root(std::int64_t q, const Shape& s, std::int64_t i) {
    return q - 1 - (s.copies - i) * select_per_copy(s);  // i = 1..copies
}

// Number of the r-th equality gate (r = 1..arity) inside the copy rooted
// at x_nr: they sit below the value slot, last argument first.
inline std::int64_t select_eq_nr(std::int64_t x_nr, const Shape& s, std::size_t r) {
    std::int64_t e = x_nr - 2;
    for (std::size_t j = s.args.size(); j > r; --j) e -= s.args[j - 1]->tss + 2;
    return e;
}

// --- materializer -------------------------------------------------------

struct EmitContext {
    const ShapeContext* shape_ctx;
    const ArbInterpretation* arb;
    std::int64_t circuit_tss;  // number of the output gate; inputs follow
};

inline Rational aux_select_value(const Shape& s, std::size_t rank, const ArbInterpretation& I) {
    if (s.sym_kind == SymbolKind::AuxIndex) {
        auto it = I.index_tables.find(s.symbol);
        if (it == I.index_tables.end())
            fail(ErrorCode::MissingArbTable, "no arb table for '" + s.symbol + "'");
        return Rational(it->second[rank]);
    }
    auto it = I.number_tables.find(s.symbol);
    if (it == I.number_tables.end())
        fail(ErrorCode::MissingArbTable, "no arb table for '" + s.symbol + "'");
    return it->second[rank];
}

inline void emit(const ShapeP& sp, std::int64_t q, Assignment& env, Circuit& C,
                 const EmitContext& ctx) {
    const Shape& s = *sp;
    std::int64_t u = ctx.shape_ctx->u;
    switch (s.kind) {
        case Shape::Kind::Quant: {
            C.add(make_gate(q, kSign, {q - 1}));
            std::vector<std::int64_t> roots;
            for (std::int64_t i = 1; i <= u; ++i)
                roots.push_back(quant_copy_root(q, u, s.a->tss, i));
            C.add(make_gate(q - 1, s.flag ? kMul : kAdd, roots));
            for (std::int64_t i = 1; i <= u; ++i) {
                env.push(s.var, i - 1);
                emit(s.a, roots[static_cast<std::size_t>(i - 1)], env, C, ctx);
                env.pop();
            }
            return;
        }
        case Shape::Kind::Not: {
            C.add(make_gate(q, kSub, {q - 1, q - 2}));
            C.add(make_const(q - 1, Rational(1)));
            C.add(make_gate(q - 2, kSign, {q - 3}));
            emit(s.a, q - 3, env, C, ctx);
            return;
        }
        case Shape::Kind::Junction: {
            C.add(make_gate(q, kSign, {q - 1}));
            std::int64_t right_root = q - 2;
            std::int64_t left_root = q - 2 - s.b->tss;
            C.add(make_gate(q - 1, s.flag ? kMul : kAdd, {left_root, right_root}));
            emit(s.a, left_root, env, C, ctx);
            emit(s.b, right_root, env, C, ctx);
            return;
        }
        case Shape::Kind::Atom: {
            std::int64_t right_root = q - 1;
            std::int64_t left_root = q - 1 - s.b->tss;
            C.add(make_gate(q, s.flag ? kEq : kLt, {left_root, right_root}));
            emit(s.a, left_root, env, C, ctx);
            emit(s.b, right_root, env, C, ctx);
            return;
        }
        case Shape::Kind::Leaf:
            C.add(make_const(q, s.var_leaf ? Rational(env.require(s.var)) : s.value));
            return;
        case Shape::Kind::Select: {
            std::vector<std::int64_t> x_roots;
            for (std::int64_t i = 1; i <= s.copies; ++i)
                x_roots.push_back(select_copy_root(q, s, i));
            C.add(make_gate(q, kAdd, x_roots));
            int arity = static_cast<int>(s.args.size());
            for (std::int64_t i = 1; i <= s.copies; ++i) {
                std::int64_t x_nr = x_roots[static_cast<std::size_t>(i - 1)];
                std::size_t rank = static_cast<std::size_t>(i - 1);
                std::vector<std::int64_t> tuple = unrank_tuple(rank, arity, u);
                std::int64_t value_nr;
                if (s.sym_kind == SymbolKind::Skeleton || s.sym_kind == SymbolKind::Number) {
                    value_nr = ctx.circuit_tss + s.input_offset +
                               static_cast<std::int64_t>(rank) + 1;
                } else {
                    value_nr = x_nr - 1;
                    C.add(make_const(value_nr, aux_select_value(s, rank, *ctx.arb)));
                }
                std::vector<std::int64_t> x_preds;
                for (std::size_t r = 1; r <= s.args.size(); ++r)
                    x_preds.push_back(select_eq_nr(x_nr, s, r));
                x_preds.push_back(value_nr);
                C.add(make_gate(x_nr, kMul, std::move(x_preds)));
                for (std::size_t r = 1; r <= s.args.size(); ++r) {
                    std::int64_t e = select_eq_nr(x_nr, s, r);
                    std::int64_t arg_root = e - 1;
                    std::int64_t const_nr = e - 1 - s.args[r - 1]->tss;
                    C.add(make_gate(e, kEq, {const_nr, arg_root}));
                    C.add(make_const(const_nr, Rational(tuple[r - 1])));
                    emit(s.args[r - 1], arg_root, env, C, ctx);
                }
            }
            return;
        }
        case Shape::Kind::Arith: {
            std::int64_t right_root = q - 1;
            std::int64_t left_root = q - 1 - s.b->tss;
            C.add(make_gate(q, s.flag ? kMul : kAdd, {left_root, right_root}));
            emit(s.a, left_root, env, C, ctx);
            emit(s.b, right_root, env, C, ctx);
            return;
        }
        case Shape::Kind::SignT:
            C.add(make_gate(q, kSign, {q - 1}));
            emit(s.a, q - 1, env, C, ctx);
            return;
        case Shape::Kind::Aggregate: {
            std::vector<std::int64_t> roots;
            for (std::int64_t i = 1; i <= u; ++i)
                roots.push_back(aggregate_copy_root(q, u, s.a->tss, i));
            C.add(make_gate(q, s.flag ? kMul : kAdd, roots));
            for (std::int64_t i = 1; i <= u; ++i) {
                env.push(s.var, i - 1);
                emit(s.a, roots[static_cast<std::size_t>(i - 1)], env, C, ctx);
                env.pop();
            }
            return;
        }
    }
}

}  // namespace detail

// Tree-shape-size of the circuit fragment a node compiles to, by
// structural recursion; no circuit is built.
inline std::int64_t tss_of(const FormulaPtr& f, const Signature& sig, std::int64_t u) {
    check_well_formed(f, sig);
    return detail::build_shape(f, detail::make_shape_context(sig, u))->tss;
}

inline std::int64_t tss_of(const NumberTermPtr& t, const Signature& sig, std::int64_t u) {
    check_well_formed(t, sig);
    return detail::build_shape(t, detail::make_shape_context(sig, u))->tss;
}

inline std::int64_t tss_of(const IndexTermPtr& h, const Signature& sig, std::int64_t u) {
    check_well_formed(h, sig);
    return detail::build_shape(h, detail::make_shape_context(sig, u))->tss;
}

// Compiles a sentence to a circuit with post-order gate numbers: the
// output gate is numbered tss(C), input gate i is tss(C)+i, and interior
// ids descend through the derivation with holes where input gates fill
// tree positions.
inline Circuit compile_numbered(const FormulaPtr& f, const Signature& sig, std::int64_t u,
                                const ArbInterpretation& arb = {}) {
    detail::check_compilable(f, sig);
    detail::ShapeContext sctx = detail::make_shape_context(sig, u);
    detail::ShapeP shape = detail::build_shape(f, sctx);
    std::int64_t circuit_tss = shape->tss + 1;
    if (sctx.n > (std::int64_t(1) << 22))
        fail(ErrorCode::TooManyGates, "input vector too large to materialize");

    Circuit C;
    C.input_count = sctx.n;
    for (std::int64_t i = 1; i <= sctx.n; ++i) C.add(make_input(circuit_tss + i, i));
    C.add(make_gate(circuit_tss, kOutput, {circuit_tss - 1}));
    detail::EmitContext ectx{&sctx, &arb, circuit_tss};
    Assignment env;
    detail::emit(shape, circuit_tss - 1, env, C, ectx);
    return C;
}

// Same circuit with gates relabeled 1..size (no numbering holes).
inline Circuit compile(const FormulaPtr& f, const Signature& sig, std::int64_t u,
                       const ArbInterpretation& arb = {}) {
    return renumber_dense(compile_numbered(f, sig, u, arb));
}

namespace detail {

inline GateRecord leaf_record(const Shape& s, Assignment& env) {
    return GateRecord{kConst, 0, s.var_leaf ? Rational(env.require(s.var)) : s.value};
}

// Follows the numbering arithmetic down one root-to-gate path. q is the
// number of the fragment root; v_nr is known to lie inside the fragment's
// id interval (q - tss, q].
inline GateRecord descend(const ShapeP& sp, std::int64_t q, std::int64_t v_nr, std::int64_t p_idx,
                          Assignment& env, const EmitContext& ctx) {
    const Shape& s = *sp;
    std::int64_t u = ctx.shape_ctx->u;
    switch (s.kind) {
        case Shape::Kind::Quant: {
            if (v_nr == q) return p_idx == 1 ? GateRecord{kSign, q - 1, Rational(0)}
                                             : GateRecord{kSign, 0, Rational(0)};
            int op = s.flag ? kMul : kAdd;
            if (v_nr == q - 1) {
                if (p_idx >= 1 && p_idx <= u)
                    return GateRecord{op, quant_copy_root(q, u, s.a->tss, p_idx), Rational(0)};
                return GateRecord{op, 0, Rational(0)};
            }
            std::int64_t i = u - (q - 2 - v_nr) / s.a->tss;
            env.push(s.var, i - 1);
            GateRecord r = descend(s.a, quant_copy_root(q, u, s.a->tss, i), v_nr, p_idx, env, ctx);
            env.pop();
            return r;
        }
        case Shape::Kind::Not: {
            if (v_nr == q) {
                if (p_idx == 1) return GateRecord{kSub, q - 1, Rational(0)};
                if (p_idx == 2) return GateRecord{kSub, q - 2, Rational(0)};
                return GateRecord{kSub, 0, Rational(0)};
            }
            if (v_nr == q - 1) return GateRecord{kConst, 0, Rational(1)};
            if (v_nr == q - 2)
                return p_idx == 1 ? GateRecord{kSign, q - 3, Rational(0)}
                                  : GateRecord{kSign, 0, Rational(0)};
            return descend(s.a, q - 3, v_nr, p_idx, env, ctx);
        }
        case Shape::Kind::Junction: {
            if (v_nr == q) return p_idx == 1 ? GateRecord{kSign, q - 1, Rational(0)}
                                             : GateRecord{kSign, 0, Rational(0)};
            std::int64_t right_root = q - 2;
            std::int64_t left_root = q - 2 - s.b->tss;
            if (v_nr == q - 1) {
                int op = s.flag ? kMul : kAdd;
                if (p_idx == 1) return GateRecord{op, left_root, Rational(0)};
                if (p_idx == 2) return GateRecord{op, right_root, Rational(0)};
                return GateRecord{op, 0, Rational(0)};
            }
            if (v_nr > left_root) return descend(s.b, right_root, v_nr, p_idx, env, ctx);
            return descend(s.a, left_root, v_nr, p_idx, env, ctx);
        }
        case Shape::Kind::Atom:
        case Shape::Kind::Arith: {
            std::int64_t right_root = q - 1;
            std::int64_t left_root = q - 1 - s.b->tss;
            if (v_nr == q) {
                int op = s.kind == Shape::Kind::Atom ? (s.flag ? kEq : kLt)
                                                     : (s.flag ? kMul : kAdd);
                if (p_idx == 1) return GateRecord{op, left_root, Rational(0)};
                if (p_idx == 2) return GateRecord{op, right_root, Rational(0)};
                return GateRecord{op, 0, Rational(0)};
            }
            if (v_nr > left_root) return descend(s.b, right_root, v_nr, p_idx, env, ctx);
            return descend(s.a, left_root, v_nr, p_idx, env, ctx);
        }
        case Shape::Kind::Leaf: return leaf_record(s, env);
        case Shape::Kind::SignT:
            if (v_nr == q)
                return p_idx == 1 ? GateRecord{kSign, q - 1, Rational(0)}
                                  : GateRecord{kSign, 0, Rational(0)};
            return descend(s.a, q - 1, v_nr, p_idx, env, ctx);
        case Shape::Kind::Aggregate: {
            int op = s.flag ? kMul : kAdd;
            if (v_nr == q) {
                if (p_idx >= 1 && p_idx <= u)
                    return GateRecord{op, aggregate_copy_root(q, u, s.a->tss, p_idx), Rational(0)};
                return GateRecord{op, 0, Rational(0)};
            }
            std::int64_t i = u - (q - 1 - v_nr) / s.a->tss;
            env.push(s.var, i - 1);
            GateRecord r =
                descend(s.a, aggregate_copy_root(q, u, s.a->tss, i), v_nr, p_idx, env, ctx);
            env.pop();
            return r;
        }
        case Shape::Kind::Select: {
            std::int64_t per = select_per_copy(s);
            std::size_t arity = s.args.size();
            if (v_nr == q) {
                if (p_idx >= 1 && p_idx <= s.copies)
                    return GateRecord{kAdd, select_copy_root(q, s, p_idx), Rational(0)};
                return GateRecord{kAdd, 0, Rational(0)};
            }
            std::int64_t i = s.copies - (q - 1 - v_nr) / per;
            std::int64_t x_nr = select_copy_root(q, s, i);
            std::size_t rank = static_cast<std::size_t>(i - 1);
            bool reads_input =
                s.sym_kind == SymbolKind::Skeleton || s.sym_kind == SymbolKind::Number;
            if (v_nr == x_nr) {
                if (p_idx >= 1 && p_idx <= static_cast<std::int64_t>(arity))
                    return GateRecord{kMul, select_eq_nr(x_nr, s, static_cast<std::size_t>(p_idx)),
                                      Rational(0)};
                if (p_idx == static_cast<std::int64_t>(arity) + 1) {
                    std::int64_t value_nr =
                        reads_input ? ctx.circuit_tss + s.input_offset +
                                          static_cast<std::int64_t>(rank) + 1
                                    : x_nr - 1;
                    return GateRecord{kMul, value_nr, Rational(0)};
                }
                return GateRecord{kMul, 0, Rational(0)};
            }
            if (v_nr == x_nr - 1) {
                if (reads_input) return GateRecord{0, 0, Rational(0)};  // numbering hole
                return GateRecord{kConst, 0, aux_select_value(s, rank, *ctx.arb)};
            }
            std::vector<std::int64_t> tuple = unrank_tuple(rank, static_cast<int>(arity), u);
            for (std::size_t r = arity; r >= 1; --r) {
                std::int64_t e = select_eq_nr(x_nr, s, r);
                std::int64_t arg_root = e - 1;
                std::int64_t const_nr = e - 1 - s.args[r - 1]->tss;
                if (v_nr < const_nr) continue;
                if (v_nr == e) {
                    if (p_idx == 1) return GateRecord{kEq, const_nr, Rational(0)};
                    if (p_idx == 2) return GateRecord{kEq, arg_root, Rational(0)};
                    return GateRecord{kEq, 0, Rational(0)};
                }
                if (v_nr == const_nr) return GateRecord{kConst, 0, Rational(tuple[r - 1])};
                return descend(s.args[r - 1], arg_root, v_nr, p_idx, env, ctx);
            }
            return GateRecord{0, 0, Rational(0)};
        }
    }
    return GateRecord{0, 0, Rational(0)};
}

}  // namespace detail

// Answers one numbered-circuit query without materializing the circuit:
// which gate is v_nr, and what is the number of its p_idx-th predecessor.
// Non-gate numbers (holes, out of range) give (0,0,0); a p_idx beyond the
// indegree gives (t,0,0).
inline GateRecord gate_oracle(const FormulaPtr& f, const Signature& sig, std::int64_t n,
                              std::int64_t v_nr, std::int64_t p_idx,
                              const ArbInterpretation& arb = {}) {
    std::int64_t u;
    try {
        u = recover_universe_size(sig, n);
    } catch (const Error&) {
        fail(ErrorCode::NoUniverseSize, "no universe size encodes to length " + std::to_string(n));
    }
    detail::check_compilable(f, sig);
    detail::ShapeContext sctx = detail::make_shape_context(sig, u);
    detail::ShapeP shape = detail::build_shape(f, sctx);
    std::int64_t circuit_tss = shape->tss + 1;

    if (v_nr < 1 || v_nr > circuit_tss + n) return GateRecord{0, 0, Rational(0)};
    if (v_nr == circuit_tss)
        return p_idx == 1 ? GateRecord{kOutput, circuit_tss - 1, Rational(0)}
                          : GateRecord{kOutput, 0, Rational(0)};
    if (v_nr > circuit_tss) return GateRecord{kInput, 0, Rational(v_nr - circuit_tss)};

    detail::EmitContext ectx{&sctx, &arb, circuit_tss};
    Assignment env;
    return detail::descend(shape, circuit_tss - 1, v_nr, p_idx, env, ectx);
}

// Degree bound for the size-growth polynomial: size(compile(f, u)) is a
// polynomial in u with nonnegative coefficients of at most this degree.
inline int size_degree_bound(const FormulaPtr& f, const Signature& sig) {
    struct Walk {
        static int shape_degree(const detail::ShapeP& sp) {
            const detail::Shape& s = *sp;
            switch (s.kind) {
                case detail::Shape::Kind::Leaf: return 0;
                case detail::Shape::Kind::Quant:
                case detail::Shape::Kind::Aggregate: return 1 + shape_degree(s.a);
                case detail::Shape::Kind::Not:
                case detail::Shape::Kind::SignT: return shape_degree(s.a);
                case detail::Shape::Kind::Junction:
                case detail::Shape::Kind::Atom:
                case detail::Shape::Kind::Arith:
                    return std::max(shape_degree(s.a), shape_degree(s.b));
                case detail::Shape::Kind::Select: {
                    int inner = 0;
                    for (const auto& a : s.args) inner = std::max(inner, shape_degree(a));
                    return static_cast<int>(s.args.size()) + inner;
                }
            }
            return 0;
        }
    };
    check_well_formed(f, sig);
    detail::ShapeP shape = detail::build_shape(f, detail::make_shape_context(sig, 1));
    int deg = Walk::shape_degree(shape);
    for (const Symbol& s : sig.encoded_symbols()) deg = std::max(deg, std::max(s.arity, 1));
    return deg;
}

}  // namespace realac

#endif
