#ifndef REALAC_AST_HPP
#define REALAC_AST_HPP

#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "realac/error.hpp"
#include "realac/rational.hpp"
#include "realac/signature.hpp"

namespace realac {

struct IndexTerm;
struct NumberTerm;
struct Formula;

// Nodes are immutable after construction and shared freely; rewrites
// build new trees around untouched subtrees.
using IndexTermPtr = std::shared_ptr<const IndexTerm>;
using NumberTermPtr = std::shared_ptr<const NumberTerm>;
using FormulaPtr = std::shared_ptr<const Formula>;

// Index terms take values in the universe {0..u-1}.
struct IndexTerm {
    enum class Kind { Var, SkeletonApp, AuxIndexApp };
    Kind kind;
    std::string name;                // variable or symbol name
    std::vector<IndexTermPtr> args;  // applications only
};

// Number terms take values in the rationals.
struct NumberTerm {
    enum class Kind { Const, NumApp, AuxNumApp, Add, Mul, Sign, Sum, Prod, Max, Char };
    Kind kind;
    Rational value;                  // Const
    std::string name;                // symbol name (apps) or bound variable (Sum/Prod/Max)
    std::vector<IndexTermPtr> args;  // applications
    NumberTermPtr t1;                // Add/Mul left; Sign/Sum/Prod/Max body
    NumberTermPtr t2;                // Add/Mul right
    FormulaPtr phi;                  // Char
};

struct Formula {
    enum class Kind { IndexEq, NumEq, NumLt, Not, And, Or, Implies, Iff, Exists, Forall };
    Kind kind;
    IndexTermPtr h1, h2;  // IndexEq
    NumberTermPtr t1, t2; // NumEq / NumLt
    FormulaPtr f1, f2;    // connectives; quantifier body in f1
    std::string var;      // quantified variable
};

// --- builders ----------------------------------------------------------

inline IndexTermPtr mk_var(std::string name) {
    auto n = std::make_shared<IndexTerm>();
    n->kind = IndexTerm::Kind::Var;
    n->name = std::move(name);
    return n;
}

inline IndexTermPtr mk_skeleton_app(std::string symbol, std::vector<IndexTermPtr> args) {
    auto n = std::make_shared<IndexTerm>();
    n->kind = IndexTerm::Kind::SkeletonApp;
    n->name = std::move(symbol);
    n->args = std::move(args);
    return n;
}

inline IndexTermPtr mk_aux_index_app(std::string symbol, std::vector<IndexTermPtr> args) {
    auto n = std::make_shared<IndexTerm>();
    n->kind = IndexTerm::Kind::AuxIndexApp;
    n->name = std::move(symbol);
    n->args = std::move(args);
    return n;
}

inline NumberTermPtr mk_const(Rational value) {
    auto n = std::make_shared<NumberTerm>();
    n->kind = NumberTerm::Kind::Const;
    n->value = std::move(value);
    return n;
}

inline NumberTermPtr mk_num_app(std::string symbol, std::vector<IndexTermPtr> args) {
    auto n = std::make_shared<NumberTerm>();
    n->kind = NumberTerm::Kind::NumApp;
    n->name = std::move(symbol);
    n->args = std::move(args);
    return n;
}

inline NumberTermPtr mk_aux_num_app(std::string symbol, std::vector<IndexTermPtr> args) {
    auto n = std::make_shared<NumberTerm>();
    n->kind = NumberTerm::Kind::AuxNumApp;
    n->name = std::move(symbol);
    n->args = std::move(args);
    return n;
}

inline NumberTermPtr mk_binary(NumberTerm::Kind kind, NumberTermPtr a, NumberTermPtr b) {
    auto n = std::make_shared<NumberTerm>();
    n->kind = kind;
    n->t1 = std::move(a);
    n->t2 = std::move(b);
    return n;
}

inline NumberTermPtr mk_add(NumberTermPtr a, NumberTermPtr b) {
    return mk_binary(NumberTerm::Kind::Add, std::move(a), std::move(b));
}

inline NumberTermPtr mk_mul(NumberTermPtr a, NumberTermPtr b) {
    return mk_binary(NumberTerm::Kind::Mul, std::move(a), std::move(b));
}

inline NumberTermPtr mk_sign(NumberTermPtr t) {
    auto n = std::make_shared<NumberTerm>();
    n->kind = NumberTerm::Kind::Sign;
    n->t1 = std::move(t);
    return n;
}

inline NumberTermPtr mk_aggregate(NumberTerm::Kind kind, std::string bound_var,
                                  NumberTermPtr body) {
    auto n = std::make_shared<NumberTerm>();
    n->kind = kind;
    n->name = std::move(bound_var);
    n->t1 = std::move(body);
    return n;
}

inline NumberTermPtr mk_sum(std::string v, NumberTermPtr body) {
    return mk_aggregate(NumberTerm::Kind::Sum, std::move(v), std::move(body));
}

inline NumberTermPtr mk_prod(std::string v, NumberTermPtr body) {
    return mk_aggregate(NumberTerm::Kind::Prod, std::move(v), std::move(body));
}

inline NumberTermPtr mk_max(std::string v, NumberTermPtr body) {
    return mk_aggregate(NumberTerm::Kind::Max, std::move(v), std::move(body));
}

inline NumberTermPtr mk_char(FormulaPtr phi) {
    auto n = std::make_shared<NumberTerm>();
    n->kind = NumberTerm::Kind::Char;
    n->phi = std::move(phi);
    return n;
}

inline FormulaPtr mk_index_eq(IndexTermPtr a, IndexTermPtr b) {
    auto n = std::make_shared<Formula>();
    n->kind = Formula::Kind::IndexEq;
    n->h1 = std::move(a);
    n->h2 = std::move(b);
    return n;
}

inline FormulaPtr mk_num_cmp(Formula::Kind kind, NumberTermPtr a, NumberTermPtr b) {
    auto n = std::make_shared<Formula>();
    n->kind = kind;
    n->t1 = std::move(a);
    n->t2 = std::move(b);
    return n;
}

inline FormulaPtr mk_num_eq(NumberTermPtr a, NumberTermPtr b) {
    return mk_num_cmp(Formula::Kind::NumEq, std::move(a), std::move(b));
}

inline FormulaPtr mk_num_lt(NumberTermPtr a, NumberTermPtr b) {
    return mk_num_cmp(Formula::Kind::NumLt, std::move(a), std::move(b));
}

inline FormulaPtr mk_not(FormulaPtr f) {
    auto n = std::make_shared<Formula>();
    n->kind = Formula::Kind::Not;
    n->f1 = std::move(f);
    return n;
}

inline FormulaPtr mk_connective(Formula::Kind kind, FormulaPtr a, FormulaPtr b) {
    auto n = std::make_shared<Formula>();
    n->kind = kind;
    n->f1 = std::move(a);
    n->f2 = std::move(b);
    return n;
}

inline FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) {
    return mk_connective(Formula::Kind::And, std::move(a), std::move(b));
}

inline FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) {
    return mk_connective(Formula::Kind::Or, std::move(a), std::move(b));
}

inline FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) {
    return mk_connective(Formula::Kind::Implies, std::move(a), std::move(b));
}

inline FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b) {
    return mk_connective(Formula::Kind::Iff, std::move(a), std::move(b));
}

inline FormulaPtr mk_quantifier(Formula::Kind kind, std::string var, FormulaPtr body) {
    auto n = std::make_shared<Formula>();
    n->kind = kind;
    n->var = std::move(var);
    n->f1 = std::move(body);
    return n;
}

inline FormulaPtr mk_exists(std::string var, FormulaPtr body) {
    return mk_quantifier(Formula::Kind::Exists, std::move(var), std::move(body));
}

inline FormulaPtr mk_forall(std::string var, FormulaPtr body) {
    return mk_quantifier(Formula::Kind::Forall, std::move(var), std::move(body));
}

// --- structural equality -----------------------------------------------

bool equals(const IndexTermPtr& a, const IndexTermPtr& b);
bool equals(const NumberTermPtr& a, const NumberTermPtr& b);
bool equals(const FormulaPtr& a, const FormulaPtr& b);

inline bool equals_args(const std::vector<IndexTermPtr>& a, const std::vector<IndexTermPtr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equals(a[i], b[i])) return false;
    return true;
}

inline bool equals(const IndexTermPtr& a, const IndexTermPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->kind == b->kind && a->name == b->name && equals_args(a->args, b->args);
}

inline bool equals(const NumberTermPtr& a, const NumberTermPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case NumberTerm::Kind::Const: return a->value == b->value;
        case NumberTerm::Kind::NumApp:
        case NumberTerm::Kind::AuxNumApp:
            return a->name == b->name && equals_args(a->args, b->args);
        case NumberTerm::Kind::Add:
        case NumberTerm::Kind::Mul:
            return equals(a->t1, b->t1) && equals(a->t2, b->t2);
        case NumberTerm::Kind::Sign: return equals(a->t1, b->t1);
        case NumberTerm::Kind::Sum:
        case NumberTerm::Kind::Prod:
        case NumberTerm::Kind::Max:
            return a->name == b->name && equals(a->t1, b->t1);
        case NumberTerm::Kind::Char: return equals(a->phi, b->phi);
    }
    return false;
}

inline bool equals(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Formula::Kind::IndexEq: return equals(a->h1, b->h1) && equals(a->h2, b->h2);
        case Formula::Kind::NumEq:
        case Formula::Kind::NumLt:
            return equals(a->t1, b->t1) && equals(a->t2, b->t2);
        case Formula::Kind::Not: return equals(a->f1, b->f1);
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff:
            return equals(a->f1, b->f1) && equals(a->f2, b->f2);
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            return a->var == b->var && equals(a->f1, b->f1);
    }
    return false;
}

// --- free variables ----------------------------------------------------

namespace detail {

// Free variables are a pure bottom-up attribute, so one pointer-keyed
// cache per walk lets heavily shared term DAGs be traversed in linear
// time (a plain tree walk would revisit shared nodes exponentially).
struct FreeVarWalker {
    std::unordered_map<const void*, std::set<std::string>> cache;

    const std::set<std::string>& visit(const IndexTermPtr& h) {
        auto it = cache.find(h.get());
        if (it != cache.end()) return it->second;
        std::set<std::string> fv;
        if (h->kind == IndexTerm::Kind::Var) {
            fv.insert(h->name);
        } else {
            for (const auto& a : h->args) merge(fv, visit(a));
        }
        return cache.emplace(h.get(), std::move(fv)).first->second;
    }

    const std::set<std::string>& visit(const NumberTermPtr& t) {
        auto it = cache.find(t.get());
        if (it != cache.end()) return it->second;
        std::set<std::string> fv;
        switch (t->kind) {
            case NumberTerm::Kind::Const: break;
            case NumberTerm::Kind::NumApp:
            case NumberTerm::Kind::AuxNumApp:
                for (const auto& a : t->args) merge(fv, visit(a));
                break;
            case NumberTerm::Kind::Add:
            case NumberTerm::Kind::Mul:
                merge(fv, visit(t->t1));
                merge(fv, visit(t->t2));
                break;
            case NumberTerm::Kind::Sign: merge(fv, visit(t->t1)); break;
            case NumberTerm::Kind::Sum:
            case NumberTerm::Kind::Prod:
            case NumberTerm::Kind::Max:
                merge(fv, visit(t->t1));
                fv.erase(t->name);
                break;
            case NumberTerm::Kind::Char: merge(fv, visit(t->phi)); break;
        }
        return cache.emplace(t.get(), std::move(fv)).first->second;
    }

    const std::set<std::string>& visit(const FormulaPtr& f) {
        auto it = cache.find(f.get());
        if (it != cache.end()) return it->second;
        std::set<std::string> fv;
        switch (f->kind) {
            case Formula::Kind::IndexEq:
                merge(fv, visit(f->h1));
                merge(fv, visit(f->h2));
                break;
            case Formula::Kind::NumEq:
            case Formula::Kind::NumLt:
                merge(fv, visit(f->t1));
                merge(fv, visit(f->t2));
                break;
            case Formula::Kind::Not: merge(fv, visit(f->f1)); break;
            case Formula::Kind::And:
            case Formula::Kind::Or:
            case Formula::Kind::Implies:
            case Formula::Kind::Iff:
                merge(fv, visit(f->f1));
                merge(fv, visit(f->f2));
                break;
            case Formula::Kind::Exists:
            case Formula::Kind::Forall:
                merge(fv, visit(f->f1));
                fv.erase(f->var);
                break;
        }
        return cache.emplace(f.get(), std::move(fv)).first->second;
    }

    static void merge(std::set<std::string>& into, const std::set<std::string>& from) {
        into.insert(from.begin(), from.end());
    }
};

}  // namespace detail

template <typename NodePtr>
void collect_free_vars(const NodePtr& node, std::set<std::string>& out) {
    detail::FreeVarWalker w;
    const auto& fv = w.visit(node);
    out.insert(fv.begin(), fv.end());
}

template <typename NodePtr>
std::set<std::string> free_vars(const NodePtr& node) {
    std::set<std::string> out;
    collect_free_vars(node, out);
    return out;
}

// All variable names occurring anywhere (free or bound); used for
// fresh-name generation. Accumulation is monotone, so a visited set is
// enough to keep shared DAGs linear.

namespace detail {

struct NameWalker {
    std::unordered_set<const void*> seen;
    std::set<std::string>& out;

    void visit(const IndexTermPtr& h) {
        if (!seen.insert(h.get()).second) return;
        if (h->kind == IndexTerm::Kind::Var) {
            out.insert(h->name);
            return;
        }
        for (const auto& a : h->args) visit(a);
    }

    void visit(const NumberTermPtr& t) {
        if (!seen.insert(t.get()).second) return;
        switch (t->kind) {
            case NumberTerm::Kind::Const: return;
            case NumberTerm::Kind::NumApp:
            case NumberTerm::Kind::AuxNumApp:
                for (const auto& a : t->args) visit(a);
                return;
            case NumberTerm::Kind::Add:
            case NumberTerm::Kind::Mul:
                visit(t->t1);
                visit(t->t2);
                return;
            case NumberTerm::Kind::Sign: visit(t->t1); return;
            case NumberTerm::Kind::Sum:
            case NumberTerm::Kind::Prod:
            case NumberTerm::Kind::Max:
                out.insert(t->name);
                visit(t->t1);
                return;
            case NumberTerm::Kind::Char: visit(t->phi); return;
        }
    }

    void visit(const FormulaPtr& f) {
        if (!seen.insert(f.get()).second) return;
        switch (f->kind) {
            case Formula::Kind::IndexEq:
                visit(f->h1);
                visit(f->h2);
                return;
            case Formula::Kind::NumEq:
            case Formula::Kind::NumLt:
                visit(f->t1);
                visit(f->t2);
                return;
            case Formula::Kind::Not: visit(f->f1); return;
            case Formula::Kind::And:
            case Formula::Kind::Or:
            case Formula::Kind::Implies:
            case Formula::Kind::Iff:
                visit(f->f1);
                visit(f->f2);
                return;
            case Formula::Kind::Exists:
            case Formula::Kind::Forall:
                out.insert(f->var);
                visit(f->f1);
                return;
        }
    }
};

}  // namespace detail

template <typename NodePtr>
void collect_all_var_names(const NodePtr& node, std::set<std::string>& out) {
    detail::NameWalker w{{}, out};
    w.visit(node);
}

// --- substitution of an index variable ---------------------------------
//
// Replaces free occurrences of 'var' by 'replacement'. Callers must make
// sure the replacement's variables cannot be captured (the rewrites in
// this library only substitute fresh variables, which is always safe).

IndexTermPtr subst_var(const IndexTermPtr& h, const std::string& var,
                       const IndexTermPtr& replacement);
NumberTermPtr subst_var(const NumberTermPtr& t, const std::string& var,
                        const IndexTermPtr& replacement);
FormulaPtr subst_var(const FormulaPtr& f, const std::string& var,
                     const IndexTermPtr& replacement);

inline IndexTermPtr subst_var(const IndexTermPtr& h, const std::string& var,
                              const IndexTermPtr& replacement) {
    if (h->kind == IndexTerm::Kind::Var)
        return h->name == var ? replacement : h;
    std::vector<IndexTermPtr> args;
    args.reserve(h->args.size());
    bool changed = false;
    for (const auto& a : h->args) {
        args.push_back(subst_var(a, var, replacement));
        changed |= args.back() != a;
    }
    if (!changed) return h;
    auto n = std::make_shared<IndexTerm>(*h);
    n->args = std::move(args);
    return n;
}

inline NumberTermPtr subst_var(const NumberTermPtr& t, const std::string& var,
                               const IndexTermPtr& replacement) {
    switch (t->kind) {
        case NumberTerm::Kind::Const: return t;
        case NumberTerm::Kind::NumApp:
        case NumberTerm::Kind::AuxNumApp: {
            std::vector<IndexTermPtr> args;
            args.reserve(t->args.size());
            bool changed = false;
            for (const auto& a : t->args) {
                args.push_back(subst_var(a, var, replacement));
                changed |= args.back() != a;
            }
            if (!changed) return t;
            auto n = std::make_shared<NumberTerm>(*t);
            n->args = std::move(args);
            return n;
        }
        case NumberTerm::Kind::Add:
        case NumberTerm::Kind::Mul: {
            NumberTermPtr a = subst_var(t->t1, var, replacement);
            NumberTermPtr b = subst_var(t->t2, var, replacement);
            if (a == t->t1 && b == t->t2) return t;
            auto n = std::make_shared<NumberTerm>(*t);
            n->t1 = std::move(a);
            n->t2 = std::move(b);
            return n;
        }
        case NumberTerm::Kind::Sign: {
            NumberTermPtr a = subst_var(t->t1, var, replacement);
            if (a == t->t1) return t;
            auto n = std::make_shared<NumberTerm>(*t);
            n->t1 = std::move(a);
            return n;
        }
        case NumberTerm::Kind::Sum:
        case NumberTerm::Kind::Prod:
        case NumberTerm::Kind::Max: {
            if (t->name == var) return t;  // bound here, nothing free below
            NumberTermPtr a = subst_var(t->t1, var, replacement);
            if (a == t->t1) return t;
            auto n = std::make_shared<NumberTerm>(*t);
            n->t1 = std::move(a);
            return n;
        }
        case NumberTerm::Kind::Char: {
            FormulaPtr p = subst_var(t->phi, var, replacement);
            if (p == t->phi) return t;
            auto n = std::make_shared<NumberTerm>(*t);
            n->phi = std::move(p);
            return n;
        }
    }
    return t;
}

inline FormulaPtr subst_var(const FormulaPtr& f, const std::string& var,
                            const IndexTermPtr& replacement) {
    switch (f->kind) {
        case Formula::Kind::IndexEq: {
            IndexTermPtr a = subst_var(f->h1, var, replacement);
            IndexTermPtr b = subst_var(f->h2, var, replacement);
            if (a == f->h1 && b == f->h2) return f;
            auto n = std::make_shared<Formula>(*f);
            n->h1 = std::move(a);
            n->h2 = std::move(b);
            return n;
        }
        case Formula::Kind::NumEq:
        case Formula::Kind::NumLt: {
            NumberTermPtr a = subst_var(f->t1, var, replacement);
            NumberTermPtr b = subst_var(f->t2, var, replacement);
            if (a == f->t1 && b == f->t2) return f;
            auto n = std::make_shared<Formula>(*f);
            n->t1 = std::move(a);
            n->t2 = std::move(b);
            return n;
        }
        case Formula::Kind::Not: {
            FormulaPtr a = subst_var(f->f1, var, replacement);
            if (a == f->f1) return f;
            auto n = std::make_shared<Formula>(*f);
            n->f1 = std::move(a);
            return n;
        }
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff: {
            FormulaPtr a = subst_var(f->f1, var, replacement);
            FormulaPtr b = subst_var(f->f2, var, replacement);
            if (a == f->f1 && b == f->f2) return f;
            auto n = std::make_shared<Formula>(*f);
            n->f1 = std::move(a);
            n->f2 = std::move(b);
            return n;
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            if (f->var == var) return f;
            FormulaPtr a = subst_var(f->f1, var, replacement);
            if (a == f->f1) return f;
            auto n = std::make_shared<Formula>(*f);
            n->f1 = std::move(a);
            return n;
        }
    }
    return f;
}

// --- well-formedness ---------------------------------------------------
//
// Checks declaredness, symbol category and arity of every application.
// Scoping is not checked here (shadowing is legal in the AST; the
// compiler rejects it separately).

inline void check_well_formed(const IndexTermPtr& h, const Signature& sig);
inline void check_well_formed(const NumberTermPtr& t, const Signature& sig);
inline void check_well_formed(const FormulaPtr& f, const Signature& sig);

inline void check_app(const Signature& sig, const std::string& name,
                      const std::vector<IndexTermPtr>& args, SymbolKind want,
                      const char* category) {
    const Symbol& sym = sig.require(name);
    if (sym.kind != want)
        fail(ErrorCode::UndeclaredSymbol,
             "'" + name + "' is not a " + std::string(category) + " symbol");
    if (static_cast<int>(args.size()) != sym.arity)
        fail(ErrorCode::ArityMismatch, "'" + name + "' expects " + std::to_string(sym.arity) +
                                           " argument(s), got " + std::to_string(args.size()));
    for (const auto& a : args) check_well_formed(a, sig);
}

inline void check_well_formed(const IndexTermPtr& h, const Signature& sig) {
    switch (h->kind) {
        case IndexTerm::Kind::Var: return;
        case IndexTerm::Kind::SkeletonApp:
            check_app(sig, h->name, h->args, SymbolKind::Skeleton, "skeleton");
            return;
        case IndexTerm::Kind::AuxIndexApp:
            check_app(sig, h->name, h->args, SymbolKind::AuxIndex, "aux-index");
            return;
    }
}

inline void check_well_formed(const NumberTermPtr& t, const Signature& sig) {
    switch (t->kind) {
        case NumberTerm::Kind::Const: return;
        case NumberTerm::Kind::NumApp:
            check_app(sig, t->name, t->args, SymbolKind::Number, "number-function");
            return;
        case NumberTerm::Kind::AuxNumApp:
            check_app(sig, t->name, t->args, SymbolKind::AuxNumber, "aux-number");
            return;
        case NumberTerm::Kind::Add:
        case NumberTerm::Kind::Mul:
            check_well_formed(t->t1, sig);
            check_well_formed(t->t2, sig);
            return;
        case NumberTerm::Kind::Sign:
        case NumberTerm::Kind::Sum:
        case NumberTerm::Kind::Prod:
        case NumberTerm::Kind::Max:
            check_well_formed(t->t1, sig);
            return;
        case NumberTerm::Kind::Char: check_well_formed(t->phi, sig); return;
    }
}

inline void check_well_formed(const FormulaPtr& f, const Signature& sig) {
    switch (f->kind) {
        case Formula::Kind::IndexEq:
            check_well_formed(f->h1, sig);
            check_well_formed(f->h2, sig);
            return;
        case Formula::Kind::NumEq:
        case Formula::Kind::NumLt:
            check_well_formed(f->t1, sig);
            check_well_formed(f->t2, sig);
            return;
        case Formula::Kind::Not: check_well_formed(f->f1, sig); return;
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff:
            check_well_formed(f->f1, sig);
            check_well_formed(f->f2, sig);
            return;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            check_well_formed(f->f1, sig);
            return;
    }
}

// --- node counting helpers (used by rewrite tests) ---------------------
// Each distinct node counts once; shared subterms are not revisited.

namespace detail {

struct KindCounter {
    NumberTerm::Kind kind;
    std::unordered_set<const void*> seen;
    int n = 0;

    void visit(const NumberTermPtr& t) {
        if (!seen.insert(t.get()).second) return;
        if (t->kind == kind) ++n;
        switch (t->kind) {
            case NumberTerm::Kind::Add:
            case NumberTerm::Kind::Mul:
                visit(t->t1);
                visit(t->t2);
                return;
            case NumberTerm::Kind::Sign:
            case NumberTerm::Kind::Sum:
            case NumberTerm::Kind::Prod:
            case NumberTerm::Kind::Max:
                visit(t->t1);
                return;
            case NumberTerm::Kind::Char: visit(t->phi); return;
            default: return;
        }
    }

    void visit(const FormulaPtr& f) {
        if (!seen.insert(f.get()).second) return;
        switch (f->kind) {
            case Formula::Kind::IndexEq: return;
            case Formula::Kind::NumEq:
            case Formula::Kind::NumLt:
                visit(f->t1);
                visit(f->t2);
                return;
            case Formula::Kind::Not: visit(f->f1); return;
            case Formula::Kind::And:
            case Formula::Kind::Or:
            case Formula::Kind::Implies:
            case Formula::Kind::Iff:
                visit(f->f1);
                visit(f->f2);
                return;
            case Formula::Kind::Exists:
            case Formula::Kind::Forall:
                visit(f->f1);
                return;
        }
    }
};

}  // namespace detail

inline int count_nodes_of_kind(const FormulaPtr& f, NumberTerm::Kind kind) {
    detail::KindCounter c{kind, {}, 0};
    c.visit(f);
    return c.n;
}

}  // namespace realac

#endif
