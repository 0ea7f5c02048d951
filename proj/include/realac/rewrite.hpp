#ifndef REALAC_REWRITE_HPP
#define REALAC_REWRITE_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "realac/ast.hpp"
#include "realac/error.hpp"
#include "realac/eval.hpp"
#include "realac/structure.hpp"

namespace realac {

namespace detail {

struct FreshNames {
    std::set<std::string> used;
    int counter = 0;

    std::string next(const std::string& stem) {
        while (true) {
            ++counter;
            std::string name = stem + std::to_string(counter);
            if (used.insert(name).second) return name;
        }
    }

    // The m-th witness pair shares one index: x<m>, y<m>. Skips ahead if
    // either name is already taken.
    std::pair<std::string, std::string> next_pair() {
        while (true) {
            ++counter;
            std::string x = "x" + std::to_string(counter);
            std::string y = "y" + std::to_string(counter);
            if (used.count(x) || used.count(y)) continue;
            used.insert(x);
            used.insert(y);
            return {x, y};
        }
    }
};

// Locates the first outermost Max in pre-order, not descending into Max
// bodies or Char subtrees (Char bodies are rewritten separately). Records
// the path from the term root and the aggregate binders crossed on the way.
struct MaxSite {
    std::vector<int> path;             // child indices from the root term
    NumberTermPtr node;                // the Max node itself
    std::vector<std::string> crossed;  // Sum/Prod/Max binders above it
};

inline bool find_first_max(const NumberTermPtr& t, std::vector<int>& path,
                           std::vector<std::string>& crossed, MaxSite& out) {
    switch (t->kind) {
        case NumberTerm::Kind::Max:
            out.path = path;
            out.node = t;
            out.crossed = crossed;
            return true;
        case NumberTerm::Kind::Add:
        case NumberTerm::Kind::Mul:
            for (int c = 0; c < 2; ++c) {
                path.push_back(c);
                if (find_first_max(c == 0 ? t->t1 : t->t2, path, crossed, out)) return true;
                path.pop_back();
            }
            return false;
        case NumberTerm::Kind::Sign:
            path.push_back(0);
            if (find_first_max(t->t1, path, crossed, out)) return true;
            path.pop_back();
            return false;
        case NumberTerm::Kind::Sum:
        case NumberTerm::Kind::Prod:
            path.push_back(0);
            crossed.push_back(t->name);
            if (find_first_max(t->t1, path, crossed, out)) return true;
            crossed.pop_back();
            path.pop_back();
            return false;
        default:
            return false;  // constants, applications, Char
    }
}

inline NumberTermPtr replace_at_path(const NumberTermPtr& t, const std::vector<int>& path,
                                     std::size_t depth, const NumberTermPtr& replacement) {
    if (depth == path.size()) return replacement;
    auto n = std::make_shared<NumberTerm>(*t);
    if (path[depth] == 0)
        n->t1 = replace_at_path(t->t1, path, depth + 1, replacement);
    else
        n->t2 = replace_at_path(t->t2, path, depth + 1, replacement);
    return n;
}

inline FormulaPtr elim_max_formula(const FormulaPtr& f, FreshNames& fresh);

inline NumberTermPtr elim_max_in_chars(const NumberTermPtr& t, FreshNames& fresh) {
    switch (t->kind) {
        case NumberTerm::Kind::Const:
        case NumberTerm::Kind::NumApp:
        case NumberTerm::Kind::AuxNumApp:
            return t;
        case NumberTerm::Kind::Add:
        case NumberTerm::Kind::Mul: {
            auto a = elim_max_in_chars(t->t1, fresh);
            auto b = elim_max_in_chars(t->t2, fresh);
            if (a == t->t1 && b == t->t2) return t;
            auto n = std::make_shared<NumberTerm>(*t);
            n->t1 = std::move(a);
            n->t2 = std::move(b);
            return n;
        }
        case NumberTerm::Kind::Sign:
        case NumberTerm::Kind::Sum:
        case NumberTerm::Kind::Prod:
        case NumberTerm::Kind::Max: {
            auto a = elim_max_in_chars(t->t1, fresh);
            if (a == t->t1) return t;
            auto n = std::make_shared<NumberTerm>(*t);
            n->t1 = std::move(a);
            return n;
        }
        case NumberTerm::Kind::Char: {
            auto p = elim_max_formula(t->phi, fresh);
            if (p == t->phi) return t;
            auto n = std::make_shared<NumberTerm>(*t);
            n->phi = std::move(p);
            return n;
        }
    }
    return t;
}

// Hoists one Max out of a number atom: the atom alpha containing the
// occurrence max_i(F) becomes
//
//   exists x. forall y. ( F[i:=y] <= F[i:=x]  &  alpha[occurrence := F[i:=x]] )
//
// which is equivalent to alpha pointwise, so the replacement is sound in
// any surrounding context. Copies of F may hold further Max nodes, so the
// result is rewritten again until none are left.
inline FormulaPtr elim_max_atom(const FormulaPtr& f, FreshNames& fresh) {
    NumberTermPtr t1 = elim_max_in_chars(f->t1, fresh);
    NumberTermPtr t2 = elim_max_in_chars(f->t2, fresh);

    MaxSite site;
    std::vector<int> path;
    std::vector<std::string> crossed;
    int which = -1;
    if (find_first_max(t1, path, crossed, site)) {
        which = 0;
    } else {
        path.clear();
        crossed.clear();
        if (find_first_max(t2, path, crossed, site)) which = 1;
    }
    if (which < 0) {
        if (t1 == f->t1 && t2 == f->t2) return f;
        auto n = std::make_shared<Formula>(*f);
        n->t1 = std::move(t1);
        n->t2 = std::move(t2);
        return n;
    }

    std::set<std::string> body_free = free_vars(site.node->t1);
    body_free.erase(site.node->name);
    for (const std::string& b : site.crossed)
        if (body_free.count(b))
            fail(ErrorCode::UnsupportedNesting,
                 "max over '" + site.node->name + "' depends on aggregate variable '" + b + "'");

    auto [x, y] = fresh.next_pair();
    NumberTermPtr fx = subst_var(site.node->t1, site.node->name, mk_var(x));
    NumberTermPtr fy = subst_var(site.node->t1, site.node->name, mk_var(y));

    // F[y] <= F[x], spelled with the available atoms.
    FormulaPtr cert = mk_or(mk_num_lt(fy, fx), mk_num_eq(fx, fy));

    NumberTermPtr nt1 = which == 0 ? replace_at_path(t1, site.path, 0, fx) : t1;
    NumberTermPtr nt2 = which == 1 ? replace_at_path(t2, site.path, 0, fx) : t2;
    auto atom = std::make_shared<Formula>(*f);
    atom->t1 = std::move(nt1);
    atom->t2 = std::move(nt2);

    FormulaPtr hoisted = mk_exists(x, mk_forall(y, mk_and(std::move(cert), atom)));
    return elim_max_formula(hoisted, fresh);
}

inline FormulaPtr elim_max_formula(const FormulaPtr& f, FreshNames& fresh) {
    switch (f->kind) {
        case Formula::Kind::IndexEq: return f;
        case Formula::Kind::NumEq:
        case Formula::Kind::NumLt: return elim_max_atom(f, fresh);
        case Formula::Kind::Not: {
            auto a = elim_max_formula(f->f1, fresh);
            if (a == f->f1) return f;
            auto n = std::make_shared<Formula>(*f);
            n->f1 = std::move(a);
            return n;
        }
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff: {
            auto a = elim_max_formula(f->f1, fresh);
            auto b = elim_max_formula(f->f2, fresh);
            if (a == f->f1 && b == f->f2) return f;
            auto n = std::make_shared<Formula>(*f);
            n->f1 = std::move(a);
            n->f2 = std::move(b);
            return n;
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            auto a = elim_max_formula(f->f1, fresh);
            if (a == f->f1) return f;
            auto n = std::make_shared<Formula>(*f);
            n->f1 = std::move(a);
            return n;
        }
    }
    return f;
}

}  // namespace detail

// Removes every Max node while preserving satisfaction. Fresh witness
// variables are named x1, y1, x2, ... skipping anything already used.
inline FormulaPtr eliminate_max(const FormulaPtr& f) {
    detail::FreshNames fresh;
    collect_all_var_names(f, fresh.used);
    return detail::elim_max_formula(f, fresh);
}

// One absorbed aggregate: fresh 0-ary-or-more auxiliary number symbol
// standing for sum/prod of 'body' over 'bound_var', parameterized by the
// occurrence's free variables in name order.
struct AuxDef {
    std::string name;
    int arity;
    NumberTermPtr body;
    std::string bound_var;
    bool is_prod;
    std::vector<std::string> params;
};

namespace detail {

struct AbsorbState {
    std::vector<AuxDef>* defs;
    int counter = 0;
};

inline FormulaPtr absorb_formula(const FormulaPtr& f, AbsorbState& st);

inline NumberTermPtr absorb_term(const NumberTermPtr& t, AbsorbState& st) {
    switch (t->kind) {
        case NumberTerm::Kind::Const:
        case NumberTerm::Kind::NumApp:
        case NumberTerm::Kind::AuxNumApp:
            return t;
        case NumberTerm::Kind::Add:
        case NumberTerm::Kind::Mul: {
            auto a = absorb_term(t->t1, st);
            auto b = absorb_term(t->t2, st);
            if (a == t->t1 && b == t->t2) return t;
            auto n = std::make_shared<NumberTerm>(*t);
            n->t1 = std::move(a);
            n->t2 = std::move(b);
            return n;
        }
        case NumberTerm::Kind::Sign:
        case NumberTerm::Kind::Max: {
            auto a = absorb_term(t->t1, st);
            if (a == t->t1) return t;
            auto n = std::make_shared<NumberTerm>(*t);
            n->t1 = std::move(a);
            return n;
        }
        case NumberTerm::Kind::Sum:
        case NumberTerm::Kind::Prod: {
            bool is_prod = t->kind == NumberTerm::Kind::Prod;
            NumberTermPtr body = absorb_term(t->t1, st);  // innermost first
            std::set<std::string> fv;
            collect_free_vars(body, fv);
            fv.erase(t->name);
            std::vector<std::string> params(fv.begin(), fv.end());
            std::string name =
                (is_prod ? "prod$" : "sum$") + std::to_string(++st.counter);
            st.defs->push_back(AuxDef{name, static_cast<int>(params.size()), body, t->name,
                                      is_prod, params});
            std::vector<IndexTermPtr> args;
            args.reserve(params.size());
            for (const auto& p : params) args.push_back(mk_var(p));
            return mk_aux_num_app(name, std::move(args));
        }
        case NumberTerm::Kind::Char: {
            auto p = absorb_formula(t->phi, st);
            if (p == t->phi) return t;
            auto n = std::make_shared<NumberTerm>(*t);
            n->phi = std::move(p);
            return n;
        }
    }
    return t;
}

inline FormulaPtr absorb_formula(const FormulaPtr& f, AbsorbState& st) {
    switch (f->kind) {
        case Formula::Kind::IndexEq: return f;
        case Formula::Kind::NumEq:
        case Formula::Kind::NumLt: {
            auto a = absorb_term(f->t1, st);
            auto b = absorb_term(f->t2, st);
            if (a == f->t1 && b == f->t2) return f;
            auto n = std::make_shared<Formula>(*f);
            n->t1 = std::move(a);
            n->t2 = std::move(b);
            return n;
        }
        case Formula::Kind::Not: {
            auto a = absorb_formula(f->f1, st);
            if (a == f->f1) return f;
            auto n = std::make_shared<Formula>(*f);
            n->f1 = std::move(a);
            return n;
        }
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff: {
            auto a = absorb_formula(f->f1, st);
            auto b = absorb_formula(f->f2, st);
            if (a == f->f1 && b == f->f2) return f;
            auto n = std::make_shared<Formula>(*f);
            n->f1 = std::move(a);
            n->f2 = std::move(b);
            return n;
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            auto a = absorb_formula(f->f1, st);
            if (a == f->f1) return f;
            auto n = std::make_shared<Formula>(*f);
            n->f1 = std::move(a);
            return n;
        }
    }
    return f;
}

}  // namespace detail

// Replaces every Sum/Prod node by an application of a fresh auxiliary
// number symbol, innermost occurrences first. The returned definitions
// are ordered so each body only mentions earlier fresh symbols.
inline std::pair<FormulaPtr, std::vector<AuxDef>> absorb_sums(const FormulaPtr& f) {
    std::vector<AuxDef> defs;
    detail::AbsorbState st{&defs, 0};
    FormulaPtr out = detail::absorb_formula(f, st);
    return {out, std::move(defs)};
}

// Adds a number-symbol declaration for each absorbed aggregate.
inline Signature extend_signature(const Signature& sig, const std::vector<AuxDef>& defs) {
    Signature out = sig;
    for (const AuxDef& d : defs) out.add(SymbolKind::AuxNumber, d.name, d.arity);
    return out;
}

// Tabulates each definition by direct evaluation, extending I as it goes
// so later bodies can read earlier tables.
inline ArbInterpretation build_aux_interpretation(const std::vector<AuxDef>& defs,
                                                 const RStructure& D,
                                                 const ArbInterpretation& I) {
    ArbInterpretation out = I;
    std::int64_t u = D.universe_size();
    for (const AuxDef& d : defs) {
        std::size_t entries = table_size(d.arity, u);
        std::vector<Rational> table(entries);
        for (std::size_t r = 0; r < entries; ++r) {
            std::vector<std::int64_t> tuple = unrank_tuple(r, d.arity, u);
            Assignment a;
            for (std::size_t j = 0; j < d.params.size(); ++j) a.push(d.params[j], tuple[j]);
            detail::Evaluator ev(D, out);
            Rational acc(d.is_prod ? 1 : 0);
            for (std::int64_t i = 0; i < u; ++i) {
                a.push(d.bound_var, i);
                Rational v = ev.number_term(d.body, a);
                a.pop();
                if (d.is_prod)
                    acc *= v;
                else
                    acc += v;
            }
            table[r] = std::move(acc);
        }
        out.number_tables[d.name] = std::move(table);
    }
    return out;
}

}  // namespace realac

#endif
