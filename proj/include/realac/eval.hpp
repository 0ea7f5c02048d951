#ifndef REALAC_EVAL_HPP
#define REALAC_EVAL_HPP

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "realac/ast.hpp"
#include "realac/error.hpp"
#include "realac/rational.hpp"
#include "realac/structure.hpp"

namespace realac {

// Variable assignment with lexical scoping: lookups walk from the most
// recent binding, so an inner binder shadows an outer one of the same name.
class Assignment {
public:
    Assignment() = default;
    Assignment(std::initializer_list<std::pair<std::string, std::int64_t>> init) {
        for (auto& [k, v] : init) push(k, v);
    }

    void push(const std::string& name, std::int64_t value) { vars_.emplace_back(name, value); }
    void pop() { vars_.pop_back(); }

    const std::int64_t* find(const std::string& name) const {
        for (auto it = vars_.rbegin(); it != vars_.rend(); ++it)
            if (it->first == name) return &it->second;
        return nullptr;
    }

    std::int64_t require(const std::string& name) const {
        const std::int64_t* v = find(name);
        if (!v) fail(ErrorCode::UnboundVariable, "variable '" + name + "' is not bound");
        return *v;
    }

    bool covers(const std::set<std::string>& names) const {
        for (const auto& n : names)
            if (!find(n)) return false;
        return true;
    }

private:
    std::vector<std::pair<std::string, std::int64_t>> vars_;
};

namespace detail {

// Evaluates one node against one structure. Sum/Prod/Char results are
// memoized per (node, free-variable values) for the lifetime of a single
// top-level call, which keeps deeply shared term DAGs tractable.
class Evaluator {
public:
    Evaluator(const RStructure& D, const ArbInterpretation& I) : D_(D), I_(I), u_(D.universe_size()) {}

    std::int64_t index_term(const IndexTermPtr& h, Assignment& a) {
        switch (h->kind) {
            case IndexTerm::Kind::Var: return a.require(h->name);
            case IndexTerm::Kind::SkeletonApp:
                return D_.skeleton_table(h->name)[args_rank(h->args, a)];
            case IndexTerm::Kind::AuxIndexApp: {
                auto it = I_.index_tables.find(h->name);
                if (it == I_.index_tables.end())
                    fail(ErrorCode::MissingArbTable, "no arb table for '" + h->name + "'");
                return it->second[args_rank(h->args, a)];
            }
        }
        return 0;
    }

    Rational number_term(const NumberTermPtr& t, Assignment& a) {
        switch (t->kind) {
            case NumberTerm::Kind::Const: return t->value;
            case NumberTerm::Kind::NumApp:
                return D_.number_table(t->name)[args_rank(t->args, a)];
            case NumberTerm::Kind::AuxNumApp: {
                auto it = I_.number_tables.find(t->name);
                if (it == I_.number_tables.end())
                    fail(ErrorCode::MissingArbTable, "no arb table for '" + t->name + "'");
                return it->second[args_rank(t->args, a)];
            }
            case NumberTerm::Kind::Add: return number_term(t->t1, a) + number_term(t->t2, a);
            case NumberTerm::Kind::Mul: {
                Rational lhs = number_term(t->t1, a);
                if (lhs == 0) return lhs;  // the right factor cannot change the product
                return lhs * number_term(t->t2, a);
            }
            case NumberTerm::Kind::Sign: return Rational(sign_of(number_term(t->t1, a)));
            case NumberTerm::Kind::Sum: {
                Rational memo_hit;
                std::uint64_t key;
                if (memo_lookup(t.get(), t, a, key, memo_hit)) return memo_hit;
                Rational acc(0);
                for (std::int64_t i = 0; i < u_; ++i) {
                    a.push(t->name, i);
                    acc += number_term(t->t1, a);
                    a.pop();
                }
                memo_store(t.get(), key, acc);
                return acc;
            }
            case NumberTerm::Kind::Prod: {
                Rational memo_hit;
                std::uint64_t key;
                if (memo_lookup(t.get(), t, a, key, memo_hit)) return memo_hit;
                Rational acc(1);
                for (std::int64_t i = 0; i < u_ && acc != 0; ++i) {
                    a.push(t->name, i);
                    acc *= number_term(t->t1, a);
                    a.pop();
                }
                memo_store(t.get(), key, acc);
                return acc;
            }
            case NumberTerm::Kind::Max: {
                Rational best;
                for (std::int64_t i = 0; i < u_; ++i) {
                    a.push(t->name, i);
                    Rational v = number_term(t->t1, a);
                    a.pop();
                    if (i == 0 || v > best) best = std::move(v);
                }
                return best;
            }
            case NumberTerm::Kind::Char: {
                Rational memo_hit;
                std::uint64_t key;
                if (memo_lookup(t.get(), t, a, key, memo_hit)) return memo_hit;
                Rational v(formula(t->phi, a) ? 1 : 0);
                memo_store(t.get(), key, v);
                return v;
            }
        }
        return Rational(0);
    }

    bool formula(const FormulaPtr& f, Assignment& a) {
        switch (f->kind) {
            case Formula::Kind::IndexEq: return index_term(f->h1, a) == index_term(f->h2, a);
            case Formula::Kind::NumEq: return number_term(f->t1, a) == number_term(f->t2, a);
            case Formula::Kind::NumLt: return number_term(f->t1, a) < number_term(f->t2, a);
            case Formula::Kind::Not: return !formula(f->f1, a);
            case Formula::Kind::And: return formula(f->f1, a) && formula(f->f2, a);
            case Formula::Kind::Or: return formula(f->f1, a) || formula(f->f2, a);
            case Formula::Kind::Implies: return !formula(f->f1, a) || formula(f->f2, a);
            case Formula::Kind::Iff: return formula(f->f1, a) == formula(f->f2, a);
            case Formula::Kind::Exists: {
                for (std::int64_t i = 0; i < u_; ++i) {
                    a.push(f->var, i);
                    bool hit = formula(f->f1, a);
                    a.pop();
                    if (hit) return true;
                }
                return false;
            }
            case Formula::Kind::Forall: {
                for (std::int64_t i = 0; i < u_; ++i) {
                    a.push(f->var, i);
                    bool hit = formula(f->f1, a);
                    a.pop();
                    if (!hit) return false;
                }
                return true;
            }
        }
        return false;
    }

private:
    const RStructure& D_;
    const ArbInterpretation& I_;
    std::int64_t u_;
    std::unordered_map<const void*, std::vector<std::string>> free_cache_;
    std::unordered_map<const void*, std::unordered_map<std::uint64_t, Rational>> memo_;

    std::size_t args_rank(const std::vector<IndexTermPtr>& args, Assignment& a) {
        std::size_t r = 0;
        for (const auto& arg : args)
            r = r * static_cast<std::size_t>(u_) + static_cast<std::size_t>(index_term(arg, a));
        return r;
    }

    // Packs the node's free-variable values into one integer key. Bails
    // out (no memo) when the packing would overflow 64 bits.
    bool memo_key(const void* node, const NumberTermPtr& t, Assignment& a, std::uint64_t& key) {
        auto it = free_cache_.find(node);
        if (it == free_cache_.end()) {
            auto fv = free_vars(t);
            it = free_cache_.emplace(node, std::vector<std::string>(fv.begin(), fv.end())).first;
        }
        const auto& names = it->second;
        std::uint64_t k = 0;
        std::uint64_t radix = static_cast<std::uint64_t>(u_);
        for (const auto& n : names) {
            if (k > (std::numeric_limits<std::uint64_t>::max() - radix) / (radix + 1)) return false;
            k = k * (radix + 1) + static_cast<std::uint64_t>(a.require(n)) + 1;
        }
        key = k;
        return true;
    }

    bool memo_lookup(const void* node, const NumberTermPtr& t, Assignment& a, std::uint64_t& key,
                     Rational& out) {
        if (!memo_key(node, t, a, key)) {
            key = std::numeric_limits<std::uint64_t>::max();
            return false;
        }
        auto it = memo_.find(node);
        if (it == memo_.end()) return false;
        auto hit = it->second.find(key);
        if (hit == it->second.end()) return false;
        out = hit->second;
        return true;
    }

    void memo_store(const void* node, std::uint64_t key, const Rational& value) {
        if (key == std::numeric_limits<std::uint64_t>::max()) return;
        memo_[node][key] = value;
    }
};

template <typename NodePtr>
void require_covered(const NodePtr& node, const Assignment& a) {
    for (const auto& v : free_vars(node))
        if (!a.find(v)) fail(ErrorCode::UnboundVariable, "variable '" + v + "' is not bound");
}

}  // namespace detail

inline std::int64_t eval_index_term(const IndexTermPtr& h, const RStructure& D,
                                    const ArbInterpretation& I, const Assignment& a) {
    detail::require_covered(h, a);
    Assignment scratch = a;
    return detail::Evaluator(D, I).index_term(h, scratch);
}

inline Rational eval_number_term(const NumberTermPtr& t, const RStructure& D,
                                 const ArbInterpretation& I, const Assignment& a) {
    detail::require_covered(t, a);
    Assignment scratch = a;
    return detail::Evaluator(D, I).number_term(t, scratch);
}

inline bool satisfies(const FormulaPtr& f, const RStructure& D, const ArbInterpretation& I,
                      const Assignment& a = {}) {
    detail::require_covered(f, a);
    Assignment scratch = a;
    return detail::Evaluator(D, I).formula(f, scratch);
}

}  // namespace realac

#endif
