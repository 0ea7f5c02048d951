#ifndef REALAC_GENERATE_HPP
#define REALAC_GENERATE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "realac/ast.hpp"
#include "realac/structure.hpp"

namespace realac {

// Deterministic test-data generators. Everything here draws from a caller
// provided mt19937_64 using plain modulo reduction, never a distribution
// object, so the byte stream is identical across standard libraries.

// Fills every table of every declared symbol, in declaration order and in
// lexicographic argument order: skeleton and index cells are drawn from
// {0..u-1}, number cells from {-2..2}.
inline StructureFile random_structure(const Signature& sig, std::int64_t u,
                                      std::mt19937_64& rng) {
    StructureFile out{RStructure(sig, u), {}};
    for (const Symbol& sym : sig.all_symbols()) {
        std::size_t cells = table_size(sym.arity, u);
        switch (sym.kind) {
            case SymbolKind::Skeleton: {
                auto& tab = out.structure.skeleton_table(sym.name);
                for (std::size_t i = 0; i < cells; ++i)
                    tab[i] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(u));
                break;
            }
            case SymbolKind::Number: {
                auto& tab = out.structure.number_table(sym.name);
                for (std::size_t i = 0; i < cells; ++i)
                    tab[i] = Rational(static_cast<std::int64_t>(rng() % 5) - 2);
                break;
            }
            case SymbolKind::AuxIndex: {
                auto& tab = out.arb.index_tables[sym.name];
                tab.assign(cells, 0);
                for (std::size_t i = 0; i < cells; ++i)
                    tab[i] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(u));
                break;
            }
            case SymbolKind::AuxNumber: {
                auto& tab = out.arb.number_tables[sym.name];
                tab.assign(cells, Rational(0));
                for (std::size_t i = 0; i < cells; ++i)
                    tab[i] = Rational(static_cast<std::int64_t>(rng() % 5) - 2);
                break;
            }
        }
    }
    return out;
}

namespace detail {

struct SweepCell {
    Symbol sym;
    std::size_t offset;
    std::int64_t radix;
};

// One cell per table entry, declaration order then lexicographic argument
// order. Index-valued cells sweep {0..min(u,2)-1}, number cells {0,1}.
inline std::vector<SweepCell> sweep_cells(const Signature& sig, std::int64_t u) {
    std::vector<SweepCell> cells;
    for (const Symbol& sym : sig.all_symbols()) {
        bool index_valued =
            sym.kind == SymbolKind::Skeleton || sym.kind == SymbolKind::AuxIndex;
        std::int64_t radix = index_valued ? std::min<std::int64_t>(u, 2) : 2;
        std::size_t n = table_size(sym.arity, u);
        for (std::size_t i = 0; i < n; ++i) cells.push_back({sym, i, radix});
    }
    return cells;
}

}  // namespace detail

// Number of {0,1}-valued structures (index cells capped by the universe),
// clamped to `cap` so callers can test against a sweep limit.
inline std::uint64_t count_binary_structures(const Signature& sig, std::int64_t u,
                                             std::uint64_t cap) {
    std::uint64_t total = 1;
    for (const auto& cell : detail::sweep_cells(sig, u)) {
        total *= static_cast<std::uint64_t>(cell.radix);
        if (total > cap) return cap + 1;
    }
    return total;
}

// The `index`-th structure of the sweep. The first cell is the most
// significant digit; the last declared cell varies fastest.
inline StructureFile binary_structure(const Signature& sig, std::int64_t u,
                                      std::uint64_t index) {
    auto cells = detail::sweep_cells(sig, u);
    std::vector<std::int64_t> digits(cells.size(), 0);
    for (std::size_t i = cells.size(); i-- > 0;) {
        digits[i] = static_cast<std::int64_t>(
            index % static_cast<std::uint64_t>(cells[i].radix));
        index /= static_cast<std::uint64_t>(cells[i].radix);
    }
    StructureFile out{RStructure(sig, u), {}};
    for (const auto& sym : sig.all_symbols()) {
        if (sym.kind == SymbolKind::AuxIndex)
            out.arb.index_tables[sym.name].assign(table_size(sym.arity, u), 0);
        if (sym.kind == SymbolKind::AuxNumber)
            out.arb.number_tables[sym.name].assign(table_size(sym.arity, u), Rational(0));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Symbol& sym = cells[i].sym;
        switch (sym.kind) {
            case SymbolKind::Skeleton:
                out.structure.skeleton_table(sym.name)[cells[i].offset] = digits[i];
                break;
            case SymbolKind::Number:
                out.structure.number_table(sym.name)[cells[i].offset] = Rational(digits[i]);
                break;
            case SymbolKind::AuxIndex:
                out.arb.index_tables[sym.name][cells[i].offset] = digits[i];
                break;
            case SymbolKind::AuxNumber:
                out.arb.number_tables[sym.name][cells[i].offset] = Rational(digits[i]);
                break;
        }
    }
    return out;
}

// Knobs for the sentence generator below.
struct GenOptions {
    int quantifier_depth = 3;  // number of leading quantifiers, at least 1
    int formula_depth = 2;     // connective nesting under the quantifiers
    int term_depth = 2;
    bool use_aggregates = true;  // sum/prod binders
    bool use_max = false;
    bool use_char = true;
};

namespace detail {

struct SentenceGen {
    const Signature& sig;
    std::mt19937_64& rng;
    const GenOptions& opt;
    std::vector<std::string> scope;  // variables currently in scope
    int fresh_counter = 0;

    std::uint64_t roll(std::uint64_t n) { return rng() % n; }

    std::string fresh(const char* stem) {
        return std::string(stem) + std::to_string(++fresh_counter);
    }

    IndexTermPtr index_term(int depth) {
        auto skel = sig.skeleton_functions();
        if (depth > 0 && !skel.empty() && roll(2) == 0) {
            const Symbol& f = skel[roll(skel.size())];
            std::vector<IndexTermPtr> args;
            for (int i = 0; i < f.arity; ++i) args.push_back(index_term(depth - 1));
            return mk_skeleton_app(f.name, std::move(args));
        }
        return mk_var(scope[roll(scope.size())]);
    }

    NumberTermPtr number_term(int depth) {
        auto nums = sig.number_functions();
        if (depth == 0) {
            if (!nums.empty() && roll(2) == 0) {
                const Symbol& f = nums[roll(nums.size())];
                std::vector<IndexTermPtr> args;
                for (int i = 0; i < f.arity; ++i) args.push_back(index_term(0));
                return mk_num_app(f.name, std::move(args));
            }
            return mk_const(Rational(static_cast<std::int64_t>(roll(5)) - 2));
        }
        std::uint64_t top = 6;
        if (opt.use_aggregates) top += 2;
        if (opt.use_max) top += 1;
        std::uint64_t pick = roll(top);
        switch (pick) {
            case 0:
                return mk_const(Rational(static_cast<std::int64_t>(roll(5)) - 2));
            case 1: {
                if (nums.empty()) return number_term(0);
                const Symbol& f = nums[roll(nums.size())];
                std::vector<IndexTermPtr> args;
                for (int i = 0; i < f.arity; ++i) args.push_back(index_term(depth - 1));
                return mk_num_app(f.name, std::move(args));
            }
            case 2:
                return mk_add(number_term(depth - 1), number_term(depth - 1));
            case 3:
                return mk_mul(number_term(depth - 1), number_term(depth - 1));
            case 4:
                return mk_sign(number_term(depth - 1));
            case 5:
                if (opt.use_char) return mk_char(formula(0));
                return number_term(0);
            default: {
                std::string v = fresh("w");
                scope.push_back(v);
                NumberTermPtr body = number_term(depth - 1);
                scope.pop_back();
                if (pick == 6) return mk_sum(v, std::move(body));
                if (pick == 7) return mk_prod(v, std::move(body));
                return mk_max(v, std::move(body));
            }
        }
    }

    FormulaPtr atom() {
        switch (roll(3)) {
            case 0:
                return mk_index_eq(index_term(1), index_term(1));
            case 1:
                return mk_num_eq(number_term(opt.term_depth), number_term(opt.term_depth));
            default:
                return mk_num_lt(number_term(opt.term_depth), number_term(opt.term_depth));
        }
    }

    FormulaPtr formula(int depth) {
        if (depth == 0) return atom();
        switch (roll(6)) {
            case 0:
                return mk_not(formula(depth - 1));
            case 1:
                return mk_and(formula(depth - 1), formula(depth - 1));
            case 2:
                return mk_or(formula(depth - 1), formula(depth - 1));
            case 3:
                return mk_implies(formula(depth - 1), formula(depth - 1));
            case 4:
                return mk_iff(formula(depth - 1), formula(depth - 1));
            default:
                return atom();
        }
    }
};

}  // namespace detail

// A closed formula over sig: a block of random quantifiers (at least one,
// so variables are always in scope) over a random matrix. Fresh binder
// names are drawn from disjoint counters, so nothing ever shadows.
inline FormulaPtr random_sentence(const Signature& sig, std::mt19937_64& rng,
                                  const GenOptions& opt = {}) {
    detail::SentenceGen gen{sig, rng, opt, {}, 0};
    int qd = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(
                     std::max(1, opt.quantifier_depth)));
    std::vector<std::pair<bool, std::string>> block;
    for (int i = 0; i < qd; ++i) {
        std::string v = "v" + std::to_string(i + 1);
        block.emplace_back(rng() % 2 == 0, v);
        gen.scope.push_back(v);
    }
    FormulaPtr body = gen.formula(opt.formula_depth);
    for (auto it = block.rbegin(); it != block.rend(); ++it)
        body = it->first ? mk_exists(it->second, std::move(body))
                         : mk_forall(it->second, std::move(body));
    return body;
}

// A small random signature: `fn_count` symbols named g1, g2, ... with
// arities in {0..max_arity}, each independently skeleton or number valued.
inline Signature random_signature(std::mt19937_64& rng, int fn_count, int max_arity) {
    Signature sig;
    for (int i = 0; i < fn_count; ++i) {
        SymbolKind kind = rng() % 2 == 0 ? SymbolKind::Skeleton : SymbolKind::Number;
        int arity = static_cast<int>(rng() % static_cast<std::uint64_t>(max_arity + 1));
        sig.add(kind, "g" + std::to_string(i + 1), arity);
    }
    return sig;
}

}  // namespace realac

#endif
