#ifndef REALAC_STRUCTURE_HPP
#define REALAC_STRUCTURE_HPP

#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "realac/error.hpp"
#include "realac/rational.hpp"
#include "realac/signature.hpp"

namespace realac {

// u^arity table sizes, clamped so length probes cannot overflow.
inline std::int64_t pow_clamped(std::int64_t u, int arity, std::int64_t cap) {
    std::int64_t r = 1;
    for (int i = 0; i < arity; ++i) {
        if (r > cap / u) return cap;
        r *= u;
    }
    return r;
}

inline std::size_t table_size(int arity, std::int64_t u) {
    std::int64_t s = pow_clamped(u, arity, std::numeric_limits<std::int64_t>::max() / 2);
    return static_cast<std::size_t>(s);
}

// Rank of an argument tuple in lexicographic order: the first argument is
// the most significant digit.
inline std::size_t tuple_rank(const std::vector<std::int64_t>& args, std::int64_t u) {
    std::size_t r = 0;
    for (std::int64_t a : args) r = r * static_cast<std::size_t>(u) + static_cast<std::size_t>(a);
    return r;
}

// Inverse of tuple_rank.
inline std::vector<std::int64_t> unrank_tuple(std::size_t rank, int arity, std::int64_t u) {
    std::vector<std::int64_t> args(static_cast<std::size_t>(arity), 0);
    for (int i = arity - 1; i >= 0; --i) {
        args[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(rank % static_cast<std::size_t>(u));
        rank /= static_cast<std::size_t>(u);
    }
    return args;
}

// Interpretation of the auxiliary symbols. Index-valued tables hold
// universe elements, number-valued ones rationals; both are flat vectors
// in lexicographic argument order.
struct ArbInterpretation {
    std::map<std::string, std::vector<std::int64_t>> index_tables;
    std::map<std::string, std::vector<Rational>> number_tables;

    bool empty() const { return index_tables.empty() && number_tables.empty(); }
};

// A finite structure over {0..u-1} with skeleton tables (universe-valued)
// and number tables (rational-valued). The ranking is the identity.
class RStructure {
public:
    RStructure() = default;

    RStructure(Signature sig, std::int64_t u) : sig_(std::move(sig)), u_(u) {
        if (u < 1) fail(ErrorCode::RangeViolation, "universe size must be at least 1");
        for (const Symbol& s : sig_.skeleton_functions())
            skeleton_[s.name].assign(table_size(s.arity, u), 0);
        for (const Symbol& s : sig_.number_functions())
            number_[s.name].assign(table_size(s.arity, u), Rational(0));
    }

    const Signature& sig() const { return sig_; }
    std::int64_t universe_size() const { return u_; }

    std::vector<std::int64_t>& skeleton_table(const std::string& name) {
        auto it = skeleton_.find(name);
        if (it == skeleton_.end()) fail(ErrorCode::UndeclaredSymbol, "no skeleton table '" + name + "'");
        return it->second;
    }
    const std::vector<std::int64_t>& skeleton_table(const std::string& name) const {
        return const_cast<RStructure*>(this)->skeleton_table(name);
    }
    std::vector<Rational>& number_table(const std::string& name) {
        auto it = number_.find(name);
        if (it == number_.end()) fail(ErrorCode::UndeclaredSymbol, "no number table '" + name + "'");
        return it->second;
    }
    const std::vector<Rational>& number_table(const std::string& name) const {
        return const_cast<RStructure*>(this)->number_table(name);
    }

    std::int64_t skeleton_value(const std::string& name, const std::vector<std::int64_t>& args) const {
        return skeleton_table(name)[tuple_rank(args, u_)];
    }
    const Rational& number_value(const std::string& name, const std::vector<std::int64_t>& args) const {
        return number_table(name)[tuple_rank(args, u_)];
    }

    bool operator==(const RStructure& other) const {
        return sig_ == other.sig_ && u_ == other.u_ && skeleton_ == other.skeleton_ &&
               number_ == other.number_;
    }

private:
    Signature sig_;
    std::int64_t u_ = 1;
    std::map<std::string, std::vector<std::int64_t>> skeleton_;
    std::map<std::string, std::vector<Rational>> number_;
};

// Length of the encoding: one block per converted skeleton or number
// function, of size u^arity, except that 0-ary functions occupy u slots.
inline std::int64_t encoded_length(const Signature& sig, std::int64_t u) {
    if (u < 1) fail(ErrorCode::RangeViolation, "universe size must be at least 1");
    const std::int64_t cap = std::numeric_limits<std::int64_t>::max() / 2;
    std::int64_t total = 0;
    for (const Symbol& s : sig.encoded_symbols()) {
        std::int64_t block = pow_clamped(u, s.arity > 0 ? s.arity : 1, cap);
        if (total > cap - block) return cap;
        total += block;
    }
    return total;
}

// The real vector enc(D): skeleton tables (values read as rationals)
// followed by number tables, each block in lexicographic argument order,
// 0-ary functions repeated u times.
inline std::vector<Rational> encode(const RStructure& D) {
    std::vector<Rational> out;
    std::int64_t u = D.universe_size();
    out.reserve(static_cast<std::size_t>(encoded_length(D.sig(), u)));
    for (const Symbol& s : D.sig().encoded_symbols()) {
        if (s.arity == 0) {
            Rational v = s.kind == SymbolKind::Skeleton
                             ? Rational(D.skeleton_table(s.name)[0])
                             : D.number_table(s.name)[0];
            for (std::int64_t i = 0; i < u; ++i) out.push_back(v);
            continue;
        }
        if (s.kind == SymbolKind::Skeleton) {
            for (std::int64_t v : D.skeleton_table(s.name)) out.push_back(Rational(v));
        } else {
            const auto& tab = D.number_table(s.name);
            out.insert(out.end(), tab.begin(), tab.end());
        }
    }
    return out;
}

// Inverts encoded_length by binary search: find the lowest u whose length
// reaches n, then insist on equality.
inline std::int64_t recover_universe_size(const Signature& sig, std::int64_t n) {
    if (n < 0) fail(ErrorCode::NoSolution, "negative encoding length");
    if (sig.encoded_symbols().empty()) {
        if (n == 0) return 1;
        fail(ErrorCode::NoSolution, "empty signature encodes only the empty vector");
    }
    std::int64_t lo = 1, hi = std::max<std::int64_t>(n, 1);
    if (encoded_length(sig, hi) < n)
        fail(ErrorCode::NoSolution, "no universe size matches length " + std::to_string(n));
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (encoded_length(sig, mid) >= n)
            hi = mid;
        else
            lo = mid + 1;
    }
    if (encoded_length(sig, lo) != n)
        fail(ErrorCode::NoSolution, "no universe size matches length " + std::to_string(n));
    return lo;
}

// Inverse of encode. Skeleton blocks must hold integers in {0..u-1};
// 0-ary blocks must hold u equal copies.
inline RStructure decode(const Signature& sig, const std::vector<Rational>& v) {
    std::int64_t u;
    try {
        u = recover_universe_size(sig, static_cast<std::int64_t>(v.size()));
    } catch (const Error&) {
        fail(ErrorCode::LengthMismatch,
             "vector of length " + std::to_string(v.size()) + " is not an encoding");
    }
    RStructure D(sig, u);
    std::size_t pos = 0;
    auto take_block = [&](const Symbol& s) {
        std::size_t block = s.arity == 0 ? static_cast<std::size_t>(u) : table_size(s.arity, u);
        std::size_t start = pos;
        pos += block;
        if (s.arity == 0) {
            for (std::size_t i = start + 1; i < pos; ++i)
                if (v[i] != v[start])
                    fail(ErrorCode::RangeViolation,
                         "0-ary block for '" + s.name + "' holds unequal copies");
        }
        return start;
    };
    for (const Symbol& s : sig.encoded_symbols()) {
        std::size_t start = take_block(s);
        std::size_t entries = table_size(s.arity, u);
        if (s.kind == SymbolKind::Skeleton) {
            auto& tab = D.skeleton_table(s.name);
            for (std::size_t i = 0; i < entries; ++i) {
                const Rational& val = v[start + i];
                if (!is_integer(val))
                    fail(ErrorCode::RangeViolation,
                         "skeleton value for '" + s.name + "' is not an integer");
                Rational num = val;
                std::int64_t iv = static_cast<std::int64_t>(boost::multiprecision::numerator(num));
                if (iv < 0 || iv >= u)
                    fail(ErrorCode::RangeViolation,
                         "skeleton value for '" + s.name + "' is outside the universe");
                tab[i] = iv;
            }
        } else {
            auto& tab = D.number_table(s.name);
            for (std::size_t i = 0; i < entries; ++i) tab[i] = v[start + i];
        }
    }
    return D;
}

// --- text format --------------------------------------------------------
//
//   universe <u>
//   <name>/<arity> : v_1 v_2 ... v_{u^arity}
//   ...
//   [arb]
//   <name>/<arity> : ...
//
// Values are in lexicographic argument order; '#' starts a comment. Every
// skeleton and number symbol needs a line; arb lines are optional.

struct StructureFile {
    RStructure structure;
    ArbInterpretation arb;
};

inline StructureFile read_structure(std::istream& in, const Signature& sig) {
    std::string line;
    int lineno = 0;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream probe(line);
            std::string word;
            if (probe >> word) {
                out = line;
                return true;
            }
        }
        return false;
    };

    std::string header;
    if (!next_line(header)) fail(ErrorCode::IoError, "missing 'universe' header");
    std::istringstream hs(header);
    std::string kw;
    std::int64_t u = 0;
    if (!(hs >> kw >> u) || kw != "universe" || u < 1)
        fail(ErrorCode::IoError, "line " + std::to_string(lineno) + ": expected 'universe <u>'");

    RStructure D(sig, u);
    ArbInterpretation arb;
    std::map<std::string, bool> seen;
    bool in_arb = false;

    std::string body;
    while (next_line(body)) {
        std::istringstream ls(body);
        std::string head;
        ls >> head;
        if (head == "[arb]") {
            in_arb = true;
            continue;
        }
        auto slash = head.find('/');
        if (slash == std::string::npos)
            fail(ErrorCode::IoError, "line " + std::to_string(lineno) + ": expected '<name>/<arity>'");
        std::string name = head.substr(0, slash);
        int arity = 0;
        try {
            arity = std::stoi(head.substr(slash + 1));
        } catch (...) {
            fail(ErrorCode::IoError, "line " + std::to_string(lineno) + ": bad arity");
        }
        std::string colon;
        if (!(ls >> colon) || colon != ":")
            fail(ErrorCode::IoError, "line " + std::to_string(lineno) + ": expected ':'");
        const Symbol& sym = sig.require(name);
        if (sym.arity != arity)
            fail(ErrorCode::ArityMismatch, "line " + std::to_string(lineno) + ": '" + name +
                                               "' is declared with arity " +
                                               std::to_string(sym.arity));
        bool aux = sym.kind == SymbolKind::AuxIndex || sym.kind == SymbolKind::AuxNumber;
        if (aux != in_arb)
            fail(ErrorCode::IoError, "line " + std::to_string(lineno) + ": '" + name +
                                         (aux ? "' belongs in the [arb] section"
                                              : "' appears after [arb]"));
        std::size_t entries = table_size(arity, u);
        std::vector<Rational> values;
        values.reserve(entries);
        std::string word;
        while (ls >> word) values.push_back(parse_rational(word));
        if (values.size() != entries)
            fail(ErrorCode::LengthMismatch, "line " + std::to_string(lineno) + ": '" + name +
                                                "' needs " + std::to_string(entries) +
                                                " value(s), got " +
                                                std::to_string(values.size()));
        auto to_universe = [&](const Rational& r) {
            if (!is_integer(r))
                fail(ErrorCode::RangeViolation,
                     "line " + std::to_string(lineno) + ": '" + name + "' value not an integer");
            std::int64_t iv = static_cast<std::int64_t>(boost::multiprecision::numerator(r));
            if (iv < 0 || iv >= u)
                fail(ErrorCode::RangeViolation,
                     "line " + std::to_string(lineno) + ": '" + name + "' value outside universe");
            return iv;
        };
        switch (sym.kind) {
            case SymbolKind::Skeleton: {
                auto& tab = D.skeleton_table(name);
                for (std::size_t i = 0; i < entries; ++i) tab[i] = to_universe(values[i]);
                break;
            }
            case SymbolKind::Number: D.number_table(name) = std::move(values); break;
            case SymbolKind::AuxIndex: {
                std::vector<std::int64_t> tab(entries);
                for (std::size_t i = 0; i < entries; ++i) tab[i] = to_universe(values[i]);
                arb.index_tables[name] = std::move(tab);
                break;
            }
            case SymbolKind::AuxNumber: arb.number_tables[name] = std::move(values); break;
        }
        seen[name] = true;
    }
    for (const Symbol& s : sig.encoded_symbols())
        if (!seen.count(s.name))
            fail(ErrorCode::IoError, "missing table for '" + s.name + "'");
    return StructureFile{std::move(D), std::move(arb)};
}

inline void write_structure(std::ostream& out, const RStructure& D,
                            const ArbInterpretation& arb = {}) {
    out << "universe " << D.universe_size() << "\n";
    for (const Symbol& s : D.sig().encoded_symbols()) {
        out << s.name << '/' << s.arity << " :";
        if (s.kind == SymbolKind::Skeleton) {
            for (std::int64_t v : D.skeleton_table(s.name)) out << ' ' << v;
        } else {
            for (const Rational& v : D.number_table(s.name)) out << ' ' << to_string(v);
        }
        out << "\n";
    }
    if (!arb.empty()) {
        out << "[arb]\n";
        for (const auto& [name, tab] : arb.index_tables) {
            const Symbol& s = D.sig().require(name);
            out << name << '/' << s.arity << " :";
            for (std::int64_t v : tab) out << ' ' << v;
            out << "\n";
        }
        for (const auto& [name, tab] : arb.number_tables) {
            const Symbol& s = D.sig().require(name);
            out << name << '/' << s.arity << " :";
            for (const Rational& v : tab) out << ' ' << to_string(v);
            out << "\n";
        }
    }
}

}  // namespace realac

#endif
