#ifndef REALAC_SIGNATURE_HPP
#define REALAC_SIGNATURE_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "realac/error.hpp"

namespace realac {

// The three symbol lists of a signature. Skeleton functions map universe
// tuples to universe elements; number functions map universe tuples to
// rationals; auxiliary symbols are extra functions a formula may consult
// whose interpretation is supplied separately per structure (either
// index-valued or number-valued).
enum class SymbolKind { Skeleton, Number, AuxIndex, AuxNumber };

struct Symbol {
    std::string name;
    int arity = 0;
    SymbolKind kind = SymbolKind::Skeleton;

    bool operator==(const Symbol&) const = default;
};

class Signature {
public:
    Signature() = default;

    // Order of declaration is the fixed total order used by the encoding
    // (skeleton symbols first, then number symbols; aux symbols never
    // appear in encodings).
    void add(SymbolKind kind, const std::string& name, int arity) {
        if (name.empty())
            fail(ErrorCode::UndeclaredSymbol, "empty symbol name");
        if (arity < 0)
            fail(ErrorCode::ArityMismatch, "negative arity for '" + name + "'");
        if (find(name))
            fail(ErrorCode::UndeclaredSymbol, "duplicate symbol '" + name + "'");
        switch (kind) {
            case SymbolKind::Skeleton: skeleton_.push_back({name, arity, kind}); break;
            case SymbolKind::Number: number_.push_back({name, arity, kind}); break;
            case SymbolKind::AuxIndex:
            case SymbolKind::AuxNumber: aux_.push_back({name, arity, kind}); break;
        }
    }

    const std::vector<Symbol>& skeleton_functions() const { return skeleton_; }
    const std::vector<Symbol>& number_functions() const { return number_; }
    const std::vector<Symbol>& aux_symbols() const { return aux_; }

    // All symbols that contribute tables to the encoding, in encoding order.
    std::vector<Symbol> encoded_symbols() const {
        std::vector<Symbol> all = skeleton_;
        all.insert(all.end(), number_.begin(), number_.end());
        return all;
    }

    // Every declared symbol: encoding order first, then aux symbols.
    std::vector<Symbol> all_symbols() const {
        std::vector<Symbol> all = encoded_symbols();
        all.insert(all.end(), aux_.begin(), aux_.end());
        return all;
    }

    const Symbol* find(const std::string& name) const {
        for (const Symbol& s : skeleton_)
            if (s.name == name) return &s;
        for (const Symbol& s : number_)
            if (s.name == name) return &s;
        for (const Symbol& s : aux_)
            if (s.name == name) return &s;
        return nullptr;
    }

    const Symbol& require(const std::string& name) const {
        const Symbol* s = find(name);
        if (!s) fail(ErrorCode::UndeclaredSymbol, "symbol '" + name + "' is not declared");
        return *s;
    }

    bool operator==(const Signature& other) const = default;

private:
    std::vector<Symbol> skeleton_;
    std::vector<Symbol> number_;
    std::vector<Symbol> aux_;
};

// --- signature text format ---------------------------------------------
//
// One declaration per line: "<kind> <name>/<arity>" with kind one of
// skeleton, number, aux-index, aux-number. Blank lines and '#' comments
// are skipped. '$' is reserved for generated symbols and rejected here.

inline Signature read_signature(std::istream& in) {
    Signature sig;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind_word, decl;
        if (!(ls >> kind_word)) continue;
        if (!(ls >> decl))
            fail(ErrorCode::IoError,
                 "signature line " + std::to_string(lineno) + ": missing '<name>/<arity>'");
        std::string trailing;
        if (ls >> trailing)
            fail(ErrorCode::IoError,
                 "signature line " + std::to_string(lineno) + ": unexpected '" + trailing + "'");
        SymbolKind kind;
        if (kind_word == "skeleton") kind = SymbolKind::Skeleton;
        else if (kind_word == "number") kind = SymbolKind::Number;
        else if (kind_word == "aux-index") kind = SymbolKind::AuxIndex;
        else if (kind_word == "aux-number") kind = SymbolKind::AuxNumber;
        else
            fail(ErrorCode::IoError,
                 "signature line " + std::to_string(lineno) + ": unknown kind '" + kind_word + "'");
        std::size_t slash = decl.rfind('/');
        if (slash == std::string::npos || slash == 0 || slash + 1 == decl.size())
            fail(ErrorCode::IoError,
                 "signature line " + std::to_string(lineno) + ": expected '<name>/<arity>'");
        std::string name = decl.substr(0, slash);
        if (name.find('$') != std::string::npos)
            fail(ErrorCode::IoError,
                 "signature line " + std::to_string(lineno) + ": '$' is reserved in symbol names");
        int arity = 0;
        try {
            std::size_t used = 0;
            arity = std::stoi(decl.substr(slash + 1), &used);
            if (used != decl.size() - slash - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            fail(ErrorCode::IoError,
                 "signature line " + std::to_string(lineno) + ": bad arity in '" + decl + "'");
        }
        sig.add(kind, name, arity);
    }
    return sig;
}

inline void write_signature(std::ostream& out, const Signature& sig) {
    for (const Symbol& s : sig.skeleton_functions())
        out << "skeleton " << s.name << "/" << s.arity << "\n";
    for (const Symbol& s : sig.number_functions())
        out << "number " << s.name << "/" << s.arity << "\n";
    for (const Symbol& s : sig.aux_symbols())
        out << (s.kind == SymbolKind::AuxIndex ? "aux-index " : "aux-number ") << s.name << "/"
            << s.arity << "\n";
}

}  // namespace realac

#endif
