#ifndef REALAC_PARSER_HPP
#define REALAC_PARSER_HPP

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "realac/ast.hpp"
#include "realac/error.hpp"
#include "realac/signature.hpp"

namespace realac {

// Grammar (formulas bind weakest, index/number terms strongest):
//
//   formula := ("exists"|"forall") IDENT "." formula | iff
//   iff     := impl { "<->" impl }
//   impl    := disj { "->" disj }
//   disj    := conj { "|" conj }
//   conj    := neg  { "&" neg }
//   neg     := "!" neg | atom
//   atom    := iterm "==" iterm | nterm ("="|"<") nterm | "(" formula ")"
//   nterm   := factor { ("+"|"*") factor }          left-assoc, one level
//   factor  := RATIONAL | "sign" "(" nterm ")"
//            | ("sum"|"prod"|"max") IDENT "(" nterm ")"
//            | "chi" "[" formula "]"
//            | IDENT "(" iterm-list ")" | "(" nterm ")"
//   iterm   := IDENT | IDENT "(" iterm-list ")"
//
// '+' and '*' share one precedence level and associate left, so the
// printed association survives a round trip. Alternatives in 'atom' are
// tried in the order written; on overall failure the diagnostic from the
// attempt that got furthest wins.

namespace detail {

enum class TokKind {
    Ident,
    Number,
    KwExists,
    KwForall,
    KwSign,
    KwSum,
    KwProd,
    KwMax,
    KwChi,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Dot,
    Comma,
    EqEq,
    Eq,
    Lt,
    Arrow,
    DArrow,
    Bang,
    Amp,
    Pipe,
    Plus,
    Star,
    End,
};

struct Token {
    TokKind kind;
    std::string text;
    int line;
    int col;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

inline std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](TokKind k, std::string s, int l, int c) {
        out.push_back(Token{k, std::move(s), l, c});
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        int tl = line, tc = col;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            std::string word = text.substr(i, j - i);
            col += static_cast<int>(j - i);
            i = j;
            TokKind k = word == "exists"   ? TokKind::KwExists
                        : word == "forall" ? TokKind::KwForall
                        : word == "sign"   ? TokKind::KwSign
                        : word == "sum"    ? TokKind::KwSum
                        : word == "prod"   ? TokKind::KwProd
                        : word == "max"    ? TokKind::KwMax
                        : word == "chi"    ? TokKind::KwChi
                                           : TokKind::Ident;
            push(k, std::move(word), tl, tc);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && i + 1 < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            std::size_t j = i;
            if (text[j] == '-') ++j;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j < text.size() && text[j] == '/' && j + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                ++j;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            }
            std::string num = text.substr(i, j - i);
            col += static_cast<int>(j - i);
            i = j;
            push(TokKind::Number, std::move(num), tl, tc);
            continue;
        }
        auto two = [&](char a, char b) {
            return c == a && i + 1 < text.size() && text[i + 1] == b;
        };
        if (c == '<' && i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
            push(TokKind::DArrow, "<->", tl, tc);
            i += 3;
            col += 3;
            continue;
        }
        if (two('-', '>')) {
            push(TokKind::Arrow, "->", tl, tc);
            i += 2;
            col += 2;
            continue;
        }
        if (two('=', '=')) {
            push(TokKind::EqEq, "==", tl, tc);
            i += 2;
            col += 2;
            continue;
        }
        TokKind k;
        switch (c) {
            case '(': k = TokKind::LParen; break;
            case ')': k = TokKind::RParen; break;
            case '[': k = TokKind::LBracket; break;
            case ']': k = TokKind::RBracket; break;
            case '.': k = TokKind::Dot; break;
            case ',': k = TokKind::Comma; break;
            case '=': k = TokKind::Eq; break;
            case '<': k = TokKind::Lt; break;
            case '!': k = TokKind::Bang; break;
            case '&': k = TokKind::Amp; break;
            case '|': k = TokKind::Pipe; break;
            case '+': k = TokKind::Plus; break;
            case '*': k = TokKind::Star; break;
            default:
                fail(ErrorCode::SyntaxError, std::to_string(tl) + ":" + std::to_string(tc) +
                                                 ": unexpected character '" + std::string(1, c) +
                                                 "'");
        }
        push(k, std::string(1, c), tl, tc);
        ++i;
        ++col;
    }
    push(TokKind::End, "", line, col);
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, const Signature& sig)
        : toks_(std::move(tokens)), sig_(sig) {}

    FormulaPtr parse() {
        auto f = formula();
        if (f && at(pos_).kind != TokKind::End) miss(pos_, "unexpected trailing input");
        if (!f || at(pos_).kind != TokKind::End) raise();
        return f;
    }

private:
    std::vector<Token> toks_;
    const Signature& sig_;
    std::size_t pos_ = 0;

    // Furthest-failure record: position and message of the attempt that
    // consumed the most input before giving up.
    std::size_t fail_pos_ = 0;
    std::string fail_msg_;
    ErrorCode fail_code_ = ErrorCode::SyntaxError;

    const Token& at(std::size_t i) const { return toks_[i]; }
    const Token& cur() const { return toks_[pos_]; }

    void miss(std::size_t p, const std::string& msg, ErrorCode code = ErrorCode::SyntaxError) {
        bool further = p > fail_pos_ || fail_msg_.empty();
        // At the same position a specific diagnosis beats a generic one
        // from a sibling grammar alternative.
        bool sharper = p == fail_pos_ && fail_code_ == ErrorCode::SyntaxError &&
                       code != ErrorCode::SyntaxError;
        if (further || sharper) {
            fail_pos_ = p;
            fail_msg_ = msg;
            fail_code_ = code;
        }
    }

    [[noreturn]] void raise() {
        const Token& t = at(fail_pos_);
        fail(fail_code_, std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + fail_msg_);
    }

    bool eat(TokKind k) {
        if (cur().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool expect(TokKind k, const char* what) {
        if (eat(k)) return true;
        miss(pos_, std::string("expected ") + what);
        return false;
    }

    // formula := quantifier | iff
    FormulaPtr formula() {
        if (cur().kind == TokKind::KwExists || cur().kind == TokKind::KwForall) {
            bool ex = cur().kind == TokKind::KwExists;
            ++pos_;
            if (cur().kind != TokKind::Ident) {
                miss(pos_, "expected variable name");
                return nullptr;
            }
            std::string var = cur().text;
            ++pos_;
            if (!expect(TokKind::Dot, "'.'")) return nullptr;
            auto body = formula();
            if (!body) return nullptr;
            return ex ? mk_exists(std::move(var), std::move(body))
                      : mk_forall(std::move(var), std::move(body));
        }
        return iff();
    }

    FormulaPtr iff() {
        auto lhs = impl();
        if (!lhs) return nullptr;
        while (eat(TokKind::DArrow)) {
            auto rhs = impl();
            if (!rhs) return nullptr;
            lhs = mk_iff(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    FormulaPtr impl() {
        auto lhs = disj();
        if (!lhs) return nullptr;
        while (eat(TokKind::Arrow)) {
            auto rhs = disj();
            if (!rhs) return nullptr;
            lhs = mk_implies(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    FormulaPtr disj() {
        auto lhs = conj();
        if (!lhs) return nullptr;
        while (eat(TokKind::Pipe)) {
            auto rhs = conj();
            if (!rhs) return nullptr;
            lhs = mk_or(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    FormulaPtr conj() {
        auto lhs = neg();
        if (!lhs) return nullptr;
        while (eat(TokKind::Amp)) {
            auto rhs = neg();
            if (!rhs) return nullptr;
            lhs = mk_and(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    FormulaPtr neg() {
        if (eat(TokKind::Bang)) {
            auto body = neg();
            if (!body) return nullptr;
            return mk_not(std::move(body));
        }
        return atom();
    }

    FormulaPtr atom() {
        // 1st: index equality.
        std::size_t save = pos_;
        if (auto a = iterm()) {
            if (eat(TokKind::EqEq)) {
                if (auto b = iterm()) return mk_index_eq(std::move(a), std::move(b));
                pos_ = save;
            } else {
                miss(pos_, "expected '=='");
                pos_ = save;
            }
        } else {
            pos_ = save;
        }
        // 2nd: number comparison.
        if (auto a = nterm()) {
            if (eat(TokKind::Eq)) {
                if (auto b = nterm()) return mk_num_eq(std::move(a), std::move(b));
            } else if (eat(TokKind::Lt)) {
                if (auto b = nterm()) return mk_num_lt(std::move(a), std::move(b));
            } else {
                miss(pos_, "expected '=' or '<'");
            }
            pos_ = save;
        } else {
            pos_ = save;
        }
        // 3rd: parenthesized formula.
        if (eat(TokKind::LParen)) {
            if (auto f = formula()) {
                if (expect(TokKind::RParen, "')'")) return f;
            }
            pos_ = save;
        }
        miss(save, "expected atom");
        return nullptr;
    }

    std::optional<std::vector<IndexTermPtr>> arg_list() {
        std::vector<IndexTermPtr> args;
        if (eat(TokKind::RParen)) return args;
        while (true) {
            auto a = iterm();
            if (!a) return std::nullopt;
            args.push_back(std::move(a));
            if (eat(TokKind::Comma)) continue;
            if (!expect(TokKind::RParen, "')'")) return std::nullopt;
            return args;
        }
    }

    const Symbol* lookup(std::size_t tok_pos, const std::string& name) {
        const Symbol* sym = sig_.find(name);
        if (!sym)
            miss(tok_pos, "undeclared symbol '" + name + "'", ErrorCode::UndeclaredSymbol);
        return sym;
    }

    bool arity_ok(std::size_t tok_pos, const Symbol& sym, std::size_t got) {
        if (static_cast<int>(got) == sym.arity) return true;
        miss(tok_pos, "'" + sym.name + "' expects " + std::to_string(sym.arity) +
                          " argument(s), got " + std::to_string(got),
             ErrorCode::ArityMismatch);
        return false;
    }

    IndexTermPtr iterm() {
        if (cur().kind != TokKind::Ident) {
            miss(pos_, "expected index term");
            return nullptr;
        }
        std::size_t np = pos_;
        std::string name = cur().text;
        ++pos_;
        if (!eat(TokKind::LParen)) return mk_var(std::move(name));
        const Symbol* sym = lookup(np, name);
        if (!sym) return nullptr;
        if (sym->kind != SymbolKind::Skeleton && sym->kind != SymbolKind::AuxIndex) {
            miss(np, "'" + name + "' is not an index-valued symbol");
            return nullptr;
        }
        auto args = arg_list();
        if (!args || !arity_ok(np, *sym, args->size())) return nullptr;
        return sym->kind == SymbolKind::Skeleton
                   ? mk_skeleton_app(std::move(name), std::move(*args))
                   : mk_aux_index_app(std::move(name), std::move(*args));
    }

    NumberTermPtr nterm() {
        auto lhs = factor();
        if (!lhs) return nullptr;
        while (true) {
            if (eat(TokKind::Plus)) {
                auto rhs = factor();
                if (!rhs) return nullptr;
                lhs = mk_add(std::move(lhs), std::move(rhs));
            } else if (eat(TokKind::Star)) {
                auto rhs = factor();
                if (!rhs) return nullptr;
                lhs = mk_mul(std::move(lhs), std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    NumberTermPtr factor() {
        switch (cur().kind) {
            case TokKind::Number: {
                Rational v = parse_rational(cur().text);
                ++pos_;
                return mk_const(std::move(v));
            }
            case TokKind::KwSign: {
                ++pos_;
                if (!expect(TokKind::LParen, "'('")) return nullptr;
                auto body = nterm();
                if (!body) return nullptr;
                if (!expect(TokKind::RParen, "')'")) return nullptr;
                return mk_sign(std::move(body));
            }
            case TokKind::KwSum:
            case TokKind::KwProd:
            case TokKind::KwMax: {
                NumberTerm::Kind k = cur().kind == TokKind::KwSum    ? NumberTerm::Kind::Sum
                                     : cur().kind == TokKind::KwProd ? NumberTerm::Kind::Prod
                                                                     : NumberTerm::Kind::Max;
                ++pos_;
                if (cur().kind != TokKind::Ident) {
                    miss(pos_, "expected variable name");
                    return nullptr;
                }
                std::string var = cur().text;
                ++pos_;
                if (!expect(TokKind::LParen, "'('")) return nullptr;
                auto body = nterm();
                if (!body) return nullptr;
                if (!expect(TokKind::RParen, "')'")) return nullptr;
                return mk_aggregate(k, std::move(var), std::move(body));
            }
            case TokKind::KwChi: {
                ++pos_;
                if (!expect(TokKind::LBracket, "'['")) return nullptr;
                auto body = formula();
                if (!body) return nullptr;
                if (!expect(TokKind::RBracket, "']'")) return nullptr;
                return mk_char(std::move(body));
            }
            case TokKind::Ident: {
                std::size_t np = pos_;
                std::string name = cur().text;
                ++pos_;
                if (!expect(TokKind::LParen, "'('")) return nullptr;
                const Symbol* sym = lookup(np, name);
                if (!sym) return nullptr;
                if (sym->kind != SymbolKind::Number && sym->kind != SymbolKind::AuxNumber) {
                    miss(np, "'" + name + "' is not a number-valued symbol");
                    return nullptr;
                }
                auto args = arg_list();
                if (!args || !arity_ok(np, *sym, args->size())) return nullptr;
                return sym->kind == SymbolKind::Number
                           ? mk_num_app(std::move(name), std::move(*args))
                           : mk_aux_num_app(std::move(name), std::move(*args));
            }
            case TokKind::LParen: {
                ++pos_;
                auto body = nterm();
                if (!body) return nullptr;
                if (!expect(TokKind::RParen, "')'")) return nullptr;
                return body;
            }
            default:
                miss(pos_, "expected number term");
                return nullptr;
        }
    }
};

}  // namespace detail

inline FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
    detail::Parser p(detail::lex(text), sig);
    return p.parse();
}

}  // namespace realac

#endif
