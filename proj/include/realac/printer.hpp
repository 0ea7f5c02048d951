#ifndef REALAC_PRINTER_HPP
#define REALAC_PRINTER_HPP

#include <sstream>
#include <string>

#include "realac/ast.hpp"

namespace realac {

// Canonical text form. The output re-parses to a structurally equal tree:
//   * '!' and quantifier bodies are always parenthesized,
//   * connective operands are parenthesized when they are themselves
//     connectives or quantifiers (atoms and negations stay bare),
//   * '+'/'*' operands are parenthesized when they are '+'/'*' themselves,
//     which keeps the original association visible.

void print_to(std::ostream& os, const IndexTermPtr& h);
void print_to(std::ostream& os, const NumberTermPtr& t);
void print_to(std::ostream& os, const FormulaPtr& f);

inline void print_args(std::ostream& os, const std::vector<IndexTermPtr>& args) {
    os << '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) os << ", ";
        print_to(os, args[i]);
    }
    os << ')';
}

inline void print_to(std::ostream& os, const IndexTermPtr& h) {
    os << h->name;
    if (h->kind != IndexTerm::Kind::Var) print_args(os, h->args);
}

inline void print_arith_operand(std::ostream& os, const NumberTermPtr& t) {
    bool paren = t->kind == NumberTerm::Kind::Add || t->kind == NumberTerm::Kind::Mul;
    if (paren) os << '(';
    print_to(os, t);
    if (paren) os << ')';
}

inline void print_to(std::ostream& os, const NumberTermPtr& t) {
    switch (t->kind) {
        case NumberTerm::Kind::Const: os << to_string(t->value); return;
        case NumberTerm::Kind::NumApp:
        case NumberTerm::Kind::AuxNumApp:
            os << t->name;
            print_args(os, t->args);
            return;
        case NumberTerm::Kind::Add:
            print_arith_operand(os, t->t1);
            os << " + ";
            print_arith_operand(os, t->t2);
            return;
        case NumberTerm::Kind::Mul:
            print_arith_operand(os, t->t1);
            os << " * ";
            print_arith_operand(os, t->t2);
            return;
        case NumberTerm::Kind::Sign:
            os << "sign(";
            print_to(os, t->t1);
            os << ')';
            return;
        case NumberTerm::Kind::Sum:
        case NumberTerm::Kind::Prod:
        case NumberTerm::Kind::Max: {
            const char* kw = t->kind == NumberTerm::Kind::Sum    ? "sum"
                             : t->kind == NumberTerm::Kind::Prod ? "prod"
                                                                 : "max";
            os << kw << ' ' << t->name << " (";
            print_to(os, t->t1);
            os << ')';
            return;
        }
        case NumberTerm::Kind::Char:
            os << "chi[";
            print_to(os, t->phi);
            os << ']';
            return;
    }
}

inline void print_connective_operand(std::ostream& os, const FormulaPtr& f) {
    bool paren = false;
    switch (f->kind) {
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff:
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            paren = true;
            break;
        default: break;
    }
    if (paren) os << '(';
    print_to(os, f);
    if (paren) os << ')';
}

inline void print_to(std::ostream& os, const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::IndexEq:
            print_to(os, f->h1);
            os << " == ";
            print_to(os, f->h2);
            return;
        case Formula::Kind::NumEq:
            print_to(os, f->t1);
            os << " = ";
            print_to(os, f->t2);
            return;
        case Formula::Kind::NumLt:
            print_to(os, f->t1);
            os << " < ";
            print_to(os, f->t2);
            return;
        case Formula::Kind::Not:
            os << "!(";
            print_to(os, f->f1);
            os << ')';
            return;
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff: {
            const char* op = f->kind == Formula::Kind::And       ? " & "
                             : f->kind == Formula::Kind::Or      ? " | "
                             : f->kind == Formula::Kind::Implies ? " -> "
                                                                 : " <-> ";
            print_connective_operand(os, f->f1);
            os << op;
            print_connective_operand(os, f->f2);
            return;
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            os << (f->kind == Formula::Kind::Exists ? "exists " : "forall ") << f->var << ". (";
            print_to(os, f->f1);
            os << ')';
            return;
    }
}

template <typename NodePtr>
std::string print_formula(const NodePtr& node) {
    std::ostringstream os;
    print_to(os, node);
    return os.str();
}

}  // namespace realac

#endif
