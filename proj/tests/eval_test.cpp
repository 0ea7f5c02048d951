#include <gtest/gtest.h>

#include <random>

#include "realac/realac.hpp"

using namespace realac;

namespace {

// Universe {0,1} with one unary number function.
RStructure unary(std::vector<Rational> f) {
    Signature sig;
    sig.add(SymbolKind::Number, "f", 1);
    RStructure D(sig, static_cast<std::int64_t>(f.size()));
    D.number_table("f") = std::move(f);
    return D;
}

TEST(IndexTerm, VariableAndTableLookup) {
    Signature sig;
    sig.add(SymbolKind::Skeleton, "s", 1);
    RStructure D(sig, 3);
    D.skeleton_table("s") = {1, 2, 0};  // successor mod 3

    Assignment a{{"x", 2}};
    EXPECT_EQ(eval_index_term(mk_var("x"), D, {}, a), 2);
    EXPECT_EQ(eval_index_term(mk_skeleton_app("s", {mk_var("x")}), D, {}, a), 0);

    Assignment b{{"x", 1}};
    IndexTermPtr ss = mk_skeleton_app("s", {mk_skeleton_app("s", {mk_var("x")})});
    EXPECT_EQ(eval_index_term(ss, D, {}, b), 0);
}

TEST(NumberTerm, SignSumProd) {
    Assignment empty;

    EXPECT_EQ(eval_number_term(mk_sign(mk_const(Rational(-3))), unary({Rational(0)}), {}, empty),
              Rational(-1));

    RStructure D3 = unary({Rational(2), Rational(2), Rational(2)});
    NumberTermPtr sum = mk_sum("i", mk_num_app("f", {mk_var("i")}));
    EXPECT_EQ(eval_number_term(sum, D3, {}, empty), Rational(6));

    RStructure D2 = unary({Rational(1), Rational(2)});
    NumberTermPtr prod =
        mk_prod("i", mk_add(mk_num_app("f", {mk_var("i")}), mk_const(Rational(1))));
    EXPECT_EQ(eval_number_term(prod, D2, {}, empty), Rational(6));
}

TEST(NumberTerm, SignIsExactOnRationals) {
    Assignment empty;
    RStructure D = unary({Rational(0)});
    EXPECT_EQ(eval_number_term(mk_sign(mk_const(Rational(1) / 1000000)), D, {}, empty), Rational(1));
    EXPECT_EQ(eval_number_term(mk_sign(mk_const(Rational(0))), D, {}, empty), Rational(0));
}

TEST(Satisfies, QuantifiersOverSmallTables) {
    Assignment empty;
    FormulaPtr exists5 =
        mk_exists("x", mk_num_eq(mk_num_app("f", {mk_var("x")}), mk_const(Rational(5))));
    EXPECT_TRUE(satisfies(exists5, unary({Rational(3), Rational(5)}), {}, empty));
    EXPECT_FALSE(satisfies(exists5, unary({Rational(3), Rational(4)}), {}, empty));

    FormulaPtr all_pos =
        mk_forall("x", mk_num_lt(mk_const(Rational(0)), mk_num_app("f", {mk_var("x")})));
    EXPECT_TRUE(satisfies(all_pos, unary({Rational(3), Rational(5)}), {}, empty));
    EXPECT_FALSE(satisfies(all_pos, unary({Rational(0), Rational(5)}), {}, empty));
}

TEST(Satisfies, CharOfTautologyIsOne) {
    Assignment empty;
    RStructure D = unary({Rational(3), Rational(5)});
    FormulaPtr phi =
        mk_exists("x", mk_num_lt(mk_num_app("f", {mk_var("x")}), mk_const(Rational(0))));
    FormulaPtr taut = mk_num_eq(mk_char(mk_or(phi, mk_not(phi))), mk_const(Rational(1)));
    EXPECT_TRUE(satisfies(taut, D, {}, empty));
}

TEST(Satisfies, CharEncodesFalseAsZero) {
    Assignment empty;
    RStructure D = unary({Rational(1)});
    NumberTermPtr c = mk_char(mk_num_lt(mk_const(Rational(1)), mk_const(Rational(0))));
    EXPECT_EQ(eval_number_term(c, D, {}, empty), Rational(0));
}

TEST(Satisfies, QuantifierDualityOnRandomInstances) {
    std::mt19937_64 rng(21);
    Assignment empty;
    for (int trial = 0; trial < 100; ++trial) {
        Signature sig = random_signature(rng, 2, 2);
        GenOptions opt;
        opt.quantifier_depth = 2;
        FormulaPtr body = random_sentence(sig, rng, opt);
        std::int64_t u = 1 + static_cast<std::int64_t>(rng() % 4);
        RStructure D = random_structure(sig, u, rng).structure;
        // not exists x. phi  ==  forall x. not phi (x unused is fine).
        FormulaPtr lhs = mk_not(mk_exists("qd", body));
        FormulaPtr rhs = mk_forall("qd", mk_not(body));
        EXPECT_EQ(satisfies(lhs, D, {}, empty), satisfies(rhs, D, {}, empty));
    }
}

TEST(Aggregates, AgreeWithExplicitExpansion) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 60; ++trial) {
        Signature sig;
        sig.add(SymbolKind::Number, "f", 1);
        std::int64_t u = 1 + static_cast<std::int64_t>(rng() % 5);
        RStructure D = random_structure(sig, u, rng).structure;
        Assignment empty;

        NumberTermPtr body = mk_add(mk_num_app("f", {mk_var("i")}), mk_const(Rational(1)));
        Rational sum(0), prod(1);
        bool have_max = false;
        Rational best(0);
        for (std::int64_t i = 0; i < u; ++i) {
            Assignment a{{"i", i}};
            Rational v = eval_number_term(body, D, {}, a);
            sum += v;
            prod *= v;
            if (!have_max || v > best) best = v;
            have_max = true;
        }
        EXPECT_EQ(eval_number_term(mk_sum("i", body), D, {}, empty), sum);
        EXPECT_EQ(eval_number_term(mk_prod("i", body), D, {}, empty), prod);
        EXPECT_EQ(eval_number_term(mk_max("i", body), D, {}, empty), best);
    }
}

TEST(Assignment, InnermostBindingWins) {
    RStructure D = unary({Rational(10), Rational(20)});
    Assignment empty;
    // sum x over the inner binding, with an outer x in scope.
    NumberTermPtr t = mk_sum("x", mk_num_app("f", {mk_var("x")}));
    Assignment outer{{"x", 0}};
    EXPECT_EQ(eval_number_term(t, D, {}, outer), Rational(30));
}

TEST(Errors, UnboundVariable) {
    RStructure D = unary({Rational(1)});
    Assignment empty;
    try {
        eval_number_term(mk_num_app("f", {mk_var("x")}), D, {}, empty);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnboundVariable);
    }
}

TEST(Errors, MissingArbTable) {
    Signature sig;
    sig.add(SymbolKind::Number, "f", 1);
    sig.add(SymbolKind::AuxNumber, "w", 0);
    RStructure D(sig, 2);
    Assignment empty;
    try {
        eval_number_term(mk_aux_num_app("w", {}), D, {}, empty);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingArbTable);
    }
}

TEST(ArbInterpretation, AuxSymbolsReadTheirTables) {
    Signature sig;
    sig.add(SymbolKind::Number, "f", 1);
    sig.add(SymbolKind::AuxIndex, "p", 1);
    sig.add(SymbolKind::AuxNumber, "w", 1);
    RStructure D(sig, 2);
    D.number_table("f") = {Rational(4), Rational(9)};
    ArbInterpretation I;
    I.index_tables["p"] = {1, 0};  // swap
    I.number_tables["w"] = {Rational(-1), Rational(1)};

    Assignment a{{"x", 0}};
    // f(p(x)) reads through the aux-index table.
    EXPECT_EQ(eval_number_term(mk_num_app("f", {mk_aux_index_app("p", {mk_var("x")})}), D, I, a),
              Rational(9));
    EXPECT_EQ(eval_number_term(mk_aux_num_app("w", {mk_var("x")}), D, I, a), Rational(-1));
}

}  // namespace
