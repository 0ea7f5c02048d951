#include <gtest/gtest.h>

#include <sstream>

#include "realac/realac.hpp"

using namespace realac;

namespace {

Signature unary_number_sig() {
    Signature sig;
    sig.add(SymbolKind::Number, "f", 1);
    return sig;
}

TEST(TssOf, LeavesAndSelects) {
    Signature sig = unary_number_sig();
    EXPECT_EQ(tss_of(mk_const(Rational(5)), sig, 2), 1);
    EXPECT_EQ(tss_of(mk_var("x"), sig, 2), 1);

    // Selecting f(x) costs 5 gates per universe element plus the join, and
    // the atom adds the comparison and the constant.
    EXPECT_EQ(tss_of(parse_formula("f(x) = 5", sig), sig, 2), 13);
    EXPECT_EQ(tss_of(parse_formula("f(x) = 5", sig), sig, 3), 18);
    EXPECT_EQ(tss_of(parse_formula("exists x. (f(x) = 5)", sig), sig, 2), 28);
}

TEST(CompileNumbered, OutputAndInputSlots) {
    Signature sig = unary_number_sig();
    FormulaPtr f = parse_formula("exists x. (f(x) = 5)", sig);
    Circuit C = compile_numbered(f, sig, 2);

    std::int64_t t = tss_of(f, sig, 2) + 1;
    EXPECT_EQ(tree_shape_size(C), t);
    const Gate& out = C.at(t);
    EXPECT_EQ(out.gtype, kOutput);
    EXPECT_EQ(C.at(t + 1).input_index, 1);
    EXPECT_EQ(C.at(t + 2).input_index, 2);
    EXPECT_EQ(C.input_count, 2);
}

TEST(CompileNumbered, QuantifierCopyRoots) {
    // exists compiles to sign over a sum of u body copies; copy i is
    // rooted at q - 2 - (u - i) * s where s is the body cost.
    Signature sig = unary_number_sig();
    FormulaPtr f = parse_formula("exists x. (f(x) = 5)", sig);
    std::int64_t s = tss_of(parse_formula("f(x) = 5", sig), sig, 3);
    std::int64_t q = tss_of(f, sig, 3);
    EXPECT_EQ(q, 3 * s + 2);

    Circuit C = compile_numbered(f, sig, 3);
    EXPECT_EQ(C.at(q).gtype, kSign);
    ASSERT_EQ(C.at(q).preds, (std::vector<std::int64_t>{q - 1}));
    const Gate& join = C.at(q - 1);
    EXPECT_EQ(join.gtype, kAdd);
    std::vector<std::int64_t> expect;
    for (std::int64_t i = 1; i <= 3; ++i) expect.push_back(q - 2 - (3 - i) * s);
    EXPECT_EQ(join.preds, expect);
}

TEST(CompileNumbered, AtomNumbersLastOperandFirst) {
    Signature sig;
    FormulaPtr f = parse_formula("forall x. 0 < 1", sig);
    Circuit C = compile_numbered(f, sig, 2);
    EXPECT_EQ(C.at(3).gtype, kLt);
    EXPECT_EQ(C.at(3).preds, (std::vector<std::int64_t>{1, 2}));
    EXPECT_EQ(C.at(1).constant, Rational(0));
    EXPECT_EQ(C.at(2).constant, Rational(1));
}

TEST(Compile, VacuousQuantifierAddsNoGates) {
    // The bound variable never occurs, so every copy would be identical;
    // the quantifier contributes nothing.
    Signature sig;
    Circuit C = compile(parse_formula("forall x. 0 < 1", sig), sig, 2);
    EXPECT_EQ(size(C), 4u);
    EXPECT_EQ(evaluate(C, {})[0], Rational(1));
}

TEST(Compile, IsDenseRenumberingOfCompileNumbered) {
    Signature sig = unary_number_sig();
    FormulaPtr f = parse_formula("exists x. (f(x) = 5 | f(x) < 0)", sig);
    std::ostringstream a, b;
    write_circuit(a, compile(f, sig, 3));
    write_circuit(b, renumber_dense(compile_numbered(f, sig, 3)));
    EXPECT_EQ(a.str(), b.str());
}

TEST(Compile, FrozenEvaluations) {
    Signature sig = unary_number_sig();
    Circuit C = compile(parse_formula("exists x. (f(x) = 5)", sig), sig, 2);
    EXPECT_EQ(evaluate(C, {Rational(3), Rational(5)})[0], Rational(1));
    EXPECT_EQ(evaluate(C, {Rational(3), Rational(4)})[0], Rational(0));
}

TEST(Compile, AgreesWithSatisfiesOnSymmetryCheck) {
    Signature sig;
    sig.add(SymbolKind::Number, "f", 2);
    FormulaPtr f = parse_formula("forall x. forall y. (f(x, y) = f(y, x))", sig);
    Circuit C = compile(f, sig, 2);
    std::uint64_t total = count_binary_structures(sig, 2, 1000);
    ASSERT_EQ(total, 16u);
    for (std::uint64_t k = 0; k < total; ++k) {
        StructureFile sf = binary_structure(sig, 2, k);
        bool truth = satisfies(f, sf.structure, {});
        EXPECT_EQ(evaluate(C, encode(sf.structure))[0], Rational(truth ? 1 : 0));
    }
}

TEST(Compile, AuxTablesAreBakedIn) {
    Signature sig;
    sig.add(SymbolKind::AuxNumber, "g", 1);
    FormulaPtr f = parse_formula("exists x. (g(x) = 1)", sig);

    ArbInterpretation arb;
    arb.number_tables["g"] = {Rational(0), Rational(1)};
    Circuit C = compile(f, sig, 2, arb);
    EXPECT_EQ(C.input_count, 0);
    EXPECT_EQ(evaluate(C, {})[0], Rational(1));

    arb.number_tables["g"] = {Rational(0), Rational(0)};
    EXPECT_EQ(evaluate(compile(f, sig, 2, arb), {})[0], Rational(0));
}

TEST(Compile, DepthIsIndependentOfUniverseSize) {
    Signature sig = unary_number_sig();
    const char* sentences[] = {
        "exists x. (f(x) = 5)",
        "forall x. exists y. (f(x) < f(y) | f(x) = f(y))",
        "sum x (f(x)) = 4",
        "exists x. (prod y (f(y) + 1) < f(x))",
    };
    for (const char* text : sentences) {
        FormulaPtr f = parse_formula(text, sig);
        std::size_t d1 = depth(compile(f, sig, 1));
        for (std::int64_t u = 2; u <= 6; ++u)
            EXPECT_EQ(depth(compile(f, sig, u)), d1) << text << " u=" << u;
    }
}

TEST(Compile, RejectsOpenFormulas) {
    Signature sig = unary_number_sig();
    try {
        compile(parse_formula("f(x) = 5", sig), sig, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FreeVariable);
    }
}

TEST(Compile, RejectsShadowedBinders) {
    Signature sig = unary_number_sig();
    try {
        compile(parse_formula("exists x. exists x. (f(x) = 5)", sig), sig, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ShadowedVariable);
    }
}

TEST(Compile, RejectsMax) {
    Signature sig = unary_number_sig();
    try {
        compile(parse_formula("exists x. (max y (f(y)) = f(x))", sig), sig, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedNesting);
    }
}

TEST(Compile, RejectsMissingAuxTables) {
    Signature sig;
    sig.add(SymbolKind::AuxNumber, "g", 1);
    try {
        compile(parse_formula("exists x. (g(x) = 1)", sig), sig, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingArbTable);
    }
}

TEST(Compile, RejectsOversizedInputVectors) {
    Signature sig;
    sig.add(SymbolKind::Number, "f", 2);
    try {
        compile(parse_formula("exists x. (f(x, x) = 5)", sig), sig, 3000);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TooManyGates);
    }
}

}  // namespace
