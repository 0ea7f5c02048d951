#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "realac/realac.hpp"

using namespace realac;

namespace {

// The running 7-gate example: out <- + <- { x(in1, in2), +(in2, in3) }.
// in2 feeds both interior gates, so tree-shape-size exceeds size by one.
Circuit seven_gate_example() {
    Circuit C;
    C.input_count = 3;
    C.add(make_input(1, 1));
    C.add(make_input(2, 2));
    C.add(make_input(3, 3));
    C.add(make_gate(4, kMul, {1, 2}));
    C.add(make_gate(5, kAdd, {2, 3}));
    C.add(make_gate(6, kAdd, {4, 5}));
    C.add(make_gate(7, kOutput, {6}));
    return C;
}

Circuit wrap_output(int gtype, std::vector<std::int64_t> preds, int n) {
    Circuit C;
    C.input_count = n;
    for (int i = 1; i <= n; ++i) C.add(make_input(i, i));
    C.add(make_gate(n + 1, gtype, std::move(preds)));
    C.add(make_gate(n + 2, kOutput, {n + 1}));
    return C;
}

TEST(Evaluate, CoreGateSemantics) {
    EXPECT_EQ(evaluate(wrap_output(kSign, {1}, 1), {Rational(-7)}),
              std::vector<Rational>{Rational(-1)});
    EXPECT_EQ(evaluate(wrap_output(kMul, {1, 2, 3}, 3), {Rational(2), Rational(3), Rational(4)}),
              std::vector<Rational>{Rational(24)});
    EXPECT_EQ(evaluate(wrap_output(kLe, {1, 2}, 2), {Rational(5), Rational(5)}),
              std::vector<Rational>{Rational(1)});
}

TEST(Evaluate, RelationalGatesAreOriented) {
    std::vector<Rational> lo_hi{Rational(2), Rational(5)};
    std::vector<Rational> hi_lo{Rational(5), Rational(2)};
    EXPECT_EQ(evaluate(wrap_output(kLt, {1, 2}, 2), lo_hi)[0], Rational(1));
    EXPECT_EQ(evaluate(wrap_output(kLt, {1, 2}, 2), hi_lo)[0], Rational(0));
    EXPECT_EQ(evaluate(wrap_output(kGt, {1, 2}, 2), lo_hi)[0], Rational(0));
    EXPECT_EQ(evaluate(wrap_output(kGt, {1, 2}, 2), hi_lo)[0], Rational(1));
    EXPECT_EQ(evaluate(wrap_output(kSub, {1, 2}, 2), lo_hi)[0], Rational(-3));
    EXPECT_EQ(evaluate(wrap_output(kEq, {1, 2}, 2), lo_hi)[0], Rational(0));
    EXPECT_EQ(evaluate(wrap_output(kGe, {1, 2}, 2), hi_lo)[0], Rational(1));
}

TEST(Evaluate, SinglePredecessorAddMulActAsIdentity) {
    EXPECT_EQ(evaluate(wrap_output(kAdd, {1}, 1), {Rational(9)})[0], Rational(9));
    EXPECT_EQ(evaluate(wrap_output(kMul, {1}, 1), {Rational(9)})[0], Rational(9));
}

TEST(Evaluate, SevenGateExample) {
    Circuit C = seven_gate_example();
    EXPECT_EQ(evaluate(C, {Rational(2), Rational(3), Rational(4)}),
              std::vector<Rational>{Rational(13)});
}

TEST(Measures, SevenGateExample) {
    Circuit C = seven_gate_example();
    EXPECT_EQ(size(C), 7u);
    EXPECT_EQ(tree_shape_size(C), 8u);
    EXPECT_EQ(depth(C), 3u);
}

TEST(Measures, SmallCases) {
    Circuit C;
    C.input_count = 1;
    C.add(make_input(1, 1));
    C.add(make_gate(2, kOutput, {1}));
    EXPECT_EQ(size(C), 2u);
    EXPECT_EQ(depth(C), 1u);
    EXPECT_EQ(tree_shape_size(C), 2u);

    // One input feeding three + gates: tss = size + 2.
    Circuit D;
    D.input_count = 1;
    D.add(make_input(1, 1));
    D.add(make_gate(2, kAdd, {1}));
    D.add(make_gate(3, kAdd, {1}));
    D.add(make_gate(4, kAdd, {1}));
    D.add(make_gate(5, kAdd, {2, 3, 4}));
    D.add(make_gate(6, kOutput, {5}));
    EXPECT_EQ(tree_shape_size(D), size(D) + 2);
}

TEST(Measures, TssEqualsSizeIffInputsUnshared) {
    Circuit C = seven_gate_example();
    EXPECT_GT(tree_shape_size(C), size(C));
    Circuit D = wrap_output(kAdd, {1, 2}, 2);
    EXPECT_EQ(tree_shape_size(D), size(D));
}

TEST(Validate, ReportsViolationsWithGateIds) {
    Circuit ok = wrap_output(kAdd, {1}, 1);
    EXPECT_TRUE(validate(ok).empty());

    Circuit bad;
    bad.input_count = 2;
    bad.add(make_input(1, 1));
    bad.add(make_input(2, 2));
    bad.add(make_gate(3, kSign, {1, 2}));
    bad.add(make_gate(4, kOutput, {3}));
    auto violations = validate(bad);
    ASSERT_FALSE(violations.empty());
    bool mentions_gate_3 = false;
    for (const auto& v : violations)
        if (v.find("3") != std::string::npos) mentions_gate_3 = true;
    EXPECT_TRUE(mentions_gate_3);
}

TEST(Validate, DetectsCycles) {
    Circuit C;
    C.input_count = 0;
    C.add(make_gate(1, kAdd, {2}));
    C.add(make_gate(2, kAdd, {1}));
    auto violations = validate(C);
    bool mentions_cycle = false;
    for (const auto& v : violations)
        if (v.find("cycle") != std::string::npos) mentions_cycle = true;
    EXPECT_TRUE(mentions_cycle);
}

TEST(Validate, RejectsDuplicatePredecessors) {
    Circuit C;
    C.input_count = 1;
    C.add(make_input(1, 1));
    C.add(make_gate(2, kAdd, {1, 1}));
    C.add(make_gate(3, kOutput, {2}));
    EXPECT_FALSE(validate(C).empty());
}

TEST(Validate, ChecksInputIndexCompleteness) {
    Circuit C;
    C.input_count = 2;
    C.add(make_input(1, 1));  // index 2 never appears
    C.add(make_gate(2, kOutput, {1}));
    EXPECT_FALSE(validate(C).empty());
}

TEST(InducedSubcircuit, RootSelection) {
    Circuit C = seven_gate_example();
    EXPECT_EQ(size(induced_subcircuit(C, 7)), 7u);
    EXPECT_EQ(size(induced_subcircuit(C, 1)), 1u);

    Circuit sub = induced_subcircuit(C, 4);
    EXPECT_EQ(size(sub), 3u);
    EXPECT_TRUE(sub.has(1));
    EXPECT_TRUE(sub.has(2));
    EXPECT_TRUE(sub.has(4));

    try {
        induced_subcircuit(C, 99);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownGate);
    }
}

TEST(Shape, TreeLikeAndLeveled) {
    Circuit C = seven_gate_example();
    EXPECT_TRUE(is_tree_like(C));
    EXPECT_TRUE(is_leveled(C));

    // Chain: both properties hold.
    Circuit chain = wrap_output(kSign, {1}, 1);
    EXPECT_TRUE(is_tree_like(chain));
    EXPECT_TRUE(is_leveled(chain));

    // Shortcut input: + reads one deep and one shallow operand.
    Circuit shortcut;
    shortcut.input_count = 3;
    shortcut.add(make_input(1, 1));
    shortcut.add(make_input(2, 2));
    shortcut.add(make_input(3, 3));
    shortcut.add(make_gate(4, kMul, {1, 2}));
    shortcut.add(make_gate(5, kAdd, {4, 3}));
    shortcut.add(make_gate(6, kOutput, {5}));
    EXPECT_TRUE(is_tree_like(shortcut));
    EXPECT_FALSE(is_leveled(shortcut));

    // Diamond over a non-input gate.
    Circuit diamond;
    diamond.input_count = 1;
    diamond.add(make_input(1, 1));
    diamond.add(make_gate(2, kAdd, {1}));
    diamond.add(make_gate(3, kAdd, {2}));
    diamond.add(make_gate(4, kSign, {2}));
    diamond.add(make_gate(5, kAdd, {3, 4}));
    diamond.add(make_gate(6, kOutput, {5}));
    EXPECT_FALSE(is_tree_like(diamond));
}

TEST(Renumber, PreservesEvaluation) {
    Circuit C = seven_gate_example();
    // Push ids far apart, then compact them.
    Circuit sparse;
    sparse.input_count = C.input_count;
    for (const Gate& g : C.gates()) {
        Gate h = g;
        h.id = g.id * 10;
        for (auto& p : h.preds) p *= 10;
        sparse.add(h);
    }
    Circuit dense = renumber_dense(sparse);
    std::vector<Rational> x{Rational(2), Rational(3), Rational(4)};
    EXPECT_EQ(evaluate(dense, x), evaluate(C, x));
    std::vector<std::int64_t> ids = dense.sorted_ids();
    EXPECT_EQ(ids.front(), 1);
    EXPECT_EQ(ids.back(), static_cast<std::int64_t>(size(dense)));
}

TEST(CircuitFile, ReadWriteRoundTrip) {
    Circuit C = seven_gate_example();
    std::ostringstream out;
    write_circuit(out, C);
    std::istringstream in(out.str());
    Circuit back = read_circuit(in);
    EXPECT_EQ(back.input_count, C.input_count);
    EXPECT_EQ(size(back), size(C));
    std::vector<Rational> x{Rational(2), Rational(3), Rational(4)};
    EXPECT_EQ(evaluate(back, x), evaluate(C, x));
}

TEST(CircuitFile, ParsesConstantsAndRejectsGarbage) {
    std::string text =
        "inputs 1\n"
        "1 input in=1\n"
        "2 const const=-3/2\n"
        "3 add preds=1,2\n"
        "4 output preds=3\n";
    std::istringstream in(text);
    Circuit C = read_circuit(in);
    EXPECT_EQ(evaluate(C, {Rational(1)})[0], Rational(-1) / 2);

    std::istringstream bad("inputs 1\n1 wobble preds=\n");
    EXPECT_THROW(read_circuit(bad), Error);
}

TEST(Dot, EmitsOneNodePerGate) {
    Circuit C = seven_gate_example();
    std::ostringstream out;
    write_dot(out, C);
    std::string dot = out.str();
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    // Every gate appears; spot-check the multiplication node.
    EXPECT_NE(dot.find("mul"), std::string::npos);
}

}  // namespace
