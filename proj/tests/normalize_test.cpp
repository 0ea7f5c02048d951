#include <gtest/gtest.h>

#include <random>
#include <set>

#include "realac/realac.hpp"

using namespace realac;

namespace {

Circuit wrap_output(int gtype, std::vector<std::int64_t> preds, int n) {
    Circuit C;
    C.input_count = n;
    for (int i = 1; i <= n; ++i) C.add(make_input(i, i));
    C.add(make_gate(n + 1, gtype, std::move(preds)));
    C.add(make_gate(n + 2, kOutput, {n + 1}));
    return C;
}

std::vector<Rational> random_inputs(std::size_t n, std::mt19937_64& rng) {
    std::vector<Rational> x;
    x.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t num = static_cast<std::int64_t>(rng() % 19) - 9;
        std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 3);
        x.emplace_back(Rational(num) / den);
    }
    return x;
}

// Random messy circuit: shared interior gates, aux gate types, constants.
// Kept small because make_tree_like may duplicate subcircuits.
Circuit random_dag(std::mt19937_64& rng) {
    Circuit C;
    int n = 1 + static_cast<int>(rng() % 3);
    C.input_count = n;
    std::vector<std::int64_t> pool;
    std::int64_t next = 1;
    for (int i = 1; i <= n; ++i) {
        C.add(make_input(next, i));
        pool.push_back(next++);
    }
    int consts = static_cast<int>(rng() % 2);
    for (int i = 0; i < consts; ++i) {
        C.add(make_const(next, Rational(static_cast<std::int64_t>(rng() % 7) - 3)));
        pool.push_back(next++);
    }
    int interior = 2 + static_cast<int>(rng() % 8);
    static const int types[] = {kAdd, kMul, kSign, kSub, kEq, kLt, kGt, kLe, kGe};
    for (int i = 0; i < interior; ++i) {
        int t = types[rng() % (sizeof(types) / sizeof(types[0]))];
        std::size_t want = (t == kSign) ? 1 : 2;
        if (t == kAdd || t == kMul) want = 1 + rng() % 3;
        want = std::min(want, pool.size());
        if (t != kAdd && t != kMul && t != kSign && want < 2) t = kAdd;
        // Draw distinct predecessors.
        std::vector<std::int64_t> preds;
        std::vector<std::int64_t> candidates = pool;
        for (std::size_t k = 0; k < want && !candidates.empty(); ++k) {
            std::size_t at = rng() % candidates.size();
            preds.push_back(candidates[at]);
            candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(at));
        }
        if (t == kSign) preds.resize(1);
        C.add(make_gate(next, t, preds));
        pool.push_back(next++);
    }
    // Join every sink so the circuit has no dead gates, mirroring what the
    // compiler emits.
    std::set<std::int64_t> used;
    for (const Gate& g : C.gates())
        for (std::int64_t p : g.preds) used.insert(p);
    std::vector<std::int64_t> sinks;
    for (std::int64_t id : pool)
        if (!used.count(id)) sinks.push_back(id);
    std::int64_t join = next++;
    C.add(make_gate(join, kAdd, sinks));
    C.add(make_gate(next, kOutput, {join}));
    return C;
}

TEST(LowerPasses, PerGateSizeDeltas) {
    // Each aux code, one gate over inputs; its own pass pays the exact
    // documented price.
    Circuit le = wrap_output(kLe, {1, 2}, 2);
    EXPECT_EQ(size(lower_le_ge(le)), size(le) + 3);
    Circuit ge = wrap_output(kGe, {1, 2}, 2);
    EXPECT_EQ(size(lower_le_ge(ge)), size(ge) + 3);

    Circuit eq = wrap_output(kEq, {1, 2}, 2);
    EXPECT_EQ(size(lower_eq(eq)), size(eq) + 9);

    Circuit lt = wrap_output(kLt, {1, 2}, 2);
    EXPECT_EQ(size(lower_lt_gt(lt)), size(lt) + 6);
    Circuit gt = wrap_output(kGt, {1, 2}, 2);
    EXPECT_EQ(size(lower_lt_gt(gt)), size(gt) + 6);

    Circuit sub = wrap_output(kSub, {1, 2}, 2);
    EXPECT_EQ(size(lower_sub(sub)), size(sub) + 2);
}

TEST(EliminateAux, EqualityGate) {
    Circuit C = wrap_output(kEq, {1, 2}, 2);
    Circuit E = eliminate_aux_gates(C);
    EXPECT_EQ(evaluate(E, {Rational(3), Rational(3)})[0], Rational(1));
    EXPECT_EQ(evaluate(E, {Rational(3), Rational(4)})[0], Rational(0));
    for (const Gate& g : E.gates()) EXPECT_LE(g.gtype, kOutput);
}

TEST(EliminateAux, LessThanGate) {
    Circuit C = wrap_output(kLt, {1, 2}, 2);
    Circuit E = eliminate_aux_gates(C);
    EXPECT_EQ(evaluate(E, {Rational(2), Rational(5)})[0], Rational(1));
    EXPECT_EQ(evaluate(E, {Rational(5), Rational(2)})[0], Rational(0));
}

TEST(EliminateAux, CoreCircuitUnchanged) {
    Circuit C = wrap_output(kAdd, {1, 2}, 2);
    Circuit E = eliminate_aux_gates(C);
    EXPECT_EQ(size(E), size(C));
    for (const Gate& g : C.gates()) EXPECT_TRUE(E.has(g.id));
}

TEST(EliminateAux, FullExpansionOfOneLeGate) {
    // One <= cascades: +3 for itself, +9 for the introduced =, +6 for the
    // introduced <, and +2 for each of the four subtraction gates the two
    // comparison expansions leave behind.
    Circuit C = wrap_output(kLe, {1, 2}, 2);
    Circuit E = eliminate_aux_gates(C);
    EXPECT_EQ(size(E), 30u);
    for (const Gate& g : E.gates()) EXPECT_LE(g.gtype, kOutput);
}

TEST(EliminateAux, PreservesEvaluationOnRandomCircuits) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 120; ++trial) {
        Circuit C = random_dag(rng);
        ASSERT_TRUE(validate(C).empty());
        Circuit E = eliminate_aux_gates(C);
        for (const Gate& g : E.gates()) EXPECT_LE(g.gtype, kOutput);
        for (int probe = 0; probe < 3; ++probe) {
            std::vector<Rational> x = random_inputs(static_cast<std::size_t>(C.input_count), rng);
            EXPECT_EQ(evaluate(E, x), evaluate(C, x));
        }
    }
}

TEST(MakeTreeLike, DuplicatesSharedInteriorGates) {
    Circuit C;
    C.input_count = 1;
    C.add(make_input(1, 1));
    C.add(make_gate(2, kAdd, {1}));   // shared
    C.add(make_gate(3, kSign, {2}));
    C.add(make_gate(4, kAdd, {2}));
    C.add(make_gate(5, kAdd, {3, 4}));
    C.add(make_gate(6, kOutput, {5}));
    EXPECT_FALSE(is_tree_like(C));

    Circuit T = make_tree_like(C);
    EXPECT_TRUE(is_tree_like(T));
    EXPECT_EQ(depth(T), depth(C));

    std::mt19937_64 rng(42);
    for (int probe = 0; probe < 10; ++probe) {
        std::vector<Rational> x = random_inputs(1, rng);
        EXPECT_EQ(evaluate(T, x), evaluate(C, x));
    }
}

TEST(MakeTreeLike, SharedInputsAreExempt) {
    Circuit C;
    C.input_count = 3;
    C.add(make_input(1, 1));
    C.add(make_input(2, 2));
    C.add(make_input(3, 3));
    C.add(make_gate(4, kMul, {1, 2}));
    C.add(make_gate(5, kAdd, {2, 3}));
    C.add(make_gate(6, kAdd, {4, 5}));
    C.add(make_gate(7, kOutput, {6}));

    Circuit T = make_tree_like(C);
    EXPECT_EQ(size(T), size(C));  // in2's sharing stays
}

TEST(MakeTreeLike, AlreadyTreeLikeUnchanged) {
    Circuit C = wrap_output(kAdd, {1, 2}, 2);
    Circuit T = make_tree_like(C);
    EXPECT_EQ(size(T), size(C));
}

TEST(LevelPaths, PadsShortcutInput) {
    // Four chained gates; in2 takes a shortcut into the last one and
    // needs three unary + pads.
    Circuit C;
    C.input_count = 2;
    C.add(make_input(1, 1));
    C.add(make_input(2, 2));
    C.add(make_gate(3, kSign, {1}));
    C.add(make_gate(4, kSign, {3}));
    C.add(make_gate(5, kSign, {4}));
    C.add(make_gate(6, kAdd, {5, 2}));
    C.add(make_gate(7, kOutput, {6}));
    EXPECT_FALSE(is_leveled(C));

    Circuit L = level_paths(C);
    EXPECT_TRUE(is_leveled(L));
    EXPECT_EQ(size(L), size(C) + 3);
    EXPECT_EQ(depth(L), depth(C));

    std::mt19937_64 rng(43);
    for (int probe = 0; probe < 10; ++probe) {
        std::vector<Rational> x = random_inputs(2, rng);
        EXPECT_EQ(evaluate(L, x), evaluate(C, x));
    }
}

TEST(LevelPaths, LeveledCircuitUnchanged) {
    Circuit C = wrap_output(kAdd, {1, 2}, 2);
    EXPECT_EQ(size(level_paths(C)), size(C));
}

TEST(LevelPaths, RequiresTreeLikeInput) {
    Circuit C;
    C.input_count = 1;
    C.add(make_input(1, 1));
    C.add(make_gate(2, kAdd, {1}));
    C.add(make_gate(3, kSign, {2}));
    C.add(make_gate(4, kAdd, {2}));
    C.add(make_gate(5, kAdd, {3, 4}));
    C.add(make_gate(6, kOutput, {5}));
    try {
        level_paths(C);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotTreeLike);
    }
}

TEST(Composition, TreeLikeThenLeveledOnRandomCircuits) {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 100; ++trial) {
        Circuit C = random_dag(rng);
        Circuit T = level_paths(make_tree_like(C));
        EXPECT_TRUE(is_tree_like(T));
        EXPECT_TRUE(is_leveled(T));
        EXPECT_EQ(depth(T), depth(C));
        for (int probe = 0; probe < 3; ++probe) {
            std::vector<Rational> x = random_inputs(static_cast<std::size_t>(C.input_count), rng);
            EXPECT_EQ(evaluate(T, x), evaluate(C, x));
        }
    }
}

}  // namespace
