#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "realac/realac.hpp"

using namespace realac;

namespace {

Signature unary_f() {
    Signature sig;
    sig.add(SymbolKind::Number, "f", 1);
    return sig;
}

Signature nullary_c() {
    Signature sig;
    sig.add(SymbolKind::Number, "c", 0);
    return sig;
}

TEST(Encode, UnaryTable) {
    RStructure D(unary_f(), 2);
    D.number_table("f") = {Rational(3), Rational(5)};
    std::vector<Rational> v = encode(D);
    EXPECT_EQ(v, (std::vector<Rational>{Rational(3), Rational(5)}));
}

TEST(Encode, NullaryEmitsUniverseCopies) {
    RStructure D(nullary_c(), 3);
    D.number_table("c") = {Rational(7)};
    std::vector<Rational> v = encode(D);
    EXPECT_EQ(v, (std::vector<Rational>{Rational(7), Rational(7), Rational(7)}));
}

TEST(Encode, TablesConcatenateInSignatureOrder) {
    Signature sig;
    sig.add(SymbolKind::Number, "f", 1);
    sig.add(SymbolKind::Number, "g", 2);
    RStructure D(sig, 2);
    D.number_table("f") = {Rational(1), Rational(1)};
    // g defaults to the all-zero table.
    std::vector<Rational> v = encode(D);
    ASSERT_EQ(v.size(), 6u);
    EXPECT_EQ(v, (std::vector<Rational>{Rational(1), Rational(1), Rational(0), Rational(0),
                                        Rational(0), Rational(0)}));
}

TEST(Encode, SkeletonTablesComeFirst) {
    Signature sig;
    sig.add(SymbolKind::Skeleton, "s", 1);
    sig.add(SymbolKind::Number, "f", 0);
    RStructure D(sig, 2);
    D.skeleton_table("s") = {1, 0};
    D.number_table("f") = {Rational(9)};
    std::vector<Rational> v = encode(D);
    EXPECT_EQ(v, (std::vector<Rational>{Rational(1), Rational(0), Rational(9), Rational(9)}));
}

TEST(EncodedLength, ClosedForm) {
    EXPECT_EQ(encoded_length(unary_f(), 5), 5);
    EXPECT_EQ(encoded_length(nullary_c(), 4), 4);
    Signature sig;
    sig.add(SymbolKind::Number, "f", 1);
    sig.add(SymbolKind::Number, "g", 2);
    EXPECT_EQ(encoded_length(sig, 3), 12);
}

TEST(RecoverUniverseSize, InvertsEncodedLength) {
    Signature sig;
    sig.add(SymbolKind::Number, "f", 1);
    sig.add(SymbolKind::Number, "g", 2);
    EXPECT_EQ(recover_universe_size(sig, 12), 3);
    EXPECT_EQ(recover_universe_size(unary_f(), 1), 1);
}

TEST(RecoverUniverseSize, NoSolution) {
    Signature sig;
    sig.add(SymbolKind::Number, "f", 2);
    try {
        recover_universe_size(sig, 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoSolution);
    }
}

TEST(Decode, InvertsEncode) {
    RStructure D = decode(unary_f(), {Rational(3), Rational(5)});
    EXPECT_EQ(D.universe_size(), 2);
    EXPECT_EQ(D.number_value("f", {0}), Rational(3));
    EXPECT_EQ(D.number_value("f", {1}), Rational(5));

    RStructure E = decode(nullary_c(), {Rational(7), Rational(7), Rational(7)});
    EXPECT_EQ(E.universe_size(), 3);
    EXPECT_EQ(E.number_value("c", {}), Rational(7));
}

TEST(Decode, NullaryCopiesMustAgree) {
    try {
        decode(nullary_c(), {Rational(7), Rational(8), Rational(7)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RangeViolation);
    }
}

TEST(Decode, SkeletonValuesMustBeUniverseElements) {
    Signature sig;
    sig.add(SymbolKind::Skeleton, "s", 1);
    // 5 is not an element of {0, 1}.
    EXPECT_THROW(decode(sig, {Rational(5), Rational(0)}), Error);
    // Fractional values cannot rank universe elements.
    EXPECT_THROW(decode(sig, {Rational(1) / 2, Rational(0)}), Error);
}

TEST(Decode, LengthMismatch) {
    try {
        decode(unary_f(), {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
    }
}

TEST(RStructure, RejectsEmptyUniverse) {
    EXPECT_THROW(RStructure(unary_f(), 0), Error);
}

TEST(RoundTrip, DecodeOfEncodeOnRandomStructures) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        Signature sig = random_signature(rng, 1 + static_cast<int>(rng() % 3), 2);
        std::int64_t u = 1 + static_cast<std::int64_t>(rng() % 6);
        RStructure D = random_structure(sig, u, rng).structure;
        std::vector<Rational> v = encode(D);
        EXPECT_EQ(static_cast<std::int64_t>(v.size()), encoded_length(sig, u));
        EXPECT_TRUE(decode(sig, v) == D);
    }
}

TEST(RoundTrip, RecoverFromLengthForAllSmallUniverses) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        Signature sig = random_signature(rng, 1 + static_cast<int>(rng() % 4), 2);
        for (std::int64_t u = 1; u <= 64; ++u)
            EXPECT_EQ(recover_universe_size(sig, encoded_length(sig, u)), u);
    }
}

TEST(StructureFile, ReadWriteRoundTrip) {
    Signature sig;
    sig.add(SymbolKind::Skeleton, "s", 1);
    sig.add(SymbolKind::Number, "f", 1);
    sig.add(SymbolKind::AuxNumber, "w", 1);

    std::string text =
        "# a two-element structure\n"
        "universe 2\n"
        "s/1 : 1 0\n"
        "f/1 : 3 -1/2\n"
        "[arb]\n"
        "w/1 : 5 7\n";
    std::istringstream in(text);
    StructureFile sf = read_structure(in, sig);
    EXPECT_EQ(sf.structure.universe_size(), 2);
    EXPECT_EQ(sf.structure.skeleton_value("s", {0}), 1);
    EXPECT_EQ(sf.structure.number_value("f", {1}), Rational(-1) / 2);
    ASSERT_EQ(sf.arb.number_tables.count("w"), 1u);
    EXPECT_EQ(sf.arb.number_tables.at("w")[1], Rational(7));

    std::ostringstream out;
    write_structure(out, sf.structure, sf.arb);
    std::istringstream in2(out.str());
    StructureFile back = read_structure(in2, sig);
    EXPECT_TRUE(back.structure == sf.structure);
    EXPECT_EQ(back.arb.number_tables.at("w"), sf.arb.number_tables.at("w"));
}

TEST(StructureFile, RejectsIncompleteTables) {
    Signature sig = unary_f();
    std::istringstream in("universe 2\nf/1 : 3\n");
    EXPECT_THROW(read_structure(in, sig), Error);
    std::istringstream in2("universe 2\n");
    EXPECT_THROW(read_structure(in2, sig), Error);
}

}  // namespace
