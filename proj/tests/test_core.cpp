#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "zslab/core.hpp"

using namespace zslab;

namespace {

ResidueSequence seq(int n, std::vector<int> values) {
    return ResidueSequence(Modulus(n), values);
}

ResidueSequence random_sequence(std::mt19937_64& rng, int n, int max_len) {
    std::uniform_int_distribution<int> len_dist(0, max_len);
    std::uniform_int_distribution<int> val_dist(0, n - 1);
    std::vector<int> values(len_dist(rng));
    for (int& v : values) {
        v = val_dist(rng);
    }
    return ResidueSequence(Modulus(n), values);
}

}  // namespace

TEST_CASE("modulus validation") {
    CHECK(Modulus(1).value() == 1);
    CHECK(Modulus(7).reduce(-3) == 4);
    CHECK_THROWS_AS(Modulus(0), InvalidModulus);
    CHECK_THROWS_AS(Modulus(-5), InvalidModulus);
}

TEST_CASE("sequence construction") {
    const auto s = seq(4, {1, 1, 2});
    CHECK(s.multiplicities() == std::vector<int>{0, 2, 1, 0});
    CHECK(s.length() == 3);

    const auto empty = ResidueSequence(Modulus(5));
    CHECK(empty.multiplicities() == std::vector<int>{0, 0, 0, 0, 0});
    CHECK(empty.length() == 0);

    const auto family = seq(5, {1, 1, 1, 1, 3});
    CHECK(family.multiplicities() == std::vector<int>{0, 4, 0, 1, 0});
    CHECK(family.length() == 5);

    CHECK_THROWS_AS(seq(4, {4}), InvalidValue);
    CHECK_THROWS_AS(seq(4, {-1}), InvalidValue);
    CHECK_THROWS_AS(Modulus(0), InvalidModulus);
    CHECK_THROWS_AS(ResidueSequence::from_multiplicities(Modulus(3), {1, -1, 0}),
                    InvalidValue);
}

TEST_CASE("sum and max multiplicity") {
    CHECK(seq(4, {1, 1, 2}).sum() == 4);
    CHECK(ResidueSequence(Modulus(5)).sum() == 0);
    CHECK(seq(5, {1, 1, 1, 1, 3}).sum() == 7);

    CHECK(seq(5, {1, 1, 1, 1, 3}).max_multiplicity() == 4);
    CHECK(seq(5, {0, 1, 2, 3, 4}).max_multiplicity() == 1);
    CHECK(ResidueSequence(Modulus(5)).max_multiplicity() == 0);
}

TEST_CASE("rescaling") {
    CHECK(seq(5, {2, 2, 2, 2, 1}).rescaled(3) == seq(5, {1, 1, 1, 1, 3}));
    CHECK(seq(7, {3, 3, 3, 3}).rescaled(5) == seq(7, {1, 1, 1, 1}));
    const auto s = seq(6, {1, 2, 5});
    CHECK(s.rescaled(1) == s);
    CHECK_THROWS_AS(s.rescaled(2), NotAUnit);
    CHECK_THROWS_AS(s.rescaled(0), NotAUnit);
}

TEST_CASE("rescale round trip through the inverse unit") {
    std::mt19937_64 rng(20260810);
    for (int iter = 0; iter < 200; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 19);
        const auto s = random_sequence(rng, n, n + 3);
        for (int m : units(Modulus(n))) {
            const int inv = unit_inverse(m, Modulus(n));
            CHECK(s.rescaled(m).rescaled(inv) == s);
        }
    }
}

TEST_CASE("units") {
    CHECK(units(Modulus(6)) == std::vector<int>{1, 5});
    CHECK(units(Modulus(7)) == std::vector<int>{1, 2, 3, 4, 5, 6});
    CHECK(units(Modulus(2)) == std::vector<int>{1});
    CHECK_THROWS_AS(units(Modulus(1)), DegenerateModulus);
}

TEST_CASE("canonical form") {
    // Derived by enumerating all four units of Z_5 and sorting each image.
    CHECK(canonical_form(seq(5, {2, 2, 2, 2, 1})).values() ==
          std::vector<int>{1, 1, 1, 1, 3});
    CHECK(canonical_form(seq(5, {1, 1, 1, 1, 3})).values() ==
          std::vector<int>{1, 1, 1, 1, 3});
    CHECK(canonical_form(seq(4, {0, 0})).values() == std::vector<int>{0, 0});
    CHECK_THROWS_AS(canonical_form(ResidueSequence(Modulus(1))), DegenerateModulus);
}

TEST_CASE("canonical form is constant on a unit orbit") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 300; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 19);
        const auto s = random_sequence(rng, n, n + 2);
        const auto canon = canonical_form(s);
        for (int m : units(Modulus(n))) {
            CHECK(canonical_form(s.rescaled(m)) == canon);
        }
        // Canonicalizing twice is the identity.
        CHECK(canonical_form(canon.sequence()) == canon);
    }
}

TEST_CASE("multiset view ignores input order") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 100; ++iter) {
        const int n = 1 + static_cast<int>(rng() % 12);
        auto values = random_sequence(rng, n, 10).values();
        auto shuffled = values;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto a = ResidueSequence(Modulus(n), values);
        const auto b = ResidueSequence(Modulus(n), shuffled);
        CHECK(a == b);
        CHECK(a.sum() == b.sum());
        CHECK(a.max_multiplicity() == b.max_multiplicity());
    }
}

TEST_CASE("distinct value count is unit invariant") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 200; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 19);
        const auto s = random_sequence(rng, n, n + 2);
        for (int m : units(Modulus(n))) {
            CHECK(s.rescaled(m).distinct_values() == s.distinct_values());
        }
    }
}

TEST_CASE("witness containment") {
    const auto parent = seq(4, {1, 1, 2});
    CHECK(SubseqWitness(seq(4, {1, 2})).contained_in(parent));
    CHECK(SubseqWitness(ResidueSequence(Modulus(4))).contained_in(parent));
    CHECK_FALSE(SubseqWitness(seq(4, {2, 2})).contained_in(parent));
    CHECK_FALSE(SubseqWitness(seq(5, {1})).contained_in(parent));
    CHECK(SubseqWitness(seq(4, {1, 2})).sum_residue() == 3);
}

TEST_CASE("sequence text parsing") {
    const auto s = parse_sequence("1^6,3,4", Modulus(14));
    CHECK(s.multiplicity(1) == 6);
    CHECK(s.multiplicity(3) == 1);
    CHECK(s.multiplicity(4) == 1);
    CHECK(s.length() == 8);

    CHECK(parse_sequence("1,1,2", Modulus(4)) == seq(4, {1, 1, 2}));
    CHECK(parse_sequence(" 1 , 1 ,\t2 ", Modulus(4)) == seq(4, {1, 1, 2}));
    CHECK(parse_sequence("", Modulus(5)).length() == 0);
    CHECK(parse_sequence("2^0", Modulus(5)).length() == 0);

    CHECK_THROWS_AS(parse_sequence("5", Modulus(4)), ParseError);
    CHECK_THROWS_AS(parse_sequence("-1", Modulus(4)), ParseError);
    CHECK_THROWS_AS(parse_sequence("1^-2", Modulus(4)), ParseError);
    CHECK_THROWS_AS(parse_sequence("1,,2", Modulus(4)), ParseError);
    CHECK_THROWS_AS(parse_sequence("1^", Modulus(4)), ParseError);
    CHECK_THROWS_AS(parse_sequence("x", Modulus(4)), ParseError);
    CHECK_THROWS_AS(parse_sequence("1^9999999", Modulus(4)), ParseError);
}

TEST_CASE("parser never crashes on junk") {
    std::mt19937_64 rng(777);
    const std::string alphabet = "0123456789,^- \t";
    for (int iter = 0; iter < 2000; ++iter) {
        std::string text(rng() % 12, ' ');
        for (char& c : text) {
            c = alphabet[rng() % alphabet.size()];
        }
        const int n = 1 + static_cast<int>(rng() % 9);
        try {
            const auto s = parse_sequence(text, Modulus(n));
            // Anything accepted must round-trip.
            CHECK(parse_sequence(format_sequence(s), Modulus(n)) == s);
        } catch (const ParseError&) {
            // rejection is fine; crashing or other exception types are not
        }
    }
}

TEST_CASE("format and parse round trip") {
    CHECK(format_sequence(parse_sequence("1^6,3,4", Modulus(14))) == "1^6,3,4");
    CHECK(format_sequence(ResidueSequence(Modulus(5))) == "");

    std::mt19937_64 rng(123);
    for (int iter = 0; iter < 300; ++iter) {
        const int n = 1 + static_cast<int>(rng() % 20);
        const auto s = random_sequence(rng, n, 2 * n);
        CHECK(parse_sequence(format_sequence(s), Modulus(n)) == s);
    }
}
