#include "gpsub/combinatorics.hpp"

#include <vector>

#include "doctest.h"
#include "gpsub/lattice.hpp"

using namespace gpsub;

TEST_CASE("bounded-parts partition counts") {
    // p<=k(n) classics
    std::vector<long long> p2 = partitions_at_most(6, 2);
    CHECK(p2 == std::vector<long long>{1, 1, 2, 2, 3, 3, 4});
    std::vector<long long> p3 = partitions_at_most(5, 3);
    CHECK(p3[5] == 5);
    // k >= n is unrestricted: p(5) = 7, p(6) = 11
    std::vector<long long> p9 = partitions_at_most(6, 9);
    CHECK(p9[5] == 7);
    CHECK(p9[6] == 11);
    CHECK(partitions_at_most(4, 0) == std::vector<long long>{1, 0, 0, 0, 0});
}

TEST_CASE("q-series container") {
    QSeries qs(Rational(3));
    qs.add({1}, Rational(1), 2);
    qs.add({1}, Rational(1), 3);
    qs.add({2}, Rational(5, 2), 1);
    qs.add({2}, Rational(7, 2), 9);  // above cutoff: dropped
    qs.add({0}, Rational(0), 0);     // zero count: dropped
    CHECK(qs.coefficient({1}, Rational(1)) == 5);
    CHECK(qs.coefficient({2}, Rational(5, 2)) == 1);
    CHECK(qs.coefficient({2}, Rational(7, 2)) == 0);
    CHECK(qs.terms().size() == 2);
    std::map<Rational, long long> totals = qs.weight_totals();
    CHECK(totals.at(Rational(1)) == 5);
    CHECK(qs.str({"a0"}) == "5 q^{1} a0^1\n1 q^{5/2} a0^2\n");
}

TEST_CASE("basis enumeration") {
    Lattice a1 = Lattice::named_or_file("A1");
    ChargeVector zero = ChargeVector::zero(1);

    // empty charge: just the vacuum at weight 0
    auto empty = enumerate_basis(a1, zero, {0}, Rational(6));
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].weight == Rational(0));
    REQUIRE(empty[0].members.size() == 1);
    CHECK(empty[0].members[0] == FreeMonomial{});

    // one letter: a single monomial per weight 1..D
    auto one = enumerate_basis(a1, zero, {1}, Rational(4));
    REQUIRE(one.size() == 4);
    for (size_t n = 0; n < one.size(); ++n) {
        CHECK(one[n].weight == Rational(1 + static_cast<long>(n)));
        REQUIRE(one[n].members.size() == 1);
        CHECK(one[n].members[0].letters()[0].offset == -1 - static_cast<long>(n));
    }

    // two letters at the minimal weight (2b|2b)/2 = 4: exactly one member
    auto two = enumerate_basis(a1, zero, {2}, Rational(4));
    REQUIRE(two.size() == 1);
    CHECK(two[0].weight == Rational(4));
    CHECK(two[0].members.size() == 1);

    // members are canonical, have the stated charge and weight, no duplicates
    Lattice a2 = Lattice::named_or_file("A2");
    ChargeVector lam = ChargeVector::parse("1,0");
    for (const auto& bucket : enumerate_basis(a2, lam, {2, 1}, Rational(7))) {
        for (size_t i = 0; i < bucket.members.size(); ++i) {
            const FreeMonomial& m = bucket.members[i];
            CHECK(m.is_canonical());
            CHECK(m.charge(2) == ChargeVector::parse("2,1"));
            CHECK(m.weight(a2, lam) == bucket.weight);
            if (i > 0) CHECK(bucket.members[i - 1] < m);
        }
    }

    CHECK_THROWS_AS(enumerate_basis(a1, zero, {-1}, Rational(2)), ConstraintError);
    CHECK_THROWS_AS(enumerate_basis(a1, zero, {1, 2}, Rational(2)), ConstraintError);
}

TEST_CASE("character pinned values") {
    Lattice a1 = Lattice::named_or_file("A1");
    ChargeVector zero = ChargeVector::zero(1);

    // summed over charge this is the first Rogers-Ramanujan series
    QSeries rr = character(a1, zero, Rational(6));
    std::map<Rational, long long> totals = rr.weight_totals();
    std::vector<long long> expect = {1, 1, 1, 1, 2, 2, 3};
    for (long n = 0; n <= 6; ++n) {
        long long got = totals.count(Rational(n)) ? totals.at(Rational(n)) : 0;
        CHECK(got == expect[static_cast<size_t>(n)]);
    }
    // charge grading: q^{i^2} leading term per charge i
    CHECK(rr.coefficient({0}, Rational(0)) == 1);
    CHECK(rr.coefficient({1}, Rational(1)) == 1);
    CHECK(rr.coefficient({2}, Rational(4)) == 1);
    CHECK(rr.coefficient({1}, Rational(0)) == 0);

    // half-integral gram: lowest nontrivial term q^{1/4} x^1
    Lattice half = Lattice::named_or_file("rank1:1/2");
    QSeries hs = character(half, ChargeVector::zero(1), Rational(2));
    CHECK(hs.coefficient({1}, Rational(1, 4)) == 1);
    CHECK(hs.coefficient({0}, Rational(0)) == 1);
    for (const auto& [key, count] : hs.terms()) {
        (void)count;
        if (key.charge[0] == 1) CHECK(key.weight >= Rational(1, 4));
    }

    // degenerate gram [[0]]: charge-k slice is the partition series p<=k(n)
    Lattice degenerate = Lattice::named_or_file("rank1:0");
    CHECK_FALSE(degenerate.positive_definite());
    CHECK_THROWS_AS(character(degenerate, ChargeVector::zero(1), Rational(4)), ConstraintError);
    QSeries parts = character(degenerate, ChargeVector::zero(1), Rational(6),
                              std::vector<long>{4});
    for (long k = 0; k <= 4; ++k) {
        std::vector<long long> row = partitions_at_most(6, k);
        for (long n = 0; n <= 6; ++n)
            CHECK(parts.coefficient({k}, Rational(n)) == row[static_cast<size_t>(n)]);
    }
}

TEST_CASE("character truncation is monotone") {
    Lattice a2 = Lattice::named_or_file("A2");
    ChargeVector zero = ChargeVector::zero(2);
    QSeries small = character(a2, zero, Rational(4));
    QSeries big = character(a2, zero, Rational(7));
    for (const auto& [key, count] : small.terms())
        CHECK(big.coefficient(key.charge, key.weight) == count);
    for (const auto& [key, count] : big.terms())
        if (key.weight <= Rational(4)) CHECK(small.coefficient(key.charge, key.weight) == count);
}

TEST_CASE("character agrees with enumeration bucket by bucket") {
    struct Case {
        const char* name;
        ChargeVector lambda;
        Rational cutoff;
    };
    std::vector<Case> cases = {
        {"A1", ChargeVector::zero(1), Rational(6)},
        {"A1", ChargeVector::parse("1/2"), Rational(5)},
        {"A2", ChargeVector::zero(2), Rational(5)},
        {"rank1:1/2", ChargeVector::parse("1"), Rational(4)},
        {"rank1:3", ChargeVector::zero(1), Rational(8)},
    };
    for (const Case& c : cases) {
        Lattice l = Lattice::named_or_file(c.name);
        std::vector<long> box = character_charge_box(l, c.lambda, c.cutoff);
        QSeries qs = character(l, c.lambda, c.cutoff);
        long long formula_total = 0, enumerated_total = 0;
        for (const auto& [key, count] : qs.terms()) formula_total += count;
        std::vector<long> charge(l.rank(), 0);
        // walk the full charge box and compare every bucket both ways
        auto walk = [&](auto&& self, size_t t) -> void {
            if (t == l.rank()) {
                for (const BasisBucket& b : enumerate_basis(l, c.lambda, charge, c.cutoff)) {
                    enumerated_total += static_cast<long long>(b.members.size());
                    CHECK(qs.coefficient(b.charge, b.weight) ==
                          static_cast<long long>(b.members.size()));
                }
                return;
            }
            for (long v = 0; v <= box[t]; ++v) {
                charge[t] = v;
                self(self, t + 1);
            }
        };
        walk(walk, 0);
        CHECK(formula_total == enumerated_total);
    }
}

TEST_CASE("three-way verification") {
    Lattice a1 = Lattice::named_or_file("A1");
    CharacterReport r = verify_character(a1, ChargeVector::zero(1), Rational(6));
    CHECK(r.all_pass);
    // charges 0,1,2 contribute 1+6+3 buckets at D=6
    CHECK(r.checks.size() == 10);
    for (const CharacterCheck& c : r.checks) {
        CHECK(c.pass);
        CHECK(c.formula == c.enumerated);
        CHECK(c.enumerated == c.fock_rank);
    }

    // shifted sector: weights carry the (lambda|lambda)/2 = 1/4 offset
    CharacterReport shifted = verify_character(a1, ChargeVector::parse("1/2"), Rational(5));
    CHECK(shifted.all_pass);
    bool saw_quarter = false;
    for (const CharacterCheck& c : shifted.checks)
        saw_quarter = saw_quarter || frac_part(c.weight) == Rational(1, 4);
    CHECK(saw_quarter);

    CharacterReport a2 = verify_character(Lattice::named_or_file("A2"), ChargeVector::zero(2),
                                          Rational(4));
    CHECK(a2.all_pass);
}
