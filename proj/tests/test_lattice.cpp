#include <doctest.h>

#include <fstream>
#include <random>

#include "gpsub/lattice.hpp"

using gpsub::ChargeVector;
using gpsub::Lattice;
using gpsub::Rational;

namespace {

ChargeVector random_charge(size_t rank, std::mt19937& rng, bool integral) {
    std::uniform_int_distribution<long> num(-4, 4);
    std::vector<Rational> c;
    for (size_t i = 0; i < rank; ++i)
        c.push_back(integral ? Rational(num(rng)) : Rational(num(rng), 2));
    return ChargeVector(std::move(c));
}

}  // namespace

TEST_CASE("charge vector basics") {
    ChargeVector v = ChargeVector::parse("1,0,-1/2");
    CHECK(v.rank() == 3);
    CHECK(v.str() == "1,0,-1/2");
    CHECK(v.height() == Rational(1, 2));
    CHECK_FALSE(v.is_integral());
    CHECK((v + v).str() == "2,0,-1");
    CHECK((-v).str() == "-1,0,1/2");
    CHECK(ChargeVector::unit(3, 1).str() == "0,1,0");
    CHECK(ChargeVector::zero(2).is_zero());
    CHECK(v.scaled(Rational(2)).is_integral());
    CHECK_THROWS_AS(ChargeVector::parse(""), gpsub::ParseError);
}

TEST_CASE("built-in lattices and pairings") {
    Lattice a2 = Lattice::named_or_file("A2");
    CHECK(a2.rank() == 2);
    CHECK(a2.labels()[0] == "a0");
    CHECK(a2.gram(0, 0) == Rational(2));
    CHECK(a2.gram(0, 1) == Rational(-1));
    ChargeVector e0 = ChargeVector::unit(2, 0), e1 = ChargeVector::unit(2, 1);
    CHECK(a2.pairing(e0, e1) == Rational(-1));
    CHECK(a2.pairing(e0 + e1, e0 + e1) == Rational(2));
    CHECK(a2.locality_bound(e0, e0) == Rational(-2));
    CHECK(a2.locality_bound(0, 1) == Rational(1));
    CHECK(a2.index_of_label("a1") == 1);
    CHECK_THROWS_AS(a2.index_of_label("zz"), gpsub::ParseError);
    CHECK(a2.positive_definite());

    Lattice half = Lattice::named_or_file("rank1:1/2");
    CHECK(half.gram(0, 0) == Rational(1, 2));
    CHECK(half.field().order() == 8);  // 2 * lcm(gram den 2, default eta den 4)

    CHECK(Lattice::named_or_file("A3").rank() == 3);
    CHECK_THROWS_AS(Lattice::named_or_file("B7"), gpsub::ParseError);
}

TEST_CASE("dual basis inverts the gram matrix") {
    Lattice a2 = Lattice::named_or_file("A2");
    const auto& db = a2.dual_basis();
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
            CHECK(a2.pairing(ChargeVector::unit(2, i), db[j]) ==
                  (i == j ? Rational(1) : Rational(0)));
    CHECK(db[0].str() == "2/3,1/3");

    Lattice dual = a2.dual();
    CHECK(dual.gram(0, 0) == Rational(2, 3));
    CHECK(dual.gram(0, 1) == Rational(1, 3));
    CHECK(dual.labels()[0] == "a0v");
    // Double dual restores the gram matrix.
    CHECK(dual.dual().gram(0, 1) == Rational(-1));

    Lattice degenerate({}, {{Rational(0)}});
    CHECK_FALSE(degenerate.gram_invertible());
    CHECK_FALSE(degenerate.positive_definite());
    CHECK_THROWS_AS(degenerate.dual_basis(), gpsub::SingularGramError);
    CHECK_THROWS_AS(degenerate.dual(), gpsub::SingularGramError);
}

TEST_CASE("lattice constraint validation") {
    using M = std::vector<std::vector<Rational>>;
    CHECK_THROWS_AS(Lattice({}, M{{Rational(1), Rational(0)}}), gpsub::ConstraintError);
    CHECK_THROWS_AS(Lattice({}, M{{Rational(0), Rational(1)}, {Rational(2), Rational(0)}}),
                    gpsub::ConstraintError);
    CHECK_THROWS_AS(Lattice({"x", "x"}, M{{Rational(2), Rational(0)}, {Rational(0), Rational(2)}}),
                    gpsub::ConstraintError);
    CHECK_THROWS_AS(Lattice({"0bad"}, M{{Rational(2)}}), gpsub::ConstraintError);
    // eta diagonal must be e((b|b)/2): here e(0) against (b|b)=1 fails.
    CHECK_THROWS_AS(Lattice({}, M{{Rational(1)}}, M{{Rational(0)}}), gpsub::ConstraintError);
    // eta(a,b)*eta(b,a) must be e((a|b)): here e(1/6)e(1/6) = e(1/3) != e(-1).
    CHECK_THROWS_AS(Lattice({}, M{{Rational(2), Rational(-1)}, {Rational(-1), Rational(2)}},
                            M{{Rational(1), Rational(1, 6)}, {Rational(1, 6), Rational(1)}}),
                    gpsub::ConstraintError);
    // Integer eta exponents are legal for A2 (e(0) = e(-1) splits g_01 = -1)
    // and force the classic sign cocycle: omega_01 = e(1/2) = -1.
    Lattice shifted({}, M{{Rational(2), Rational(-1)}, {Rational(-1), Rational(2)}},
                    M{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
    CHECK_FALSE(shifted.epsilon_trivial());
    CHECK(shifted.epsilon_exponent(gpsub::ChargeVector::unit(2, 1),
                                   gpsub::ChargeVector::unit(2, 0)) == Rational(1, 2));
    // A valid non-default eta on A2: split the off-diagonal asymmetrically.
    Lattice twisted({}, M{{Rational(2), Rational(-1)}, {Rational(-1), Rational(2)}},
                    M{{Rational(1), Rational(-1, 4)}, {Rational(-3, 4), Rational(1)}});
    CHECK_FALSE(twisted.epsilon_trivial());
    CHECK(twisted.field().order() == 8);
}

TEST_CASE("default eta gives trivial epsilon and omega") {
    for (const char* name : {"A1", "A2", "A3", "rank1:1/2", "rank1:3"}) {
        Lattice l = Lattice::named_or_file(name);
        CHECK(l.epsilon_trivial());
        std::mt19937 rng(99);
        for (int t = 0; t < 20; ++t) {
            ChargeVector a = random_charge(l.rank(), rng, true);
            ChargeVector b = random_charge(l.rank(), rng, true);
            CHECK(l.omega(a, b) == l.field().one());
            CHECK(l.epsilon(a, b) == l.field().one());
        }
    }
}

TEST_CASE("eta, omega, epsilon invariants on random integral vectors") {
    using M = std::vector<std::vector<Rational>>;
    Lattice twisted({}, M{{Rational(2), Rational(-1)}, {Rational(-1), Rational(2)}},
                    M{{Rational(1), Rational(-1, 4)}, {Rational(-3, 4), Rational(1)}});
    Lattice half = Lattice::named_or_file("rank1:1/2");
    for (const Lattice& l : {twisted, half}) {
        const auto& f = l.field();
        std::mt19937 rng(20260814);
        for (int t = 0; t < 100; ++t) {
            ChargeVector a = random_charge(l.rank(), rng, true);
            ChargeVector b = random_charge(l.rank(), rng, true);
            ChargeVector c = random_charge(l.rank(), rng, true);
            // Bimultiplicativity of eta.
            CHECK(l.eta(a + b, c) == l.eta(a, c) * l.eta(b, c));
            CHECK(l.eta(a, b + c) == l.eta(a, b) * l.eta(a, c));
            // eta(a,b)*eta(b,a) = e((a|b)).
            CHECK(l.eta(a, b) * l.eta(b, a) == f.root_of_unity(l.pairing(a, b)));
            // omega measures the failure of eta symmetry against the pairing.
            CHECK(l.omega(a, b) == l.eta(a, b) * f.root_of_unity(-l.pairing(a, b) / Rational(2)));
            // epsilon is a section of omega: eps(a,b)/eps(b,a) = omega(a,b).
            CHECK(l.epsilon(a, b) == l.omega(a, b) * l.epsilon(b, a));
            // Bilinear sections satisfy the 2-cocycle identity on the nose.
            CHECK(l.epsilon(a, b) * l.epsilon(a + b, c) == l.epsilon(b, c) * l.epsilon(a, b + c));
        }
    }
}

TEST_CASE("lattice json round trip") {
    std::string text = R"json({
      "labels": ["x", "y"],
      "gram": [["2", "-1"], ["-1", "2"]],
      "eta": [["e(1)", "e(-1/4)"], ["e(-3/4)", "e(1)"]]
    })json";
    Lattice l = Lattice::from_json_text(text);
    CHECK(l.labels()[0] == "x");
    CHECK(l.eta_exponent(0, 1) == Rational(-1, 4));
    Lattice l2 = Lattice::from_json_text(l.to_json_text());
    CHECK(l2.gram(1, 0) == Rational(-1));
    CHECK(l2.eta_exponent(1, 0) == gpsub::frac_part(Rational(-3, 4)));
    // Exponents are canonical only mod 1 across serialization.
    CHECK(gpsub::frac_part(l2.epsilon_exponent(ChargeVector::unit(2, 1), ChargeVector::unit(2, 0))) ==
          gpsub::frac_part(l.epsilon_exponent(ChargeVector::unit(2, 1), ChargeVector::unit(2, 0))));

    CHECK_THROWS_AS(Lattice::from_json_text("nonsense"), gpsub::ParseError);
    CHECK_THROWS_AS(Lattice::from_json_text("{}"), gpsub::ParseError);
    CHECK_THROWS_AS(Lattice::from_json_text(R"json({"gram": [["1/0"]]})json"), gpsub::Error);
    CHECK_THROWS_AS(Lattice::from_json_text(R"json({"gram": [[2]], "eta": [[0.5]]})json"),
                    gpsub::ParseError);

    // Integer JSON entries are accepted.
    Lattice l3 = Lattice::from_json_text(R"json({"gram": [[2, -1], [-1, 2]]})json");
    CHECK(l3.gram(0, 1) == Rational(-1));

    // File loading matches inline text.
    std::string path = "test_lattice_tmp.json";
    {
        std::ofstream out(path);
        out << text;
    }
    CHECK(Lattice::named_or_file(path).labels()[1] == "y");
    std::remove(path.c_str());
}
