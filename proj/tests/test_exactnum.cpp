#include <doctest.h>

#include <random>

#include "gpsub/cyclotomic.hpp"
#include "gpsub/rational.hpp"

using gpsub::Cyclotomic;
using gpsub::CyclotomicField;
using gpsub::Rational;

TEST_CASE("rational parse/print round trip and reduction") {
    CHECK(Rational::parse("3/6").str() == "1/2");
    CHECK(Rational::parse("-4/2").str() == "-2");
    CHECK(Rational::parse("0/5").str() == "0");
    CHECK(Rational::parse("7").str() == "7");
    CHECK(Rational::parse(" 5/3 ").str() == "5/3");
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK_THROWS_AS(Rational::parse("1/0"), gpsub::DivisionByZeroError);
    CHECK_THROWS_AS(Rational::parse("x"), gpsub::ParseError);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), gpsub::ParseError);
    CHECK_THROWS_AS(Rational::parse(""), gpsub::ParseError);
}

TEST_CASE("rational arithmetic and order") {
    Rational a(1, 2), b(1, 3);
    CHECK((a + b).str() == "5/6");
    CHECK((a - b).str() == "1/6");
    CHECK((a * b).str() == "1/6");
    CHECK((a / b).str() == "3/2");
    CHECK(a > b);
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK_THROWS_AS(a / Rational(0), gpsub::DivisionByZeroError);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(gpsub::frac_part(Rational(-7, 2)) == Rational(1, 2));
    CHECK(Rational(5).is_nonneg_integer());
    CHECK_FALSE(Rational(-5).is_nonneg_integer());
    CHECK_FALSE(Rational(1, 2).is_nonneg_integer());
}

TEST_CASE("generalized binomial coefficients") {
    // Independent product evaluation for the frozen cases:
    // binom(-2,2) = (-2)(-3)/2! = 3, binom(1/2,2) = (1/2)(-1/2)/2! = -1/8.
    CHECK(gpsub::gen_binomial(Rational(-2), 2) == Rational(3));
    CHECK(gpsub::gen_binomial(Rational(1, 2), 2) == Rational(-1, 8));
    CHECK(gpsub::gen_binomial(Rational(5), 0) == Rational(1));
    CHECK(gpsub::gen_binomial(Rational(3), 2) == Rational(3));
    CHECK(gpsub::gen_binomial(Rational(3), 4) == Rational(0));
    CHECK(gpsub::gen_binomial(Rational(-1), 3) == Rational(-1));
    // Pascal identity holds for rational upper argument.
    Rational n(7, 3);
    for (unsigned long j = 1; j < 6; ++j)
        CHECK(gpsub::gen_binomial(n, j) ==
              gpsub::gen_binomial(n - 1, j) + gpsub::gen_binomial(n - 1, j - 1));
}

TEST_CASE("roots of unity in small cyclotomic fields") {
    CyclotomicField f4(4);
    Cyclotomic i = f4.root_of_unity(Rational(1, 4));
    CHECK(i * i == f4.from_rational(Rational(-1)));
    CHECK(f4.root_of_unity(Rational(1, 2)) == f4.from_rational(Rational(-1)));
    CHECK(f4.root_of_unity(Rational(0)) == f4.one());
    CHECK(f4.root_of_unity(Rational(5, 4)) == i);   // periodic mod 1
    CHECK(f4.root_of_unity(Rational(-3, 4)) == i);  // negative exponents
    CHECK_THROWS_AS(f4.root_of_unity(Rational(1, 3)), gpsub::IncompatibleOrderError);

    CyclotomicField f6(6);
    Cyclotomic w = f6.root_of_unity(Rational(1, 3));
    CHECK(w * w + w + f6.one() == f6.zero());

    CyclotomicField f2(2);
    CHECK(f2.degree() == 1);
    CHECK(f2.root_of_unity(Rational(1, 2)) == f2.from_rational(Rational(-1)));
}

TEST_CASE("root_of_unity is a homomorphism") {
    CyclotomicField f(12);
    std::mt19937 rng(20260814);
    std::uniform_int_distribution<long> num(-30, 30);
    const long dens[] = {1, 2, 3, 4, 6, 12};
    for (int t = 0; t < 100; ++t) {
        Rational a(num(rng), dens[rng() % 6]);
        Rational b(num(rng), dens[rng() % 6]);
        CHECK(f.root_of_unity(a) * f.root_of_unity(b) == f.root_of_unity(a + b));
    }
    // Full cycle multiplies to e(0 + 1/12 + ... + 11/12) = e(11/2) = -1.
    Cyclotomic prod = f.one();
    for (long k = 0; k < 12; ++k) prod *= f.root_of_unity(Rational(k, 12));
    CHECK(prod == f.from_rational(Rational(-1)));
}

namespace {

Cyclotomic random_scalar(const CyclotomicField& f, std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<long> den(1, 4);
    Cyclotomic x = f.zero();
    for (size_t k = 0; k < f.degree(); ++k)
        x += f.root_of_unity(Rational(static_cast<long>(k), static_cast<long>(f.order()))) *
             Rational(num(rng), den(rng));
    return x;
}

}  // namespace

TEST_CASE("cyclotomic field axioms and inverses") {
    CyclotomicField f(12);
    CHECK(f.degree() == 4);
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        Cyclotomic x = random_scalar(f, rng);
        Cyclotomic y = random_scalar(f, rng);
        Cyclotomic z = random_scalar(f, rng);
        CHECK((x + y) * z == x * z + y * z);
        CHECK(x * y == y * x);
        CHECK((x * y) * z == x * (y * z));
        if (!x.is_zero()) {
            CHECK(x * x.inverse() == f.one());
            CHECK((x.inverse()).inverse() == x);
        }
    }
    CHECK_THROWS_AS(f.zero().inverse(), gpsub::DivisionByZeroError);
}

TEST_CASE("cyclotomic identities") {
    CyclotomicField f8(8);
    Cyclotomic z = f8.root_of_unity(Rational(1, 8));
    CHECK((f8.one() + z) * (f8.one() - z) == f8.one() - z * z);
    CyclotomicField f4(4);
    Cyclotomic i = f4.root_of_unity(Rational(1, 4));
    Cyclotomic half_one_minus_i = (f4.one() - i) * Rational(1, 2);
    CHECK((f4.one() + i).inverse() == half_one_minus_i);
    CHECK((f4.one() + i).str() == "1 + e(1/4)");
    CHECK(f4.zero().str() == "0");
    CHECK((f4.from_rational(Rational(-1, 2)) - i * Rational(2)).str() == "-1/2 - 2*e(1/4)");
    CHECK(f4.one().is_rational());
    CHECK(f4.one().as_rational() == Rational(1));
    CHECK_FALSE(i.is_rational());
    CHECK_THROWS_AS(i.as_rational(), gpsub::Error);
}
