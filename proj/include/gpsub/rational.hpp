#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

#include "gpsub/error.hpp"

namespace gpsub {

// Exact rational number, always stored in lowest terms with positive
// denominator. Thin value wrapper around GMP's mpq_class; the wrapper pins
// down serialization ("p/q", "p" when integral), ordering, hashing and the
// handful of integer helpers the rest of the library needs.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}                // NOLINT(google-explicit-constructor)
    Rational(long n) : v_(static_cast<long>(n)) {}  // NOLINT
    Rational(long num, long den);
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    // Accepts "p", "p/q", optional leading '-'; q > 0 after reduction.
    static Rational parse(const std::string& text);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_nonneg_integer() const { return is_integer() && v_ >= 0; }

    // Largest integer <= value.
    mpz_class floor() const;

    // num/den both guaranteed to fit: callers use this for desk-scale
    // quantities (modes, small exponents). Throws on overflow.
    long to_long() const;

    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    size_t hash() const;

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Generalized binomial coefficient binom(N, j) = N(N-1)...(N-j+1)/j! for
// rational N and nonnegative integer j.
Rational gen_binomial(const Rational& n, unsigned long j);

// Reduce r into [0,1): r - floor(r).
Rational frac_part(const Rational& r);

}  // namespace gpsub

template <>
struct std::hash<gpsub::Rational> {
    size_t operator()(const gpsub::Rational& r) const { return r.hash(); }
};
