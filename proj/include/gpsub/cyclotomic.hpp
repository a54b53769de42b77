#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gpsub/rational.hpp"

namespace gpsub {

class Cyclotomic;

// The field Q(zeta_N), zeta_N = e(1/N) = exp(2 pi i / N). Elements are
// stored on the power basis 1, zeta, ..., zeta^{phi(N)-1} and reduced
// modulo the N-th cyclotomic polynomial, so representations are canonical
// and equality is coefficient-wise. A field object is created once per
// lattice; Cyclotomic values hold a non-owning pointer to it.
class CyclotomicField {
public:
    explicit CyclotomicField(unsigned long order);

    unsigned long order() const { return order_; }
    size_t degree() const { return deg_; }

    Cyclotomic zero() const;
    Cyclotomic one() const;
    Cyclotomic from_rational(const Rational& r) const;

    // e(r) = exp(2 pi i r). The reduced denominator of r must divide the
    // field order, otherwise IncompatibleOrderError.
    Cyclotomic root_of_unity(const Rational& r) const;

    // zeta^k reduced mod Phi_N, valid for k < max(2*degree-1, order).
    const std::vector<Rational>& power(size_t k) const { return power_.at(k); }

    // The N-th cyclotomic polynomial, monic, little-endian.
    const std::vector<Rational>& modulus() const { return phi_; }

private:
    unsigned long order_;
    size_t deg_ = 0;
    std::vector<Rational> phi_;  // monic, little-endian coefficients
    std::vector<std::vector<Rational>> power_;
};

class Cyclotomic {
public:
    Cyclotomic() = default;  // unusable null value; assigned before use

    const CyclotomicField* field() const { return field_; }
    bool is_zero() const;
    bool is_rational() const;
    // The value as a rational; throws unless is_rational().
    Rational as_rational() const;

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rational& r);

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
    friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    // Multiplicative inverse via the extended Euclidean algorithm in Q[x];
    // throws DivisionByZeroError on zero.
    Cyclotomic inverse() const;
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

    // Rendered as a Q-combination of e(k/N) basis powers, e.g. "1/2 + e(1/4)".
    std::string str() const;

private:
    friend class CyclotomicField;
    Cyclotomic(const CyclotomicField* f, std::vector<Rational> c)
        : field_(f), c_(std::move(c)) {}

    const CyclotomicField* field_ = nullptr;
    std::vector<Rational> c_;
};

}  // namespace gpsub
