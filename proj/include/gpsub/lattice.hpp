#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gpsub/cyclotomic.hpp"
#include "gpsub/rational.hpp"

namespace gpsub {

// Coordinate vector with respect to the distinguished lattice basis.
// Coordinates are rational: dual vectors and extension charges live in the
// ambient rational span of the same basis.
class ChargeVector {
public:
    ChargeVector() = default;
    explicit ChargeVector(std::vector<Rational> coords) : c_(std::move(coords)) {}
    static ChargeVector zero(size_t rank) { return ChargeVector(std::vector<Rational>(rank, Rational(0))); }
    static ChargeVector unit(size_t rank, size_t i);

    // Comma-separated rationals, e.g. "1,0,-1/2".
    static ChargeVector parse(const std::string& text);
    std::string str() const;

    size_t rank() const { return c_.size(); }
    const Rational& operator[](size_t i) const { return c_[i]; }

    bool is_zero() const;
    bool is_integral() const;
    // Sum of coordinates.
    Rational height() const;

    ChargeVector operator-() const;
    ChargeVector& operator+=(const ChargeVector& o);
    ChargeVector& operator-=(const ChargeVector& o);
    ChargeVector scaled(const Rational& r) const;

    friend ChargeVector operator+(ChargeVector a, const ChargeVector& b) { return a += b; }
    friend ChargeVector operator-(ChargeVector a, const ChargeVector& b) { return a -= b; }
    friend bool operator==(const ChargeVector& a, const ChargeVector& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ChargeVector& a, const ChargeVector& b) { return !(a == b); }
    friend bool operator<(const ChargeVector& a, const ChargeVector& b);

private:
    std::vector<Rational> c_;
};

// Rational lattice presented by a symmetric Gram matrix on a fixed basis,
// together with the braiding data eta and the cocycle section epsilon, all
// held as rational exponent tables (a value x stands for e(x) = exp(2 pi i x)).
//
// Validated constraints: gram symmetric; eta_ii = (b_i|b_i)/2 mod 1;
// eta_ij + eta_ji = (b_i|b_j) mod 1. The cocycle section is
// eps_ij = eta_ij - (b_i|b_j)/2 for i > j and 0 otherwise, extended
// bilinearly, which satisfies the 2-cocycle identity identically and has
// eps(a,b)/eps(b,a) = omega(a,b) on integral vectors.
class Lattice {
public:
    Lattice(std::vector<std::string> labels, std::vector<std::vector<Rational>> gram,
            std::optional<std::vector<std::vector<Rational>>> eta_exponents = std::nullopt);

    // "A1", "A2", "A3", "rank1:p/q", or a path to a JSON lattice file.
    static Lattice named_or_file(const std::string& name);
    static Lattice from_json_text(const std::string& text);
    std::string to_json_text() const;

    size_t rank() const { return rank_; }
    const std::vector<std::string>& labels() const { return labels_; }
    size_t index_of_label(const std::string& label) const;  // throws ParseError if unknown
    const CyclotomicField& field() const { return *field_; }

    const Rational& gram(size_t i, size_t j) const { return gram_[i][j]; }
    Rational pairing(const ChargeVector& a, const ChargeVector& b) const;
    // Pairing of the i-th basis vector against a charge.
    Rational pairing_row(size_t i, const ChargeVector& b) const;
    // N(a,b) = -(a|b), the generalized locality bound.
    Rational locality_bound(const ChargeVector& a, const ChargeVector& b) const;
    Rational locality_bound(size_t i, size_t j) const { return -gram_[i][j]; }

    Rational eta_exponent(size_t i, size_t j) const { return eta_[i][j]; }
    Rational eta_exponent(const ChargeVector& a, const ChargeVector& b) const;
    Rational omega_exponent(const ChargeVector& a, const ChargeVector& b) const;
    Rational epsilon_exponent(const ChargeVector& a, const ChargeVector& b) const;
    Cyclotomic eta(const ChargeVector& a, const ChargeVector& b) const;
    Cyclotomic omega(const ChargeVector& a, const ChargeVector& b) const;
    Cyclotomic epsilon(const ChargeVector& a, const ChargeVector& b) const;
    // True when every epsilon value is 1 (the default eta gives this).
    bool epsilon_trivial() const;

    // Columns of gram^-1: dual basis vectors in lattice coordinates.
    // Throws SingularGramError when gram is not invertible.
    const std::vector<ChargeVector>& dual_basis() const;
    bool gram_invertible() const { return !dual_basis_.empty(); }
    bool positive_definite() const { return positive_definite_; }

    // The dual lattice on the dual basis (gram replaced by its inverse,
    // default eta, labels suffixed with "v").
    Lattice dual() const;

private:
    size_t rank_;
    std::vector<std::string> labels_;
    std::vector<std::vector<Rational>> gram_;
    std::vector<std::vector<Rational>> eta_;
    std::vector<std::vector<Rational>> eps_;
    std::vector<ChargeVector> dual_basis_;  // empty when gram is singular
    bool positive_definite_ = false;
    std::shared_ptr<const CyclotomicField> field_;
};

}  // namespace gpsub
