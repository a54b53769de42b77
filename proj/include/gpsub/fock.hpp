#pragma once

#include <map>
#include <string>
#include <vector>

#include "gpsub/lattice.hpp"

namespace gpsub {

// One Heisenberg creation letter b_i(n) with n <= -1.
struct HeisLetter {
    size_t index;
    long mode;
    friend auto operator<=>(const HeisLetter&, const HeisLetter&) = default;
};

// Basis element of the lattice Fock space: a sorted multiset of creation
// letters applied to a charge point e^mu. The point may have rational
// coordinates (dual charges, extension shifts).
class FockBasisElement {
public:
    FockBasisElement() = default;
    explicit FockBasisElement(ChargeVector point) : point_(std::move(point)) {}
    FockBasisElement(std::vector<HeisLetter> heis, ChargeVector point);

    const std::vector<HeisLetter>& heis() const { return heis_; }
    const ChargeVector& point() const { return point_; }
    long heis_degree() const;  // sum of -mode over letters
    Rational weight(const Lattice& l) const;

    FockBasisElement with_letter(HeisLetter x) const;
    FockBasisElement without_letter(size_t pos) const;
    FockBasisElement with_point(ChargeVector mu) const;

    // "b[0](-2) b[1](-1) e(1,0)"; a bare point renders as "e(1,0)".
    std::string str() const;

    friend bool operator==(const FockBasisElement& a, const FockBasisElement& b) {
        return a.heis_ == b.heis_ && a.point_ == b.point_;
    }
    friend bool operator!=(const FockBasisElement& a, const FockBasisElement& b) {
        return !(a == b);
    }
    friend bool operator<(const FockBasisElement& a, const FockBasisElement& b);

private:
    std::vector<HeisLetter> heis_;  // sorted by (index, mode)
    ChargeVector point_;
};

FockBasisElement vacuum(const Lattice& l);

// Finitely supported linear combination of Fock basis elements with exact
// cyclotomic coefficients. Terms with zero coefficient are never stored.
class FockVector {
public:
    using Terms = std::map<FockBasisElement, Cyclotomic>;

    FockVector() = default;
    static FockVector single(FockBasisElement e, Cyclotomic c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add_term(const FockBasisElement& e, const Cyclotomic& c);
    FockVector& operator+=(const FockVector& o);
    FockVector& operator-=(const FockVector& o);
    FockVector scaled(const Cyclotomic& c) const;

    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
    friend bool operator==(const FockVector& a, const FockVector& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const FockVector& a, const FockVector& b) { return !(a == b); }

    // One line per term: "(coeff) b[0](-1) e(1)" joined by " + ".
    std::string str() const;

private:
    Terms terms_;
};

// Heisenberg mode b_i(n): creation for n < 0, (b_i|mu) for n = 0,
// contraction against matching creation letters for n > 0.
FockVector heis_mode(const Lattice& l, size_t i, long n, const FockVector& v);

// Mode e^alpha(n) of the vertex operator Y(e^alpha, z) = sum e^alpha(n) z^{-n-1};
// n may be rational (it must lie in -(alpha|mu) - 1 + Z on each charge
// sector to act nontrivially). When eps_shift is nonnull the cocycle factor
// is epsilon(alpha, mu - *eps_shift): extension charges are epsilon-trivial.
FockVector vertex_mode(const Lattice& l, const ChargeVector& alpha, const Rational& n,
                       const FockVector& v, const ChargeVector* eps_shift = nullptr);

// Simple current operator e_lambda: shifts every charge point by lambda.
FockVector simple_current(const ChargeVector& lambda, const FockVector& v);

// Translation operator T: derivation with T b_i(n) = -n b_i(n-1) on letters
// and T e^mu = mu(-1) e^mu on points; T(vacuum) = 0.
FockVector translation(const Lattice& l, const FockVector& v);

// Extraction operator D = e_{-b_a} ((e_{-(b_a)dual}) (e^{(b_a)dual})(-1))^p.
// Requires an invertible gram matrix (dual basis).
FockVector extraction_D(const Lattice& l, size_t a, unsigned long p, const FockVector& v);

// Composite extraction X for a canonical monomial given by (basis index,
// offset) letters in inside-out order: X = D^k o ... o D^1 with the exponent
// of D^i determined by the offset gap to the previous equal letter.
FockVector extraction_X(const Lattice& l, const std::vector<std::pair<size_t, long>>& letters,
                        const FockVector& v);

struct RelationCheck {
    std::string name;
    bool pass;
    std::string detail;  // empty when passing
};

struct PresentationReport {
    std::vector<RelationCheck> checks;
    bool all_pass = true;
};

// Verifies the defining relations of the lattice generalized vertex algebra
// on the Fock model: Heisenberg pairings against the generators, the
// charge-inversion normalization and the translation covariance.
PresentationReport check_presentation_relations(const Lattice& l);

}  // namespace gpsub
