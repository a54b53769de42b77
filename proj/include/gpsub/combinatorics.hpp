#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpsub/freegva.hpp"
#include "gpsub/lattice.hpp"

namespace gpsub {

// Number of partitions of n into at most k parts, by the bounded-parts
// recurrence p(n,k) = p(n,k-1) + p(n-k,k). Returns the row for fixed k,
// indices 0..nmax.
std::vector<long long> partitions_at_most(long nmax, long k);

struct QKey {
    Rational weight;
    std::vector<long> charge;
    friend bool operator==(const QKey&, const QKey&) = default;
    friend bool operator<(const QKey& a, const QKey& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        return a.charge < b.charge;
    }
};

// Truncated multigraded dimension series: coefficient of q^weight x^charge.
class QSeries {
public:
    explicit QSeries(Rational cutoff) : cutoff_(std::move(cutoff)) {}

    const Rational& cutoff() const { return cutoff_; }
    const std::map<QKey, long long>& terms() const { return terms_; }

    // Accumulates; silently drops weights above the cutoff and zero counts.
    void add(std::vector<long> charge, Rational weight, long long count);
    long long coefficient(const std::vector<long>& charge, const Rational& weight) const;
    // Sum over charges per weight.
    std::map<Rational, long long> weight_totals() const;

    // One "coeff q^{w} x0^{i0} ..." line per term, sorted by weight.
    std::string str(const std::vector<std::string>& labels) const;

    friend bool operator==(const QSeries& a, const QSeries& b) {
        return a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
    }

private:
    Rational cutoff_;
    std::map<QKey, long long> terms_;
};

// All basis monomials with the given letter counts, grouped by weight.
struct BasisBucket {
    std::vector<long> charge;
    Rational weight;
    std::vector<FreeMonomial> members;
};

// Enumerates the combinatorial basis in the sector shifted by lambda:
// letters matching `charge`, negative offsets weakly decreasing within
// equal-letter runs, total weight <= max_weight. Buckets come back sorted
// by weight with members in monomial order; empty buckets are dropped.
std::vector<BasisBucket> enumerate_basis(const Lattice& l, const ChargeVector& lambda,
                                         const std::vector<long>& charge,
                                         const Rational& max_weight);

// Inclusive per-coordinate upper bounds for letter counts that can satisfy
// (charge+lambda | charge+lambda)/2 <= cutoff. Requires a positive-definite
// Gram matrix (throws ConstraintError otherwise).
std::vector<long> character_charge_box(const Lattice& l, const ChargeVector& lambda,
                                       const Rational& cutoff);

// Graded dimension as a Nahm-type sum: for each admissible letter count i,
// q^{(i+lambda|i+lambda)/2} x^i times one bounded-parts partition series per
// basis direction. For non-positive-definite Gram matrices an explicit
// charge box is required.
QSeries character(const Lattice& l, const ChargeVector& lambda, const Rational& cutoff,
                  const std::optional<std::vector<long>>& charge_box = std::nullopt);

struct CharacterCheck {
    std::vector<long> charge;
    Rational weight;
    long long formula = 0;
    long long enumerated = 0;
    long long fock_rank = 0;
    bool pass = false;
};

struct CharacterReport {
    std::vector<CharacterCheck> checks;
    bool all_pass = true;
};

// Three-way agreement per (charge, weight) bucket: formula coefficient,
// basis enumeration count, and the exact rank of the Fock images of the
// enumerated monomials. Disagreements are reported, never thrown.
CharacterReport verify_character(const Lattice& l, const ChargeVector& lambda,
                                 const Rational& cutoff,
                                 const std::optional<std::vector<long>>& charge_box = std::nullopt,
                                 bool with_fock_rank = true);

// Exact rank of the span of the Fock images of the given monomials.
size_t fock_rank(const Lattice& l, const ChargeVector& lambda,
                 const std::vector<FreeMonomial>& monomials);

}  // namespace gpsub
