#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gpsub/fock.hpp"
#include "gpsub/lattice.hpp"

namespace gpsub {

// One free letter a(m): generator index plus integer offset. The actual mode
// of the i-th letter of a monomial is m_i + sum_{j<i} N(a_i, a_j) where the
// sum runs over the letters applied earlier.
struct FreeLetter {
    size_t index;
    long offset;
    friend auto operator<=>(const FreeLetter&, const FreeLetter&) = default;
};

// Word in the free letters, stored inside-out: letters_[0] acts first.
class FreeMonomial {
public:
    FreeMonomial() = default;
    explicit FreeMonomial(std::vector<FreeLetter> letters) : letters_(std::move(letters)) {}

    const std::vector<FreeLetter>& letters() const { return letters_; }
    size_t size() const { return letters_.size(); }
    long total_offset() const;
    // Letter multiset counts as a charge vector.
    ChargeVector charge(size_t rank) const;

    FreeMonomial prefix(size_t k) const;
    FreeMonomial appended(FreeLetter x) const;

    // Canonical (basis) shape: indices weakly increasing, offsets negative,
    // and offsets weakly decreasing along equal-index runs.
    bool is_canonical() const;

    // Absolute weight of the evaluation against the shift lambda:
    // (charge+lambda | charge+lambda)/2 + sum(-m_i - 1).
    Rational weight(const Lattice& l, const ChargeVector& lambda) const;

    // "a1(-1) a0(-2)": leftmost letter outermost (applied last).
    std::string str(const Lattice& l) const;

    friend bool operator==(const FreeMonomial& a, const FreeMonomial& b) {
        return a.letters_ == b.letters_;
    }
    friend bool operator<(const FreeMonomial& a, const FreeMonomial& b) {
        return a.letters_ < b.letters_;
    }

private:
    std::vector<FreeLetter> letters_;
};

// Parses the operator-order syntax: whitespace-separated "label(offset)"
// tokens, leftmost outermost, e.g. "a1(-1) a0(-2)". Empty input is the
// empty monomial (vacuum).
FreeMonomial parse_monomial(const Lattice& l, const std::string& text);

// Finitely supported combination of free monomials over the cyclotomic field.
class FreeElement {
public:
    using Terms = std::map<FreeMonomial, Cyclotomic>;

    FreeElement() = default;
    static FreeElement single(FreeMonomial m, Cyclotomic c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add_term(const FreeMonomial& m, const Cyclotomic& c);
    FreeElement& operator+=(const FreeElement& o);
    FreeElement& operator-=(const FreeElement& o);
    FreeElement scaled(const Cyclotomic& c) const;

    friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
    friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }
    friend bool operator==(const FreeElement& a, const FreeElement& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const FreeElement& a, const FreeElement& b) { return !(a == b); }

    std::string str(const Lattice& l) const;

private:
    Terms terms_;
};

// Degree-based vanishing criterion: some prefix of length r has total
// offset exceeding -r. Such monomials evaluate to zero identically.
bool is_zero_by_degree(const FreeMonomial& m);

// Rewrites monomials into the span of canonical monomials using the
// adjacent-pair locality identity. Results are memoized per lattice.
class Straightener {
public:
    explicit Straightener(const Lattice& l, unsigned long jmax = default_jmax());

    // GPSUB_JMAX from the environment, else 64. The cap is a guard only:
    // exceeding it with a live term raises StraighteningCapError.
    static unsigned long default_jmax();

    const Lattice& lattice() const { return l_; }
    const FreeElement& normal_form(const FreeMonomial& m);
    FreeElement straighten(const FreeElement& x);
    size_t cache_size() const { return cache_.size(); }

private:
    FreeElement compute(const FreeMonomial& m);

    const Lattice& l_;
    unsigned long jmax_;
    std::map<FreeMonomial, FreeElement> cache_;
    std::set<FreeMonomial> in_progress_;  // cycle guard for the recursion
};

// Evaluation into the Fock model over the sector shifted by lambda: the
// empty monomial maps to e^lambda and the i-th letter acts by the vertex
// mode m_i + sum_{j<i} N(a_i,a_j) - (a_i|lambda).
FockVector evaluate_fock(const Lattice& l, const FreeMonomial& m, const ChargeVector& lambda);
FockVector evaluate_fock(const Lattice& l, const FreeElement& x, const ChargeVector& lambda);
// Vacuum sector (lambda = 0).
FockVector evaluate_fock(const Lattice& l, const FreeMonomial& m);
FockVector evaluate_fock(const Lattice& l, const FreeElement& x);

}  // namespace gpsub
