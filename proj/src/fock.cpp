#include "gpsub/fock.hpp"

#include <algorithm>
#include <sstream>

#include "gpsub/error.hpp"

namespace gpsub {

FockBasisElement::FockBasisElement(std::vector<HeisLetter> heis, ChargeVector point)
    : heis_(std::move(heis)), point_(std::move(point)) {
    for (const auto& x : heis_)
        if (x.mode >= 0) throw Error("heisenberg letters must have negative mode");
    std::sort(heis_.begin(), heis_.end());
}

long FockBasisElement::heis_degree() const {
    long d = 0;
    for (const auto& x : heis_) d -= x.mode;
    return d;
}

Rational FockBasisElement::weight(const Lattice& l) const {
    return Rational(heis_degree()) + l.pairing(point_, point_) / Rational(2);
}

FockBasisElement FockBasisElement::with_letter(HeisLetter x) const {
    FockBasisElement r = *this;
    r.heis_.insert(std::upper_bound(r.heis_.begin(), r.heis_.end(), x), x);
    return r;
}

FockBasisElement FockBasisElement::without_letter(size_t pos) const {
    FockBasisElement r = *this;
    r.heis_.erase(r.heis_.begin() + static_cast<long>(pos));
    return r;
}

FockBasisElement FockBasisElement::with_point(ChargeVector mu) const {
    FockBasisElement r = *this;
    r.point_ = std::move(mu);
    return r;
}

std::string FockBasisElement::str() const {
    std::string out;
    for (const auto& x : heis_)
        out += "b[" + std::to_string(x.index) + "](" + std::to_string(x.mode) + ") ";
    return out + "e(" + point_.str() + ")";
}

bool operator<(const FockBasisElement& a, const FockBasisElement& b) {
    if (a.heis_ != b.heis_) return a.heis_ < b.heis_;
    return a.point_ < b.point_;
}

FockBasisElement vacuum(const Lattice& l) {
    return FockBasisElement(ChargeVector::zero(l.rank()));
}

FockVector FockVector::single(FockBasisElement e, Cyclotomic c) {
    FockVector v;
    v.add_term(e, c);
    return v;
}

void FockVector::add_term(const FockBasisElement& e, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FockVector& FockVector::operator+=(const FockVector& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

FockVector FockVector::scaled(const Cyclotomic& c) const {
    FockVector r;
    if (c.is_zero()) return r;
    for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
    return r;
}

std::string FockVector::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ") " + e.str();
    }
    return out;
}

FockVector heis_mode(const Lattice& l, size_t i, long n, const FockVector& v) {
    FockVector out;
    for (const auto& [e, c] : v.terms()) {
        if (n < 0) {
            out.add_term(e.with_letter({i, n}), c);
        } else if (n == 0) {
            out.add_term(e, c * l.pairing_row(i, e.point()));
        } else {
            const auto& letters = e.heis();
            for (size_t pos = 0; pos < letters.size(); ++pos) {
                if (letters[pos].mode != -n) continue;
                Rational pair = l.gram(i, letters[pos].index);
                if (pair.is_zero()) continue;
                out.add_term(e.without_letter(pos), c * (Rational(n) * pair));
            }
        }
    }
    return out;
}

namespace {

// Coefficients of E^-(z) = exp(sum_{m>=1} alpha(-m) z^m / m) as linear
// combinations of creation-letter multisets, computed degree by degree via
// p S_p = sum_{m=1}^p alpha(-m) S_{p-m}.
class EMinusTable {
public:
    EMinusTable(const Lattice& l, const ChargeVector& alpha) : l_(l), alpha_(alpha) {
        tables_.push_back({{{}, Rational(1)}});
    }

    using Layer = std::map<std::vector<HeisLetter>, Rational>;

    const Layer& layer(size_t p) {
        while (tables_.size() <= p) {
            size_t q = tables_.size();
            Layer next;
            for (size_t m = 1; m <= q; ++m) {
                for (const auto& [h, coef] : tables_[q - m]) {
                    for (size_t i = 0; i < l_.rank(); ++i) {
                        if (alpha_[i].is_zero()) continue;
                        HeisLetter x{i, -static_cast<long>(m)};
                        std::vector<HeisLetter> hh = h;
                        hh.insert(std::upper_bound(hh.begin(), hh.end(), x), x);
                        Rational add = alpha_[i] * coef / Rational(static_cast<long>(q));
                        auto [it, ins] = next.emplace(std::move(hh), add);
                        if (!ins) {
                            it->second += add;
                            if (it->second.is_zero()) next.erase(it);
                        }
                    }
                }
            }
            tables_.push_back(std::move(next));
        }
        return tables_[p];
    }

private:
    const Lattice& l_;
    ChargeVector alpha_;
    std::vector<Layer> tables_;
};

}  // namespace

FockVector vertex_mode(const Lattice& l, const ChargeVector& alpha, const Rational& n,
                       const FockVector& v, const ChargeVector* eps_shift) {
    FockVector out;
    if (v.is_zero()) return out;
    EMinusTable eminus(l, alpha);
    for (const auto& [e, c] : v.terms()) {
        const ChargeVector& mu = e.point();
        Rational d_rat = -n - Rational(1) - l.pairing(alpha, mu);
        // The mode acts by zero unless it is aligned with the charge sector.
        if (!d_rat.is_integer()) continue;
        long d = d_rat.to_long();

        // E^+ contributes b(m) -> b(m) - (alpha|b) z^m per creation letter;
        // only letters pairing nontrivially with alpha participate.
        struct Active {
            size_t pos;
            long degree;       // -mode
            Rational pairing;  // (alpha|b_index)
        };
        std::vector<Active> active;
        const auto& letters = e.heis();
        for (size_t pos = 0; pos < letters.size(); ++pos) {
            Rational pr = l.pairing_row(letters[pos].index, alpha);
            if (!pr.is_zero()) active.push_back({pos, -letters[pos].mode, pr});
        }
        if (active.size() > 8 * sizeof(unsigned long long) - 1)
            throw Error("vertex mode expansion too large");

        Rational eps_exp = eps_shift ? l.epsilon_exponent(alpha, mu - *eps_shift)
                                     : l.epsilon_exponent(alpha, mu);
        Cyclotomic base = c * l.field().root_of_unity(eps_exp);
        ChargeVector new_point = mu + alpha;

        for (unsigned long long mask = 0; mask < (1ull << active.size()); ++mask) {
            long sigma = 0;
            Rational factor = 1;
            for (size_t t = 0; t < active.size(); ++t) {
                if (!(mask >> t & 1)) continue;
                sigma += active[t].degree;
                factor *= -active[t].pairing;
            }
            long p = d + sigma;
            if (p < 0) continue;

            // Letters surviving E^+ (those not absorbed into z-powers).
            std::vector<HeisLetter> kept;
            kept.reserve(letters.size());
            {
                size_t ai = 0;
                for (size_t pos = 0; pos < letters.size(); ++pos) {
                    bool absorbed = false;
                    if (ai < active.size() && active[ai].pos == pos) {
                        absorbed = (mask >> ai & 1);
                        ++ai;
                    }
                    if (!absorbed) kept.push_back(letters[pos]);
                }
            }
            for (const auto& [hs, q] : eminus.layer(static_cast<size_t>(p))) {
                std::vector<HeisLetter> merged = kept;
                merged.insert(merged.end(), hs.begin(), hs.end());
                out.add_term(FockBasisElement(std::move(merged), new_point),
                             base * (factor * q));
            }
        }
    }
    return out;
}

FockVector simple_current(const ChargeVector& lambda, const FockVector& v) {
    FockVector out;
    for (const auto& [e, c] : v.terms()) out.add_term(e.with_point(e.point() + lambda), c);
    return out;
}

FockVector translation(const Lattice& l, const FockVector& v) {
    FockVector out;
    for (const auto& [e, c] : v.terms()) {
        const auto& letters = e.heis();
        for (size_t pos = 0; pos < letters.size(); ++pos) {
            HeisLetter moved{letters[pos].index, letters[pos].mode - 1};
            out.add_term(e.without_letter(pos).with_letter(moved),
                         c * Rational(-letters[pos].mode));
        }
        for (size_t i = 0; i < l.rank(); ++i) {
            if (e.point()[i].is_zero()) continue;
            out.add_term(e.with_letter({i, -1}), c * e.point()[i]);
        }
    }
    return out;
}

FockVector extraction_D(const Lattice& l, size_t a, unsigned long p, const FockVector& v) {
    const ChargeVector& dual = l.dual_basis().at(a);
    FockVector cur = v;
    for (unsigned long t = 0; t < p && !cur.is_zero(); ++t)
        cur = simple_current(-dual, vertex_mode(l, dual, Rational(-1), cur));
    return simple_current(-ChargeVector::unit(l.rank(), a), cur);
}

FockVector extraction_X(const Lattice& l, const std::vector<std::pair<size_t, long>>& letters,
                        const FockVector& v) {
    std::vector<unsigned long> exps;
    for (size_t i = 0; i < letters.size(); ++i) {
        long m = letters[i].second;
        long p = (i > 0 && letters[i].first == letters[i - 1].first)
                     ? letters[i - 1].second - m
                     : -m - 1;
        if (p < 0) throw Error("extraction requires canonical letter offsets");
        exps.push_back(static_cast<unsigned long>(p));
    }
    FockVector cur = v;
    for (size_t i = 0; i < letters.size() && !cur.is_zero(); ++i)
        cur = extraction_D(l, letters[i].first, exps[i], cur);
    return cur;
}

PresentationReport check_presentation_relations(const Lattice& l) {
    PresentationReport report;
    const auto& f = l.field();
    auto record = [&](const std::string& name, const FockVector& lhs, const FockVector& rhs) {
        bool pass = lhs == rhs;
        report.checks.push_back(
            {name, pass, pass ? "" : lhs.str() + " != " + rhs.str()});
        report.all_pass = report.all_pass && pass;
    };

    FockVector vac = FockVector::single(vacuum(l), f.one());
    size_t r = l.rank();
    for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < r; ++j) {
            FockVector bj = heis_mode(l, j, -1, vac);  // the generator b_j(-1)|0>
            std::string ai = l.labels()[i], aj = l.labels()[j];
            record(ai + "(0)" + aj + "~ = 0", heis_mode(l, i, 0, bj), FockVector());
            record(ai + "(1)" + aj + "~ = (" + ai + "|" + aj + ")|0>", heis_mode(l, i, 1, bj),
                   vac.scaled(f.from_rational(l.gram(i, j))));
            FockVector vj = FockVector::single(
                FockBasisElement(ChargeVector::unit(r, j)), f.one());
            record(ai + "(0)v[" + aj + "] = (" + ai + "|" + aj + ")v[" + aj + "]",
                   heis_mode(l, i, 0, vj), vj.scaled(f.from_rational(l.gram(i, j))));
        }
        ChargeVector ei = ChargeVector::unit(r, i);
        std::string ai = l.labels()[i];
        FockVector vi = FockVector::single(FockBasisElement(ei), f.one());
        FockVector vmi = FockVector::single(FockBasisElement(-ei), f.one());
        record("v[" + ai + "]((" + ai + "|" + ai + ")-1)v[-" + ai + "] = eps(" + ai + ",-" + ai +
                   ")|0>",
               vertex_mode(l, ei, l.gram(i, i) - Rational(1), vmi),
               vac.scaled(l.epsilon(ei, -ei)));
        record("T v[" + ai + "] = " + ai + "(-1)v[" + ai + "]", translation(l, vi),
               heis_mode(l, i, -1, vi));
    }
    return report;
}

}  // namespace gpsub
