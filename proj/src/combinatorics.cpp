#include "gpsub/combinatorics.hpp"

#include <algorithm>
#include <sstream>

#include "gpsub/linalg.hpp"

namespace gpsub {

std::vector<long long> partitions_at_most(long nmax, long k) {
    std::vector<long long> row(static_cast<size_t>(nmax) + 1, 0);
    row[0] = 1;  // k = 0: only the empty partition
    for (long parts = 1; parts <= k; ++parts) {
        // row becomes p(., parts) in place: p(n,k) = p(n,k-1) + p(n-k,k)
        for (long n = parts; n <= nmax; ++n) row[n] += row[n - parts];
    }
    return row;
}

void QSeries::add(std::vector<long> charge, Rational weight, long long count) {
    if (count == 0 || weight > cutoff_) return;
    QKey key{std::move(weight), std::move(charge)};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), count);
        return;
    }
    it->second += count;
    if (it->second == 0) terms_.erase(it);
}

long long QSeries::coefficient(const std::vector<long>& charge, const Rational& weight) const {
    auto it = terms_.find(QKey{weight, charge});
    return it == terms_.end() ? 0 : it->second;
}

std::map<Rational, long long> QSeries::weight_totals() const {
    std::map<Rational, long long> out;
    for (const auto& [key, count] : terms_) out[key.weight] += count;
    return out;
}

std::string QSeries::str(const std::vector<std::string>& labels) const {
    std::ostringstream os;
    for (const auto& [key, count] : terms_) {
        os << count << " q^{" << key.weight.str() << "}";
        for (size_t t = 0; t < key.charge.size(); ++t)
            if (key.charge[t] != 0) os << ' ' << labels[t] << '^' << key.charge[t];
        os << '\n';
    }
    return os.str();
}

namespace {

ChargeVector shifted_charge(const Lattice& l, const std::vector<long>& charge,
                            const ChargeVector& lambda) {
    ChargeVector v = lambda;
    for (size_t t = 0; t < charge.size(); ++t)
        for (long c = 0; c < charge[t]; ++c) v = v + ChargeVector::unit(l.rank(), t);
    return v;
}

// Offsets of one equal-letter run: weakly increasing gap sequences p with
// sum <= budget, letters (index, -1-p) appended inner-to-outer.
void emit_runs(const Lattice& l, const std::vector<long>& charge, size_t t, long budget,
               std::vector<FreeLetter>& acc, std::vector<std::vector<FreeMonomial>>& by_extra) {
    while (t < charge.size() && charge[t] == 0) ++t;
    if (t == charge.size()) {
        size_t used = 0;
        for (const auto& x : acc) used += static_cast<size_t>(-x.offset - 1);
        by_extra[used].push_back(FreeMonomial(acc));
        return;
    }
    // gaps p_1 <= ... <= p_{i_t}, generated as nested loops via recursion
    std::vector<long> gaps(static_cast<size_t>(charge[t]), 0);
    auto gen = [&](auto&& self, size_t pos, long prev, long left) -> void {
        if (pos == gaps.size()) {
            size_t base = acc.size();
            for (long g : gaps) acc.push_back(FreeLetter{t, -1 - g});
            emit_runs(l, charge, t + 1, left, acc, by_extra);
            acc.resize(base);
            return;
        }
        // every later gap is >= g, so g*(remaining) <= left prunes exactly
        for (long g = prev; g * static_cast<long>(gaps.size() - pos) <= left; ++g) {
            gaps[pos] = g;
            self(self, pos + 1, g, left - g);
        }
    };
    gen(gen, 0, 0, budget);
}

}  // namespace

std::vector<BasisBucket> enumerate_basis(const Lattice& l, const ChargeVector& lambda,
                                         const std::vector<long>& charge,
                                         const Rational& max_weight) {
    if (charge.size() != l.rank())
        throw ConstraintError("charge vector length does not match lattice rank");
    for (long c : charge)
        if (c < 0) throw ConstraintError("letter counts must be nonnegative");

    ChargeVector total = shifted_charge(l, charge, lambda);
    Rational base = l.pairing(total, total) / Rational(2);
    Rational budget = max_weight - base;
    if (budget < Rational(0)) return {};
    long extra_max = budget.floor().get_si();

    std::vector<std::vector<FreeMonomial>> by_extra(static_cast<size_t>(extra_max) + 1);
    std::vector<FreeLetter> acc;
    emit_runs(l, charge, 0, extra_max, acc, by_extra);

    std::vector<BasisBucket> out;
    for (long n = 0; n <= extra_max; ++n) {
        auto& members = by_extra[static_cast<size_t>(n)];
        if (members.empty()) continue;
        std::sort(members.begin(), members.end());
        out.push_back(BasisBucket{charge, base + Rational(n), std::move(members)});
    }
    return out;
}

std::vector<long> character_charge_box(const Lattice& l, const ChargeVector& lambda,
                                       const Rational& cutoff) {
    if (!l.positive_definite())
        throw ConstraintError(
            "Gram matrix is not positive definite: an explicit charge box is required");
    std::vector<long> box(l.rank(), 0);
    if (cutoff < Rational(0)) return std::vector<long>(l.rank(), -1);
    for (size_t t = 0; t < l.rank(); ++t) {
        // (x|x)/2 <= D forces x_t^2 <= 2 D (A^{-1})_tt; i_t = x_t - lambda_t
        Rational s = Rational(2) * cutoff * l.dual_basis()[t][t];
        mpz_class ceil_s = s.num() / s.den() + 1;
        mpz_class root = sqrt(ceil_s) + 1 - lambda[t].floor();
        box[t] = std::max(-1L, root.get_si());
    }
    return box;
}

namespace {

template <class Fn>
void for_each_charge(const std::vector<long>& box, std::vector<long>& charge, size_t t, Fn&& fn) {
    if (t == box.size()) {
        fn(charge);
        return;
    }
    for (long c = 0; c <= box[t]; ++c) {
        charge[t] = c;
        for_each_charge(box, charge, t + 1, fn);
    }
}

}  // namespace

QSeries character(const Lattice& l, const ChargeVector& lambda, const Rational& cutoff,
                  const std::optional<std::vector<long>>& charge_box) {
    std::vector<long> box = charge_box ? *charge_box : character_charge_box(l, lambda, cutoff);
    if (box.size() != l.rank()) throw ConstraintError("charge box length does not match rank");

    QSeries qs(cutoff);
    std::vector<long> charge(l.rank(), 0);
    for_each_charge(box, charge, 0, [&](const std::vector<long>& i) {
        ChargeVector total = shifted_charge(l, i, lambda);
        Rational quad = l.pairing(total, total) / Rational(2);
        if (quad > cutoff) return;
        long extra_max = (cutoff - quad).floor().get_si();
        std::vector<long long> conv(static_cast<size_t>(extra_max) + 1, 0);
        conv[0] = 1;
        for (size_t t = 0; t < l.rank(); ++t) {
            if (i[t] == 0) continue;
            std::vector<long long> parts = partitions_at_most(extra_max, i[t]);
            std::vector<long long> next(conv.size(), 0);
            for (size_t a = 0; a < conv.size(); ++a) {
                if (conv[a] == 0) continue;
                for (size_t b = 0; a + b < next.size(); ++b) next[a + b] += conv[a] * parts[b];
            }
            conv = std::move(next);
        }
        for (long n = 0; n <= extra_max; ++n)
            qs.add(i, quad + Rational(n), conv[static_cast<size_t>(n)]);
    });
    return qs;
}

size_t fock_rank(const Lattice& l, const ChargeVector& lambda,
                 const std::vector<FreeMonomial>& monomials) {
    if (monomials.empty()) return 0;
    std::vector<FockVector> images;
    std::map<FockBasisElement, size_t> columns;
    for (const FreeMonomial& m : monomials) {
        images.push_back(evaluate_fock(l, m, lambda));
        for (const auto& [e, c] : images.back().terms()) {
            (void)c;
            columns.emplace(e, 0);
        }
    }
    size_t col = 0;
    for (auto& [e, idx] : columns) idx = col++;
    linalg::Matrix<Cyclotomic> mat(images.size(), std::max<size_t>(columns.size(), 1),
                                   l.field().zero());
    for (size_t r = 0; r < images.size(); ++r)
        for (const auto& [e, c] : images[r].terms()) mat.at(r, columns.at(e)) = c;
    return linalg::rank(std::move(mat));
}

CharacterReport verify_character(const Lattice& l, const ChargeVector& lambda,
                                 const Rational& cutoff,
                                 const std::optional<std::vector<long>>& charge_box,
                                 bool with_fock_rank) {
    std::vector<long> box = charge_box ? *charge_box : character_charge_box(l, lambda, cutoff);
    QSeries qs = character(l, lambda, cutoff, box);

    CharacterReport report;
    std::vector<long> charge(l.rank(), 0);
    for_each_charge(box, charge, 0, [&](const std::vector<long>& i) {
        std::map<Rational, const BasisBucket*> buckets;
        std::vector<BasisBucket> enumerated = enumerate_basis(l, lambda, i, cutoff);
        for (const BasisBucket& b : enumerated) buckets.emplace(b.weight, &b);

        std::map<Rational, long long> keys;  // weight -> formula coefficient
        for (const auto& [key, count] : qs.terms())
            if (key.charge == i) keys[key.weight] = count;
        for (const auto& [w, b] : buckets) keys.emplace(w, 0);

        for (const auto& [w, formula] : keys) {
            CharacterCheck check;
            check.charge = i;
            check.weight = w;
            check.formula = formula;
            auto it = buckets.find(w);
            const std::vector<FreeMonomial> none;
            const std::vector<FreeMonomial>& members = it == buckets.end() ? none : it->second->members;
            check.enumerated = static_cast<long long>(members.size());
            check.fock_rank = with_fock_rank ? static_cast<long long>(fock_rank(l, lambda, members))
                                             : check.enumerated;
            check.pass = check.formula == check.enumerated && check.enumerated == check.fock_rank;
            report.all_pass = report.all_pass && check.pass;
            report.checks.push_back(std::move(check));
        }
    });
    return report;
}

}  // namespace gpsub
