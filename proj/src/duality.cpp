#include "gpsub/duality.hpp"

#include <algorithm>
#include <map>

#include "gpsub/linalg.hpp"

namespace gpsub {

namespace {

// Partitions per color, parts weakly decreasing; colors ascending. The
// "stop this color" branch comes first so the order is deterministic.
void gen_weight_space(const Lattice& l, const ChargeVector& sector, size_t color, long maxpart,
                      long left, std::vector<HeisLetter>& acc,
                      std::vector<FockBasisElement>& out) {
    if (color == l.rank()) {
        if (left == 0) out.emplace_back(acc, sector);
        return;
    }
    gen_weight_space(l, sector, color + 1, 0, left, acc, out);
    long cap = maxpart == 0 ? left : std::min(maxpart, left);
    for (long p = cap; p >= 1; --p) {
        acc.push_back(HeisLetter{color, -p});
        gen_weight_space(l, sector, color, p, left - p, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<FockBasisElement> weight_space_basis(const Lattice& l, const ChargeVector& sector,
                                                 const Rational& weight) {
    Rational h = weight - l.pairing(sector, sector) / Rational(2);
    if (!h.is_nonneg_integer()) return {};
    std::vector<FockBasisElement> out;
    std::vector<HeisLetter> acc;
    gen_weight_space(l, sector, 0, 0, h.to_long(), acc, out);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Nonnegative modes of e^g acting on the (sector, weight) component: only
// one mode coset acts at all, and modes past the bound land below the
// target sector's minimal weight.
std::vector<Rational> admissible_modes(const Lattice& l, const ChargeVector& g,
                                       const ChargeVector& sector, const Rational& weight) {
    Rational pair_gm = l.pairing(g, sector);
    Rational nmax = weight - Rational(1) - pair_gm - l.pairing(sector, sector) / Rational(2);
    std::vector<Rational> modes;
    for (Rational n = frac_part(-Rational(1) - pair_gm); n <= nmax; n += Rational(1))
        modes.push_back(n);
    return modes;
}

}  // namespace

KernelResult generator_kernel(const Lattice& l, const std::vector<ChargeVector>& generators,
                              const ChargeVector& sector, const Rational& weight) {
    KernelResult res;
    res.space = weight_space_basis(l, sector, weight);
    if (res.space.empty()) return res;
    const CyclotomicField& f = l.field();

    std::vector<std::vector<Cyclotomic>> rows;
    for (const ChargeVector& g : generators) {
        for (const Rational& n : admissible_modes(l, g, sector, weight)) {
            std::vector<FockVector> applied;
            applied.reserve(res.space.size());
            std::map<FockBasisElement, size_t> target;
            for (const FockBasisElement& e : res.space) {
                applied.push_back(vertex_mode(l, g, n, FockVector::single(e, f.one())));
                for (const auto& [te, c] : applied.back().terms()) {
                    (void)c;
                    target.emplace(te, 0);
                }
            }
            if (target.empty()) continue;
            size_t base = rows.size();
            size_t idx = 0;
            for (auto& [te, row] : target) row = base + idx++;
            rows.resize(rows.size() + target.size(),
                        std::vector<Cyclotomic>(res.space.size(), f.zero()));
            for (size_t col = 0; col < applied.size(); ++col)
                for (const auto& [te, c] : applied[col].terms()) rows[target.at(te)][col] = c;
        }
    }

    linalg::Matrix<Cyclotomic> m(rows.size(), res.space.size(), f.zero());
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < res.space.size(); ++c) m.at(r, c) = rows[r][c];
    res.basis = linalg::kernel_basis(std::move(m), f.zero(), f.one());
    res.dimension = res.basis.size();
    return res;
}

KernelResult generator_kernel(const Lattice& l, const ChargeVector& sector,
                              const Rational& weight) {
    return generator_kernel(l, l.dual_basis(), sector, weight);
}

bool annihilated_by_nonneg_modes(const Lattice& l, const std::vector<ChargeVector>& generators,
                                 const FockVector& v) {
    // split into sectors so the mode cosets and bounds are sharp
    std::map<ChargeVector, FockVector> by_sector;
    std::map<ChargeVector, Rational> top_weight;
    for (const auto& [e, c] : v.terms()) {
        by_sector[e.point()].add_term(e, c);
        Rational w = e.weight(l);
        auto it = top_weight.find(e.point());
        if (it == top_weight.end() || it->second < w) top_weight[e.point()] = w;
    }
    for (const auto& [sector, component] : by_sector)
        for (const ChargeVector& g : generators)
            for (const Rational& n : admissible_modes(l, g, sector, top_weight.at(sector)))
                if (!vertex_mode(l, g, n, component).is_zero()) return false;
    return true;
}

namespace {

// Symmetric per-coordinate bound: (x|x)/2 <= cutoff forces
// x_t^2 <= 2*cutoff*(gram^{-1})_tt.
std::vector<long> sector_box(const Lattice& l, const Rational& cutoff) {
    if (!l.positive_definite())
        throw ConstraintError("duality checks need a positive-definite Gram matrix");
    std::vector<long> box(l.rank(), -1);
    if (cutoff < Rational(0)) return box;
    for (size_t t = 0; t < l.rank(); ++t) {
        Rational s = Rational(2) * cutoff * l.dual_basis()[t][t];
        mpz_class root = sqrt(mpz_class(s.num() / s.den() + 1)) + 1;
        box[t] = root.get_si();
    }
    return box;
}

template <class Fn>
void for_each_sector(const std::vector<long>& box, std::vector<long>& sector, size_t t, Fn&& fn) {
    if (t == box.size()) {
        fn(sector);
        return;
    }
    for (long c = -box[t]; c <= box[t]; ++c) {
        sector[t] = c;
        for_each_sector(box, sector, t + 1, fn);
    }
}

ChargeVector to_charge_vector(const std::vector<long>& coords) {
    std::vector<Rational> entries(coords.begin(), coords.end());
    return ChargeVector(std::move(entries));
}

void check_duality_side(const Lattice& l, const Rational& cutoff, const std::string& side,
                        DualityReport& report) {
    const std::vector<ChargeVector>& gens = l.dual_basis();
    ChargeVector zero = ChargeVector::zero(l.rank());
    std::vector<long> box = sector_box(l, cutoff);
    std::vector<long> sector(l.rank(), 0);
    for_each_sector(box, sector, 0, [&](const std::vector<long>& sec) {
        ChargeVector mu = to_charge_vector(sec);
        Rational quad = l.pairing(mu, mu) / Rational(2);
        if (quad > cutoff) return;

        // principal-subspace buckets exist only at nonnegative letter counts
        std::map<Rational, const BasisBucket*> buckets;
        std::vector<BasisBucket> enumerated;
        if (std::all_of(sec.begin(), sec.end(), [](long c) { return c >= 0; })) {
            enumerated = enumerate_basis(l, zero, sec, cutoff);
            for (const BasisBucket& b : enumerated) buckets.emplace(b.weight, &b);
        }

        long steps = (cutoff - quad).floor().get_si();
        for (long n = 0; n <= steps; ++n) {
            Rational w = quad + Rational(n);
            DualityCheck check;
            check.side = side;
            check.charge = sec;
            check.weight = w;
            const std::vector<FreeMonomial> none;
            auto it = buckets.find(w);
            const std::vector<FreeMonomial>& members =
                it == buckets.end() ? none : it->second->members;
            check.dim_basis = members.size();
            check.rank_images = fock_rank(l, zero, members);
            check.contained = true;
            for (const FreeMonomial& m : members)
                check.contained =
                    check.contained && annihilated_by_nonneg_modes(l, gens, evaluate_fock(l, m, zero));
            check.dim_kernel = generator_kernel(l, mu, w).dimension;
            check.pass = check.contained && check.rank_images == check.dim_basis &&
                         check.dim_kernel == check.dim_basis;
            report.all_pass = report.all_pass && check.pass;
            report.checks.push_back(std::move(check));
        }
    });
}

}  // namespace

DualityReport check_duality(const Lattice& l, const Rational& cutoff, bool both_orientations) {
    DualityReport report;
    check_duality_side(l, cutoff, "primary", report);
    if (both_orientations) {
        Lattice dual = l.dual();
        check_duality_side(dual, cutoff, "dual", report);
    }
    return report;
}

CommutantReport check_commutant_corollary(const Lattice& l, const Rational& cutoff) {
    for (size_t i = 0; i < l.rank(); ++i) {
        if (l.gram(i, i) != Rational(2))
            throw ConstraintError("commutant corollary needs a simply-laced Gram (diagonal 2)");
        for (size_t j = 0; j < l.rank(); ++j)
            if (!l.gram(i, j).is_integer())
                throw ConstraintError("commutant corollary needs an integral Gram matrix");
    }
    Lattice dual = l.dual();
    std::vector<ChargeVector> root_gens;
    for (size_t t = 0; t < l.rank(); ++t) root_gens.push_back(ChargeVector::unit(l.rank(), t));

    CommutantReport report;
    ChargeVector dzero = ChargeVector::zero(l.rank());
    std::vector<long> box = sector_box(l, cutoff);
    std::vector<long> sector(l.rank(), 0);
    for_each_sector(box, sector, 0, [&](const std::vector<long>& sec) {
        ChargeVector mu = to_charge_vector(sec);
        Rational quad = l.pairing(mu, mu) / Rational(2);
        if (quad > cutoff) return;

        // letter counts of the dual-basis monomials landing in this sector
        std::vector<long> counts(l.rank(), 0);
        bool in_cone = true;
        for (size_t t = 0; t < l.rank() && in_cone; ++t) {
            Rational c = l.pairing_row(t, mu);  // (A mu)_t
            in_cone = c.is_nonneg_integer();
            if (in_cone) counts[t] = c.to_long();
        }
        std::map<Rational, size_t> wp_dims;
        if (in_cone)
            for (const BasisBucket& b : enumerate_basis(dual, dzero, counts, cutoff))
                wp_dims.emplace(b.weight, b.members.size());

        long steps = (cutoff - quad).floor().get_si();
        for (long n = 0; n <= steps; ++n) {
            Rational w = quad + Rational(n);
            CommutantCheck check;
            check.sector = sec;
            check.weight = w;
            check.dim_kernel = generator_kernel(l, root_gens, mu, w).dimension;
            auto it = wp_dims.find(w);
            check.dim_basis = it == wp_dims.end() ? 0 : it->second;
            check.pass = check.dim_kernel == check.dim_basis;
            report.all_pass = report.all_pass && check.pass;
            report.checks.push_back(std::move(check));
        }
    });
    return report;
}

}  // namespace gpsub
