#pragma once

#include <string>
#include <vector>

#include "gpsub/combinatorics.hpp"
#include "gpsub/fock.hpp"
#include "gpsub/lattice.hpp"

namespace gpsub {

// Monomial basis of the (sector, weight) component of the Fock space:
// the point e^sector dressed with Heisenberg letters of total degree
// weight - (sector|sector)/2. Empty when that degree is not a nonnegative
// integer. Deterministic order.
std::vector<FockBasisElement> weight_space_basis(const Lattice& l, const ChargeVector& sector,
                                                 const Rational& weight);

struct KernelResult {
    std::vector<FockBasisElement> space;         // source weight-space basis
    std::vector<std::vector<Cyclotomic>> basis;  // kernel vectors over `space`
    size_t dimension = 0;
};

// Joint kernel, on one weight space, of all nonnegative modes of the given
// generator vertex operators. Mode ranges are finite: on a fixed sector
// only one mode coset acts, and weights bound the modes above.
KernelResult generator_kernel(const Lattice& l, const std::vector<ChargeVector>& generators,
                              const ChargeVector& sector, const Rational& weight);

// Default form: generators are the dual basis vectors (throws
// SingularGramError via dual_basis() when the Gram matrix is singular).
KernelResult generator_kernel(const Lattice& l, const ChargeVector& sector,
                              const Rational& weight);

// True iff every nonnegative admissible generator mode annihilates v.
bool annihilated_by_nonneg_modes(const Lattice& l, const std::vector<ChargeVector>& generators,
                                 const FockVector& v);

struct DualityCheck {
    std::string side;  // "primary" or "dual"
    std::vector<long> charge;
    Rational weight;
    size_t dim_basis = 0;    // enumerated basis monomials in the bucket
    size_t rank_images = 0;  // rank of their Fock images
    size_t dim_kernel = 0;   // joint kernel of the dual generators' modes
    bool contained = false;  // every image killed by the tested modes
    bool pass = false;
};

struct DualityReport {
    std::vector<DualityCheck> checks;
    bool all_pass = true;
};

// Per bucket up to the cutoff: rank of the principal-subspace images is a
// lower bound for the invariant subspace (after the containment check) and
// the generator kernel is an upper bound, so rank == kernel dimension
// certifies equality throughout. Run on the lattice itself and, when
// `both_orientations`, on its dual.
DualityReport check_duality(const Lattice& l, const Rational& cutoff,
                            bool both_orientations = true);

struct CommutantCheck {
    std::vector<long> sector;  // charge in root-lattice coordinates
    Rational weight;
    size_t dim_kernel = 0;  // commutant dimension in the sector
    size_t dim_basis = 0;   // weight-lattice basis monomials landing in the sector
    bool pass = false;
};

struct CommutantReport {
    std::vector<CommutantCheck> checks;
    bool all_pass = true;
};

// Commutant identification for a simply-laced root lattice Q with weight
// lattice P: per (Q-charge sector, weight <= cutoff), the joint kernel of
// the nonnegative modes of Q's generators inside the full lattice Fock
// space is compared against the number of P-basis monomials whose charge
// lies in Q. Requires an integral positive-definite Gram matrix with
// diagonal 2.
CommutantReport check_commutant_corollary(const Lattice& l, const Rational& cutoff);

}  // namespace gpsub
