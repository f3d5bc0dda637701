#pragma once

#include "mla/modules.hpp"

namespace mla {

// Casimir eigenvalue <lambda, lambda + 2 rho> / 2 of V(lambda).
Rat casimir_scalar(const RootSystemData& R, const Weight& lambda);

// Normal ordered Sugawara energy operator along the module's top axis,
//   L0 = 1/2 sum_j e_j(0) e^j(0) + sum_{d>=1} sum_j e_j(-d) e^j(d),
// applied exactly. The mode sum is finite on every vector because the
// top-axis grading of the module is bounded above. Throws box_overflow
// when a lowering step leaves the truncation window.
SparseVec apply_energy(const TowerModule& m, const SparseVec& v);

// Cutoff regularization: modes restricted to |d| <= cutoff, still normal
// ordered. Agrees with apply_energy once cutoff reaches the top-axis
// depth of v (finite-window stabilization).
SparseVec apply_energy_cutoff(const TowerModule& m, const SparseVec& v, int cutoff);

// Literal cutoff sum 1/2 sum_j sum_{|d| <= cutoff} e_j(-d) e^j(d) without
// normal ordering. Differs from apply_energy_cutoff by the exact central
// scalar dim(g)/2 * level * cutoff(cutoff+1)/2 coming from reordering the
// d < 0 terms.
SparseVec apply_energy_raw(const TowerModule& m, const SparseVec& v, int cutoff);

// Commutator [x(n), L0] v = x(n) L0 v - L0 x(n) v, evaluated exactly.
SparseVec commutator_lhs(const TowerModule& m, Chev x, const MultiIndex& n,
                         const SparseVec& v);

// Closed form of [x(n), L0] v for n' != 0 (n with the top-axis exponent
// zeroed): the windowed double sum over the dual basis, plus half-weight
// boundary terms when the top-axis exponent is even, plus h^vee n_k x(n).
// Throws std::invalid_argument when n' = 0.
SparseVec commutator_rhs(const TowerModule& m, Chev x, const MultiIndex& n,
                         const SparseVec& v);

// Closed form of [x(n), L0] v for n' = 0: n_k (level + h^vee) x(n) v.
// The scalar was fixed against commutator_lhs on single-loop modules; see
// docs/sugawara_classical.md. Throws std::invalid_argument when n' != 0.
SparseVec classical_rhs(const TowerModule& m, Chev x, const MultiIndex& n,
                        const SparseVec& v);

// One grid case of the commutator identity: route to commutator_rhs or
// classical_rhs by n', compare with commutator_lhs.
struct SugawaraCase {
  bool overflow = false;  // some side left the truncation window
  bool classical = false;
  bool ok = false;        // lhs == rhs exactly (meaningful when !overflow)
  SparseVec lhs, rhs;
};
SugawaraCase sugawara_case(const TowerModule& m, Chev x, const MultiIndex& n,
                           const SparseVec& v);

}  // namespace mla
