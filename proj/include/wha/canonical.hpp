#pragma once

// The canonical base element q, admissible deformation parameters, the
// antipode-rescaling deformation and its spectrum invariant.

#include "wha/weak_hopf.hpp"

namespace wha {

struct CanonicalElement {
    AlgElement q;                  // in ambient A, supported in A_t
    AlgElement q_t;                // coordinates in the recovered A_t structure
    CartanData base;               // the recovery it is expressed in
    std::vector<double> spectrum;  // sorted eigenvalue multiset of q_t
};

// Computes q by two independent routes (the gauge read off the separating
// element, and a direct linear solve of f = (1 (x) q) e) and cross-checks
// them; verifies positivity, invertibility, kappa^2(q) = q, E_Z(q) = 1 and
// the Delta(1) expansion before returning.
CanonicalElement canonical_element(const WeakHopf& w, uint64_t seed = 1, double tol = 1e-8);

// kappa^2(x) = q^{-1} kappa(q) x q kappa(q^{-1}) on the subalgebra generated
// by A_t and A_s (multiplicative closure of the recovered bases).
StructureReport check_kappa_squared_inner(const WeakHopf& w, const AlgElement& q,
                                          uint64_t seed = 1, double tol = 1e-8);

struct AdmissibleK {
    AlgElement k;                          // in ambient A, supported in A_t
    std::vector<double> spectrum_kinv_q;   // sorted spectrum of k^{-1} q
};

bool is_admissible(const WeakHopf& w, const AlgElement& k, double tol = 1e-8);

// Draws k block-by-block in an eigenbasis of q: random positive weights r_i
// with sum n_g, k_i = q_i / r_i.  Raises AbelianBaseOnlyTrivial when the base
// is abelian (then k = q is the only admissible element).
AdmissibleK sample_admissible(const WeakHopf& w, uint64_t seed, double tol = 1e-8);

// Theorem-style rescaling: a^{*_k} = k a^* k^{-1}, Delta_k = Delta(.)(1 (x) k^{-1}),
// kappa_k = k kappa(.) k^{-1}, eps_k = eps(. k).  With verify=true the full
// axiom suite, Cartan preservation and the canonical-element identity are
// checked before returning.
WeakHopf deform(const WeakHopf& w, const AlgElement& k, double tol = 1e-8, bool verify = true);

// deform with k = q; makes the antipode involutive on the base.
WeakHopf deform_to_involutive_base(const WeakHopf& w, double tol = 1e-8);

// Sorted eigenvalue multiset of the canonical element: an invariant of the
// isomorphism class, distinct multisets certify non-isomorphism.
std::vector<double> spectrum_invariant(const WeakHopf& w, uint64_t seed = 1, double tol = 1e-8);

// Largest principal-angle sine between two subspaces given by orthonormal
// column bases; infinity when the dimensions differ.
double subspace_gap(const Matrix& q1, const Matrix& q2);

}  // namespace wha
