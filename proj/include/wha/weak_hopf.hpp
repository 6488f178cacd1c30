#pragma once

// The weak Hopf C*-algebra aggregate: axiom checking, Cartan subalgebras,
// target/source counits, Haar projection and Haar measure, weak Kac flags.

#include <cstdint>

#include "wha/recover.hpp"
#include "wha/report.hpp"
#include "wha/separating.hpp"

namespace wha {

struct WeakHopf {
    BlockAlgebra A;
    AlgElement gauge;     // identity for standard structures, k for deformed ones
    LinearMapRep delta;   // A -> tensor(A, A)
    LinearMapRep kappa;   // A -> A
    LinearMapRep eps;     // A -> C (scalar_algebra codomain)

    bool has_standard_gauge(double tol = 1e-12) const;
    // The structure's own involution (gauged when gauge != 1).
    AlgElement star(const AlgElement& x) const;
    AlgElement delta_one() const { return delta.apply(AlgElement::identity(A)); }
};

// Forward/backward maps of the isomorphism Phi(x) = g^{-1/2} x g^{1/2} that
// carries the gauged involution to the standard one.
struct IsoPair {
    LinearMapRep forward;
    LinearMapRep backward;
};
IsoPair standardize(const GaugedInvolution& inv, double tol = 1e-9);

// Transport of a gauged structure to standard coordinates (identity transport
// when the gauge already is 1).
struct StandardizedWha {
    WeakHopf w;
    IsoPair iso;
};
StandardizedWha standardize_wha(const WeakHopf& w, double tol = 1e-9);

// Full Def-2.1 style residual suite.  For gauged structures every
// *-dependent residual is evaluated in standardized coordinates.
StructureReport check_axioms(const WeakHopf& w, double tol = 1e-8);

LinearMapRep counit_target(const WeakHopf& w);  // m(i (x) kappa) Delta
LinearMapRep counit_source(const WeakHopf& w);  // m(kappa (x) i) Delta

struct CartanData {
    enum class Which { Target, Source };
    Which which;
    std::vector<AlgElement> basis;  // ambient basis of the subspace
    RecoveredStructure recovered;   // matrix units for the subalgebra
};

CartanData cartan_target(const WeakHopf& w, uint64_t seed = 1, double tol = 1e-8);
CartanData cartan_source(const WeakHopf& w, uint64_t seed = 1, double tol = 1e-8);

// Orthonormal basis of the subspace cut out by the Cartan conditions, as
// columns over the canonical basis (no structure recovery).
Matrix cartan_subspace(const WeakHopf& w, CartanData::Which which, double tol = 1e-8);

AlgElement haar_projection(const WeakHopf& w, double tol = 1e-8);
LinearMapRep haar_measure(const WeakHopf& w, double tol = 1e-8);

struct WeakKacFlags {
    bool kappa_involutive;
    bool phi_tracial;
};
WeakKacFlags is_weak_kac(const WeakHopf& w, double tol = 1e-8);

LinearMapRep antipode_inverse(const WeakHopf& w, double tol = 1e-10);

// (kappa (x) i) Delta(1) expressed in the recovered target-Cartan coordinates
// and tested there as a separating element.
StructureReport check_f_separating(const WeakHopf& w, uint64_t seed = 1, double tol = 1e-8);

// f = (kappa (x) i) Delta(1) in recovered A_t (x) A_t coordinates.
AlgElement f_in_cartan_coords(const WeakHopf& w, const CartanData& cartan, double tol = 1e-8);

}  // namespace wha
