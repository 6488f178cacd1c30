#pragma once

// Generators of concrete C*-quantum groupoids used as fixtures.  Every
// generator is a postcondition-checked constructor: the output must pass the
// axiom suite or it does not ship.

#include "wha/weak_hopf.hpp"

namespace wha {

struct FiniteGroupoid {
    struct Arrow {
        int src;
        int tgt;
    };

    int num_objects = 0;
    std::vector<Arrow> arrows;
    std::vector<std::vector<int>> compose;  // compose[h][k] = h.k when s(h)=t(k), else -1
    std::vector<int> inverse;
    std::vector<int> identity_of;           // identity arrow per object

    int num_arrows() const { return static_cast<int>(arrows.size()); }
    bool is_identity(int a) const;
    void validate() const;  // exhaustive axiom check, throws InvalidGroupoid

    static FiniteGroupoid discrete(int n);      // n objects, identities only
    static FiniteGroupoid pair_groupoid(int n); // arrows (i <- j) on n objects
    static FiniteGroupoid cyclic_group(int n);  // Z/n as a one-object groupoid
};

// A = M_n, Delta(e_ij) = e_ij (x) e_ij, kappa(e_ij) = e_ji, eps(e_ij) = 1.
WeakHopf pair_groupoid_wha(int n);

// A = C^arrows, Delta(d_g) = Sum_{hk=g} d_h (x) d_k, kappa(d_g) = d_{g^-1},
// eps(d_g) = [g is an identity].
WeakHopf function_algebra_wha(const FiniteGroupoid& g);

// A = B^o (x) B with B^o realized by blockwise transpose: the basic quantum
// groupoid over the (possibly nonabelian) base B.
WeakHopf op_tensor_wha(const BlockAlgebra& b);

}  // namespace wha
