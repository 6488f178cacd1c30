#pragma once

// Separating elements of a finite dimensional algebra N.  Elements of
// N^o (x) N are stored as plain elements of tensor(N,N); products "in
// N^o (x) N" opposite-embed the first leg, multiply in the standard tensor
// algebra, and embed back.

#include <optional>

#include "wha/linear_map.hpp"
#include "wha/report.hpp"

namespace wha {

// Cached machinery for the square tensor N (x) N of a fixed base.
class TensorSquare {
  public:
    explicit TensorSquare(BlockAlgebra base);

    const BlockAlgebra& base() const { return base_; }
    const BlockAlgebra& ambient() const { return ambient_; }

    // Product of N^o (x) N carried on the plain tensor coordinates.
    AlgElement op_mul(const AlgElement& x, const AlgElement& y) const;
    // Standard-involution adjoint of N^o (x) N (blockwise conj transpose).
    AlgElement op_adjoint(const AlgElement& x) const;

    AlgElement mult_map(const AlgElement& x) const;
    AlgElement embed(const AlgElement& first, const AlgElement& second) const;
    AlgElement one() const { return AlgElement::identity(ambient_); }

  private:
    BlockAlgebra base_;
    BlockAlgebra ambient_;
    LinearMapRep op1_;    // transpose (x) id, the N^o <-> N switch on the first leg
    LinearMapRep multm_;  // multiplication map
};

struct SeparatingElement {
    BlockAlgebra base;
    AlgElement value;  // element of tensor(base, base)
    AlgElement gauge;  // g with E_center(g) = 1 and value = (1 (x) g) e
};

// m(Sum x_i (x) y_i) = Sum x_i y_i, independent of the decomposition.
AlgElement mult_map(const TensorSquare& ts, const AlgElement& x);

// e = Sum_g (1/n_g) e^g_{i,j}^o (x) e^g_{j,i}; the symmetric separating element.
SeparatingElement symmetric_e(const BlockAlgebra& n);
AlgElement symmetric_e_value(const BlockAlgebra& n);

StructureReport is_separating_report(const TensorSquare& ts, const AlgElement& f, double tol = 1e-8);
bool is_separating(const TensorSquare& ts, const AlgElement& f, double tol = 1e-8);

SeparatingElement separating_from_gauge(const TensorSquare& ts, const AlgElement& g, double tol = 1e-8);

// From f = Sum f_i^o (x) f'_i read in the canonical basis, g = Sum f'_i f_i.
AlgElement gauge_from_separating(const TensorSquare& ts, const AlgElement& f, double tol = 1e-8);

// fe = f, ef = e, f^2 = f in N^o (x) N; equivalent to is_separating.
StructureReport check_projection_characterizations(const TensorSquare& ts, const AlgElement& f,
                                                   double tol = 1e-8);

// f is an orthogonal projection for the involution gauged by
// (g^{1/2})^o (x) g^{1/2}; holds exactly when f = (1 (x) g) e.
bool is_orthogonal_in_gauged(const TensorSquare& ts, const AlgElement& f, const AlgElement& g,
                             double tol = 1e-8);

}  // namespace wha
