#pragma once

// Dense representations of linear maps between block algebras, over the
// canonical matrix-unit bases.  Column (g,i,j) of the matrix is the image of
// e^g_{i,j}, vectorized in the codomain basis.

#include <functional>

#include "wha/block_algebra.hpp"

namespace wha {

class LinearMapRep {
  public:
    LinearMapRep() = default;
    LinearMapRep(BlockAlgebra domain, BlockAlgebra codomain, Matrix matrix);

    static LinearMapRep identity(const BlockAlgebra& a);
    static LinearMapRep zero(const BlockAlgebra& dom, const BlockAlgebra& cod);
    // Build columnwise from the images of the canonical basis units.
    static LinearMapRep from_function(const BlockAlgebra& dom, const BlockAlgebra& cod,
                                      const std::function<AlgElement(const AlgElement&)>& f);

    // Left/right multiplication operators x -> z*x and x -> x*z.
    static LinearMapRep left_mult(const AlgElement& z);
    static LinearMapRep right_mult(const AlgElement& z);

    const BlockAlgebra& domain() const { return domain_; }
    const BlockAlgebra& codomain() const { return codomain_; }
    const Matrix& matrix() const { return matrix_; }
    Matrix& matrix() { return matrix_; }

    AlgElement apply(const AlgElement& x) const;
    // this o other (apply other first).
    LinearMapRep compose(const LinearMapRep& other) const;
    LinearMapRep operator+(const LinearMapRep& rhs) const;
    LinearMapRep operator-(const LinearMapRep& rhs) const;
    LinearMapRep scaled(Complex s) const;
    LinearMapRep inverse(double tol = 1e-12) const;

    double distance(const LinearMapRep& rhs) const;

  private:
    BlockAlgebra domain_;
    BlockAlgebra codomain_;
    Matrix matrix_;
};

// (S (x) T): tensor(dom S, dom T) -> tensor(cod S, cod T).
LinearMapRep tensor_map(const LinearMapRep& s, const LinearMapRep& t);

// x (x) y -> y (x) x on tensor(a, b) -> tensor(b, a).
LinearMapRep flip(const BlockAlgebra& a, const BlockAlgebra& b);

// Blockwise transpose as a linear map (the opposite-algebra embedding).
LinearMapRep transpose_map(const BlockAlgebra& a);

// Multiplication map tensor(a,a) -> a, x (x) y -> xy.
LinearMapRep mult_map_rep(const BlockAlgebra& a);

// Functionals A -> C as maps into scalar_algebra().
LinearMapRep functional_from_row(const BlockAlgebra& dom, const Eigen::RowVectorXcd& row);
Complex functional_value(const LinearMapRep& f, const AlgElement& x);

// Canonical basis index of tensor(a,b) whose unit equals
// tensor_elem(basis a_i, basis b_i).
int tensor_pair_index(const BlockAlgebra& a, const BlockAlgebra& b, int ai, int bi);

// Apply a map to one leg of a vector over tensor(X, other) (resp.
// tensor(other, X)) without materializing the tensor-product matrix; used
// where the triple tensor power would be too large to store densely.
Vector apply_first_leg(const LinearMapRep& s, const BlockAlgebra& other, const Vector& v);
Vector apply_second_leg(const LinearMapRep& s, const BlockAlgebra& other, const Vector& v);

// Orthonormal basis (columns) of the null space of m, rank decided at
// sigma_max * tol.
Matrix null_space(const Matrix& m, double tol = 1e-10);

// Least-squares solve with a residual report: returns x minimizing |m x - b|.
Vector least_squares(const Matrix& m, const Vector& b, double* residual_out = nullptr);

}  // namespace wha
