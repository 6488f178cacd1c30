#pragma once

// Finite dimensional C*-algebras presented as direct sums of full complex
// matrix blocks, together with their elements and the canonical matrix-unit
// basis.  The basis ordering (blocks in input order, row-major units inside a
// block) is a frozen contract: every dense linear-map representation and the
// on-disk format index against it.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wha/errors.hpp"

namespace wha {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct BasisIndex {
    int block;
    int row;
    int col;
};

class BlockAlgebra {
  public:
    BlockAlgebra() = default;
    BlockAlgebra(std::vector<int> blocks, std::string label = "");

    const std::vector<int>& blocks() const { return blocks_; }
    const std::string& label() const { return label_; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    int block_size(int g) const { return blocks_[static_cast<size_t>(g)]; }
    int dim() const { return dim_; }

    // Canonical basis e^g_{i,j}: blocks in order, row-major within a block.
    int basis_offset(int block, int row, int col) const;
    BasisIndex basis_at(int index) const;

    bool same_shape(const BlockAlgebra& other) const { return blocks_ == other.blocks_; }

  private:
    std::vector<int> blocks_;
    std::string label_;
    int dim_ = 0;
    std::vector<int> offsets_;  // cumulative n_g^2
};

class AlgElement {
  public:
    AlgElement() = default;
    AlgElement(BlockAlgebra algebra, std::vector<Matrix> mats);

    static AlgElement zero(const BlockAlgebra& a);
    static AlgElement identity(const BlockAlgebra& a);
    static AlgElement basis_unit(const BlockAlgebra& a, int index);
    static AlgElement basis_unit(const BlockAlgebra& a, int block, int row, int col);
    static AlgElement from_vector(const BlockAlgebra& a, const Vector& v);

    const BlockAlgebra& algebra() const { return algebra_; }
    const std::vector<Matrix>& mats() const { return mats_; }
    const Matrix& mat(int g) const { return mats_[static_cast<size_t>(g)]; }
    Matrix& mat(int g) { return mats_[static_cast<size_t>(g)]; }

    Vector to_vector() const;
    double norm() const;

    AlgElement operator+(const AlgElement& rhs) const;
    AlgElement operator-(const AlgElement& rhs) const;
    AlgElement operator*(const AlgElement& rhs) const;  // blockwise matrix product
    AlgElement operator*(Complex s) const;
    AlgElement operator-() const;

    // Standard involution: blockwise conjugate transpose.
    AlgElement adjoint() const;
    // Blockwise transpose without conjugation (realizes N^o in place).
    AlgElement transpose_blocks() const;

  private:
    void check_same(const AlgElement& rhs) const;

    BlockAlgebra algebra_;
    std::vector<Matrix> mats_;
};

inline AlgElement operator*(Complex s, const AlgElement& x) { return x * s; }

// Frobenius-style residual between two elements, scaled so that an absolute
// tolerance is meaningful regardless of operand size.
double residual(const AlgElement& a, const AlgElement& b);
double residual(const Matrix& a, const Matrix& b);

struct GaugedInvolution {
    BlockAlgebra algebra;
    AlgElement gauge;  // identity encodes the standard involution

    static GaugedInvolution standard(const BlockAlgebra& a);
};

// x^{*_g} = g x^* g^{-1}
AlgElement adjoint(const AlgElement& x, const GaugedInvolution& inv);

AlgElement opposite_embed(const AlgElement& x);

Complex trace_canonical(const AlgElement& x);
AlgElement E_center(const AlgElement& x);

// Spectral helpers. spectrum/sqrt demand (near-)Hermitian input and
// symmetrize before decomposing; invert rejects blocks with tiny singular
// values.
std::vector<double> spectrum(const AlgElement& x, double tol = 1e-9);
bool is_hermitian(const AlgElement& x, double tol = 1e-9);
bool is_positive(const AlgElement& x, double tol = 1e-9);
bool is_strictly_positive(const AlgElement& x, double tol = 1e-9);
AlgElement sqrt_positive(const AlgElement& x, double tol = 1e-9);
AlgElement invert(const AlgElement& x, double tol = 1e-12);

// Eigenvalues of a (possibly non-Hermitian) element, sorted by real part.
// Imaginary parts beyond tol raise NotHermitian.
std::vector<double> real_eigenvalues(const AlgElement& x, double tol = 1e-7);

// Tensor products.  Blocks of A (x) B are indexed by pairs (g,d) in
// lexicographic order with sizes n_g * n_d; elements multiply by Kronecker
// product, so e^g_{i,j} (x) e^d_{k,l} is again a canonical matrix unit.
BlockAlgebra tensor(const BlockAlgebra& a, const BlockAlgebra& b);
AlgElement tensor_elem(const AlgElement& x, const AlgElement& y);

// Decomposition of a canonical basis index of tensor(A,B) into the pair of
// basis indices of A and B whose tensor_elem it equals.
std::pair<int, int> tensor_basis_split(const BlockAlgebra& a, const BlockAlgebra& b, int index);

// The scalars C as a one-block algebra of size 1 (codomain of functionals).
BlockAlgebra scalar_algebra();

}  // namespace wha
