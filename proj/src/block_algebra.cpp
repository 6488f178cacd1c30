#include "wha/block_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace wha {

BlockAlgebra::BlockAlgebra(std::vector<int> blocks, std::string label)
    : blocks_(std::move(blocks)), label_(std::move(label)) {
    if (blocks_.empty()) throw ShapeMismatch("BlockAlgebra: block list must be nonempty");
    offsets_.reserve(blocks_.size());
    for (int n : blocks_) {
        if (n < 1) throw ShapeMismatch("BlockAlgebra: block sizes must be >= 1");
        offsets_.push_back(dim_);
        dim_ += n * n;
    }
}

int BlockAlgebra::basis_offset(int block, int row, int col) const {
    const int n = blocks_[static_cast<size_t>(block)];
    return offsets_[static_cast<size_t>(block)] + row * n + col;
}

BasisIndex BlockAlgebra::basis_at(int index) const {
    for (int g = num_blocks() - 1; g >= 0; --g) {
        if (index >= offsets_[static_cast<size_t>(g)]) {
            const int n = blocks_[static_cast<size_t>(g)];
            const int local = index - offsets_[static_cast<size_t>(g)];
            return {g, local / n, local % n};
        }
    }
    throw ShapeMismatch("BlockAlgebra: basis index out of range");
}

AlgElement::AlgElement(BlockAlgebra algebra, std::vector<Matrix> mats)
    : algebra_(std::move(algebra)), mats_(std::move(mats)) {
    if (static_cast<int>(mats_.size()) != algebra_.num_blocks())
        throw ShapeMismatch("AlgElement: block count mismatch");
    for (int g = 0; g < algebra_.num_blocks(); ++g) {
        const int n = algebra_.block_size(g);
        if (mats_[static_cast<size_t>(g)].rows() != n || mats_[static_cast<size_t>(g)].cols() != n)
            throw ShapeMismatch("AlgElement: block shape mismatch");
    }
}

AlgElement AlgElement::zero(const BlockAlgebra& a) {
    std::vector<Matrix> mats;
    mats.reserve(static_cast<size_t>(a.num_blocks()));
    for (int g = 0; g < a.num_blocks(); ++g)
        mats.push_back(Matrix::Zero(a.block_size(g), a.block_size(g)));
    return AlgElement(a, std::move(mats));
}

AlgElement AlgElement::identity(const BlockAlgebra& a) {
    std::vector<Matrix> mats;
    mats.reserve(static_cast<size_t>(a.num_blocks()));
    for (int g = 0; g < a.num_blocks(); ++g)
        mats.push_back(Matrix::Identity(a.block_size(g), a.block_size(g)));
    return AlgElement(a, std::move(mats));
}

AlgElement AlgElement::basis_unit(const BlockAlgebra& a, int index) {
    const BasisIndex b = a.basis_at(index);
    return basis_unit(a, b.block, b.row, b.col);
}

AlgElement AlgElement::basis_unit(const BlockAlgebra& a, int block, int row, int col) {
    AlgElement x = zero(a);
    x.mat(block)(row, col) = 1.0;
    return x;
}

AlgElement AlgElement::from_vector(const BlockAlgebra& a, const Vector& v) {
    if (v.size() != a.dim()) throw ShapeMismatch("from_vector: length mismatch");
    AlgElement x = zero(a);
    int off = 0;
    for (int g = 0; g < a.num_blocks(); ++g) {
        const int n = a.block_size(g);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) x.mat(g)(i, j) = v(off + i * n + j);
        off += n * n;
    }
    return x;
}

Vector AlgElement::to_vector() const {
    Vector v(algebra_.dim());
    int off = 0;
    for (int g = 0; g < algebra_.num_blocks(); ++g) {
        const int n = algebra_.block_size(g);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v(off + i * n + j) = mat(g)(i, j);
        off += n * n;
    }
    return v;
}

double AlgElement::norm() const {
    double s = 0.0;
    for (const auto& m : mats_) s += m.squaredNorm();
    return std::sqrt(s);
}

void AlgElement::check_same(const AlgElement& rhs) const {
    if (!algebra_.same_shape(rhs.algebra_))
        throw ShapeMismatch("AlgElement: operands live in different algebras");
}

AlgElement AlgElement::operator+(const AlgElement& rhs) const {
    check_same(rhs);
    AlgElement out = *this;
    for (size_t g = 0; g < mats_.size(); ++g) out.mats_[g] += rhs.mats_[g];
    return out;
}

AlgElement AlgElement::operator-(const AlgElement& rhs) const {
    check_same(rhs);
    AlgElement out = *this;
    for (size_t g = 0; g < mats_.size(); ++g) out.mats_[g] -= rhs.mats_[g];
    return out;
}

AlgElement AlgElement::operator*(const AlgElement& rhs) const {
    check_same(rhs);
    AlgElement out = *this;
    for (size_t g = 0; g < mats_.size(); ++g) out.mats_[g] = mats_[g] * rhs.mats_[g];
    return out;
}

AlgElement AlgElement::operator*(Complex s) const {
    AlgElement out = *this;
    for (auto& m : out.mats_) m *= s;
    return out;
}

AlgElement AlgElement::operator-() const { return *this * Complex(-1.0, 0.0); }

AlgElement AlgElement::adjoint() const {
    AlgElement out = *this;
    for (auto& m : out.mats_) m = m.adjoint().eval();
    return out;
}

AlgElement AlgElement::transpose_blocks() const {
    AlgElement out = *this;
    for (auto& m : out.mats_) m = m.transpose().eval();
    return out;
}

double residual(const AlgElement& a, const AlgElement& b) {
    const double scale = std::max({1.0, a.norm(), b.norm()});
    return (a - b).norm() / scale;
}

double residual(const Matrix& a, const Matrix& b) {
    const double scale = std::max({1.0, a.norm(), b.norm()});
    return (a - b).norm() / scale;
}

GaugedInvolution GaugedInvolution::standard(const BlockAlgebra& a) {
    return {a, AlgElement::identity(a)};
}

AlgElement adjoint(const AlgElement& x, const GaugedInvolution& inv) {
    if (!x.algebra().same_shape(inv.algebra))
        throw ShapeMismatch("adjoint: element not in the involution's algebra");
    return inv.gauge * x.adjoint() * invert(inv.gauge);
}

AlgElement opposite_embed(const AlgElement& x) { return x.transpose_blocks(); }

Complex trace_canonical(const AlgElement& x) {
    Complex t = 0.0;
    for (const auto& m : x.mats()) t += m.trace();
    return t;
}

AlgElement E_center(const AlgElement& x) {
    AlgElement out = AlgElement::zero(x.algebra());
    for (int g = 0; g < x.algebra().num_blocks(); ++g) {
        const int n = x.algebra().block_size(g);
        out.mat(g) = (x.mat(g).trace() / static_cast<double>(n)) *
                     Matrix::Identity(n, n);
    }
    return out;
}

bool is_hermitian(const AlgElement& x, double tol) {
    return residual(x, x.adjoint()) <= tol;
}

namespace {

// Symmetrize near-Hermitian input; reject the rest.
AlgElement require_hermitian(const AlgElement& x, double tol) {
    if (!is_hermitian(x, tol)) throw NotHermitian("element is not Hermitian within tolerance");
    AlgElement h = x;
    for (int g = 0; g < h.algebra().num_blocks(); ++g)
        h.mat(g) = (0.5 * (h.mat(g) + h.mat(g).adjoint().eval())).eval();
    return h;
}

}  // namespace

std::vector<double> spectrum(const AlgElement& x, double tol) {
    AlgElement h = require_hermitian(x, tol);
    std::vector<double> eig;
    eig.reserve(static_cast<size_t>(x.algebra().dim()));
    for (const auto& m : h.mats()) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(m);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            eig.push_back(es.eigenvalues()(i));
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

bool is_positive(const AlgElement& x, double tol) {
    if (!is_hermitian(x, tol)) return false;
    const auto eig = spectrum(x, tol);
    const double scale = std::max(1.0, x.norm());
    return eig.empty() || eig.front() >= -tol * scale;
}

bool is_strictly_positive(const AlgElement& x, double tol) {
    if (!is_hermitian(x, tol)) return false;
    const auto eig = spectrum(x, tol);
    const double scale = std::max(1.0, x.norm());
    return !eig.empty() && eig.front() > tol * scale;
}

AlgElement sqrt_positive(const AlgElement& x, double tol) {
    AlgElement h = require_hermitian(x, tol);
    AlgElement out = AlgElement::zero(x.algebra());
    const double scale = std::max(1.0, x.norm());
    for (int g = 0; g < x.algebra().num_blocks(); ++g) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat(g));
        Vector vals(es.eigenvalues().size());
        for (Eigen::Index i = 0; i < vals.size(); ++i) {
            double v = es.eigenvalues()(i);
            if (v < -tol * scale) throw NotPositive("sqrt_positive: negative eigenvalue");
            vals(i) = std::sqrt(std::max(v, 0.0));
        }
        out.mat(g) = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
    }
    return out;
}

AlgElement invert(const AlgElement& x, double tol) {
    AlgElement out = AlgElement::zero(x.algebra());
    for (int g = 0; g < x.algebra().num_blocks(); ++g) {
        Eigen::JacobiSVD<Matrix> svd(x.mat(g));
        const double smin = svd.singularValues().minCoeff();
        const double smax = svd.singularValues().maxCoeff();
        if (smin <= tol * std::max(1.0, smax)) throw Singular("invert: block is singular");
        out.mat(g) = x.mat(g).inverse();
    }
    return out;
}

std::vector<double> real_eigenvalues(const AlgElement& x, double tol) {
    std::vector<double> eig;
    const double scale = std::max(1.0, x.norm());
    for (const auto& m : x.mats()) {
        Eigen::ComplexEigenSolver<Matrix> es(m);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            const Complex v = es.eigenvalues()(i);
            if (std::abs(v.imag()) > tol * scale)
                throw NotHermitian("real_eigenvalues: complex eigenvalue found");
            eig.push_back(v.real());
        }
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

BlockAlgebra tensor(const BlockAlgebra& a, const BlockAlgebra& b) {
    std::vector<int> blocks;
    blocks.reserve(static_cast<size_t>(a.num_blocks() * b.num_blocks()));
    for (int g = 0; g < a.num_blocks(); ++g)
        for (int d = 0; d < b.num_blocks(); ++d) blocks.push_back(a.block_size(g) * b.block_size(d));
    std::string label = a.label().empty() && b.label().empty()
                            ? std::string()
                            : a.label() + "(x)" + b.label();
    return BlockAlgebra(std::move(blocks), std::move(label));
}

AlgElement tensor_elem(const AlgElement& x, const AlgElement& y) {
    const BlockAlgebra t = tensor(x.algebra(), y.algebra());
    AlgElement out = AlgElement::zero(t);
    int tb = 0;
    for (int g = 0; g < x.algebra().num_blocks(); ++g) {
        for (int d = 0; d < y.algebra().num_blocks(); ++d, ++tb) {
            const Matrix& xm = x.mat(g);
            const Matrix& ym = y.mat(d);
            Matrix& om = out.mat(tb);
            const int nd = y.algebra().block_size(d);
            for (Eigen::Index i = 0; i < xm.rows(); ++i)
                for (Eigen::Index j = 0; j < xm.cols(); ++j)
                    om.block(i * nd, j * nd, nd, nd) = xm(i, j) * ym;
        }
    }
    return out;
}

std::pair<int, int> tensor_basis_split(const BlockAlgebra& a, const BlockAlgebra& b, int index) {
    const BlockAlgebra t = tensor(a, b);
    const BasisIndex bi = t.basis_at(index);
    const int g = bi.block / b.num_blocks();
    const int d = bi.block % b.num_blocks();
    const int nd = b.block_size(d);
    const int ia = bi.row / nd, ka = bi.row % nd;
    const int ja = bi.col / nd, la = bi.col % nd;
    return {a.basis_offset(g, ia, ja), b.basis_offset(d, ka, la)};
}

BlockAlgebra scalar_algebra() { return BlockAlgebra({1}, "C"); }

}  // namespace wha
