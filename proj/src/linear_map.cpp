#include "wha/linear_map.hpp"

#include <Eigen/SVD>

namespace wha {

LinearMapRep::LinearMapRep(BlockAlgebra domain, BlockAlgebra codomain, Matrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.dim() || matrix_.cols() != domain_.dim())
        throw ShapeMismatch("LinearMapRep: matrix shape mismatch");
}

LinearMapRep LinearMapRep::identity(const BlockAlgebra& a) {
    return LinearMapRep(a, a, Matrix::Identity(a.dim(), a.dim()));
}

LinearMapRep LinearMapRep::zero(const BlockAlgebra& dom, const BlockAlgebra& cod) {
    return LinearMapRep(dom, cod, Matrix::Zero(cod.dim(), dom.dim()));
}

LinearMapRep LinearMapRep::from_function(const BlockAlgebra& dom, const BlockAlgebra& cod,
                                         const std::function<AlgElement(const AlgElement&)>& f) {
    Matrix m(cod.dim(), dom.dim());
    for (int j = 0; j < dom.dim(); ++j)
        m.col(j) = f(AlgElement::basis_unit(dom, j)).to_vector();
    return LinearMapRep(dom, cod, std::move(m));
}

LinearMapRep LinearMapRep::left_mult(const AlgElement& z) {
    const BlockAlgebra& a = z.algebra();
    return from_function(a, a, [&z](const AlgElement& x) { return z * x; });
}

LinearMapRep LinearMapRep::right_mult(const AlgElement& z) {
    const BlockAlgebra& a = z.algebra();
    return from_function(a, a, [&z](const AlgElement& x) { return x * z; });
}

AlgElement LinearMapRep::apply(const AlgElement& x) const {
    if (!x.algebra().same_shape(domain_))
        throw ShapeMismatch("LinearMapRep::apply: element not in domain");
    return AlgElement::from_vector(codomain_, matrix_ * x.to_vector());
}

LinearMapRep LinearMapRep::compose(const LinearMapRep& other) const {
    if (!other.codomain_.same_shape(domain_))
        throw ShapeMismatch("LinearMapRep::compose: domain/codomain mismatch");
    return LinearMapRep(other.domain_, codomain_, matrix_ * other.matrix_);
}

LinearMapRep LinearMapRep::operator+(const LinearMapRep& rhs) const {
    return LinearMapRep(domain_, codomain_, matrix_ + rhs.matrix_);
}

LinearMapRep LinearMapRep::operator-(const LinearMapRep& rhs) const {
    return LinearMapRep(domain_, codomain_, matrix_ - rhs.matrix_);
}

LinearMapRep LinearMapRep::scaled(Complex s) const {
    return LinearMapRep(domain_, codomain_, s * matrix_);
}

LinearMapRep LinearMapRep::inverse(double tol) const {
    Eigen::JacobiSVD<Matrix> svd(matrix_);
    if (svd.singularValues().minCoeff() <=
        tol * std::max(1.0, svd.singularValues().maxCoeff()))
        throw Singular("LinearMapRep::inverse: map is singular");
    return LinearMapRep(codomain_, domain_, matrix_.inverse());
}

double LinearMapRep::distance(const LinearMapRep& rhs) const {
    return residual(matrix_, rhs.matrix_);
}

LinearMapRep tensor_map(const LinearMapRep& s, const LinearMapRep& t) {
    const BlockAlgebra dom = tensor(s.domain(), t.domain());
    const BlockAlgebra cod = tensor(s.codomain(), t.codomain());
    Matrix m(cod.dim(), dom.dim());
    for (int j = 0; j < dom.dim(); ++j) {
        const auto [ja, jb] = tensor_basis_split(s.domain(), t.domain(), j);
        const AlgElement sa = s.apply(AlgElement::basis_unit(s.domain(), ja));
        const AlgElement tb = t.apply(AlgElement::basis_unit(t.domain(), jb));
        m.col(j) = tensor_elem(sa, tb).to_vector();
    }
    return LinearMapRep(dom, cod, std::move(m));
}

LinearMapRep flip(const BlockAlgebra& a, const BlockAlgebra& b) {
    const BlockAlgebra dom = tensor(a, b);
    const BlockAlgebra cod = tensor(b, a);
    Matrix m = Matrix::Zero(cod.dim(), dom.dim());
    for (int j = 0; j < dom.dim(); ++j) {
        const auto [ja, jb] = tensor_basis_split(a, b, j);
        const AlgElement img = tensor_elem(AlgElement::basis_unit(b, jb),
                                           AlgElement::basis_unit(a, ja));
        m.col(j) = img.to_vector();
    }
    return LinearMapRep(dom, cod, std::move(m));
}

LinearMapRep transpose_map(const BlockAlgebra& a) {
    return LinearMapRep::from_function(a, a,
                                       [](const AlgElement& x) { return x.transpose_blocks(); });
}

LinearMapRep mult_map_rep(const BlockAlgebra& a) {
    const BlockAlgebra dom = tensor(a, a);
    Matrix m(a.dim(), dom.dim());
    for (int j = 0; j < dom.dim(); ++j) {
        const auto [ja, jb] = tensor_basis_split(a, a, j);
        m.col(j) =
            (AlgElement::basis_unit(a, ja) * AlgElement::basis_unit(a, jb)).to_vector();
    }
    return LinearMapRep(dom, a, std::move(m));
}

LinearMapRep functional_from_row(const BlockAlgebra& dom, const Eigen::RowVectorXcd& row) {
    return LinearMapRep(dom, scalar_algebra(), Matrix(row));
}

Complex functional_value(const LinearMapRep& f, const AlgElement& x) {
    return (f.matrix() * x.to_vector())(0);
}

int tensor_pair_index(const BlockAlgebra& a, const BlockAlgebra& b, int ai, int bi) {
    const BasisIndex ia = a.basis_at(ai);
    const BasisIndex ib = b.basis_at(bi);
    const BlockAlgebra t = tensor(a, b);
    const int nb = b.block_size(ib.block);
    return t.basis_offset(ia.block * b.num_blocks() + ib.block, ia.row * nb + ib.row,
                          ia.col * nb + ib.col);
}

namespace {

// Index tables for one-leg application over tensor products.
struct LegTables {
    std::vector<std::pair<int, int>> split;  // tensor(X, other) index -> (x, z)
    std::vector<int> join;                   // y * dim_other + z -> tensor(Y, other) index
};

LegTables make_tables(const BlockAlgebra& x, const BlockAlgebra& y, const BlockAlgebra& other,
                      bool first_leg) {
    LegTables t;
    const BlockAlgebra dom = first_leg ? tensor(x, other) : tensor(other, x);
    t.split.resize(static_cast<size_t>(dom.dim()));
    for (int u = 0; u < dom.dim(); ++u) {
        auto [p, q] = first_leg ? tensor_basis_split(x, other, u)
                                : tensor_basis_split(other, x, u);
        t.split[static_cast<size_t>(u)] = first_leg ? std::make_pair(p, q) : std::make_pair(q, p);
    }
    t.join.resize(static_cast<size_t>(y.dim()) * static_cast<size_t>(other.dim()));
    for (int yi = 0; yi < y.dim(); ++yi)
        for (int z = 0; z < other.dim(); ++z)
            t.join[static_cast<size_t>(yi) * static_cast<size_t>(other.dim()) +
                   static_cast<size_t>(z)] =
                first_leg ? tensor_pair_index(y, other, yi, z)
                          : tensor_pair_index(other, y, z, yi);
    return t;
}

Vector apply_leg(const LinearMapRep& s, const BlockAlgebra& other, const Vector& v,
                 bool first_leg) {
    const BlockAlgebra& x = s.domain();
    const BlockAlgebra& y = s.codomain();
    const LegTables t = make_tables(x, y, other, first_leg);
    Vector out = Vector::Zero(static_cast<Eigen::Index>(y.dim()) * other.dim());
    for (int u = 0; u < static_cast<int>(v.size()); ++u) {
        const Complex c = v(u);
        if (c == Complex(0.0, 0.0)) continue;
        const auto [xi, z] = t.split[static_cast<size_t>(u)];
        const auto col = s.matrix().col(xi);
        for (int yi = 0; yi < y.dim(); ++yi) {
            const Complex s_val = col(yi);
            if (s_val == Complex(0.0, 0.0)) continue;
            out(t.join[static_cast<size_t>(yi) * static_cast<size_t>(other.dim()) +
                       static_cast<size_t>(z)]) += c * s_val;
        }
    }
    return out;
}

}  // namespace

Vector apply_first_leg(const LinearMapRep& s, const BlockAlgebra& other, const Vector& v) {
    return apply_leg(s, other, v, true);
}

Vector apply_second_leg(const LinearMapRep& s, const BlockAlgebra& other, const Vector& v) {
    return apply_leg(s, other, v, false);
}

Matrix null_space(const Matrix& m, double tol) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv.maxCoeff() : 0.0;
    const double thresh = tol * std::max(1.0, smax);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

Vector least_squares(const Matrix& m, const Vector& b, double* residual_out) {
    // JacobiSVD throughout: BDCSVD mis-solves some well-conditioned complex
    // systems of this shape, and at these dimensions Jacobi is cheap.
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vector x = svd.solve(b);
    if (residual_out) {
        const double scale = std::max(1.0, b.norm());
        *residual_out = (m * x - b).norm() / scale;
    }
    return x;
}

}  // namespace wha
