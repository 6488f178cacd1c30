#include "wha/recover.hpp"

#include <cmath>
#include <random>

namespace wha {

namespace {

constexpr int kMaxRetries = 8;
constexpr double kClusterGap = 1e-6;

struct RetryableFailure {};

struct EigenPair {
    double value;
    Vector vec;  // within one ambient block
    int block;
};

Complex gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    const double re = d(rng);
    const double im = d(rng);
    return {re, im};
}

AlgElement random_in_span(const BlockAlgebra& amb, const Matrix& basis, std::mt19937_64& rng) {
    Vector c(basis.cols());
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = gaussian(rng);
    return AlgElement::from_vector(amb, basis * c);
}

AlgElement hermitian_part(const AlgElement& x) {
    AlgElement h = x;
    for (int g = 0; g < h.algebra().num_blocks(); ++g)
        h.mat(g) = (0.5 * (h.mat(g) + h.mat(g).adjoint().eval())).eval();
    return h;
}

// Group sorted eigenvalues into clusters separated by a relative gap.
std::vector<std::vector<EigenPair>> cluster_eigenpairs(std::vector<EigenPair> pairs) {
    std::sort(pairs.begin(), pairs.end(),
              [](const EigenPair& a, const EigenPair& b) { return a.value < b.value; });
    double scale = 1.0;
    for (const auto& p : pairs) scale = std::max(scale, std::abs(p.value));
    std::vector<std::vector<EigenPair>> clusters;
    for (auto& p : pairs) {
        if (clusters.empty() || p.value - clusters.back().back().value > kClusterGap * scale)
            clusters.emplace_back();
        clusters.back().push_back(std::move(p));
    }
    return clusters;
}

AlgElement projection_from_cluster(const BlockAlgebra& amb,
                                   const std::vector<EigenPair>& cluster) {
    AlgElement p = AlgElement::zero(amb);
    for (const auto& ep : cluster)
        p.mat(ep.block) += ep.vec * ep.vec.adjoint();
    return p;
}

std::vector<EigenPair> eigenpairs(const AlgElement& h) {
    std::vector<EigenPair> out;
    for (int g = 0; g < h.algebra().num_blocks(); ++g) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat(g));
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            out.push_back({es.eigenvalues()(i), es.eigenvectors().col(i), g});
    }
    return out;
}

// One randomized attempt; throws RetryableFailure on degenerate draws.
RecoveredStructure attempt(const BlockAlgebra& amb, const Matrix& basis, uint64_t seed,
                           double tol) {
    std::mt19937_64 rng(seed);
    const int r = static_cast<int>(basis.cols());

    // Relative center of the span: z with [z, b_i] = 0 for every basis column.
    Matrix commutant(static_cast<Eigen::Index>(r) * amb.dim(), r);
    for (int i = 0; i < r; ++i) {
        const AlgElement bi = AlgElement::from_vector(amb, basis.col(i));
        const LinearMapRep comm =
            LinearMapRep::left_mult(bi) - LinearMapRep::right_mult(bi);
        commutant.middleRows(static_cast<Eigen::Index>(i) * amb.dim(), amb.dim()) =
            comm.matrix() * basis;
    }
    const Matrix center_coords = null_space(commutant, 1e-10);
    const int m = static_cast<int>(center_coords.cols());
    if (m < 1) throw StructureRecoveryFailed("recover_matrix_units: empty center");
    const Matrix center_basis = basis * center_coords;

    // Split the center with a random Hermitian central element.
    AlgElement z = hermitian_part(random_in_span(amb, center_basis, rng));
    auto z_clusters = cluster_eigenpairs(eigenpairs(z));
    // Drop the kernel that lies outside the span's support: the cluster of
    // vectors on which every central basis element vanishes.
    std::vector<std::vector<EigenPair>> central_clusters;
    AlgElement support = AlgElement::zero(amb);
    {
        // support projection = unit of the span, found by least squares u b = b
        Matrix lhs(static_cast<Eigen::Index>(r) * amb.dim(), r);
        Vector rhs(static_cast<Eigen::Index>(r) * amb.dim());
        for (int i = 0; i < r; ++i) {
            const AlgElement bi = AlgElement::from_vector(amb, basis.col(i));
            lhs.middleRows(static_cast<Eigen::Index>(i) * amb.dim(), amb.dim()) =
                LinearMapRep::right_mult(bi).matrix() * basis;
            rhs.segment(static_cast<Eigen::Index>(i) * amb.dim(), amb.dim()) = basis.col(i);
        }
        double res = 0.0;
        const Vector u = least_squares(lhs, rhs, &res);
        if (res > 100 * tol) throw NotAnAlgebra("recover_matrix_units: span has no unit");
        support = AlgElement::from_vector(amb, basis * u);
    }
    for (auto& cl : z_clusters) {
        int inside = 0, outside = 0;
        for (const auto& ep : cl) {
            const double overlap =
                std::real((ep.vec.adjoint() * support.mat(ep.block) * ep.vec)(0));
            if (overlap > 0.9)
                ++inside;
            else if (overlap < 0.1)
                ++outside;
            else
                throw RetryableFailure{};
        }
        if (inside > 0 && outside > 0) throw RetryableFailure{};
        if (inside > 0) central_clusters.push_back(cl);
    }
    if (static_cast<int>(central_clusters.size()) != m) throw RetryableFailure{};

    std::vector<int> block_sizes;
    std::vector<AlgElement> units;
    for (const auto& cl : central_clusters) {
        const AlgElement p = projection_from_cluster(amb, cl);
        // Basis and dimension of p S p.
        Matrix comp(amb.dim(), r);
        const LinearMapRep lp = LinearMapRep::left_mult(p);
        const LinearMapRep rp = LinearMapRep::right_mult(p);
        for (int i = 0; i < r; ++i)
            comp.col(i) = lp.matrix() * (rp.matrix() * basis.col(i));
        Eigen::ColPivHouseholderQR<Matrix> qr(comp);
        qr.setThreshold(1e-9);
        const int d = static_cast<int>(qr.rank());
        const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(d))));
        if (n * n != d)
            throw NotAnAlgebra("recover_matrix_units: component dimension is not a square");
        block_sizes.push_back(n);
        const Matrix comp_basis = Matrix(qr.householderQ()).leftCols(d);

        if (n == 1) {
            units.push_back(p);
            continue;
        }

        // Minimal projections from a random Hermitian element of p S p.
        AlgElement h = hermitian_part(random_in_span(amb, comp_basis, rng));
        h = p * h * p;
        std::vector<EigenPair> inside_pairs;
        for (auto& ep : eigenpairs(h)) {
            const double overlap = std::real((ep.vec.adjoint() * p.mat(ep.block) * ep.vec)(0));
            if (overlap > 0.9)
                inside_pairs.push_back(std::move(ep));
            else if (overlap >= 0.1)
                throw RetryableFailure{};
        }
        auto minimal_clusters = cluster_eigenpairs(std::move(inside_pairs));
        if (static_cast<int>(minimal_clusters.size()) != n) throw RetryableFailure{};

        std::vector<AlgElement> f;
        f.reserve(static_cast<size_t>(n));
        for (const auto& mc : minimal_clusters) f.push_back(projection_from_cluster(amb, mc));

        // Partial isometries u_i in f_1 S f_i; f_1 S f_i is one dimensional,
        // so a random pick normalizes to a coisometry by scaling.
        std::vector<AlgElement> u;
        u.push_back(f[0]);
        for (int i = 1; i < n; ++i) {
            const AlgElement v = f[0] * random_in_span(amb, comp_basis, rng) * f[static_cast<size_t>(i)];
            const double lam = std::real(trace_canonical(v.adjoint() * v)) /
                               std::real(trace_canonical(f[static_cast<size_t>(i)]));
            if (!(lam > 1e-12)) throw RetryableFailure{};
            u.push_back(v * Complex(1.0 / std::sqrt(lam), 0.0));
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                units.push_back(u[static_cast<size_t>(i)].adjoint() * u[static_cast<size_t>(j)]);
    }

    RecoveredStructure out;
    out.structure = BlockAlgebra(block_sizes, "recovered");
    out.units = std::move(units);
    out.basis = basis;
    Matrix emb(amb.dim(), out.structure.dim());
    for (int j = 0; j < out.structure.dim(); ++j)
        emb.col(j) = out.units[static_cast<size_t>(j)].to_vector();
    out.embedding = LinearMapRep(out.structure, amb, std::move(emb));

    // Verify the matrix-unit relations before shipping.
    const BlockAlgebra& s = out.structure;
    for (int a = 0; a < s.dim(); ++a) {
        const BasisIndex ia = s.basis_at(a);
        for (int b = 0; b < s.dim(); ++b) {
            const BasisIndex ib = s.basis_at(b);
            AlgElement expect = AlgElement::zero(amb);
            if (ia.block == ib.block && ia.col == ib.row)
                expect = out.units[static_cast<size_t>(s.basis_offset(ia.block, ia.row, ib.col))];
            const AlgElement got =
                out.units[static_cast<size_t>(a)] * out.units[static_cast<size_t>(b)];
            if (residual(got, expect) > tol) throw RetryableFailure{};
        }
    }
    return out;
}

}  // namespace

AlgElement RecoveredStructure::to_coords(const AlgElement& x, double* residual_out) const {
    double res = 0.0;
    const Vector c = least_squares(embedding.matrix(), x.to_vector(), &res);
    if (residual_out) *residual_out = res;
    return AlgElement::from_vector(structure, c);
}

AlgElement RecoveredStructure::from_coords(const AlgElement& x) const {
    return embedding.apply(x);
}

RecoveredStructure recover_matrix_units(const std::vector<AlgElement>& span, uint64_t seed,
                                        double tol) {
    if (span.empty()) throw ShapeMismatch("recover_matrix_units: empty span");
    const BlockAlgebra amb = span.front().algebra();

    Matrix raw(amb.dim(), static_cast<Eigen::Index>(span.size()));
    for (size_t i = 0; i < span.size(); ++i) {
        if (!span[i].algebra().same_shape(amb))
            throw ShapeMismatch("recover_matrix_units: mixed ambient algebras");
        raw.col(static_cast<Eigen::Index>(i)) = span[i].to_vector();
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(raw);
    qr.setThreshold(1e-9);
    const int r = static_cast<int>(qr.rank());
    if (r == 0) throw ShapeMismatch("recover_matrix_units: span is zero");
    const Matrix basis = Matrix(qr.householderQ()).leftCols(r);

    // Closure under multiplication and the ambient involution.
    const Matrix proj = basis * basis.adjoint();
    auto in_span = [&](const Vector& v) {
        const double scale = std::max(1.0, v.norm());
        return (v - proj * v).norm() / scale <= 100 * tol;
    };
    for (int i = 0; i < r; ++i) {
        const AlgElement bi = AlgElement::from_vector(amb, basis.col(i));
        if (!in_span(bi.adjoint().to_vector()))
            throw NotAnAlgebra("recover_matrix_units: span not closed under involution");
        for (int j = 0; j < r; ++j) {
            const AlgElement bj = AlgElement::from_vector(amb, basis.col(j));
            if (!in_span((bi * bj).to_vector()))
                throw NotAnAlgebra("recover_matrix_units: span not closed under multiplication");
        }
    }

    for (int retry = 0; retry <= kMaxRetries; ++retry) {
        try {
            return attempt(amb, basis, seed + static_cast<uint64_t>(retry), tol);
        } catch (const RetryableFailure&) {
            continue;
        }
    }
    throw DegenerateRandomization("recover_matrix_units: retries exhausted");
}

}  // namespace wha
