#include "wha/canonical.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace wha {

namespace {

Matrix orth_columns(const Matrix& m) {
    Eigen::ColPivHouseholderQR<Matrix> qr(m);
    qr.setThreshold(1e-9);
    return Matrix(qr.householderQ()).leftCols(qr.rank());
}

// Smallest subspace containing the columns and closed under multiplication.
Matrix multiplicative_closure(const BlockAlgebra& amb, const Matrix& seed_cols) {
    Matrix cur = orth_columns(seed_cols);
    for (;;) {
        const Eigen::Index k = cur.cols();
        Matrix ext(amb.dim(), k + k * k);
        ext.leftCols(k) = cur;
        Eigen::Index c = k;
        for (Eigen::Index i = 0; i < k; ++i) {
            const AlgElement bi = AlgElement::from_vector(amb, cur.col(i));
            for (Eigen::Index j = 0; j < k; ++j) {
                const AlgElement bj = AlgElement::from_vector(amb, cur.col(j));
                ext.col(c++) = (bi * bj).to_vector();
            }
        }
        Matrix next = orth_columns(ext);
        if (next.cols() == k) return cur;
        cur = std::move(next);
    }
}

}  // namespace

CanonicalElement canonical_element(const WeakHopf& w, uint64_t seed, double tol) {
    CanonicalElement out;
    out.base = cartan_target(w, seed, tol);
    const BlockAlgebra& bt = out.base.recovered.structure;
    const AlgElement f_t = f_in_cartan_coords(w, out.base, tol);
    const TensorSquare ts(bt);

    // Route one: read the gauge straight off the separating element.
    const AlgElement q_a = gauge_from_separating(ts, f_t, tol);

    // Route two: solve f = (1 (x) q) e as a linear system in q.
    const AlgElement e = symmetric_e_value(bt);
    const AlgElement one_t = AlgElement::identity(bt);
    const LinearMapRep solve_map = LinearMapRep::from_function(
        bt, ts.ambient(), [&](const AlgElement& x) { return ts.op_mul(ts.embed(one_t, x), e); });
    double solve_res = 0.0;
    const Vector q_coords = least_squares(solve_map.matrix(), f_t.to_vector(), &solve_res);
    if (solve_res > 10 * tol)
        throw CrossCheckMismatch("canonical_element: f = (1 (x) q) e has no solution");
    const AlgElement q_b = AlgElement::from_vector(bt, q_coords);

    if (residual(q_a, q_b) > 10 * tol)
        throw CrossCheckMismatch("canonical_element: the two computation routes disagree");
    out.q_t = q_a;

    if (!is_hermitian(out.q_t, 10 * tol) || !is_strictly_positive(out.q_t, tol))
        throw NotPositive("canonical_element: q is not strictly positive");
    if (residual(E_center(out.q_t), one_t) > 10 * tol)
        throw PostconditionViolated("canonical_element: E_Z(q) != 1");

    out.q = out.base.recovered.from_coords(out.q_t);
    if (residual(w.kappa.apply(w.kappa.apply(out.q)), out.q) > 10 * tol)
        throw PostconditionViolated("canonical_element: kappa^2(q) != q");

    // Delta(1) = Sum_g (1/n_g) kappa^{-1}(e^g_{i,j} q) (x) e^g_{j,i}.
    const LinearMapRep kappa_inv = w.kappa.inverse();
    AlgElement expansion = AlgElement::zero(tensor(w.A, w.A));
    for (int g = 0; g < bt.num_blocks(); ++g) {
        const int n = bt.block_size(g);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const AlgElement& eij =
                    out.base.recovered.units[static_cast<size_t>(bt.basis_offset(g, i, j))];
                const AlgElement& eji =
                    out.base.recovered.units[static_cast<size_t>(bt.basis_offset(g, j, i))];
                expansion = expansion +
                            tensor_elem(kappa_inv.apply(eij * out.q), eji) *
                                Complex(1.0 / n, 0.0);
            }
    }
    if (residual(expansion, w.delta_one()) > 10 * tol)
        throw PostconditionViolated("canonical_element: Delta(1) expansion through q fails");

    out.spectrum = real_eigenvalues(out.q_t);
    return out;
}

StructureReport check_kappa_squared_inner(const WeakHopf& w, const AlgElement& q, uint64_t seed,
                                          double tol) {
    (void)seed;
    StructureReport r;
    r.tol = tol;
    const Matrix sub_t = cartan_subspace(w, CartanData::Which::Target, tol);
    const Matrix sub_s = cartan_subspace(w, CartanData::Which::Source, tol);
    Matrix both(w.A.dim(), sub_t.cols() + sub_s.cols());
    both << sub_t, sub_s;
    const Matrix closure = multiplicative_closure(w.A, both);

    const AlgElement q_inv = invert(q);
    const AlgElement left = q_inv * w.kappa.apply(q);
    const AlgElement right = q * w.kappa.apply(q_inv);
    double worst = 0.0;
    for (Eigen::Index c = 0; c < closure.cols(); ++c) {
        const AlgElement x = AlgElement::from_vector(w.A, closure.col(c));
        worst = std::max(worst,
                         residual(w.kappa.apply(w.kappa.apply(x)), left * x * right));
    }
    r.add("kappa_squared_inner", worst);
    return r;
}

bool is_admissible(const WeakHopf& w, const AlgElement& k, double tol) {
    const CanonicalElement ce = canonical_element(w, 1, tol);
    double res = 0.0;
    const AlgElement k_t = ce.base.recovered.to_coords(k, &res);
    if (res > 100 * tol) return false;
    if (!is_hermitian(k_t, 10 * tol) || !is_strictly_positive(k_t, tol)) return false;
    if (residual(w.kappa.apply(w.kappa.apply(k)), k) > 10 * tol) return false;
    const AlgElement ratio = invert(k_t) * ce.q_t;
    return residual(E_center(ratio), AlgElement::identity(k_t.algebra())) <= 10 * tol;
}

AdmissibleK sample_admissible(const WeakHopf& w, uint64_t seed, double tol) {
    const CanonicalElement ce = canonical_element(w, 1, tol);
    const BlockAlgebra& bt = ce.base.recovered.structure;
    bool nonabelian = false;
    for (int g = 0; g < bt.num_blocks(); ++g)
        if (bt.block_size(g) > 1) nonabelian = true;
    if (!nonabelian)
        throw AbelianBaseOnlyTrivial("sample_admissible: abelian base admits only k = q");

    std::mt19937_64 rng(seed);
    // Uniform on the simplex (normalized exponentials), scaled to sum n_g and
    // clamped away from zero to keep k well conditioned.
    std::exponential_distribution<double> expo(1.0);
    constexpr double kMinWeight = 1e-3;

    AlgElement k_t = AlgElement::zero(bt);
    AdmissibleK out;
    for (int g = 0; g < bt.num_blocks(); ++g) {
        const int n = bt.block_size(g);
        const Matrix qg = 0.5 * (ce.q_t.mat(g) + ce.q_t.mat(g).adjoint().eval());
        if (n == 1) {
            k_t.mat(g) = qg;
            out.spectrum_kinv_q.push_back(1.0);
            continue;
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(qg);
        Eigen::VectorXd weights(n);
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            weights(i) = expo(rng);
            total += weights(i);
        }
        weights *= static_cast<double>(n) / total;
        for (int pass = 0; pass < 4; ++pass) {
            double excess = 0.0;
            double free_mass = 0.0;
            for (int i = 0; i < n; ++i) {
                if (weights(i) < kMinWeight) {
                    excess += kMinWeight - weights(i);
                    weights(i) = kMinWeight;
                } else {
                    free_mass += weights(i);
                }
            }
            if (excess == 0.0) break;
            for (int i = 0; i < n; ++i)
                if (weights(i) > kMinWeight) weights(i) *= 1.0 - excess / free_mass;
        }
        Matrix diag = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            diag(i, i) = es.eigenvalues()(i) / weights(i);
            out.spectrum_kinv_q.push_back(weights(i));
        }
        k_t.mat(g) = es.eigenvectors() * diag * es.eigenvectors().adjoint();
    }
    std::sort(out.spectrum_kinv_q.begin(), out.spectrum_kinv_q.end());

    out.k = ce.base.recovered.from_coords(k_t);
    if (!is_admissible(w, out.k, tol))
        throw DegenerateRandomization("sample_admissible: drawn k failed the admissibility check");
    return out;
}

WeakHopf deform(const WeakHopf& w, const AlgElement& k, double tol, bool verify) {
    if (verify && !is_admissible(w, k, tol))
        throw NotAdmissible("deform: k is not an admissible element of the base");
    const AlgElement k_inv = invert(k);

    WeakHopf out;
    out.A = w.A;
    out.gauge = k * w.gauge;
    if (!is_strictly_positive(out.gauge, tol))
        throw PostconditionViolated("deform: composed gauge is not strictly positive");
    const AlgElement one = AlgElement::identity(w.A);
    out.delta = LinearMapRep::right_mult(tensor_elem(one, k_inv)).compose(w.delta);
    out.kappa = LinearMapRep::left_mult(k)
                    .compose(LinearMapRep::right_mult(k_inv))
                    .compose(w.kappa);
    out.eps = w.eps.compose(LinearMapRep::right_mult(k));

    if (verify) {
        const StructureReport rep = check_axioms(out, tol);
        if (!rep.pass())
            throw PostconditionViolated("deform: axiom suite fails on the deformed structure");
        for (const auto which : {CartanData::Which::Target, CartanData::Which::Source}) {
            const double gap =
                subspace_gap(cartan_subspace(w, which, tol), cartan_subspace(out, which, tol));
            if (gap > tol)
                throw PostconditionViolated("deform: Cartan subalgebra moved under deformation");
        }
        const CanonicalElement before = canonical_element(w, 1, tol);
        const CanonicalElement after = canonical_element(out, 1, tol);
        if (residual(after.q, k_inv * before.q) > 10 * tol)
            throw PostconditionViolated("deform: canonical element of the result is not k^{-1} q");
    }
    return out;
}

WeakHopf deform_to_involutive_base(const WeakHopf& w, double tol) {
    return deform(w, canonical_element(w, 1, tol).q, tol, true);
}

std::vector<double> spectrum_invariant(const WeakHopf& w, uint64_t seed, double tol) {
    return canonical_element(w, seed, tol).spectrum;
}

double subspace_gap(const Matrix& q1, const Matrix& q2) {
    if (q1.cols() != q2.cols()) return std::numeric_limits<double>::infinity();
    if (q2.cols() == 0) return 0.0;
    const Matrix rest = q2 - q1 * (q1.adjoint() * q2);
    Eigen::JacobiSVD<Matrix> svd(rest);
    return svd.singularValues().size() > 0 ? svd.singularValues().maxCoeff() : 0.0;
}

}  // namespace wha
