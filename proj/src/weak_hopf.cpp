#include "wha/weak_hopf.hpp"

#include <cmath>

namespace wha {

bool WeakHopf::has_standard_gauge(double tol) const {
    return residual(gauge, AlgElement::identity(A)) <= tol;
}

AlgElement WeakHopf::star(const AlgElement& x) const {
    if (has_standard_gauge()) return x.adjoint();
    return adjoint(x, {A, gauge});
}

IsoPair standardize(const GaugedInvolution& inv, double tol) {
    if (!is_strictly_positive(inv.gauge, tol))
        throw NotPositive("standardize: gauge must be strictly positive");
    const AlgElement gh = sqrt_positive(inv.gauge, tol);
    const AlgElement gh_inv = invert(gh);
    const LinearMapRep fwd = LinearMapRep::left_mult(gh_inv).compose(LinearMapRep::right_mult(gh));
    const LinearMapRep bwd = LinearMapRep::left_mult(gh).compose(LinearMapRep::right_mult(gh_inv));
    return {fwd, bwd};
}

StandardizedWha standardize_wha(const WeakHopf& w, double tol) {
    if (w.has_standard_gauge()) {
        const LinearMapRep id = LinearMapRep::identity(w.A);
        return {w, {id, id}};
    }
    const IsoPair iso = standardize({w.A, w.gauge}, tol);
    WeakHopf out;
    out.A = w.A;
    out.gauge = AlgElement::identity(w.A);
    out.delta = tensor_map(iso.forward, iso.forward).compose(w.delta).compose(iso.backward);
    out.kappa = iso.forward.compose(w.kappa).compose(iso.backward);
    out.eps = w.eps.compose(iso.backward);
    return {out, iso};
}

namespace {

double gram_negativity(const Matrix& gram) {
    const Matrix sym = 0.5 * (gram + gram.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    const double lmin = es.eigenvalues().minCoeff();
    const double herm_defect = (gram - sym).norm();
    const double scale = std::max(1.0, gram.norm());
    return std::max(herm_defect, std::max(0.0, -lmin)) / scale;
}

}  // namespace

StructureReport check_axioms(const WeakHopf& w_in, double tol) {
    // *-dependent residuals are only meaningful in a standard representation;
    // transport gauged structures before checking anything.
    const WeakHopf w = standardize_wha(w_in, tol).w;
    StructureReport r;
    r.tol = tol;

    const BlockAlgebra& A = w.A;
    const BlockAlgebra AA = tensor(A, A);
    const int dim = A.dim();
    const LinearMapRep id = LinearMapRep::identity(A);
    const AlgElement one = AlgElement::identity(A);
    const AlgElement d1 = w.delta_one();

    std::vector<AlgElement> dbasis;
    dbasis.reserve(static_cast<size_t>(dim));
    for (int a = 0; a < dim; ++a)
        dbasis.push_back(w.delta.apply(AlgElement::basis_unit(A, a)));

    {
        double worst = 0.0;
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
                const AlgElement ab = AlgElement::basis_unit(A, a) * AlgElement::basis_unit(A, b);
                worst = std::max(worst, residual(w.delta.apply(ab),
                                                 dbasis[static_cast<size_t>(a)] *
                                                     dbasis[static_cast<size_t>(b)]));
            }
        r.add("delta_multiplicative", worst);
    }
    {
        double worst = 0.0;
        for (int a = 0; a < dim; ++a) {
            const AlgElement ua = AlgElement::basis_unit(A, a);
            worst = std::max(worst, residual(w.delta.apply(ua.adjoint()),
                                             dbasis[static_cast<size_t>(a)].adjoint()));
        }
        r.add("delta_star", worst);
    }
    {
        double worst = 0.0;
        for (int a = 0; a < dim; ++a) {
            const Vector v = dbasis[static_cast<size_t>(a)].to_vector();
            const Vector lhs = apply_first_leg(w.delta, A, v);
            const Vector rhs = apply_second_leg(w.delta, A, v);
            const double scale = std::max({1.0, lhs.norm(), rhs.norm()});
            worst = std::max(worst, (lhs - rhs).norm() / scale);
        }
        r.add("coassociativity", worst);
    }
    {
        double worst = 0.0;
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
                const AlgElement ua = AlgElement::basis_unit(A, a);
                const AlgElement ub = AlgElement::basis_unit(A, b);
                worst = std::max(worst, residual(w.kappa.apply(ua * ub),
                                                 w.kappa.apply(ub) * w.kappa.apply(ua)));
            }
        r.add("kappa_antimultiplicative", worst);
    }
    {
        double worst = 0.0;
        for (int a = 0; a < dim; ++a) {
            const AlgElement ua = AlgElement::basis_unit(A, a);
            const AlgElement twice = w.kappa.apply(w.kappa.apply(ua.adjoint()).adjoint());
            worst = std::max(worst, residual(twice, ua));
        }
        r.add("kappa_star_involutive", worst);
    }
    {
        const LinearMapRep lhs = tensor_map(w.kappa, w.kappa).compose(w.delta);
        const LinearMapRep rhs = flip(A, A).compose(w.delta).compose(w.kappa);
        r.add("antipode_flip", lhs.distance(rhs));
    }
    {
        // (m(kappa (x) i) (x) i)(Delta (x) i)Delta(x) = (1 (x) x)Delta(1)
        const LinearMapRep g =
            mult_map_rep(A).compose(tensor_map(w.kappa, id));  // AA -> A
        double worst = 0.0;
        for (int a = 0; a < dim; ++a) {
            const Vector v2 = apply_first_leg(w.delta, A, dbasis[static_cast<size_t>(a)].to_vector());
            const Vector lhs = apply_first_leg(g, A, v2);
            const AlgElement rhs = tensor_elem(one, AlgElement::basis_unit(A, a)) * d1;
            const Vector rv = rhs.to_vector();
            const double scale = std::max({1.0, lhs.norm(), rv.norm()});
            worst = std::max(worst, (lhs - rv).norm() / scale);
        }
        r.add("weak_antipode", worst);
    }
    {
        const LinearMapRep left = tensor_map(w.eps, id).compose(w.delta);
        const LinearMapRep right = tensor_map(id, w.eps).compose(w.delta);
        r.add("counit_left", residual(left.matrix(), Matrix(Matrix::Identity(dim, dim))));
        r.add("counit_right", residual(right.matrix(), Matrix(Matrix::Identity(dim, dim))));
    }
    {
        double worst = 0.0;
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
                const AlgElement ua = AlgElement::basis_unit(A, a);
                const AlgElement ub = AlgElement::basis_unit(A, b);
                const AlgElement mid = tensor_elem(ua, one) * d1 * tensor_elem(one, ub);
                Complex lhs = 0.0;
                const Vector mv = mid.to_vector();
                for (int t = 0; t < AA.dim(); ++t) {
                    if (mv(t) == Complex(0.0, 0.0)) continue;
                    const auto [p, q] = tensor_basis_split(A, A, t);
                    lhs += mv(t) * w.eps.matrix()(0, p) * w.eps.matrix()(0, q);
                }
                const Complex rhs = (w.eps.matrix() * (ua * ub).to_vector())(0);
                worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            }
        r.add("counit_through_delta1", worst);
    }
    {
        Matrix gram(dim, dim);
        std::vector<Vector> adj;
        adj.reserve(static_cast<size_t>(dim));
        for (int a = 0; a < dim; ++a)
            adj.push_back(AlgElement::basis_unit(A, a).adjoint().to_vector());
        for (int a = 0; a < dim; ++a) {
            const AlgElement xa = AlgElement::from_vector(A, adj[static_cast<size_t>(a)]);
            for (int b = 0; b < dim; ++b)
                gram(a, b) =
                    (w.eps.matrix() * (xa * AlgElement::basis_unit(A, b)).to_vector())(0);
        }
        r.add("epsilon_positivity", gram_negativity(gram));
    }
    return r;
}

LinearMapRep counit_target(const WeakHopf& w) {
    const LinearMapRep id = LinearMapRep::identity(w.A);
    return mult_map_rep(w.A).compose(tensor_map(id, w.kappa)).compose(w.delta);
}

LinearMapRep counit_source(const WeakHopf& w) {
    const LinearMapRep id = LinearMapRep::identity(w.A);
    return mult_map_rep(w.A).compose(tensor_map(w.kappa, id)).compose(w.delta);
}

Matrix cartan_subspace(const WeakHopf& w, CartanData::Which which, double tol) {
    const BlockAlgebra& A = w.A;
    const AlgElement d1 = w.delta_one();
    const AlgElement one = AlgElement::identity(A);
    const bool target = which == CartanData::Which::Target;
    const LinearMapRep embed = LinearMapRep::from_function(
        A, tensor(A, A), [&](const AlgElement& x) {
            return target ? tensor_elem(x, one) : tensor_elem(one, x);
        });
    const LinearMapRep lm = LinearMapRep::left_mult(d1).compose(embed);
    const LinearMapRep rm = LinearMapRep::right_mult(d1).compose(embed);
    Matrix stacked(2 * lm.matrix().rows(), A.dim());
    stacked.topRows(lm.matrix().rows()) = w.delta.matrix() - lm.matrix();
    stacked.bottomRows(rm.matrix().rows()) = w.delta.matrix() - rm.matrix();
    (void)tol;
    return null_space(stacked, 1e-10);
}

namespace {

CartanData cartan_impl(const WeakHopf& w, CartanData::Which which, uint64_t seed, double tol) {
    const Matrix sub = cartan_subspace(w, which, tol);
    if (sub.cols() == 0)
        throw StructureRecoveryFailed("cartan: empty subspace (invalid structure?)");
    CartanData out;
    out.which = which;
    for (Eigen::Index j = 0; j < sub.cols(); ++j)
        out.basis.push_back(AlgElement::from_vector(w.A, sub.col(j)));

    // Cross-check: the range of the matching counit lies in the subspace.
    const LinearMapRep cu =
        which == CartanData::Which::Target ? counit_target(w) : counit_source(w);
    const Matrix proj = sub * sub.adjoint();
    const double range_res =
        (cu.matrix() - proj * cu.matrix()).norm() / std::max(1.0, cu.matrix().norm());
    if (range_res > 100 * tol)
        throw StructureRecoveryFailed("cartan: counit range escapes the subspace");

    // Structure recovery runs in standardized coordinates where the span is
    // closed under the plain involution; units come back through the inverse.
    const StandardizedWha sw = standardize_wha(w, tol);
    std::vector<AlgElement> std_span;
    std_span.reserve(out.basis.size());
    for (const auto& b : out.basis) std_span.push_back(sw.iso.forward.apply(b));
    RecoveredStructure rec = recover_matrix_units(std_span, seed, tol);
    if (!w.has_standard_gauge()) {
        for (auto& u : rec.units) u = sw.iso.backward.apply(u);
        Matrix emb(w.A.dim(), rec.structure.dim());
        for (int j = 0; j < rec.structure.dim(); ++j)
            emb.col(j) = rec.units[static_cast<size_t>(j)].to_vector();
        rec.embedding = LinearMapRep(rec.structure, w.A, std::move(emb));
        rec.basis = sub;
    }
    out.recovered = std::move(rec);
    return out;
}

}  // namespace

CartanData cartan_target(const WeakHopf& w, uint64_t seed, double tol) {
    return cartan_impl(w, CartanData::Which::Target, seed, tol);
}

CartanData cartan_source(const WeakHopf& w, uint64_t seed, double tol) {
    return cartan_impl(w, CartanData::Which::Source, seed, tol);
}

AlgElement haar_projection(const WeakHopf& w, double tol) {
    // Two-sided invariance plus the full eps_t normalization.  The
    // homogeneous invariance conditions alone leave one degree of freedom per
    // central summand of A_t (e.g. one per object of a groupoid algebra), so
    // eps_t(p) = 1 enters the solve as dim-many affine rows rather than as a
    // scalar rescaling.
    const BlockAlgebra& A = w.A;
    const int dim = A.dim();
    const LinearMapRep et = counit_target(w);
    const LinearMapRep es = counit_source(w);
    const Eigen::Index hom = static_cast<Eigen::Index>(dim) * (2 * dim + 1);
    Matrix rows(hom + dim, dim);
    Vector rhs = Vector::Zero(hom + dim);
    rows.topRows(dim) = w.kappa.matrix() - Matrix::Identity(dim, dim);
    for (int a = 0; a < dim; ++a) {
        const AlgElement ua = AlgElement::basis_unit(A, a);
        rows.middleRows(static_cast<Eigen::Index>(dim) * (1 + 2 * a), dim) =
            LinearMapRep::left_mult(ua).matrix() -
            LinearMapRep::left_mult(et.apply(ua)).matrix();
        rows.middleRows(static_cast<Eigen::Index>(dim) * (2 + 2 * a), dim) =
            LinearMapRep::right_mult(ua).matrix() -
            LinearMapRep::right_mult(es.apply(ua)).matrix();
    }
    rows.bottomRows(dim) = et.matrix();
    rhs.tail(dim) = AlgElement::identity(A).to_vector();

    if (null_space(rows, 1e-10).cols() > 0)
        throw NonUniqueSolution("haar_projection: solution space not a point");
    double res = 0.0;
    const Vector sol = least_squares(rows, rhs, &res);
    if (res > 10 * tol) throw NoSolution("haar_projection: no solution");

    const AlgElement p = AlgElement::from_vector(A, sol);
    const AlgElement one = AlgElement::identity(A);
    if (residual(et.apply(p), one) > 10 * tol)
        throw NoSolution("haar_projection: eps_t normalization failed");
    if (residual(p * p, p) > 10 * tol || residual(w.star(p), p) > 10 * tol)
        throw NoSolution("haar_projection: solution is not a selfadjoint projection");
    return p;
}

LinearMapRep haar_measure(const WeakHopf& w_in, double tol) {
    // Solve in standardized coordinates, transport the functional back.
    const StandardizedWha sw = standardize_wha(w_in, tol);
    const WeakHopf& w = sw.w;
    const BlockAlgebra& A = w.A;
    const int dim = A.dim();
    const AlgElement d1 = w.delta_one();

    std::vector<AlgElement> dbasis;
    dbasis.reserve(static_cast<size_t>(dim));
    for (int a = 0; a < dim; ++a)
        dbasis.push_back(w.delta.apply(AlgElement::basis_unit(A, a)));

    // Coefficient extraction over pairs for (i (x) phi) applications.
    std::vector<std::pair<int, int>> split;
    const BlockAlgebra AA = tensor(A, A);
    split.reserve(static_cast<size_t>(AA.dim()));
    for (int t = 0; t < AA.dim(); ++t) split.push_back(tensor_basis_split(A, A, t));
    auto i_tensor_phi_matrix = [&](const AlgElement& z) {
        // Returns M with (i (x) phi)(z) = sum_d phi_d * column... as dim x dim:
        // row c, col d accumulates coefficient of e_c per phi(e_d).
        Matrix m = Matrix::Zero(dim, dim);
        const Vector v = z.to_vector();
        for (int t = 0; t < AA.dim(); ++t) {
            if (v(t) == Complex(0.0, 0.0)) continue;
            m(split[static_cast<size_t>(t)].first, split[static_cast<size_t>(t)].second) += v(t);
        }
        return m;
    };

    const Eigen::Index hom_rows =
        dim + static_cast<Eigen::Index>(dim) * dim * dim;
    Matrix sys(hom_rows + dim, dim);
    Vector rhs = Vector::Zero(hom_rows + dim);

    // phi o kappa = phi
    sys.topRows(dim) = (w.kappa.matrix() - Matrix::Identity(dim, dim)).transpose();

    // (i (x) phi)((1 (x) y)Delta(x)) = kappa((i (x) phi)(Delta(y)(1 (x) x)))
    const AlgElement one = AlgElement::identity(A);
    Eigen::Index row = dim;
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            const AlgElement ub = AlgElement::basis_unit(A, b);
            const AlgElement ua = AlgElement::basis_unit(A, a);
            const Matrix lhs = i_tensor_phi_matrix(tensor_elem(one, ub) * dbasis[static_cast<size_t>(a)]);
            const Matrix rhsm =
                w.kappa.matrix() *
                i_tensor_phi_matrix(dbasis[static_cast<size_t>(b)] * tensor_elem(one, ua));
            sys.middleRows(row, dim) = lhs - rhsm;
            row += dim;
        }
    }

    // (i (x) phi)(Delta(1)) = 1
    sys.middleRows(row, dim) = i_tensor_phi_matrix(d1);
    rhs.segment(row, dim) = one.to_vector();

    const Matrix kernel = null_space(sys, 1e-10);
    if (kernel.cols() > 0) throw NonUniqueSolution("haar_measure: solution space not a point");
    double res = 0.0;
    const Vector phi = least_squares(sys, rhs, &res);
    if (res > 10 * tol) throw NoSolution("haar_measure: system inconsistent");

    // Faithfulness and positivity of the Gram form phi(x* y).
    Matrix gram(dim, dim);
    for (int a = 0; a < dim; ++a) {
        const AlgElement xa = AlgElement::basis_unit(A, a).adjoint();
        for (int b = 0; b < dim; ++b) {
            const Vector prod = (xa * AlgElement::basis_unit(A, b)).to_vector();
            gram(a, b) = (phi.transpose() * prod)(0);
        }
    }
    {
        const Matrix sym = 0.5 * (gram + gram.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
        const double lmin = es.eigenvalues().minCoeff();
        const double lmax = std::max(1e-30, es.eigenvalues().maxCoeff());
        if (lmin < -tol * std::max(1.0, lmax))
            throw NoSolution("haar_measure: Gram form not positive");
        if (lmin < 1e-10 * std::max(1.0, lmax))
            throw NoSolution("haar_measure: Gram form degenerate (phi not faithful)");
    }

    const LinearMapRep phi_std = functional_from_row(A, phi.transpose());
    return phi_std.compose(sw.iso.forward);
}

WeakKacFlags is_weak_kac(const WeakHopf& w, double tol) {
    WeakKacFlags flags{};
    flags.kappa_involutive =
        residual(w.kappa.matrix() * w.kappa.matrix(),
                 Matrix(Matrix::Identity(w.A.dim(), w.A.dim()))) <= tol;
    const LinearMapRep phi = haar_measure(w, tol);
    double worst = 0.0;
    for (int a = 0; a < w.A.dim(); ++a)
        for (int b = 0; b < w.A.dim(); ++b) {
            const AlgElement ua = AlgElement::basis_unit(w.A, a);
            const AlgElement ub = AlgElement::basis_unit(w.A, b);
            worst = std::max(worst,
                             std::abs(functional_value(phi, ua * ub) -
                                      functional_value(phi, ub * ua)));
        }
    flags.phi_tracial = worst <= tol * std::max(1.0, phi.matrix().norm());
    return flags;
}

LinearMapRep antipode_inverse(const WeakHopf& w, double tol) { return w.kappa.inverse(tol); }

AlgElement f_in_cartan_coords(const WeakHopf& w, const CartanData& cartan, double tol) {
    const LinearMapRep id = LinearMapRep::identity(w.A);
    const AlgElement f = tensor_map(w.kappa, id).apply(w.delta_one());
    const BlockAlgebra& bt = cartan.recovered.structure;
    const BlockAlgebra btt = tensor(bt, bt);
    Matrix emb(f.to_vector().size(), btt.dim());
    for (int t = 0; t < btt.dim(); ++t) {
        const auto [u, v] = tensor_basis_split(bt, bt, t);
        emb.col(t) = tensor_elem(cartan.recovered.units[static_cast<size_t>(u)],
                                 cartan.recovered.units[static_cast<size_t>(v)])
                         .to_vector();
    }
    double res = 0.0;
    const Vector coords = least_squares(emb, f.to_vector(), &res);
    if (res > 100 * tol)
        throw StructureRecoveryFailed("f_in_cartan_coords: f not supported in A_t (x) A_t");
    return AlgElement::from_vector(btt, coords);
}

StructureReport check_f_separating(const WeakHopf& w, uint64_t seed, double tol) {
    const CartanData ct = cartan_target(w, seed, tol);
    const AlgElement f_t = f_in_cartan_coords(w, ct, tol);
    const TensorSquare ts(ct.recovered.structure);
    return is_separating_report(ts, f_t, tol);
}

}  // namespace wha
