#include "wha/separating.hpp"

namespace wha {

TensorSquare::TensorSquare(BlockAlgebra base)
    : base_(std::move(base)),
      ambient_(tensor(base_, base_)),
      op1_(tensor_map(transpose_map(base_), LinearMapRep::identity(base_))),
      multm_(mult_map_rep(base_)) {}

AlgElement TensorSquare::op_mul(const AlgElement& x, const AlgElement& y) const {
    return op1_.apply(op1_.apply(x) * op1_.apply(y));
}

AlgElement TensorSquare::op_adjoint(const AlgElement& x) const {
    // The first-leg switch is a *-isomorphism, so the opposite-product
    // adjoint coincides with the plain blockwise conjugate transpose.
    return x.adjoint();
}

AlgElement TensorSquare::mult_map(const AlgElement& x) const { return multm_.apply(x); }

AlgElement TensorSquare::embed(const AlgElement& first, const AlgElement& second) const {
    return tensor_elem(first, second);
}

AlgElement mult_map(const TensorSquare& ts, const AlgElement& x) { return ts.mult_map(x); }

AlgElement symmetric_e_value(const BlockAlgebra& n) {
    const BlockAlgebra amb = tensor(n, n);
    AlgElement e = AlgElement::zero(amb);
    for (int g = 0; g < n.num_blocks(); ++g) {
        const int ng = n.block_size(g);
        for (int i = 0; i < ng; ++i)
            for (int j = 0; j < ng; ++j)
                e = e + tensor_elem(AlgElement::basis_unit(n, g, i, j),
                                    AlgElement::basis_unit(n, g, j, i)) *
                            Complex(1.0 / ng, 0.0);
    }
    return e;
}

SeparatingElement symmetric_e(const BlockAlgebra& n) {
    return {n, symmetric_e_value(n), AlgElement::identity(n)};
}

StructureReport is_separating_report(const TensorSquare& ts, const AlgElement& f, double tol) {
    StructureReport r;
    r.tol = tol;
    const AlgElement one = AlgElement::identity(ts.base());
    r.add("mult_map_unit", residual(ts.mult_map(f), one));
    double worst = 0.0;
    for (int a = 0; a < ts.base().dim(); ++a) {
        const AlgElement ua = AlgElement::basis_unit(ts.base(), a);
        const AlgElement lhs = ts.op_mul(f, ts.embed(ua, one));
        const AlgElement rhs = ts.op_mul(f, ts.embed(one, ua));
        worst = std::max(worst, residual(lhs, rhs));
    }
    r.add("flip_relation", worst);
    return r;
}

bool is_separating(const TensorSquare& ts, const AlgElement& f, double tol) {
    return is_separating_report(ts, f, tol).pass();
}

SeparatingElement separating_from_gauge(const TensorSquare& ts, const AlgElement& g, double tol) {
    if (residual(E_center(g), AlgElement::identity(ts.base())) > tol)
        throw GaugeNotNormalized("separating_from_gauge: E_center(g) != 1");
    const AlgElement e = symmetric_e_value(ts.base());
    const AlgElement f = ts.op_mul(ts.embed(AlgElement::identity(ts.base()), g), e);
    return {ts.base(), f, g};
}

AlgElement gauge_from_separating(const TensorSquare& ts, const AlgElement& f, double tol) {
    const auto rep = is_separating_report(ts, f, tol);
    if (!rep.pass()) throw NotSeparating("gauge_from_separating: input is not separating");
    const BlockAlgebra& n = ts.base();
    const Vector coeff = f.to_vector();
    AlgElement g = AlgElement::zero(n);
    for (int t = 0; t < ts.ambient().dim(); ++t) {
        const Complex c = coeff(t);
        if (c == Complex(0.0, 0.0)) continue;
        const auto [a, b] = tensor_basis_split(n, n, t);
        g = g + (AlgElement::basis_unit(n, b) * AlgElement::basis_unit(n, a)) * c;
    }
    return g;
}

StructureReport check_projection_characterizations(const TensorSquare& ts, const AlgElement& f,
                                                   double tol) {
    StructureReport r;
    r.tol = tol;
    const AlgElement e = symmetric_e_value(ts.base());
    r.add("fe_equals_f", residual(ts.op_mul(f, e), f));
    r.add("ef_equals_e", residual(ts.op_mul(e, f), e));
    r.add("f_idempotent", residual(ts.op_mul(f, f), f));
    return r;
}

bool is_orthogonal_in_gauged(const TensorSquare& ts, const AlgElement& f, const AlgElement& g,
                             double tol) {
    if (!is_strictly_positive(g, tol)) throw NotPositive("is_orthogonal_in_gauged: g must be strictly positive");
    if (residual(E_center(g), AlgElement::identity(ts.base())) > tol)
        throw GaugeNotNormalized("is_orthogonal_in_gauged: E_center(g) != 1");
    const AlgElement gh = sqrt_positive(g, tol);
    const AlgElement gh_inv = invert(gh);
    const AlgElement h = tensor_elem(gh, gh);
    const AlgElement h_inv = tensor_elem(gh_inv, gh_inv);
    const AlgElement gauged_adj = ts.op_mul(ts.op_mul(h, ts.op_adjoint(f)), h_inv);
    return residual(gauged_adj, f) <= tol;
}

}  // namespace wha
