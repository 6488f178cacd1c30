#include <algorithm>
#include <set>

#include "doctest.h"
#include "test_helpers.hpp"
#include "wha/canonical.hpp"
#include "wha/instances.hpp"

using namespace wha;

namespace {

// An element of the base given by a diagonal in recovered A_t coordinates.
AlgElement base_diag(const CartanData& ct, const std::vector<double>& diag) {
    const BlockAlgebra& bt = ct.recovered.structure;
    AlgElement k_t = AlgElement::zero(bt);
    size_t at = 0;
    for (int g = 0; g < bt.num_blocks(); ++g)
        for (int i = 0; i < bt.block_size(g); ++i)
            k_t.mat(g)(i, i) = diag[at++];
    return ct.recovered.from_coords(k_t);
}

bool spectra_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

}  // namespace

TEST_CASE("q = 1 on every shipped undeformed instance") {
    for (const WeakHopf& w : {pair_groupoid_wha(2), pair_groupoid_wha(3),
                              function_algebra_wha(FiniteGroupoid::cyclic_group(3)),
                              function_algebra_wha(FiniteGroupoid::pair_groupoid(2)),
                              op_tensor_wha(BlockAlgebra({2}, "M2")),
                              op_tensor_wha(BlockAlgebra({1, 1}, "C2"))}) {
        const CanonicalElement ce = canonical_element(w);
        CHECK(residual(ce.q, AlgElement::identity(w.A)) < 1e-9);
        for (double v : ce.spectrum) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("kappa squared is inner conjugation by q on the generated base algebra") {
    for (const WeakHopf& w :
         {pair_groupoid_wha(2), op_tensor_wha(BlockAlgebra({2}, "M2"))}) {
        const CanonicalElement ce = canonical_element(w);
        CHECK(check_kappa_squared_inner(w, ce.q).pass());
    }
}

TEST_CASE("admissibility: q always, an explicit diagonal, and rejections") {
    const WeakHopf w = op_tensor_wha(BlockAlgebra({2}, "M2"));
    const CanonicalElement ce = canonical_element(w);
    CHECK(is_admissible(w, ce.q));

    // k = diag(2, 2/3) in base coordinates: (1/2 + 3/2)/2 = 1
    const AlgElement k = base_diag(ce.base, {2.0, 2.0 / 3.0});
    CHECK(is_admissible(w, k));

    CHECK_FALSE(is_admissible(w, base_diag(ce.base, {2.0, 0.5})));   // E_Z(k^{-1}q) != 1
    CHECK_FALSE(is_admissible(w, base_diag(ce.base, {1.0, -1.0})));  // not positive
    CHECK_FALSE(is_admissible(w, AlgElement::basis_unit(w.A, 0)));   // not in the base
}

TEST_CASE("the sampler refuses abelian bases") {
    CHECK_THROWS_AS((void)sample_admissible(pair_groupoid_wha(2), 1), AbelianBaseOnlyTrivial);
    CHECK_THROWS_AS((void)sample_admissible(op_tensor_wha(BlockAlgebra({1, 1}, "C2")), 1),
                    AbelianBaseOnlyTrivial);
}

TEST_CASE("sampled k: admissible, commutes with q iff kappa^2 fixes it") {
    const WeakHopf w = op_tensor_wha(BlockAlgebra({2}, "M2"));
    const CanonicalElement ce = canonical_element(w);
    for (uint64_t seed : {0ull, 3ull, 9ull}) {
        const AdmissibleK k = sample_admissible(w, seed);
        CHECK(is_admissible(w, k.k));
        CHECK(residual(k.k * ce.q, ce.q * k.k) < 1e-9);
        CHECK(residual(w.kappa.apply(w.kappa.apply(k.k)), k.k) < 1e-8);
        double total = 0.0;
        for (double v : k.spectrum_kinv_q) total += v;
        CHECK(total == doctest::Approx(2.0).epsilon(1e-9));
    }
    // converse direction: a base element not commuting with q after deformation
    const WeakHopf d = deform(w, sample_admissible(w, 4).k);
    const CanonicalElement dce = canonical_element(d);
    const CartanData& ct = dce.base;
    const AlgElement off = ct.recovered.from_coords(
        AlgElement::basis_unit(ct.recovered.structure, 0, 0, 1) +
        AlgElement::basis_unit(ct.recovered.structure, 0, 1, 0));
    const bool commutes = residual(off * dce.q, dce.q * off) < 1e-9;
    const bool fixed = residual(d.kappa.apply(d.kappa.apply(off)), off) < 1e-8;
    CHECK(commutes == fixed);
}

TEST_CASE("deform by k = 1 is the identity when q = 1") {
    const WeakHopf w = op_tensor_wha(BlockAlgebra({2}, "M2"));
    const WeakHopf d = deform(w, AlgElement::identity(w.A));
    CHECK(d.delta.distance(w.delta) < 1e-12);
    CHECK(d.kappa.distance(w.kappa) < 1e-12);
    CHECK(d.eps.distance(w.eps) < 1e-12);
}

TEST_CASE("explicit deformation: spectrum {1/2, 3/2} and non-involutive base antipode") {
    const WeakHopf w = op_tensor_wha(BlockAlgebra({2}, "M2"));
    const CanonicalElement ce = canonical_element(w);
    const AlgElement k = base_diag(ce.base, {2.0, 2.0 / 3.0});
    const WeakHopf d = deform(w, k);

    const std::vector<double> spec = spectrum_invariant(d);
    REQUIRE(spec.size() == 2);
    CHECK(spec[0] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(spec[1] == doctest::Approx(1.5).epsilon(1e-8));

    // kappa_k^2 is not the identity on the base
    const AlgElement x = ce.base.recovered.from_coords(
        AlgElement::basis_unit(ce.base.recovered.structure, 0, 0, 1));
    CHECK(residual(d.kappa.apply(d.kappa.apply(x)), x) > 1e-4);

    // and the canonical element controls it by conjugation
    const CanonicalElement dce = canonical_element(d);
    CHECK(check_kappa_squared_inner(d, dce.q).pass());
}

TEST_CASE("spectrum invariants distinguish deformations") {
    const WeakHopf w = op_tensor_wha(BlockAlgebra({2}, "M2"));
    const CanonicalElement ce = canonical_element(w);
    const WeakHopf d1 = deform(w, base_diag(ce.base, {2.0, 2.0 / 3.0}));
    const WeakHopf d2 = deform(w, base_diag(ce.base, {4.0, 4.0 / 7.0}));
    const std::vector<double> s1 = spectrum_invariant(d1);
    const std::vector<double> s2 = spectrum_invariant(d2);
    CHECK(spectra_close(s1, {0.5, 1.5}, 1e-8));
    CHECK(spectra_close(s2, {0.25, 1.75}, 1e-8));
    CHECK_FALSE(spectra_close(s1, s2, 1e-6));
}

TEST_CASE("deform_to_involutive_base restores an involutive antipode on the base") {
    const WeakHopf w = op_tensor_wha(BlockAlgebra({2}, "M2"));
    const WeakHopf d = deform(w, sample_admissible(w, 11).k);
    const WeakHopf fixed = deform_to_involutive_base(d);
    const std::vector<double> spec = spectrum_invariant(fixed);
    for (double v : spec) CHECK(v == doctest::Approx(1.0).epsilon(1e-8));

    const CartanData ct = cartan_target(fixed);
    for (const AlgElement& u : ct.recovered.units)
        CHECK(residual(fixed.kappa.apply(fixed.kappa.apply(u)), u) < 1e-8);
}

TEST_CASE("subspace gap") {
    Matrix q1(3, 1), q2(3, 1), q3(3, 1);
    q1 << 1, 0, 0;
    q2 << 0, 1, 0;
    q3 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0;
    CHECK(subspace_gap(q1, q1) < 1e-14);
    CHECK(subspace_gap(q1, q2) == doctest::Approx(1.0));
    CHECK(subspace_gap(q1, q3) == doctest::Approx(std::sqrt(0.5)));
    CHECK(std::isinf(subspace_gap(q1, Matrix::Identity(3, 2))));
}
