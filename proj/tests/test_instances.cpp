#include "doctest.h"
#include "test_helpers.hpp"
#include "wha/canonical.hpp"
#include "wha/instances.hpp"

using namespace wha;

TEST_CASE("groupoid constructors validate") {
    CHECK_NOTHROW(FiniteGroupoid::discrete(3).validate());
    CHECK_NOTHROW(FiniteGroupoid::pair_groupoid(3).validate());
    CHECK_NOTHROW(FiniteGroupoid::cyclic_group(4).validate());

    FiniteGroupoid broken = FiniteGroupoid::cyclic_group(3);
    broken.compose[1][1] = 0;  // 1 + 1 != 0 mod 3
    CHECK_THROWS_AS(broken.validate(), InvalidGroupoid);

    FiniteGroupoid bad_inv = FiniteGroupoid::pair_groupoid(2);
    bad_inv.inverse[1] = 1;
    CHECK_THROWS_AS(bad_inv.validate(), InvalidGroupoid);
}

TEST_CASE("pair groupoid structures") {
    const WeakHopf w1 = pair_groupoid_wha(1);
    CHECK(w1.A.dim() == 1);
    CHECK(check_axioms(w1).pass());

    const WeakHopf w2 = pair_groupoid_wha(2);
    CHECK(check_axioms(w2).pass());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const AlgElement e = AlgElement::basis_unit(w2.A, 0, i, j);
            CHECK(residual(w2.delta.apply(e), tensor_elem(e, e)) < 1e-12);
            CHECK(residual(w2.kappa.apply(e), AlgElement::basis_unit(w2.A, 0, j, i)) < 1e-12);
            CHECK(std::abs(functional_value(w2.eps, e) - Complex(1.0, 0.0)) < 1e-12);
        }

    const WeakKacFlags f3 = is_weak_kac(pair_groupoid_wha(3));
    CHECK(f3.kappa_involutive);
    CHECK(f3.phi_tracial);
}

TEST_CASE("function algebras of groupoids") {
    const WeakHopf z2 = function_algebra_wha(FiniteGroupoid::cyclic_group(2));
    CHECK(z2.A.blocks() == std::vector<int>{1, 1});
    CHECK(check_axioms(z2).pass());

    const WeakHopf disc = function_algebra_wha(FiniteGroupoid::discrete(2));
    CHECK(disc.A.dim() == 2);
    // delta is diagonal: Delta(d_i) = d_i (x) d_i
    for (int i = 0; i < 2; ++i) {
        const AlgElement d = AlgElement::basis_unit(disc.A, i);
        CHECK(residual(disc.delta.apply(d), tensor_elem(d, d)) < 1e-12);
    }

    const WeakHopf pairs = function_algebra_wha(FiniteGroupoid::pair_groupoid(2));
    CHECK(pairs.A.dim() == 4);
    CHECK(check_axioms(pairs).pass());
    const CartanData ct = cartan_target(pairs);
    for (int b : ct.recovered.structure.blocks()) CHECK(b == 1);  // abelian base
}

TEST_CASE("opposite-tensor instances") {
    const WeakHopf triv = op_tensor_wha(BlockAlgebra({1}, "C"));
    CHECK(triv.A.dim() == 1);
    CHECK(check_axioms(triv).pass());

    const WeakHopf c2 = op_tensor_wha(BlockAlgebra({1, 1}, "C2"));
    CHECK(c2.A.dim() == 4);
    CHECK(check_axioms(c2).pass());

    const WeakHopf m2 = op_tensor_wha(BlockAlgebra({2}, "M2"));
    CHECK(m2.A.dim() == 16);
    CHECK(check_axioms(m2).pass());
    CHECK(cartan_target(m2).recovered.structure.blocks() == std::vector<int>{2});
    CHECK(residual(canonical_element(m2).q, AlgElement::identity(m2.A)) < 1e-9);
    const WeakKacFlags f = is_weak_kac(m2);
    CHECK(f.kappa_involutive);
    CHECK(f.phi_tracial);
}

TEST_CASE("every generator output clears the full validation gate") {
    for (const WeakHopf& w : {pair_groupoid_wha(2),
                              function_algebra_wha(FiniteGroupoid::cyclic_group(3)),
                              function_algebra_wha(FiniteGroupoid::discrete(3)),
                              op_tensor_wha(BlockAlgebra({2}, "M2"))}) {
        CHECK(check_axioms(w).pass());
        CHECK(check_f_separating(w).pass());
        CHECK_NOTHROW((void)haar_projection(w));
        CHECK_NOTHROW((void)haar_measure(w));
        CHECK_NOTHROW((void)canonical_element(w));
    }
}
