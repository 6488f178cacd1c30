#include "doctest.h"
#include "test_helpers.hpp"
#include "wha/separating.hpp"

using namespace wha;
using wha::testing::random_element;
using wha::testing::random_gauge;
using wha::testing::rng_for;

namespace {

AlgElement unit2(const BlockAlgebra& m2, int i, int j) {
    return AlgElement::basis_unit(m2, 0, i, j);
}

}  // namespace

TEST_CASE("mult_map examples") {
    const BlockAlgebra m2({2});
    const TensorSquare ts(m2);
    const AlgElement one = AlgElement::identity(m2);
    CHECK(residual(ts.mult_map(tensor_elem(one, one)), one) < 1e-12);
    CHECK(residual(ts.mult_map(symmetric_e_value(m2)), one) < 1e-12);

    const AlgElement x = tensor_elem(unit2(m2, 0, 0), unit2(m2, 0, 1)) +
                         tensor_elem(unit2(m2, 1, 1), unit2(m2, 1, 0));
    CHECK(residual(ts.mult_map(x), unit2(m2, 0, 1) + unit2(m2, 1, 0)) < 1e-12);
}

TEST_CASE("symmetric element: explicit expansions") {
    const BlockAlgebra c({1});
    CHECK(residual(symmetric_e_value(c),
                   tensor_elem(AlgElement::identity(c), AlgElement::identity(c))) < 1e-12);

    const BlockAlgebra m2({2});
    AlgElement expect = AlgElement::zero(tensor(m2, m2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            expect = expect + tensor_elem(unit2(m2, i, j), unit2(m2, j, i)) * Complex(0.5, 0.0);
    CHECK(residual(symmetric_e_value(m2), expect) < 1e-12);
}

TEST_CASE("e is the self-adjoint idempotent of the opposite-tensor product") {
    for (const BlockAlgebra& n : {BlockAlgebra({2}), BlockAlgebra({2, 3})}) {
        const TensorSquare ts(n);
        const AlgElement e = symmetric_e_value(n);
        CHECK(residual(ts.op_mul(e, e), e) < 1e-12);
        CHECK(residual(ts.op_adjoint(e), e) < 1e-12);
    }
}

TEST_CASE("is_separating: e passes, 1 (x) 1 fails, the 2e_{1,1} gauge passes") {
    const BlockAlgebra m2({2});
    const TensorSquare ts(m2);
    CHECK(is_separating(ts, symmetric_e_value(m2)));
    CHECK_FALSE(is_separating(ts, ts.one()));

    // f = (1 (x) 2e_{1,1}) e; in stored coordinates e_{1,1} (x) e_{1,1} +
    // e_{2,1} (x) e_{1,2}.
    const AlgElement f = tensor_elem(unit2(m2, 0, 0), unit2(m2, 0, 0)) +
                         tensor_elem(unit2(m2, 1, 0), unit2(m2, 0, 1));
    CHECK(is_separating(ts, f));
    const AlgElement g = unit2(m2, 0, 0) * Complex(2.0, 0.0);
    CHECK(residual(separating_from_gauge(ts, g).value, f) < 1e-12);
}

TEST_CASE("separating_from_gauge examples and normalization guard") {
    const BlockAlgebra m2({2});
    const TensorSquare ts(m2);
    CHECK(residual(separating_from_gauge(ts, AlgElement::identity(m2)).value,
                   symmetric_e_value(m2)) < 1e-12);

    // Remark-1.6 family with n = 2: g = 1 + e_{1,1} - e_{2,2}.
    const AlgElement g = AlgElement::identity(m2) + unit2(m2, 0, 0) - unit2(m2, 1, 1);
    const SeparatingElement f = separating_from_gauge(ts, g);
    CHECK(is_separating(ts, f.value));
    CHECK(residual(f.value, symmetric_e_value(m2)) > 0.1);
    CHECK(residual(ts.mult_map(f.value), AlgElement::identity(m2)) < 1e-12);

    CHECK_THROWS_AS((void)separating_from_gauge(ts, unit2(m2, 0, 0)), GaugeNotNormalized);
}

TEST_CASE("gauge_from_separating: examples and round trips") {
    const BlockAlgebra m2({2});
    const TensorSquare ts(m2);
    CHECK(residual(gauge_from_separating(ts, symmetric_e_value(m2)),
                   AlgElement::identity(m2)) < 1e-12);

    const AlgElement f = tensor_elem(unit2(m2, 0, 0), unit2(m2, 0, 0)) +
                         tensor_elem(unit2(m2, 1, 0), unit2(m2, 0, 1));
    CHECK(residual(gauge_from_separating(ts, f), unit2(m2, 0, 0) * Complex(2.0, 0.0)) < 1e-12);

    auto rng = rng_for(21);
    for (const BlockAlgebra& n : {BlockAlgebra({2}), BlockAlgebra({2, 3}), BlockAlgebra({1, 1})}) {
        const TensorSquare tsn(n);
        for (int t = 0; t < 5; ++t) {
            const AlgElement g = random_gauge(n, rng);
            const AlgElement fv = separating_from_gauge(tsn, g).value;
            CHECK(residual(gauge_from_separating(tsn, fv), g) < 1e-9);
        }
    }
    CHECK_THROWS_AS((void)gauge_from_separating(ts, ts.one()), NotSeparating);
}

TEST_CASE("projection characterizations match separating verdicts") {
    const BlockAlgebra m2({2});
    const TensorSquare ts(m2);
    const AlgElement e = symmetric_e_value(m2);
    CHECK(check_projection_characterizations(ts, e, 1e-10).pass());

    const AlgElement f =
        separating_from_gauge(ts, unit2(m2, 0, 0) * Complex(2.0, 0.0)).value;
    CHECK(check_projection_characterizations(ts, f, 1e-10).pass());
    CHECK(residual(ts.op_adjoint(f), f) > 0.1);  // not orthogonal for the standard involution

    const AlgElement half_e = e * Complex(0.5, 0.0);
    const auto rep = check_projection_characterizations(ts, half_e, 1e-10);
    CHECK_FALSE(rep.pass());
    CHECK(rep.residual_of("f_idempotent") > 1e-10);
}

TEST_CASE("four-way equivalence on random separating and perturbed candidates") {
    auto rng = rng_for(22);
    const BlockAlgebra n({2, 1});
    const TensorSquare ts(n);
    for (int t = 0; t < 10; ++t) {
        const AlgElement f = separating_from_gauge(ts, random_gauge(n, rng)).value;
        CHECK(is_separating(ts, f));
        CHECK(check_projection_characterizations(ts, f, 1e-8).pass());

        const AlgElement bad = f + random_element(tensor(n, n), rng) * Complex(0.01, 0.0);
        CHECK_FALSE(is_separating(ts, bad));
        CHECK_FALSE(check_projection_characterizations(ts, bad, 1e-8).pass());
    }
}

TEST_CASE("m(ey) = m(y) for random y") {
    auto rng = rng_for(23);
    const BlockAlgebra n({2, 3});
    const TensorSquare ts(n);
    const AlgElement e = symmetric_e_value(n);
    for (int t = 0; t < 20; ++t) {
        const AlgElement y = random_element(tensor(n, n), rng);
        CHECK(residual(ts.mult_map(ts.op_mul(e, y)), ts.mult_map(y)) < 1e-9);
    }
}

TEST_CASE("injectivity: n -> e (1 (x) n) has full column rank") {
    for (const BlockAlgebra& n : {BlockAlgebra({2}), BlockAlgebra({2, 3})}) {
        const TensorSquare ts(n);
        const AlgElement e = symmetric_e_value(n);
        const AlgElement one = AlgElement::identity(n);
        Matrix m(tensor(n, n).dim(), n.dim());
        for (int j = 0; j < n.dim(); ++j)
            m.col(j) = ts.op_mul(e, ts.embed(one, AlgElement::basis_unit(n, j))).to_vector();
        CHECK(null_space(m, 1e-10).cols() == 0);
    }
}

TEST_CASE("e is the only self-adjoint separating element") {
    auto rng = rng_for(24);
    const BlockAlgebra n({2, 1});
    const TensorSquare ts(n);
    const AlgElement e = symmetric_e_value(n);
    for (int t = 0; t < 10; ++t) {
        const AlgElement g = random_gauge(n, rng);
        const AlgElement f = separating_from_gauge(ts, g).value;
        if (residual(g, AlgElement::identity(n)) > 1e-6)
            CHECK(residual(ts.op_adjoint(f), f) > 1e-8);
        else
            CHECK(residual(f, e) < 1e-8);
    }
}

TEST_CASE("gauged orthogonality holds exactly for the matching gauge") {
    const BlockAlgebra m2({2});
    const TensorSquare ts(m2);
    CHECK(is_orthogonal_in_gauged(ts, symmetric_e_value(m2), AlgElement::identity(m2)));

    AlgElement g = AlgElement::zero(m2);
    g.mat(0) << 1.5, 0.0, 0.0, 0.5;
    const AlgElement f = separating_from_gauge(ts, g).value;
    CHECK(is_orthogonal_in_gauged(ts, f, g));
    CHECK_FALSE(is_orthogonal_in_gauged(ts, symmetric_e_value(m2), g));

    auto rng = rng_for(25);
    for (int t = 0; t < 10; ++t) {
        const AlgElement h = random_gauge(m2, rng);
        const AlgElement fh = separating_from_gauge(ts, h).value;
        CHECK(is_orthogonal_in_gauged(ts, fh, h));
        if (residual(h, g) > 1e-6) CHECK_FALSE(is_orthogonal_in_gauged(ts, fh, g));
    }
}
