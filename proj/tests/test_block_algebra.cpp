#include "doctest.h"
#include "test_helpers.hpp"

using namespace wha;
using wha::testing::random_element;
using wha::testing::random_strictly_positive;
using wha::testing::rng_for;

namespace {
const double kTol = 1e-12;
}

TEST_CASE("canonical basis ordering is blocks in order, row major") {
    const BlockAlgebra a({2, 3});
    CHECK(a.dim() == 13);
    CHECK(a.basis_offset(0, 0, 0) == 0);
    CHECK(a.basis_offset(0, 0, 1) == 1);
    CHECK(a.basis_offset(0, 1, 0) == 2);
    CHECK(a.basis_offset(1, 0, 0) == 4);
    CHECK(a.basis_offset(1, 2, 2) == 12);
    for (int t = 0; t < a.dim(); ++t) {
        const BasisIndex ix = a.basis_at(t);
        CHECK(a.basis_offset(ix.block, ix.row, ix.col) == t);
    }
}

TEST_CASE("vectorization round trip") {
    auto rng = rng_for(11);
    const BlockAlgebra a({2, 1, 3});
    const AlgElement x = random_element(a, rng);
    CHECK(residual(AlgElement::from_vector(a, x.to_vector()), x) < kTol);
}

TEST_CASE("multiplication: matrix-unit relation, unit law, scaling") {
    const BlockAlgebra m2({2});
    const AlgElement e12 = AlgElement::basis_unit(m2, 0, 0, 1);
    const AlgElement e21 = AlgElement::basis_unit(m2, 0, 1, 0);
    const AlgElement e11 = AlgElement::basis_unit(m2, 0, 0, 0);
    CHECK(residual(e12 * e21, e11) < kTol);

    auto rng = rng_for(1);
    const AlgElement x = random_element(m2, rng);
    CHECK(residual(x * AlgElement::identity(m2), x) < kTol);

    const AlgElement two_e11 = e11 * Complex(2.0, 0.0);
    CHECK(residual(two_e11 * two_e11, e11 * Complex(4.0, 0.0)) < kTol);
}

TEST_CASE("associativity and involution laws on random triples") {
    auto rng = rng_for(2);
    const BlockAlgebra a({2, 3});
    const GaugedInvolution inv{a, random_strictly_positive(a, rng)};
    for (int t = 0; t < 5; ++t) {
        const AlgElement x = random_element(a, rng);
        const AlgElement y = random_element(a, rng);
        const AlgElement z = random_element(a, rng);
        CHECK(residual((x * y) * z, x * (y * z)) < 1e-10);
        CHECK(residual(adjoint(x * y, inv), adjoint(y, inv) * adjoint(x, inv)) < 1e-10);
        CHECK(residual(adjoint(adjoint(x, inv), inv), x) < 1e-10);
    }
}

TEST_CASE("adjoint: standard and gauged examples") {
    const BlockAlgebra m2({2});
    const AlgElement e12 = AlgElement::basis_unit(m2, 0, 0, 1);
    const AlgElement e21 = AlgElement::basis_unit(m2, 0, 1, 0);
    CHECK(residual(adjoint(e12, GaugedInvolution::standard(m2)), e21) < kTol);

    // g = diag(2, 1/2): g e_{2,1} g^{-1} scales row 2 by 1/2 and column 1 by
    // 1/2, so the gauged adjoint of e_{1,2} is (1/4) e_{2,1}.
    AlgElement g = AlgElement::zero(m2);
    g.mat(0) << 2.0, 0.0, 0.0, 0.5;
    CHECK(residual(adjoint(e12, {m2, g}), e21 * Complex(0.25, 0.0)) < kTol);
}

TEST_CASE("tensor product shape and Kronecker placement") {
    const BlockAlgebra m2({2});
    const BlockAlgebra t = tensor(m2, m2);
    CHECK(t.blocks() == std::vector<int>{4});
    CHECK(t.dim() == 16);

    const AlgElement e11 = AlgElement::basis_unit(m2, 0, 0, 0);
    const AlgElement e22 = AlgElement::basis_unit(m2, 0, 1, 1);
    const AlgElement k = tensor_elem(e11, e22);
    Matrix expect = Matrix::Zero(4, 4);
    expect(1, 1) = 1.0;  // (row 0*2+1, col 0*2+1)
    CHECK(residual(k.mat(0), expect) < kTol);

    for (int j = 0; j < t.dim(); ++j) {
        const auto [p, q] = tensor_basis_split(m2, m2, j);
        CHECK(residual(tensor_elem(AlgElement::basis_unit(m2, p), AlgElement::basis_unit(m2, q)),
                       AlgElement::basis_unit(t, j)) < kTol);
    }
}

TEST_CASE("opposite embedding is the blockwise transpose") {
    const BlockAlgebra a({2, 3});
    const AlgElement e12 = AlgElement::basis_unit(a, 0, 0, 1);
    const AlgElement e21 = AlgElement::basis_unit(a, 0, 1, 0);
    CHECK(residual(opposite_embed(e12), e21) < kTol);
    CHECK(residual(opposite_embed(AlgElement::identity(a)), AlgElement::identity(a)) < kTol);

    auto rng = rng_for(3);
    const AlgElement x = random_element(a, rng);
    const AlgElement y = random_element(a, rng);
    CHECK(residual(opposite_embed(opposite_embed(x)), x) < kTol);
    CHECK(residual(opposite_embed(x * y), opposite_embed(y) * opposite_embed(x)) < 1e-10);
}

TEST_CASE("trace and conditional expectation onto the center") {
    const BlockAlgebra m2({2});
    const AlgElement e11 = AlgElement::basis_unit(m2, 0, 0, 0);
    CHECK(residual(E_center(e11), AlgElement::identity(m2) * Complex(0.5, 0.0)) < kTol);

    auto rng = rng_for(4);
    const BlockAlgebra a({2, 3});
    const AlgElement x = random_element(a, rng);
    CHECK(std::abs(trace_canonical(E_center(x)) - trace_canonical(x)) < 1e-10);
    CHECK(residual(E_center(E_center(x)), E_center(x)) < 1e-10);

    // central elements are fixed and factor out
    AlgElement z = AlgElement::zero(a);
    z.mat(0) = 2.0 * Matrix::Identity(2, 2);
    z.mat(1) = Complex(0.0, 1.0) * Matrix::Identity(3, 3);
    CHECK(residual(E_center(z), z) < kTol);
    CHECK(residual(E_center(z * x), z * E_center(x)) < 1e-10);

    // faithfulness on positives
    const AlgElement pos = x.adjoint() * x;
    const std::vector<double> sp = spectrum(E_center(pos));
    for (double v : sp) CHECK(v >= -1e-10);
    CHECK(std::abs(trace_canonical(E_center(pos))) > 1e-8);
}

TEST_CASE("spectral helpers") {
    const BlockAlgebra a({2, 3});
    const std::vector<double> ones = spectrum(AlgElement::identity(a));
    CHECK(ones == std::vector<double>{1, 1, 1, 1, 1});

    const BlockAlgebra m2({2});
    AlgElement d = AlgElement::zero(m2);
    d.mat(0) << 4.0, 0.0, 0.0, 9.0;
    AlgElement r = AlgElement::zero(m2);
    r.mat(0) << 2.0, 0.0, 0.0, 3.0;
    CHECK(residual(sqrt_positive(d), r) < 1e-10);

    auto rng = rng_for(5);
    const AlgElement g = random_strictly_positive(m2, rng);
    const AlgElement x = random_element(m2, rng);
    const AlgElement gh = sqrt_positive(g);
    const AlgElement once = invert(gh) * x * gh;
    const AlgElement twice = invert(gh) * once * gh;
    CHECK(residual(twice, invert(g) * x * g) < 1e-8);

    CHECK(is_strictly_positive(g));
    CHECK_FALSE(is_strictly_positive(AlgElement::zero(m2)));
    CHECK_THROWS_AS((void)invert(AlgElement::basis_unit(m2, 0, 0, 0)), Singular);
}

TEST_CASE("real_eigenvalues rejects genuinely complex spectra") {
    const BlockAlgebra m2({2});
    AlgElement rot = AlgElement::zero(m2);
    rot.mat(0) << 0.0, -1.0, 1.0, 0.0;  // eigenvalues +-i
    CHECK_THROWS_AS((void)real_eigenvalues(rot), NotHermitian);

    AlgElement upper = AlgElement::zero(m2);
    upper.mat(0) << 1.0, 5.0, 0.0, 2.0;  // non-Hermitian but real spectrum
    const std::vector<double> ev = real_eigenvalues(upper);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == doctest::Approx(1.0));
    CHECK(ev[1] == doctest::Approx(2.0));
}
