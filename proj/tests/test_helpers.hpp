#pragma once

#include <random>

#include "wha/block_algebra.hpp"

namespace wha::testing {

inline std::mt19937_64 rng_for(uint64_t seed) { return std::mt19937_64(seed); }

inline AlgElement random_element(const BlockAlgebra& a, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    Vector v(a.dim());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(d(rng), d(rng));
    return AlgElement::from_vector(a, v);
}

inline AlgElement random_strictly_positive(const BlockAlgebra& a, std::mt19937_64& rng) {
    const AlgElement x = random_element(a, rng);
    return x * x.adjoint() + AlgElement::identity(a) * Complex(0.5, 0.0);
}

// Random strictly positive gauge with E_center(g) = 1, the normalization the
// separating-element parametrization expects.
inline AlgElement random_gauge(const BlockAlgebra& a, std::mt19937_64& rng) {
    const AlgElement g0 = random_strictly_positive(a, rng);
    return g0 * invert(E_center(g0));
}

}  // namespace wha::testing
