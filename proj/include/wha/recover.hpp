#pragma once

// Structure recovery: given a *-closed, multiplicatively closed subspace of a
// block algebra, find its Artin-Wedderburn shape and a concrete family of
// matrix units inside the ambient algebra.

#include <cstdint>
#include <vector>

#include "wha/linear_map.hpp"

namespace wha {

struct RecoveredStructure {
    BlockAlgebra structure;          // abstract block shape of the span
    std::vector<AlgElement> units;   // concrete e^g_{i,j} in the ambient algebra
    LinearMapRep embedding;          // structure -> ambient, column (g,i,j) = vec(units)
    Matrix basis;                    // orthonormal HS basis of the span (columns)

    // Express an ambient element in recovered coordinates; the residual of the
    // projection is returned through *residual_out when given.
    AlgElement to_coords(const AlgElement& x, double* residual_out = nullptr) const;
    AlgElement from_coords(const AlgElement& x) const;
};

// Randomized steps are driven by the seed; retries increment it, at most 8.
RecoveredStructure recover_matrix_units(const std::vector<AlgElement>& span, uint64_t seed = 1,
                                        double tol = 1e-8);

}  // namespace wha
