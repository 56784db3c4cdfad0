// Copyright 2026 qpac developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

#include "qpac/operators.hpp"

namespace qpac {

struct EigenDecomposition {
    Eigen::VectorXd eigenvalues; // real, ascending
    ComplexMatrix eigenvectors;  // unitary, columns aligned with values
};

/// A = U diag(lambda) U^dagger. Throws if the solver fails to converge.
EigenDecomposition eig_hermitian(const HermitianOperator &a);

/// True iff ||AB - BA||_F <= tol_commute * ||A||_F * ||B||_F.
bool matrices_commute(const ComplexMatrix &a, const ComplexMatrix &b);

/// True iff every element of `a` commutes with every element of `b`.
bool povms_commute(const Povm &a, const Povm &b);

/// Orthonormal basis diagonalizing every measurement of a commuting
/// projective family, with the outcome each basis vector maps to under
/// each measurement.
struct SimultaneousEigenbasis {
    ComplexMatrix basis; // columns are the shared eigenvectors
    // [basis vector k][measurement j] -> outcome index of measurement j
    std::vector<std::vector<std::size_t>> outcome_table;
};

/// Computes a shared eigenbasis for a family of mutually commuting sharp
/// measurements by recursive block diagonalization: diagonalize the first
/// measurement, then refine each eigenspace with the next, and so on.
/// Degenerate blocks stay unresolved until a later measurement splits
/// them, so no perturbation is ever needed.
///
/// Throws ValidationError if the family does not commute pairwise, if a
/// basis vector's projection weight onto some element is not within
/// tolerance of 0 or 1 (ambiguous outcome), or if a resulting conjugated
/// element fails the diagonality tolerance.
SimultaneousEigenbasis
simultaneous_eigenbasis(std::span<const ProjectivePovm> family);

} // namespace qpac
