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

#include "qpac/eigenbasis.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace qpac {

namespace {

// Outcome indices are consecutive integers, so restricted eigenvalues of
// the label operator sum_y y*M_y cluster around integers; any gap wider
// than this splits a block.
constexpr double kBlockGap = 0.5;

struct Block {
    Eigen::Index offset;
    Eigen::Index size;
};

Eigen::SelfAdjointEigenSolver<ComplexMatrix>
solve_hermitian(const ComplexMatrix &m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigensolver did not converge");
    }
    return es;
}

} // namespace

EigenDecomposition eig_hermitian(const HermitianOperator &a) {
    auto es = solve_hermitian(a.matrix());
    return {es.eigenvalues(), es.eigenvectors()};
}

bool matrices_commute(const ComplexMatrix &a, const ComplexMatrix &b) {
    const double res = (a * b - b * a).norm();
    return res <= tol::commute * a.norm() * b.norm();
}

bool povms_commute(const Povm &a, const Povm &b) {
    if (a.dim() != b.dim()) {
        throw ValidationError("povms_commute: dimension mismatch");
    }
    for (std::size_t v = 0; v < a.size(); ++v) {
        for (std::size_t w = 0; w < b.size(); ++w) {
            if (!matrices_commute(a.element(v).matrix(),
                                  b.element(w).matrix())) {
                return false;
            }
        }
    }
    return true;
}

SimultaneousEigenbasis
simultaneous_eigenbasis(std::span<const ProjectivePovm> family) {
    if (family.empty()) {
        throw ValidationError("simultaneous_eigenbasis: empty family");
    }
    const Eigen::Index d = family.front().dim();
    for (const auto &m : family) {
        if (m.dim() != d) {
            throw ValidationError(
                "simultaneous_eigenbasis: dimension mismatch in family");
        }
    }
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            if (!povms_commute(family[i], family[j])) {
                std::ostringstream os;
                os << "simultaneous_eigenbasis: measurements " << i
                   << " and " << j << " are not compatible";
                throw ValidationError(os.str());
            }
        }
    }

    ComplexMatrix basis = ComplexMatrix::Identity(d, d);
    std::vector<Block> blocks{{0, d}};

    for (const auto &m : family) {
        // Label operator sum_y y*M_y: its eigenspaces are exactly the
        // projector ranges, with integer eigenvalues.
        ComplexMatrix label_op = ComplexMatrix::Zero(d, d);
        for (std::size_t y = 0; y < m.size(); ++y) {
            label_op += static_cast<double>(y) * m.element(y).matrix();
        }

        std::vector<Block> refined;
        for (const Block &blk : blocks) {
            if (blk.size == 1) {
                refined.push_back(blk);
                continue;
            }
            auto cols = basis.middleCols(blk.offset, blk.size);
            ComplexMatrix restricted = cols.adjoint() * label_op * cols;
            restricted = (restricted + restricted.adjoint()) / 2.0;
            auto es = solve_hermitian(restricted);
            cols = (cols * es.eigenvectors()).eval();

            const Eigen::VectorXd &vals = es.eigenvalues();
            Eigen::Index start = 0;
            for (Eigen::Index i = 1; i <= blk.size; ++i) {
                if (i == blk.size || vals(i) - vals(start) > kBlockGap) {
                    refined.push_back({blk.offset + start, i - start});
                    start = i;
                }
            }
        }
        blocks = std::move(refined);
    }

    // Assign each basis vector to the unique projector range it lies in,
    // and verify every conjugated element really is diagonal.
    SimultaneousEigenbasis out;
    out.basis = std::move(basis);
    out.outcome_table.assign(d, std::vector<std::size_t>(family.size()));
    for (std::size_t j = 0; j < family.size(); ++j) {
        const auto &m = family[j];
        std::vector<char> assigned(d, 0);
        for (std::size_t y = 0; y < m.size(); ++y) {
            const ComplexMatrix &el = m.element(y).matrix();
            const ComplexMatrix conj = out.basis.adjoint() * el * out.basis;
            const double offdiag = std::sqrt(std::max(
                0.0, conj.squaredNorm() - conj.diagonal().squaredNorm()));
            if (offdiag > tol::diagonal * std::max(el.norm(), 1.0)) {
                std::ostringstream os;
                os << "simultaneous_eigenbasis: element " << y
                   << " of measurement " << j
                   << " is not diagonal in the computed basis (residual "
                   << offdiag << ")";
                throw ValidationError(os.str());
            }
            for (Eigen::Index k = 0; k < d; ++k) {
                const double w = conj(k, k).real();
                if (std::abs(w - 1.0) <= tol::outcome_assignment) {
                    if (assigned[k]) {
                        throw ValidationError(
                            "simultaneous_eigenbasis: ambiguous outcome "
                            "assignment");
                    }
                    assigned[k] = 1;
                    out.outcome_table[k][j] = y;
                } else if (std::abs(w) > tol::outcome_assignment) {
                    std::ostringstream os;
                    os << "simultaneous_eigenbasis: basis vector " << k
                       << " has projection weight " << w
                       << " on element " << y << " of measurement " << j;
                    throw ValidationError(os.str());
                }
            }
        }
        for (Eigen::Index k = 0; k < d; ++k) {
            if (!assigned[k]) {
                throw ValidationError("simultaneous_eigenbasis: basis "
                                      "vector not assigned to any outcome");
            }
        }
    }
    return out;
}

} // namespace qpac
