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

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "qpac/errors.hpp"
#include "qpac/tolerances.hpp"

namespace qpac {

using ComplexMatrix = Eigen::MatrixXcd;

/// Hard cap on Hilbert-space dimension; dense O(d^3) kernels stay fast
/// below it. Operations that grow dimension take it as a parameter.
inline constexpr Eigen::Index kMaxDimension = 256;

/// One named invariant check with its measured residual.
/// `pass` holds iff `residual <= tolerance`. Relative checks store the
/// residual already normalized, so the comparison is uniform.
struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

bool all_pass(std::span<const CheckResult> checks);

/// Throws ValidationError naming every failed check.
void require_pass(std::span<const CheckResult> checks,
                  const std::string &context);

// --- Raw-matrix invariant checks (also used for manifest validation) ---

CheckResult check_finite(const ComplexMatrix &m);
CheckResult check_hermitian(const ComplexMatrix &m);
CheckResult check_unit_trace(const ComplexMatrix &m);
CheckResult check_psd(const ComplexMatrix &m);
CheckResult check_projective(const ComplexMatrix &m);

std::vector<CheckResult> density_checks(const ComplexMatrix &m);
std::vector<CheckResult> povm_checks(std::span<const ComplexMatrix> elements,
                                     bool projective);

/// Square complex matrix validated to be Hermitian within tolerance.
/// The universal carrier for states, measurement elements, and
/// observables. Immutable after construction.
class HermitianOperator {
  public:
    explicit HermitianOperator(ComplexMatrix m);

    const ComplexMatrix &matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

  private:
    ComplexMatrix mat_;
};

/// Unit-trace, positive-semidefinite Hermitian operator: a quantum state.
class DensityOperator {
  public:
    explicit DensityOperator(HermitianOperator op);
    explicit DensityOperator(ComplexMatrix m)
        : DensityOperator(HermitianOperator(std::move(m))) {}

    const HermitianOperator &op() const { return op_; }
    const ComplexMatrix &matrix() const { return op_.matrix(); }
    Eigen::Index dim() const { return op_.dim(); }

  private:
    HermitianOperator op_;
};

/// Positive operator-valued measure: one PSD element per outcome label,
/// elements summing to the identity.
class Povm {
  public:
    Povm(std::vector<std::string> outcomes,
         std::vector<HermitianOperator> elements);

    std::size_t size() const { return elements_.size(); }
    Eigen::Index dim() const { return elements_.front().dim(); }
    const std::vector<std::string> &outcomes() const { return outcomes_; }
    const std::string &outcome(std::size_t v) const { return outcomes_[v]; }
    const HermitianOperator &element(std::size_t v) const {
        return elements_[v];
    }
    const std::vector<HermitianOperator> &elements() const {
        return elements_;
    }

  protected:
    // Used by ProjectivePovm to layer the idempotence check on top.
    struct unchecked_tag {};
    Povm(unchecked_tag, std::vector<std::string> outcomes,
         std::vector<HermitianOperator> elements);
    void validate(bool projective) const;

  private:
    std::vector<std::string> outcomes_;
    std::vector<HermitianOperator> elements_;
};

/// Sharp measurement: a POVM whose elements are orthogonal projectors.
class ProjectivePovm : public Povm {
  public:
    ProjectivePovm(std::vector<std::string> outcomes,
                   std::vector<HermitianOperator> elements);
};

/// Kronecker product A (x) B; index (i_a * d_b + i_b).
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Kronecker product of two Hermitian operators; rejects results whose
/// dimension would exceed `max_dim`.
HermitianOperator tensor(const HermitianOperator &a,
                         const HermitianOperator &b,
                         Eigen::Index max_dim = kMaxDimension);

// --- Small constructors used throughout ---

/// |k><k| on a dim-dimensional space.
ComplexMatrix basis_projector(Eigen::Index dim, Eigen::Index k);

/// Pure state |psi><psi|; the vector is normalized first.
DensityOperator pure_state(const Eigen::VectorXcd &psi);

/// Projective measurement in the computational basis, one outcome per
/// basis vector. Outcomes default to "0", "1", ...
ProjectivePovm basis_measurement(Eigen::Index dim,
                                 std::vector<std::string> outcomes = {});

/// Projective measurement whose element for label y projects onto the
/// span of the basis columns {basis.col(i) : labeling[i] == y}.
ProjectivePovm labeled_basis_measurement(const ComplexMatrix &basis,
                                         std::span<const std::size_t> labeling,
                                         std::vector<std::string> outcomes);

} // namespace qpac
