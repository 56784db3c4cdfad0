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

#include "qpac/operators.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>
#include <utility>

namespace qpac {

namespace {

double rel_scale(const ComplexMatrix &m) { return std::max(m.norm(), 1.0); }

void require_square(const ComplexMatrix &m, const std::string &context) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << context << ": expected a nonempty square matrix, got "
           << m.rows() << "x" << m.cols();
        throw ValidationError(os.str());
    }
}

double min_eigenvalue(const ComplexMatrix &m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m,
                                                    Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigensolver did not converge");
    }
    return es.eigenvalues()(0);
}

} // namespace

bool all_pass(std::span<const CheckResult> checks) {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult &c) { return c.pass; });
}

void require_pass(std::span<const CheckResult> checks,
                  const std::string &context) {
    if (all_pass(checks)) {
        return;
    }
    std::ostringstream os;
    os << context << ": failed checks:";
    for (const auto &c : checks) {
        if (!c.pass) {
            os << " " << c.name << " (residual " << c.residual
               << " > tolerance " << c.tolerance << ")";
        }
    }
    throw ValidationError(os.str());
}

CheckResult check_finite(const ComplexMatrix &m) {
    const bool ok = m.allFinite();
    return {"finite", ok ? 0.0 : std::numeric_limits<double>::infinity(), 0.0,
            ok};
}

CheckResult check_hermitian(const ComplexMatrix &m) {
    const double res = (m - m.adjoint()).norm() / rel_scale(m);
    return {"hermitian", res, tol::hermitian, res <= tol::hermitian};
}

CheckResult check_unit_trace(const ComplexMatrix &m) {
    const double res = std::abs(m.trace() - std::complex<double>(1.0, 0.0));
    return {"unit_trace", res, tol::trace, res <= tol::trace};
}

CheckResult check_psd(const ComplexMatrix &m) {
    const double res = std::max(0.0, -min_eigenvalue(m));
    return {"psd", res, tol::psd, res <= tol::psd};
}

CheckResult check_projective(const ComplexMatrix &m) {
    const double res = (m * m - m).norm() / rel_scale(m);
    return {"projective", res, tol::projector, res <= tol::projector};
}

std::vector<CheckResult> density_checks(const ComplexMatrix &m) {
    require_square(m, "density operator");
    std::vector<CheckResult> out;
    out.push_back(check_finite(m));
    out.push_back(check_hermitian(m));
    out.push_back(check_unit_trace(m));
    if (out[0].pass) {
        out.push_back(check_psd(m));
    }
    return out;
}

std::vector<CheckResult> povm_checks(std::span<const ComplexMatrix> elements,
                                     bool projective) {
    if (elements.empty()) {
        throw ValidationError("povm: no elements");
    }
    std::vector<CheckResult> out;
    const Eigen::Index d = elements.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t v = 0; v < elements.size(); ++v) {
        const ComplexMatrix &m = elements[v];
        require_square(m, "povm element");
        if (m.rows() != d) {
            throw ValidationError("povm: elements have mixed dimensions");
        }
        const std::string tag = "[" + std::to_string(v) + "]";
        CheckResult fin = check_finite(m);
        fin.name += tag;
        out.push_back(fin);
        CheckResult herm = check_hermitian(m);
        herm.name += tag;
        out.push_back(herm);
        if (fin.pass) {
            CheckResult psd = check_psd(m);
            psd.name += tag;
            out.push_back(psd);
            if (projective) {
                CheckResult proj = check_projective(m);
                proj.name += tag;
                out.push_back(proj);
            }
        }
        sum += m;
    }
    const double res = (sum - ComplexMatrix::Identity(d, d)).norm() /
                       std::sqrt(static_cast<double>(d));
    out.push_back({"completeness", res, tol::completeness,
                   res <= tol::completeness});
    return out;
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : mat_(std::move(m)) {
    require_square(mat_, "hermitian operator");
    const CheckResult checks[] = {check_finite(mat_), check_hermitian(mat_)};
    require_pass(checks, "hermitian operator");
}

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) {
    const CheckResult checks[] = {check_unit_trace(op_.matrix()),
                                  check_psd(op_.matrix())};
    require_pass(checks, "density operator");
}

Povm::Povm(unchecked_tag, std::vector<std::string> outcomes,
           std::vector<HermitianOperator> elements)
    : outcomes_(std::move(outcomes)), elements_(std::move(elements)) {}

Povm::Povm(std::vector<std::string> outcomes,
           std::vector<HermitianOperator> elements)
    : Povm(unchecked_tag{}, std::move(outcomes), std::move(elements)) {
    validate(false);
}

void Povm::validate(bool projective) const {
    if (elements_.empty()) {
        throw ValidationError("povm: no elements");
    }
    if (outcomes_.size() != elements_.size()) {
        throw ValidationError("povm: outcome count does not match elements");
    }
    if (std::set<std::string>(outcomes_.begin(), outcomes_.end()).size() !=
        outcomes_.size()) {
        throw ValidationError("povm: duplicate outcome labels");
    }
    std::vector<ComplexMatrix> mats;
    mats.reserve(elements_.size());
    for (const auto &e : elements_) {
        mats.push_back(e.matrix());
    }
    require_pass(povm_checks(mats, projective), "povm");
}

ProjectivePovm::ProjectivePovm(std::vector<std::string> outcomes,
                               std::vector<HermitianOperator> elements)
    : Povm(unchecked_tag{}, std::move(outcomes), std::move(elements)) {
    validate(true);
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

HermitianOperator tensor(const HermitianOperator &a,
                         const HermitianOperator &b, Eigen::Index max_dim) {
    if (a.dim() > max_dim / b.dim()) {
        std::ostringstream os;
        os << "tensor: result dimension " << a.dim() << "*" << b.dim()
           << " exceeds maximum " << max_dim;
        throw ValidationError(os.str());
    }
    return HermitianOperator(kron(a.matrix(), b.matrix()));
}

ComplexMatrix basis_projector(Eigen::Index dim, Eigen::Index k) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(k, k) = 1.0;
    return m;
}

DensityOperator pure_state(const Eigen::VectorXcd &psi) {
    const double norm = psi.norm();
    if (norm == 0.0) {
        throw ValidationError("pure_state: zero vector");
    }
    const Eigen::VectorXcd unit = psi / norm;
    return DensityOperator(ComplexMatrix(unit * unit.adjoint()));
}

ProjectivePovm basis_measurement(Eigen::Index dim,
                                 std::vector<std::string> outcomes) {
    if (outcomes.empty()) {
        for (Eigen::Index k = 0; k < dim; ++k) {
            outcomes.push_back(std::to_string(k));
        }
    }
    if (static_cast<Eigen::Index>(outcomes.size()) != dim) {
        throw ValidationError("basis_measurement: need one outcome per "
                              "basis vector");
    }
    std::vector<HermitianOperator> elements;
    elements.reserve(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        elements.emplace_back(basis_projector(dim, k));
    }
    return ProjectivePovm(std::move(outcomes), std::move(elements));
}

ProjectivePovm labeled_basis_measurement(const ComplexMatrix &basis,
                                         std::span<const std::size_t> labeling,
                                         std::vector<std::string> outcomes) {
    require_square(basis, "labeled_basis_measurement");
    const Eigen::Index d = basis.rows();
    if (static_cast<Eigen::Index>(labeling.size()) != d) {
        throw ValidationError("labeled_basis_measurement: labeling length "
                              "does not match dimension");
    }
    std::vector<ComplexMatrix> mats(outcomes.size(),
                                    ComplexMatrix::Zero(d, d));
    for (Eigen::Index k = 0; k < d; ++k) {
        if (labeling[k] >= outcomes.size()) {
            throw ValidationError(
                "labeled_basis_measurement: label index out of range");
        }
        mats[labeling[k]] += basis.col(k) * basis.col(k).adjoint();
    }
    std::vector<HermitianOperator> elements;
    elements.reserve(mats.size());
    for (auto &m : mats) {
        // Symmetrize away the last-bit asymmetry of v v^dagger sums.
        elements.emplace_back(ComplexMatrix((m + m.adjoint()) / 2.0));
    }
    return ProjectivePovm(std::move(outcomes), std::move(elements));
}

} // namespace qpac
