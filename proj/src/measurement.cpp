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

#include "qpac/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qpac {

namespace {

// tr(A * B) without forming the product.
std::complex<double> trace_product(const ComplexMatrix &a,
                                   const ComplexMatrix &b) {
    return a.transpose().cwiseProduct(b).sum();
}

} // namespace

void normalize_probabilities(std::vector<double> &probs,
                             const char *context) {
    double sum = 0.0;
    for (double &p : probs) {
        if (p < -tol::probability) {
            std::ostringstream os;
            os << context << ": negative probability " << p;
            throw ValidationError(os.str());
        }
        p = std::clamp(p, 0.0, 1.0);
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol::probability) {
        std::ostringstream os;
        os << context << ": probability mass " << sum
           << " deviates from 1 beyond tolerance";
        throw ValidationError(os.str());
    }
    for (double &p : probs) {
        p /= sum;
    }
}

std::vector<double> born_distribution(const Povm &m,
                                      const DensityOperator &rho) {
    if (m.dim() != rho.dim()) {
        std::ostringstream os;
        os << "born_distribution: dimension mismatch (povm " << m.dim()
           << ", state " << rho.dim() << ")";
        throw ValidationError(os.str());
    }
    std::vector<double> probs(m.size());
    for (std::size_t v = 0; v < m.size(); ++v) {
        probs[v] =
            trace_product(m.element(v).matrix(), rho.matrix()).real();
    }
    normalize_probabilities(probs, "born_distribution");
    return probs;
}

std::size_t born_sample(const Povm &m, const DensityOperator &rho,
                        RngStream &rng) {
    const std::vector<double> probs = born_distribution(m, rho);
    return rng.categorical(probs);
}

double expectation_value(const Povm &m, std::span<const double> values,
                         const DensityOperator &rho) {
    if (values.size() != m.size()) {
        throw ValidationError("expectation_value: need one value per "
                              "outcome");
    }
    const std::vector<double> probs = born_distribution(m, rho);
    double out = 0.0;
    for (std::size_t v = 0; v < probs.size(); ++v) {
        out += values[v] * probs[v];
    }
    return out;
}

} // namespace qpac
