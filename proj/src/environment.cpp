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

#include "qpac/environment.hpp"

#include <cmath>
#include <stdexcept>

namespace qpac {

Environment::Environment(std::vector<std::string> feature_names,
                         std::vector<std::string> labels,
                         std::vector<DensityOperator> states,
                         Eigen::MatrixXd dist)
    : feature_names_(std::move(feature_names)), labels_(std::move(labels)),
      states_(std::move(states)), dist_(std::move(dist)) {
    if (states_.empty() || labels_.empty()) {
        throw ValidationError("environment: empty feature or label set");
    }
    if (feature_names_.empty()) {
        for (std::size_t x = 0; x < states_.size(); ++x) {
            feature_names_.push_back("x" + std::to_string(x));
        }
    }
    if (feature_names_.size() != states_.size()) {
        throw ValidationError(
            "environment: feature name count does not match states");
    }
    const Eigen::Index d = states_.front().dim();
    for (const auto &s : states_) {
        if (s.dim() != d) {
            throw ValidationError("environment: states of mixed dimension");
        }
    }
    if (dist_.rows() != static_cast<Eigen::Index>(states_.size()) ||
        dist_.cols() != static_cast<Eigen::Index>(labels_.size())) {
        throw ValidationError("environment: distribution shape mismatch");
    }
    double sum = 0.0;
    for (Eigen::Index x = 0; x < dist_.rows(); ++x) {
        for (Eigen::Index y = 0; y < dist_.cols(); ++y) {
            const double p = dist_(x, y);
            if (!std::isfinite(p) || p < 0.0) {
                throw ValidationError(
                    "environment: distribution entries must be >= 0");
            }
            sum += p;
        }
    }
    if (std::abs(sum - 1.0) > tol::probability) {
        throw ValidationError("environment: distribution does not sum to 1");
    }
}

DensityOperator average_state(const Environment &env) {
    const Eigen::Index d = env.dim();
    const auto ny = static_cast<Eigen::Index>(env.n_labels());
    ComplexMatrix joint = ComplexMatrix::Zero(d * ny, d * ny);
    for (std::size_t x = 0; x < env.n_features(); ++x) {
        for (std::size_t y = 0; y < env.n_labels(); ++y) {
            const double p = env.prob(x, y);
            if (p == 0.0) {
                continue;
            }
            joint += p * kron(env.state(x).matrix(),
                              basis_projector(ny,
                                              static_cast<Eigen::Index>(y)));
        }
    }
    return DensityOperator(std::move(joint));
}

std::vector<TrainingSample> draw_samples(const Environment &env,
                                         std::size_t n, RngStream &rng) {
    if (n == 0) {
        throw std::invalid_argument("draw_samples: n must be >= 1");
    }
    // Row-major flattening of D(x, y) into one categorical draw.
    std::vector<double> flat;
    flat.reserve(env.n_features() * env.n_labels());
    for (std::size_t x = 0; x < env.n_features(); ++x) {
        for (std::size_t y = 0; y < env.n_labels(); ++y) {
            flat.push_back(env.prob(x, y));
        }
    }
    std::vector<TrainingSample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = rng.categorical(flat);
        const std::size_t x = k / env.n_labels();
        const std::size_t y = k % env.n_labels();
        out.push_back(TrainingSample{x, y, env.n_labels(), &env.state(x),
                                     false});
    }
    return out;
}

} // namespace qpac
