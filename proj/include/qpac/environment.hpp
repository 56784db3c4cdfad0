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

#include <string>
#include <vector>

#include "qpac/operators.hpp"
#include "qpac/rng.hpp"
#include "qpac/samples.hpp"

namespace qpac {

/// A finite feature alphabet of quantum states, a finite label alphabet,
/// and a joint sampling distribution over the two. Immutable once built.
class Environment {
  public:
    Environment(std::vector<std::string> feature_names,
                std::vector<std::string> labels,
                std::vector<DensityOperator> states, Eigen::MatrixXd dist);

    std::size_t n_features() const { return states_.size(); }
    std::size_t n_labels() const { return labels_.size(); }
    Eigen::Index dim() const { return states_.front().dim(); }

    const DensityOperator &state(std::size_t x) const { return states_[x]; }
    const std::vector<DensityOperator> &states() const { return states_; }
    double prob(std::size_t x, std::size_t y) const {
        return dist_(static_cast<Eigen::Index>(x),
                     static_cast<Eigen::Index>(y));
    }
    const Eigen::MatrixXd &dist() const { return dist_; }
    const std::vector<std::string> &labels() const { return labels_; }
    const std::vector<std::string> &feature_names() const {
        return feature_names_;
    }

  private:
    std::vector<std::string> feature_names_;
    std::vector<std::string> labels_;
    std::vector<DensityOperator> states_;
    Eigen::MatrixXd dist_; // |X| x |Y|, nonnegative, sums to 1
};

/// Average sample state sum_{x,y} D(x,y) rho_x (x) |y><y| on the joint
/// feature-label space.
DensityOperator average_state(const Environment &env);

/// n iid draws (x_i, y_i) ~ D, wrapped as unconsumed samples that borrow
/// the environment's feature states.
std::vector<TrainingSample> draw_samples(const Environment &env,
                                         std::size_t n, RngStream &rng);

} // namespace qpac
