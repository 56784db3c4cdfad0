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
#include <string>
#include <vector>

#include "qpac/errors.hpp"

namespace qpac {

/// Shortest text form that round-trips the double exactly; used for
/// outcome labels keyed by loss values and for JSON-adjacent output.
std::string format_double(double v);

/// Normalized loss table over a finite label alphabet: value(y, y_hat)
/// in [0, 1] for the true label y and predicted label y_hat. The image
/// set Z (sorted distinct table values) indexes loss-valued outcomes.
class LossFunction {
  public:
    LossFunction(std::vector<std::string> labels, Eigen::MatrixXd table);

    /// 0-1 loss: value 0 on the diagonal, 1 elsewhere.
    static LossFunction zero_one(std::vector<std::string> labels);

    double value(std::size_t y, std::size_t y_hat) const {
        return table_(static_cast<Eigen::Index>(y),
                      static_cast<Eigen::Index>(y_hat));
    }
    /// Position of value(y, y_hat) in image().
    std::size_t image_index(std::size_t y, std::size_t y_hat) const {
        return image_idx_[y * labels_.size() + y_hat];
    }

    const std::vector<double> &image() const { return image_; }
    const std::vector<std::string> &labels() const { return labels_; }
    std::size_t n_labels() const { return labels_.size(); }
    const Eigen::MatrixXd &table() const { return table_; }

  private:
    std::vector<std::string> labels_;
    Eigen::MatrixXd table_;
    std::vector<double> image_;
    std::vector<std::size_t> image_idx_;
};

} // namespace qpac
