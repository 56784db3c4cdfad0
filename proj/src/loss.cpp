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

#include "qpac/loss.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace qpac {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

LossFunction::LossFunction(std::vector<std::string> labels,
                           Eigen::MatrixXd table)
    : labels_(std::move(labels)), table_(std::move(table)) {
    const auto n = static_cast<Eigen::Index>(labels_.size());
    if (n == 0) {
        throw ValidationError("loss: empty label alphabet");
    }
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() !=
        labels_.size()) {
        throw ValidationError("loss: duplicate labels");
    }
    if (table_.rows() != n || table_.cols() != n) {
        throw ValidationError("loss: table shape does not match alphabet");
    }
    for (Eigen::Index y = 0; y < n; ++y) {
        for (Eigen::Index h = 0; h < n; ++h) {
            const double v = table_(y, h);
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                throw ValidationError("loss: values must lie in [0, 1]");
            }
        }
    }
    std::set<double> distinct;
    for (Eigen::Index y = 0; y < n; ++y) {
        for (Eigen::Index h = 0; h < n; ++h) {
            distinct.insert(table_(y, h));
        }
    }
    image_.assign(distinct.begin(), distinct.end());
    image_idx_.resize(static_cast<std::size_t>(n) * n);
    for (Eigen::Index y = 0; y < n; ++y) {
        for (Eigen::Index h = 0; h < n; ++h) {
            const auto it = std::lower_bound(image_.begin(), image_.end(),
                                             table_(y, h));
            image_idx_[static_cast<std::size_t>(y) * n + h] =
                static_cast<std::size_t>(it - image_.begin());
        }
    }
}

LossFunction LossFunction::zero_one(std::vector<std::string> labels) {
    const auto n = static_cast<Eigen::Index>(labels.size());
    Eigen::MatrixXd table = Eigen::MatrixXd::Ones(n, n);
    table.diagonal().setZero();
    return LossFunction(std::move(labels), std::move(table));
}

} // namespace qpac
