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

#include "qpac/operators.hpp"

namespace qpac {

/// One labeled quantum training sample. The feature state is borrowed
/// from the environment that drew the sample (the environment must
/// outlive it); the joint feature-label state is materialized on demand.
///
/// `consumed` flips false -> true exactly once, when the sample is
/// measured. Measuring a consumed sample raises SampleConsumedError.
struct TrainingSample {
    std::size_t x = 0;
    std::size_t y = 0;
    std::size_t n_labels = 0;
    const DensityOperator *feature_state = nullptr;
    bool consumed = false;

    /// rho_x (x) |y><y| on the joint feature-label space.
    DensityOperator joint_state(Eigen::Index max_dim = kMaxDimension) const {
        const HermitianOperator label_proj(basis_projector(
            static_cast<Eigen::Index>(n_labels),
            static_cast<Eigen::Index>(y)));
        return DensityOperator(
            tensor(feature_state->op(), label_proj, max_dim));
    }
};

} // namespace qpac
