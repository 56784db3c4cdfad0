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
#include "qpac/rng.hpp"

namespace qpac {

/// Born-rule outcome distribution p_v = Re tr(M_v rho), aligned with the
/// POVM's outcome order. Values in [-tol, 0) are clamped to zero and the
/// vector renormalized; anything more negative, or total mass off 1 by
/// more than the probability tolerance, signals an invalid POVM/state
/// pair and throws.
std::vector<double> born_distribution(const Povm &m,
                                      const DensityOperator &rho);

/// One sampled outcome index. The caller owns the single-use discipline:
/// a quantum sample backs at most one incompatible measurement.
std::size_t born_sample(const Povm &m, const DensityOperator &rho,
                        RngStream &rng);

/// Expectation of an observable given as a POVM plus one real value per
/// outcome: sum_v values[v] * p_v.
double expectation_value(const Povm &m, std::span<const double> values,
                         const DensityOperator &rho);

/// Shared clamp/renormalize policy for probability vectors (see
/// born_distribution). Exposed for the joint-measurement path.
void normalize_probabilities(std::vector<double> &probs,
                             const char *context);

} // namespace qpac
