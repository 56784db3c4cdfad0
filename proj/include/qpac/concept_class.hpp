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

#include <utility>
#include <vector>

#include "qpac/environment.hpp"
#include "qpac/loss.hpp"
#include "qpac/operators.hpp"

namespace qpac {

/// One hypothesis: a sharp measurement over the label alphabet.
struct Predictor {
    std::size_t id;
    ProjectivePovm povm;
};

/// Finite ordered library of predictors sharing one feature dimension
/// and one label alphabet. Predictors are addressed by position; `id` is
/// a stable external name carried through reports.
class ConceptClass {
  public:
    explicit ConceptClass(std::vector<Predictor> predictors);

    std::size_t size() const { return predictors_.size(); }
    Eigen::Index dim() const { return predictors_.front().povm.dim(); }
    const std::vector<std::string> &labels() const {
        return predictors_.front().povm.outcomes();
    }
    const Predictor &predictor(std::size_t pos) const {
        return predictors_[pos];
    }
    const std::vector<Predictor> &predictors() const { return predictors_; }

  private:
    std::vector<Predictor> predictors_;
};

/// The loss-valued observable induced by a predictor: one operator per
/// loss value z, acting on the joint feature-label space,
///   L_z = sum_{(y, y_hat) : loss(y, y_hat) = z} M_{y_hat} (x) |y><y|.
struct LossObservable {
    std::size_t predictor_id;
    std::vector<double> values; // sorted distinct loss values Z
    Povm povm;                  // outcomes formatted from values, dim d*|Y|
};

LossObservable loss_observable(const Predictor &p, const LossFunction &loss);

/// True risk sum_{x,y,y_hat} D(x,y) loss(y,y_hat) Re tr(M_{y_hat} rho_x).
double true_risk(const Predictor &p, const Environment &env,
                 const LossFunction &loss);

/// Same quantity through the observable route: sum_z z tr(L_z rho_XY)
/// with rho_XY the environment's average sample state. Agrees with
/// true_risk to within numerical error; kept separate as the second leg
/// of the dual-route identity.
double true_risk_via_observable(const Predictor &p, const Environment &env,
                                const LossFunction &loss);

/// Minimum true risk over the class and the position achieving it
/// (ties broken toward the lowest position).
std::pair<double, std::size_t> opt_risk(const ConceptClass &c,
                                        const Environment &env,
                                        const LossFunction &loss);

} // namespace qpac
