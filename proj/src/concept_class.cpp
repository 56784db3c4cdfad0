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

#include "qpac/concept_class.hpp"

#include <set>
#include <sstream>

namespace qpac {

namespace {

std::complex<double> trace_product(const ComplexMatrix &a,
                                   const ComplexMatrix &b) {
    return a.transpose().cwiseProduct(b).sum();
}

} // namespace

ConceptClass::ConceptClass(std::vector<Predictor> predictors)
    : predictors_(std::move(predictors)) {
    if (predictors_.empty()) {
        throw ValidationError("concept class: empty");
    }
    const Eigen::Index d = predictors_.front().povm.dim();
    const auto &labels = predictors_.front().povm.outcomes();
    std::set<std::size_t> ids;
    for (const auto &p : predictors_) {
        if (p.povm.dim() != d) {
            throw ValidationError("concept class: mixed dimensions");
        }
        if (p.povm.outcomes() != labels) {
            throw ValidationError(
                "concept class: predictors disagree on the label alphabet");
        }
        if (!ids.insert(p.id).second) {
            std::ostringstream os;
            os << "concept class: duplicate predictor id " << p.id;
            throw ValidationError(os.str());
        }
    }
}

LossObservable loss_observable(const Predictor &p, const LossFunction &loss) {
    if (p.povm.outcomes() != loss.labels()) {
        throw ValidationError(
            "loss_observable: predictor and loss label alphabets differ");
    }
    const Eigen::Index d = p.povm.dim();
    const auto ny = static_cast<Eigen::Index>(loss.n_labels());
    const auto &z_values = loss.image();

    std::vector<ComplexMatrix> ops(z_values.size(),
                                   ComplexMatrix::Zero(d * ny, d * ny));
    for (std::size_t y = 0; y < loss.n_labels(); ++y) {
        const ComplexMatrix label_proj =
            basis_projector(ny, static_cast<Eigen::Index>(y));
        for (std::size_t yh = 0; yh < loss.n_labels(); ++yh) {
            ops[loss.image_index(y, yh)] +=
                kron(p.povm.element(yh).matrix(), label_proj);
        }
    }

    std::vector<std::string> outcomes;
    std::vector<HermitianOperator> elements;
    outcomes.reserve(z_values.size());
    elements.reserve(z_values.size());
    for (std::size_t zi = 0; zi < z_values.size(); ++zi) {
        outcomes.push_back(format_double(z_values[zi]));
        elements.emplace_back(std::move(ops[zi]));
    }
    return LossObservable{p.id, z_values,
                          Povm(std::move(outcomes), std::move(elements))};
}

double true_risk(const Predictor &p, const Environment &env,
                 const LossFunction &loss) {
    if (p.povm.dim() != env.dim()) {
        throw ValidationError("true_risk: dimension mismatch");
    }
    if (p.povm.outcomes() != loss.labels() ||
        env.labels() != loss.labels()) {
        throw ValidationError("true_risk: label alphabets differ");
    }
    double risk = 0.0;
    for (std::size_t x = 0; x < env.n_features(); ++x) {
        for (std::size_t y = 0; y < env.n_labels(); ++y) {
            const double pxy = env.prob(x, y);
            if (pxy == 0.0) {
                continue;
            }
            for (std::size_t yh = 0; yh < env.n_labels(); ++yh) {
                risk += pxy * loss.value(y, yh) *
                        trace_product(p.povm.element(yh).matrix(),
                                      env.state(x).matrix())
                            .real();
            }
        }
    }
    return risk;
}

double true_risk_via_observable(const Predictor &p, const Environment &env,
                                const LossFunction &loss) {
    const LossObservable obs = loss_observable(p, loss);
    const DensityOperator joint = average_state(env);
    double risk = 0.0;
    for (std::size_t zi = 0; zi < obs.values.size(); ++zi) {
        risk += obs.values[zi] *
                trace_product(obs.povm.element(zi).matrix(), joint.matrix())
                    .real();
    }
    return risk;
}

std::pair<double, std::size_t> opt_risk(const ConceptClass &c,
                                        const Environment &env,
                                        const LossFunction &loss) {
    double best = 0.0;
    std::size_t best_pos = 0;
    for (std::size_t pos = 0; pos < c.size(); ++pos) {
        const double r = true_risk(c.predictor(pos), env, loss);
        if (pos == 0 || r < best) {
            best = r;
            best_pos = pos;
        }
    }
    return {best, best_pos};
}

} // namespace qpac
