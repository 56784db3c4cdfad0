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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpac/compatibility.hpp"
#include "qpac/concept_class.hpp"
#include "qpac/environment.hpp"
#include "qpac/samples.hpp"

namespace qpac {

enum class BatchMode { complexity, budget };

/// Per-subclass sample allotment.
struct BatchPlan {
    std::vector<std::size_t> batch_sizes;
    BatchMode mode = BatchMode::complexity;
    std::size_t total() const;
};

/// complexity mode: n_r = ceil((8 / eps^2) ln(2 m |C_r| / delta)), the
/// per-subclass term of the sample-count objective.
/// budget mode: total_n split proportionally to the complexity-mode
/// weights, each batch >= 1, remainders to the largest subclasses first.
BatchPlan plan_batches(const CompatibilityPartition &partition,
                       double epsilon, double delta, BatchMode mode,
                       std::optional<std::size_t> total_n = {});

/// Jointly measures every predictor of a compatible subclass on one
/// sample and returns the per-predictor loss values (aligned with
/// subclass member order). Marks the sample consumed.
///
/// The joint measurement is realized by sampling a shared-eigenbasis
/// index k with Born probability <u_k| rho_x |u_k> and reading
/// z_j = loss(y, outcome_table[k][j]); the induced joint distribution
/// over loss vectors equals the Born distribution of the product
/// loss-observable POVM without materializing its exponentially many
/// elements.
std::vector<double> measure_subclass(const SubclassMeasurement &subclass,
                                     const LossFunction &loss,
                                     TrainingSample &sample, RngStream &rng);

struct SelectedPredictor {
    std::size_t r = 0;        // subclass index
    std::size_t j = 0;        // position within the subclass
    std::size_t position = 0; // position in the class
    std::size_t id = 0;       // external predictor id
};

struct QermReport {
    std::vector<std::vector<std::size_t>> subclasses; // class positions
    std::string strategy;
    double epsilon = 0.0;
    double delta = 0.0;
    std::string mode;
    std::vector<std::size_t> batch_sizes;
    std::vector<double> empirical_losses; // by class position
    SelectedPredictor selected;
    double min_empirical_loss = 0.0;
    // Filled when the environment is known.
    std::optional<double> true_risk_selected;
    std::optional<double> opt;
    std::optional<std::size_t> opt_position;
    std::optional<double> excess;
};

struct QermOptions {
    double epsilon = 0.1;
    double delta = 0.1;
    PartitionStrategy strategy = PartitionStrategy::greedy;
    BatchMode mode = BatchMode::complexity;
    std::optional<std::size_t> total_n; // required in budget mode
    std::size_t exact_limit = kExactPartitionLimit;
};

/// Full run on caller-provided samples: partition the class, plan
/// batches, assign samples to batches in arrival order, measure each
/// batch with its subclass joint measurement, average per predictor, and
/// select the empirical argmin (ties to the lowest (r, j)).
///
/// Every sample is consumed at most once and only by its own subclass;
/// surplus samples are left untouched. When `report_env` is given the
/// report also carries the selected predictor's true risk, the class
/// optimum, and the excess risk.
QermReport run_qerm(const ConceptClass &c, const LossFunction &loss,
                    std::span<TrainingSample> samples, RngStream &rng,
                    const QermOptions &options,
                    const Environment *report_env = nullptr);

/// Draws exactly the planned number of samples from the environment,
/// then runs as above with risk reporting enabled.
QermReport run_qerm(const ConceptClass &c, const LossFunction &loss,
                    const Environment &env, RngStream &rng,
                    const QermOptions &options);

/// Baseline that forces the singleton partition: one batch per
/// predictor, no sample reuse across predictors.
QermReport run_naive(const ConceptClass &c, const LossFunction &loss,
                     std::span<TrainingSample> samples, RngStream &rng,
                     QermOptions options,
                     const Environment *report_env = nullptr);
QermReport run_naive(const ConceptClass &c, const LossFunction &loss,
                     const Environment &env, RngStream &rng,
                     QermOptions options);

/// Deviation radius t with 2 exp(-n t^2 / (2 (b-a)^2)) = delta:
/// t = (b - a) sqrt((2/n) ln(2/delta)).
double deviation_bound(std::size_t n, double b_minus_a, double delta);

/// Lemma-2-style radius for joint estimation over a compatible class:
/// sqrt((2/n) ln(2 |C| / delta)).
double class_deviation_radius(std::size_t n, std::size_t class_size,
                              double delta);

struct ConcentrationResult {
    double expectation = 0.0;   // <M>_rho
    double threshold = 0.0;     // t
    double exceedance_rate = 0.0;
    std::size_t trials = 0;
};

/// Empirical check of the concentration bound for a single observable:
/// runs `trials` independent n-sample empirical means of the observable
/// on iid copies of the state and reports the fraction deviating from
/// the expectation by more than t.
ConcentrationResult check_concentration(const Povm &observable,
                                        std::span<const double> values,
                                        const DensityOperator &state,
                                        std::size_t n, std::size_t trials,
                                        double t, RngStream &rng);

struct ClassConcentrationResult {
    double radius = 0.0;
    double exceedance_rate = 0.0;
    std::size_t trials = 0;
};

/// Joint version over a fully compatible class: per trial, n fresh
/// samples are jointly measured, and the trial counts as an exceedance
/// if any predictor's empirical loss deviates from its true risk by more
/// than the class deviation radius.
ClassConcentrationResult
check_class_concentration(const ConceptClass &c, const LossFunction &loss,
                          const Environment &env, std::size_t n,
                          std::size_t trials, double delta, RngStream &rng);

} // namespace qpac
