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

#include "qpac/qerm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qpac/measurement.hpp"

namespace qpac {

std::size_t BatchPlan::total() const {
    return std::accumulate(batch_sizes.begin(), batch_sizes.end(),
                           std::size_t{0});
}

BatchPlan plan_batches(const CompatibilityPartition &partition,
                       double epsilon, double delta, BatchMode mode,
                       std::optional<std::size_t> total_n) {
    if (!(epsilon > 0.0 && epsilon < 1.0) ||
        !(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument(
            "plan_batches: epsilon and delta must lie in (0, 1)");
    }
    const std::size_t m = partition.m();
    std::vector<std::size_t> weights(m);
    for (std::size_t r = 0; r < m; ++r) {
        weights[r] = theorem_sample_term(
            m, partition.subclasses()[r].size(), epsilon, delta);
    }

    BatchPlan plan;
    plan.mode = mode;
    if (mode == BatchMode::complexity) {
        plan.batch_sizes = std::move(weights);
        return plan;
    }

    if (!total_n) {
        throw std::invalid_argument(
            "plan_batches: budget mode needs a total sample count");
    }
    if (*total_n < m) {
        std::ostringstream os;
        os << "plan_batches: budget " << *total_n << " below the " << m
           << " batches required";
        throw InfeasibleError(os.str());
    }
    const double weight_sum = static_cast<double>(
        std::accumulate(weights.begin(), weights.end(), std::size_t{0}));
    const std::size_t spare = *total_n - m;
    plan.batch_sizes.assign(m, 1);
    std::size_t assigned = 0;
    for (std::size_t r = 0; r < m; ++r) {
        const auto extra = static_cast<std::size_t>(
            std::floor(static_cast<double>(spare) *
                       static_cast<double>(weights[r]) / weight_sum));
        plan.batch_sizes[r] += extra;
        assigned += extra;
    }
    // Leftover from the floors goes to the largest subclasses first.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return partition.subclasses()[a].size() >
                                partition.subclasses()[b].size();
                     });
    std::size_t leftover = spare - assigned;
    for (std::size_t i = 0; leftover > 0; i = (i + 1) % m, --leftover) {
        ++plan.batch_sizes[order[i]];
    }
    return plan;
}

std::vector<double> measure_subclass(const SubclassMeasurement &subclass,
                                     const LossFunction &loss,
                                     TrainingSample &sample,
                                     RngStream &rng) {
    if (sample.consumed) {
        throw SampleConsumedError(
            "measure_subclass: sample already measured");
    }
    if (sample.feature_state == nullptr) {
        throw ValidationError("measure_subclass: sample has no state");
    }
    const ComplexMatrix &rho = sample.feature_state->matrix();
    if (rho.rows() != subclass.basis.rows()) {
        throw ValidationError("measure_subclass: dimension mismatch");
    }
    if (sample.y >= loss.n_labels()) {
        throw ValidationError("measure_subclass: sample label out of range");
    }
    sample.consumed = true;

    // Born weights of the shared eigenbasis extended by the label basis;
    // the label register is classical here, so only the feature factor
    // is random.
    const Eigen::Index d = rho.rows();
    const ComplexMatrix t = rho * subclass.basis;
    std::vector<double> probs(static_cast<std::size_t>(d));
    for (Eigen::Index k = 0; k < d; ++k) {
        probs[static_cast<std::size_t>(k)] =
            subclass.basis.col(k).dot(t.col(k)).real();
    }
    normalize_probabilities(probs, "measure_subclass");
    const std::size_t k = rng.categorical(probs);

    std::vector<double> z(subclass.members.size());
    for (std::size_t j = 0; j < subclass.members.size(); ++j) {
        z[j] = loss.value(sample.y, subclass.outcome_table[k][j]);
    }
    return z;
}

namespace {

QermReport run_with_partition(const ConceptClass &c,
                              const LossFunction &loss,
                              std::span<TrainingSample> samples,
                              RngStream &rng, const QermOptions &options,
                              CompatibilityPartition partition,
                              const char *strategy_name,
                              const Environment *report_env) {
    const BatchPlan plan = plan_batches(partition, options.epsilon,
                                        options.delta, options.mode,
                                        options.total_n);
    if (samples.size() < plan.total()) {
        std::ostringstream os;
        os << "run_qerm: plan needs " << plan.total()
           << " samples, got " << samples.size();
        throw InfeasibleError(os.str());
    }

    QermReport report;
    report.subclasses = partition.subclasses();
    report.strategy = strategy_name;
    report.epsilon = options.epsilon;
    report.delta = options.delta;
    report.mode =
        options.mode == BatchMode::complexity ? "complexity" : "budget";
    report.batch_sizes = plan.batch_sizes;
    report.empirical_losses.assign(c.size(), 0.0);

    bool have_best = false;
    std::size_t cursor = 0;
    for (std::size_t r = 0; r < partition.m(); ++r) {
        const SubclassMeasurement &sm = partition.subclass_measurement(r);
        std::vector<double> sums(sm.members.size(), 0.0);
        RngStream batch_rng = rng.child(r);
        for (std::size_t i = 0; i < plan.batch_sizes[r]; ++i) {
            const std::vector<double> z =
                measure_subclass(sm, loss, samples[cursor++], batch_rng);
            for (std::size_t j = 0; j < sums.size(); ++j) {
                sums[j] += z[j];
            }
        }
        for (std::size_t j = 0; j < sums.size(); ++j) {
            const double emp =
                sums[j] / static_cast<double>(plan.batch_sizes[r]);
            report.empirical_losses[sm.members[j]] = emp;
            if (!have_best || emp < report.min_empirical_loss) {
                have_best = true;
                report.min_empirical_loss = emp;
                report.selected =
                    SelectedPredictor{r, j, sm.members[j],
                                      c.predictor(sm.members[j]).id};
            }
        }
    }

    if (report_env != nullptr) {
        report.true_risk_selected =
            true_risk(c.predictor(report.selected.position), *report_env,
                      loss);
        const auto [opt_value, opt_pos] = opt_risk(c, *report_env, loss);
        report.opt = opt_value;
        report.opt_position = opt_pos;
        report.excess = *report.true_risk_selected - opt_value;
    }
    return report;
}

} // namespace

QermReport run_qerm(const ConceptClass &c, const LossFunction &loss,
                    std::span<TrainingSample> samples, RngStream &rng,
                    const QermOptions &options,
                    const Environment *report_env) {
    return run_with_partition(
        c, loss, samples, rng, options,
        partition_compatible(c, options.strategy, options.exact_limit),
        to_string(options.strategy), report_env);
}

QermReport run_qerm(const ConceptClass &c, const LossFunction &loss,
                    const Environment &env, RngStream &rng,
                    const QermOptions &options) {
    CompatibilityPartition partition =
        partition_compatible(c, options.strategy, options.exact_limit);
    const BatchPlan plan = plan_batches(partition, options.epsilon,
                                        options.delta, options.mode,
                                        options.total_n);
    std::vector<TrainingSample> samples =
        draw_samples(env, plan.total(), rng);
    return run_with_partition(c, loss, samples, rng, options,
                              std::move(partition),
                              to_string(options.strategy), &env);
}

QermReport run_naive(const ConceptClass &c, const LossFunction &loss,
                     std::span<TrainingSample> samples, RngStream &rng,
                     QermOptions options, const Environment *report_env) {
    options.strategy = PartitionStrategy::singleton;
    return run_qerm(c, loss, samples, rng, options, report_env);
}

QermReport run_naive(const ConceptClass &c, const LossFunction &loss,
                     const Environment &env, RngStream &rng,
                     QermOptions options) {
    options.strategy = PartitionStrategy::singleton;
    return run_qerm(c, loss, env, rng, options);
}

double deviation_bound(std::size_t n, double b_minus_a, double delta) {
    if (n == 0) {
        throw std::invalid_argument("deviation_bound: n must be >= 1");
    }
    if (!(b_minus_a > 0.0)) {
        throw std::invalid_argument(
            "deviation_bound: outcome range must be positive");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument(
            "deviation_bound: delta must lie in (0, 1)");
    }
    return b_minus_a *
           std::sqrt((2.0 / static_cast<double>(n)) * std::log(2.0 / delta));
}

double class_deviation_radius(std::size_t n, std::size_t class_size,
                              double delta) {
    if (n == 0 || class_size == 0) {
        throw std::invalid_argument(
            "class_deviation_radius: n and |C| must be >= 1");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument(
            "class_deviation_radius: delta must lie in (0, 1)");
    }
    return std::sqrt((2.0 / static_cast<double>(n)) *
                     std::log(2.0 * static_cast<double>(class_size) /
                              delta));
}

ConcentrationResult check_concentration(const Povm &observable,
                                        std::span<const double> values,
                                        const DensityOperator &state,
                                        std::size_t n, std::size_t trials,
                                        double t, RngStream &rng) {
    if (n == 0 || trials == 0) {
        throw std::invalid_argument(
            "check_concentration: n and trials must be >= 1");
    }
    if (!(t >= 0.0)) {
        throw std::invalid_argument("check_concentration: t must be >= 0");
    }
    // The state is fixed across draws, so the Born distribution is
    // computed once and sampled n * trials times.
    const std::vector<double> probs = born_distribution(observable, state);
    if (values.size() != probs.size()) {
        throw std::invalid_argument(
            "check_concentration: need one value per outcome");
    }
    double expectation = 0.0;
    for (std::size_t v = 0; v < probs.size(); ++v) {
        expectation += values[v] * probs[v];
    }

    std::size_t exceeded = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += values[rng.categorical(probs)];
        }
        const double mean = sum / static_cast<double>(n);
        if (std::abs(mean - expectation) > t) {
            ++exceeded;
        }
    }
    return ConcentrationResult{expectation, t,
                               static_cast<double>(exceeded) /
                                   static_cast<double>(trials),
                               trials};
}

ClassConcentrationResult
check_class_concentration(const ConceptClass &c, const LossFunction &loss,
                          const Environment &env, std::size_t n,
                          std::size_t trials, double delta,
                          RngStream &rng) {
    if (n == 0 || trials == 0) {
        throw std::invalid_argument(
            "check_class_concentration: n and trials must be >= 1");
    }
    CompatibilityPartition partition =
        partition_compatible(c, PartitionStrategy::greedy);
    if (partition.m() != 1) {
        throw ValidationError(
            "check_class_concentration: class is not compatible");
    }
    const SubclassMeasurement &sm = partition.subclass_measurement(0);

    std::vector<double> risks(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
        risks[j] = true_risk(c.predictor(j), env, loss);
    }
    const double radius = class_deviation_radius(n, c.size(), delta);

    std::size_t exceeded = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        RngStream trial_rng = rng.child(trial);
        std::vector<TrainingSample> samples =
            draw_samples(env, n, trial_rng);
        std::vector<double> sums(c.size(), 0.0);
        for (auto &sample : samples) {
            const std::vector<double> z =
                measure_subclass(sm, loss, sample, trial_rng);
            for (std::size_t j = 0; j < z.size(); ++j) {
                sums[sm.members[j]] += z[j];
            }
        }
        double max_dev = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            max_dev = std::max(
                max_dev, std::abs(sums[j] / static_cast<double>(n) -
                                  risks[j]));
        }
        if (max_dev > radius) {
            ++exceeded;
        }
    }
    return ClassConcentrationResult{radius,
                                    static_cast<double>(exceeded) /
                                        static_cast<double>(trials),
                                    trials};
}

} // namespace qpac
