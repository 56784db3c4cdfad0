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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qpac/serialization.hpp"
#include "qpac/synthetic.hpp"

namespace qpac {

/// Everything an experiment run instantiates: environment, concept
/// class, loss, and (when the construction knows it) the position of the
/// ground-truth predictor.
struct ProblemSetup {
    Environment env;
    ConceptClass concepts;
    LossFunction loss;
    std::optional<std::size_t> truth_position;
};

/// One experiment described by a single JSON document. See the README
/// for the schema; unknown keys are rejected to catch typos.
class ExperimentConfig {
  public:
    static ExperimentConfig from_json(const json &doc);
    static ExperimentConfig from_file(const std::string &path);

    /// Instantiates the configured problem (preset or manifests).
    ProblemSetup build_problem() const;

    /// FNV-1a 64 over the canonical dump; carried in every output row.
    std::string hash() const;

    json raw;

    std::vector<double> epsilons{0.2};
    std::vector<double> deltas{0.1};
    std::vector<std::size_t> budgets;       // budget mode grid
    std::vector<std::size_t> sample_grid;   // concentration n grid
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::string strategy = "best"; // greedy|exact|singleton|best
    std::string mode = "complexity";
    std::string check = "lemma1"; // concentration subcommand only
    std::size_t exact_limit = kExactPartitionLimit;
    std::size_t workers = 0; // 0 = hardware concurrency
};

/// Runs fn(0..count-1) on a small worker pool; the caller indexes its
/// own output slots, so results are identical for any worker count.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)> &fn);

// --- Subcommand implementations (CLI wrappers call straight into these,
//     tests exercise them directly) ---

struct ValidationItem {
    std::string object;
    CheckResult check;
};

struct ValidationReport {
    std::string kind; // operator | povm | class | environment
    std::vector<ValidationItem> items;
    bool ok = true;
    std::string to_text() const;
    json to_json() const;
};

/// Validates a manifest file, reporting every invariant check with its
/// measured residual rather than stopping at the first failure.
ValidationReport cmd_validate(const std::string &manifest_path);

/// Partitions a class manifest under every strategy (exact only within
/// its size limit), reports each partition with its sample objective at
/// (epsilon, delta), the always-valid singleton baseline, the
/// compatible-class comparison bound, and which strategy won.
json cmd_partition(const std::string &class_manifest_path,
                   double epsilon, double delta,
                   std::size_t exact_limit = kExactPartitionLimit);

struct SweepOutput {
    std::string csv;
    json summary;
};

/// QERM trials over the (epsilon, delta[, budget]) grid; one CSV row per
/// trial, ordered by trial index. `naive` forces the singleton baseline.
SweepOutput cmd_qerm(const ExperimentConfig &config, bool naive);

/// Sample-demand and failure-rate comparison of QERM against the naive
/// baseline at matched (epsilon, delta).
SweepOutput cmd_compare(const ExperimentConfig &config);

/// Empirical concentration tables: per-observable deviation exceedance
/// (check = "lemma1") or per-class max-deviation exceedance against the
/// joint radius (check = "lemma2").
SweepOutput cmd_concentration(const ExperimentConfig &config);

/// Builds the classical embedding for a finite problem and returns the
/// environment and class manifests.
json cmd_embed_classical(const ExperimentConfig &config);

} // namespace qpac
