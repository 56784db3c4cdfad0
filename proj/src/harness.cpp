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

#include "qpac/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qpac/measurement.hpp"
#include "qpac/qerm.hpp"

namespace qpac {

namespace {

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// nlohmann tags in-code integer literals as signed; accept either
// encoding for nonnegative integers.
bool is_nonneg_int(const json &v) {
    return v.is_number_unsigned() ||
           (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::vector<double> unit_grid_from(const json &v, const char *name) {
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(v.get<double>());
    } else if (v.is_array() && !v.empty()) {
        for (const auto &e : v) {
            if (!e.is_number()) {
                throw std::invalid_argument(std::string("config: ") + name +
                                            " must be numeric");
            }
            out.push_back(e.get<double>());
        }
    } else {
        throw std::invalid_argument(std::string("config: ") + name +
                                    " must be a number or nonempty array");
    }
    for (double x : out) {
        if (!(x > 0.0 && x < 1.0)) {
            throw std::invalid_argument(std::string("config: ") + name +
                                        " values must lie in (0, 1)");
        }
    }
    return out;
}

std::vector<std::size_t> size_grid_from(const json &v, const char *name) {
    std::vector<std::size_t> out;
    if (is_nonneg_int(v)) {
        out.push_back(v.get<std::size_t>());
    } else if (v.is_array() && !v.empty()) {
        for (const auto &e : v) {
            if (!is_nonneg_int(e)) {
                throw std::invalid_argument(std::string("config: ") + name +
                                            " must hold nonnegative "
                                            "integers");
            }
            out.push_back(e.get<std::size_t>());
        }
    } else {
        throw std::invalid_argument(std::string("config: ") + name +
                                    " must be an integer or nonempty array");
    }
    for (std::size_t x : out) {
        if (x == 0) {
            throw std::invalid_argument(std::string("config: ") + name +
                                        " values must be >= 1");
        }
    }
    return out;
}

} // namespace

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)> &fn) {
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

ExperimentConfig ExperimentConfig::from_file(const std::string &path) {
    return from_json(load_json_file(path));
}

ExperimentConfig ExperimentConfig::from_json(const json &doc) {
    if (!doc.is_object()) {
        throw std::invalid_argument("config: expected a JSON object");
    }
    static const char *known[] = {"problem", "environment", "class",
                                  "loss",    "epsilon",     "delta",
                                  "trials",  "seed",        "strategy",
                                  "mode",    "budget",      "exact_limit",
                                  "check",   "n",           "observable",
                                  "workers"};
    for (const auto &[key, value] : doc.items()) {
        (void)value;
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char *k) { return key == k; }) ==
            std::end(known)) {
            throw std::invalid_argument("config: unknown key \"" + key +
                                        "\"");
        }
    }

    ExperimentConfig cfg;
    cfg.raw = doc;
    if (doc.contains("epsilon")) {
        cfg.epsilons = unit_grid_from(doc["epsilon"], "epsilon");
    }
    if (doc.contains("delta")) {
        cfg.deltas = unit_grid_from(doc["delta"], "delta");
    }
    if (doc.contains("budget")) {
        cfg.budgets = size_grid_from(doc["budget"], "budget");
    }
    if (doc.contains("n")) {
        cfg.sample_grid = size_grid_from(doc["n"], "n");
    }
    if (doc.contains("trials")) {
        cfg.trials = size_grid_from(doc["trials"], "trials").front();
    }
    if (doc.contains("seed")) {
        if (!is_nonneg_int(doc["seed"])) {
            throw std::invalid_argument(
                "config: seed must be a nonnegative integer");
        }
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("strategy")) {
        cfg.strategy = doc["strategy"].get<std::string>();
        if (cfg.strategy != "greedy" && cfg.strategy != "exact" &&
            cfg.strategy != "singleton" && cfg.strategy != "best") {
            throw std::invalid_argument("config: unknown strategy \"" +
                                        cfg.strategy + "\"");
        }
    }
    if (doc.contains("mode")) {
        cfg.mode = doc["mode"].get<std::string>();
        if (cfg.mode != "complexity" && cfg.mode != "budget") {
            throw std::invalid_argument("config: unknown mode \"" +
                                        cfg.mode + "\"");
        }
    }
    if (doc.contains("check")) {
        cfg.check = doc["check"].get<std::string>();
        if (cfg.check != "lemma1" && cfg.check != "lemma2") {
            throw std::invalid_argument("config: unknown check \"" +
                                        cfg.check + "\"");
        }
    }
    if (doc.contains("exact_limit")) {
        cfg.exact_limit =
            size_grid_from(doc["exact_limit"], "exact_limit").front();
    }
    if (doc.contains("workers")) {
        if (!is_nonneg_int(doc["workers"])) {
            throw std::invalid_argument(
                "config: workers must be a nonnegative integer");
        }
        cfg.workers = doc["workers"].get<std::size_t>();
    }
    return cfg;
}

std::string ExperimentConfig::hash() const {
    const std::string s = raw.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::vector<std::string> label_names(const json &doc, const char *key,
                                     std::size_t fallback_count) {
    if (doc.contains(key)) {
        if (is_nonneg_int(doc[key])) {
            fallback_count = doc[key].get<std::size_t>();
        } else if (doc[key].is_array()) {
            return doc[key].get<std::vector<std::string>>();
        } else {
            throw std::invalid_argument(
                "config: labels must be a count or an array of names");
        }
    }
    std::vector<std::string> out;
    for (std::size_t y = 0; y < fallback_count; ++y) {
        out.push_back(std::to_string(y));
    }
    return out;
}

std::size_t uint_or(const json &doc, const char *key,
                    std::size_t fallback) {
    if (!doc.contains(key)) {
        return fallback;
    }
    if (!is_nonneg_int(doc[key])) {
        throw std::invalid_argument(std::string("config: ") + key +
                                    " must be a nonnegative integer");
    }
    return doc[key].get<std::size_t>();
}

ProblemSetup finish_problem(Environment env, ConceptClass concepts,
                            std::optional<LossFunction> embedded_loss,
                            std::optional<std::size_t> truth,
                            const json &config_doc) {
    if (env.dim() != concepts.dim()) {
        throw ValidationError(
            "config: environment and class dimensions differ");
    }
    if (env.labels() != concepts.labels()) {
        throw ValidationError(
            "config: environment and class label alphabets differ");
    }
    LossFunction loss =
        config_doc.contains("loss")
            ? loss_from_json(config_doc["loss"], concepts.labels())
            : (embedded_loss ? std::move(*embedded_loss)
                             : LossFunction::zero_one(concepts.labels()));
    return ProblemSetup{std::move(env), std::move(concepts),
                        std::move(loss), truth};
}

ProblemSetup build_from_preset(const json &p, const json &config_doc) {
    const auto preset = p.at("preset").get<std::string>();
    const std::uint64_t preset_seed = uint_or(p, "preset_seed", 0);
    RngStream rng(preset_seed);

    if (preset == "realizable_shared_basis") {
        const auto dim =
            static_cast<Eigen::Index>(uint_or(p, "dim", 4));
        const std::size_t n_labels =
            label_names(p, "labels", 2).size();
        const std::size_t k = uint_or(p, "class_size", 8);
        RealizableProblem problem =
            realizable_shared_basis(dim, n_labels, k, rng);
        return finish_problem(std::move(problem.env),
                              std::move(problem.concepts), std::nullopt,
                              problem.truth_position, config_doc);
    }
    if (preset == "classical_embed") {
        const std::size_t features = uint_or(p, "features", 4);
        std::vector<std::string> labels = label_names(p, "labels", 2);
        const std::size_t k = uint_or(p, "class_size", 8);
        const bool realizable =
            !p.contains("realizable") || p["realizable"].get<bool>();
        const auto functions =
            random_functions(features, labels.size(), k, true, rng);
        const auto nx = static_cast<Eigen::Index>(features);
        const auto ny = static_cast<Eigen::Index>(labels.size());
        Eigen::MatrixXd dist(nx, ny);
        if (realizable) {
            dist.setZero();
            for (Eigen::Index x = 0; x < nx; ++x) {
                dist(x, static_cast<Eigen::Index>(
                            functions[0][static_cast<std::size_t>(x)])) =
                    1.0 / static_cast<double>(nx);
            }
        } else {
            double total = 0.0;
            for (Eigen::Index x = 0; x < nx; ++x) {
                for (Eigen::Index y = 0; y < ny; ++y) {
                    dist(x, y) = rng.uniform() + 1e-3;
                    total += dist(x, y);
                }
            }
            dist /= total;
        }
        EmbeddedProblem problem =
            classical_embed(features, labels, dist, functions);
        return finish_problem(
            std::move(problem.env), std::move(problem.concepts),
            std::nullopt,
            realizable ? std::optional<std::size_t>(0) : std::nullopt,
            config_doc);
    }
    throw std::invalid_argument("config: unknown problem preset \"" +
                                preset + "\"");
}

Environment build_environment(const json &e) {
    if (e.contains("manifest")) {
        return environment_from_json(
            load_json_file(e["manifest"].get<std::string>()));
    }
    if (e.contains("preset")) {
        const auto preset = e["preset"].get<std::string>();
        if (preset == "bloch_spin") {
            const auto n_theta =
                static_cast<int>(uint_or(e, "n_theta", 20));
            const auto n_phi = static_cast<int>(uint_or(e, "n_phi", 20));
            OrthantRule rule;
            if (e.contains("orthant")) {
                const auto signs = e["orthant"].get<std::vector<int>>();
                if (signs.size() != 3) {
                    throw std::invalid_argument(
                        "config: orthant needs three signs");
                }
                for (int i = 0; i < 3; ++i) {
                    if (signs[static_cast<std::size_t>(i)] != 1 &&
                        signs[static_cast<std::size_t>(i)] != -1) {
                        throw std::invalid_argument(
                            "config: orthant signs must be +-1");
                    }
                    rule.signs[static_cast<std::size_t>(i)] =
                        signs[static_cast<std::size_t>(i)];
                }
            }
            return bloch_spin_preset(n_theta, n_phi, rule);
        }
        throw std::invalid_argument(
            "config: unknown environment preset \"" + preset + "\"");
    }
    throw std::invalid_argument(
        "config: environment needs \"manifest\" or \"preset\"");
}

std::pair<ConceptClass, std::optional<LossFunction>>
build_class(const json &c) {
    if (c.contains("manifest")) {
        ClassManifest manifest = class_from_json(
            load_json_file(c["manifest"].get<std::string>()));
        return {std::move(manifest.concepts), std::move(manifest.loss)};
    }
    if (c.contains("random")) {
        const json &r = c["random"];
        const auto structure_name = r.at("structure").get<std::string>();
        ClassStructure structure;
        if (structure_name == "shared_basis") {
            structure = ClassStructure::shared_basis;
        } else if (structure_name == "blocks") {
            structure = ClassStructure::blocks;
        } else if (structure_name == "haar_random") {
            structure = ClassStructure::haar_random;
        } else {
            throw std::invalid_argument(
                "config: unknown class structure \"" + structure_name +
                "\"");
        }
        const auto dim = static_cast<Eigen::Index>(uint_or(r, "dim", 2));
        const std::size_t k = uint_or(r, "class_size", 4);
        const std::size_t blocks = uint_or(r, "blocks", 2);
        RngStream rng(uint_or(r, "preset_seed", 0));
        return {random_class(dim, label_names(r, "labels", 2), k,
                             structure, blocks, rng),
                std::nullopt};
    }
    throw std::invalid_argument(
        "config: class needs \"manifest\" or \"random\"");
}

} // namespace

ProblemSetup ExperimentConfig::build_problem() const {
    if (raw.contains("problem")) {
        return build_from_preset(raw["problem"], raw);
    }
    if (!raw.contains("environment") || !raw.contains("class")) {
        throw std::invalid_argument(
            "config: need \"problem\" or both \"environment\" and "
            "\"class\"");
    }
    Environment env = build_environment(raw["environment"]);
    auto [concepts, embedded_loss] = build_class(raw["class"]);
    return finish_problem(std::move(env), std::move(concepts),
                          std::move(embedded_loss), std::nullopt, raw);
}

// --- validate ---

namespace {

void append_checks(ValidationReport &report, const std::string &object,
                   const std::vector<CheckResult> &checks) {
    for (const auto &c : checks) {
        report.ok = report.ok && c.pass;
        report.items.push_back(ValidationItem{object, c});
    }
}

} // namespace

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    os << "manifest kind: " << kind << "\n";
    for (const auto &item : items) {
        char residual[32];
        std::snprintf(residual, sizeof(residual), "%.3e",
                      item.check.residual);
        os << (item.check.pass ? "PASS" : "FAIL") << "  " << item.object
           << "." << item.check.name << "  residual=" << residual
           << " tolerance=" << csv_num(item.check.tolerance) << "\n";
    }
    os << (ok ? "RESULT: all checks passed" : "RESULT: validation failed")
       << "\n";
    return os.str();
}

json ValidationReport::to_json() const {
    json items_doc = json::array();
    for (const auto &item : items) {
        items_doc.push_back(json{{"object", item.object},
                                 {"check", item.check.name},
                                 {"residual", item.check.residual},
                                 {"tolerance", item.check.tolerance},
                                 {"pass", item.check.pass}});
    }
    return json{{"kind", kind}, {"checks", std::move(items_doc)},
                {"ok", ok}};
}

ValidationReport cmd_validate(const std::string &manifest_path) {
    const json doc = load_json_file(manifest_path);
    ValidationReport report;

    if (doc.contains("predictors")) {
        report.kind = "class";
        for (std::size_t i = 0; i < doc["predictors"].size(); ++i) {
            const json &p = doc["predictors"][i];
            std::vector<ComplexMatrix> mats;
            for (const auto &e : p.at("elements")) {
                mats.push_back(matrix_from_json(e));
            }
            append_checks(report, "predictor[" + std::to_string(i) + "]",
                          povm_checks(mats, true));
        }
        if (doc.contains("loss") && doc["loss"].contains("table")) {
            double worst = 0.0;
            for (const auto &row : doc["loss"]["table"]) {
                for (const auto &v : row) {
                    const double x = v.get<double>();
                    worst = std::max(worst,
                                     std::max(-x, x - 1.0));
                }
            }
            append_checks(report, "loss",
                          {CheckResult{"range", std::max(0.0, worst), 0.0,
                                       worst <= 0.0}});
        }
    } else if (doc.contains("states")) {
        report.kind = "environment";
        for (std::size_t x = 0; x < doc["states"].size(); ++x) {
            append_checks(report, "state[" + std::to_string(x) + "]",
                          density_checks(
                              matrix_from_json(doc["states"][x])));
        }
        double sum = 0.0;
        double most_negative = 0.0;
        for (const auto &row : doc.at("dist")) {
            for (const auto &v : row) {
                const double p = v.get<double>();
                sum += p;
                most_negative = std::min(most_negative, p);
            }
        }
        append_checks(
            report, "dist",
            {CheckResult{"nonnegative", -most_negative, 0.0,
                         most_negative >= 0.0},
             CheckResult{"normalized", std::abs(sum - 1.0),
                         tol::probability,
                         std::abs(sum - 1.0) <= tol::probability}});
    } else if (doc.contains("elements")) {
        report.kind = "povm";
        std::vector<ComplexMatrix> mats;
        for (const auto &e : doc["elements"]) {
            mats.push_back(matrix_from_json(e));
        }
        append_checks(report, "povm", povm_checks(mats, true));
    } else if (doc.contains("re")) {
        report.kind = "operator";
        const ComplexMatrix m = matrix_from_json(doc);
        append_checks(report, "operator",
                      {check_finite(m), check_hermitian(m)});
    } else {
        throw ValidationError(
            "manifest: unrecognized kind (expected operator, povm, class "
            "or environment keys)");
    }
    return report;
}

// --- partition ---

namespace {

struct StrategyChoice {
    PartitionStrategy strategy = PartitionStrategy::greedy;
    std::string name;
    std::size_t objective = 0;
    std::size_t m = 0;
};

/// Builds the candidate partitions once; exact is skipped over the size
/// limit. Order encodes the tie-break preference.
std::vector<std::pair<PartitionStrategy, CompatibilityPartition>>
candidate_partitions(const ConceptClass &c, std::size_t exact_limit) {
    std::vector<std::pair<PartitionStrategy, CompatibilityPartition>> out;
    if (c.size() <= exact_limit) {
        out.emplace_back(
            PartitionStrategy::exact,
            partition_compatible(c, PartitionStrategy::exact, exact_limit));
    }
    out.emplace_back(PartitionStrategy::greedy,
                     partition_compatible(c, PartitionStrategy::greedy));
    out.emplace_back(
        PartitionStrategy::singleton,
        partition_compatible(c, PartitionStrategy::singleton));
    return out;
}

StrategyChoice resolve_strategy(
    const std::vector<std::pair<PartitionStrategy, CompatibilityPartition>>
        &candidates,
    const std::string &requested, double epsilon, double delta) {
    StrategyChoice best;
    bool have = false;
    for (const auto &[strategy, partition] : candidates) {
        const std::string name = to_string(strategy);
        if (requested != "best" && requested != name) {
            continue;
        }
        const std::size_t objective =
            objective_of_partition(partition, epsilon, delta);
        if (!have || objective < best.objective) {
            have = true;
            best = StrategyChoice{strategy, name, objective,
                                  partition.m()};
        }
    }
    if (!have) {
        // Requested exact on a class over the limit.
        throw std::invalid_argument(
            "strategy \"" + requested +
            "\" unavailable for this class (size over the exact limit)");
    }
    return best;
}

} // namespace

json cmd_partition(const std::string &class_manifest_path, double epsilon,
                   double delta, std::size_t exact_limit) {
    const ClassManifest manifest =
        class_from_json(load_json_file(class_manifest_path));
    const ConceptClass &c = manifest.concepts;
    const auto candidates = candidate_partitions(c, exact_limit);

    json strategies = json::object();
    std::string best_name;
    std::size_t best_objective = 0;
    for (const auto &[strategy, partition] : candidates) {
        const std::size_t objective =
            objective_of_partition(partition, epsilon, delta);
        strategies[to_string(strategy)] =
            partition_to_json(partition, c, to_string(strategy), objective);
        if (best_name.empty() || objective < best_objective) {
            best_name = to_string(strategy);
            best_objective = objective;
        }
    }
    if (c.size() > exact_limit) {
        strategies["exact"] = nullptr;
    }
    return json{{"epsilon", epsilon},
                {"delta", delta},
                {"strategies", std::move(strategies)},
                {"best", best_name},
                {"best_objective", best_objective},
                {"compatible_class_bound",
                 compatible_class_bound(c.size(), epsilon, delta)}};
}

// --- qerm / naive sweeps ---

namespace {

constexpr const char *kQermCsvHeader =
    "trial,epsilon,delta,m,n_total,selected_id,emp_loss,true_risk,opt,"
    "excess,failed,seed,config_hash\n";

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2]
                      : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace

SweepOutput cmd_qerm(const ExperimentConfig &config, bool naive) {
    const ProblemSetup problem = config.build_problem();
    const bool budget_mode = config.mode == "budget";
    if (budget_mode && config.budgets.empty()) {
        throw std::invalid_argument(
            "config: budget mode needs a \"budget\" grid");
    }

    const auto candidates =
        candidate_partitions(problem.concepts, config.exact_limit);

    std::string csv = kQermCsvHeader;
    json points = json::array();
    const std::string hash = config.hash();

    std::vector<std::optional<std::size_t>> budget_grid;
    if (budget_mode) {
        for (std::size_t b : config.budgets) {
            budget_grid.emplace_back(b);
        }
    } else {
        budget_grid.emplace_back(std::nullopt);
    }

    for (double epsilon : config.epsilons) {
        for (double delta : config.deltas) {
            const StrategyChoice choice =
                naive ? StrategyChoice{PartitionStrategy::singleton,
                                       "singleton", 0, 0}
                      : resolve_strategy(candidates, config.strategy,
                                         epsilon, delta);
            for (const auto &budget : budget_grid) {
                QermOptions options;
                options.epsilon = epsilon;
                options.delta = delta;
                options.strategy = choice.strategy;
                options.mode = budget_mode ? BatchMode::budget
                                           : BatchMode::complexity;
                options.total_n = budget;
                options.exact_limit = config.exact_limit;

                json point{{"epsilon", epsilon},
                           {"delta", delta},
                           {"budget", budget ? json(*budget)
                                             : json(nullptr)},
                           {"strategy_requested",
                            naive ? "singleton" : config.strategy},
                           {"trials", config.trials}};
                try {
                    // One dry plan catches infeasible grid points before
                    // burning trials; errors are deterministic across
                    // trials.
                    CompatibilityPartition partition =
                        partition_compatible(problem.concepts,
                                             options.strategy,
                                             options.exact_limit);
                    plan_batches(partition, epsilon, delta, options.mode,
                                 options.total_n);
                } catch (const InfeasibleError &e) {
                    point["error"] = e.what();
                    points.push_back(std::move(point));
                    continue;
                }

                std::vector<QermReport> reports(config.trials);
                parallel_for(
                    config.trials, config.workers, [&](std::size_t t) {
                        RngStream rng(config.seed + t);
                        reports[t] = run_qerm(problem.concepts,
                                              problem.loss, problem.env,
                                              rng, options);
                    });

                std::size_t failures = 0;
                std::vector<double> excesses;
                excesses.reserve(config.trials);
                for (std::size_t t = 0; t < config.trials; ++t) {
                    const QermReport &r = reports[t];
                    const double excess = *r.excess;
                    const bool failed = excess > epsilon;
                    failures += failed ? 1 : 0;
                    excesses.push_back(excess);
                    const std::size_t n_total = std::accumulate(
                        r.batch_sizes.begin(), r.batch_sizes.end(),
                        std::size_t{0});
                    csv += std::to_string(t) + "," + csv_num(epsilon) +
                           "," + csv_num(delta) + "," +
                           std::to_string(r.subclasses.size()) + "," +
                           std::to_string(n_total) + "," +
                           std::to_string(r.selected.id) + "," +
                           csv_num(r.min_empirical_loss) + "," +
                           csv_num(*r.true_risk_selected) + "," +
                           csv_num(*r.opt) + "," + csv_num(excess) + "," +
                           (failed ? "1" : "0") + "," +
                           std::to_string(config.seed) + "," + hash + "\n";
                }
                const QermReport &first = reports.front();
                point["strategy_used"] = first.strategy;
                point["m"] = first.subclasses.size();
                point["n_total"] = std::accumulate(
                    first.batch_sizes.begin(), first.batch_sizes.end(),
                    std::size_t{0});
                point["opt"] = *first.opt;
                point["failure_rate"] =
                    static_cast<double>(failures) /
                    static_cast<double>(config.trials);
                point["mean_excess"] =
                    std::accumulate(excesses.begin(), excesses.end(),
                                    0.0) /
                    static_cast<double>(config.trials);
                point["median_excess"] = median(excesses);
                point["per_subclass_delta"] =
                    delta / static_cast<double>(first.subclasses.size());
                points.push_back(std::move(point));
            }
        }
    }

    json summary{{"algorithm", naive ? "naive" : "qerm"},
                 {"seed", config.seed},
                 {"config_hash", hash},
                 {"points", std::move(points)}};
    return SweepOutput{std::move(csv), std::move(summary)};
}

// --- compare ---

SweepOutput cmd_compare(const ExperimentConfig &config) {
    const ProblemSetup problem = config.build_problem();
    const auto candidates =
        candidate_partitions(problem.concepts, config.exact_limit);
    const std::string hash = config.hash();

    std::string csv =
        "epsilon,delta,m_qerm,n_qerm,n_naive,demand_ratio,"
        "qerm_failure_rate,naive_failure_rate,trials,seed,config_hash\n";
    json points = json::array();

    for (double epsilon : config.epsilons) {
        for (double delta : config.deltas) {
            const StrategyChoice choice = resolve_strategy(
                candidates, config.strategy, epsilon, delta);
            const CompatibilityPartition qerm_partition =
                partition_compatible(problem.concepts, choice.strategy,
                                     config.exact_limit);
            const CompatibilityPartition naive_partition =
                partition_compatible(problem.concepts,
                                     PartitionStrategy::singleton);
            const std::size_t n_qerm =
                plan_batches(qerm_partition, epsilon, delta,
                             BatchMode::complexity)
                    .total();
            const std::size_t n_naive =
                plan_batches(naive_partition, epsilon, delta,
                             BatchMode::complexity)
                    .total();
            const double ratio = static_cast<double>(n_naive) /
                                 static_cast<double>(n_qerm);

            std::size_t qerm_failures = 0;
            std::size_t naive_failures = 0;
            std::vector<char> qerm_failed(config.trials, 0);
            std::vector<char> naive_failed(config.trials, 0);
            QermOptions options;
            options.epsilon = epsilon;
            options.delta = delta;
            options.strategy = choice.strategy;
            options.exact_limit = config.exact_limit;
            parallel_for(
                config.trials, config.workers, [&](std::size_t t) {
                    RngStream qerm_rng(config.seed + t);
                    const QermReport qerm_report =
                        run_qerm(problem.concepts, problem.loss,
                                 problem.env, qerm_rng, options);
                    qerm_failed[t] = *qerm_report.excess > epsilon;
                    RngStream naive_rng(config.seed + t);
                    const QermReport naive_report =
                        run_naive(problem.concepts, problem.loss,
                                  problem.env, naive_rng, options);
                    naive_failed[t] = *naive_report.excess > epsilon;
                });
            for (std::size_t t = 0; t < config.trials; ++t) {
                qerm_failures += qerm_failed[t];
                naive_failures += naive_failed[t];
            }
            const double qerm_rate = static_cast<double>(qerm_failures) /
                                     static_cast<double>(config.trials);
            const double naive_rate =
                static_cast<double>(naive_failures) /
                static_cast<double>(config.trials);

            csv += csv_num(epsilon) + "," + csv_num(delta) + "," +
                   std::to_string(qerm_partition.m()) + "," +
                   std::to_string(n_qerm) + "," + std::to_string(n_naive) +
                   "," + csv_num(ratio) + "," + csv_num(qerm_rate) + "," +
                   csv_num(naive_rate) + "," +
                   std::to_string(config.trials) + "," +
                   std::to_string(config.seed) + "," + hash + "\n";
            points.push_back(json{{"epsilon", epsilon},
                                  {"delta", delta},
                                  {"strategy_used", choice.name},
                                  {"m_qerm", qerm_partition.m()},
                                  {"n_qerm", n_qerm},
                                  {"n_naive", n_naive},
                                  {"demand_ratio", ratio},
                                  {"qerm_failure_rate", qerm_rate},
                                  {"naive_failure_rate", naive_rate}});
        }
    }
    json summary{{"algorithm", "compare"},
                 {"seed", config.seed},
                 {"config_hash", hash},
                 {"points", std::move(points)}};
    return SweepOutput{std::move(csv), std::move(summary)};
}

// --- concentration ---

namespace {

struct ObservableSetup {
    Povm povm;
    std::vector<double> values;
    DensityOperator state;
};

ObservableSetup observable_from_config(const ExperimentConfig &config) {
    // Default: the 0/1-valued computational-basis observable on |+><+|.
    Eigen::VectorXcd plus(2);
    plus << 1.0, 1.0;
    ObservableSetup setup{basis_measurement(2), {0.0, 1.0},
                          pure_state(plus)};
    if (!config.raw.contains("observable")) {
        return setup;
    }
    const json &o = config.raw["observable"];
    if (o.contains("povm")) {
        setup.povm = povm_from_json(o["povm"]);
    }
    if (o.contains("values")) {
        setup.values = o["values"].get<std::vector<double>>();
    } else if (o.contains("povm")) {
        setup.values.clear();
        for (std::size_t v = 0; v < setup.povm.size(); ++v) {
            setup.values.push_back(static_cast<double>(v));
        }
    }
    if (o.contains("state")) {
        setup.state = DensityOperator(matrix_from_json(o["state"]));
    }
    if (setup.values.size() != setup.povm.size()) {
        throw std::invalid_argument(
            "config: observable needs one value per outcome");
    }
    return setup;
}

} // namespace

SweepOutput cmd_concentration(const ExperimentConfig &config) {
    const std::string hash = config.hash();
    const std::vector<std::size_t> n_grid =
        config.sample_grid.empty()
            ? std::vector<std::size_t>{100, 500, 2000}
            : config.sample_grid;
    json points = json::array();
    std::string csv;
    std::size_t point_index = 0;

    if (config.check == "lemma1") {
        const ObservableSetup setup = observable_from_config(config);
        const auto [lo, hi] = std::minmax_element(setup.values.begin(),
                                                  setup.values.end());
        const double range = *hi - *lo;
        csv = "n,delta,t,expectation,exceedance,bound,trials,seed,"
              "config_hash\n";
        for (std::size_t n : n_grid) {
            for (double delta : config.deltas) {
                const double t = deviation_bound(n, range, delta);
                RngStream rng(config.seed + point_index++);
                const ConcentrationResult result = check_concentration(
                    setup.povm, setup.values, setup.state, n,
                    config.trials, t, rng);
                csv += std::to_string(n) + "," + csv_num(delta) + "," +
                       csv_num(t) + "," + csv_num(result.expectation) +
                       "," + csv_num(result.exceedance_rate) + "," +
                       csv_num(delta) + "," +
                       std::to_string(config.trials) + "," +
                       std::to_string(config.seed) + "," + hash + "\n";
                points.push_back(
                    json{{"n", n},
                         {"delta", delta},
                         {"t", t},
                         {"expectation", result.expectation},
                         {"exceedance", result.exceedance_rate},
                         {"bound", delta}});
            }
        }
    } else {
        const ProblemSetup problem = config.build_problem();
        csv = "n,delta,radius,exceedance,trials,seed,config_hash\n";
        for (std::size_t n : n_grid) {
            for (double delta : config.deltas) {
                RngStream rng(config.seed + point_index++);
                const ClassConcentrationResult result =
                    check_class_concentration(problem.concepts,
                                              problem.loss, problem.env,
                                              n, config.trials, delta,
                                              rng);
                csv += std::to_string(n) + "," + csv_num(delta) + "," +
                       csv_num(result.radius) + "," +
                       csv_num(result.exceedance_rate) + "," +
                       std::to_string(config.trials) + "," +
                       std::to_string(config.seed) + "," + hash + "\n";
                points.push_back(json{
                    {"n", n},
                    {"delta", delta},
                    {"radius", result.radius},
                    {"exceedance", result.exceedance_rate},
                    {"bound", delta}});
            }
        }
    }
    json summary{{"algorithm", "concentration"},
                 {"check", config.check},
                 {"seed", config.seed},
                 {"config_hash", hash},
                 {"points", std::move(points)}};
    return SweepOutput{std::move(csv), std::move(summary)};
}

// --- embed-classical ---

json cmd_embed_classical(const ExperimentConfig &config) {
    if (!config.raw.contains("problem") ||
        config.raw["problem"].value("preset", "") != "classical_embed") {
        throw std::invalid_argument(
            "config: embed-classical needs a classical_embed problem "
            "preset");
    }
    const ProblemSetup problem = config.build_problem();
    return json{
        {"environment", environment_to_json(problem.env)},
        {"class", class_to_json(problem.concepts, &problem.loss)}};
}

} // namespace qpac
