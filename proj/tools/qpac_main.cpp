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

// Command-line front end. Subcommands: validate, partition, qerm, naive,
// compare, concentration, embed-classical. Progress goes to stderr only;
// stdout (or --out) carries data, so output pipes cleanly.
//
// Exit codes: 0 success, 1 usage error, 2 validation failure,
// 3 infeasible experiment.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qpac/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;

void emit(const std::string &data, const std::string &out_path) {
    if (out_path.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw qpac::ValidationError("cannot open output file: " + out_path);
    }
    out << data;
}

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::string> strategy;
    std::optional<std::string> mode;
};

qpac::ExperimentConfig load_config(const CommonFlags &flags) {
    qpac::json doc = qpac::load_json_file(flags.config_path);
    if (flags.seed) {
        doc["seed"] = *flags.seed;
    }
    if (flags.trials) {
        doc["trials"] = *flags.trials;
    }
    if (flags.strategy) {
        doc["strategy"] = *flags.strategy;
    }
    if (flags.mode) {
        doc["mode"] = *flags.mode;
    }
    return qpac::ExperimentConfig::from_json(doc);
}

void add_common_flags(CLI::App *cmd, CommonFlags &flags,
                      bool with_format = true) {
    cmd->add_option("--config", flags.config_path, "Experiment config JSON")
        ->required();
    cmd->add_option("--out", flags.out_path,
                    "Write data here instead of stdout");
    if (with_format) {
        cmd->add_option("--format", flags.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
    }
    cmd->add_option("--seed", flags.seed, "Override the config seed");
    cmd->add_option("--trials", flags.trials,
                    "Override the config trial count");
    cmd->add_option("--strategy", flags.strategy,
                    "Override the partition strategy")
        ->check(CLI::IsMember({"greedy", "exact", "singleton", "best"}));
    cmd->add_option("--mode", flags.mode, "Override the batch mode")
        ->check(CLI::IsMember({"complexity", "budget"}));
}

void emit_sweep(const qpac::SweepOutput &output, const CommonFlags &flags) {
    if (flags.format == "json") {
        emit(output.summary.dump(2) + "\n", flags.out_path);
    } else {
        emit(output.csv, flags.out_path);
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum PAC learning simulator and experiment harness"};
    app.require_subcommand(1);

    // validate
    std::string manifest_path;
    std::string validate_format = "text";
    std::string validate_out;
    auto *validate =
        app.add_subcommand("validate", "Check a manifest's invariants");
    validate->add_option("manifest", manifest_path, "Manifest JSON file")
        ->required();
    validate->add_option("--format", validate_format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    validate->add_option("--out", validate_out,
                         "Write the report here instead of stdout");

    // partition
    std::string partition_manifest;
    double partition_epsilon = 0.2;
    double partition_delta = 0.1;
    std::size_t partition_exact_limit = qpac::kExactPartitionLimit;
    std::string partition_out;
    auto *partition = app.add_subcommand(
        "partition", "Partition a class and report sample objectives");
    partition->add_option("manifest", partition_manifest,
                          "Class manifest JSON file")
        ->required();
    partition->add_option("--epsilon", partition_epsilon,
                          "Accuracy parameter for the objective");
    partition->add_option("--delta", partition_delta,
                          "Confidence parameter for the objective");
    partition->add_option("--exact-limit", partition_exact_limit,
                          "Largest class the exact strategy attempts");
    partition->add_option("--out", partition_out,
                          "Write the JSON here instead of stdout");

    CommonFlags qerm_flags;
    auto *qerm = app.add_subcommand("qerm", "Run QERM trials over a grid");
    add_common_flags(qerm, qerm_flags);

    CommonFlags naive_flags;
    auto *naive = app.add_subcommand(
        "naive", "Run the per-predictor baseline over a grid");
    add_common_flags(naive, naive_flags);

    CommonFlags compare_flags;
    auto *compare = app.add_subcommand(
        "compare", "Compare QERM and naive sample demand");
    add_common_flags(compare, compare_flags);

    CommonFlags concentration_flags;
    auto *concentration = app.add_subcommand(
        "concentration", "Empirical concentration-bound tables");
    add_common_flags(concentration, concentration_flags);

    CommonFlags embed_flags;
    auto *embed = app.add_subcommand(
        "embed-classical",
        "Emit environment and class manifests for a classical problem");
    add_common_flags(embed, embed_flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*validate) {
            const qpac::ValidationReport report =
                qpac::cmd_validate(manifest_path);
            emit(validate_format == "json"
                     ? report.to_json().dump(2) + "\n"
                     : report.to_text(),
                 validate_out);
            return report.ok ? kExitOk : kExitValidation;
        }
        if (*partition) {
            const qpac::json doc = qpac::cmd_partition(
                partition_manifest, partition_epsilon, partition_delta,
                partition_exact_limit);
            emit(doc.dump(2) + "\n", partition_out);
            return kExitOk;
        }
        if (*qerm) {
            std::cerr << "running qerm sweep...\n";
            emit_sweep(qpac::cmd_qerm(load_config(qerm_flags), false),
                       qerm_flags);
            return kExitOk;
        }
        if (*naive) {
            std::cerr << "running naive sweep...\n";
            emit_sweep(qpac::cmd_qerm(load_config(naive_flags), true),
                       naive_flags);
            return kExitOk;
        }
        if (*compare) {
            std::cerr << "running qerm/naive comparison...\n";
            emit_sweep(qpac::cmd_compare(load_config(compare_flags)),
                       compare_flags);
            return kExitOk;
        }
        if (*concentration) {
            std::cerr << "running concentration tables...\n";
            emit_sweep(
                qpac::cmd_concentration(load_config(concentration_flags)),
                concentration_flags);
            return kExitOk;
        }
        if (*embed) {
            const qpac::json doc =
                qpac::cmd_embed_classical(load_config(embed_flags));
            emit(doc.dump(2) + "\n", embed_flags.out_path);
            return kExitOk;
        }
    } catch (const qpac::InfeasibleError &e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const qpac::ValidationError &e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
