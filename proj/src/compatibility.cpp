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

#include "qpac/compatibility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qpac {

bool are_compatible(const Predictor &p, const Predictor &q) {
    return povms_commute(p.povm, q.povm);
}

std::vector<std::vector<char>> compatibility_graph(const ConceptClass &c) {
    const std::size_t k = c.size();
    std::vector<std::vector<char>> adj(k, std::vector<char>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        adj[i][i] = 1;
        for (std::size_t j = i + 1; j < k; ++j) {
            const char e =
                are_compatible(c.predictor(i), c.predictor(j)) ? 1 : 0;
            adj[i][j] = e;
            adj[j][i] = e;
        }
    }
    return adj;
}

CompatibilityPartition::CompatibilityPartition(
    const ConceptClass &c, std::vector<std::vector<std::size_t>> subclasses)
    : class_size_(c.size()), subclasses_(std::move(subclasses)) {
    std::vector<char> seen(c.size(), 0);
    for (auto &sub : subclasses_) {
        if (sub.empty()) {
            throw ValidationError("partition: empty subclass");
        }
        std::sort(sub.begin(), sub.end());
        for (std::size_t pos : sub) {
            if (pos >= c.size() || seen[pos]) {
                throw ValidationError(
                    "partition: subclasses must disjointly cover the class");
            }
            seen[pos] = 1;
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw ValidationError("partition: some predictors unassigned");
    }
    for (const auto &sub : subclasses_) {
        for (std::size_t a = 0; a < sub.size(); ++a) {
            for (std::size_t b = a + 1; b < sub.size(); ++b) {
                if (!are_compatible(c.predictor(sub[a]),
                                    c.predictor(sub[b]))) {
                    std::ostringstream os;
                    os << "partition: predictors " << sub[a] << " and "
                       << sub[b] << " share a subclass but do not commute";
                    throw ValidationError(os.str());
                }
            }
        }
    }
    measurements_.reserve(subclasses_.size());
    for (const auto &sub : subclasses_) {
        std::vector<ProjectivePovm> povms;
        povms.reserve(sub.size());
        for (std::size_t pos : sub) {
            povms.push_back(c.predictor(pos).povm);
        }
        SimultaneousEigenbasis eb = simultaneous_eigenbasis(povms);
        measurements_.push_back(SubclassMeasurement{
            sub, std::move(eb.basis), std::move(eb.outcome_table)});
    }
}

namespace {

std::vector<std::vector<std::size_t>>
greedy_cover(const std::vector<std::vector<char>> &adj,
             std::span<const std::size_t> order) {
    std::vector<std::vector<std::size_t>> subclasses;
    for (std::size_t v : order) {
        bool placed = false;
        for (auto &sub : subclasses) {
            const bool fits =
                std::all_of(sub.begin(), sub.end(),
                            [&](std::size_t u) { return adj[v][u]; });
            if (fits) {
                sub.push_back(v);
                placed = true;
                break;
            }
        }
        if (!placed) {
            subclasses.push_back({v});
        }
    }
    return subclasses;
}

// Branch and bound over assignments of vertices (in index order) to
// cliques. Cliques are opened in vertex order, so the assignment vector
// is already in canonical form and comparable lexicographically.
class ExactCoverSearch {
  public:
    explicit ExactCoverSearch(const std::vector<std::vector<char>> &adj)
        : adj_(adj), n_(adj.size()), assign_(adj.size(), 0) {}

    std::vector<std::vector<std::size_t>> run() {
        // Seed the bound with the greedy cover so equal-m exploration
        // starts pruned.
        std::vector<std::size_t> order(n_);
        std::iota(order.begin(), order.end(), 0);
        record(canonical_assignment(greedy_cover(adj_, order)));

        cliques_.clear();
        dfs(0);

        std::vector<std::vector<std::size_t>> out(
            1 + *std::max_element(best_assign_.begin(), best_assign_.end()));
        for (std::size_t v = 0; v < n_; ++v) {
            out[best_assign_[v]].push_back(v);
        }
        return out;
    }

  private:
    std::vector<std::size_t>
    canonical_assignment(const std::vector<std::vector<std::size_t>> &subs) {
        // Relabel subclasses by their smallest member so assignment
        // vectors from different constructions compare consistently.
        std::vector<std::pair<std::size_t, std::size_t>> firsts;
        for (std::size_t r = 0; r < subs.size(); ++r) {
            firsts.emplace_back(
                *std::min_element(subs[r].begin(), subs[r].end()), r);
        }
        std::sort(firsts.begin(), firsts.end());
        std::vector<std::size_t> assign(n_, 0);
        for (std::size_t rank = 0; rank < firsts.size(); ++rank) {
            for (std::size_t v : subs[firsts[rank].second]) {
                assign[v] = rank;
            }
        }
        return assign;
    }

    void record(const std::vector<std::size_t> &assign) {
        const std::size_t m =
            1 + *std::max_element(assign.begin(), assign.end());
        std::vector<std::size_t> sizes(m, 0);
        for (std::size_t a : assign) {
            ++sizes[a];
        }
        std::size_t sumsq = 0;
        for (std::size_t s : sizes) {
            sumsq += s * s;
        }
        const bool better =
            best_assign_.empty() ||
            std::tie(m, sumsq, assign) <
                std::tie(best_m_, best_sumsq_, best_assign_);
        if (better) {
            best_m_ = m;
            best_sumsq_ = sumsq;
            best_assign_ = assign;
        }
    }

    void dfs(std::size_t v) {
        if (v == n_) {
            record(assign_);
            return;
        }
        // The clique count never decreases, so any branch already past
        // the best m cannot win.
        for (std::size_t r = 0; r < cliques_.size(); ++r) {
            const bool fits = std::all_of(
                cliques_[r].begin(), cliques_[r].end(),
                [&](std::size_t u) { return adj_[v][u]; });
            if (fits) {
                cliques_[r].push_back(v);
                assign_[v] = r;
                dfs(v + 1);
                cliques_[r].pop_back();
            }
        }
        if (cliques_.size() + 1 <= best_m_) {
            cliques_.push_back({v});
            assign_[v] = cliques_.size() - 1;
            dfs(v + 1);
            cliques_.pop_back();
        }
    }

    const std::vector<std::vector<char>> &adj_;
    std::size_t n_;
    std::vector<std::vector<std::size_t>> cliques_;
    std::vector<std::size_t> assign_;
    std::size_t best_m_ = 0;
    std::size_t best_sumsq_ = 0;
    std::vector<std::size_t> best_assign_;
};

} // namespace

CompatibilityPartition
partition_compatible(const ConceptClass &c, PartitionStrategy strategy,
                     std::size_t exact_limit,
                     std::span<const std::size_t> greedy_order) {
    const std::size_t k = c.size();
    if (strategy == PartitionStrategy::singleton) {
        std::vector<std::vector<std::size_t>> subs(k);
        for (std::size_t v = 0; v < k; ++v) {
            subs[v] = {v};
        }
        return CompatibilityPartition(c, std::move(subs));
    }

    const auto adj = compatibility_graph(c);
    if (strategy == PartitionStrategy::greedy) {
        std::vector<std::size_t> order(k);
        std::iota(order.begin(), order.end(), 0);
        if (!greedy_order.empty()) {
            if (greedy_order.size() != k) {
                throw std::invalid_argument(
                    "partition_compatible: order must permute the class");
            }
            order.assign(greedy_order.begin(), greedy_order.end());
            auto check = order;
            std::sort(check.begin(), check.end());
            for (std::size_t v = 0; v < k; ++v) {
                if (check[v] != v) {
                    throw std::invalid_argument(
                        "partition_compatible: order must permute the "
                        "class");
                }
            }
        }
        return CompatibilityPartition(c, greedy_cover(adj, order));
    }

    if (k > exact_limit) {
        std::ostringstream os;
        os << "partition_compatible: exact strategy limited to "
           << exact_limit << " predictors, got " << k;
        throw std::invalid_argument(os.str());
    }
    return CompatibilityPartition(c, ExactCoverSearch(adj).run());
}

namespace {

void require_unit_interval(double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0) ||
        !(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument(
            "epsilon and delta must lie in (0, 1)");
    }
}

} // namespace

std::size_t theorem_sample_term(std::size_t m, std::size_t subclass_size,
                                double epsilon, double delta) {
    require_unit_interval(epsilon, delta);
    if (m == 0 || subclass_size == 0) {
        throw std::invalid_argument(
            "theorem_sample_term: empty partition or subclass");
    }
    const double term =
        std::ceil((8.0 / (epsilon * epsilon)) *
                  std::log(2.0 * static_cast<double>(m) *
                           static_cast<double>(subclass_size) / delta));
    if (!(term < 9e18)) {
        throw std::invalid_argument("theorem_sample_term: overflow");
    }
    return static_cast<std::size_t>(term);
}

std::size_t objective_for_sizes(std::span<const std::size_t> sizes,
                                double epsilon, double delta) {
    std::size_t total = 0;
    for (std::size_t s : sizes) {
        total += theorem_sample_term(sizes.size(), s, epsilon, delta);
    }
    return total;
}

std::size_t objective_of_partition(const CompatibilityPartition &p,
                                   double epsilon, double delta) {
    std::vector<std::size_t> sizes;
    sizes.reserve(p.m());
    for (const auto &sub : p.subclasses()) {
        sizes.push_back(sub.size());
    }
    return objective_for_sizes(sizes, epsilon, delta);
}

std::size_t compatible_class_bound(std::size_t class_size, double epsilon,
                                   double delta) {
    require_unit_interval(epsilon, delta);
    if (class_size == 0) {
        throw std::invalid_argument("compatible_class_bound: empty class");
    }
    return static_cast<std::size_t>(
        std::ceil((2.0 / (epsilon * epsilon)) *
                  std::log(static_cast<double>(class_size) / delta)));
}

const char *to_string(PartitionStrategy s) {
    switch (s) {
    case PartitionStrategy::greedy:
        return "greedy";
    case PartitionStrategy::exact:
        return "exact";
    case PartitionStrategy::singleton:
        return "singleton";
    }
    return "unknown";
}

PartitionStrategy partition_strategy_from_string(const std::string &s) {
    if (s == "greedy") {
        return PartitionStrategy::greedy;
    }
    if (s == "exact") {
        return PartitionStrategy::exact;
    }
    if (s == "singleton") {
        return PartitionStrategy::singleton;
    }
    throw std::invalid_argument("unknown partition strategy: " + s);
}

} // namespace qpac
