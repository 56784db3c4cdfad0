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

#include "qpac/concept_class.hpp"
#include "qpac/eigenbasis.hpp"

namespace qpac {

/// True iff every element of p commutes with every element of q within
/// the commutator tolerance. Symmetric and reflexive.
bool are_compatible(const Predictor &p, const Predictor &q);

/// Pairwise compatibility adjacency matrix over class positions.
std::vector<std::vector<char>> compatibility_graph(const ConceptClass &c);

/// Joint measurement data for one internally compatible subclass: the
/// members (class positions, ascending), their shared eigenbasis on the
/// feature space, and the outcome each basis vector maps to under each
/// member measurement.
struct SubclassMeasurement {
    std::vector<std::size_t> members;
    ComplexMatrix basis;
    std::vector<std::vector<std::size_t>> outcome_table; // [k][local j]
};

/// A partition of the class into internally commuting subclasses, with
/// the per-subclass shared eigenbasis cached at construction.
class CompatibilityPartition {
  public:
    CompatibilityPartition(const ConceptClass &c,
                           std::vector<std::vector<std::size_t>> subclasses);

    std::size_t m() const { return measurements_.size(); }
    std::size_t class_size() const { return class_size_; }
    const std::vector<std::vector<std::size_t>> &subclasses() const {
        return subclasses_;
    }
    const SubclassMeasurement &subclass_measurement(std::size_t r) const {
        return measurements_[r];
    }

  private:
    std::size_t class_size_;
    std::vector<std::vector<std::size_t>> subclasses_;
    std::vector<SubclassMeasurement> measurements_;
};

enum class PartitionStrategy { greedy, exact, singleton };

inline constexpr std::size_t kExactPartitionLimit = 14;

/// Partitions the class into compatible subclasses.
///
/// greedy: first-fit over the given order (class order by default); each
/// predictor joins the first subclass it is pairwise compatible with,
/// else opens a new one.
///
/// exact: minimum number of subclasses (minimum clique cover of the
/// compatibility graph) by branch and bound; among minimum covers,
/// prefers balanced subclass sizes, then the lexicographically smallest
/// assignment. Limited to classes of at most `exact_limit` predictors.
///
/// singleton: one subclass per predictor; always valid.
CompatibilityPartition
partition_compatible(const ConceptClass &c, PartitionStrategy strategy,
                     std::size_t exact_limit = kExactPartitionLimit,
                     std::span<const std::size_t> greedy_order = {});

/// One subclass term of the sample-count objective:
/// ceil((8 / eps^2) * ln(2 m |C_r| / delta)), natural log. Also the
/// complexity-mode batch size for that subclass.
std::size_t theorem_sample_term(std::size_t m, std::size_t subclass_size,
                                double epsilon, double delta);

/// Sample-count objective of a partition: sum over subclasses of
/// theorem_sample_term(m, |C_r|, eps, delta).
std::size_t objective_of_partition(const CompatibilityPartition &p,
                                   double epsilon, double delta);

/// Same objective evaluated on subclass sizes alone.
std::size_t objective_for_sizes(std::span<const std::size_t> sizes,
                                double epsilon, double delta);

/// The tighter ceil((2 / eps^2) * ln(|C| / delta)) bound that applies
/// when the whole class is compatible; reported alongside the partition
/// objective for comparison, never used for batch sizing.
std::size_t compatible_class_bound(std::size_t class_size, double epsilon,
                                   double delta);

const char *to_string(PartitionStrategy s);
PartitionStrategy partition_strategy_from_string(const std::string &s);

} // namespace qpac
