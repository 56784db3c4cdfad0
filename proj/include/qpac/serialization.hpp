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

#include <json.hpp>
#include <optional>
#include <string>

#include "qpac/compatibility.hpp"
#include "qpac/concept_class.hpp"
#include "qpac/environment.hpp"
#include "qpac/qerm.hpp"

namespace qpac {

using nlohmann::json;

// Operators: {"dim": d, "re": [[...]], "im": [[...]]}, rows outermost.
json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const json &doc);

// POVMs: {"outcomes": [...], "elements": [operator, ...]}.
json povm_to_json(const Povm &m);
Povm povm_from_json(const json &doc);
ProjectivePovm projective_povm_from_json(const json &doc);

// Loss: {"type": "zero_one"} or {"table": [[...]]}.
json loss_to_json(const LossFunction &loss);
LossFunction loss_from_json(const json &doc,
                            std::vector<std::string> labels);

// Concept classes:
// {"dim", "labels", "predictors": [{"id", "elements": [...]}], "loss"?}.
struct ClassManifest {
    ConceptClass concepts;
    std::optional<LossFunction> loss;
};
json class_to_json(const ConceptClass &c,
                   const LossFunction *loss = nullptr);
ClassManifest class_from_json(const json &doc);

// Environments:
// {"dim", "labels", "features", "states": [...], "dist": [[...]]},
// dist rows indexed by feature, columns by label.
json environment_to_json(const Environment &env);
Environment environment_from_json(const json &doc);

json partition_to_json(const CompatibilityPartition &p,
                       const ConceptClass &c, const std::string &strategy,
                       std::size_t objective);

json report_to_json(const QermReport &report);

json load_json_file(const std::string &path);
void write_json_file(const std::string &path, const json &doc);

} // namespace qpac
