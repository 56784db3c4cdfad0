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

#include "qpac/serialization.hpp"

#include <fstream>

namespace qpac {

namespace {

[[noreturn]] void bad_manifest(const std::string &what) {
    throw ValidationError("manifest: " + what);
}

const json &field(const json &doc, const char *key) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        bad_manifest(std::string("missing field \"") + key + "\"");
    }
    return *it;
}

Eigen::MatrixXd real_matrix_from_json(const json &rows, Eigen::Index nr,
                                      Eigen::Index nc, const char *what) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != nr) {
        bad_manifest(std::string(what) + ": wrong row count");
    }
    Eigen::MatrixXd m(nr, nc);
    for (Eigen::Index i = 0; i < nr; ++i) {
        const json &row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() ||
            static_cast<Eigen::Index>(row.size()) != nc) {
            bad_manifest(std::string(what) + ": wrong column count");
        }
        for (Eigen::Index j = 0; j < nc; ++j) {
            const json &v = row[static_cast<std::size_t>(j)];
            if (!v.is_number()) {
                bad_manifest(std::string(what) + ": non-numeric entry");
            }
            m(i, j) = v.get<double>();
        }
    }
    return m;
}

} // namespace

json matrix_to_json(const ComplexMatrix &m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json re_row = json::array();
        json im_row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"dim", m.rows()}, {"re", std::move(re)},
                {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const json &doc) {
    if (!doc.is_object()) {
        bad_manifest("operator must be an object");
    }
    const auto d = field(doc, "dim").get<Eigen::Index>();
    if (d < 1 || d > kMaxDimension) {
        bad_manifest("operator dimension out of range");
    }
    const Eigen::MatrixXd re =
        real_matrix_from_json(field(doc, "re"), d, d, "re");
    const Eigen::MatrixXd im =
        real_matrix_from_json(field(doc, "im"), d, d, "im");
    ComplexMatrix m(d, d);
    m.real() = re;
    m.imag() = im;
    return m;
}

json povm_to_json(const Povm &m) {
    json elements = json::array();
    for (const auto &e : m.elements()) {
        elements.push_back(matrix_to_json(e.matrix()));
    }
    return json{{"outcomes", m.outcomes()},
                {"elements", std::move(elements)}};
}

namespace {

std::pair<std::vector<std::string>, std::vector<HermitianOperator>>
povm_parts_from_json(const json &doc) {
    const json &outcomes_doc = field(doc, "outcomes");
    const json &elements_doc = field(doc, "elements");
    if (!outcomes_doc.is_array() || !elements_doc.is_array()) {
        bad_manifest("povm outcomes/elements must be arrays");
    }
    std::vector<std::string> outcomes;
    for (const auto &o : outcomes_doc) {
        outcomes.push_back(o.is_string() ? o.get<std::string>() : o.dump());
    }
    std::vector<HermitianOperator> elements;
    for (const auto &e : elements_doc) {
        elements.emplace_back(matrix_from_json(e));
    }
    return {std::move(outcomes), std::move(elements)};
}

} // namespace

Povm povm_from_json(const json &doc) {
    auto [outcomes, elements] = povm_parts_from_json(doc);
    return Povm(std::move(outcomes), std::move(elements));
}

ProjectivePovm projective_povm_from_json(const json &doc) {
    auto [outcomes, elements] = povm_parts_from_json(doc);
    return ProjectivePovm(std::move(outcomes), std::move(elements));
}

json loss_to_json(const LossFunction &loss) {
    bool is_zero_one = true;
    for (Eigen::Index y = 0; y < loss.table().rows() && is_zero_one; ++y) {
        for (Eigen::Index h = 0; h < loss.table().cols(); ++h) {
            if (loss.table()(y, h) != (y == h ? 0.0 : 1.0)) {
                is_zero_one = false;
                break;
            }
        }
    }
    if (is_zero_one) {
        return json{{"type", "zero_one"}};
    }
    json rows = json::array();
    for (Eigen::Index y = 0; y < loss.table().rows(); ++y) {
        json row = json::array();
        for (Eigen::Index h = 0; h < loss.table().cols(); ++h) {
            row.push_back(loss.table()(y, h));
        }
        rows.push_back(std::move(row));
    }
    return json{{"table", std::move(rows)}};
}

LossFunction loss_from_json(const json &doc,
                            std::vector<std::string> labels) {
    if (doc.contains("type")) {
        const auto type = doc["type"].get<std::string>();
        if (type == "zero_one") {
            return LossFunction::zero_one(std::move(labels));
        }
        bad_manifest("unknown loss type \"" + type + "\"");
    }
    if (doc.contains("table")) {
        const auto n = static_cast<Eigen::Index>(labels.size());
        return LossFunction(
            std::move(labels),
            real_matrix_from_json(doc["table"], n, n, "loss table"));
    }
    bad_manifest("loss must have \"type\" or \"table\"");
}

json class_to_json(const ConceptClass &c, const LossFunction *loss) {
    json predictors = json::array();
    for (const auto &p : c.predictors()) {
        json elements = json::array();
        for (const auto &e : p.povm.elements()) {
            elements.push_back(matrix_to_json(e.matrix()));
        }
        predictors.push_back(
            json{{"id", p.id}, {"elements", std::move(elements)}});
    }
    json doc{{"dim", c.dim()},
             {"labels", c.labels()},
             {"predictors", std::move(predictors)}};
    if (loss != nullptr) {
        doc["loss"] = loss_to_json(*loss);
    }
    return doc;
}

ClassManifest class_from_json(const json &doc) {
    const auto d = field(doc, "dim").get<Eigen::Index>();
    const auto labels =
        field(doc, "labels").get<std::vector<std::string>>();
    const json &preds_doc = field(doc, "predictors");
    if (!preds_doc.is_array() || preds_doc.empty()) {
        bad_manifest("predictors must be a nonempty array");
    }
    std::vector<Predictor> predictors;
    for (const auto &p : preds_doc) {
        const auto id = field(p, "id").get<std::size_t>();
        const json &elements_doc = field(p, "elements");
        if (!elements_doc.is_array() ||
            elements_doc.size() != labels.size()) {
            bad_manifest("predictor needs one element per label");
        }
        std::vector<HermitianOperator> elements;
        for (const auto &e : elements_doc) {
            elements.emplace_back(matrix_from_json(e));
            if (elements.back().dim() != d) {
                bad_manifest("predictor element dimension mismatch");
            }
        }
        predictors.push_back(
            Predictor{id, ProjectivePovm(labels, std::move(elements))});
    }
    ClassManifest out{ConceptClass(std::move(predictors)), std::nullopt};
    if (doc.contains("loss")) {
        out.loss = loss_from_json(doc["loss"], labels);
    }
    return out;
}

json environment_to_json(const Environment &env) {
    json states = json::array();
    for (const auto &s : env.states()) {
        states.push_back(matrix_to_json(s.matrix()));
    }
    json dist = json::array();
    for (Eigen::Index x = 0; x < env.dist().rows(); ++x) {
        json row = json::array();
        for (Eigen::Index y = 0; y < env.dist().cols(); ++y) {
            row.push_back(env.dist()(x, y));
        }
        dist.push_back(std::move(row));
    }
    return json{{"dim", env.dim()},
                {"labels", env.labels()},
                {"features", env.feature_names()},
                {"states", std::move(states)},
                {"dist", std::move(dist)}};
}

Environment environment_from_json(const json &doc) {
    const auto d = field(doc, "dim").get<Eigen::Index>();
    auto labels = field(doc, "labels").get<std::vector<std::string>>();
    std::vector<std::string> features;
    if (doc.contains("features")) {
        features = doc["features"].get<std::vector<std::string>>();
    }
    const json &states_doc = field(doc, "states");
    if (!states_doc.is_array() || states_doc.empty()) {
        bad_manifest("states must be a nonempty array");
    }
    std::vector<DensityOperator> states;
    for (const auto &s : states_doc) {
        states.emplace_back(matrix_from_json(s));
        if (states.back().dim() != d) {
            bad_manifest("state dimension mismatch");
        }
    }
    const Eigen::MatrixXd dist = real_matrix_from_json(
        field(doc, "dist"), static_cast<Eigen::Index>(states.size()),
        static_cast<Eigen::Index>(labels.size()), "dist");
    return Environment(std::move(features), std::move(labels),
                       std::move(states), dist);
}

json partition_to_json(const CompatibilityPartition &p,
                       const ConceptClass &c, const std::string &strategy,
                       std::size_t objective) {
    json subclasses = json::array();
    for (const auto &sub : p.subclasses()) {
        json ids = json::array();
        for (std::size_t pos : sub) {
            ids.push_back(c.predictor(pos).id);
        }
        subclasses.push_back(std::move(ids));
    }
    return json{{"m", p.m()},
                {"subclasses", std::move(subclasses)},
                {"strategy", strategy},
                {"objective", objective}};
}

json report_to_json(const QermReport &report) {
    json partition{{"m", report.subclasses.size()},
                   {"subclasses", report.subclasses},
                   {"strategy", report.strategy}};
    json doc{{"partition", std::move(partition)},
             {"epsilon", report.epsilon},
             {"delta", report.delta},
             {"mode", report.mode},
             {"batch_sizes", report.batch_sizes},
             {"empirical_losses", report.empirical_losses},
             {"selected",
              json{{"r", report.selected.r},
                   {"j", report.selected.j},
                   {"id", report.selected.id}}},
             {"min_empirical_loss", report.min_empirical_loss}};
    doc["true_risk_selected"] = report.true_risk_selected
                                    ? json(*report.true_risk_selected)
                                    : json(nullptr);
    doc["opt"] = report.opt ? json(*report.opt) : json(nullptr);
    doc["excess"] = report.excess ? json(*report.excess) : json(nullptr);
    return doc;
}

json load_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open file: " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ValidationError("parse failure in " + path + ": " + e.what());
    }
}

void write_json_file(const std::string &path, const json &doc) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot open file for writing: " + path);
    }
    out << doc.dump(2) << "\n";
}

} // namespace qpac
