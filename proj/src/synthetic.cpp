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

#include "qpac/synthetic.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qpac {

ComplexMatrix haar_random_unitary(Eigen::Index dim, RngStream &rng) {
    if (dim < 1) {
        throw std::invalid_argument("haar_random_unitary: dim must be >= 1");
    }
    ComplexMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            g(i, j) = std::complex<double>(rng.normal(), rng.normal());
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so the distribution is exactly Haar.
    for (Eigen::Index j = 0; j < dim; ++j) {
        const std::complex<double> d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a == 0.0) ? 1.0 : d / a;
    }
    return q;
}

namespace {

std::vector<std::string> default_labels(std::size_t n_labels) {
    std::vector<std::string> labels;
    labels.reserve(n_labels);
    for (std::size_t y = 0; y < n_labels; ++y) {
        labels.push_back(std::to_string(y));
    }
    return labels;
}

// Random labeling of d basis vectors, using at least two distinct
// labels whenever d and the alphabet allow it.
std::vector<std::size_t> random_labeling(Eigen::Index dim,
                                         std::size_t n_labels,
                                         RngStream &rng) {
    std::vector<std::size_t> labeling(static_cast<std::size_t>(dim));
    const bool want_nonconstant = dim >= 2 && n_labels >= 2;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        for (auto &l : labeling) {
            l = static_cast<std::size_t>(rng.uniform() *
                                         static_cast<double>(n_labels));
            l = std::min(l, n_labels - 1);
        }
        if (!want_nonconstant ||
            std::set<std::size_t>(labeling.begin(), labeling.end()).size() >=
                2) {
            return labeling;
        }
    }
    // A constant draw repeating 1000 times is astronomically unlikely;
    // force the issue rather than loop forever.
    labeling[0] = (labeling[1] + 1) % n_labels;
    return labeling;
}

} // namespace

ConceptClass random_class(Eigen::Index dim,
                          std::vector<std::string> labels, std::size_t k,
                          ClassStructure structure, std::size_t n_blocks,
                          RngStream &rng) {
    const std::size_t n_labels = labels.size();
    if (dim < 2 || dim > kMaxDimension) {
        throw std::invalid_argument("random_class: dim out of range");
    }
    if (n_labels < 2 || k < 1) {
        throw std::invalid_argument(
            "random_class: need at least two labels and one predictor");
    }
    std::size_t bases_count = 1;
    switch (structure) {
    case ClassStructure::shared_basis:
        bases_count = 1;
        break;
    case ClassStructure::blocks:
        if (n_blocks < 1 || n_blocks > k) {
            throw std::invalid_argument(
                "random_class: blocks structure needs 1 <= n_blocks <= k");
        }
        bases_count = n_blocks;
        break;
    case ClassStructure::haar_random:
        bases_count = k;
        break;
    }
    std::vector<ComplexMatrix> bases;
    bases.reserve(bases_count);
    for (std::size_t b = 0; b < bases_count; ++b) {
        bases.push_back(haar_random_unitary(dim, rng));
    }
    std::vector<Predictor> predictors;
    predictors.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        const ComplexMatrix &basis = bases[j % bases_count];
        const std::vector<std::size_t> labeling =
            random_labeling(dim, n_labels, rng);
        predictors.push_back(
            Predictor{j, labeled_basis_measurement(basis, labeling, labels)});
    }
    return ConceptClass(std::move(predictors));
}

ConceptClass random_class(Eigen::Index dim, std::size_t n_labels,
                          std::size_t k, ClassStructure structure,
                          std::size_t n_blocks, RngStream &rng) {
    return random_class(dim, default_labels(n_labels), k, structure,
                        n_blocks, rng);
}

EmbeddedProblem
classical_embed(std::size_t n_features, std::vector<std::string> labels,
                const Eigen::MatrixXd &dist,
                const std::vector<std::vector<std::size_t>> &functions,
                Eigen::Index max_dim) {
    const auto d = static_cast<Eigen::Index>(n_features);
    if (d < 1 || d > max_dim) {
        std::ostringstream os;
        os << "classical_embed: feature count " << n_features
           << " outside [1, " << max_dim << "]";
        throw ValidationError(os.str());
    }
    if (functions.empty()) {
        throw std::invalid_argument("classical_embed: no hypotheses");
    }
    for (const auto &f : functions) {
        if (f.size() != n_features) {
            throw std::invalid_argument(
                "classical_embed: hypothesis arity mismatch");
        }
        for (std::size_t y : f) {
            if (y >= labels.size()) {
                throw std::invalid_argument(
                    "classical_embed: hypothesis value out of range");
            }
        }
    }

    std::vector<DensityOperator> states;
    states.reserve(n_features);
    for (std::size_t x = 0; x < n_features; ++x) {
        states.emplace_back(
            basis_projector(d, static_cast<Eigen::Index>(x)));
    }
    const ComplexMatrix identity = ComplexMatrix::Identity(d, d);
    std::vector<Predictor> predictors;
    predictors.reserve(functions.size());
    for (std::size_t j = 0; j < functions.size(); ++j) {
        predictors.push_back(Predictor{
            j, labeled_basis_measurement(identity, functions[j], labels)});
    }
    return EmbeddedProblem{
        Environment({}, std::move(labels), std::move(states), dist),
        ConceptClass(std::move(predictors))};
}

std::vector<std::vector<std::size_t>>
random_functions(std::size_t n_features, std::size_t n_labels,
                 std::size_t k, bool distinct, RngStream &rng) {
    if (n_features == 0 || n_labels == 0 || k == 0) {
        throw std::invalid_argument("random_functions: empty parameters");
    }
    double capacity = 1.0;
    for (std::size_t x = 0; x < n_features; ++x) {
        capacity = std::min(capacity * static_cast<double>(n_labels), 1e18);
    }
    if (distinct && static_cast<double>(k) > capacity) {
        throw std::invalid_argument(
            "random_functions: fewer distinct functions exist than "
            "requested");
    }
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> f(n_features);
    while (out.size() < k) {
        for (auto &y : f) {
            y = static_cast<std::size_t>(rng.uniform() *
                                         static_cast<double>(n_labels));
            y = std::min(y, n_labels - 1);
        }
        if (distinct && !seen.insert(f).second) {
            continue;
        }
        out.push_back(f);
    }
    return out;
}

Environment bloch_spin_preset(int n_theta, int n_phi,
                              const BlochLabeler &is_blue) {
    if (n_theta < 1 || n_theta > 20 || n_phi < 1 || n_phi > 20) {
        throw std::invalid_argument(
            "bloch_spin_preset: grid must be within 20 x 20");
    }
    std::vector<std::string> feature_names;
    std::vector<DensityOperator> states;
    std::vector<std::size_t> blue;
    for (int i = 0; i < n_theta; ++i) {
        const double theta =
            static_cast<double>(i) * std::numbers::pi / n_theta;
        for (int j = 0; j < n_phi; ++j) {
            const double phi =
                2.0 * std::numbers::pi * static_cast<double>(j) / n_phi;
            Eigen::VectorXcd psi(2);
            psi(0) = std::cos(theta / 2.0);
            psi(1) = std::polar(std::sin(theta / 2.0), phi);
            states.push_back(pure_state(psi));
            feature_names.push_back("theta" + std::to_string(i) + "_phi" +
                                    std::to_string(j));
            const std::array<double, 3> bloch{
                std::sin(theta) * std::cos(phi),
                std::sin(theta) * std::sin(phi), std::cos(theta)};
            blue.push_back(is_blue(bloch) ? 1 : 0);
        }
    }
    const auto n = static_cast<Eigen::Index>(states.size());
    Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, 2);
    for (Eigen::Index x = 0; x < n; ++x) {
        dist(x, blue[static_cast<std::size_t>(x)] ? 0 : 1) =
            1.0 / static_cast<double>(n);
    }
    return Environment(std::move(feature_names), {"blue", "red"},
                       std::move(states), std::move(dist));
}

RealizableProblem realizable_shared_basis(Eigen::Index dim,
                                          std::size_t n_labels,
                                          std::size_t k, RngStream &rng) {
    if (dim < 2 || dim > kMaxDimension) {
        throw std::invalid_argument(
            "realizable_shared_basis: dim out of range");
    }
    if (n_labels < 2 || k < 1) {
        throw std::invalid_argument(
            "realizable_shared_basis: need two labels and one predictor");
    }
    double capacity = 1.0;
    for (Eigen::Index x = 0; x < dim; ++x) {
        capacity = std::min(capacity * static_cast<double>(n_labels), 1e18);
    }
    if (static_cast<double>(k) > capacity - static_cast<double>(n_labels)) {
        throw std::invalid_argument(
            "realizable_shared_basis: not enough distinct non-constant "
            "labelings");
    }

    const ComplexMatrix basis = haar_random_unitary(dim, rng);
    const std::vector<std::string> labels = default_labels(n_labels);
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> labelings;
    while (labelings.size() < k) {
        std::vector<std::size_t> l = random_labeling(dim, n_labels, rng);
        if (seen.insert(l).second) {
            labelings.push_back(std::move(l));
        }
    }
    std::vector<Predictor> predictors;
    predictors.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        predictors.push_back(Predictor{
            j, labeled_basis_measurement(basis, labelings[j], labels)});
    }

    // Features are the basis states themselves, labeled by predictor 0,
    // so predictor 0 achieves risk 0 deterministically.
    std::vector<DensityOperator> states;
    states.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index x = 0; x < dim; ++x) {
        states.push_back(pure_state(basis.col(x)));
    }
    Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(
        dim, static_cast<Eigen::Index>(n_labels));
    for (Eigen::Index x = 0; x < dim; ++x) {
        dist(x, static_cast<Eigen::Index>(
                    labelings[0][static_cast<std::size_t>(x)])) =
            1.0 / static_cast<double>(dim);
    }
    return RealizableProblem{
        Environment({}, labels, std::move(states), std::move(dist)),
        ConceptClass(std::move(predictors)), 0};
}

} // namespace qpac
