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

#include <array>
#include <functional>

#include "qpac/concept_class.hpp"
#include "qpac/environment.hpp"
#include "qpac/rng.hpp"

namespace qpac {

/// Haar-distributed unitary via QR of a complex Gaussian matrix with the
/// R-diagonal phase correction.
ComplexMatrix haar_random_unitary(Eigen::Index dim, RngStream &rng);

enum class ClassStructure {
    shared_basis, // all predictors diagonal in one random basis
    blocks,       // groups sharing a basis, bases mutually non-commuting
    haar_random   // one independent random basis per predictor
};

/// Random projective concept-class factory. Every predictor uses at
/// least two labels, so no element degenerates to 0 or the identity
/// (trivial elements commute with everything and would blur the
/// intended block structure). Requires dim >= 2.
/// `n_blocks` only applies to the blocks structure; predictor i belongs
/// to block i mod n_blocks.
ConceptClass random_class(Eigen::Index dim,
                          std::vector<std::string> labels, std::size_t k,
                          ClassStructure structure, std::size_t n_blocks,
                          RngStream &rng);

/// Same with numbered labels "0", "1", ...
ConceptClass random_class(Eigen::Index dim, std::size_t n_labels,
                          std::size_t k, ClassStructure structure,
                          std::size_t n_blocks, RngStream &rng);

struct EmbeddedProblem {
    Environment env;
    ConceptClass concepts;
};

/// Classical problem embedded into the quantum model: feature x becomes
/// the basis state |x><x|, and each hypothesis f becomes the sharp
/// measurement with elements M_y = sum_{x : f(x) = y} |x><x|. All
/// embedded predictors are diagonal, hence mutually compatible, and a
/// predictor's risk equals the classical expected loss of f.
EmbeddedProblem
classical_embed(std::size_t n_features, std::vector<std::string> labels,
                const Eigen::MatrixXd &dist,
                const std::vector<std::vector<std::size_t>> &functions,
                Eigen::Index max_dim = kMaxDimension);

/// k uniformly random functions X -> Y, optionally distinct.
std::vector<std::vector<std::size_t>>
random_functions(std::size_t n_features, std::size_t n_labels,
                 std::size_t k, bool distinct, RngStream &rng);

/// Labeling rule: "blue" iff the Bloch vector points away from the
/// chosen orthant, i.e. its dot product with each signed axis is at most
/// the geometric tolerance. A deliberately simple reading of
/// orthogonality against an orthant; swap in any other rule as needed.
struct OrthantRule {
    std::array<int, 3> signs{1, 1, 1};
    double tolerance = tol::geometry;
    bool operator()(const std::array<double, 3> &bloch) const {
        for (int axis = 0; axis < 3; ++axis) {
            if (signs[axis] * bloch[axis] > tolerance) {
                return false;
            }
        }
        return true;
    }
};

using BlochLabeler = std::function<bool(const std::array<double, 3> &)>;

/// Spin-direction environment: pure qubit states on the grid
/// (theta_i, phi_j) = (i pi / n_theta, 2 pi j / n_phi), i < n_theta,
/// j < n_phi, labeled blue/red by the pluggable rule, uniform sampling
/// over the grid. Grid at most 20 x 20.
Environment bloch_spin_preset(int n_theta = 20, int n_phi = 20,
                              const BlochLabeler &is_blue = OrthantRule{});

struct RealizableProblem {
    Environment env;
    ConceptClass concepts;
    std::size_t truth_position = 0;
};

/// Compatible, realizable benchmark: k distinct predictors diagonal in
/// one Haar-random basis, features are that basis's pure states, and
/// labels follow predictor 0 exactly, so the class optimum is zero risk.
RealizableProblem realizable_shared_basis(Eigen::Index dim,
                                          std::size_t n_labels,
                                          std::size_t k, RngStream &rng);

} // namespace qpac
