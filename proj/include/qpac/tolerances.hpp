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

namespace qpac::tol {

// Relative tolerances, measured in Frobenius norm against
// max(||A||_F, 1) of the operator being checked.
inline constexpr double hermitian = 1e-9;
inline constexpr double projector = 1e-9;
inline constexpr double completeness = 1e-9;
inline constexpr double diagonal = 1e-9;
// Commutator tolerance, relative to ||A||_F * ||B||_F.
inline constexpr double commute = 1e-9;

// Absolute tolerances.
inline constexpr double trace = 1e-9;
inline constexpr double probability = 1e-9;
inline constexpr double psd = 1e-10;
inline constexpr double eigen = 1e-10;
// Weight threshold when deciding which projector range a shared-basis
// vector belongs to; weights must sit within this distance of 0 or 1.
inline constexpr double outcome_assignment = 1e-6;
// Geometric predicates on Bloch vectors.
inline constexpr double geometry = 1e-9;

} // namespace qpac::tol
