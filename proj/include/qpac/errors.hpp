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

#include <stdexcept>
#include <string>

namespace qpac {

/// An operator, state, measurement, or manifest violates one of its
/// invariants (Hermiticity, completeness, PSD, ...).
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string &what)
        : std::runtime_error(what) {}
};

/// The requested experiment cannot run with the given resources
/// (sample budget below the number of batches, too few samples, ...).
class InfeasibleError : public std::runtime_error {
  public:
    explicit InfeasibleError(const std::string &what)
        : std::runtime_error(what) {}
};

/// A training sample was measured a second time. Quantum samples collapse
/// on measurement, so this is always a caller bug, never a recoverable
/// condition of the data.
class SampleConsumedError : public std::runtime_error {
  public:
    explicit SampleConsumedError(const std::string &what)
        : std::runtime_error(what) {}
};

} // namespace qpac
