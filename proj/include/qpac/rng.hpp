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

#include <cassert>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>

namespace qpac {

/// Seedable random stream with deterministic splitting.
///
/// Uniform and normal variates are derived from raw mt19937_64 output
/// (never from std::*_distribution, whose sequences differ between
/// standard libraries), so a seed reproduces the same stream everywhere.
/// Concurrent tasks each take their own child stream instead of sharing.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed)
        : seed_(seed), gen_(mix(seed)) {}

    std::uint64_t seed() const { return seed_; }

    /// Independent stream for an indexed subtask (batch, sample block).
    RngStream child(std::uint64_t index) const {
        return RngStream(mix(seed_ + 0x9e3779b97f4a7c15ull * (index + 1)));
    }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal variate (Box-Muller).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = 1.0 - uniform(); // (0, 1], keeps the log finite
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double angle = 2.0 * std::numbers::pi * v;
        spare_ = r * std::sin(angle);
        have_spare_ = true;
        return r * std::cos(angle);
    }

    /// Index drawn from a probability vector summing to 1.
    std::size_t categorical(std::span<const double> probs) {
        assert(!probs.empty());
        const double u = uniform();
        double cum = 0.0;
        for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
            cum += probs[i];
            if (u < cum) {
                return i;
            }
        }
        return probs.size() - 1;
    }

  private:
    // splitmix64 finalizer; decorrelates nearby seeds before seeding the
    // generator.
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace qpac
