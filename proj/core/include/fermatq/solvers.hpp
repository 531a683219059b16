// Copyright 2026 The fermatq Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "fermatq/encoders.hpp"
#include "fermatq/fermat.hpp"
#include "fermatq/qubo.hpp"

namespace fermatq {

inline constexpr std::size_t kDefaultExactVarLimit = 26;

struct Sample {
    Assignment assignment;
    BigInt energy;
    std::uint64_t occurrences = 1;

    friend bool operator==(const Sample&, const Sample&) = default;
};

/// Samples ordered by energy, then by assignment (lexicographic).
struct SampleSet {
    std::vector<Sample> samples;

    bool empty() const noexcept { return samples.empty(); }
    std::size_t size() const noexcept { return samples.size(); }
    const BigInt& lowest_energy() const { return samples.front().energy; }

    friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

nlohmann::json to_json(const SampleSet& set);

/// Enumerates all 2^n assignments and returns every one attaining the minimum.
/// Throws Error{TooLarge} when num_vars exceeds var_limit (or 62).
SampleSet solve_exact(const QuboModel& model, std::size_t var_limit = kDefaultExactVarLimit);

struct SaParams {
    std::uint64_t sweeps = 1000;
    std::uint64_t restarts = 16;
    double beta_initial = 0.1;
    double beta_final = 10.0;
    std::uint64_t seed = 0;
    std::size_t samples_kept = 64;
};

/// Validates the SaParams invariants; throws std::invalid_argument.
void validate(const SaParams& params);

/// Schedule scaled to the model: beta runs from 1/Δ_max to 10/Δ_min, where
/// Δ_max is the largest |single-flip delta| over a 64-flip random walk and
/// Δ_min the smallest non-zero |coefficient|. Sweeps, restarts and
/// samples_kept keep their SaParams defaults.
SaParams default_sa_params(const QuboModel& model, std::uint64_t seed);

/// Per-chain bookkeeping from solve_sa, for consistency checks.
struct ChainStats {
    BigInt initial_energy;  ///< evaluated directly
    BigInt final_energy;    ///< evaluated directly
    BigInt delta_sum;       ///< sum of the incremental deltas of accepted flips
    std::uint64_t accepted = 0;
};

/// Single-flip Metropolis annealing over `restarts` independent chains.
///
/// Chain c draws from its own mt19937_64 stream seeded with seed ^ c; beta
/// moves geometrically from beta_initial to beta_final across the sweeps.
/// The result holds the samples_kept lowest distinct states visited by any
/// chain, with every energy re-evaluated from scratch. Deterministic for a
/// given (model, params).
SampleSet solve_sa(const QuboModel& model, const SaParams& params, std::vector<ChainStats>* chain_stats = nullptr);

/// First sample (in order) that decodes to a verified non-trivial factorization of N.
/// `iterations` in the result is the number of samples examined.
std::optional<Factorization> recover_factors(const BigUint& n, const SampleSet& samples, const VarMap& map);

}  // namespace fermatq
