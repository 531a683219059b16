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
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "fermatq/fermat.hpp"
#include "fermatq/integers.hpp"
#include "fermatq/qubo.hpp"

namespace fermatq {

inline constexpr std::size_t kDefaultVariableCap = 4096;

// ---------------------------------------------------------------------------
// Sum-of-odds encoding
//
// x² is written as r0² plus a prefix of the odd numbers 2(r0+1)−1, 2(r0+2)−1, …
// and y² as a prefix of 1, 3, 5, …; every prefix sum is then a perfect square.
// Chain penalties P·(v_next − v_next·v_prev) forbid a selected odd after a gap.
// ---------------------------------------------------------------------------

struct SumOfOddsMap {
    BigUint n;
    BigUint r0;  ///< ⌈√N⌉
    std::size_t n_x = 0;
    std::size_t n_y = 0;
    BigUint base;  ///< r0²
    BigUint penalty_weight;

    std::size_t num_vars() const noexcept { return n_x + n_y; }
    /// Odd number selected by x-chain variable i: 2(r0+1+i) − 1.
    BigUint x_odd(std::size_t i) const;
    /// Odd number selected by y-chain variable j: 2(j+1) − 1.
    static BigUint y_odd(std::size_t j);

    friend bool operator==(const SumOfOddsMap&, const SumOfOddsMap&) = default;
};

/// 4N² + 1.
BigUint default_penalty_weight(const BigUint& n);

std::pair<QuboModel, SumOfOddsMap> encode_sum_of_odds(const BigUint& n, const FermatBounds& bounds,
                                                      const BigUint& penalty_weight,
                                                      std::size_t variable_cap = kDefaultVariableCap);

/// (x², y²) when both chains are prefixes, nullopt otherwise.
std::optional<std::pair<BigUint, BigUint>> decode_sum_of_odds(const SumOfOddsMap& map,
                                                              std::span<const std::uint8_t> assignment);

/// The assignment selecting the first x − r0 odds of the x-chain and the first y of the y-chain.
Assignment sum_of_odds_assignment(const SumOfOddsMap& map, const BigUint& x, const BigUint& y);

// ---------------------------------------------------------------------------
// Bit-pattern encoding
//
// The low bits of x² and y² are fixed by the parity of k = (N∓1)/4; only the
// bits above the pattern become QUBO variables.
// ---------------------------------------------------------------------------

/// Fixed low bits: the square is ≡ value (mod 2^width).
struct SquarePattern {
    std::uint64_t value = 0;
    unsigned width = 0;

    friend bool operator==(const SquarePattern&, const SquarePattern&) = default;
};

struct BitPatternMap {
    BigUint n;
    SquarePattern x_pattern;
    SquarePattern y_pattern;
    std::vector<unsigned> x_free_bits;  ///< bit positions of x², ascending
    std::vector<unsigned> y_free_bits;  ///< bit positions of y², ascending

    std::size_t num_vars() const noexcept { return x_free_bits.size() + y_free_bits.size(); }
    friend bool operator==(const BitPatternMap&, const BitPatternMap&) = default;
};

/// Low-bit patterns (x², y²) forced for odd N ≥ 9.
std::pair<SquarePattern, SquarePattern> pattern_for(const BigUint& n);

/// Patterns extended by `depth` further low bits. Each entry fixes x² and y²
/// modulo 2^(base width + depth) to residues that are squares modulo that
/// power of two and differ by N; together they cover every solution.
/// depth 0 yields exactly pattern_for(n).
std::vector<std::pair<SquarePattern, SquarePattern>> extended_patterns(const BigUint& n, unsigned depth);

std::pair<QuboModel, BitPatternMap> encode_bit_pattern(const BigUint& n, const FermatBounds& bounds);

std::pair<QuboModel, BitPatternMap> encode_bit_pattern(const BigUint& n, const FermatBounds& bounds,
                                                       const SquarePattern& x_pattern,
                                                       const SquarePattern& y_pattern);

/// One sub-problem per extended pattern at the given depth.
std::vector<std::pair<QuboModel, BitPatternMap>> encode_bit_pattern_family(const BigUint& n,
                                                                           const FermatBounds& bounds,
                                                                           unsigned depth);

/// (x², y²) as encoded by the assignment, without any squareness check.
std::pair<BigUint, BigUint> bit_pattern_values(const BitPatternMap& map, std::span<const std::uint8_t> assignment);

/// (√x², √y²) when both encoded values are perfect squares, nullopt otherwise.
/// Does not check x² − y² = N.
std::optional<std::pair<BigUint, BigUint>> decode_bit_pattern(const BitPatternMap& map,
                                                              std::span<const std::uint8_t> assignment);

/// Assignment encoding the given x² and y²; nullopt if they do not fit the map.
std::optional<Assignment> bit_pattern_assignment(const BitPatternMap& map, const BigUint& x2, const BigUint& y2);

// ---------------------------------------------------------------------------
// Document metadata
// ---------------------------------------------------------------------------

using VarMap = std::variant<SumOfOddsMap, BitPatternMap>;

nlohmann::json to_metadata(const VarMap& map);

/// Rebuilds the variable map written by to_metadata. Throws Error{ParseError}.
VarMap var_map_from_metadata(const nlohmann::json& metadata);

const BigUint& target_of(const VarMap& map);
std::size_t num_vars_of(const VarMap& map);

}  // namespace fermatq
