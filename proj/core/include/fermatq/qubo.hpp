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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fermatq/integers.hpp"

namespace fermatq {

/// Binary assignment, one byte (0 or 1) per variable.
using Assignment = std::vector<std::uint8_t>;

/// Pair key (i, j) with i < j.
using VarPair = std::pair<std::uint32_t, std::uint32_t>;

struct LinearTerm {
    std::size_t var;
    BigInt coeff;
};

/// QUBO with exact integer coefficients:
///   E(a) = offset + Σ linear[i]·a[i] + Σ_{i<j} quadratic[(i,j)]·a[i]·a[j]
///
/// Linear coefficients are held densely (zero means absent); the quadratic
/// table never stores zero entries.
class QuboModel {
  public:
    QuboModel() = default;
    explicit QuboModel(std::size_t num_vars) : linear_(num_vars) {}

    std::size_t num_vars() const noexcept { return linear_.size(); }
    const std::vector<BigInt>& linear() const noexcept { return linear_; }
    const BigInt& linear(std::size_t i) const { return linear_.at(i); }
    const std::map<VarPair, BigInt>& quadratic() const noexcept { return quadratic_; }
    /// Coefficient of a[i]·a[j], zero if absent. Order of i and j does not matter.
    BigInt quadratic(std::size_t i, std::size_t j) const;
    const BigInt& offset() const noexcept { return offset_; }

    void add_linear(std::size_t i, const BigInt& c);
    /// Requires i != j; the pair is normalised to (min, max).
    void add_quadratic(std::size_t i, std::size_t j, const BigInt& c);
    void add_offset(const BigInt& c) { offset_ += c; }

    /// Adds weight·(Σ c_v·v + constant)², reduced with v² = v.
    void add_squared_linear(std::span<const LinearTerm> terms, const BigInt& constant, const BigUint& weight);

    /// Number of non-zero linear entries.
    std::size_t num_linear_terms() const;

    friend bool operator==(const QuboModel&, const QuboModel&) = default;

  private:
    void check_index(std::size_t i) const;

    std::vector<BigInt> linear_;
    std::map<VarPair, BigInt> quadratic_;
    BigInt offset_;
};

/// Exact energy including the offset. Throws Error{LengthMismatch}.
BigInt energy(const QuboModel& model, std::span<const std::uint8_t> assignment);

/// Ising model with coefficients stored as integers scaled by 4:
///   4·E(σ) = offset_x4 + Σ h_x4[i]·σ_i + Σ_{i<j} j_x4[(i,j)]·σ_i·σ_j,  σ_i ∈ {−1, +1}.
struct IsingModel {
    std::vector<BigInt> h_x4;
    std::map<VarPair, BigInt> j_x4;
    BigInt offset_x4;

    std::size_t num_spins() const noexcept { return h_x4.size(); }
    friend bool operator==(const IsingModel&, const IsingModel&) = default;
};

/// Four times the Ising energy of spins in {−1, +1}. Throws Error{LengthMismatch}.
BigInt ising_energy_x4(const IsingModel& model, std::span<const std::int8_t> spins);

/// Substitutes x = (1+σ)/2.
IsingModel to_ising(const QuboModel& model);

/// Substitutes σ = 2x − 1. Throws Error{NonIntegerCoefficient} when a QUBO
/// coefficient would not be an integer.
QuboModel from_ising(const IsingModel& model);

/// A model together with the free-form metadata carried in its document.
struct QuboDocument {
    QuboModel model;
    nlohmann::json metadata = nlohmann::json::object();
};

/// Canonical text form (JSON, sorted, big integers as decimal strings).
std::string serialize(const QuboModel& model, const nlohmann::json& metadata = nlohmann::json::object());

/// Throws Error{ParseError} with line and column on malformed input.
QuboDocument deserialize(std::string_view text);

}  // namespace fermatq
