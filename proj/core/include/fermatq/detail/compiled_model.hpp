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
#include <span>
#include <utility>
#include <vector>

#include "fermatq/qubo.hpp"

namespace fermatq::detail {

/// True when every energy, local field and flip delta of the model fits in int64.
inline bool fits_int64(const QuboModel& model) {
    BigInt bound = abs(model.offset());
    for (const auto& c : model.linear()) bound += abs(c);
    for (const auto& [key, c] : model.quadratic()) bound += 2 * abs(c);
    return bound < (BigInt(1) << 62);
}

template <class Int>
Int narrow(const BigInt& v) {
    if constexpr (std::is_same_v<Int, BigInt>) {
        return v;
    } else {
        return static_cast<Int>(v);
    }
}

/// Adjacency-list copy of a QuboModel in a chosen integer type.
template <class Int>
struct CompiledModel {
    std::vector<Int> linear;
    std::vector<std::vector<std::pair<std::uint32_t, Int>>> adjacency;
    Int offset{};

    explicit CompiledModel(const QuboModel& model)
            : linear(model.num_vars()), adjacency(model.num_vars()), offset(narrow<Int>(model.offset())) {
        for (std::size_t i = 0; i < model.num_vars(); ++i) linear[i] = narrow<Int>(model.linear()[i]);
        for (const auto& [key, c] : model.quadratic()) {
            const Int v = narrow<Int>(c);
            adjacency[key.first].emplace_back(key.second, v);
            adjacency[key.second].emplace_back(key.first, v);
        }
    }

    std::size_t num_vars() const noexcept { return linear.size(); }

    /// Direct (non-incremental) evaluation.
    Int evaluate(std::span<const std::uint8_t> x) const {
        Int e = offset;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!x[i]) continue;
            e += linear[i];
            for (const auto& [j, c] : adjacency[i]) {
                if (j > i && x[j]) e += c;
            }
        }
        return e;
    }
};

/// Assignment plus local fields; flip deltas in O(1), flips in O(degree).
template <class Int>
class FlipState {
  public:
    explicit FlipState(const CompiledModel<Int>& model) : model_(&model) {}

    void reset(std::span<const std::uint8_t> assignment) {
        x_.assign(assignment.begin(), assignment.end());
        field_ = model_->linear;
        for (std::size_t i = 0; i < x_.size(); ++i) {
            if (!x_[i]) continue;
            for (const auto& [j, c] : model_->adjacency[i]) field_[j] += c;
        }
        energy_ = model_->evaluate(x_);
    }

    /// Energy change if variable i were flipped.
    Int delta(std::size_t i) const { return x_[i] ? Int(-field_[i]) : field_[i]; }

    /// Flips variable i and returns the applied delta.
    Int flip(std::size_t i) {
        Int d = delta(i);
        energy_ += d;
        const bool on = !x_[i];
        x_[i] = on ? 1 : 0;
        for (const auto& [j, c] : model_->adjacency[i]) {
            if (on) {
                field_[j] += c;
            } else {
                field_[j] -= c;
            }
        }
        return d;
    }

    const Int& energy() const noexcept { return energy_; }
    const std::vector<std::uint8_t>& assignment() const noexcept { return x_; }

  private:
    const CompiledModel<Int>* model_;
    std::vector<std::uint8_t> x_;
    std::vector<Int> field_;
    Int energy_{};
};

}  // namespace fermatq::detail
