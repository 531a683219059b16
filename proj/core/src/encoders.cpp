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

#include "fermatq/encoders.hpp"

#include <string>

#include "fermatq/error.hpp"

namespace fermatq {

using nlohmann::json;

namespace {

void require_odd(const BigUint& n) {
    if (!n.is_odd()) throw Error(ErrorCode::EvenInput, "N must be odd, got " + n.str());
}

void check_length(std::size_t expected, std::size_t got) {
    if (expected != got) {
        throw Error(ErrorCode::LengthMismatch,
                    "assignment has " + std::to_string(got) + " entries, expected " + std::to_string(expected));
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Sum of odds
// ---------------------------------------------------------------------------

BigUint SumOfOddsMap::x_odd(std::size_t i) const { return BigUint(2) * (r0 + BigUint(i)) + 1; }

BigUint SumOfOddsMap::y_odd(std::size_t j) { return BigUint(2 * static_cast<std::uint64_t>(j) + 1); }

BigUint default_penalty_weight(const BigUint& n) { return BigUint(4) * n * n + 1; }

std::pair<QuboModel, SumOfOddsMap> encode_sum_of_odds(const BigUint& n, const FermatBounds& bounds,
                                                      const BigUint& penalty_weight, std::size_t variable_cap) {
    require_odd(n);
    SumOfOddsMap map;
    map.n = n;
    map.r0 = ceil_sqrt(n);
    map.base = map.r0 * map.r0;
    map.penalty_weight = penalty_weight;

    const BigUint x_up = bounds.x_max < map.r0 ? map.r0 : bounds.x_max;
    const BigUint total = (x_up - map.r0) + bounds.y_max;
    if (total > BigUint(variable_cap)) {
        throw Error(ErrorCode::TooManyVariables,
                    "sum-of-odds needs " + total.str() + " variables, cap is " + std::to_string(variable_cap));
    }
    map.n_x = static_cast<std::size_t>((x_up - map.r0).to_u64());
    map.n_y = static_cast<std::size_t>(bounds.y_max.to_u64());

    QuboModel model(map.num_vars());
    std::vector<LinearTerm> terms;
    terms.reserve(map.num_vars());
    for (std::size_t i = 0; i < map.n_x; ++i) terms.push_back({i, map.x_odd(i).value()});
    for (std::size_t j = 0; j < map.n_y; ++j) terms.push_back({map.n_x + j, -SumOfOddsMap::y_odd(j).value()});
    model.add_squared_linear(terms, map.base.value() - n.value(), BigUint(1));

    const BigInt& p = penalty_weight.value();
    auto chain_penalty = [&](std::size_t first, std::size_t len) {
        for (std::size_t i = 0; i + 1 < len; ++i) {
            model.add_linear(first + i + 1, p);
            model.add_quadratic(first + i, first + i + 1, -p);
        }
    };
    chain_penalty(0, map.n_x);
    chain_penalty(map.n_x, map.n_y);
    return {std::move(model), std::move(map)};
}

namespace {

/// Length of the leading run of ones, or nullopt if a one follows a zero.
std::optional<std::size_t> prefix_length(std::span<const std::uint8_t> chain) {
    std::size_t len = 0;
    while (len < chain.size() && chain[len]) ++len;
    for (std::size_t i = len; i < chain.size(); ++i) {
        if (chain[i]) return std::nullopt;
    }
    return len;
}

}  // namespace

std::optional<std::pair<BigUint, BigUint>> decode_sum_of_odds(const SumOfOddsMap& map,
                                                              std::span<const std::uint8_t> assignment) {
    check_length(map.num_vars(), assignment.size());
    const auto lx = prefix_length(assignment.first(map.n_x));
    const auto ly = prefix_length(assignment.subspan(map.n_x));
    if (!lx || !ly) return std::nullopt;
    // r0² + Σ_{i<lx} (2(r0+1+i)−1) = (r0+lx)²  and  Σ_{j<ly} (2j+1) = ly².
    const BigUint x = map.r0 + BigUint(*lx);
    const BigUint y(*ly);
    return std::make_pair(x * x, y * y);
}

Assignment sum_of_odds_assignment(const SumOfOddsMap& map, const BigUint& x, const BigUint& y) {
    if (x < map.r0 || x - map.r0 > BigUint(map.n_x) || y > BigUint(map.n_y)) {
        throw Error(ErrorCode::IndexOutOfRange, "(x, y) = (" + x.str() + ", " + y.str() + ") outside the encoded range");
    }
    Assignment a(map.num_vars(), 0);
    const auto lx = (x - map.r0).to_u64();
    const auto ly = y.to_u64();
    for (std::uint64_t i = 0; i < lx; ++i) a[i] = 1;
    for (std::uint64_t j = 0; j < ly; ++j) a[map.n_x + j] = 1;
    return a;
}

// ---------------------------------------------------------------------------
// Bit pattern
// ---------------------------------------------------------------------------

std::pair<SquarePattern, SquarePattern> pattern_for(const BigUint& n) {
    require_odd(n);
    if (n < BigUint(9)) throw Error(ErrorCode::TooSmall, "N must be at least 9, got " + n.str());
    if (n.mod(4) == 3) {
        // x even, y odd: y² ≡ 1 (mod 8) and x² ≡ 4k (mod 8).
        const bool k_odd = ((n + 1) / 4).is_odd();
        return {SquarePattern{k_odd ? 4u : 0u, 3}, SquarePattern{1, 3}};
    }
    // x odd, y even: y² ≡ 4·(k mod 2) and x² ≡ N + y² (mod 16).
    const std::uint64_t kp = ((n - 1) / 4).is_odd() ? 1 : 0;
    return {SquarePattern{(n.mod(16) + 4 * kp) % 16, 4}, SquarePattern{4 * kp, 4}};
}

std::vector<std::pair<SquarePattern, SquarePattern>> extended_patterns(const BigUint& n, unsigned depth) {
    const auto base = pattern_for(n);
    if (depth == 0) return {base};
    if (depth > 24) throw Error(ErrorCode::TooLarge, "pattern depth " + std::to_string(depth) + " exceeds 24");

    const unsigned w = base.first.width;
    const unsigned m = w + depth;
    const std::uint64_t modulus = std::uint64_t{1} << m;
    // (i + 2^(m−1))² ≡ i² (mod 2^m), so half the residues suffice.
    std::vector<bool> is_square(modulus, false);
    for (std::uint64_t i = 0; i < modulus / 2; ++i) is_square[(i * i) & (modulus - 1)] = true;

    const std::uint64_t n_mod = n.mod(modulus);
    std::vector<std::pair<SquarePattern, SquarePattern>> out;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << depth); ++t) {
        const std::uint64_t r = base.first.value + (t << w);
        const std::uint64_t s = (r + modulus - n_mod) & (modulus - 1);
        if (is_square[r] && is_square[s]) out.push_back({SquarePattern{r, m}, SquarePattern{s, m}});
    }
    return out;
}

std::pair<QuboModel, BitPatternMap> encode_bit_pattern(const BigUint& n, const FermatBounds& bounds) {
    const auto [xp, yp] = pattern_for(n);
    return encode_bit_pattern(n, bounds, xp, yp);
}

std::pair<QuboModel, BitPatternMap> encode_bit_pattern(const BigUint& n, const FermatBounds& bounds,
                                                       const SquarePattern& x_pattern,
                                                       const SquarePattern& y_pattern) {
    require_odd(n);
    BitPatternMap map{n, x_pattern, y_pattern, {}, {}};
    const unsigned x_top = bitlen(bounds.x_max * bounds.x_max);
    const unsigned y_top = bitlen(bounds.y_max * bounds.y_max + 1);
    for (unsigned b = x_pattern.width; b < x_top; ++b) map.x_free_bits.push_back(b);
    for (unsigned b = y_pattern.width; b < y_top; ++b) map.y_free_bits.push_back(b);

    QuboModel model(map.num_vars());
    std::vector<LinearTerm> terms;
    terms.reserve(map.num_vars());
    for (std::size_t i = 0; i < map.x_free_bits.size(); ++i) {
        terms.push_back({i, BigInt(1) << map.x_free_bits[i]});
    }
    const std::size_t off = map.x_free_bits.size();
    for (std::size_t j = 0; j < map.y_free_bits.size(); ++j) {
        terms.push_back({off + j, -(BigInt(1) << map.y_free_bits[j])});
    }
    const BigInt constant = BigInt(x_pattern.value) - BigInt(y_pattern.value) - n.value();
    model.add_squared_linear(terms, constant, BigUint(1));
    return {std::move(model), std::move(map)};
}

std::vector<std::pair<QuboModel, BitPatternMap>> encode_bit_pattern_family(const BigUint& n,
                                                                           const FermatBounds& bounds,
                                                                           unsigned depth) {
    std::vector<std::pair<QuboModel, BitPatternMap>> out;
    for (const auto& [xp, yp] : extended_patterns(n, depth)) out.push_back(encode_bit_pattern(n, bounds, xp, yp));
    return out;
}

std::pair<BigUint, BigUint> bit_pattern_values(const BitPatternMap& map, std::span<const std::uint8_t> assignment) {
    check_length(map.num_vars(), assignment.size());
    BigUint x2(map.x_pattern.value);
    BigUint y2(map.y_pattern.value);
    for (std::size_t i = 0; i < map.x_free_bits.size(); ++i) {
        if (assignment[i]) x2 += BigUint(1) << map.x_free_bits[i];
    }
    const std::size_t off = map.x_free_bits.size();
    for (std::size_t j = 0; j < map.y_free_bits.size(); ++j) {
        if (assignment[off + j]) y2 += BigUint(1) << map.y_free_bits[j];
    }
    return {std::move(x2), std::move(y2)};
}

std::optional<std::pair<BigUint, BigUint>> decode_bit_pattern(const BitPatternMap& map,
                                                              std::span<const std::uint8_t> assignment) {
    const auto [x2, y2] = bit_pattern_values(map, assignment);
    auto x = is_perfect_square(x2);
    if (!x) return std::nullopt;
    auto y = is_perfect_square(y2);
    if (!y) return std::nullopt;
    return std::make_pair(std::move(*x), std::move(*y));
}

namespace {

std::optional<std::vector<std::uint8_t>> free_bits_of(const BigUint& v, const SquarePattern& pattern,
                                                      const std::vector<unsigned>& free_bits) {
    if (v.mod(std::uint64_t{1} << pattern.width) != pattern.value) return std::nullopt;
    std::vector<std::uint8_t> bits(free_bits.size(), 0);
    BigUint rest = v - BigUint(pattern.value);
    for (std::size_t i = 0; i < free_bits.size(); ++i) {
        if (rest.bit(free_bits[i])) {
            bits[i] = 1;
            rest -= BigUint(1) << free_bits[i];
        }
    }
    if (!rest.is_zero()) return std::nullopt;
    return bits;
}

}  // namespace

std::optional<Assignment> bit_pattern_assignment(const BitPatternMap& map, const BigUint& x2, const BigUint& y2) {
    auto xb = free_bits_of(x2, map.x_pattern, map.x_free_bits);
    auto yb = free_bits_of(y2, map.y_pattern, map.y_free_bits);
    if (!xb || !yb) return std::nullopt;
    Assignment a = std::move(*xb);
    a.insert(a.end(), yb->begin(), yb->end());
    return a;
}

// ---------------------------------------------------------------------------
// Metadata
// ---------------------------------------------------------------------------

namespace {

json pattern_json(const SquarePattern& p) {
    return json{{"value", std::to_string(p.value)}, {"width", std::to_string(p.width)}};
}

json bits_json(const std::vector<unsigned>& bits) {
    json a = json::array();
    for (unsigned b : bits) a.push_back(std::to_string(b));
    return a;
}

[[noreturn]] void metadata_error(const std::string& field, const std::string& msg) {
    throw Error(ErrorCode::ParseError, "at /metadata/" + field + ": " + msg);
}

const json& field(const json& obj, const std::string& name) {
    if (!obj.is_object() || !obj.contains(name)) metadata_error(name, "missing");
    return obj.at(name);
}

BigUint big_field(const json& obj, const std::string& name) {
    const json& v = field(obj, name);
    if (!v.is_string()) metadata_error(name, "expected a decimal string");
    try {
        return BigUint::from_string(v.get_ref<const std::string&>());
    } catch (const std::invalid_argument&) {
        metadata_error(name, "not a non-negative decimal integer");
    }
}

std::uint64_t small_field(const json& obj, const std::string& name) {
    const BigUint v = big_field(obj, name);
    if (bitlen(v) > 63) metadata_error(name, "value too large");
    return v.to_u64();
}

SquarePattern pattern_field(const json& obj, const std::string& name) {
    const json& p = field(obj, name);
    SquarePattern out{small_field(p, "value"), static_cast<unsigned>(small_field(p, "width"))};
    if (out.width > 63 || out.value >= (std::uint64_t{1} << out.width)) metadata_error(name, "inconsistent pattern");
    return out;
}

std::vector<unsigned> bits_field(const json& obj, const std::string& name) {
    const json& a = field(obj, name);
    if (!a.is_array()) metadata_error(name, "expected an array");
    std::vector<unsigned> out;
    for (const auto& e : a) {
        if (!e.is_string()) metadata_error(name, "expected decimal strings");
        try {
            const BigUint v = BigUint::from_string(e.get_ref<const std::string&>());
            if (bitlen(v) > 20) metadata_error(name, "bit position too large");
            out.push_back(static_cast<unsigned>(v.to_u64()));
        } catch (const std::invalid_argument&) {
            metadata_error(name, "not a decimal integer");
        }
    }
    return out;
}

}  // namespace

json to_metadata(const VarMap& map) {
    return std::visit(
            [](const auto& m) -> json {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, SumOfOddsMap>) {
                    return json{{"N", m.n.str()},
                                {"approach", "sum-odds"},
                                {"r0", m.r0.str()},
                                {"n_x", std::to_string(m.n_x)},
                                {"n_y", std::to_string(m.n_y)},
                                {"base", m.base.str()},
                                {"penalty_weight", m.penalty_weight.str()}};
                } else {
                    return json{{"N", m.n.str()},
                                {"approach", "bit-pattern"},
                                {"x_pattern", pattern_json(m.x_pattern)},
                                {"y_pattern", pattern_json(m.y_pattern)},
                                {"x_free_bits", bits_json(m.x_free_bits)},
                                {"y_free_bits", bits_json(m.y_free_bits)}};
                }
            },
            map);
}

VarMap var_map_from_metadata(const json& metadata) {
    const json& approach = field(metadata, "approach");
    if (approach == "sum-odds") {
        SumOfOddsMap m;
        m.n = big_field(metadata, "N");
        m.r0 = big_field(metadata, "r0");
        m.n_x = static_cast<std::size_t>(small_field(metadata, "n_x"));
        m.n_y = static_cast<std::size_t>(small_field(metadata, "n_y"));
        m.base = big_field(metadata, "base");
        m.penalty_weight = big_field(metadata, "penalty_weight");
        if (m.base != m.r0 * m.r0) metadata_error("base", "must equal r0²");
        return m;
    }
    if (approach == "bit-pattern") {
        BitPatternMap m;
        m.n = big_field(metadata, "N");
        m.x_pattern = pattern_field(metadata, "x_pattern");
        m.y_pattern = pattern_field(metadata, "y_pattern");
        m.x_free_bits = bits_field(metadata, "x_free_bits");
        m.y_free_bits = bits_field(metadata, "y_free_bits");
        return m;
    }
    metadata_error("approach", "unknown approach " + approach.dump());
}

const BigUint& target_of(const VarMap& map) {
    return std::visit([](const auto& m) -> const BigUint& { return m.n; }, map);
}

std::size_t num_vars_of(const VarMap& map) {
    return std::visit([](const auto& m) { return m.num_vars(); }, map);
}

}  // namespace fermatq
