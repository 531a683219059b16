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

#include "fermatq/qubo.hpp"

#include <algorithm>

#include "fermatq/error.hpp"

namespace fermatq {

using nlohmann::json;

BigInt QuboModel::quadratic(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    auto it = quadratic_.find({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    return it == quadratic_.end() ? BigInt{} : it->second;
}

void QuboModel::check_index(std::size_t i) const {
    if (i >= linear_.size()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "variable " + std::to_string(i) + " with num_vars=" + std::to_string(linear_.size()));
    }
}

void QuboModel::add_linear(std::size_t i, const BigInt& c) {
    check_index(i);
    linear_[i] += c;
}

void QuboModel::add_quadratic(std::size_t i, std::size_t j, const BigInt& c) {
    check_index(i);
    check_index(j);
    if (i == j) throw Error(ErrorCode::IndexOutOfRange, "quadratic term on a single variable " + std::to_string(i));
    if (c.is_zero()) return;
    if (i > j) std::swap(i, j);
    const VarPair key{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
    auto [it, inserted] = quadratic_.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) quadratic_.erase(it);
    }
}

void QuboModel::add_squared_linear(std::span<const LinearTerm> terms, const BigInt& constant,
                                   const BigUint& weight) {
    // Merge repeated variables first so that v·v terms fold into the linear table.
    std::map<std::size_t, BigInt> merged;
    for (const auto& t : terms) {
        check_index(t.var);
        merged[t.var] += t.coeff;
    }
    const BigInt& w = weight.value();
    for (auto it = merged.begin(); it != merged.end(); ++it) {
        const auto& [i, ci] = *it;
        if (ci.is_zero()) continue;
        linear_[i] += w * (ci * ci + 2 * constant * ci);
        for (auto jt = std::next(it); jt != merged.end(); ++jt) {
            add_quadratic(i, jt->first, 2 * w * ci * jt->second);
        }
    }
    offset_ += w * constant * constant;
}

std::size_t QuboModel::num_linear_terms() const {
    return static_cast<std::size_t>(
            std::count_if(linear_.begin(), linear_.end(), [](const BigInt& c) { return !c.is_zero(); }));
}

BigInt energy(const QuboModel& model, std::span<const std::uint8_t> assignment) {
    if (assignment.size() != model.num_vars()) {
        throw Error(ErrorCode::LengthMismatch, "assignment has " + std::to_string(assignment.size()) +
                                                       " entries, model has " + std::to_string(model.num_vars()));
    }
    BigInt e = model.offset();
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (assignment[i]) e += model.linear()[i];
    }
    for (const auto& [key, c] : model.quadratic()) {
        if (assignment[key.first] && assignment[key.second]) e += c;
    }
    return e;
}

BigInt ising_energy_x4(const IsingModel& model, std::span<const std::int8_t> spins) {
    if (spins.size() != model.num_spins()) {
        throw Error(ErrorCode::LengthMismatch, "spin vector has " + std::to_string(spins.size()) +
                                                       " entries, model has " + std::to_string(model.num_spins()));
    }
    BigInt e = model.offset_x4;
    for (std::size_t i = 0; i < spins.size(); ++i) {
        if (spins[i] > 0) {
            e += model.h_x4[i];
        } else {
            e -= model.h_x4[i];
        }
    }
    for (const auto& [key, c] : model.j_x4) {
        if (spins[key.first] * spins[key.second] > 0) {
            e += c;
        } else {
            e -= c;
        }
    }
    return e;
}

IsingModel to_ising(const QuboModel& model) {
    // a·x = a/2 + (a/2)σ;  b·x_i·x_j = (b/4)(1 + σ_i + σ_j + σ_iσ_j)
    IsingModel out;
    out.h_x4.resize(model.num_vars());
    out.offset_x4 = 4 * model.offset();
    for (std::size_t i = 0; i < model.num_vars(); ++i) {
        const BigInt& a = model.linear()[i];
        out.h_x4[i] += 2 * a;
        out.offset_x4 += 2 * a;
    }
    for (const auto& [key, b] : model.quadratic()) {
        out.h_x4[key.first] += b;
        out.h_x4[key.second] += b;
        out.offset_x4 += b;
        out.j_x4.emplace(key, b);
    }
    return out;
}

namespace {

BigInt exact_quarter(const BigInt& v, const std::string& what) {
    if ((v & 3) != 0) throw Error(ErrorCode::NonIntegerCoefficient, what + " = " + v.str() + "/4");
    return v / 4;
}

}  // namespace

QuboModel from_ising(const IsingModel& model) {
    // h·σ = 2h·x − h;  J·σ_iσ_j = J(4x_ix_j − 2x_i − 2x_j + 1)
    QuboModel out(model.num_spins());
    std::vector<BigInt> lin_x4(model.num_spins());
    BigInt offset_x4 = model.offset_x4;
    for (std::size_t i = 0; i < model.num_spins(); ++i) {
        lin_x4[i] += 2 * model.h_x4[i];
        offset_x4 -= model.h_x4[i];
    }
    for (const auto& [key, j] : model.j_x4) {
        out.add_quadratic(key.first, key.second, j);
        lin_x4[key.first] -= 2 * j;
        lin_x4[key.second] -= 2 * j;
        offset_x4 += j;
    }
    for (std::size_t i = 0; i < lin_x4.size(); ++i) {
        out.add_linear(i, exact_quarter(lin_x4[i], "linear[" + std::to_string(i) + "]"));
    }
    out.add_offset(exact_quarter(offset_x4, "offset"));
    return out;
}

// ---------------------------------------------------------------------------
// Document format
// ---------------------------------------------------------------------------

std::string serialize(const QuboModel& model, const json& metadata) {
    json doc;
    doc["version"] = 1;
    doc["num_vars"] = model.num_vars();
    doc["offset"] = model.offset().str();
    json linear = json::object();
    for (std::size_t i = 0; i < model.num_vars(); ++i) {
        if (!model.linear()[i].is_zero()) linear[std::to_string(i)] = model.linear()[i].str();
    }
    doc["linear"] = std::move(linear);
    json quadratic = json::array();
    for (const auto& [key, c] : model.quadratic()) quadratic.push_back({key.first, key.second, c.str()});
    doc["quadratic"] = std::move(quadratic);
    doc["metadata"] = metadata.is_null() ? json::object() : metadata;
    return doc.dump(2) + "\n";
}

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& msg) {
    throw Error(ErrorCode::ParseError, "at " + where + ": " + msg);
}

bool is_decimal(std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

BigInt parse_decimal(const json& v, const std::string& where) {
    if (!v.is_string()) schema_error(where, "expected a decimal string");
    const auto& s = v.get_ref<const std::string&>();
    if (!is_decimal(s)) schema_error(where, "not a decimal integer: \"" + s + "\"");
    return BigInt(s);
}

std::size_t parse_index(const json& v, std::size_t num_vars, const std::string& where) {
    if (!v.is_number_unsigned()) schema_error(where, "expected a non-negative integer index");
    const auto i = v.get<std::uint64_t>();
    if (i >= num_vars) schema_error(where, "index " + std::to_string(i) + " out of range");
    return static_cast<std::size_t>(i);
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

QuboDocument deserialize(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object()) schema_error("/", "expected an object");
    if (!doc.contains("version") || doc["version"] != 1) schema_error("/version", "expected version 1");
    if (!doc.contains("num_vars") || !doc["num_vars"].is_number_unsigned()) {
        schema_error("/num_vars", "expected a non-negative integer");
    }
    const auto n = doc["num_vars"].get<std::size_t>();

    QuboDocument out{QuboModel(n), json::object()};
    if (!doc.contains("offset")) schema_error("/offset", "missing");
    out.model.add_offset(parse_decimal(doc["offset"], "/offset"));

    if (doc.contains("linear")) {
        const json& lin = doc["linear"];
        if (!lin.is_object()) schema_error("/linear", "expected an object");
        for (const auto& [k, v] : lin.items()) {
            const std::string where = "/linear/" + k;
            if (!is_decimal(k) || k.front() == '-') schema_error(where, "key is not a variable index");
            if (k.size() > 19) schema_error(where, "index out of range");
            const auto i = std::stoull(k);
            if (i >= n) schema_error(where, "index " + k + " out of range");
            out.model.add_linear(static_cast<std::size_t>(i), parse_decimal(v, where));
        }
    }

    if (doc.contains("quadratic")) {
        const json& quad = doc["quadratic"];
        if (!quad.is_array()) schema_error("/quadratic", "expected an array");
        std::map<VarPair, bool> seen;
        for (std::size_t e = 0; e < quad.size(); ++e) {
            const std::string where = "/quadratic/" + std::to_string(e);
            const json& entry = quad[e];
            if (!entry.is_array() || entry.size() != 3) schema_error(where, "expected [i, j, \"coefficient\"]");
            const auto i = parse_index(entry[0], n, where + "/0");
            const auto j = parse_index(entry[1], n, where + "/1");
            if (i >= j) schema_error(where, "requires i < j");
            const VarPair key{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
            if (!seen.emplace(key, true).second) schema_error(where, "duplicate pair");
            out.model.add_quadratic(i, j, parse_decimal(entry[2], where + "/2"));
        }
    }

    if (doc.contains("metadata")) {
        if (!doc["metadata"].is_object()) schema_error("/metadata", "expected an object");
        out.metadata = doc["metadata"];
    }
    return out;
}

}  // namespace fermatq
