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

#include "fermatq/fermat.hpp"

#include <algorithm>
#include <numeric>

#include "fermatq/error.hpp"

namespace fermatq {

namespace {

void require_odd(const BigUint& n) {
    if (!n.is_odd()) throw Error(ErrorCode::EvenInput, "N must be odd, got " + n.str());
}

void require_odd_at_least_9(const BigUint& n) {
    require_odd(n);
    if (n < BigUint(9)) throw Error(ErrorCode::TooSmall, "N must be at least 9, got " + n.str());
}

}  // namespace

std::string_view to_string(FermatMethod m) noexcept {
    switch (m) {
        case FermatMethod::naive: return "naive";
        case FermatMethod::mod4: return "mod4";
        case FermatMethod::mod6: return "mod6";
        case FermatMethod::mod8_16: return "mod8-16";
        case FermatMethod::wheel: return "wheel";
    }
    return "unknown";
}

std::optional<FermatMethod> parse_fermat_method(std::string_view name) noexcept {
    if (name == "naive") return FermatMethod::naive;
    if (name == "mod4") return FermatMethod::mod4;
    if (name == "mod6") return FermatMethod::mod6;
    if (name == "mod8-16" || name == "mod8_16") return FermatMethod::mod8_16;
    if (name == "wheel") return FermatMethod::wheel;
    return std::nullopt;
}

bool ResidueFilter::admits(std::uint64_t residue) const {
    return std::binary_search(admissible.begin(), admissible.end(),
                              static_cast<std::uint32_t>(residue % modulus));
}

FermatBounds fermat_bounds(const BigUint& n, bool assume_balanced) {
    require_odd_at_least_9(n);
    FermatBounds b;
    b.delta_min = assume_balanced ? (BigUint(1) << ((bitlen(n) + 1) / 2 - 1)) + 1 : BigUint(3);
    b.x_min = ceil_sqrt(n);
    b.x_max = (n + b.delta_min * b.delta_min) / (BigUint(2) * b.delta_min);
    // δ can exceed √N for unbalanced small inputs; keep the interval non-empty.
    if (b.x_max < b.x_min) b.x_max = b.x_min;
    b.y_max = isqrt(b.x_max * b.x_max - n);
    return b;
}

ResidueFilter filter_mod4(const BigUint& n) {
    require_odd(n);
    if (n.mod(4) == 1) return {2, {1}};
    return {2, {0}};
}

ResidueFilter filter_mod6(const BigUint& n) {
    require_odd(n);
    const auto r = n.mod(6);
    if (r == 3) throw Error(ErrorCode::DivisibleByThree, "N is divisible by 3: " + n.str());
    // p, q ≡ ±1 (mod 6): same signs give N ≡ 1 and p+q ≡ ±2, opposite signs give N ≡ 5 and p+q ≡ 0.
    if (r == 1) return {3, {1, 2}};
    return {3, {0}};
}

ResidueFilter filter_mod8_16(const BigUint& n) {
    require_odd_at_least_9(n);
    if (n.mod(4) == 3) {
        const bool k_odd = ((n + 1) / 4).is_odd();
        // x² ≡ 4k (mod 8): 0 when k is even, 4 when k is odd.
        return {4, {k_odd ? 2u : 0u}};
    }
    const std::uint64_t k_parity = ((n - 1) / 4).is_odd() ? 1 : 0;
    const std::uint64_t x2 = (n.mod(16) + 4 * k_parity) % 16;
    if (x2 == 1) return {8, {1, 7}};
    return {8, {3, 5}};
}

ResidueWheel build_wheel(std::span<const ResidueFilter> filters) {
    ResidueWheel w;
    for (const auto& f : filters) w.modulus = std::lcm(w.modulus, f.modulus);
    for (std::uint32_t r = 0; r < w.modulus; ++r) {
        if (std::all_of(filters.begin(), filters.end(), [r](const ResidueFilter& f) { return f.admits(r); })) {
            w.residues.push_back(r);
        }
    }
    if (w.residues.empty()) throw Error(ErrorCode::EmptyWheel, "residue filters have an empty intersection");
    w.gaps.resize(w.residues.size());
    for (std::size_t i = 0; i + 1 < w.residues.size(); ++i) w.gaps[i] = w.residues[i + 1] - w.residues[i];
    w.gaps.back() = w.modulus - w.residues.back() + w.residues.front();
    return w;
}

std::vector<ResidueFilter> filters_for(const BigUint& n, FermatMethod method) {
    switch (method) {
        case FermatMethod::naive: return {};
        case FermatMethod::mod4: return {filter_mod4(n)};
        case FermatMethod::mod6: return {filter_mod6(n)};
        case FermatMethod::mod8_16: return {filter_mod8_16(n)};
        case FermatMethod::wheel: {
            std::vector<ResidueFilter> fs{filter_mod8_16(n)};
            if (n.mod(3) != 0) fs.push_back(filter_mod6(n));
            return fs;
        }
    }
    return {};
}

Factorization factor_fermat(const BigUint& n, const FermatOptions& options) {
    const FermatBounds bounds = fermat_bounds(n, options.assume_balanced);

    if (auto root = is_perfect_square(n)) {
        if (options.visited) options.visited->push_back(*root);
        if (options.tests) *options.tests = 1;
        return Factorization{*root, *root, *root, BigUint{}, 1};
    }

    const auto filters = filters_for(n, options.method);
    const ResidueWheel wheel = build_wheel(filters);

    // Align x to the first admissible residue at or above x_min.
    const std::uint64_t rem = bounds.x_min.mod(wheel.modulus);
    auto it = std::lower_bound(wheel.residues.begin(), wheel.residues.end(), rem);
    BigUint x = bounds.x_min - BigUint(rem);
    if (it == wheel.residues.end()) {
        x += BigUint(wheel.modulus);
        it = wheel.residues.begin();
    }
    x += BigUint(*it);
    auto idx = static_cast<std::size_t>(it - wheel.residues.begin());

    const BigInt& nv = n.value();
    std::uint64_t tests = 0;
    while (x <= bounds.x_max) {
        ++tests;
        if (options.visited) options.visited->push_back(x);
        if (auto y = is_perfect_square(BigUint(x.value() * x.value() - nv))) {
            if (options.tests) *options.tests = tests;
            return Factorization{x + *y, x - *y, x, *y, tests};
        }
        x += BigUint(wheel.gaps[idx]);
        if (++idx == wheel.gaps.size()) idx = 0;
    }
    if (options.tests) *options.tests = tests;
    throw Error(ErrorCode::BoundExceeded,
                "no representation with x <= " + bounds.x_max.str() + " for N=" + n.str());
}

std::optional<std::pair<std::uint64_t, BigUint>> trial_divide_small(const BigUint& n, std::uint64_t limit) {
    if (n < BigUint(2)) return std::nullopt;
    for (std::uint64_t d = 2; d <= limit; d = (d == 2 ? 3 : d + 2)) {
        if (n.mod(d) == 0) return std::make_pair(d, n / BigUint(d));
    }
    return std::nullopt;
}

}  // namespace fermatq
