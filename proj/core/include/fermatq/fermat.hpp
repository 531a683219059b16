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

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "fermatq/integers.hpp"

namespace fermatq {

/// Search interval for x in N = x² − y².
struct FermatBounds {
    BigUint x_min;      ///< ⌈√N⌉
    BigUint x_max;      ///< ⌊(N + δ²)/(2δ)⌋, clamped to at least x_min
    BigUint y_max;      ///< ⌊√(x_max² − N)⌋
    BigUint delta_min;  ///< assumed smallest factor δ, odd and ≥ 3
};

/// Admissible residues of x modulo a small modulus.
struct ResidueFilter {
    std::uint32_t modulus = 1;
    std::vector<std::uint32_t> admissible;

    bool admits(std::uint64_t residue) const;
    bool admits(const BigUint& x) const { return admits(x.mod(modulus)); }
};

/// Joint admissible residues of several filters, iterated by precomputed gaps.
struct ResidueWheel {
    std::uint32_t modulus = 1;
    std::vector<std::uint32_t> residues;  ///< sorted ascending
    std::vector<std::uint32_t> gaps;      ///< gaps[i] = distance from residues[i] to the next admissible value
};

struct Factorization {
    BigUint p;
    BigUint q;
    BigUint x;
    BigUint y;
    std::uint64_t iterations = 0;  ///< perfect-square tests performed
};

enum class FermatMethod { naive, mod4, mod6, mod8_16, wheel };

std::string_view to_string(FermatMethod m) noexcept;

/// Accepts "naive", "mod4", "mod6", "mod8-16" (or "mod8_16") and "wheel".
std::optional<FermatMethod> parse_fermat_method(std::string_view name) noexcept;

/// Bounds for odd N ≥ 9. With `assume_balanced`, δ = 2^(⌈bitlen(N)/2⌉−1)+1, else δ = 3.
FermatBounds fermat_bounds(const BigUint& n, bool assume_balanced);

/// Parity of x: N ≡ 1 (mod 4) forces x odd, N ≡ 3 (mod 4) forces x even.
ResidueFilter filter_mod4(const BigUint& n);

/// x mod 3 from N mod 6, valid when every prime factor of N exceeds 3.
ResidueFilter filter_mod6(const BigUint& n);

/// x mod 4 (N ≡ 3 mod 4) or x mod 8 (N ≡ 1 mod 4) from the parity of k = (N∓1)/4.
/// Either way a quarter of all residues survive.
ResidueFilter filter_mod8_16(const BigUint& n);

ResidueWheel build_wheel(std::span<const ResidueFilter> filters);

/// The filters a method applies to N. `wheel` drops the mod-6 filter when 3 | N.
std::vector<ResidueFilter> filters_for(const BigUint& n, FermatMethod method);

struct FermatOptions {
    FermatMethod method = FermatMethod::naive;
    bool assume_balanced = false;
    /// When set, receives every x at which a perfect-square test was performed.
    std::vector<BigUint>* visited = nullptr;
    /// When set, receives the number of tests, also when BoundExceeded is thrown.
    std::uint64_t* tests = nullptr;
};

/// Fermat's method restricted to the admissible residues of `options.method`.
///
/// Returns the representation with the smallest x ≥ ⌈√N⌉, i.e. the factor pair
/// closest to √N. Throws Error{BoundExceeded} once x passes x_max.
Factorization factor_fermat(const BigUint& n, const FermatOptions& options);

inline Factorization factor_fermat(const BigUint& n, FermatMethod method, bool assume_balanced = false) {
    return factor_fermat(n, FermatOptions{method, assume_balanced, nullptr, nullptr});
}

/// Smallest prime divisor d ≤ limit of N with cofactor N/d, or nullopt.
std::optional<std::pair<std::uint64_t, BigUint>> trial_divide_small(const BigUint& n, std::uint64_t limit);

}  // namespace fermatq
