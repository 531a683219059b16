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
#include <vector>

#include "fermatq/integers.hpp"

namespace fermatq::cli {

/// Miller-Rabin with the first twelve primes as bases; exact below 3.3·10^24.
bool is_probable_prime(const BigUint& n);

struct Semiprime {
    BigUint n;
    BigUint p;  ///< larger factor
    BigUint q;
};

/// `count` distinct N = p·q with bitlen(N) = bits and p ≠ q primes > 3 of
/// ⌈bits/2⌉ bits each, drawn from mt19937_64(seed). Requires 8 ≤ bits ≤ 48.
std::vector<Semiprime> balanced_semiprimes(unsigned bits, std::size_t count, std::uint64_t seed);

}  // namespace fermatq::cli
