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

#include "primes.hpp"

#include <array>
#include <bit>
#include <random>
#include <set>
#include <stdexcept>

#include <boost/multiprecision/integer.hpp>

namespace fermatq::cli {

bool is_probable_prime(const BigUint& n) {
    static constexpr std::array<unsigned, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < BigUint(2)) return false;
    for (unsigned p : kBases) {
        if (n == BigUint(p)) return true;
        if (n.mod(p) == 0) return false;
    }
    const BigInt& v = n.value();
    const BigInt m = v - 1;
    const unsigned s = boost::multiprecision::lsb(m);
    const BigInt d = m >> s;
    for (unsigned a : kBases) {
        BigInt x = boost::multiprecision::powm(BigInt(a), d, v);
        if (x == 1 || x == m) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = x * x % v;
            if (x == m) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

std::uint64_t random_prime(std::mt19937_64& rng, unsigned bits) {
    const std::uint64_t top = std::uint64_t{1} << (bits - 1);
    for (;;) {
        const std::uint64_t v = (rng() & (2 * top - 1)) | top | 1u;
        if (v > 3 && is_probable_prime(BigUint(v))) return v;
    }
}

}  // namespace

std::vector<Semiprime> balanced_semiprimes(unsigned bits, std::size_t count, std::uint64_t seed) {
    if (bits < 8 || bits > 48) throw std::invalid_argument("semiprime size must be between 8 and 48 bits");
    const unsigned half = (bits + 1) / 2;
    std::mt19937_64 rng(seed);
    std::set<std::uint64_t> seen;
    std::vector<Semiprime> out;
    std::size_t attempts = 0;
    while (out.size() < count) {
        if (++attempts > 1000 * (count + 10)) throw std::runtime_error("not enough distinct semiprimes of this size");
        const std::uint64_t a = random_prime(rng, half);
        const std::uint64_t b = random_prime(rng, half);
        if (a == b) continue;
        const std::uint64_t n = a * b;
        if (static_cast<unsigned>(std::bit_width(n)) != bits || !seen.insert(n).second) continue;
        out.push_back(Semiprime{BigUint(n), BigUint(std::max(a, b)), BigUint(std::min(a, b))});
    }
    return out;
}

}  // namespace fermatq::cli
