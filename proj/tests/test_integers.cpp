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

#include <cstdint>
#include <random>

#include "doctest.h"
#include "fermatq/integers.hpp"

namespace fermatq {
namespace {

BigUint random_bits(std::mt19937_64& rng, unsigned bits) {
    BigInt v = 0;
    for (unsigned got = 0; got < bits; got += 64) v = (v << 64) | BigInt(rng());
    v &= (BigInt(1) << bits) - 1;
    return BigUint(v);
}

TEST_CASE("isqrt examples") {
    CHECK(isqrt(0) == BigUint(0));
    CHECK(isqrt(8'749'764) == BigUint(2958));
    CHECK(isqrt(15) == BigUint(3));
    CHECK(isqrt(1) == BigUint(1));
    CHECK(isqrt(3) == BigUint(1));
    CHECK(isqrt(4) == BigUint(2));
}

TEST_CASE("ceil_sqrt examples") {
    CHECK(ceil_sqrt(16) == BigUint(4));
    CHECK(ceil_sqrt(15) == BigUint(4));
    CHECK(ceil_sqrt(8'689'739) == BigUint(2948));
    CHECK(ceil_sqrt(0) == BigUint(0));
    CHECK(ceil_sqrt(1) == BigUint(1));
}

TEST_CASE("is_perfect_square examples") {
    CHECK(is_perfect_square(60'025) == BigUint(245));
    CHECK(is_perfect_square(0) == BigUint(0));
    CHECK_FALSE(is_perfect_square(60'026).has_value());
    CHECK_FALSE(is_perfect_square(2).has_value());
}

TEST_CASE("bitlen examples") {
    CHECK(bitlen(BigUint(1)) == 1);
    CHECK(bitlen(BigUint(8'689'739)) == 24);
    CHECK(bitlen(BigUint(255)) == 8);
    CHECK(bitlen(BigUint(0)) == 0);
    CHECK(bitlen(BigUint(256)) == 9);
}

TEST_CASE("isqrt bracket property over random 1-128 bit values") {
    std::mt19937_64 rng(20240101);
    for (unsigned bits = 1; bits <= 128; ++bits) {
        for (int rep = 0; rep < 20; ++rep) {
            const BigUint n = random_bits(rng, bits);
            const BigUint r = isqrt(n);
            CHECK(r * r <= n);
            CHECK(n < (r + 1) * (r + 1));
        }
    }
}

TEST_CASE("perfect square round trip") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 500; ++rep) {
        const BigUint r = random_bits(rng, 1 + static_cast<unsigned>(rng() % 100)) + 2;
        const BigUint sq = r * r;
        REQUIRE(is_perfect_square(sq).has_value());
        CHECK(*is_perfect_square(sq) == r);
        CHECK_FALSE(is_perfect_square(sq + 1).has_value());
    }
}

TEST_CASE("mod-64 prefilter never rejects a square") {
    for (std::uint64_t r = 0; r < 5000; ++r) CHECK(is_perfect_square(r * r) == BigUint(r));
    // Non-squares agree with a direct check.
    for (std::uint64_t v = 0; v < 20000; ++v) {
        const BigUint s = isqrt(v);
        CHECK(is_perfect_square(v).has_value() == (s * s == BigUint(v)));
    }
}

TEST_CASE("ceil_sqrt bracket property") {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 2000; ++rep) {
        const BigUint n = random_bits(rng, 1 + static_cast<unsigned>(rng() % 128)) + 1;
        const BigUint c = ceil_sqrt(n);
        CHECK(c * c >= n);
        CHECK((c - 1) * (c - 1) < n);
    }
}

TEST_CASE("BigUint arithmetic guards") {
    CHECK_THROWS_AS(BigUint(3) - BigUint(5), std::domain_error);
    CHECK_THROWS_AS(BigUint(3) / BigUint(0), std::domain_error);
    CHECK_THROWS_AS(BigUint(BigInt(-1)), std::domain_error);
    CHECK_THROWS_AS(BigUint::from_string("12a"), std::invalid_argument);
    CHECK_THROWS_AS(BigUint::from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(BigUint::from_string("-5"), std::invalid_argument);

    const BigUint big = BigUint::from_string("340282366920938463463374607431768211457");  // 2^128 + 1
    CHECK(bitlen(big) == 129);
    CHECK((big - 1) == (BigUint(1) << 128));
    CHECK(big.mod(64) == 1);
    CHECK_THROWS_AS(big.to_u64(), std::overflow_error);
    CHECK((big * big) / big == big);
    CHECK(gcd(BigUint(8'689'739), BigUint(3203)) == BigUint(3203));
}

}  // namespace
}  // namespace fermatq
