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

#include "fermatq/integers.hpp"

#include <array>
#include <stdexcept>

#include "fermatq/error.hpp"

namespace fermatq {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EvenInput: return "EvenInput";
        case ErrorCode::TooSmall: return "TooSmall";
        case ErrorCode::DivisibleByThree: return "DivisibleByThree";
        case ErrorCode::EmptyWheel: return "EmptyWheel";
        case ErrorCode::BoundExceeded: return "BoundExceeded";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NonIntegerCoefficient: return "NonIntegerCoefficient";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::TooManyVariables: return "TooManyVariables";
        case ErrorCode::TooLarge: return "TooLarge";
    }
    return "Unknown";
}

BigUint::BigUint(BigInt v) : value_(std::move(v)) {
    if (value_.sign() < 0) throw std::domain_error("BigUint: negative value " + value_.str());
}

BigUint BigUint::from_string(std::string_view digits) {
    if (digits.empty()) throw std::invalid_argument("BigUint: empty string");
    for (char c : digits) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("BigUint: not a decimal integer: " + std::string(digits));
        }
    }
    return BigUint(BigInt(std::string(digits)));
}

std::uint64_t BigUint::mod(std::uint64_t m) const {
    if (m == 0) throw std::domain_error("BigUint: modulus zero");
    return static_cast<std::uint64_t>(value_ % m);
}

std::uint64_t BigUint::to_u64() const {
    if (bitlen(*this) > 64) throw std::overflow_error("BigUint: value exceeds 64 bits: " + str());
    return static_cast<std::uint64_t>(value_);
}

BigUint& BigUint::operator-=(const BigUint& o) {
    if (value_ < o.value_) {
        throw std::domain_error("BigUint: subtraction underflow " + value_.str() + " - " + o.value_.str());
    }
    value_ -= o.value_;
    return *this;
}

BigUint& BigUint::operator/=(const BigUint& o) {
    if (o.is_zero()) throw std::domain_error("BigUint: division by zero");
    value_ /= o.value_;
    return *this;
}

BigUint& BigUint::operator%=(const BigUint& o) {
    if (o.is_zero()) throw std::domain_error("BigUint: division by zero");
    value_ %= o.value_;
    return *this;
}

unsigned bitlen(const BigInt& n) {
    if (n.is_zero()) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(abs(n))) + 1;
}

unsigned bitlen(const BigUint& n) { return bitlen(n.value()); }

BigUint isqrt(const BigUint& n) {
    if (n.is_zero()) return BigUint{};
    // 2^ceil(bits/2) >= sqrt(n); Newton decreases monotonically from any over-estimate.
    BigInt x = BigInt(1) << ((bitlen(n) + 1) / 2);
    const BigInt& v = n.value();
    for (;;) {
        BigInt y = (x + v / x) >> 1;
        if (y >= x) break;
        x = std::move(y);
    }
    return BigUint(std::move(x));
}

BigUint ceil_sqrt(const BigUint& n) {
    BigUint r = isqrt(n);
    if (r * r == n) return r;
    return r + 1;
}

namespace {

constexpr std::array<bool, 64> make_square_mod64() {
    std::array<bool, 64> t{};
    for (unsigned i = 0; i < 64; ++i) t[(i * i) % 64] = true;
    return t;
}

constexpr auto kSquareMod64 = make_square_mod64();

}  // namespace

std::optional<BigUint> is_perfect_square(const BigUint& n) {
    if (!kSquareMod64[static_cast<unsigned>(n.value() & 63u)]) return std::nullopt;
    BigUint r = isqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

BigUint gcd(const BigUint& a, const BigUint& b) {
    return BigUint(boost::multiprecision::gcd(a.value(), b.value()));
}

}  // namespace fermatq
