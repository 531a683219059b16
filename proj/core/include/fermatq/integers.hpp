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

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fermatq {

/// Signed arbitrary-precision integer. Used for QUBO coefficients, offsets and energies.
using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision non-negative integer.
///
/// Wraps a BigInt and enforces the non-negative invariant: subtraction that
/// would go below zero throws std::domain_error instead of wrapping.
class BigUint {
  public:
    BigUint() = default;
    BigUint(std::uint64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)

    /// Throws std::domain_error if `v` is negative.
    explicit BigUint(BigInt v);

    /// Parses a non-empty string of decimal digits. Throws std::invalid_argument otherwise.
    static BigUint from_string(std::string_view digits);

    const BigInt& value() const noexcept { return value_; }
    std::string str() const { return value_.str(); }

    bool is_zero() const noexcept { return value_.is_zero(); }
    bool is_odd() const noexcept { return bit_test(value_, 0); }
    bool bit(unsigned pos) const { return bit_test(value_, pos); }

    /// Value reduced modulo a small modulus.
    std::uint64_t mod(std::uint64_t m) const;

    /// Narrowing conversion; throws std::overflow_error if the value needs more than 64 bits.
    std::uint64_t to_u64() const;

    BigUint& operator+=(const BigUint& o) { value_ += o.value_; return *this; }
    BigUint& operator-=(const BigUint& o);
    BigUint& operator*=(const BigUint& o) { value_ *= o.value_; return *this; }
    BigUint& operator/=(const BigUint& o);
    BigUint& operator%=(const BigUint& o);
    BigUint& operator<<=(unsigned s) { value_ <<= s; return *this; }
    BigUint& operator>>=(unsigned s) { value_ >>= s; return *this; }

    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
    friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
    friend BigUint operator*(BigUint a, const BigUint& b) { return a *= b; }
    friend BigUint operator/(BigUint a, const BigUint& b) { return a /= b; }
    friend BigUint operator%(BigUint a, const BigUint& b) { return a %= b; }
    friend BigUint operator<<(BigUint a, unsigned s) { return a <<= s; }
    friend BigUint operator>>(BigUint a, unsigned s) { return a >>= s; }

    friend bool operator==(const BigUint& a, const BigUint& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) {
        const int c = a.value_.compare(b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const BigUint& v) { return os << v.value_; }

  private:
    BigInt value_;
};

/// ⌊√n⌋ by Newton's iteration.
BigUint isqrt(const BigUint& n);

/// Smallest r with r² ≥ n.
BigUint ceil_sqrt(const BigUint& n);

/// The root r if n = r², otherwise nullopt.
std::optional<BigUint> is_perfect_square(const BigUint& n);

/// Bits in the binary representation; bitlen(0) == 0.
unsigned bitlen(const BigUint& n);
unsigned bitlen(const BigInt& n);

BigUint gcd(const BigUint& a, const BigUint& b);

}  // namespace fermatq
