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

#include "fermatq/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "fermatq/detail/compiled_model.hpp"
#include "fermatq/error.hpp"

namespace fermatq {

using nlohmann::json;
using detail::CompiledModel;
using detail::FlipState;

namespace {

template <class Int>
BigInt widen(const Int& v) {
    if constexpr (std::is_same_v<Int, BigInt>) {
        return v;
    } else {
        return BigInt(v);
    }
}

template <class Int>
double to_double(const Int& v) {
    if constexpr (std::is_same_v<Int, BigInt>) {
        return v.template convert_to<double>();
    } else {
        return static_cast<double>(v);
    }
}

void sort_samples(std::vector<Sample>& samples) {
    std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.assignment < b.assignment;
    });
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration in Gray-code order: one flip per step.
// ---------------------------------------------------------------------------

template <class Int>
SampleSet enumerate_ground_states(const QuboModel& model) {
    const std::size_t n = model.num_vars();
    const CompiledModel<Int> cm(model);
    FlipState<Int> state(cm);
    state.reset(Assignment(n, 0));

    Int best = state.energy();
    std::vector<std::uint64_t> ground{0};
    std::uint64_t packed = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        const auto i = static_cast<std::size_t>(std::countr_zero(k));
        state.flip(i);
        packed ^= std::uint64_t{1} << i;
        const Int& e = state.energy();
        if (e < best) {
            best = e;
            ground.clear();
            ground.push_back(packed);
        } else if (e == best) {
            ground.push_back(packed);
        }
    }

    SampleSet out;
    out.samples.reserve(ground.size());
    for (std::uint64_t bits : ground) {
        Sample s;
        s.assignment.resize(n);
        for (std::size_t i = 0; i < n; ++i) s.assignment[i] = static_cast<std::uint8_t>((bits >> i) & 1u);
        s.energy = widen(cm.evaluate(s.assignment));
        out.samples.push_back(std::move(s));
    }
    sort_samples(out.samples);
    return out;
}

// ---------------------------------------------------------------------------
// Simulated annealing
// ---------------------------------------------------------------------------

/// Packs bits MSB-first so that key order matches lexicographic assignment order.
struct WordKey {
    using type = std::uint64_t;
    static type pack(const std::vector<std::uint8_t>& x) {
        type key = 0;
        for (std::size_t i = 0; i < x.size(); ++i) key |= static_cast<type>(x[i]) << (63 - i);
        return key;
    }
    static Assignment unpack(type key, std::size_t n) {
        Assignment x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>((key >> (63 - i)) & 1u);
        return x;
    }
};

struct StringKey {
    using type = std::string;
    static type pack(const std::vector<std::uint8_t>& x) {
        type key((x.size() + 7) / 8, '\0');
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i]) key[i / 8] = static_cast<char>(static_cast<unsigned char>(key[i / 8]) | (0x80u >> (i % 8)));
        }
        return key;
    }
    static Assignment unpack(const type& key, std::size_t n) {
        Assignment x(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = (static_cast<unsigned char>(key[i / 8]) & (0x80u >> (i % 8))) ? 1 : 0;
        }
        return x;
    }
};

/// The `capacity` lowest distinct states offered so far, ordered by (energy, key).
///
/// Offers are appended to a buffer that is merged and truncated whenever it
/// doubles the capacity; once the set has been full, anything above the
/// current worst energy is rejected without packing.
template <class Int, class Key>
class BestStates {
  public:
    struct Entry {
        Int energy;
        typename Key::type key;
        std::uint64_t occurrences;
    };

    explicit BestStates(std::size_t capacity) : capacity_(capacity) {}

    bool admits(const Int& e) const { return capacity_ != 0 && (!bounded_ || !(threshold_ < e)); }

    void offer(const std::vector<std::uint8_t>& x, const Int& e) {
        if (!admits(e)) return;
        buffer_.push_back(Entry{e, Key::pack(x), 1});
        if (buffer_.size() >= 2 * capacity_ + 1024) compact();
    }

    const std::vector<Entry>& finish() {
        compact();
        return buffer_;
    }

  private:
    void compact() {
        std::sort(buffer_.begin(), buffer_.end(), [](const Entry& a, const Entry& b) {
            if (a.energy != b.energy) return a.energy < b.energy;
            return a.key < b.key;
        });
        std::size_t out = 0;
        for (std::size_t i = 0; i < buffer_.size(); ++i) {
            if (out > 0 && buffer_[out - 1].energy == buffer_[i].energy && buffer_[out - 1].key == buffer_[i].key) {
                buffer_[out - 1].occurrences += buffer_[i].occurrences;
            } else {
                if (out != i) buffer_[out] = std::move(buffer_[i]);
                ++out;
            }
        }
        buffer_.resize(std::min(out, capacity_));
        if (buffer_.size() == capacity_) {
            bounded_ = true;
            threshold_ = buffer_.back().energy;
        }
    }

    std::size_t capacity_;
    std::vector<Entry> buffer_;
    bool bounded_ = false;
    Int threshold_{};
};

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <class Int, class Key>
SampleSet anneal(const QuboModel& model, const SaParams& params, std::vector<ChainStats>* chain_stats) {
    const std::size_t n = model.num_vars();
    const CompiledModel<Int> cm(model);
    FlipState<Int> state(cm);
    BestStates<Int, Key> best(params.samples_kept);

    std::vector<double> betas(params.sweeps);
    for (std::uint64_t s = 0; s < params.sweeps; ++s) {
        const double t = params.sweeps == 1 ? 1.0 : static_cast<double>(s) / static_cast<double>(params.sweeps - 1);
        betas[s] = params.beta_initial * std::pow(params.beta_final / params.beta_initial, t);
    }

    if (chain_stats) chain_stats->clear();
    Assignment start(n);
    for (std::uint64_t c = 0; c < params.restarts; ++c) {
        std::mt19937_64 rng(params.seed ^ c);
        for (auto& b : start) b = static_cast<std::uint8_t>(rng() >> 63);
        state.reset(start);
        best.offer(state.assignment(), state.energy());

        Int delta_sum{};
        std::uint64_t accepted = 0;
        for (const double beta : betas) {
            for (std::size_t i = 0; i < n; ++i) {
                const Int d = state.delta(i);
                if (d > 0 && !(uniform01(rng) < std::exp(-beta * to_double(d)))) continue;
                delta_sum += state.flip(i);
                ++accepted;
                best.offer(state.assignment(), state.energy());
            }
        }
        if (chain_stats) {
            chain_stats->push_back(ChainStats{widen(cm.evaluate(start)), widen(cm.evaluate(state.assignment())),
                                              widen(delta_sum), accepted});
        }
    }

    const auto& kept = best.finish();
    SampleSet out;
    out.samples.reserve(kept.size());
    for (const auto& entry : kept) {
        Sample s;
        s.assignment = Key::unpack(entry.key, n);
        s.energy = widen(cm.evaluate(s.assignment));
        s.occurrences = entry.occurrences;
        out.samples.push_back(std::move(s));
    }
    sort_samples(out.samples);
    return out;
}

}  // namespace

json to_json(const SampleSet& set) {
    json samples = json::array();
    for (const auto& s : set.samples) {
        std::string bits(s.assignment.size(), '0');
        for (std::size_t i = 0; i < s.assignment.size(); ++i) bits[i] = s.assignment[i] ? '1' : '0';
        samples.push_back(json{{"assignment", bits}, {"energy", s.energy.str()}, {"occurrences", s.occurrences}});
    }
    return json{{"samples", std::move(samples)}};
}

SampleSet solve_exact(const QuboModel& model, std::size_t var_limit) {
    const std::size_t limit = std::min<std::size_t>(var_limit, 62);
    if (model.num_vars() > limit) {
        throw Error(ErrorCode::TooLarge, "exact solver limited to " + std::to_string(limit) + " variables, model has " +
                                                 std::to_string(model.num_vars()));
    }
    if (detail::fits_int64(model)) return enumerate_ground_states<std::int64_t>(model);
    return enumerate_ground_states<BigInt>(model);
}

void validate(const SaParams& p) {
    if (p.sweeps < 1) throw std::invalid_argument("SaParams: sweeps must be >= 1");
    if (p.restarts < 1) throw std::invalid_argument("SaParams: restarts must be >= 1");
    if (!(p.beta_initial > 0.0) || !(p.beta_initial < p.beta_final) || !std::isfinite(p.beta_final)) {
        throw std::invalid_argument("SaParams: need 0 < beta_initial < beta_final");
    }
}

SaParams default_sa_params(const QuboModel& model, std::uint64_t seed) {
    SaParams p;
    p.seed = seed;
    const std::size_t n = model.num_vars();
    if (n == 0) return p;

    const CompiledModel<BigInt> cm(model);
    FlipState<BigInt> state(cm);
    std::mt19937_64 rng(seed);
    Assignment x(n);
    for (auto& b : x) b = static_cast<std::uint8_t>(rng() >> 63);
    state.reset(x);
    double d_max = 0;
    for (int k = 0; k < 64; ++k) {
        const auto i = static_cast<std::size_t>(rng() % n);
        d_max = std::max(d_max, std::abs(state.flip(i).convert_to<double>()));
    }
    BigInt d_min;
    auto consider = [&](const BigInt& c) {
        if (!c.is_zero() && (d_min.is_zero() || abs(c) < d_min)) d_min = abs(c);
    };
    for (const auto& c : model.linear()) consider(c);
    for (const auto& [key, c] : model.quadratic()) consider(c);
    if (d_max == 0 || d_min.is_zero()) return p;
    p.beta_initial = 1.0 / d_max;
    p.beta_final = 10.0 / d_min.convert_to<double>();
    if (!(p.beta_final > p.beta_initial)) p.beta_final = 10.0 * p.beta_initial;
    return p;
}

SampleSet solve_sa(const QuboModel& model, const SaParams& params, std::vector<ChainStats>* chain_stats) {
    validate(params);
    const bool narrow = detail::fits_int64(model);
    if (model.num_vars() <= 64) {
        return narrow ? anneal<std::int64_t, WordKey>(model, params, chain_stats)
                      : anneal<BigInt, WordKey>(model, params, chain_stats);
    }
    return narrow ? anneal<std::int64_t, StringKey>(model, params, chain_stats)
                  : anneal<BigInt, StringKey>(model, params, chain_stats);
}

namespace {

std::optional<Factorization> verified(const BigUint& n, const BigUint& x, const BigUint& y) {
    if (x <= y) return std::nullopt;
    if (x * x - y * y != n) return std::nullopt;
    BigUint p = x + y;
    BigUint q = x - y;
    if (q <= BigUint(1) || p * q != n) return std::nullopt;
    return Factorization{std::move(p), std::move(q), x, y, 0};
}

}  // namespace

std::optional<Factorization> recover_factors(const BigUint& n, const SampleSet& samples, const VarMap& map) {
    std::uint64_t examined = 0;
    for (const auto& s : samples.samples) {
        ++examined;
        std::optional<std::pair<BigUint, BigUint>> roots;
        if (const auto* m = std::get_if<SumOfOddsMap>(&map)) {
            if (auto squares = decode_sum_of_odds(*m, s.assignment)) {
                auto x = is_perfect_square(squares->first);
                auto y = is_perfect_square(squares->second);
                if (x && y) roots.emplace(std::move(*x), std::move(*y));
            }
        } else {
            roots = decode_bit_pattern(std::get<BitPatternMap>(map), s.assignment);
        }
        if (!roots) continue;
        if (auto f = verified(n, roots->first, roots->second)) {
            f->iterations = examined;
            return f;
        }
    }
    return std::nullopt;
}

}  // namespace fermatq
