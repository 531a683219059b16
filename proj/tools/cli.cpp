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

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fermatq/encoders.hpp"
#include "fermatq/error.hpp"
#include "fermatq/fermat.hpp"
#include "fermatq/solvers.hpp"
#include "primes.hpp"

namespace fermatq::cli {

using nlohmann::json;

namespace {

constexpr std::uint64_t kStripLimit = 100;

/// Thrown by command bodies; carries the exit code.
struct Failure {
    int code;
    std::string message;
};

class Stopwatch {
  public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::BoundExceeded:
            return kNotFactored;
        case ErrorCode::TooManyVariables:
        case ErrorCode::TooLarge:
            return kResourceCap;
        case ErrorCode::ParseError:
        case ErrorCode::LengthMismatch:
            return kParse;
        default:
            return kUsage;
    }
}

BigUint parse_n(const std::string& text) {
    try {
        return BigUint::from_string(text);
    } catch (const std::exception&) {
        throw Failure{kUsage, "N must be a non-negative decimal integer, got '" + text + "'"};
    }
}

json factors_json(const Factorization& f) {
    return json{{"p", f.p.str()}, {"q", f.q.str()}, {"x", f.x.str()}, {"y", f.y.str()}};
}

void emit(std::ostream& out, json report, const Stopwatch& clock, bool timing) {
    if (timing) report["wall_time_ms"] = clock.elapsed_ms();
    out << report.dump(2) << '\n';
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kParse, "cannot read " + path};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    f.close();
    if (!f) throw Failure{kUsage, "cannot write " + path};
}

// ---------------------------------------------------------------------------
// factor
// ---------------------------------------------------------------------------

struct FactorArgs {
    std::string n;
    std::string method = "wheel";
    bool assume_balanced = false;
};

int cmd_factor(const FactorArgs& args, bool timing, std::ostream& out) {
    const Stopwatch clock;
    const BigUint n = parse_n(args.n);
    const auto method = parse_fermat_method(args.method);
    if (!method) throw Failure{kUsage, "unknown method '" + args.method + "'"};
    if (n < BigUint(2)) throw Failure{kUsage, "N must be at least 2"};

    json report{{"command", "factor"},
                {"N", n.str()},
                {"method", std::string(to_string(*method))},
                {"assume_balanced", args.assume_balanced}};
    json stripped = json::array();
    BigUint m = n;
    while (!m.is_odd()) {
        stripped.push_back("2");
        m = m / BigUint(2);
    }
    // An odd perfect square goes straight to Fermat, which finds it at x = √m.
    if (m < BigUint(9) || !is_perfect_square(m)) {
        while (auto d = trial_divide_small(m, kStripLimit)) {
            stripped.push_back(std::to_string(d->first));
            m = d->second;
        }
    }
    report["stripped"] = stripped;
    report["cofactor"] = m.str();

    if (m == BigUint(1) || is_probable_prime(m)) {
        report["result"] = nullptr;
        report["iterations"] = 0;
        report["found"] = !stripped.empty();
        report["note"] = m == BigUint(1) ? "fully factored by small primes" : "cofactor is prime";
        emit(out, report, clock, timing);
        return stripped.empty() ? kNotFactored : kSuccess;
    }

    std::uint64_t tests = 0;
    try {
        const auto f = factor_fermat(m, FermatOptions{*method, args.assume_balanced, nullptr, &tests});
        if (f.p * f.q != m) throw Failure{kNotFactored, "internal error: p·q does not reproduce the cofactor"};
        report["result"] = factors_json(f);
        report["iterations"] = f.iterations;
        report["found"] = true;
        emit(out, report, clock, timing);
        return kSuccess;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::BoundExceeded) throw;
        report["result"] = nullptr;
        report["iterations"] = tests;
        report["found"] = false;
        report["error"] = e.what();
        emit(out, report, clock, timing);
        return kNotFactored;
    }
}

// ---------------------------------------------------------------------------
// encode
// ---------------------------------------------------------------------------

struct EncodeArgs {
    std::string n;
    std::string approach;
    bool assume_balanced = false;
    std::optional<std::string> penalty;
    unsigned pattern_depth = 0;
    std::optional<std::string> out;
    std::size_t max_vars = kDefaultVariableCap;
};

json bounds_json(const FermatBounds& b) {
    return json{{"x_min", b.x_min.str()}, {"x_max", b.x_max.str()}, {"y_max", b.y_max.str()},
                {"delta_min", b.delta_min.str()}};
}

void check_cap(std::size_t num_vars, std::size_t cap) {
    if (num_vars > cap) {
        throw Error(ErrorCode::TooManyVariables,
                    "encoding needs " + std::to_string(num_vars) + " variables, cap is " + std::to_string(cap));
    }
}

int cmd_encode(const EncodeArgs& args, std::ostream& out, std::ostream& err) {
    const BigUint n = parse_n(args.n);
    if (args.approach == "sum-odds" && args.pattern_depth != 0) {
        throw Failure{kUsage, "--pattern-depth applies to the bit-pattern approach only"};
    }
    if (args.approach == "bit-pattern" && args.penalty) {
        throw Failure{kUsage, "--penalty applies to the sum-odds approach only"};
    }
    if (args.pattern_depth > 0 && !args.out) throw Failure{kUsage, "--pattern-depth requires --out"};

    const FermatBounds bounds = fermat_bounds(n, args.assume_balanced);
    auto document = [&](const QuboModel& model, const VarMap& map, json extra) {
        json meta = to_metadata(map);
        meta["bounds"] = bounds_json(bounds);
        meta["assume_balanced"] = args.assume_balanced;
        for (auto& [k, v] : extra.items()) meta[k] = v;
        return serialize(model, meta);
    };

    std::vector<std::pair<std::string, std::string>> outputs;  // (path, text)
    if (args.approach == "sum-odds") {
        const BigUint penalty = args.penalty ? parse_n(*args.penalty) : default_penalty_weight(n);
        const auto [model, map] = encode_sum_of_odds(n, bounds, penalty, args.max_vars);
        err << "num_vars=" << model.num_vars() << " offset=" << model.offset() << '\n';
        outputs.emplace_back(args.out.value_or(""), document(model, map, json::object()));
    } else {
        const auto family = encode_bit_pattern_family(n, bounds, args.pattern_depth);
        for (std::size_t k = 0; k < family.size(); ++k) {
            const auto& [model, map] = family[k];
            check_cap(model.num_vars(), args.max_vars);
            json extra{{"pattern_depth", std::to_string(args.pattern_depth)}};
            std::string path = args.out.value_or("");
            if (args.pattern_depth > 0) {
                extra["subproblem"] = std::to_string(k);
                extra["subproblems"] = std::to_string(family.size());
                path += "." + std::to_string(k);
            }
            err << (args.pattern_depth > 0 ? path + ": " : "") << "num_vars=" << model.num_vars()
                << " offset=" << model.offset() << '\n';
            outputs.emplace_back(path, document(model, map, extra));
        }
    }
    for (const auto& [path, text] : outputs) {
        if (path.empty()) {
            out << text;
        } else {
            write_file(path, text);
        }
    }
    return kSuccess;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveArgs {
    std::string file;
    std::string solver = "sa";
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> sweeps;
    std::optional<std::uint64_t> restarts;
    std::optional<double> beta_initial;
    std::optional<double> beta_final;
    std::optional<std::size_t> samples_kept;
    std::size_t var_limit = kDefaultExactVarLimit;
    std::optional<std::string> samples_out;
};

int cmd_solve(const SolveArgs& args, bool timing, std::ostream& out) {
    const Stopwatch clock;
    QuboDocument doc = deserialize(read_file(args.file));
    const VarMap map = var_map_from_metadata(doc.metadata);
    if (num_vars_of(map) != doc.model.num_vars()) {
        throw Failure{kParse, "metadata describes " + std::to_string(num_vars_of(map)) + " variables, model has " +
                                      std::to_string(doc.model.num_vars())};
    }
    const BigUint& n = target_of(map);

    json report{{"command", "solve"},
                {"N", n.str()},
                {"approach", doc.metadata.at("approach")},
                {"solver", args.solver},
                {"num_vars", doc.model.num_vars()}};
    SampleSet samples;
    if (args.solver == "exact") {
        samples = solve_exact(doc.model, args.var_limit);
    } else {
        SaParams p = default_sa_params(doc.model, args.seed);
        if (args.sweeps) p.sweeps = *args.sweeps;
        if (args.restarts) p.restarts = *args.restarts;
        if (args.beta_initial) p.beta_initial = *args.beta_initial;
        if (args.beta_final) p.beta_final = *args.beta_final;
        if (args.samples_kept) p.samples_kept = *args.samples_kept;
        try {
            validate(p);
        } catch (const std::invalid_argument& e) {
            throw Failure{kUsage, e.what()};
        }
        report["seed"] = p.seed;
        report["params"] = json{{"sweeps", p.sweeps},
                                {"restarts", p.restarts},
                                {"beta_initial", p.beta_initial},
                                {"beta_final", p.beta_final},
                                {"samples_kept", p.samples_kept}};
        samples = solve_sa(doc.model, p);
    }
    if (args.samples_out) write_file(*args.samples_out, to_json(samples).dump(2) + "\n");

    std::size_t zeros = 0;
    for (const auto& s : samples.samples) zeros += s.energy == 0 ? 1 : 0;
    report["samples"] = samples.size();
    report["best_energy"] = samples.empty() ? json(nullptr) : json(samples.lowest_energy().str());
    report["zero_energy_samples"] = zeros;

    auto f = recover_factors(n, samples, map);
    if (f && f->p * f->q != n) f.reset();
    report["result"] = f ? factors_json(*f) : json(nullptr);
    report["samples_examined"] = f ? f->iterations : samples.size();
    report["found"] = f.has_value();
    emit(out, report, clock, timing);
    return f ? kSuccess : kNotFactored;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchArgs {
    std::string bits = "16";
    std::size_t samples = 50;
    std::uint64_t seed = 0;
    std::optional<std::string> csv;
};

std::pair<unsigned, unsigned> parse_bit_range(const std::string& text) {
    unsigned lo = 0, hi = 0;
    const auto dots = text.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            lo = hi = static_cast<unsigned>(std::stoul(text, &used));
            if (used != text.size()) throw std::invalid_argument(text);
        } else {
            const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
            lo = static_cast<unsigned>(std::stoul(a, &used));
            if (used != a.size()) throw std::invalid_argument(text);
            hi = static_cast<unsigned>(std::stoul(b, &used));
            if (used != b.size()) throw std::invalid_argument(text);
        }
    } catch (const std::exception&) {
        throw Failure{kUsage, "--bits expects B or LO..HI, got '" + text + "'"};
    }
    if (lo < 8 || lo > hi || hi > 48) throw Failure{kUsage, "--bits requires 8 <= LO <= HI <= 48"};
    return {lo, hi};
}

constexpr FermatMethod kAllMethods[] = {FermatMethod::naive, FermatMethod::mod4, FermatMethod::mod6,
                                        FermatMethod::mod8_16, FermatMethod::wheel};

int cmd_bench(const BenchArgs& args, bool timing, std::ostream& out) {
    const Stopwatch clock;
    const auto [lo, hi] = parse_bit_range(args.bits);
    if (args.samples < 1) throw Failure{kUsage, "--samples must be at least 1"};

    std::ostringstream csv;
    csv << "bits,N,method,iterations,found\n";
    json per_bits = json::array();
    for (unsigned bits = lo; bits <= hi; ++bits) {
        std::vector<Semiprime> corpus;
        try {
            corpus = balanced_semiprimes(bits, args.samples, args.seed + bits);
        } catch (const std::exception& e) {
            throw Failure{kUsage, std::to_string(bits) + "-bit corpus: " + e.what()};
        }
        std::sort(corpus.begin(), corpus.end(), [](const Semiprime& a, const Semiprime& b) { return a.n < b.n; });

        std::map<FermatMethod, double> total;
        std::map<FermatMethod, std::size_t> failures;
        for (const auto& sp : corpus) {
            for (const FermatMethod m : kAllMethods) {
                std::uint64_t tests = 0;
                bool found = false;
                try {
                    const auto f = factor_fermat(sp.n, FermatOptions{m, true, nullptr, &tests});
                    found = f.p * f.q == sp.n && f.p == sp.p;
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::BoundExceeded) throw;
                }
                total[m] += static_cast<double>(tests);
                if (!found) ++failures[m];
                csv << bits << ',' << sp.n << ',' << to_string(m) << ',' << tests << ',' << (found ? 1 : 0) << '\n';
            }
        }
        json means = json::object();
        for (const FermatMethod m : kAllMethods) {
            means[std::string(to_string(m))] = total[m] / static_cast<double>(corpus.size());
        }
        json entry{{"bits", bits}, {"count", corpus.size()}, {"mean_iterations", means}};
        entry["ratio_naive_mod4"] = total[FermatMethod::naive] / total[FermatMethod::mod4];
        entry["ratio_naive_mod8_16"] = total[FermatMethod::naive] / total[FermatMethod::mod8_16];
        std::size_t failed = 0;
        for (const auto& [m, c] : failures) failed += c;
        entry["failures"] = failed;
        per_bits.push_back(std::move(entry));
    }
    if (args.csv) write_file(*args.csv, csv.str());
    json report{{"command", "bench"}, {"seed", args.seed}, {"samples", args.samples}, {"bits", per_bits}};
    emit(out, report, clock, timing);
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fermat factorization with residue filters and QUBO encodings", "fermatq"};
    app.require_subcommand(1);
    bool no_timing = false;
    app.add_flag("--no-timing", no_timing, "Omit wall_time_ms from reports");

    FactorArgs fa;
    auto* factor = app.add_subcommand("factor", "Factor N with Fermat's method");
    factor->add_option("N", fa.n, "Number to factor")->required();
    factor->add_option("--method", fa.method, "naive, mod4, mod6, mod8-16 or wheel")
            ->check(CLI::IsMember({"naive", "mod4", "mod6", "mod8-16", "mod8_16", "wheel"}));
    factor->add_flag("--assume-balanced", fa.assume_balanced, "Bound x by assuming p and q have equal bit length");

    EncodeArgs ea;
    auto* encode = app.add_subcommand("encode", "Write the QUBO document for N");
    encode->add_option("N", ea.n, "Odd composite to encode")->required();
    encode->add_option("--approach", ea.approach, "sum-odds or bit-pattern")
            ->required()
            ->check(CLI::IsMember({"sum-odds", "bit-pattern"}));
    encode->add_flag("--assume-balanced", ea.assume_balanced, "Use balanced bounds");
    encode->add_option("--penalty", ea.penalty, "Chain penalty weight (sum-odds, default 4N^2+1)");
    encode->add_option("--pattern-depth", ea.pattern_depth, "Extra fixed low bits (bit-pattern); writes FILE.<k>")
            ->check(CLI::Range(0u, 24u));
    encode->add_option("--out", ea.out, "Output file (default: standard output)");
    encode->add_option("--max-vars", ea.max_vars, "Variable cap")->check(CLI::PositiveNumber);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Solve a QUBO document and recover factors");
    solve->add_option("FILE", sa.file, "QUBO document")->required();
    solve->add_option("--solver", sa.solver, "exact or sa")->check(CLI::IsMember({"exact", "sa"}));
    solve->add_option("--seed", sa.seed, "Annealing seed");
    solve->add_option("--sweeps", sa.sweeps, "Sweeps per restart")->check(CLI::PositiveNumber);
    solve->add_option("--restarts", sa.restarts, "Independent chains")->check(CLI::PositiveNumber);
    solve->add_option("--beta-initial", sa.beta_initial, "Initial inverse temperature");
    solve->add_option("--beta-final", sa.beta_final, "Final inverse temperature");
    solve->add_option("--samples-kept", sa.samples_kept, "Lowest distinct states to keep");
    solve->add_option("--var-limit", sa.var_limit, "Largest model for the exact solver");
    solve->add_option("--samples-out", sa.samples_out, "Write the sample set as JSON");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Compare iteration counts of the five methods");
    bench->add_option("--bits", ba.bits, "Bit size B or range LO..HI");
    bench->add_option("--samples", ba.samples, "Semiprimes per bit size");
    bench->add_option("--seed", ba.seed, "Corpus seed");
    bench->add_option("--csv", ba.csv, "CSV output file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (factor->parsed()) return cmd_factor(fa, !no_timing, out);
        if (encode->parsed()) return cmd_encode(ea, out, err);
        if (solve->parsed()) return cmd_solve(sa, !no_timing, out);
        return cmd_bench(ba, !no_timing, out);
    } catch (const Failure& f) {
        err << "fermatq: " << f.message << '\n';
        return f.code;
    } catch (const Error& e) {
        err << "fermatq: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
}

}  // namespace fermatq::cli
