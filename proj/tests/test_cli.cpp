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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "doctest.h"
#include "fermatq/integers.hpp"
#include "primes.hpp"

namespace fermatq::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

json report(const Result& r) { return json::parse(r.out); }

class TempDir {
  public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() / ("fermatq_cli_test_" + std::to_string(::getpid()) + "_" +
                                             std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

  private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

TEST_CASE("factor the 24-bit instance") {
    const auto r = invoke({"factor", "8689739", "--method", "wheel", "--assume-balanced"});
    CHECK(r.code == kSuccess);
    const auto j = report(r);
    CHECK(j["found"] == true);
    CHECK(j["result"]["p"] == "3203");
    CHECK(j["result"]["q"] == "2713");
    CHECK(j["result"]["x"] == "2958");
    CHECK(j["result"]["y"] == "245");
    CHECK(j.contains("wall_time_ms"));
}

TEST_CASE("factor small cases") {
    auto j = report(invoke({"--no-timing", "factor", "9"}));
    CHECK(j["result"]["p"] == "3");
    CHECK(j["result"]["q"] == "3");
    CHECK_FALSE(j.contains("wall_time_ms"));

    j = report(invoke({"factor", "36"}));
    CHECK(j["stripped"] == json::array({"2", "2"}));
    CHECK(j["result"]["p"] == "3");

    // 8051 = 83·97: both factors are below the stripping limit.
    auto r = invoke({"factor", "8051", "--method", "naive"});
    CHECK(r.code == kSuccess);
    j = report(r);
    CHECK(j["stripped"] == json::array({"83", "97"}));
    CHECK(j["cofactor"] == "1");
    CHECK(j["result"].is_null());

    r = invoke({"factor", "15"});
    CHECK(r.code == kSuccess);
    CHECK(report(r)["stripped"] == json::array({"3", "5"}));

    // 3·101·103: the 3 is stripped and Fermat runs on 10403 = 102² − 1².
    j = report(invoke({"factor", "31209", "--method", "naive"}));
    CHECK(j["stripped"] == json::array({"3"}));
    CHECK(j["cofactor"] == "10403");
    CHECK(j["result"]["p"] == "103");
    CHECK(j["result"]["q"] == "101");
    CHECK(j["iterations"] == 1);
    // 101·10007 = 3181² − 3080² with x_min = 1006.
    j = report(invoke({"factor", "1010707", "--method", "mod4"}));
    CHECK(j["stripped"].empty());
    CHECK(j["result"]["p"] == "10007");
    CHECK(j["iterations"] == (5054 - 1006) / 2 + 1);
}

TEST_CASE("factor failures") {
    auto r = invoke({"factor", "10007"});
    CHECK(r.code == kNotFactored);
    CHECK(report(r)["found"] == false);

    // 101·10007 is far from balanced.
    r = invoke({"factor", "1010707", "--method", "mod8-16", "--assume-balanced"});
    CHECK(r.code == kNotFactored);
    const auto j = report(r);
    CHECK(j["result"].is_null());
    CHECK(j["iterations"].get<std::uint64_t>() > 0);

    CHECK(invoke({"factor", "12x"}).code == kUsage);
    CHECK(invoke({"factor", "1"}).code == kUsage);
    CHECK(invoke({"factor", "35", "--method", "mod5"}).code == kUsage);
    CHECK(invoke({"factor"}).code == kUsage);
    CHECK(invoke({}).code == kUsage);
    CHECK(invoke({"frobnicate"}).code == kUsage);
    const auto help = invoke({"--help"});
    CHECK(help.code == kSuccess);
    CHECK(help.out.find("factor") != std::string::npos);
}

TEST_CASE("encode writes documents") {
    auto r = invoke({"encode", "15", "--approach", "sum-odds"});
    REQUIRE(r.code == kSuccess);
    auto doc = json::parse(r.out);
    CHECK(doc["metadata"]["n_x"] == "0");
    CHECK(doc["metadata"]["n_y"] == "1");
    CHECK(r.err.find("num_vars=1") != std::string::npos);

    TempDir dir;
    const auto path = dir.file("big.json");
    r = invoke({"encode", "8689739", "--approach", "bit-pattern", "--assume-balanced", "--out", path});
    REQUIRE(r.code == kSuccess);
    CHECK(r.out.empty());
    CHECK(r.err.find("num_vars=39") != std::string::npos);
    doc = json::parse(slurp(path));
    CHECK(doc["metadata"]["approach"] == "bit-pattern");
    CHECK(doc["metadata"]["N"] == "8689739");
    CHECK(doc["num_vars"] == 39);

    r = invoke({"encode", "493", "--approach", "sum-odds", "--penalty", "77"});
    CHECK(json::parse(r.out)["metadata"]["penalty_weight"] == "77");
}

TEST_CASE("encode errors") {
    CHECK(invoke({"encode", "16", "--approach", "sum-odds"}).code == kUsage);
    CHECK(invoke({"encode", "7", "--approach", "bit-pattern"}).code == kUsage);
    CHECK(invoke({"encode", "15"}).code == kUsage);
    CHECK(invoke({"encode", "15", "--approach", "multiply"}).code == kUsage);
    CHECK(invoke({"encode", "8689739", "--approach", "bit-pattern", "--pattern-depth", "2"}).code == kUsage);
    CHECK(invoke({"encode", "35", "--approach", "sum-odds", "--pattern-depth", "1", "--out", "x"}).code == kUsage);
    const auto r = invoke({"encode", "100003", "--approach", "sum-odds"});
    CHECK(r.code == kResourceCap);
    CHECK(r.err.find("33015") != std::string::npos);
    CHECK(r.err.find("4096") != std::string::npos);
    CHECK(invoke({"encode", "8689739", "--approach", "bit-pattern", "--max-vars", "20"}).code == kResourceCap);
}

TEST_CASE("encode with pattern depth") {
    TempDir dir;
    const auto base = dir.file("fam.json");
    const auto r = invoke({"encode", "8689739", "--approach", "bit-pattern", "--assume-balanced", "--pattern-depth",
                           "2", "--out", base});
    REQUIRE(r.code == kSuccess);
    std::size_t count = 0;
    while (fs::exists(base + "." + std::to_string(count))) ++count;
    CHECK(count >= 1);
    CHECK(count <= 4);
    bool found = false;
    for (std::size_t k = 0; k < count; ++k) {
        const auto doc = json::parse(slurp(base + "." + std::to_string(k)));
        CHECK(doc["metadata"]["subproblem"] == std::to_string(k));
        CHECK(doc["num_vars"] == 35);
        const auto s = invoke({"solve", base + "." + std::to_string(k), "--solver", "sa", "--seed", "1",
                               "--sweeps", "200", "--restarts", "2000", "--beta-initial", "1e-14", "--beta-final",
                               "0.1", "--samples-kept", "65536"});
        CHECK((s.code == kSuccess || s.code == kNotFactored));
        if (s.code == kSuccess) {
            found = true;
            CHECK(report(s)["result"]["p"] == "3203");
        }
    }
    MESSAGE("depth-2 family of " << count << " sub-problems, factored: " << found);
}

TEST_CASE("solve") {
    TempDir dir;
    const auto small = dir.file("small.json");
    REQUIRE(invoke({"encode", "493", "--approach", "bit-pattern", "--assume-balanced", "--out", small}).code ==
            kSuccess);
    auto r = invoke({"solve", small, "--solver", "exact"});
    CHECK(r.code == kSuccess);
    auto j = report(r);
    CHECK(j["result"]["p"] == "29");
    CHECK(j["result"]["q"] == "17");
    CHECK(j["best_energy"] == "0");

    r = invoke({"solve", small, "--solver", "sa", "--seed", "5"});
    CHECK(r.code == kSuccess);
    j = report(r);
    CHECK(j["seed"] == 5);
    CHECK(j["result"]["p"] == "29");

    const auto odds = dir.file("odds.json");
    REQUIRE(invoke({"encode", "1147", "--approach", "sum-odds", "--assume-balanced", "--out", odds}).code ==
            kSuccess);
    r = invoke({"solve", odds, "--solver", "exact"});
    CHECK(r.code == kSuccess);
    CHECK(report(r)["result"]["p"] == "37");
    CHECK(report(r)["result"]["q"] == "31");

    const auto big = dir.file("big.json");
    REQUIRE(invoke({"encode", "8689739", "--approach", "bit-pattern", "--assume-balanced", "--out", big}).code ==
            kSuccess);
    CHECK(invoke({"solve", big, "--solver", "exact"}).code == kResourceCap);

    // A short anneal reaches energy 0 but not the one square pair.
    r = invoke({"solve", big, "--sweeps", "100", "--restarts", "5"});
    CHECK(r.code == kNotFactored);
    CHECK(report(r)["result"].is_null());
}

TEST_CASE("solve input errors") {
    TempDir dir;
    CHECK(invoke({"solve", dir.file("missing.json")}).code == kParse);

    const auto garbage = dir.file("garbage.json");
    std::ofstream(garbage) << "{ not json";
    const auto r = invoke({"solve", garbage});
    CHECK(r.code == kParse);
    CHECK(r.err.find("line 1") != std::string::npos);

    const auto bare = dir.file("bare.json");
    std::ofstream(bare) << R"({"version":1,"num_vars":1,"offset":"0"})";
    CHECK(invoke({"solve", bare}).code == kParse);

    const auto path = dir.file("mismatch.json");
    REQUIRE(invoke({"encode", "493", "--approach", "bit-pattern", "--assume-balanced", "--out", path}).code ==
            kSuccess);
    auto doc = json::parse(slurp(path));
    doc["metadata"]["y_free_bits"] = json::array();
    std::ofstream(path) << doc.dump();
    CHECK(invoke({"solve", path}).code == kParse);

    CHECK(invoke({"solve", path, "--solver", "qpu"}).code == kUsage);
    REQUIRE(invoke({"encode", "493", "--approach", "bit-pattern", "--assume-balanced", "--out", path}).code ==
            kSuccess);
    CHECK(invoke({"solve", path, "--beta-initial", "2", "--beta-final", "1"}).code == kUsage);
}

TEST_CASE("solve is deterministic") {
    TempDir dir;
    const auto path = dir.file("m.json");
    REQUIRE(invoke({"encode", "1022117", "--approach", "bit-pattern", "--assume-balanced", "--out", path}).code ==
            kSuccess);
    const std::vector<std::string> args{"--no-timing", "solve", path, "--seed", "42", "--sweeps", "100",
                                        "--restarts", "50", "--samples-out"};
    auto a_args = args, b_args = args;
    a_args.push_back(dir.file("a.json"));
    b_args.push_back(dir.file("b.json"));
    const auto a = invoke(a_args);
    const auto b = invoke(b_args);
    CHECK(a.out == b.out);
    CHECK(slurp(dir.file("a.json")) == slurp(dir.file("b.json")));
    CHECK_FALSE(slurp(dir.file("a.json")).empty());
}

TEST_CASE("bench") {
    TempDir dir;
    const auto csv_a = dir.file("a.csv"), csv_b = dir.file("b.csv");
    const auto a = invoke({"--no-timing", "bench", "--bits", "12..14", "--samples", "6", "--seed", "3", "--csv",
                           csv_a});
    const auto b = invoke({"--no-timing", "bench", "--bits", "12..14", "--samples", "6", "--seed", "3", "--csv",
                           csv_b});
    REQUIRE(a.code == kSuccess);
    CHECK(a.out == b.out);
    const std::string text = slurp(csv_a);
    CHECK(text == slurp(csv_b));

    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "bits,N,method,iterations,found");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        const auto first = line.find(','), second = line.find(',', first + 1);
        const BigUint n = BigUint::from_string(line.substr(first + 1, second - first - 1));
        CHECK_FALSE(is_perfect_square(n));
        CHECK(line.back() == '1');
    }
    CHECK(rows == 3 * 6 * 5);

    const auto j = report(a);
    REQUIRE(j["bits"].size() == 3);
    CHECK(j["bits"][0]["bits"] == 12);
    CHECK(j["bits"][0]["ratio_naive_mod8_16"].get<double>() >= 1.0);

    CHECK(invoke({"bench", "--bits", "7..9"}).code == kUsage);
    CHECK(invoke({"bench", "--bits", "20..18"}).code == kUsage);
    CHECK(invoke({"bench", "--bits", "49"}).code == kUsage);
    CHECK(invoke({"bench", "--bits", "x"}).code == kUsage);
    CHECK(invoke({"bench", "--samples", "0"}).code == kUsage);
}

TEST_CASE("Miller-Rabin") {
    CHECK_FALSE(is_probable_prime(BigUint(1)));
    CHECK(is_probable_prime(BigUint(2)));
    CHECK(is_probable_prime(BigUint(37)));
    CHECK_FALSE(is_probable_prime(BigUint(561)));          // Carmichael
    CHECK_FALSE(is_probable_prime(BigUint(3215031751ull)));  // strong pseudoprime to bases 2, 3, 5, 7
    CHECK(is_probable_prime(BigUint((1ull << 61) - 1)));
    for (std::uint64_t n = 0; n < 5000; ++n) {
        bool prime = n >= 2;
        for (std::uint64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
        CHECK(is_probable_prime(BigUint(n)) == prime);
    }
}

TEST_CASE("balanced semiprime generator") {
    const auto a = balanced_semiprimes(20, 30, 9);
    const auto b = balanced_semiprimes(20, 30, 9);
    REQUIRE(a.size() == 30);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].n == b[i].n);
        CHECK(bitlen(a[i].n) == 20);
        CHECK(bitlen(a[i].p) == 10);
        CHECK(bitlen(a[i].q) == 10);
        CHECK(a[i].p > a[i].q);
        CHECK(a[i].p * a[i].q == a[i].n);
        CHECK(is_probable_prime(a[i].p));
        for (std::size_t k = 0; k < i; ++k) CHECK(a[k].n != a[i].n);
    }
    CHECK(balanced_semiprimes(8, 1, 0).front().n == BigUint(143));
    CHECK_THROWS(balanced_semiprimes(8, 2, 0));
    CHECK_THROWS(balanced_semiprimes(50, 1, 0));
}

}  // namespace
}  // namespace fermatq::cli
