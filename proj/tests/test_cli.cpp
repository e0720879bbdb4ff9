#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "epdlog/element_io.hpp"

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args) {
    const std::string cmd = std::string(EPDLOG_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    std::array<char, 4096> buf;
    while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

TEST(Cli, Pow) {
    EXPECT_EQ(run("pow --p 3 --g 2,1,0,1,2 --n 3").out, "2,0,0,2,2\n");
    EXPECT_EQ(run("pow --p 3 --g 2,1,0,1,2 --n 0").out, "1,0,0,0,1\n");
    EXPECT_EQ(run("pow --p 3 --g 2,1,0,1 --n 3").code, 1);
    EXPECT_EQ(run("pow --p 4 --g 2,1,0,1,2 --n 3").code, 1);
}

TEST(Cli, Order) {
    EXPECT_EQ(run("order --p 3 --g 1,0,0,0,1").out, "1\n");
    EXPECT_EQ(run("order --p 3 --g 2,1,0,1,2").out, "6\n");
    EXPECT_EQ(run("order --p 3 --g 0,1,0,1,2").code, 2);
}

TEST(Cli, LogExitCodes) {
    CliRun r = run("log --p 3 --g 1,0,0,1,1 --h 1,0,0,2,1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "2\n");
    EXPECT_EQ(run("log --p 3 --g 2,1,0,1,2 --h 1,0,0,0,1").out, "0\n");
    EXPECT_EQ(run("log --p 3 --g 0,1,1,1,1 --h 1,0,0,0,1").code, 2);
    EXPECT_EQ(run("log --p 3 --g 1,0,0,1,1 --h 1,1,0,0,1").code, 3);
    EXPECT_EQ(run("log --p 3 --g 1,0,0,1,1 --h 1,1,0,0").code, 1);
    EXPECT_EQ(run("log --p 3 --g 1,0,0,1,1 --h 1,0,0,2,1 --oracle nope").code, 1);
}

TEST(Cli, StructuredLogRoundTripsThroughElementText) {
    const CliRun r = run("log --p 3 --g 1,0,0,1,1 --h 1,0,0,2,1 --format structured");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["x"], 2);
    EXPECT_EQ(j["x0"], 0);
    EXPECT_EQ(j["s"], 1);
    EXPECT_EQ(j["q"], 2);
    EXPECT_LE(j["zp_dlog_calls"].get<int>(), 2);
    const epdlog::Natural p = epdlog::natural_from_json(j["p"]);
    const auto g = epdlog::parse_ep(j["g"].get<std::string>(), p);
    const auto h = epdlog::parse_ep(j["h"].get<std::string>(), p);
    EXPECT_EQ(epdlog::ep_pow(g, epdlog::natural_from_json(j["x"])), h);
}

TEST(Cli, SampleIsDeterministicAndInvertible) {
    const CliRun a = run("sample --p 3 --seed 11");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, run("sample --p 3 --seed 11").out);
    const auto g = epdlog::parse_ep(a.out.substr(0, a.out.size() - 1), 3);
    EXPECT_TRUE(epdlog::is_invertible(g));
    const CliRun s = run("sample --p 3 --seed 11 --format structured");
    EXPECT_EQ(epdlog::ep_from_json(nlohmann::json::parse(s.out)), g);
    EXPECT_EQ(run("sample --p 9").code, 1);
}

// Marginals of a and v over many seeds are uniform on {1..6}: chi-square
// with 5 degrees of freedom, well inside the 5-sigma band.
TEST(Cli, SampleMarginalsAreUniform) {
    std::map<unsigned long, int> a_counts, v_counts;
    const int draws = 600;
    for (int seed = 0; seed < draws; ++seed) {
        const CliRun r = run("sample --p 7 --seed " + std::to_string(seed));
        const auto g = epdlog::parse_ep(r.out.substr(0, r.out.size() - 1), 7);
        ++a_counts[g.a.get_ui()];
        ++v_counts[g.v.get_ui()];
    }
    for (const auto* counts : {&a_counts, &v_counts}) {
        ASSERT_EQ(counts->size(), 6U);
        const double expected = draws / 6.0;
        const double sigma = std::sqrt(draws * (1.0 / 6) * (5.0 / 6));
        for (const auto& [k, c] : *counts) EXPECT_LT(std::abs(c - expected), 5 * sigma) << k;
    }
}

TEST(Cli, SelftestSmall) {
    const CliRun r = run("selftest --bits 4 --trials 10 --seed 3 --format structured");
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["successes"], 10);
    EXPECT_LE(j["max_calls"].get<int>(), 2);
    EXPECT_FALSE(j.contains("wall_seconds"));
    EXPECT_EQ(run("selftest --bits 4 --trials 10 --seed 3 --format structured --serial").out, r.out);
    const CliRun plain = run("selftest --bits 4 --trials 10 --seed 3");
    EXPECT_NE(plain.out.find("median_ms="), std::string::npos);
    EXPECT_NE(plain.out.find("selftest: PASS"), std::string::npos);
    EXPECT_EQ(run("selftest --bits 2 --trials 10").code, 1);
}

TEST(Cli, StructuredOutputIsByteIdenticalAcrossRuns) {
    for (const char* args : {"selftest --bits 8,16 --trials 20 --seed 9 --format structured",
                             "dh-demo --bits 16 --seed 4 --format structured",
                             "sample --p 1000003 --seed 2 --format structured"}) {
        const CliRun a = run(args);
        const CliRun b = run(args);
        EXPECT_EQ(a.code, 0) << args;
        EXPECT_EQ(a.out, b.out) << args;
    }
}

TEST(Cli, DhDemo) {
    const CliRun r = run("dh-demo --bits 4 --seed 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("SECRET RECOVERED"), std::string::npos);
    const CliRun s = run("dh-demo --bits 32 --seed 1 --format structured");
    ASSERT_EQ(s.code, 0);
    const auto j = nlohmann::json::parse(s.out);
    EXPECT_TRUE(j["recovered"].get<bool>());
    EXPECT_EQ(j["shared_secret"], j["eavesdropper_secret"]);
    const epdlog::Natural p = epdlog::natural_from_json(j["p"]);
    const auto g = epdlog::parse_ep(j["g"].get<std::string>(), p);
    EXPECT_EQ(epdlog::ep_pow(g, epdlog::natural_from_json(j["recovered_exponent"])),
              epdlog::parse_ep(j["alice_public"].get<std::string>(), p));
}

TEST(Cli, BenchReportsMatchingResults) {
    const CliRun r = run("bench --bits 8 --trials 20 --format structured");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["results_match"].get<bool>());
}

TEST(Cli, UnknownCommandIsInvalidInput) {
    EXPECT_EQ(run("frobnicate").code, 1);
    EXPECT_EQ(run("").code, 1);
}

}  // namespace
