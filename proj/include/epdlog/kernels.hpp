#pragma once

// Batch drivers for the E_p attack: randomized trials and exhaustive
// sweeps over small rings. Each batch exists twice, a plain serial loop
// kept as the reference and an OpenMP version that must produce the same
// results; the tests compare them and bench/ times them.

#include <cstdint>
#include <string>
#include <vector>

#include "epdlog/bergman.hpp"
#include "epdlog/modmath.hpp"
#include "epdlog/zp_dlog.hpp"

namespace epdlog {

struct TrialConfig {
    Natural p;
    Factorization p_minus_1;
    std::uint64_t seed = 0;
    OracleKind oracle = OracleKind::pohlig_hellman;
};

struct TrialOutcome {
    std::uint64_t index = 0;
    EpElement g;
    Natural expected_x;
    Natural recovered_x;
    std::uint64_t zp_dlog_calls = 0;
    bool recovered = false;
    std::string error;  // set when the attack threw
    double seconds = 0;

    // Everything except the timing.
    bool same_result(const TrialOutcome& other) const;
};

// One trial: sample an invertible g, x uniform below ord(g), attack g^x.
// Depends only on (config, index).
TrialOutcome run_trial(const TrialConfig& config, std::uint64_t index);

std::vector<TrialOutcome> run_trials_serial(const TrialConfig& config, std::uint64_t count);
std::vector<TrialOutcome> run_trials_parallel(const TrialConfig& config, std::uint64_t count);

struct TrialSummary {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t max_calls = 0;
    std::uint64_t two_call_trials = 0;
    double median_seconds = 0;
    double total_seconds = 0;
};

TrialSummary summarize(const std::vector<TrialOutcome>& outcomes);

// Exhaustive check of a whole ring E_p (p small): for every unit g the
// closed-form orders of g and bar(g) are compared with brute-force orders,
// and ep_log(g, g^x) with brute_force_log for every x < ord(g).
struct SweepReport {
    std::uint64_t units = 0;
    std::uint64_t pairs = 0;
    std::uint64_t order_mismatches = 0;
    std::uint64_t log_mismatches = 0;
    std::uint64_t max_calls = 0;
    // [a == v with (b, c) != (0, 0)][s != 0]
    std::uint64_t branch_pairs[2][2] = {{0, 0}, {0, 0}};

    bool operator==(const SweepReport& other) const;
    void merge(const SweepReport& other);
};

SweepReport sweep_ring_serial(const Natural& p);
SweepReport sweep_ring_parallel(const Natural& p);

// The index-th element of E_p in lexicographic (a, b, c, u, v) order,
// for 0 <= index < p^5.
EpElement element_at(const Natural& p, std::uint64_t index);

}  // namespace epdlog
