#include "epdlog/kernels.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <random>

#include "epdlog/attack.hpp"
#include "epdlog/errors.hpp"

namespace epdlog {
namespace {

Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

std::uint64_t ring_size(const Natural& p) {
    if (p < 2 || p > 1000) throw InvalidInput("sweep: p must be a small prime");
    const std::uint64_t q = p.get_ui();
    return q * q * q * q * q;
}

// Everything the sweep verifies about one unit g.
SweepReport check_unit(const EpElement& g, const Factorization& fact) {
    SweepReport r;
    r.units = 1;
    const EpElement one = EpElement::identity(g.p);

    std::vector<EpElement> powers{one};
    for (EpElement e = g; e != one; e = ep_mul(e, g)) powers.push_back(e);
    const Natural order(static_cast<unsigned long>(powers.size()));

    const EbarElement g_bar = bar(g);
    const EbarElement one_bar = EbarElement::identity(g.p);
    unsigned long bar_order = 1;
    for (EbarElement e = g_bar; e != one_bar; e = ebar_mul(e, g_bar)) ++bar_order;

    Natural n;
    try {
        n = ebar_order(g_bar, fact);
        if (n != bar_order) ++r.order_mismatches;
        if (ep_order(g, fact) != order) ++r.order_mismatches;
    } catch (const Error&) {
        ++r.order_mismatches;
        return r;
    }

    const int special = g.a == g.v && (g.b != 0 || g.c != 0) ? 1 : 0;
    const int lifted = ep_pow(g, n).u != 0 ? 1 : 0;

    for (std::size_t x = 0; x < powers.size(); ++x) {
        ++r.pairs;
        ++r.branch_pairs[special][lifted];
        const Natural expected = brute_force_log(g, powers[x]);
        try {
            DlogOracle oracle = make_oracle(OracleKind::pohlig_hellman, fact);
            const AttackTranscript t = ep_log(g, powers[x], oracle, fact);
            r.max_calls = std::max(r.max_calls, t.zp_dlog_calls);
            if (t.x != expected || expected != x) ++r.log_mismatches;
        } catch (const Error&) {
            ++r.log_mismatches;
        }
    }
    return r;
}

}  // namespace

bool TrialOutcome::same_result(const TrialOutcome& other) const {
    return index == other.index && g == other.g && expected_x == other.expected_x &&
           recovered_x == other.recovered_x && zp_dlog_calls == other.zp_dlog_calls &&
           recovered == other.recovered && error == other.error;
}

TrialOutcome run_trial(const TrialConfig& config, std::uint64_t index) {
    TrialOutcome out;
    out.index = index;
    const auto start = std::chrono::steady_clock::now();
    try {
        Rng rng = trial_rng(config.seed, index);
        out.g = sample_invertible(config.p, rng);
        const Natural order = ep_order(out.g, config.p_minus_1);
        out.expected_x = rng.below(order);
        const EpElement h = ep_pow(out.g, out.expected_x);
        DlogOracle oracle = make_oracle(config.oracle, config.p_minus_1, rng.next());
        const AttackTranscript t = ep_log(out.g, h, oracle, config.p_minus_1);
        out.recovered_x = t.x;
        out.zp_dlog_calls = t.zp_dlog_calls;
        out.recovered = t.x == out.expected_x;
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

std::vector<TrialOutcome> run_trials_serial(const TrialConfig& config, std::uint64_t count) {
    std::vector<TrialOutcome> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(run_trial(config, i));
    return out;
}

std::vector<TrialOutcome> run_trials_parallel(const TrialConfig& config, std::uint64_t count) {
    std::vector<TrialOutcome> out(count);
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) {
        out[i] = run_trial(config, static_cast<std::uint64_t>(i));
    }
    return out;
}

TrialSummary summarize(const std::vector<TrialOutcome>& outcomes) {
    TrialSummary s;
    s.trials = outcomes.size();
    std::vector<double> times;
    times.reserve(outcomes.size());
    for (const auto& o : outcomes) {
        if (o.recovered) ++s.successes;
        s.max_calls = std::max(s.max_calls, o.zp_dlog_calls);
        if (o.zp_dlog_calls == 2) ++s.two_call_trials;
        times.push_back(o.seconds);
        s.total_seconds += o.seconds;
    }
    if (!times.empty()) {
        auto mid = times.begin() + times.size() / 2;
        std::nth_element(times.begin(), mid, times.end());
        s.median_seconds = *mid;
    }
    return s;
}

bool SweepReport::operator==(const SweepReport& other) const {
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (branch_pairs[i][j] != other.branch_pairs[i][j]) return false;
        }
    }
    return units == other.units && pairs == other.pairs && order_mismatches == other.order_mismatches &&
           log_mismatches == other.log_mismatches && max_calls == other.max_calls;
}

void SweepReport::merge(const SweepReport& other) {
    units += other.units;
    pairs += other.pairs;
    order_mismatches += other.order_mismatches;
    log_mismatches += other.log_mismatches;
    max_calls = std::max(max_calls, other.max_calls);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) branch_pairs[i][j] += other.branch_pairs[i][j];
    }
}

EpElement element_at(const Natural& p, std::uint64_t index) {
    const std::uint64_t q = p.get_ui();
    std::uint64_t coeff[5];
    for (int k = 4; k >= 0; --k) {
        coeff[k] = index % q;
        index /= q;
    }
    return EpElement::make(p, Natural(coeff[0]), Natural(coeff[1]), Natural(coeff[2]), Natural(coeff[3]),
                           Natural(coeff[4]));
}

SweepReport sweep_ring_serial(const Natural& p) {
    const std::uint64_t total = ring_size(p);
    const Factorization fact = factorize(Natural(p - 1));
    SweepReport report;
    for (std::uint64_t i = 0; i < total; ++i) {
        const EpElement g = element_at(p, i);
        if (is_invertible(g)) report.merge(check_unit(g, fact));
    }
    return report;
}

SweepReport sweep_ring_parallel(const Natural& p) {
    const auto total = static_cast<std::int64_t>(ring_size(p));
    const Factorization fact = factorize(Natural(p - 1));
    SweepReport report;
#pragma omp parallel
    {
        SweepReport local;
#pragma omp for schedule(dynamic, 16) nowait
        for (std::int64_t i = 0; i < total; ++i) {
            const EpElement g = element_at(p, static_cast<std::uint64_t>(i));
            if (is_invertible(g)) local.merge(check_unit(g, fact));
        }
#pragma omp critical
        report.merge(local);
    }
    return report;
}

}  // namespace epdlog
