// Command-line front end: sample/pow/order/log on single elements, the
// randomized self-test, a Diffie-Hellman break demo and a timing run.
//
// Exit codes: 0 success, 1 invalid input, 2 non-invertible element,
// 3 no solution / inconsistency / failed self-test.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "epdlog/attack.hpp"
#include "epdlog/bergman.hpp"
#include "epdlog/element_io.hpp"
#include "epdlog/errors.hpp"
#include "epdlog/kernels.hpp"
#include "epdlog/modmath.hpp"
#include "epdlog/zp_dlog.hpp"

using namespace epdlog;
using nlohmann::json;

namespace {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kNotInvertible = 2, kNoSolution = 3 };

// Bit sizes above this get a prime with smooth p - 1; a random p - 1 of that
// size can hide a prime factor too large for the generic Z_p solvers.
constexpr unsigned kLargestRandomPrimeBits = 40;
constexpr unsigned kSmoothnessBound = 1U << 16;

struct Options {
    std::string p;
    std::string g;
    std::string h;
    std::string n = "1";
    std::string bits;
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    std::string format = "plain";
    std::string oracle = "ph";
    bool big_tiers = false;
    bool timings = false;
    bool serial = false;
};

bool structured(const Options& o) { return o.format == "structured"; }

Natural require_prime(const std::string& text) {
    if (text.empty()) throw InvalidInput("--p is required");
    Natural p = parse_natural(text);
    if (!is_prime(p)) throw InvalidInput("p = " + text + " is not prime");
    return p;
}

OracleKind require_oracle(const std::string& text) {
    auto kind = parse_oracle_kind(text);
    if (!kind) throw InvalidInput("unknown oracle '" + text + "' (expected bsgs, ph or rho)");
    return *kind;
}

std::vector<unsigned> parse_bits(const std::string& text) {
    std::vector<unsigned> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const Natural b = parse_natural(item);
        if (b < 3 || b > 4096) throw InvalidInput("bit size " + item + " is outside [3, 4096]");
        out.push_back(static_cast<unsigned>(b.get_ui()));
    }
    if (out.empty()) throw InvalidInput("--bits needs at least one size");
    return out;
}

Rng tier_rng(std::uint64_t seed, unsigned bits) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), bits};
    return Rng(seq);
}

// A prime of the requested size and the factorization of p - 1.
std::pair<Natural, Factorization> tier_prime(unsigned bits, Rng& rng) {
    if (bits > kLargestRandomPrimeBits) {
        SmoothPrime sp = random_smooth_prime(bits, kSmoothnessBound, rng);
        return {sp.p, sp.p_minus_1};
    }
    Natural p = random_prime(bits, rng);
    return {p, factorize(Natural(p - 1))};
}

void emit(const json& record) { std::cout << record.dump() << '\n'; }

int cmd_sample(const Options& o) {
    const Natural p = require_prime(o.p);
    Rng rng(o.seed);
    const EpElement g = sample_invertible(p, rng);
    if (structured(o)) {
        emit(to_json(g));
    } else {
        std::cout << to_text(g) << '\n';
    }
    return kOk;
}

int cmd_pow(const Options& o) {
    const Natural p = require_prime(o.p);
    const EpElement g = parse_ep(o.g, p);
    const Natural n = parse_natural(o.n);
    const EpElement r = ep_pow(g, n);
    if (structured(o)) {
        emit({{"p", natural_to_json(p)}, {"g", to_text(g)}, {"n", natural_to_json(n)}, {"result", to_text(r)}});
    } else {
        std::cout << to_text(r) << '\n';
    }
    return kOk;
}

int cmd_order(const Options& o) {
    const Natural p = require_prime(o.p);
    const EpElement g = parse_ep(o.g, p);
    const Natural order = ep_order(g, factorize(Natural(p - 1)));
    if (structured(o)) {
        emit({{"p", natural_to_json(p)}, {"g", to_text(g)}, {"order", natural_to_json(order)}});
    } else {
        std::cout << order.get_str() << '\n';
    }
    return kOk;
}

int cmd_log(const Options& o) {
    const Natural p = require_prime(o.p);
    const EpElement g = parse_ep(o.g, p);
    const EpElement h = parse_ep(o.h, p);
    const Factorization fact = factorize(Natural(p - 1));
    DlogOracle oracle = make_oracle(require_oracle(o.oracle), fact, o.seed);
    const AttackTranscript t = ep_log(g, h, oracle, fact);
    if (structured(o)) {
        json record = to_json(t);
        record["p"] = natural_to_json(p);
        record["g"] = to_text(g);
        record["h"] = to_text(h);
        emit(record);
    } else {
        std::cout << t.x.get_str() << '\n';
    }
    return kOk;
}

int cmd_selftest(const Options& o) {
    std::vector<unsigned> bits = parse_bits(o.bits.empty() ? "4,8,16,32" : o.bits);
    if (o.big_tiers) {
        bits.push_back(64);
        bits.push_back(128);
    }
    if (o.trials == 0) throw InvalidInput("--trials must be positive");
    const OracleKind kind = require_oracle(o.oracle);

    bool all_ok = true;
    for (unsigned b : bits) {
        Rng rng = tier_rng(o.seed, b);
        auto [p, fact] = tier_prime(b, rng);
        const TrialConfig config{p, fact, rng.next(), kind};
        const auto start = std::chrono::steady_clock::now();
        const auto outcomes = o.serial ? run_trials_serial(config, o.trials) : run_trials_parallel(config, o.trials);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const TrialSummary s = summarize(outcomes);
        const bool ok = s.successes == s.trials && s.max_calls <= 2;
        all_ok = all_ok && ok;

        if (structured(o)) {
            json record{{"bits", b},
                        {"p", natural_to_json(p)},
                        {"smooth_p_minus_1", b > kLargestRandomPrimeBits},
                        {"oracle", o.oracle},
                        {"trials", s.trials},
                        {"successes", s.successes},
                        {"max_calls", s.max_calls},
                        {"two_call_trials", s.two_call_trials},
                        {"ok", ok}};
            if (o.timings) {
                record["median_attack_seconds"] = s.median_seconds;
                record["wall_seconds"] = wall;
            }
            emit(record);
        } else {
            std::cout << "bits=" << b << " p=" << p.get_str() << (b > kLargestRandomPrimeBits ? " (smooth p-1)" : "")
                      << " success=" << s.successes << "/" << s.trials << " max_calls=" << s.max_calls
                      << " two_call_trials=" << s.two_call_trials << std::fixed << std::setprecision(3)
                      << " median_ms=" << s.median_seconds * 1e3 << " wall_s=" << wall << '\n';
            std::cout.unsetf(std::ios::floatfield);
        }
        for (const auto& t : outcomes) {
            if (t.recovered && t.zp_dlog_calls <= 2) continue;
            std::cerr << "FAIL bits=" << b << " seed=" << o.seed << " p=" << p.get_str() << " trial=" << t.index
                      << " g=" << to_text(t.g) << " x=" << t.expected_x.get_str()
                      << " got=" << t.recovered_x.get_str() << " calls=" << t.zp_dlog_calls
                      << (t.error.empty() ? "" : " error=" + t.error) << '\n';
        }
    }
    if (!structured(o)) std::cout << (all_ok ? "selftest: PASS" : "selftest: FAIL") << '\n';
    return all_ok ? kOk : kNoSolution;
}

int cmd_dh_demo(const Options& o) {
    const std::vector<unsigned> bits = parse_bits(o.bits.empty() ? "16" : o.bits);
    if (bits.size() != 1) throw InvalidInput("dh-demo takes a single --bits value");
    Rng rng = tier_rng(o.seed, bits.front());
    auto [p, fact] = tier_prime(bits.front(), rng);

    const EpElement g = sample_invertible(p, rng);
    const Natural order = ep_order(g, fact);
    const Natural alice_key = rng.below(order);
    const Natural bob_key = rng.below(order);
    const EpElement alice_public = ep_pow(g, alice_key);
    const EpElement bob_public = ep_pow(g, bob_key);
    const EpElement alice_secret = ep_pow(bob_public, alice_key);
    const EpElement bob_secret = ep_pow(alice_public, bob_key);

    // The eavesdropper sees p, g and both public values.
    DlogOracle oracle = make_oracle(require_oracle(o.oracle), fact, rng.next());
    const AttackTranscript t = ep_log(g, alice_public, oracle, fact);
    const EpElement eve_secret = ep_pow(bob_public, t.x);

    const bool agree = alice_secret == bob_secret;
    const bool recovered = agree && eve_secret == alice_secret && ep_pow(g, t.x) == alice_public;
    if (structured(o)) {
        emit({{"p", natural_to_json(p)},
              {"g", to_text(g)},
              {"alice_public", to_text(alice_public)},
              {"bob_public", to_text(bob_public)},
              {"shared_secret", to_text(alice_secret)},
              {"eavesdropper_secret", to_text(eve_secret)},
              {"recovered_exponent", natural_to_json(t.x)},
              {"zp_dlog_calls", t.zp_dlog_calls},
              {"recovered", recovered}});
    } else {
        std::cout << "p                   = " << p.get_str() << '\n'
                  << "g                   = " << to_text(g) << "  (order " << order.get_str() << ")\n"
                  << "alice public        = " << to_text(alice_public) << '\n'
                  << "bob public          = " << to_text(bob_public) << '\n'
                  << "shared secret       = " << to_text(alice_secret) << '\n'
                  << "eavesdropper secret = " << to_text(eve_secret) << '\n'
                  << "recovered exponent  = " << t.x.get_str() << " (" << t.zp_dlog_calls << " Z_p logs)\n"
                  << (recovered ? "SECRET RECOVERED" : "MISMATCH") << '\n';
    }
    return recovered ? kOk : kNoSolution;
}

int cmd_bench(const Options& o) {
    const std::vector<unsigned> bits = parse_bits(o.bits.empty() ? "16,32" : o.bits);
    const std::uint64_t trials = o.trials == 0 ? 200 : o.trials;
    const OracleKind kind = require_oracle(o.oracle);
    auto seconds_of = [](auto&& fn) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    for (unsigned b : bits) {
        Rng rng = tier_rng(o.seed, b);
        auto [p, fact] = tier_prime(b, rng);
        const TrialConfig config{p, fact, rng.next(), kind};
        std::vector<TrialOutcome> serial, parallel;
        const double ts = seconds_of([&] { serial = run_trials_serial(config, trials); });
        const double tp = seconds_of([&] { parallel = run_trials_parallel(config, trials); });
        bool same = serial.size() == parallel.size();
        for (std::size_t i = 0; same && i < serial.size(); ++i) same = serial[i].same_result(parallel[i]);
        if (structured(o)) {
            emit({{"bits", b},
                  {"trials", trials},
                  {"oracle", o.oracle},
                  {"serial_seconds", ts},
                  {"parallel_seconds", tp},
                  {"results_match", same}});
        } else {
            std::cout << std::fixed << std::setprecision(3) << "bits=" << b << " trials=" << trials
                      << " oracle=" << o.oracle << " serial_s=" << ts << " parallel_s=" << tp
                      << " speedup=" << (tp > 0 ? ts / tp : 0.0) << " results_match=" << (same ? "yes" : "no")
                      << '\n';
        }
        if (!same) return kNoSolution;
    }
    return kOk;
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"plain", "structured"}));
    cmd->add_option("--seed", o.seed, "Random seed");
}

void add_oracle(CLI::App* cmd, Options& o) {
    cmd->add_option("--oracle", o.oracle, "Z_p discrete-log solver")->check(CLI::IsMember({"bsgs", "ph", "rho"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete logarithms in Bergman's ring E_p"};
    app.require_subcommand(1);
    Options o;

    auto* sample = app.add_subcommand("sample", "Print a uniformly random invertible element");
    sample->add_option("--p", o.p, "Prime p")->required();
    add_common(sample, o);

    auto* pow = app.add_subcommand("pow", "Print g^n");
    pow->add_option("--p", o.p, "Prime p")->required();
    pow->add_option("--g", o.g, "Element a,b,c,u,v")->required();
    pow->add_option("--n", o.n, "Exponent");
    add_common(pow, o);

    auto* order = app.add_subcommand("order", "Print the multiplicative order of g");
    order->add_option("--p", o.p, "Prime p")->required();
    order->add_option("--g", o.g, "Element a,b,c,u,v")->required();
    add_common(order, o);

    auto* log = app.add_subcommand("log", "Recover x from g and h = g^x");
    // --h would otherwise collide with -h.
    log->set_help_flag("--help", "Print this help message and exit");
    log->add_option("--p", o.p, "Prime p")->required();
    log->add_option("--g", o.g, "Base a,b,c,u,v")->required();
    log->add_option("--h", o.h, "Target a,b,c,u,v")->required();
    add_common(log, o);
    add_oracle(log, o);

    auto* selftest = app.add_subcommand("selftest", "Randomized attack trials over random primes");
    selftest->add_option("--bits", o.bits, "Comma-separated prime sizes (default 4,8,16,32)");
    selftest->add_option("--trials", o.trials, "Trials per prime size")->default_val(1000);
    selftest->add_flag("--big-tiers", o.big_tiers, "Also run 64- and 128-bit primes with smooth p-1");
    selftest->add_flag("--timings", o.timings, "Include wall-clock fields in structured output");
    selftest->add_flag("--serial", o.serial, "Use the serial reference driver");
    add_common(selftest, o);
    add_oracle(selftest, o);

    auto* dh = app.add_subcommand("dh-demo", "Break a Diffie-Hellman exchange over E_p^*");
    dh->add_option("--bits", o.bits, "Prime size (default 16)");
    add_common(dh, o);
    add_oracle(dh, o);

    auto* bench = app.add_subcommand("bench", "Time the serial and parallel trial drivers");
    bench->add_option("--bits", o.bits, "Comma-separated prime sizes (default 16,32)");
    bench->add_option("--trials", o.trials, "Trials per prime size (default 200)");
    add_common(bench, o);
    add_oracle(bench, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidInput;
    }

    try {
        if (*sample) return cmd_sample(o);
        if (*pow) return cmd_pow(o);
        if (*order) return cmd_order(o);
        if (*log) return cmd_log(o);
        if (*selftest) return cmd_selftest(o);
        if (*dh) return cmd_dh_demo(o);
        if (*bench) return cmd_bench(o);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const NotInvertible& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNotInvertible;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNoSolution;
    }
    return kInvalidInput;
}
