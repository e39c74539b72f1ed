// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include "collatz/chain_solver.hpp"
#include "collatz/cli.hpp"
#include "collatz/dynamics.hpp"
#include "collatz/witness_forge.hpp"
#include "oracles.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace collatz;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kTheoremSuiteLimitSeconds = 60.0;
constexpr double kScaleLimitSeconds = 5.0;
constexpr std::uint64_t kOracleBound = 1000000;

struct Verdict {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) {
            detail = why;
        }
        pass = false;
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Exact check written against raw GMP, independent of collatz::step.
bool raw_collatz_realizes(const BigInt& m, const std::vector<std::uint64_t>& runs) {
    BigInt cur = m;
    BigInt next;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        for (std::uint64_t k = 0; k < runs[i]; ++k) {
            next = 3 * cur + 1;
            mpz_tdiv_q_2exp(next.get_mpz_t(), next.get_mpz_t(), mpz_scan1(next.get_mpz_t(), 0));
            if ((i % 2 == 0) ? !(next > cur) : !(next < cur)) {
                return false;
            }
            cur = next;
        }
    }
    return true;
}

void all_patterns(std::size_t max_len, std::uint64_t max_run, const std::function<void(const std::vector<std::uint64_t>&)>& fn) {
    std::vector<std::uint64_t> runs;
    std::function<void()> rec = [&] {
        if (!runs.empty()) {
            fn(runs);
        }
        if (runs.size() == max_len) {
            return;
        }
        for (std::uint64_t v = 1; v <= max_run; ++v) {
            runs.push_back(v);
            rec();
            runs.pop_back();
        }
    };
    rec();
}

void compositions_up_to(std::uint64_t max_sum, const std::function<void(const std::vector<std::uint64_t>&)>& fn) {
    std::vector<std::uint64_t> runs;
    std::function<void(std::uint64_t)> rec = [&](std::uint64_t left) {
        if (!runs.empty()) {
            fn(runs);
        }
        for (std::uint64_t v = 1; v <= left; ++v) {
            runs.push_back(v);
            rec(left - v);
            runs.pop_back();
        }
    };
    rec(max_sum);
}

Verdict ac1_main_theorem() {
    Verdict v;
    const auto start = Clock::now();
    std::size_t count = 0;
    all_patterns(5, 4, [&](const std::vector<std::uint64_t>& runs) {
        ++count;
        const auto w = forge(Pattern(runs));
        if (!w.verified || !raw_collatz_realizes(w.m, runs)) {
            v.fail("pattern " + Pattern(runs).to_string() + " not realized");
        }
    });
    const double elapsed = seconds_since(start);
    if (count != 1364) {
        v.fail("enumerated " + std::to_string(count) + " patterns, expected 1364");
    }
    if (elapsed >= kTheoremSuiteLimitSeconds) {
        v.fail("took " + std::to_string(elapsed) + " s");
    }
    if (v.pass) {
        v.detail = std::to_string(count) + "/1364 verified in " + std::to_string(elapsed) + " s (limit 60 s)";
    }
    return v;
}

Verdict ac2_canonical() {
    Verdict v;
    struct Case {
        std::vector<std::uint64_t> runs;
        long m;
        std::vector<long> w;
    };
    const Case cases[] = {{{1, 1}, 27, {7, 5}}, {{1, 1, 1}, 59, {15, 11, 17}}, {{2, 1}, 39, {5, 11}}};
    for (const auto& c : cases) {
        const auto w = forge(Pattern(c.runs));
        std::vector<BigInt> expected_w(c.w.begin(), c.w.end());
        if (w.m != c.m || w.w != expected_w) {
            v.fail("forge(" + Pattern(c.runs).to_string() + ") = " + to_decimal(w.m));
        }
        if (oracle::pattern_failure(static_cast<oracle::u128>(c.m), c.runs)) {
            v.fail("direct iteration rejects m=" + std::to_string(c.m));
        }
    }
    if (v.pass) {
        v.detail = "(1,1)->27 w=(7,5); (1,1,1)->59 w=(15,11,17); (2,1)->39 w=(5,11)";
    }
    return v;
}

Verdict ac3_oracle_cross_check() {
    Verdict v;
    std::size_t count = 0;
    compositions_up_to(7, [&](const std::vector<std::uint64_t>& runs) {
        ++count;
        const auto got = minimal_witness(Pattern(runs), kOracleBound);
        const auto expected = oracle::minimal_scan(runs, kOracleBound);
        if (!got || got != expected) {
            v.fail("pattern " + Pattern(runs).to_string() + " disagrees");
            return;
        }
        if (!verify_pattern(DynamicsParams::collatz_map(), BigInt(static_cast<unsigned long>(*got)), Pattern(runs)).ok) {
            v.fail("minimal witness for " + Pattern(runs).to_string() + " does not verify");
        }
        if (!forge(Pattern(runs)).verified) {
            v.fail("forge fails on " + Pattern(runs).to_string());
        }
    });
    if (minimal_witness(Pattern({1, 1}), kOracleBound) != 3 || minimal_witness(Pattern({1, 1, 1}), kOracleBound) != 19) {
        v.fail("(1,1) -> 3 or (1,1,1) -> 19 not reproduced");
    }
    if (v.pass) {
        v.detail = std::to_string(count) + " patterns with sum <= 7 agree with exhaustive scan to 10^6; (1,1)->3, (1,1,1)->19";
    }
    return v;
}

Verdict ac4_lemmas() {
    Verdict v;
    const auto collatz_params = DynamicsParams::collatz_map();
    std::size_t checks = 0;
    for (std::uint64_t len = 1; len <= 12; ++len) {
        for (unsigned long w = 1; w <= 51; w += 2) {
            const auto up = increasing_segment(len, BigInt(w));
            const auto down = decreasing_segment(len, BigInt(w));
            if (up.front() != 2 * pow(2, len) * w - 1 || down.front() != 2 * pow(4, len) * w + 1) {
                v.fail("segment start mismatch");
            }
            BigInt cu = up.front();
            BigInt cd = down.front();
            for (std::uint64_t j = 0; j < len; ++j) {
                const auto su = step(collatz_params, cu);
                const auto sd = step(collatz_params, cd);
                if (su.next != up[j + 1] || su.exponent != 1) {
                    v.fail("increasing lemma v=" + std::to_string(len) + " w=" + std::to_string(w));
                }
                if (sd.next != down[j + 1] || sd.exponent != 2) {
                    v.fail("decreasing lemma v=" + std::to_string(len) + " w=" + std::to_string(w));
                }
                cu = su.next;
                cd = sd.next;
                checks += 2;
            }
        }
    }
    const std::pair<unsigned long, unsigned long> grid[] = {{2, 1}, {2, 2}, {3, 1}, {5, 1}};
    for (const auto& [p, ell] : grid) {
        const BigInt q = pow(p, ell);
        std::vector<BigInt> rs{BigInt(1)};
        if (q - 1 != 1 && mpz_divisible_ui_p(BigInt(q - 1).get_mpz_t(), p) == 0) {
            rs.push_back(q - 1);
        }
        for (const auto& r : rs) {
            const DynamicsParams params(BigInt(p), ell, r);
            const Rational expected_ratio(q - 1, q);
            for (std::uint64_t len = 1; len <= 8; ++len) {
                for (unsigned long w = 1; w <= 30; ++w) {
                    if (w % p == 0) {
                        continue;
                    }
                    const auto seg = general_segment(params, len, BigInt(w));
                    if (seg.front() != p * pow(q.get_ui(), len) * w + r) {
                        v.fail("general segment start mismatch");
                    }
                    BigInt cur = seg.front();
                    for (std::uint64_t j = 0; j < len; ++j) {
                        const auto s = step(params, cur);
                        if (s.next != seg[j + 1] || s.exponent != ell) {
                            v.fail("general lemma p=" + std::to_string(p) + " ell=" + std::to_string(ell));
                        }
                        if (contraction_ratio(params, cur) != expected_ratio) {
                            v.fail("ratio != (q-1)/q at p=" + std::to_string(p));
                        }
                        if (!(s.next < cur)) {
                            v.fail("general segment not strictly decreasing");
                        }
                        cur = s.next;
                        checks += 2;
                    }
                }
            }
        }
    }
    if (v.pass) {
        v.detail = std::to_string(checks) + " step/closed-form checks; exponents 1 (up) and 2 (down); ratio (q-1)/q exact";
    }
    return v;
}

Verdict ac5_kernel_structure() {
    Verdict v;
    std::mt19937_64 rng(500);
    for (int trial = 0; trial < 500; ++trial) {
        const auto s = oracle::random_system(rng, 1 + trial % 10);
        const auto n = s.size();
        const auto z = kernel_primitive(s);
        BigInt g = 0;
        for (const auto& e : collatz::apply(s, z.entries)) {
            if (e != 0) {
                v.fail("M z != 0");
            }
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (z.entries[i] <= 0) {
                v.fail("kernel entry not positive");
            }
            if (is_odd(z.entries[i]) != (i == n)) {
                v.fail("kernel parity");
            }
            g = gcd(g, z.entries[i]);
        }
        if (g != 1) {
            v.fail("kernel not primitive");
        }
        const auto c = solve_odd_positive(s);
        if (collatz::apply(s, c.lifted) != s.rhs()) {
            v.fail("M g != h");
        }
        for (const auto& e : c.lifted) {
            if (e <= 0 || !is_odd(e)) {
                v.fail("lifted entry not odd positive");
            }
        }
        if (c.shift >= 1) {
            bool prev_valid = true;
            const BigInt k = c.shift - 1;
            for (std::size_t i = 0; i <= n; ++i) {
                const BigInt e = c.particular[i] + k * z.entries[i];
                prev_valid = prev_valid && e > 0 && is_odd(e);
            }
            if (prev_valid) {
                v.fail("shift not minimal");
            }
        }
    }
    if (v.pass) {
        v.detail = "500 random systems: Mz=0, gcd 1, positive, even..even/odd; Mg=h odd positive, minimal k";
    }
    return v;
}

Verdict ac6_snf() {
    Verdict v;
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<std::size_t> len_dist(2, 7);
    for (int trial = 0; trial < 100; ++trial) {
        const Pattern pattern(oracle::random_runs(rng, len_dist(rng), 6));
        const auto s = build_system(pattern);
        const auto n = s.size();
        const auto factors = smith_normal_form(to_matrix(s));
        if (factors != std::vector<BigInt>(n, BigInt(1))) {
            v.fail("SNF of " + pattern.to_string() + " is not n ones");
        }
        const auto minors = corner_minor_certificate(s);
        BigInt prod_a = 1, prod_b = 1;
        for (const auto& a : s.coeff_a()) {
            prod_a *= a;
        }
        for (const auto& b : s.coeff_b()) {
            prod_b *= b;
        }
        if (n % 2 == 1) {
            prod_b = -prod_b;
        }
        if (minors.det_drop_last != prod_a || minors.det_drop_first != prod_b || !minors.coprime ||
            gcd(minors.det_drop_first, minors.det_drop_last) != 1) {
            v.fail("corner minors of " + pattern.to_string());
        }
        if (oracle::top_determinantal_divisor(to_matrix(s)) != 1) {
            v.fail("determinantal divisor of " + pattern.to_string() + " != 1");
        }
    }
    if (v.pass) {
        v.detail = "100 patterns L<=7: invariant factors all 1; minors prod(a), (-1)^n prod(b), coprime";
    }
    return v;
}

Verdict ac7_scale() {
    Verdict v;
    std::mt19937_64 rng(20);
    const Pattern pattern(oracle::random_runs(rng, 20, 10));
    const auto start = Clock::now();
    const auto w = forge(pattern);
    const double elapsed = seconds_since(start);
    if (!w.verified || !raw_collatz_realizes(w.m, pattern.runs())) {
        v.fail("witness does not verify");
    }
    if (elapsed >= kScaleLimitSeconds) {
        v.fail("forge took " + std::to_string(elapsed) + " s");
    }
    std::ostringstream out;
    cli::render_forge(w, true, out);
    const auto j = nlohmann::json::parse(out.str());
    const std::string m_text = j["result"]["m"];
    if (parse_decimal(m_text) != w.m) {
        v.fail("JSON round trip lost m");
    }
    for (std::size_t i = 0; i < w.w.size(); ++i) {
        if (parse_decimal(j["result"]["w"][i].get<std::string>()) != w.w[i]) {
            v.fail("JSON round trip lost w");
        }
    }
    std::ostringstream vout, verr;
    if (cli::run({"verify", m_text, pattern.to_string()}, vout, verr) != 0) {
        v.fail("verify of round-tripped m failed");
    }
    if (v.pass) {
        v.detail = "pattern " + pattern.to_string() + ": m has " + std::to_string(m_text.size()) + " digits, forged in " +
                   std::to_string(elapsed) + " s (limit 5 s), JSON lossless";
    }
    return v;
}

Verdict ac8_duality() {
    Verdict v;
    const auto params = DynamicsParams::collatz_map();
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<unsigned long> m_dist(0, 49999);
    std::size_t agree_true = 0, agree_false = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const unsigned long m = 2 * m_dist(rng) + 1;
        std::vector<std::uint64_t> runs;
        if (trial % 2 == 0) {
            // random composition of a total in [1, 12]
            const std::uint64_t total = 1 + rng() % 12;
            std::uint64_t used = 0;
            while (used < total) {
                const std::uint64_t r = 1 + rng() % (total - used);
                runs.push_back(r);
                used += r;
            }
        } else {
            // prefix of m's own shape, so the true branch is exercised
            bool up = false;
            runs = oracle::monotone_runs(m, 12, up);
            if (runs.empty() || !up) {
                runs = {1 + rng() % 3, 1 + rng() % 3};
            } else {
                runs.resize(1 + rng() % runs.size());
                runs.back() = 1 + rng() % runs.back();
            }
        }
        const Pattern pattern(runs);
        const bool verified = verify_pattern(params, BigInt(m), pattern).ok;
        const auto rle = extract_pattern(params, BigInt(m), pattern.total_steps());
        const std::size_t L = runs.size();
        bool rule = rle.leading == Direction::increasing && rle.runs.size() == L;
        for (std::size_t i = 0; rule && i + 1 < L; ++i) {
            rule = rle.runs[i] == runs[i];
        }
        rule = rule && rle.runs[L - 1] >= runs[L - 1];
        if (rule != verified) {
            v.fail("m=" + std::to_string(m) + " pattern " + pattern.to_string());
        }
        ++(verified ? agree_true : agree_false);
    }
    if (v.pass) {
        v.detail = "10000 pairs agree (" + std::to_string(agree_true) + " realized, " + std::to_string(agree_false) +
                   " not)";
    }
    return v;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Verdict (*run)();
    };
    const Criterion criteria[] = {
        {"AC1 main theorem, all L<=5 v<=4", ac1_main_theorem},
        {"AC2 canonical forge outputs", ac2_canonical},
        {"AC3 minimal witness oracle", ac3_oracle_cross_check},
        {"AC4 segment lemma equivalence", ac4_lemmas},
        {"AC5 kernel structure", ac5_kernel_structure},
        {"AC6 Smith normal form oracle", ac6_snf},
        {"AC7 scale smoke test", ac7_scale},
        {"AC8 extraction/verification duality", ac8_duality},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << v.detail << '\n';
        failures += v.pass ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
