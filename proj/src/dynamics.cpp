#include "collatz/dynamics.hpp"

#include <algorithm>
#include <string>
#include <thread>

namespace collatz {

namespace {

constexpr unsigned long kExactPrimalityLimit = 1UL << 31;

bool is_prime_small(unsigned long n) {
    if (n < 2) {
        return false;
    }
    if (n % 2 == 0) {
        return n == 2;
    }
    for (unsigned long d = 3; d * d <= n; d += 2) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

bool divisible(const BigInt& x, const BigInt& d) { return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0; }

void require_domain(const DynamicsParams& params, const BigInt& m) {
    if (m < 1) {
        throw ValidationError("m must be positive, got " + to_decimal(m));
    }
    if (divisible(m, params.p())) {
        throw ValidationError("m must not be divisible by p=" + to_decimal(params.p()) + ", got " + to_decimal(m));
    }
}

bool is_fixed(const DynamicsParams& params, const BigInt& value) {
    return value == params.r() || step(params, value).next == value;
}

}  // namespace

DynamicsParams::DynamicsParams(BigInt p, unsigned long ell, BigInt r) : p_(std::move(p)), ell_(ell), r_(std::move(r)) {
    if (p_ < 2) {
        throw ValidationError("p must be a prime >= 2, got " + to_decimal(p_));
    }
    if (p_ <= kExactPrimalityLimit) {
        if (!is_prime_small(p_.get_ui())) {
            throw ValidationError("p must be prime, got " + to_decimal(p_));
        }
    } else {
        trusted_ = true;
    }
    if (ell_ < 1) {
        throw ValidationError("ell must be >= 1");
    }
    if (r_ < 1) {
        throw ValidationError("r must be >= 1, got " + to_decimal(r_));
    }
    if (divisible(r_, p_)) {
        throw ValidationError("r must not be divisible by p");
    }
    mpz_pow_ui(q_.get_mpz_t(), p_.get_mpz_t(), ell_);
    q_minus_1_ = q_ - 1;
}

DynamicsParams DynamicsParams::collatz_map() { return DynamicsParams(BigInt(2), 2, BigInt(1)); }

bool DynamicsParams::in_domain(const BigInt& m) const { return m >= 1 && !divisible(m, p_); }

StepResult step(const DynamicsParams& params, const BigInt& m) {
    require_domain(params, m);
    StepResult out;
    const BigInt x = params.q_minus_one() * m + params.r();
    if (params.p() == 2) {
        out.exponent = mpz_scan1(x.get_mpz_t(), 0);
        mpz_tdiv_q_2exp(out.next.get_mpz_t(), x.get_mpz_t(), out.exponent);
    } else {
        out.exponent = mpz_remove(out.next.get_mpz_t(), x.get_mpz_t(), params.p().get_mpz_t());
    }
    return out;
}

BigInt collatz(const BigInt& m) {
    if (m < 1 || !is_odd(m)) {
        throw ValidationError("m must be an odd positive integer, got " + to_decimal(m));
    }
    static const DynamicsParams params = DynamicsParams::collatz_map();
    return step(params, m).next;
}

Trajectory trajectory(const DynamicsParams& params, const BigInt& m, std::size_t steps) {
    require_domain(params, m);
    Trajectory t;
    t.start = m;
    t.values.push_back(m);
    for (std::size_t j = 0; j < steps; ++j) {
        const auto& current = t.values.back();
        if (current == params.r()) {
            break;
        }
        auto s = step(params, current);
        if (s.next == current) {
            break;
        }
        t.exponents.push_back(s.exponent);
        t.values.push_back(std::move(s.next));
    }
    t.reached_fixed_point = is_fixed(params, t.values.back());
    return t;
}

const char* to_string(Direction d) noexcept {
    switch (d) {
        case Direction::increasing:
            return "increasing";
        case Direction::decreasing:
            return "decreasing";
        case Direction::fixed:
            return "fixed";
    }
    return "fixed";
}

Direction PatternRLE::direction_of(std::size_t run) const noexcept {
    if (leading == Direction::fixed) {
        return Direction::fixed;
    }
    if (run % 2 == 0) {
        return leading;
    }
    return leading == Direction::increasing ? Direction::decreasing : Direction::increasing;
}

PatternRLE run_lengths(const Trajectory& t) {
    PatternRLE out;
    out.truncated = !t.reached_fixed_point;
    Direction current = Direction::fixed;
    for (std::size_t j = 0; j + 1 < t.values.size(); ++j) {
        const int cmp = ::cmp(t.values[j + 1], t.values[j]);
        if (cmp == 0) {
            break;
        }
        const Direction d = cmp > 0 ? Direction::increasing : Direction::decreasing;
        if (out.runs.empty()) {
            out.leading = d;
            out.runs.push_back(1);
        } else if (d == current) {
            ++out.runs.back();
        } else {
            out.runs.push_back(1);
        }
        current = d;
    }
    return out;
}

PatternRLE extract_pattern(const DynamicsParams& params, const BigInt& m, std::size_t steps) {
    if (steps < 1) {
        throw ValidationError("pattern extraction needs at least one step");
    }
    return run_lengths(trajectory(params, m, steps));
}

PatternCheck verify_pattern(const DynamicsParams& params, const BigInt& m, const Pattern& pattern) {
    require_domain(params, m);
    PatternCheck out;
    BigInt current = m;
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const bool up = Pattern::increasing_at(i);
        for (std::uint64_t k = 0; k < pattern[i]; ++k, ++index) {
            BigInt next = step(params, current).next;
            if (up ? !(next > current) : !(next < current)) {
                out.failure_index = index;
                return out;
            }
            current = std::move(next);
        }
    }
    out.ok = true;
    return out;
}

std::vector<BigInt> increasing_segment(std::uint64_t v, const BigInt& w) {
    if (v < 1) {
        throw ValidationError("segment length must be >= 1");
    }
    if (w < 1 || !is_odd(w)) {
        throw ValidationError("w must be an odd positive integer, got " + to_decimal(w));
    }
    std::vector<BigInt> out;
    out.reserve(v + 1);
    for (std::uint64_t j = 0; j <= v; ++j) {
        out.push_back(2 * pow(3, j) * pow(2, v - j) * w - 1);
    }
    return out;
}

std::vector<BigInt> decreasing_segment(std::uint64_t v, const BigInt& w) {
    if (v < 1) {
        throw ValidationError("segment length must be >= 1");
    }
    if (w < 1 || !is_odd(w)) {
        throw ValidationError("w must be an odd positive integer, got " + to_decimal(w));
    }
    std::vector<BigInt> out;
    out.reserve(v + 1);
    for (std::uint64_t j = 0; j <= v; ++j) {
        out.push_back(2 * pow(3, j) * pow(4, v - j) * w + 1);
    }
    return out;
}

std::vector<BigInt> general_segment(const DynamicsParams& params, std::uint64_t v, const BigInt& w) {
    if (v < 1) {
        throw ValidationError("segment length must be >= 1");
    }
    if (!params.in_domain(w)) {
        throw ValidationError("w must be positive and not divisible by p, got " + to_decimal(w));
    }
    // q^0..q^v, read back to front as j runs forward.
    std::vector<BigInt> q_pow(v + 1);
    q_pow[0] = 1;
    for (std::uint64_t j = 1; j <= v; ++j) {
        q_pow[j] = q_pow[j - 1] * params.q();
    }
    std::vector<BigInt> out;
    out.reserve(v + 1);
    BigInt qm1_pow = 1;
    for (std::uint64_t j = 0; j <= v; ++j) {
        out.push_back(params.p() * qm1_pow * q_pow[v - j] * w + params.r());
        qm1_pow *= params.q_minus_one();
    }
    return out;
}

Rational contraction_ratio(const DynamicsParams& params, const BigInt& m) {
    if (m == params.r()) {
        throw ValidationError("contraction ratio undefined at the fixed point m = r");
    }
    Rational out(step(params, m).next - params.r(), m - params.r());
    out.canonicalize();
    return out;
}

LeadingRunHistogram scan_leading_runs(std::uint64_t max_m, std::size_t steps, unsigned workers) {
    if (max_m < 1) {
        throw ValidationError("scan bound must be >= 1");
    }
    if (steps < 1) {
        throw ValidationError("scan needs at least one step");
    }
    const auto params = DynamicsParams::collatz_map();
    const std::uint64_t odd_count = (max_m + 1) / 2;
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<std::uint64_t>(odd_count, 64)));

    std::vector<LeadingRunHistogram> partial(workers);
    auto scan_range = [&](unsigned worker) {
        const std::uint64_t lo = odd_count * worker / workers;
        const std::uint64_t hi = odd_count * (worker + 1) / workers;
        auto& hist = partial[worker];
        for (std::uint64_t k = lo; k < hi; ++k) {
            const auto rle = extract_pattern(params, BigInt(static_cast<unsigned long>(2 * k + 1)), steps);
            const std::uint64_t first = rle.runs.empty() ? 0 : rle.runs.front();
            ++hist[{rle.leading, first}];
        }
    };

    if (workers == 1) {
        scan_range(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(scan_range, w);
        }
    }

    LeadingRunHistogram merged;
    for (const auto& hist : partial) {
        for (const auto& [key, count] : hist) {
            merged[key] += count;
        }
    }
    return merged;
}

}  // namespace collatz
