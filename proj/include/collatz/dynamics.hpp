#pragma once

#include "collatz/bigint.hpp"
#include "collatz/pattern.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace collatz {

/// Parameters of S_{q,r}(m) = ((q - 1) m + r) / p^e on integers not divisible
/// by the prime p, with q = p^ell and e maximal. The Collatz map is
/// (p, ell, r) = (2, 2, 1).
class DynamicsParams {
public:
    /// Primes up to 2^31 are checked exactly; larger p is accepted on trust
    /// and flagged through primality_trusted().
    DynamicsParams(BigInt p, unsigned long ell, BigInt r);

    static DynamicsParams collatz_map();

    const BigInt& p() const noexcept { return p_; }
    unsigned long ell() const noexcept { return ell_; }
    const BigInt& q() const noexcept { return q_; }
    const BigInt& q_minus_one() const noexcept { return q_minus_1_; }
    const BigInt& r() const noexcept { return r_; }
    bool primality_trusted() const noexcept { return trusted_; }

    /// True iff m >= 1 and p does not divide m.
    bool in_domain(const BigInt& m) const;

private:
    BigInt p_;
    unsigned long ell_;
    BigInt q_;
    BigInt q_minus_1_;
    BigInt r_;
    bool trusted_ = false;
};

struct StepResult {
    BigInt next;
    unsigned long exponent = 0;
};

StepResult step(const DynamicsParams& params, const BigInt& m);

/// C(m) = (3m + 1) / 2^e on odd positive m.
BigInt collatz(const BigInt& m);

struct Trajectory {
    BigInt start;
    std::vector<BigInt> values;
    std::vector<unsigned long> exponents;
    bool reached_fixed_point = false;
};

/// Records S^0(m)..S^steps(m); stops early once a fixed point is reached.
Trajectory trajectory(const DynamicsParams& params, const BigInt& m, std::size_t steps);

enum class Direction { increasing, decreasing, fixed };

const char* to_string(Direction d) noexcept;

/// Maximal strictly monotone runs of a trajectory. Directions alternate
/// starting from `leading`.
struct PatternRLE {
    Direction leading = Direction::fixed;
    std::vector<std::uint64_t> runs;
    /// The step budget ran out before a fixed point; the last run may continue.
    bool truncated = false;

    Direction direction_of(std::size_t run) const noexcept;
};

/// Run-length encodes the strict comparisons of consecutive values.
PatternRLE run_lengths(const Trajectory& t);

/// Requires steps >= 1.
PatternRLE extract_pattern(const DynamicsParams& params, const BigInt& m, std::size_t steps);

struct PatternCheck {
    bool ok = false;
    /// 0-based index j of the first failing comparison S^j(m) vs S^{j+1}(m).
    std::optional<std::uint64_t> failure_index;
};

/// Only the first total_steps() steps are constrained.
PatternCheck verify_pattern(const DynamicsParams& params, const BigInt& m, const Pattern& pattern);

// Closed-form segments. Each returns v + 1 values starting at the segment's
// first element.

/// 2 * 3^j * 2^(v-j) * w - 1, j = 0..v (strictly increasing under C).
std::vector<BigInt> increasing_segment(std::uint64_t v, const BigInt& w);

/// 2 * 3^j * 4^(v-j) * w + 1, j = 0..v (strictly decreasing under C).
std::vector<BigInt> decreasing_segment(std::uint64_t v, const BigInt& w);

/// p * (q-1)^j * q^(v-j) * w + r, j = 0..v (strictly decreasing under S_{q,r}).
std::vector<BigInt> general_segment(const DynamicsParams& params, std::uint64_t v, const BigInt& w);

/// (S(m) - r) / (m - r) as an exact rational. Requires m != r.
Rational contraction_ratio(const DynamicsParams& params, const BigInt& m);

/// Leading-run histogram over odd m in [1, max_m] under the Collatz map.
/// Keys are (direction, first run length), with first run 0 for `fixed`.
using LeadingRunHistogram = std::map<std::pair<Direction, std::uint64_t>, std::uint64_t>;

LeadingRunHistogram scan_leading_runs(std::uint64_t max_m, std::size_t steps, unsigned workers = 1);

}  // namespace collatz
