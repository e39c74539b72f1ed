#pragma once

// Turns a run-length pattern into an odd m whose Collatz trajectory rises
// v_1 steps, falls v_2 steps, rises v_3 steps, and so on.
//
// Segment i starts at 2 * 2^{v_i} * w_i - 1 when rising and at
// 2 * 4^{v_i} * w_i + 1 when falling, and ends at 2 * 3^{v_i} * w_i -/+ 1.
// Gluing the end of segment i to the start of segment i+1 gives one chain
// equation per junction:
//
//     3^{v_i} w_i - 4^{v_{i+1}} w_{i+1} =  1   (rise then fall)
//     3^{v_i} w_i - 2^{v_{i+1}} w_{i+1} = -1   (fall then rise)
//
// and any odd positive solution (w_i) yields the witness.

#include "collatz/bigint.hpp"
#include "collatz/chain_solver.hpp"
#include "collatz/pattern.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace collatz {

struct Witness {
    BigInt m;
    std::vector<BigInt> w;
    Pattern pattern;
    /// Absent for single-run patterns, which need no chain system.
    std::optional<SolutionCertificate> certificate;
    bool verified = false;
};

/// L - 1 junction equations in L unknowns. Requires L >= 2.
ChainSystem build_system(const Pattern& pattern);

/// Solves and assembles the witness without running the trajectory check.
Witness assemble_witness(const Pattern& pattern);

/// assemble_witness followed by exact Collatz verification. Throws
/// InternalError if the assembled m does not realize the pattern.
Witness forge(const Pattern& pattern);

/// m followed by the value after each run. Requires a verified witness.
std::vector<BigInt> segment_boundaries(const Witness& witness);

/// Least odd m <= bound realizing the pattern, by ascending scan. Blocks are
/// handed to `workers` threads a round at a time; the result does not depend
/// on the worker count.
std::optional<std::uint64_t> minimal_witness(const Pattern& pattern, std::uint64_t bound, unsigned workers = 1);

}  // namespace collatz
