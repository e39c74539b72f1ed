#include "collatz/witness_forge.hpp"

#include "collatz/dynamics.hpp"

#include <algorithm>
#include <thread>

namespace collatz {

ChainSystem build_system(const Pattern& pattern) {
    const std::size_t runs = pattern.size();
    if (runs < 2) {
        throw ValidationError("a chain system needs a pattern with at least two runs");
    }
    std::vector<BigInt> a, b, h;
    a.reserve(runs - 1);
    b.reserve(runs - 1);
    h.reserve(runs - 1);
    for (std::size_t i = 0; i + 1 < runs; ++i) {
        a.push_back(pow(3, pattern[i]));
        // Junction into a falling run uses 4^v, into a rising run 2^v.
        const bool next_falls = !Pattern::increasing_at(i + 1);
        b.push_back(pow(next_falls ? 4 : 2, pattern[i + 1]));
        h.emplace_back(Pattern::increasing_at(i) ? 1 : -1);
    }
    return ChainSystem(std::move(a), std::move(b), std::move(h));
}

Witness assemble_witness(const Pattern& pattern) {
    Witness out{.m = 0, .w = {}, .pattern = pattern, .certificate = std::nullopt, .verified = false};
    if (pattern.size() == 1) {
        out.w = {BigInt(1)};
    } else {
        auto cert = solve_odd_positive(build_system(pattern));
        out.w = cert.lifted;
        out.certificate = std::move(cert);
    }
    out.m = 2 * pow(2, pattern[0]) * out.w[0] - 1;
    return out;
}

Witness forge(const Pattern& pattern) {
    Witness out = assemble_witness(pattern);
    out.verified = verify_pattern(DynamicsParams::collatz_map(), out.m, pattern).ok;
    if (!out.verified) {
        throw InternalError("forged m=" + to_decimal(out.m) + " does not realize pattern " + pattern.to_string());
    }
    return out;
}

std::vector<BigInt> segment_boundaries(const Witness& witness) {
    if (!witness.verified) {
        throw ValidationError("segment boundaries need a verified witness");
    }
    std::vector<BigInt> out;
    out.reserve(witness.w.size() + 1);
    out.push_back(witness.m);
    for (std::size_t i = 0; i < witness.w.size(); ++i) {
        const BigInt top = 2 * pow(3, witness.pattern[i]) * witness.w[i];
        out.push_back(Pattern::increasing_at(i) ? BigInt(top - 1) : BigInt(top + 1));
    }
    return out;
}

std::optional<std::uint64_t> minimal_witness(const Pattern& pattern, std::uint64_t bound, unsigned workers) {
    if (bound < 1) {
        throw ValidationError("bound must be >= 1");
    }
    const auto params = DynamicsParams::collatz_map();
    constexpr std::uint64_t kBlock = 1 << 14;
    workers = std::clamp<unsigned>(workers, 1, 64);

    // Candidate k stands for m = 2k + 1.
    const std::uint64_t count = bound / 2 + bound % 2;
    auto scan_block = [&](std::uint64_t lo, std::uint64_t hi) -> std::optional<std::uint64_t> {
        BigInt m;
        for (std::uint64_t k = lo; k < hi; ++k) {
            m = static_cast<unsigned long>(2 * k + 1);
            if (verify_pattern(params, m, pattern).ok) {
                return 2 * k + 1;
            }
        }
        return std::nullopt;
    };

    for (std::uint64_t round_lo = 0; round_lo < count;) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> blocks;
        for (unsigned w = 0; w < workers && round_lo < count; ++w) {
            const std::uint64_t hi = std::min(count, round_lo + kBlock);
            blocks.emplace_back(round_lo, hi);
            round_lo = hi;
        }
        std::vector<std::optional<std::uint64_t>> hits(blocks.size());
        if (blocks.size() == 1) {
            hits[0] = scan_block(blocks[0].first, blocks[0].second);
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t k = 0; k < blocks.size(); ++k) {
                pool.emplace_back([&, k] { hits[k] = scan_block(blocks[k].first, blocks[k].second); });
            }
        }
        for (const auto& hit : hits) {
            if (hit) {
                return hit;
            }
        }
    }
    return std::nullopt;
}

}  // namespace collatz
