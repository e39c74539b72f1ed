#pragma once

// Exact solver for bidiagonal chain systems
//
//     a_i x_i - b_{i+1} x_{i+1} = h_i,    i = 1..n
//
// with odd positive a's, even positive b's and gcd(a_i, b_j) = 1 for every
// pair. Under these conditions the kernel is spanned by a unique primitive
// positive vector z whose first n entries are even and whose last entry is
// odd, the map Z^{n+1} -> Z^n is onto, and every odd right-hand side admits
// an odd positive solution x + k z.

#include "collatz/bigint.hpp"

#include <cstddef>
#include <vector>

namespace collatz {

class ChainSystem {
public:
    /// Validates shapes, signs, parity and pairwise coprimality. Throws
    /// ValidationError carrying the offending index.
    ChainSystem(std::vector<BigInt> coeff_a, std::vector<BigInt> coeff_b, std::vector<BigInt> rhs);

    /// Number of equations n; there are n + 1 unknowns.
    std::size_t size() const noexcept { return a_.size(); }

    const std::vector<BigInt>& coeff_a() const noexcept { return a_; }
    const std::vector<BigInt>& coeff_b() const noexcept { return b_; }
    const std::vector<BigInt>& rhs() const noexcept { return h_; }

    bool rhs_all_odd() const;

private:
    std::vector<BigInt> a_;
    std::vector<BigInt> b_;
    std::vector<BigInt> h_;
};

struct KernelVector {
    std::vector<BigInt> entries;
};

struct SolutionCertificate {
    std::vector<BigInt> particular;
    std::vector<BigInt> lifted;
    BigInt shift;
};

struct CornerMinors {
    BigInt det_drop_first;
    BigInt det_drop_last;
    bool coprime = false;
};

using IntMatrix = std::vector<std::vector<BigInt>>;

/// Row i is a_i x_i - b_{i+1} x_{i+1}.
std::vector<BigInt> apply(const ChainSystem& system, const std::vector<BigInt>& x);

KernelVector kernel_primitive(const ChainSystem& system);

/// Forward congruence sweep: carries x_1 as a residue class r mod M and the
/// current unknown as an affine function of the class parameter, fixing one
/// more factor of M per equation. The least nonnegative r is returned with
/// x_2..x_{n+1} back-substituted.
std::vector<BigInt> particular_solution(const ChainSystem& system);

/// Smallest k >= 0 such that x + k z is positive with an odd last entry.
/// Requires every h_i odd, which forces x_1..x_n odd.
SolutionCertificate odd_positive_lift(const ChainSystem& system, const std::vector<BigInt>& particular,
                                      const KernelVector& kernel);

SolutionCertificate solve_odd_positive(const ChainSystem& system);

CornerMinors corner_minor_certificate(const ChainSystem& system);

/// The n x (n+1) dense matrix of the system.
IntMatrix to_matrix(const ChainSystem& system);

inline constexpr std::size_t kSmithDefaultMaxDim = 32;

/// Invariant factors d_1 | d_2 | ... (min(rows, cols) of them, zeros last)
/// by unimodular row and column operations. Oracle scale only.
std::vector<BigInt> smith_normal_form(const IntMatrix& matrix, std::size_t max_dim = kSmithDefaultMaxDim);

}  // namespace collatz
