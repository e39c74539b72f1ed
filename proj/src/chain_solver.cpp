#include "collatz/chain_solver.hpp"

#include <string>
#include <utility>

namespace collatz {

namespace {

void require_length(const std::vector<BigInt>& xs, std::size_t expected, const char* what) {
    if (xs.size() != expected) {
        throw ValidationError(std::string(what) + ": expected length " + std::to_string(expected) + ", got " +
                              std::to_string(xs.size()));
    }
}

BigInt mod_inverse(const BigInt& x, const BigInt& modulus) {
    BigInt out;
    if (mpz_invert(out.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t()) == 0) {
        throw ValidationError("unsolvable system: coefficient " + to_decimal(x) + " not invertible modulo " +
                              to_decimal(modulus));
    }
    return out;
}

BigInt abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

}  // namespace

ChainSystem::ChainSystem(std::vector<BigInt> coeff_a, std::vector<BigInt> coeff_b, std::vector<BigInt> rhs)
    : a_(std::move(coeff_a)), b_(std::move(coeff_b)), h_(std::move(rhs)) {
    if (a_.empty()) {
        throw ValidationError("chain system needs at least one equation");
    }
    if (b_.size() != a_.size() || h_.size() != a_.size()) {
        throw ValidationError("length mismatch: |a|=" + std::to_string(a_.size()) + " |b|=" +
                              std::to_string(b_.size()) + " |h|=" + std::to_string(h_.size()));
    }
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (a_[i] <= 0) {
            throw ValidationError("coeff_a entry must be positive", i);
        }
        if (!is_odd(a_[i])) {
            throw ValidationError("coeff_a entry must be odd", i);
        }
    }
    for (std::size_t j = 0; j < b_.size(); ++j) {
        if (b_[j] <= 0) {
            throw ValidationError("coeff_b entry must be positive", j);
        }
        if (!is_even(b_[j])) {
            throw ValidationError("coeff_b entry must be even", j);
        }
    }
    for (std::size_t i = 0; i < a_.size(); ++i) {
        for (std::size_t j = 0; j < b_.size(); ++j) {
            if (gcd(a_[i], b_[j]) != 1) {
                throw ValidationError("gcd(a[" + std::to_string(i) + "], b[" + std::to_string(j) + "]) > 1", j);
            }
        }
    }
}

bool ChainSystem::rhs_all_odd() const {
    for (const auto& h : h_) {
        if (!is_odd(h)) {
            return false;
        }
    }
    return true;
}

std::vector<BigInt> apply(const ChainSystem& system, const std::vector<BigInt>& x) {
    const auto n = system.size();
    require_length(x, n + 1, "apply");
    std::vector<BigInt> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = system.coeff_a()[i] * x[i] - system.coeff_b()[i] * x[i + 1];
    }
    return out;
}

KernelVector kernel_primitive(const ChainSystem& system) {
    const auto n = system.size();
    const auto& a = system.coeff_a();
    const auto& b = system.coeff_b();

    // z_i = (prod_{k<i} a_k) * (prod_{k>=i} b_{k+1}); build both partial
    // products in one pass each.
    std::vector<BigInt> suffix_b(n + 1, BigInt(1));
    for (std::size_t i = n; i-- > 0;) {
        suffix_b[i] = suffix_b[i + 1] * b[i];
    }
    KernelVector z;
    z.entries.resize(n + 1);
    BigInt prefix_a = 1;
    for (std::size_t i = 0; i <= n; ++i) {
        z.entries[i] = prefix_a * suffix_b[i];
        if (i < n) {
            prefix_a *= a[i];
        }
    }
    BigInt g = 0;
    for (const auto& e : z.entries) {
        g = gcd(g, e);
    }
    for (auto& e : z.entries) {
        mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
    }
    return z;
}

std::vector<BigInt> particular_solution(const ChainSystem& system) {
    const auto n = system.size();
    const auto& a = system.coeff_a();
    const auto& b = system.coeff_b();
    const auto& h = system.rhs();

    // x_1 = residue + modulus * t; current unknown x_i = offset + slope * t.
    BigInt residue = 0;
    BigInt modulus = 1;
    BigInt offset = 0;
    BigInt slope = 1;
    for (std::size_t i = 0; i < n; ++i) {
        // Need a_i (offset + slope t) == h_i (mod b_{i+1}).
        const BigInt coeff = a[i] * slope;
        const BigInt target = h[i] - a[i] * offset;
        const BigInt t0 = mod_positive(target * mod_inverse(mod_positive(coeff, b[i]), b[i]), b[i]);

        residue += modulus * t0;
        modulus *= b[i];
        BigInt numer = a[i] * (offset + slope * t0) - h[i];
        if (!mpz_divisible_p(numer.get_mpz_t(), b[i].get_mpz_t())) {
            throw InternalError("congruence sweep produced a non-integral unknown");
        }
        mpz_divexact(offset.get_mpz_t(), numer.get_mpz_t(), b[i].get_mpz_t());
        slope = coeff;
    }

    std::vector<BigInt> x(n + 1);
    x[0] = residue;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt numer = a[i] * x[i] - h[i];
        mpz_divexact(x[i + 1].get_mpz_t(), numer.get_mpz_t(), b[i].get_mpz_t());
    }
    return x;
}

SolutionCertificate odd_positive_lift(const ChainSystem& system, const std::vector<BigInt>& particular,
                                      const KernelVector& kernel) {
    const auto n = system.size();
    require_length(particular, n + 1, "particular solution");
    require_length(kernel.entries, n + 1, "kernel vector");
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_odd(system.rhs()[i])) {
            throw ValidationError("odd-positive lift requires every rhs entry odd", i);
        }
    }
    if (collatz::apply(system, particular) != system.rhs()) {
        throw ValidationError("particular vector does not solve the system");
    }
    for (std::size_t i = 0; i <= n; ++i) {
        if (kernel.entries[i] <= 0) {
            throw ValidationError("kernel entry must be positive", i);
        }
    }
    if (!is_odd(kernel.entries[n])) {
        throw ValidationError("kernel last entry must be odd", n);
    }
    for (const auto& v : collatz::apply(system, kernel.entries)) {
        if (v != 0) {
            throw ValidationError("vector is not in the kernel");
        }
    }

    // Positivity x_i + k z_i > 0 is monotone in k.
    BigInt shift = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        if (particular[i] <= 0) {
            BigInt need = floor_div(-particular[i], kernel.entries[i]) + 1;
            if (need > shift) {
                shift = need;
            }
        }
    }
    if (!is_odd(particular[n] + shift * kernel.entries[n])) {
        shift += 1;
    }

    SolutionCertificate cert;
    cert.particular = particular;
    cert.shift = shift;
    cert.lifted.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        cert.lifted[i] = particular[i] + shift * kernel.entries[i];
        if (!is_odd(cert.lifted[i]) || cert.lifted[i] <= 0) {
            throw InternalError("lifted entry " + std::to_string(i) + " is not odd positive");
        }
    }
    return cert;
}

SolutionCertificate solve_odd_positive(const ChainSystem& system) {
    auto x = particular_solution(system);
    auto z = kernel_primitive(system);
    return odd_positive_lift(system, x, z);
}

CornerMinors corner_minor_certificate(const ChainSystem& system) {
    CornerMinors out;
    out.det_drop_first = 1;
    out.det_drop_last = 1;
    for (const auto& b : system.coeff_b()) {
        out.det_drop_first *= b;
    }
    if (system.size() % 2 == 1) {
        out.det_drop_first = -out.det_drop_first;
    }
    for (const auto& a : system.coeff_a()) {
        out.det_drop_last *= a;
    }
    out.coprime = gcd(out.det_drop_first, out.det_drop_last) == 1;
    return out;
}

IntMatrix to_matrix(const ChainSystem& system) {
    const auto n = system.size();
    IntMatrix m(n, std::vector<BigInt>(n + 1, BigInt(0)));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = system.coeff_a()[i];
        m[i][i + 1] = -system.coeff_b()[i];
    }
    return m;
}

std::vector<BigInt> smith_normal_form(const IntMatrix& matrix, std::size_t max_dim) {
    const std::size_t rows = matrix.size();
    const std::size_t cols = rows == 0 ? 0 : matrix.front().size();
    if (rows > max_dim || cols > max_dim) {
        throw ValidationError("matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                              " exceeds the Smith normal form bound " + std::to_string(max_dim));
    }
    for (std::size_t i = 0; i < rows; ++i) {
        if (matrix[i].size() != cols) {
            throw ValidationError("ragged matrix row", i);
        }
    }

    IntMatrix m = matrix;
    const std::size_t diag = std::min(rows, cols);
    std::vector<BigInt> factors(diag, BigInt(0));

    auto swap_cols = [&](std::size_t c1, std::size_t c2) {
        for (auto& row : m) {
            std::swap(row[c1], row[c2]);
        }
    };

    for (std::size_t t = 0; t < diag; ++t) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        auto move_min_to_pivot = [&]() {
            std::size_t best_r = rows, best_c = cols;
            for (std::size_t i = t; i < rows; ++i) {
                for (std::size_t j = t; j < cols; ++j) {
                    if (m[i][j] != 0 && (best_r == rows || abs(m[i][j]) < abs(m[best_r][best_c]))) {
                        best_r = i;
                        best_c = j;
                    }
                }
            }
            if (best_r == rows) {
                return false;
            }
            std::swap(m[t], m[best_r]);
            swap_cols(t, best_c);
            return true;
        };

        if (!move_min_to_pivot()) {
            break;
        }

        while (true) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) {
                    continue;
                }
                BigInt q;
                mpz_tdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
                for (std::size_t j = t; j < cols; ++j) {
                    m[i][j] -= q * m[t][j];
                }
                dirty = dirty || m[i][t] != 0;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) {
                    continue;
                }
                BigInt q;
                mpz_tdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
                for (std::size_t i = t; i < rows; ++i) {
                    m[i][j] -= q * m[i][t];
                }
                dirty = dirty || m[t][j] != 0;
            }
            if (dirty) {
                move_min_to_pivot();
                continue;
            }
            // Row and column cleared; enforce divisibility into the trailing block.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < rows && divides_all; ++i) {
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (!mpz_divisible_p(m[i][j].get_mpz_t(), m[t][t].get_mpz_t())) {
                        for (std::size_t k = t; k < cols; ++k) {
                            m[t][k] += m[i][k];
                        }
                        divides_all = false;
                        break;
                    }
                }
            }
            if (divides_all) {
                break;
            }
        }
        factors[t] = abs(m[t][t]);
    }
    return factors;
}

}  // namespace collatz
