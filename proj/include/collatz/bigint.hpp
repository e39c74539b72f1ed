#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace collatz {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Input rejected by a validating constructor or operation. `index` names the
/// offending position when the input is a sequence.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what, std::optional<std::size_t> index = std::nullopt)
        : std::invalid_argument(what), index_(index) {}

    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    std::optional<std::size_t> index_;
};

/// A result failed its own post-check. Always a defect, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

BigInt pow(unsigned long base, std::uint64_t exponent);

inline bool is_odd(const BigInt& x) { return mpz_odd_p(x.get_mpz_t()) != 0; }
inline bool is_even(const BigInt& x) { return mpz_even_p(x.get_mpz_t()) != 0; }

BigInt gcd(const BigInt& a, const BigInt& b);

/// Floor division, exact for negative numerators.
BigInt floor_div(const BigInt& num, const BigInt& den);

/// Least nonnegative residue of x modulo a positive modulus.
BigInt mod_positive(const BigInt& x, const BigInt& modulus);

/// Parses an optionally negative run of decimal digits. No whitespace, no '+'.
BigInt parse_decimal(std::string_view text);

inline std::string to_decimal(const BigInt& x) { return x.get_str(10); }

std::vector<std::string> to_decimal(const std::vector<BigInt>& xs);

}  // namespace collatz
