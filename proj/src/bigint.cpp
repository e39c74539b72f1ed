#include "collatz/bigint.hpp"

#include <algorithm>

namespace collatz {

BigInt pow(unsigned long base, std::uint64_t exponent) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, static_cast<unsigned long>(exponent));
    return out;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

BigInt mod_positive(const BigInt& x, const BigInt& modulus) {
    BigInt out;
    mpz_mod(out.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
    return out;
}

BigInt parse_decimal(std::string_view text) {
    std::string_view digits = text;
    if (!digits.empty() && digits.front() == '-') {
        digits.remove_prefix(1);
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ValidationError("not a decimal integer: '" + std::string(text) + "'");
    }
    return BigInt(std::string(text), 10);
}

std::vector<std::string> to_decimal(const std::vector<BigInt>& xs) {
    std::vector<std::string> out;
    out.reserve(xs.size());
    for (const auto& x : xs) {
        out.push_back(to_decimal(x));
    }
    return out;
}

}  // namespace collatz
