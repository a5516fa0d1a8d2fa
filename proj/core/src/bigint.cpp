#include "tft/bigint.hpp"

#include <cctype>

namespace tft {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        result *= BigInt(n - i);
        result /= BigInt(i + 1);
    }
    return result;
}

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    if (k == 0) return 1;
    if (k == 1) return n;
    if (k == 2 && n <= 3'000'000'000ull) {
        return (n % 2 == 0) ? (n / 2) * (n - 1) : n * ((n - 1) / 2);
    }
    const BigInt b = binomial(n, k);
    if (b > (BigInt(1) << 62)) {
        throw GuardError("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                         ") exceeds the 2^62 index guard");
    }
    return b.convert_to<std::uint64_t>();
}

BigInt pow_big(const BigInt& base, std::uint64_t exp) {
    BigInt result = 1;
    BigInt b = base;
    while (exp != 0) {
        if (exp & 1) result *= b;
        exp >>= 1;
        if (exp != 0) b *= b;
    }
    return result;
}

std::string big_to_string(const BigInt& x) { return x.str(); }

BigInt big_from_string(const std::string& s) {
    if (s.empty()) throw FormatError("empty integer literal");
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw FormatError("invalid integer literal: \"" + s + "\"");
        }
    }
    return BigInt(s);
}

} // namespace tft
