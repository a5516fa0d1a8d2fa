#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "tft/errors.hpp"

namespace tft {

// All counts and labels that can outgrow 64 bits are arbitrary precision.
using BigInt = boost::multiprecision::cpp_int;

inline std::size_t bit_length(const BigInt& x) {
    if (x == 0) return 0;
    return static_cast<std::size_t>(boost::multiprecision::msb(x)) + 1;
}

BigInt binomial(std::uint64_t n, std::uint64_t k);

// Binomial coefficient that must fit in a uint64 slot (indices, slot counts).
// Throws GuardError when the value exceeds 2^62.
std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k);

BigInt pow_big(const BigInt& base, std::uint64_t exp);

// Decimal-string conversions used by every JSON surface. parse_big rejects
// anything but an optional-free plain run of digits.
std::string big_to_string(const BigInt& x);
BigInt big_from_string(const std::string& s);

} // namespace tft
