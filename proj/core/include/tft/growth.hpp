#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tft/bigint.hpp"

namespace tft {

class GrowthFunction;
using GrowthRef = std::shared_ptr<const GrowthFunction>;

// A bound sequence f(0), f(1), ..., f(lmax) of positive integers against
// which edge labels are truncated. A valid sequence satisfies, for every l,
//
//     f(l) >= prod_{u-2 <= i < l} (f(i) + 1)^C(i, u-2)
//
// with the empty product equal to 1. The minimal sequence takes this with
// equality; its values are doubly exponential, so beyond a bit-size cap the
// minimal constructor stops materializing them and answers truncation
// queries through monotonicity alone. Operations that need an exact value
// past the materialized range raise GuardError.
class GrowthFunction {
public:
    enum class Kind { Minimal, Custom };

    static GrowthRef minimal(std::uint32_t u, std::uint32_t lmax);

    // Custom values are validated against the growth inequality unless
    // allow_invalid is set; an invalid sequence is then kept but flagged.
    static GrowthRef custom(std::uint32_t u, std::vector<BigInt> values,
                            bool allow_invalid = false);

    std::uint32_t uniformity() const { return u_; }
    std::uint32_t lmax() const { return lmax_; }
    Kind kind() const { return kind_; }
    bool valid() const { return valid_; }

    // Largest index with a materialized exact value.
    std::uint32_t materialized_max() const {
        return static_cast<std::uint32_t>(values_.size() - 1);
    }

    // Exact f(i); GuardError past the materialized range.
    const BigInt& value(std::uint32_t i) const;

    // True iff label >= f(i), i.e. the label truncates to the marker at
    // position i. Works for every i <= lmax: past the materialized range the
    // minimal sequence is monotone, so any label below the last materialized
    // value compares false; larger labels cannot be decided and raise
    // GuardError.
    bool truncates(std::uint32_t i, const BigInt& label) const;

    // |T_f(l)| = prod_{u-2 <= i < l} (f(i)+1)^C(i, u-2).
    BigInt level_count(std::uint32_t level) const;

    // Immediate successors of any node at the given level: (f(l)+1)^C(l, u-2).
    BigInt successor_count(std::uint32_t level) const;

    // Checks the growth inequality at every materialized index.
    bool satisfies_growth_inequality() const;

    // JSON: {"u": int, "values": ["1", "2", "6", ...]}; exact values only.
    std::string to_json() const;
    static GrowthRef from_json(const std::string& text, bool allow_invalid = false);

    static bool same_function(const GrowthFunction& a, const GrowthFunction& b);

    // Bit-size cap for materialized minimal values and for count products.
    static constexpr std::size_t kValueBitCap = 1u << 16;
    static constexpr std::size_t kCountBitCap = 1u << 24;

private:
    GrowthFunction() = default;

    std::uint32_t u_ = 2;
    std::uint32_t lmax_ = 0;
    Kind kind_ = Kind::Minimal;
    bool valid_ = true;
    std::vector<BigInt> values_;
};

} // namespace tft
