#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tft/growth.hpp"
#include "tft/label.hpp"
#include "tft/oracle.hpp"

namespace tft {

using Level = std::uint32_t;

// A node of the tree T_f, stored as a letter sequence.
//
// A type of level l records, for every (u-1)-subset S of {0..l-1}, the
// (possibly truncated) label of S joined with the extension vertex. Group
// the subsets by their maximum element i: the group at position i has one
// entry per (u-2)-subset of {0..i-1}, kept in colexicographic order, and a
// non-marker entry at position i is < f(i). The letter at position i is that
// entry group, so the tree order is string-prefix on letter sequences and
// the meet is the longest common prefix.
//
// Entries are stored flat, position-major: the letter at position i occupies
// slots [C(i, u-1), C(i+1, u-1)). Types of a fixed level compare
// lexicographically over this flat sequence with the marker before 0.
class FType {
public:
    static FType root(GrowthRef growth);

    // Validates every entry against the growth bound (non-marker entry at
    // position i must be < f(i)) and the slot count.
    static FType from_entries(GrowthRef growth, Level level, std::vector<Label> entries);

    Level level() const { return level_; }
    std::uint32_t uniformity() const;
    const GrowthRef& growth() const { return growth_; }
    std::span<const Label> entries() const { return entries_; }
    std::span<const Label> letter(Level position) const;

    FType restrict_to(Level level) const;

    friend bool operator==(const FType& a, const FType& b);
    friend bool operator!=(const FType& a, const FType& b) { return !(a == b); }

    // Lexicographic order over letter sequences (marker first); shorter
    // prefixes come before their extensions.
    static int compare(const FType& a, const FType& b);
    friend bool operator<(const FType& a, const FType& b) { return compare(a, b) < 0; }

    // Letters joined by '|', entries within a letter joined by ',', the
    // marker rendered as '*'. The empty string renders every type whose
    // positions all carry empty letters, so parsing takes the level.
    std::string to_string() const;
    static FType from_string(GrowthRef growth, Level level, const std::string& text);

private:
    FType(GrowthRef growth, Level level, std::vector<Label> entries)
        : growth_(std::move(growth)), level_(level), entries_(std::move(entries)) {}

    GrowthRef growth_;
    Level level_ = 0;
    std::vector<Label> entries_;
};

// Longest common prefix of two types over the same growth function.
FType meet(const FType& x, const FType& y);

bool is_prefix(const FType& x, const FType& y);

// Flat slot counts of the letter layout.
std::uint64_t entries_at_position(std::uint32_t u, Level position);
std::uint64_t entry_offset(std::uint32_t u, Level position);

// Every type of the given level, lexicographic order, guarded by count.
std::vector<FType> enumerate_level(const GrowthRef& growth, Level level,
                                   std::uint64_t guard = 10'000'000);
void for_each_type_at_level(const GrowthRef& growth, Level level, std::uint64_t guard,
                            const std::function<void(const FType&)>& fn);

// All one-letter extensions of x, lexicographic order, guarded by count.
std::vector<FType> immediate_successors(const FType& x, std::uint64_t guard = 10'000'000);

// Rank/unrank within a level, in enumeration order.
FType type_at(const GrowthRef& growth, Level level, const BigInt& index);
BigInt rank_of(const FType& x);

// The f-type of a vertex: level v, entry for the (u-1)-subset S of {0..v-1}
// taken from the oracle label of S + {v}, truncated to the marker when the
// label reaches f(max S).
FType type_of_vertex(const HypergraphOracle& oracle, const GrowthRef& growth, Vertex v);

} // namespace tft
