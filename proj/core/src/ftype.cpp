#include "tft/ftype.hpp"

#include <algorithm>

#include "tft/errors.hpp"

namespace tft {

namespace {

constexpr std::uint64_t kTypeEntryGuard = std::uint64_t(1) << 25;

void require_same_growth(const FType& x, const FType& y, const char* op) {
    if (!GrowthFunction::same_function(*x.growth(), *y.growth())) {
        throw std::invalid_argument(std::string(op) + ": mismatched growth function");
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

std::uint64_t entries_at_position(std::uint32_t u, Level position) {
    return binomial_u64(position, u - 2);
}

std::uint64_t entry_offset(std::uint32_t u, Level position) {
    return binomial_u64(position, u - 1);
}

FType FType::root(GrowthRef growth) {
    if (!growth) throw std::invalid_argument("type: null growth function");
    return FType(std::move(growth), 0, {});
}

FType FType::from_entries(GrowthRef growth, Level level, std::vector<Label> entries) {
    if (!growth) throw std::invalid_argument("type: null growth function");
    if (level > growth->lmax() + 1) {
        throw std::invalid_argument("type: level beyond the growth function range");
    }
    const std::uint32_t u = growth->uniformity();
    const std::uint64_t expected = entry_offset(u, level);
    if (expected > kTypeEntryGuard) {
        throw GuardError("type: " + std::to_string(expected) +
                         " entries at level " + std::to_string(level) +
                         " exceed the representation guard");
    }
    if (entries.size() != expected) {
        throw std::invalid_argument("type: entry count does not match the level");
    }
    std::uint64_t slot = 0;
    for (Level i = 0; i < level; ++i) {
        const std::uint64_t count = entries_at_position(u, i);
        for (std::uint64_t s = 0; s < count; ++s, ++slot) {
            const Label& entry = entries[slot];
            if (!entry.is_star() && growth->truncates(i, entry.value())) {
                throw std::invalid_argument("type: entry at position " + std::to_string(i) +
                                            " is not below f(" + std::to_string(i) + ")");
            }
        }
    }
    return FType(std::move(growth), level, std::move(entries));
}

std::uint32_t FType::uniformity() const { return growth_->uniformity(); }

std::span<const Label> FType::letter(Level position) const {
    if (position >= level_) throw std::invalid_argument("type: letter position beyond level");
    const std::uint64_t off = entry_offset(uniformity(), position);
    return std::span<const Label>(entries_).subspan(off, entries_at_position(uniformity(), position));
}

FType FType::restrict_to(Level level) const {
    if (level > level_) {
        throw std::invalid_argument("restrict: target level exceeds the type level");
    }
    if (level == level_) return *this;
    const std::uint64_t keep = entry_offset(uniformity(), level);
    return FType(growth_, level,
                 std::vector<Label>(entries_.begin(), entries_.begin() + keep));
}

bool operator==(const FType& a, const FType& b) {
    return a.level_ == b.level_ && a.entries_ == b.entries_ &&
           GrowthFunction::same_function(*a.growth_, *b.growth_);
}

int FType::compare(const FType& a, const FType& b) {
    require_same_growth(a, b, "compare");
    const std::size_t common = std::min(a.entries_.size(), b.entries_.size());
    for (std::size_t s = 0; s < common; ++s) {
        if (a.entries_[s] < b.entries_[s]) return -1;
        if (b.entries_[s] < a.entries_[s]) return 1;
    }
    if (a.level_ < b.level_) return -1;
    if (a.level_ > b.level_) return 1;
    return 0;
}

std::string FType::to_string() const {
    std::string out;
    std::uint64_t slot = 0;
    for (Level i = 0; i < level_; ++i) {
        if (i > 0) out += '|';
        const std::uint64_t count = entries_at_position(uniformity(), i);
        for (std::uint64_t s = 0; s < count; ++s, ++slot) {
            if (s > 0) out += ',';
            out += entries_[slot].to_string();
        }
    }
    return out;
}

FType FType::from_string(GrowthRef growth, Level level, const std::string& text) {
    if (!growth) throw std::invalid_argument("type: null growth function");
    if (level == 0) {
        if (!text.empty()) throw FormatError("type text: the root renders as an empty string");
        return root(std::move(growth));
    }
    const std::uint32_t u = growth->uniformity();
    const auto segments = split(text, '|');
    if (segments.size() != level) {
        throw FormatError("type text: expected " + std::to_string(level) +
                          " letters, found " + std::to_string(segments.size()));
    }
    std::vector<Label> entries;
    entries.reserve(entry_offset(u, level));
    for (Level i = 0; i < level; ++i) {
        const std::uint64_t count = entries_at_position(u, i);
        if (count == 0) {
            if (!segments[i].empty()) {
                throw FormatError("type text: letter " + std::to_string(i) + " must be empty");
            }
            continue;
        }
        const auto parts = split(segments[i], ',');
        if (parts.size() != count) {
            throw FormatError("type text: letter " + std::to_string(i) + " needs " +
                              std::to_string(count) + " entries");
        }
        for (const auto& part : parts) entries.push_back(Label::parse(part));
    }
    return from_entries(std::move(growth), level, std::move(entries));
}

FType meet(const FType& x, const FType& y) {
    require_same_growth(x, y, "meet");
    const Level common = std::min(x.level(), y.level());
    const std::uint32_t u = x.uniformity();
    std::uint64_t slot = 0;
    const auto xe = x.entries();
    const auto ye = y.entries();
    for (Level i = 0; i < common; ++i) {
        const std::uint64_t count = entries_at_position(u, i);
        for (std::uint64_t s = 0; s < count; ++s) {
            if (xe[slot + s] != ye[slot + s]) return x.restrict_to(i);
        }
        slot += count;
    }
    return x.restrict_to(common);
}

bool is_prefix(const FType& x, const FType& y) {
    require_same_growth(x, y, "is_prefix");
    if (x.level() > y.level()) return false;
    const auto xe = x.entries();
    const auto ye = y.entries();
    return std::equal(xe.begin(), xe.end(), ye.begin());
}

namespace {

// Odometer over the flat slot layout: slot values run marker, 0, ..., f(i)-1
// in order, with the first slot most significant, which is exactly the
// lexicographic order over letter sequences.
struct LevelOdometer {
    const GrowthRef& growth;
    Level level;
    std::vector<Level> slot_position;
    std::vector<BigInt> digits; // 0 = marker, d >= 1 = value d-1
    std::vector<Label> entries;

    LevelOdometer(const GrowthRef& g, Level l) : growth(g), level(l) {
        const std::uint32_t u = g->uniformity();
        for (Level i = 0; i < level; ++i) {
            const std::uint64_t count = entries_at_position(u, i);
            for (std::uint64_t s = 0; s < count; ++s) slot_position.push_back(i);
        }
        digits.assign(slot_position.size(), BigInt(0));
        entries.assign(slot_position.size(), Label::star());
    }

    bool advance() {
        for (std::size_t s = slot_position.size(); s-- > 0;) {
            if (digits[s] < growth->value(slot_position[s])) {
                ++digits[s];
                entries[s] = Label::of(digits[s] - 1);
                return true;
            }
            digits[s] = 0;
            entries[s] = Label::star();
        }
        return false;
    }
};

} // namespace

void for_each_type_at_level(const GrowthRef& growth, Level level, std::uint64_t guard,
                            const std::function<void(const FType&)>& fn) {
    if (!growth) throw std::invalid_argument("enumerate: null growth function");
    const BigInt count = growth->level_count(level);
    if (count > guard) {
        throw GuardError("enumerate: level " + std::to_string(level) + " holds " +
                         big_to_string(count) + " types, beyond the guard of " +
                         std::to_string(guard));
    }
    LevelOdometer odo(growth, level);
    do {
        fn(FType::from_entries(growth, level, odo.entries));
    } while (odo.advance());
}

std::vector<FType> enumerate_level(const GrowthRef& growth, Level level, std::uint64_t guard) {
    std::vector<FType> out;
    for_each_type_at_level(growth, level, guard, [&](const FType& t) { out.push_back(t); });
    return out;
}

std::vector<FType> immediate_successors(const FType& x, std::uint64_t guard) {
    const GrowthRef& growth = x.growth();
    const Level next = x.level() + 1;
    if (next > growth->lmax() + 1) {
        throw std::invalid_argument("successors: level beyond the growth function range");
    }
    const BigInt count = growth->successor_count(x.level());
    if (count > guard) {
        throw GuardError("successors: node at level " + std::to_string(x.level()) + " has " +
                         big_to_string(count) + " extensions, beyond the guard of " +
                         std::to_string(guard));
    }
    const std::uint32_t u = growth->uniformity();
    const std::uint64_t new_slots = entries_at_position(u, x.level());

    std::vector<FType> out;
    std::vector<BigInt> digits(new_slots, BigInt(0));
    std::vector<Label> entries(x.entries().begin(), x.entries().end());
    entries.resize(entries.size() + new_slots, Label::star());
    const std::size_t base = entries.size() - new_slots;
    for (;;) {
        out.push_back(FType::from_entries(growth, next, entries));
        std::size_t s = new_slots;
        bool carried = true;
        while (s-- > 0) {
            if (digits[s] < growth->value(x.level())) {
                ++digits[s];
                entries[base + s] = Label::of(digits[s] - 1);
                carried = false;
                break;
            }
            digits[s] = 0;
            entries[base + s] = Label::star();
        }
        if (carried) break;
    }
    return out;
}

FType type_at(const GrowthRef& growth, Level level, const BigInt& index) {
    if (!growth) throw std::invalid_argument("type_at: null growth function");
    if (index < 0 || index >= growth->level_count(level)) {
        throw std::invalid_argument("type_at: index outside the level");
    }
    const std::uint32_t u = growth->uniformity();
    const std::uint64_t slots = entry_offset(u, level);
    std::vector<Label> entries(slots, Label::star());
    BigInt rest = index;
    std::uint64_t slot = slots;
    for (Level i = level; i-- > 0;) {
        const std::uint64_t count = entries_at_position(u, i);
        const BigInt radix = growth->value(i) + 1;
        for (std::uint64_t s = 0; s < count; ++s) {
            --slot;
            const BigInt digit = rest % radix;
            rest /= radix;
            entries[slot] = digit == 0 ? Label::star() : Label::of(digit - 1);
        }
    }
    return FType::from_entries(growth, level, std::move(entries));
}

BigInt rank_of(const FType& x) {
    const GrowthRef& growth = x.growth();
    const std::uint32_t u = growth->uniformity();
    BigInt rank = 0;
    std::uint64_t slot = 0;
    for (Level i = 0; i < x.level(); ++i) {
        const std::uint64_t count = entries_at_position(u, i);
        const BigInt radix = growth->value(i) + 1;
        for (std::uint64_t s = 0; s < count; ++s, ++slot) {
            const Label& entry = x.entries()[slot];
            rank = rank * radix + (entry.is_star() ? BigInt(0) : entry.value() + 1);
        }
    }
    return rank;
}

FType type_of_vertex(const HypergraphOracle& oracle, const GrowthRef& growth, Vertex v) {
    if (!growth) throw std::invalid_argument("type_of_vertex: null growth function");
    if (oracle.uniformity() != growth->uniformity()) {
        throw std::invalid_argument("type_of_vertex: oracle and growth uniformity mismatch");
    }
    if (v > growth->lmax()) {
        throw std::invalid_argument("type_of_vertex: vertex " + big_to_string(BigInt(v)) +
                                    " exceeds the growth function range");
    }
    const std::uint32_t u = growth->uniformity();
    const Level level = static_cast<Level>(v);
    const std::uint64_t slots = entry_offset(u, level);
    if (slots > kTypeEntryGuard) {
        throw GuardError("type_of_vertex: type of vertex " + std::to_string(v) + " needs " +
                         std::to_string(slots) + " entries, beyond the representation guard");
    }
    std::vector<Label> entries;
    entries.reserve(slots);
    std::vector<Vertex> edge(u);
    edge[u - 1] = v;
    // Position-major, colex within a position: exactly the slot layout.
    for (Level i = u - 2; i < level; ++i) {
        edge[u - 2] = i;
        if (u == 2) {
            const BigInt label = oracle.edge_label(edge);
            entries.push_back(growth->truncates(i, label) ? Label::star() : Label::of(label));
            continue;
        }
        std::vector<Vertex> rest(u - 2);
        for (std::uint32_t t = 0; t + 2 < u; ++t) rest[t] = t;
        bool more = i >= u - 2;
        while (more) {
            for (std::uint32_t t = 0; t + 2 < u; ++t) edge[t] = rest[t];
            const BigInt label = oracle.edge_label(edge);
            entries.push_back(growth->truncates(i, label) ? Label::star() : Label::of(label));
            more = detail::next_subset_colex(rest, i);
        }
    }
    return FType::from_entries(growth, level, std::move(entries));
}

} // namespace tft
