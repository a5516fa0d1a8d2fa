#pragma once

#include <compare>
#include <string>
#include <utility>

#include "tft/bigint.hpp"

namespace tft {

// An edge label extended with the missing-information marker. A Label is
// either the marker (star) or a nonnegative arbitrary-precision integer;
// star compares before every integer and equals nothing but itself.
class Label {
public:
    Label() : star_(true) {}

    static Label star() { return Label(); }

    static Label of(BigInt value) {
        if (value < 0) throw std::invalid_argument("Label: negative value");
        Label l;
        l.star_ = false;
        l.value_ = std::move(value);
        return l;
    }

    static Label of_u64(std::uint64_t value) { return of(BigInt(value)); }

    bool is_star() const { return star_; }

    const BigInt& value() const {
        if (star_) throw std::invalid_argument("Label: star has no integer value");
        return value_;
    }

    friend bool operator==(const Label& a, const Label& b) {
        if (a.star_ != b.star_) return false;
        return a.star_ || a.value_ == b.value_;
    }
    friend bool operator!=(const Label& a, const Label& b) { return !(a == b); }

    // star < 0 < 1 < ... ; the fixed total order behind enumeration.
    friend bool operator<(const Label& a, const Label& b) {
        if (a.star_) return !b.star_;
        if (b.star_) return false;
        return a.value_ < b.value_;
    }

    std::string to_string() const { return star_ ? "*" : big_to_string(value_); }

    static Label parse(const std::string& text);

private:
    bool star_;
    BigInt value_;
};

} // namespace tft
