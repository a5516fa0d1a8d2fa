#include "tft/growth.hpp"

#include "json.hpp"

#include "tft/errors.hpp"

namespace tft {

namespace {

BigInt checked_pow(const BigInt& base, std::uint64_t exp, std::size_t bit_cap,
                   const char* what) {
    BigInt result = 1;
    BigInt b = base;
    while (exp != 0) {
        if (exp & 1) {
            result *= b;
            if (bit_length(result) > bit_cap) {
                throw GuardError(std::string(what) + " exceeds the precision guard");
            }
        }
        exp >>= 1;
        if (exp != 0) {
            b *= b;
            if (bit_length(b) > bit_cap && exp != 0) {
                throw GuardError(std::string(what) + " exceeds the precision guard");
            }
        }
    }
    return result;
}

} // namespace

GrowthRef GrowthFunction::minimal(std::uint32_t u, std::uint32_t lmax) {
    if (u < 2) throw std::invalid_argument("growth function: uniformity must be at least 2");
    auto f = std::shared_ptr<GrowthFunction>(new GrowthFunction());
    f->u_ = u;
    f->lmax_ = lmax;
    f->kind_ = Kind::Minimal;
    f->valid_ = true;
    f->values_.reserve(std::min<std::uint32_t>(lmax + 1, 64));
    f->values_.push_back(1);
    // f(l) = f(l-1) * (f(l-1)+1)^C(l-1, u-2); values double in bit size per
    // level once they start growing, so materialization stops at the cap and
    // later queries lean on monotonicity.
    for (std::uint32_t l = 1; l <= lmax; ++l) {
        const BigInt& prev = f->values_.back();
        if (bit_length(prev) > kValueBitCap) break;
        try {
            const std::uint64_t e = binomial_u64(l - 1, u - 2);
            BigInt next =
                prev * checked_pow(prev + 1, e, 4 * kValueBitCap, "minimal growth value");
            f->values_.push_back(std::move(next));
        } catch (const GuardError&) {
            break;
        }
    }
    return f;
}

GrowthRef GrowthFunction::custom(std::uint32_t u, std::vector<BigInt> values,
                                 bool allow_invalid) {
    if (u < 2) throw std::invalid_argument("growth function: uniformity must be at least 2");
    if (values.empty()) throw std::invalid_argument("growth function: no values");
    for (const BigInt& v : values) {
        if (v < 1) throw std::invalid_argument("growth function: values must be positive");
    }
    auto f = std::shared_ptr<GrowthFunction>(new GrowthFunction());
    f->u_ = u;
    f->lmax_ = static_cast<std::uint32_t>(values.size() - 1);
    f->kind_ = Kind::Custom;
    f->values_ = std::move(values);
    f->valid_ = f->satisfies_growth_inequality();
    if (!f->valid_ && !allow_invalid) {
        throw std::invalid_argument(
            "growth function violates the product inequality; pass allow_invalid to keep it");
    }
    return f;
}

const BigInt& GrowthFunction::value(std::uint32_t i) const {
    if (i > lmax_) {
        throw std::invalid_argument("growth function: index " + std::to_string(i) +
                                    " beyond lmax " + std::to_string(lmax_));
    }
    if (i >= values_.size()) {
        throw GuardError("growth function: f(" + std::to_string(i) +
                         ") is beyond the materialized range (doubly exponential); "
                         "only truncation queries are answered there");
    }
    return values_[i];
}

bool GrowthFunction::truncates(std::uint32_t i, const BigInt& label) const {
    if (i > lmax_) {
        throw std::invalid_argument("growth function: index " + std::to_string(i) +
                                    " beyond lmax " + std::to_string(lmax_));
    }
    if (i < values_.size()) return label >= values_[i];
    // Minimal values are nondecreasing, so f(i) >= last materialized value.
    const BigInt& floor = values_.back();
    if (label < floor) return false;
    throw GuardError("growth function: cannot compare a label of " +
                     std::to_string(bit_length(label)) +
                     " bits against f beyond the materialized range");
}

BigInt GrowthFunction::level_count(std::uint32_t level) const {
    if (level > lmax_) {
        throw std::invalid_argument("level_count: level beyond the growth function range");
    }
    BigInt product = 1;
    for (std::uint32_t i = 0; i < level; ++i) {
        const std::uint64_t e = binomial_u64(i, u_ - 2);
        if (e == 0) continue;
        product *= checked_pow(value(i) + 1, e, kCountBitCap, "level count");
        if (bit_length(product) > kCountBitCap) {
            throw GuardError("level count exceeds the precision guard");
        }
    }
    return product;
}

BigInt GrowthFunction::successor_count(std::uint32_t level) const {
    if (level > lmax_) {
        throw std::invalid_argument("successor_count: level beyond the growth function range");
    }
    const std::uint64_t e = binomial_u64(level, u_ - 2);
    if (e == 0) return 1;
    return checked_pow(value(level) + 1, e, kCountBitCap, "successor count");
}

bool GrowthFunction::satisfies_growth_inequality() const {
    BigInt product = 1;
    for (std::uint32_t l = 0; l < values_.size(); ++l) {
        if (values_[l] < product) return false;
        const std::uint64_t e = binomial_u64(l, u_ - 2);
        if (e != 0) {
            product *= checked_pow(values_[l] + 1, e, kCountBitCap, "growth validation");
            if (bit_length(product) > kCountBitCap) {
                throw GuardError("growth validation exceeds the precision guard");
            }
        }
    }
    return true;
}

std::string GrowthFunction::to_json() const {
    nlohmann::ordered_json j;
    j["u"] = u_;
    auto values = nlohmann::ordered_json::array();
    for (const BigInt& v : values_) values.push_back(big_to_string(v));
    j["values"] = std::move(values);
    return j.dump(2) + "\n";
}

GrowthRef GrowthFunction::from_json(const std::string& text, bool allow_invalid) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("growth JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("u") || !j.contains("values") ||
        !j["u"].is_number_unsigned() || !j["values"].is_array()) {
        throw FormatError("growth JSON: expected {\"u\": int, \"values\": [..]}");
    }
    std::vector<BigInt> values;
    values.reserve(j["values"].size());
    for (const auto& v : j["values"]) {
        if (!v.is_string()) throw FormatError("growth JSON: values must be decimal strings");
        values.push_back(big_from_string(v.get<std::string>()));
    }
    try {
        return custom(j["u"].get<std::uint32_t>(), std::move(values), allow_invalid);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("growth JSON: ") + e.what());
    }
}

bool GrowthFunction::same_function(const GrowthFunction& a, const GrowthFunction& b) {
    if (&a == &b) return true;
    return a.u_ == b.u_ && a.lmax_ == b.lmax_ && a.kind_ == b.kind_ && a.values_ == b.values_;
}

} // namespace tft
