#include "tft/oracle.hpp"

#include <algorithm>
#include <bit>

#include "json.hpp"

#include "tft/errors.hpp"

namespace tft {

namespace detail {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t edge_key(std::uint64_t seed, std::span<const Vertex> edge) {
    std::uint64_t h = mix64(seed ^ 0x8f1bbcdcbfa53e0bull);
    for (Vertex v : edge) h = mix64(h ^ (v + 0x9e3779b97f4a7c15ull));
    return h;
}

std::uint32_t label_from_hash(std::uint64_t h) {
    return static_cast<std::uint32_t>(std::min(std::countr_zero(h), 63));
}

} // namespace detail

namespace {

constexpr std::uint64_t kPlantGuard = std::uint64_t(1) << 62;

void require_edge(std::span<const Vertex> edge, std::uint32_t u) {
    if (edge.size() != u) {
        throw std::invalid_argument("oracle: edge set arity does not match the uniformity");
    }
    for (std::size_t i = 1; i < edge.size(); ++i) {
        if (edge[i - 1] >= edge[i]) {
            throw std::invalid_argument("oracle: edge set vertices must be strictly increasing");
        }
    }
}

} // namespace

HypergraphOracle HypergraphOracle::random(std::uint32_t u, std::uint64_t seed) {
    if (u < 2) throw std::invalid_argument("oracle: uniformity must be at least 2");
    HypergraphOracle o;
    o.u_ = u;
    o.seed_ = seed;
    o.mode_ = OracleMode::Random;
    return o;
}

HypergraphOracle HypergraphOracle::generic(std::uint32_t u, std::uint64_t seed,
                                           std::uint32_t lambda, GrowthRef growth) {
    if (u < 2) throw std::invalid_argument("oracle: uniformity must be at least 2");
    if (!growth) throw std::invalid_argument("oracle: generic mode needs a growth function");
    if (growth->uniformity() != u) {
        throw std::invalid_argument("oracle: growth function uniformity mismatch");
    }
    if (lambda > growth->lmax()) {
        throw std::invalid_argument("oracle: plant depth beyond the growth function range");
    }
    HypergraphOracle o;
    o.u_ = u;
    o.seed_ = seed;
    o.mode_ = OracleMode::Generic;
    o.lambda_ = lambda;
    o.growth_ = std::move(growth);
    o.build_plants();
    return o;
}

HypergraphOracle HypergraphOracle::table(FiniteHypergraph h, std::uint64_t seed) {
    HypergraphOracle o;
    o.u_ = h.uniformity();
    o.seed_ = seed;
    o.mode_ = OracleMode::Table;
    o.table_ = std::make_shared<const FiniteHypergraph>(std::move(h));
    return o;
}

void HypergraphOracle::build_plants() {
    // One plant per type of level <= lambda, level-major, lex within a level.
    BigInt cumulative = 0;
    plants_.clear();
    for (std::uint32_t level = 0; level <= lambda_; ++level) {
        const BigInt count = growth_->level_count(level);
        cumulative += count;
        if (cumulative > kPlantGuard) {
            throw GuardError("generic oracle: plant table for depth " +
                             std::to_string(lambda_) + " holds " + big_to_string(cumulative) +
                             "+ vertices, beyond the guard");
        }
        PlantLevel pl;
        pl.first_vertex = (cumulative - count).convert_to<std::uint64_t>();
        pl.count = count.convert_to<std::uint64_t>();
        for (std::uint32_t i = 0; i < level; ++i) {
            const std::uint64_t slots = binomial_u64(i, u_ - 2);
            const BigInt radix = growth_->value(i) + 1;
            for (std::uint64_t s = 0; s < slots; ++s) pl.radix.push_back(radix);
        }
        pl.suffix.assign(pl.radix.size() + 1, BigInt(1));
        for (std::size_t s = pl.radix.size(); s-- > 0;) {
            pl.suffix[s] = pl.suffix[s + 1] * pl.radix[s];
        }
        plants_.push_back(std::move(pl));
    }
    plant_total_ = cumulative.convert_to<std::uint64_t>();
}

std::uint64_t HypergraphOracle::plant_count() const { return plant_total_; }

std::optional<std::pair<std::uint32_t, std::uint64_t>>
HypergraphOracle::plant_of(Vertex v) const {
    if (mode_ != OracleMode::Generic || v >= plant_total_) return std::nullopt;
    // Levels are few; a linear scan is fine.
    for (std::uint32_t level = 0; level < plants_.size(); ++level) {
        const PlantLevel& pl = plants_[level];
        if (v < pl.first_vertex + pl.count) return std::make_pair(level, v - pl.first_vertex);
    }
    return std::nullopt;
}

BigInt HypergraphOracle::random_label(std::span<const Vertex> edge) const {
    return BigInt(detail::label_from_hash(detail::edge_key(seed_, edge)));
}

std::optional<BigInt> HypergraphOracle::planted_label(std::span<const Vertex> edge) const {
    const Vertex v = edge.back();
    const auto plant = plant_of(v);
    if (!plant) return std::nullopt;
    const auto [level, index] = *plant;
    if (u_ >= 2 && edge.size() >= 2 && edge[edge.size() - 2] >= level) return std::nullopt;

    // Entry slot of the (u-1)-subset edge \ {v}: its maximum names the
    // position, the rest is ranked colexicographically.
    const std::uint32_t position = static_cast<std::uint32_t>(edge[edge.size() - 2]);
    std::uint64_t slot = binomial_u64(position, u_ - 1); // offset of the letter
    for (std::uint32_t t = 0; t + 2 < u_; ++t) {
        slot += binomial_u64(edge[t], t + 1);
    }

    const PlantLevel& pl = plants_[level];
    const BigInt digit = (BigInt(index) / pl.suffix[slot + 1]) % pl.radix[slot];
    if (digit == 0) return growth_->value(position); // the least label that truncates
    return digit - 1;
}

BigInt HypergraphOracle::edge_label(std::span<const Vertex> edge) const {
    require_edge(edge, u_);
    switch (mode_) {
    case OracleMode::Table:
        return table_->label(edge);
    case OracleMode::Generic:
        if (auto planted = planted_label(edge)) return *planted;
        return random_label(edge);
    case OracleMode::Random:
        return random_label(edge);
    }
    throw std::logic_error("oracle: unknown mode");
}

FiniteHypergraph HypergraphOracle::materialize_prefix(std::uint64_t n) const {
    if (mode_ == OracleMode::Table && n > table_->vertex_count()) {
        throw std::invalid_argument("oracle: prefix extends beyond the table");
    }
    return FiniteHypergraph(u_, n,
                            [this](std::span<const Vertex> edge) { return edge_label(edge); });
}

std::optional<std::uint64_t> HypergraphOracle::vertex_bound() const {
    if (mode_ == OracleMode::Table) return table_->vertex_count();
    return std::nullopt;
}

std::string HypergraphOracle::descriptor_json() const {
    if (mode_ == OracleMode::Table) {
        throw std::invalid_argument("oracle: table mode has no descriptor");
    }
    nlohmann::ordered_json j;
    j["u"] = u_;
    j["seed"] = seed_;
    j["mode"] = mode_ == OracleMode::Random ? "random" : "generic";
    j["lambda"] = lambda_;
    return j.dump(2) + "\n";
}

HypergraphOracle HypergraphOracle::from_descriptor_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("oracle descriptor: ") + e.what());
    }
    if (!j.is_object() || !j.contains("u") || !j.contains("seed") || !j.contains("mode")) {
        throw FormatError("oracle descriptor: expected keys u, seed, mode, lambda");
    }
    if (!j["u"].is_number_unsigned() || !j["seed"].is_number_unsigned() ||
        !j["mode"].is_string()) {
        throw FormatError("oracle descriptor: bad field types");
    }
    const auto u = j["u"].get<std::uint32_t>();
    const auto seed = j["seed"].get<std::uint64_t>();
    const auto mode = j["mode"].get<std::string>();
    if (mode == "random") return random(u, seed);
    if (mode == "generic") {
        if (!j.contains("lambda") || !j["lambda"].is_number_unsigned()) {
            throw FormatError("oracle descriptor: generic mode needs lambda");
        }
        const auto lambda = j["lambda"].get<std::uint32_t>();
        return generic(u, seed, lambda, GrowthFunction::minimal(u, lambda));
    }
    throw FormatError("oracle descriptor: mode must be \"random\" or \"generic\"");
}

} // namespace tft
