#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tft/growth.hpp"
#include "tft/hypergraph.hpp"

namespace tft {

enum class OracleMode { Random, Generic, Table };

// A pure, seeded labeling of all u-subsets of the naturals: the working
// stand-in for one fixed enumeration of the countable universal structure.
//
// Random mode draws every label from the geometric(1/2) rule: the label is
// the index of the first set bit of a keyed 64-bit hash of (seed, edge),
// capped at 63.
//
// Generic mode additionally plants one vertex per f-type of level <= lambda,
// in level-major order (lex within a level), and pins that vertex's labels
// toward {0..level-1} so the type is realized; a marker entry is planted as
// the concrete label f(i), the least value that truncates. All other labels
// fall back to the random rule.
//
// Table mode serves labels from an explicit finite hypergraph and rejects
// queries outside it. Repeated queries always return identical labels.
class HypergraphOracle {
public:
    static HypergraphOracle random(std::uint32_t u, std::uint64_t seed);
    static HypergraphOracle generic(std::uint32_t u, std::uint64_t seed,
                                    std::uint32_t lambda, GrowthRef growth);
    static HypergraphOracle table(FiniteHypergraph h, std::uint64_t seed = 0);

    std::uint32_t uniformity() const { return u_; }
    std::uint64_t seed() const { return seed_; }
    OracleMode mode() const { return mode_; }
    std::uint32_t lambda() const { return lambda_; }
    const GrowthRef& plant_growth() const { return growth_; }

    // Total number of planted vertices (generic mode; 0 otherwise).
    std::uint64_t plant_count() const;

    // Level and in-level index of a planted vertex, or nullopt.
    std::optional<std::pair<std::uint32_t, std::uint64_t>> plant_of(Vertex v) const;

    // The label of a u-subset. Pure in (seed, mode, parameters, edge).
    BigInt edge_label(std::span<const Vertex> edge) const;
    BigInt edge_label(const EdgeSet& edge) const { return edge_label(edge.vertices()); }

    // The finite prefix on {0..n-1} agreeing with edge_label everywhere.
    FiniteHypergraph materialize_prefix(std::uint64_t n) const;

    // Largest vertex the oracle can label (bounded only in table mode).
    std::optional<std::uint64_t> vertex_bound() const;

    // Descriptor JSON: {"u": int, "seed": uint64, "mode": "random"|"generic",
    // "lambda": int}. Table oracles have no descriptor (their data travels as
    // a hypergraph file); generic descriptors imply the minimal growth
    // function with lmax = lambda.
    std::string descriptor_json() const;
    static HypergraphOracle from_descriptor_json(const std::string& text);

private:
    HypergraphOracle() = default;

    std::uint32_t u_ = 2;
    std::uint64_t seed_ = 0;
    OracleMode mode_ = OracleMode::Random;
    std::uint32_t lambda_ = 0;
    GrowthRef growth_;
    std::shared_ptr<const FiniteHypergraph> table_;

    struct PlantLevel {
        std::uint64_t first_vertex = 0; // id of the first plant of this level
        std::uint64_t count = 0;
        std::vector<BigInt> radix;  // per slot, position-major colex layout
        std::vector<BigInt> suffix; // suffix[s] = prod of radix[s..]
    };
    std::vector<PlantLevel> plants_;
    std::uint64_t plant_total_ = 0;

    void build_plants();
    BigInt random_label(std::span<const Vertex> edge) const;
    std::optional<BigInt> planted_label(std::span<const Vertex> edge) const;
};

namespace detail {

std::uint64_t mix64(std::uint64_t x);
std::uint64_t edge_key(std::uint64_t seed, std::span<const Vertex> edge);

// Index of the first set bit, capped at 63; the geometric(1/2) sampler.
std::uint32_t label_from_hash(std::uint64_t h);

} // namespace detail

} // namespace tft
