#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tft/ftype.hpp"

namespace tft {

// Read-only store of vertex types for one (oracle, growth) pair. Build the
// needed range up front; lookups after that are const and safe to share
// across workers.
class TypeCache {
public:
    TypeCache(const HypergraphOracle& oracle, GrowthRef growth);

    // Materializes types for vertices [0, count). Guarded by the total
    // number of letter entries kept (doubly-exponential-safe, fails loudly).
    void build(Vertex count, std::uint64_t entry_guard = 20'000'000);

    Vertex built() const { return static_cast<Vertex>(types_.size()); }
    const FType& at(Vertex v) const;
    const HypergraphOracle& oracle() const { return *oracle_; }
    const GrowthRef& growth() const { return growth_; }

private:
    const HypergraphOracle* oracle_;
    GrowthRef growth_;
    std::vector<FType> types_;
};

// One record of the height procedure: the pair that was met, the meet, its
// level, and whether the ambient type of that level matched.
struct HeightStep {
    FType x;
    FType y;
    FType met;
    Level meet_level;
    bool terminated;
};

struct HeightTrace {
    std::vector<HeightStep> steps;
    std::uint32_t height = 0; // equals steps.size(); minimum is 1
};

// Iterated meet-then-compare of Definition "f-height": replace the meet by
// the ambient type of its level until they coincide. The count of meet
// steps is the height; the convention here counts the first meet, so the
// minimum height is 1.
HeightTrace f_height_types(const TypeCache& cache, const FType& x, const FType& y);
HeightTrace f_height_types(const HypergraphOracle& oracle, const GrowthRef& growth,
                           const FType& x, const FType& y);

std::uint32_t vertex_height(const TypeCache& cache, Vertex v, Vertex w);
std::uint32_t vertex_height(const HypergraphOracle& oracle, const GrowthRef& growth,
                            Vertex v, Vertex w);

// The persistent coloring: f-height of the pair, mod n.
std::uint32_t chi_n(const TypeCache& cache, std::uint32_t n, Vertex v, Vertex w);
std::uint32_t chi_n(const HypergraphOracle& oracle, const GrowthRef& growth,
                    std::uint32_t n, Vertex v, Vertex w);

// Pair selection for spectra. The label filter applies only when u = 2.
struct PairFilter {
    enum class Kind { All, LabelEquals };
    Kind kind = Kind::All;
    BigInt label;

    static PairFilter all() { return {}; }
    static PairFilter label_equals(BigInt c) {
        PairFilter f;
        f.kind = Kind::LabelEquals;
        f.label = std::move(c);
        return f;
    }
};

struct SpectrumOptions {
    std::vector<Vertex> subjects;     // vertex set S
    PairFilter filter;
    std::uint64_t sample_cap = 100'000;
    std::uint32_t modulus = 2;        // n of the coloring classes reported
    std::uint32_t workers = 0;        // 0 = hardware concurrency
    std::uint64_t cache_entry_guard = 20'000'000;
};

struct SpectrumResult {
    std::map<std::uint32_t, std::uint64_t> histogram; // height -> pair count
    std::vector<std::uint64_t> color_counts;          // chi_n class sizes
    std::vector<std::uint32_t> realized_heights;
    std::uint32_t max_consecutive = 0; // largest H with {1..H} all realized
    std::uint64_t pair_universe = 0;   // |S| choose 2
    std::uint64_t pairs_examined = 0;  // after sampling, before filter
    std::uint64_t pairs_counted = 0;   // after filter
    bool sampled = false;
    bool empty_after_filter = false;
};

// Height histogram over (sampled) pairs of S passing the filter. When the
// pair universe exceeds sample_cap, pairs are drawn uniformly from a stream
// derived from the oracle seed; draw t is a pure function of (seed, t), so
// the result does not depend on the worker count.
SpectrumResult height_spectrum(const HypergraphOracle& oracle, const GrowthRef& growth,
                               const SpectrumOptions& options);

enum class WitnessVariant {
    Strict,   // meet of the pair's types equals the vertex's own type
    LevelOnly // level of the meet equals the vertex id
};

struct WitnessResult {
    std::optional<std::pair<Vertex, Vertex>> pair; // first hit in lex order
    std::uint64_t pairs_checked = 0;
};

// First pair (a, b), a < b, from the candidate set whose meet of types sits
// exactly at level v (and equals the type of v in the strict variant).
WitnessResult meet_witness_search(const TypeCache& cache, Vertex v,
                                  std::span<const Vertex> candidates,
                                  WitnessVariant variant);

struct WitnessScan {
    struct Row {
        Vertex v;
        std::optional<std::pair<Vertex, Vertex>> pair;
        std::uint64_t pairs_checked;
        std::uint64_t plants_above; // planted vertices whose type extends tp(v)
    };
    std::vector<Row> rows;
    std::uint64_t found = 0;
    std::vector<Vertex> exceptions; // scanned vertices with no witness
};

// Runs the witness search for every v in [0, v_end) against candidates
// {v+1, ..., n-1} and reports the exception set.
WitnessScan witness_scan(const TypeCache& cache, Vertex v_end, Vertex n,
                         WitnessVariant variant);

} // namespace tft
