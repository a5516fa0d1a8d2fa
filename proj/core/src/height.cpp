#include "tft/height.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "tft/errors.hpp"
#include "tft/parallel.hpp"

namespace tft {

TypeCache::TypeCache(const HypergraphOracle& oracle, GrowthRef growth)
    : oracle_(&oracle), growth_(std::move(growth)) {
    if (!growth_) throw std::invalid_argument("type cache: null growth function");
}

void TypeCache::build(Vertex count, std::uint64_t entry_guard) {
    const std::uint32_t u = growth_->uniformity();
    std::uint64_t entries = 0;
    for (Vertex v = 0; v < count; ++v) entries += entry_offset(u, static_cast<Level>(v));
    if (entries > entry_guard) {
        throw GuardError("type cache: " + std::to_string(count) + " vertex types need " +
                         std::to_string(entries) + " entries, beyond the guard of " +
                         std::to_string(entry_guard));
    }
    types_.reserve(count);
    for (Vertex v = types_.size(); v < count; ++v) {
        types_.push_back(type_of_vertex(*oracle_, growth_, v));
    }
}

const FType& TypeCache::at(Vertex v) const {
    if (v >= types_.size()) {
        throw std::invalid_argument("type cache: vertex " + std::to_string(v) + " not built");
    }
    return types_[v];
}

namespace {

// The iterated meet procedure; the provider serves the ambient type of a
// level. Returns the height; appends the full record when trace is nonnull.
// Only meets are materialized; the inputs and ambient types travel by
// reference (the ambient reference must stay valid until the next call).
template <typename Provider>
std::uint32_t height_core(Provider&& ambient, const FType& x0, const FType& y0,
                          std::vector<HeightStep>* trace) {
    const FType* x = &x0;
    const FType* y = &y0;
    FType held = FType::root(x0.growth());
    std::uint32_t height = 0;
    Level previous_level = 0;
    for (;;) {
        FType met = meet(*x, *y);
        ++height;
        if (height > 1 && met.level() >= previous_level) {
            throw std::logic_error("height: meet levels failed to decrease");
        }
        previous_level = met.level();
        // Record before fetching the ambient type: the provider may reuse
        // the buffer x still points to.
        if (trace) trace->push_back(HeightStep{*x, *y, met, met.level(), false});
        const FType& ambient_type = ambient(static_cast<Vertex>(met.level()));
        const bool terminated = ambient_type == met;
        if (trace) trace->back().terminated = terminated;
        if (terminated) return height;
        held = std::move(met);
        x = &ambient_type;
        y = &held;
    }
}

void require_typed_over(const TypeCache& cache, const FType& x, const char* op) {
    if (!GrowthFunction::same_function(*cache.growth(), *x.growth())) {
        throw std::invalid_argument(std::string(op) + ": type not over the cache's growth function");
    }
}

} // namespace

HeightTrace f_height_types(const TypeCache& cache, const FType& x, const FType& y) {
    require_typed_over(cache, x, "f_height");
    require_typed_over(cache, y, "f_height");
    HeightTrace trace;
    trace.height = height_core([&](Vertex v) -> const FType& { return cache.at(v); }, x, y,
                               &trace.steps);
    return trace;
}

HeightTrace f_height_types(const HypergraphOracle& oracle, const GrowthRef& growth,
                           const FType& x, const FType& y) {
    if (!GrowthFunction::same_function(*growth, *x.growth()) ||
        !GrowthFunction::same_function(*growth, *y.growth())) {
        throw std::invalid_argument("f_height: mismatched growth function");
    }
    HeightTrace trace;
    FType scratch = FType::root(growth);
    auto ambient = [&](Vertex v) -> const FType& {
        scratch = type_of_vertex(oracle, growth, v);
        return scratch;
    };
    trace.height = height_core(ambient, x, y, &trace.steps);
    return trace;
}

std::uint32_t vertex_height(const TypeCache& cache, Vertex v, Vertex w) {
    if (v == w) throw std::invalid_argument("vertex_height: the two vertices must differ");
    return height_core([&](Vertex z) -> const FType& { return cache.at(z); }, cache.at(v),
                       cache.at(w), nullptr);
}

std::uint32_t vertex_height(const HypergraphOracle& oracle, const GrowthRef& growth,
                            Vertex v, Vertex w) {
    if (v == w) throw std::invalid_argument("vertex_height: the two vertices must differ");
    FType scratch = FType::root(growth);
    auto ambient = [&](Vertex z) -> const FType& {
        scratch = type_of_vertex(oracle, growth, z);
        return scratch;
    };
    return height_core(ambient, type_of_vertex(oracle, growth, v),
                       type_of_vertex(oracle, growth, w), nullptr);
}

std::uint32_t chi_n(const TypeCache& cache, std::uint32_t n, Vertex v, Vertex w) {
    if (n == 0) throw std::invalid_argument("chi: modulus must be at least 1");
    return vertex_height(cache, v, w) % n;
}

std::uint32_t chi_n(const HypergraphOracle& oracle, const GrowthRef& growth, std::uint32_t n,
                    Vertex v, Vertex w) {
    if (n == 0) throw std::invalid_argument("chi: modulus must be at least 1");
    return vertex_height(oracle, growth, v, w) % n;
}

namespace {

// Colex unranking of an unordered index pair: r = C(b,2) + a with a < b.
std::pair<std::uint64_t, std::uint64_t> unrank_pair(std::uint64_t r) {
    auto pairs_below = [](std::uint64_t b) { return (b % 2 == 0) ? (b / 2) * (b - 1) : b * ((b - 1) / 2); };
    std::uint64_t b = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(r))) / 2.0);
    while (b > 1 && pairs_below(b) > r) --b;
    while (pairs_below(b + 1) <= r) ++b;
    return {r - pairs_below(b), b};
}

std::uint64_t uniform_below(std::uint64_t hash, std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(hash) * static_cast<unsigned __int128>(bound)) >> 64);
}

} // namespace

SpectrumResult height_spectrum(const HypergraphOracle& oracle, const GrowthRef& growth,
                               const SpectrumOptions& options) {
    if (options.modulus == 0) throw std::invalid_argument("spectrum: modulus must be at least 1");
    if (options.filter.kind == PairFilter::Kind::LabelEquals && oracle.uniformity() != 2) {
        throw std::invalid_argument("spectrum: the label filter applies only when u = 2");
    }
    std::vector<Vertex> subjects = options.subjects;
    std::sort(subjects.begin(), subjects.end());
    subjects.erase(std::unique(subjects.begin(), subjects.end()), subjects.end());

    SpectrumResult result;
    result.color_counts.assign(options.modulus, 0);
    if (subjects.size() < 2) {
        result.empty_after_filter = true;
        return result;
    }

    TypeCache cache(oracle, growth);
    cache.build(subjects.back() + 1, options.cache_entry_guard);

    const std::uint64_t universe = binomial_u64(subjects.size(), 2);
    result.pair_universe = universe;
    result.sampled = universe > options.sample_cap;
    const std::uint64_t draws = result.sampled ? options.sample_cap : universe;
    result.pairs_examined = draws;

    const std::uint64_t sample_key =
        detail::mix64(oracle.seed() ^ 0x7a3c5565c0f3a21bull);

    std::mutex merge_mutex;
    detail::parallel_chunks(
        draws, 4096, options.workers,
        [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
            std::map<std::uint32_t, std::uint64_t> local_hist;
            std::vector<std::uint64_t> local_colors(options.modulus, 0);
            std::uint64_t local_counted = 0;
            std::vector<Vertex> edge(2);
            for (std::uint64_t t = begin; t < end; ++t) {
                const std::uint64_t rank =
                    result.sampled ? uniform_below(detail::mix64(sample_key + t), universe) : t;
                const auto [ai, bi] = unrank_pair(rank);
                const Vertex v = subjects[ai];
                const Vertex w = subjects[bi];
                if (options.filter.kind == PairFilter::Kind::LabelEquals) {
                    edge[0] = std::min(v, w);
                    edge[1] = std::max(v, w);
                    if (oracle.edge_label(edge) != options.filter.label) continue;
                }
                const std::uint32_t h = vertex_height(cache, v, w);
                ++local_hist[h];
                ++local_colors[h % options.modulus];
                ++local_counted;
            }
            std::lock_guard<std::mutex> lock(merge_mutex);
            for (const auto& [h, c] : local_hist) result.histogram[h] += c;
            for (std::uint32_t i = 0; i < options.modulus; ++i) {
                result.color_counts[i] += local_colors[i];
            }
            result.pairs_counted += local_counted;
        });

    for (const auto& [h, c] : result.histogram) result.realized_heights.push_back(h);
    while (result.histogram.count(result.max_consecutive + 1) != 0) ++result.max_consecutive;
    result.empty_after_filter = result.pairs_counted == 0;
    return result;
}

WitnessResult meet_witness_search(const TypeCache& cache, Vertex v,
                                  std::span<const Vertex> candidates,
                                  WitnessVariant variant) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i] <= v) {
            throw std::invalid_argument("witness search: candidates must exceed the vertex");
        }
        if (i > 0 && candidates[i - 1] >= candidates[i]) {
            throw std::invalid_argument("witness search: candidates must ascend");
        }
    }
    const FType& own = cache.at(v);
    WitnessResult result;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            const FType met = meet(cache.at(candidates[i]), cache.at(candidates[j]));
            ++result.pairs_checked;
            const bool hit = variant == WitnessVariant::LevelOnly
                                 ? met.level() == static_cast<Level>(v)
                                 : met == own;
            if (hit) {
                result.pair = std::make_pair(candidates[i], candidates[j]);
                return result;
            }
        }
    }
    return result;
}

WitnessScan witness_scan(const TypeCache& cache, Vertex v_end, Vertex n,
                         WitnessVariant variant) {
    WitnessScan scan;
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    for (Vertex v = 0; v < v_end; ++v) {
        std::span<const Vertex> candidates(all.begin() + v + 1, all.end());
        WitnessScan::Row row;
        row.v = v;
        const WitnessResult found = meet_witness_search(cache, v, candidates, variant);
        row.pair = found.pair;
        row.pairs_checked = found.pairs_checked;
        row.plants_above = 0;
        const FType& own = cache.at(v);
        for (Vertex p = v + 1; p < n; ++p) {
            if (cache.oracle().plant_of(p) && is_prefix(own, cache.at(p))) ++row.plants_above;
        }
        if (found.pair) {
            ++scan.found;
        } else {
            scan.exceptions.push_back(v);
        }
        scan.rows.push_back(std::move(row));
    }
    return scan;
}

} // namespace tft
