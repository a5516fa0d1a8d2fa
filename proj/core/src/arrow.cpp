#include "tft/arrow.hpp"

#include <algorithm>
#include <atomic>

#include "json.hpp"

#include "tft/errors.hpp"
#include "tft/parallel.hpp"

namespace tft {

namespace {

struct Context {
    std::vector<VertexMap> embs_a;
    std::vector<VertexMap> embs_b;
    // Per copy of B: the Emb(A,C) indices whose image lies inside it.
    std::vector<std::vector<std::uint32_t>> members;
    // Same sets as bitmasks over embedding indices, when they fit a word.
    std::vector<std::uint64_t> member_masks;
    bool masks_valid = false;
};

Context build_context(const FiniteHypergraph& c, const FiniteHypergraph& b,
                      const FiniteHypergraph& a, const ArrowOptions& options) {
    if (a.uniformity() != c.uniformity() || b.uniformity() != c.uniformity()) {
        throw std::invalid_argument("arrow: uniformity mismatch between the three structures");
    }
    if (a.vertex_count() > b.vertex_count() || b.vertex_count() > c.vertex_count()) {
        throw std::invalid_argument("arrow: expected |A| <= |B| <= |C|");
    }
    Context ctx;
    ctx.embs_a = enumerate_embeddings(a, c, options.embedding_guard);
    ctx.embs_b = enumerate_embeddings(b, c, options.embedding_guard);
    ctx.members.reserve(ctx.embs_b.size());
    std::vector<bool> inside(c.vertex_count());
    for (const VertexMap& g : ctx.embs_b) {
        std::fill(inside.begin(), inside.end(), false);
        for (Vertex y : g.image) inside[y] = true;
        std::vector<std::uint32_t> member;
        for (std::uint32_t e = 0; e < ctx.embs_a.size(); ++e) {
            const bool in = std::all_of(ctx.embs_a[e].image.begin(), ctx.embs_a[e].image.end(),
                                        [&](Vertex y) { return inside[y]; });
            if (in) member.push_back(e);
        }
        ctx.members.push_back(std::move(member));
    }
    ctx.masks_valid = ctx.embs_a.size() <= 63;
    if (ctx.masks_valid) {
        for (const auto& member : ctx.members) {
            std::uint64_t mask = 0;
            for (std::uint32_t e : member) mask |= std::uint64_t(1) << e;
            ctx.member_masks.push_back(mask);
        }
    }
    return ctx;
}

// Base-k digits of the coloring index over the embedding order, first
// embedding most significant. With the symmetry reduction the first digit is
// pinned to color 1 and the index covers the remaining positions.
void decode_coloring(std::uint64_t index, std::uint32_t k, std::size_t m, bool pin_first,
                     std::vector<std::uint32_t>& colors) {
    colors.assign(m, 1);
    const std::size_t first = pin_first ? 1 : 0;
    for (std::size_t pos = m; pos-- > first;) {
        colors[pos] = static_cast<std::uint32_t>(index % k) + 1;
        index /= k;
    }
}

bool distinct_within_budget(const std::vector<std::uint32_t>& colors,
                            const std::vector<std::uint32_t>& member, std::uint32_t budget) {
    std::uint64_t seen_mask = 0;
    std::uint32_t seen = 0;
    std::vector<std::uint32_t> overflow;
    for (std::uint32_t e : member) {
        const std::uint32_t color = colors[e];
        if (color <= 64) {
            const std::uint64_t bit = std::uint64_t(1) << (color - 1);
            if (seen_mask & bit) continue;
            seen_mask |= bit;
        } else {
            if (std::find(overflow.begin(), overflow.end(), color) != overflow.end()) continue;
            overflow.push_back(color);
        }
        if (++seen > budget) return false;
    }
    return true;
}

// Index of the first copy of B surviving the coloring, or npos.
std::size_t find_witness(const Context& ctx, const std::vector<std::uint32_t>& colors,
                         std::uint32_t budget) {
    for (std::size_t gi = 0; gi < ctx.members.size(); ++gi) {
        if (distinct_within_budget(colors, ctx.members[gi], budget)) return gi;
    }
    return static_cast<std::size_t>(-1);
}

ArrowVerdict check_with_context(const Context& ctx, std::uint32_t k, std::uint32_t budget,
                                const ArrowOptions& options) {
    if (k == 0) throw std::invalid_argument("arrow: color count must be at least 1");
    if (budget == 0) throw std::invalid_argument("arrow: budget must be at least 1");
    const std::size_t m = ctx.embs_a.size();

    ArrowVerdict verdict;
    verdict.embedding_count = m;

    if (ctx.embs_b.empty()) {
        verdict.holds = false;
        verdict.counterexample = std::vector<std::uint32_t>(m, 1);
        verdict.colorings_checked = 1;
        return verdict;
    }

    const BigInt total = pow_big(BigInt(k), m);
    if (total > options.coloring_guard) {
        throw GuardError("arrow: exhausting " + big_to_string(total) +
                         " colorings exceeds the guard of " +
                         big_to_string(options.coloring_guard));
    }
    const bool pin_first = options.symmetry_reduction && k >= 2 && m >= 1;
    const std::uint64_t enumerated =
        pin_first ? pow_big(BigInt(k), m - 1).convert_to<std::uint64_t>()
                  : total.convert_to<std::uint64_t>();

    // Parallel exhaustion; workers race but the verdict is pinned to the
    // smallest defeating index, so the result is worker-count independent.
    const bool two_color_fast_path = k == 2 && ctx.masks_valid;
    std::atomic<std::uint64_t> first_defeat{enumerated};
    detail::parallel_chunks(
        enumerated, 2048, options.workers,
        [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
            if (first_defeat.load(std::memory_order_relaxed) < begin) return;
            std::vector<std::uint32_t> colors;
            std::size_t hint = 0; // copy that last survived; likely again
            for (std::uint64_t index = begin; index < end; ++index) {
                bool defeated;
                if (two_color_fast_path) {
                    std::uint64_t second_color = 0; // bit e set = embedding e has color 2
                    for (std::size_t pos = pin_first ? 1 : 0; pos < m; ++pos) {
                        second_color |= ((index >> (m - 1 - pos)) & 1) << pos;
                    }
                    const auto survives = [&](std::size_t gi) {
                        const std::uint64_t mm = ctx.member_masks[gi];
                        const std::uint32_t distinct = ((second_color & mm) != 0 ? 1 : 0) +
                                                       ((~second_color & mm) != 0 ? 1 : 0);
                        return distinct <= budget;
                    };
                    defeated = !survives(hint);
                    if (defeated) {
                        for (std::size_t gi = 0; gi < ctx.member_masks.size(); ++gi) {
                            if (gi != hint && survives(gi)) {
                                hint = gi;
                                defeated = false;
                                break;
                            }
                        }
                    }
                } else {
                    decode_coloring(index, k, m, pin_first, colors);
                    defeated = find_witness(ctx, colors, budget) == static_cast<std::size_t>(-1);
                }
                if (defeated) {
                    std::uint64_t current = first_defeat.load(std::memory_order_relaxed);
                    while (index < current &&
                           !first_defeat.compare_exchange_weak(current, index)) {
                    }
                    return;
                }
            }
        });

    const std::uint64_t defeat = first_defeat.load();
    if (defeat < enumerated) {
        std::vector<std::uint32_t> colors;
        decode_coloring(defeat, k, m, pin_first, colors);
        if (find_witness(ctx, colors, budget) != static_cast<std::size_t>(-1)) {
            throw std::logic_error("arrow: counterexample failed revalidation");
        }
        verdict.holds = false;
        verdict.counterexample = std::move(colors);
        verdict.colorings_checked = defeat + 1;
        return verdict;
    }

    verdict.holds = true;
    verdict.colorings_checked = enumerated;
    std::vector<std::uint32_t> all_ones(m, 1);
    const std::size_t gi = find_witness(ctx, all_ones, budget);
    verdict.witness_example = ctx.embs_b[gi];
    return verdict;
}

nlohmann::json parse_json(const std::string& text, const char* what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string(what) + ": " + e.what());
    }
}

} // namespace

std::uint32_t copy_value_count(const std::vector<std::uint32_t>& chi,
                               const FiniteHypergraph& c, const FiniteHypergraph& a,
                               const VertexMap& g) {
    const auto embs = enumerate_embeddings(a, c);
    if (chi.size() != embs.size()) {
        throw std::invalid_argument("copy_value_count: coloring does not index Emb(A, C)");
    }
    std::vector<bool> inside(c.vertex_count(), false);
    std::vector<bool> dup(c.vertex_count(), false);
    for (Vertex y : g.image) {
        if (y >= c.vertex_count() || dup[y]) {
            throw std::invalid_argument("copy_value_count: invalid copy map");
        }
        dup[y] = true;
        inside[y] = true;
    }
    std::vector<std::uint32_t> seen;
    for (std::size_t e = 0; e < embs.size(); ++e) {
        const bool in = std::all_of(embs[e].image.begin(), embs[e].image.end(),
                                    [&](Vertex y) { return inside[y]; });
        if (in && std::find(seen.begin(), seen.end(), chi[e]) == seen.end()) {
            seen.push_back(chi[e]);
        }
    }
    return static_cast<std::uint32_t>(seen.size());
}

ArrowVerdict arrow_check(const ArrowInstance& instance, const ArrowOptions& options) {
    const Context ctx = build_context(instance.c, instance.b, instance.a, options);
    return check_with_context(ctx, instance.k, instance.budget, options);
}

std::uint32_t min_budget(const FiniteHypergraph& c, const FiniteHypergraph& b,
                         const FiniteHypergraph& a, std::uint32_t k,
                         const ArrowOptions& options) {
    const Context ctx = build_context(c, b, a, options);
    if (ctx.embs_b.empty()) {
        throw std::invalid_argument("min_budget: B does not embed into C");
    }
    const std::uint64_t in_b = enumerate_embeddings(a, b, options.embedding_guard).size();
    const std::uint32_t cap =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(k, std::max<std::uint64_t>(in_b, 1)));
    for (std::uint32_t budget = 1; budget <= cap; ++budget) {
        if (check_with_context(ctx, k, budget, options).holds) return budget;
    }
    throw std::logic_error("min_budget: no budget within the pigeonhole bound held");
}

std::string arrow_instance_to_json(const ArrowInstance& instance) {
    nlohmann::ordered_json j;
    j["C"] = nlohmann::ordered_json::parse(hypergraph_to_json(instance.c));
    j["B"] = nlohmann::ordered_json::parse(hypergraph_to_json(instance.b));
    j["A"] = nlohmann::ordered_json::parse(hypergraph_to_json(instance.a));
    j["k"] = instance.k;
    j["budget"] = instance.budget;
    return j.dump(2) + "\n";
}

ArrowInstance arrow_instance_from_json(const std::string& text) {
    const nlohmann::json j = parse_json(text, "arrow instance");
    if (!j.is_object() || !j.contains("C") || !j.contains("B") || !j.contains("A") ||
        !j.contains("k") || !j.contains("budget")) {
        throw FormatError("arrow instance: expected keys C, B, A, k, budget");
    }
    if (!j["k"].is_number_unsigned() || !j["budget"].is_number_unsigned()) {
        throw FormatError("arrow instance: k and budget must be nonnegative integers");
    }
    return ArrowInstance{hypergraph_from_json(j["C"].dump()),
                         hypergraph_from_json(j["B"].dump()),
                         hypergraph_from_json(j["A"].dump()),
                         j["k"].get<std::uint32_t>(), j["budget"].get<std::uint32_t>()};
}

std::string arrow_verdict_to_json(const ArrowVerdict& verdict) {
    nlohmann::ordered_json j;
    j["holds"] = verdict.holds;
    if (verdict.counterexample) {
        j["counterexample"] = *verdict.counterexample;
    } else {
        j["counterexample"] = nullptr;
    }
    if (verdict.witness_example) {
        j["witness"] = verdict.witness_example->image;
    } else {
        j["witness"] = nullptr;
    }
    j["embedding_count"] = verdict.embedding_count;
    j["colorings_checked"] = verdict.colorings_checked;
    return j.dump(2) + "\n";
}

} // namespace tft
