#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tft/hypergraph.hpp"

namespace tft {

// One finite arrow question: does every k-coloring of the embeddings of A
// into C admit a copy of B on which at most `budget` values occur?
struct ArrowInstance {
    FiniteHypergraph c;
    FiniteHypergraph b;
    FiniteHypergraph a;
    std::uint32_t k = 1;
    std::uint32_t budget = 1;
};

struct ArrowOptions {
    BigInt coloring_guard = BigInt(1) << 24; // max k^|Emb(A,C)| exhausted
    std::size_t embedding_guard = 8;         // max |A|, |B| for enumeration
    std::uint32_t workers = 0;               // 0 = hardware concurrency
    bool symmetry_reduction = true;          // fix the first embedding's color
};

struct ArrowVerdict {
    bool holds = false;
    // Colors 1..k indexed by the embedding enumeration order of Emb(A,C);
    // present exactly when the relation fails, and defeats every copy of B.
    std::optional<std::vector<std::uint32_t>> counterexample;
    // A witness copy for the all-ones coloring, when the relation holds.
    std::optional<VertexMap> witness_example;
    std::uint64_t embedding_count = 0; // |Emb(A,C)|
    std::uint64_t colorings_checked = 0;
};

// Distinct chi-values over embeddings of A into C whose image lies inside
// the image of g. chi is indexed by the enumeration order of Emb(A,C).
std::uint32_t copy_value_count(const std::vector<std::uint32_t>& chi,
                               const FiniteHypergraph& c, const FiniteHypergraph& a,
                               const VertexMap& g);

// Exhaustive check of the arrow relation. Colorings are enumerated as
// base-k counters over Emb(A,C) (first embedding pinned to color 1 when the
// symmetry reduction is on); the returned counterexample is the first
// defeating coloring in that order, independent of the worker count.
ArrowVerdict arrow_check(const ArrowInstance& instance, const ArrowOptions& options = {});

// Least budget at which the arrow relation holds; at most min(k, |Emb(A,B)|).
std::uint32_t min_budget(const FiniteHypergraph& c, const FiniteHypergraph& b,
                         const FiniteHypergraph& a, std::uint32_t k,
                         const ArrowOptions& options = {});

// Instance file: {"C": hypergraph, "B": ..., "A": ..., "k": int, "budget": int}.
std::string arrow_instance_to_json(const ArrowInstance& instance);
ArrowInstance arrow_instance_from_json(const std::string& text);

std::string arrow_verdict_to_json(const ArrowVerdict& verdict);

} // namespace tft
