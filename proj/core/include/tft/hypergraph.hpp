#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tft/bigint.hpp"

namespace tft {

using Vertex = std::uint64_t;

// A u-element vertex subset in canonical (strictly increasing) form.
class EdgeSet {
public:
    explicit EdgeSet(std::vector<Vertex> vertices);
    EdgeSet(std::initializer_list<Vertex> vertices)
        : EdgeSet(std::vector<Vertex>(vertices)) {}

    std::size_t size() const { return vertices_.size(); }
    std::span<const Vertex> vertices() const { return vertices_; }
    Vertex max() const { return vertices_.back(); }

private:
    std::vector<Vertex> vertices_;
};

// An injective candidate map between vertex sets; injectivity is what
// is_embedding tests, so construction accepts any image sequence.
struct VertexMap {
    std::vector<Vertex> image;

    std::size_t domain_size() const { return image.size(); }
};

// A complete edge-labeling of {0..n-1}: every u-subset carries one
// nonnegative integer label. This is the materialized finite object;
// the marker label never appears here.
class FiniteHypergraph {
public:
    FiniteHypergraph(std::uint32_t u, std::uint64_t n,
                     const std::function<BigInt(std::span<const Vertex>)>& labeler);

    static FiniteHypergraph from_labels(std::uint32_t u, std::uint64_t n,
                                        std::vector<BigInt> labels_by_colex_rank);

    std::uint32_t uniformity() const { return u_; }
    std::uint64_t vertex_count() const { return n_; }
    std::uint64_t edge_count() const { return labels_.size(); }

    const BigInt& label(std::span<const Vertex> edge) const;
    const BigInt& label(const EdgeSet& edge) const { return label(edge.vertices()); }
    const BigInt& label_by_rank(std::uint64_t colex_rank) const { return labels_[colex_rank]; }

    // Colexicographic rank of a strictly increasing u-subset of {0..n-1}.
    std::uint64_t colex_rank(std::span<const Vertex> edge) const;

    // Visits every u-subset in colexicographic order.
    void for_each_edge(const std::function<void(std::span<const Vertex>)>& fn) const;

    friend bool operator==(const FiniteHypergraph& a, const FiniteHypergraph& b) {
        return a.u_ == b.u_ && a.n_ == b.n_ && a.labels_ == b.labels_;
    }

private:
    FiniteHypergraph(std::uint32_t u, std::uint64_t n);

    std::uint32_t u_;
    std::uint64_t n_;
    std::vector<BigInt> labels_;                    // indexed by colex rank
    std::vector<std::vector<std::uint64_t>> binom_; // binom_[i][j] = C(i, j), j <= u
};

// Substructure induced by the (injective) vertex selection S; result vertex i
// corresponds to S[i].
FiniteHypergraph induced(const FiniteHypergraph& h, std::span<const Vertex> selection);

// True iff m is injective and preserves every edge label exactly.
bool is_embedding(const FiniteHypergraph& a, const FiniteHypergraph& b, const VertexMap& m);

// All embeddings of a into b, in lexicographic order of image tuples.
// Guarded backtracking search; |a| must not exceed max_domain.
std::vector<VertexMap> enumerate_embeddings(const FiniteHypergraph& a,
                                            const FiniteHypergraph& b,
                                            std::size_t max_domain = 8);

// JSON file format: {"u": int, "n": int, "edges": [[v0..v_{u-1}, "label"], ...]}
// with labels as decimal strings and all C(n,u) edge sets present exactly once.
// Serialization emits edges in colexicographic order.
std::string hypergraph_to_json(const FiniteHypergraph& h);
FiniteHypergraph hypergraph_from_json(const std::string& text);

namespace detail {

// Walks strictly increasing k-subsets of {0..n-1} in colex order.
// Returns false once the sequence is exhausted.
bool next_subset_colex(std::vector<Vertex>& subset, std::uint64_t n);

} // namespace detail

} // namespace tft
