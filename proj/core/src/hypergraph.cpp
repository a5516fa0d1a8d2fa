#include "tft/hypergraph.hpp"

#include <algorithm>

#include "json.hpp"

#include "tft/errors.hpp"

namespace tft {

namespace {

constexpr std::uint64_t kEdgeCountGuard = std::uint64_t(1) << 40;

void require_canonical(std::span<const Vertex> vertices) {
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        if (vertices[i - 1] >= vertices[i]) {
            throw std::invalid_argument("edge set vertices must be strictly increasing");
        }
    }
}

} // namespace

EdgeSet::EdgeSet(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw std::invalid_argument("edge set must be nonempty");
    require_canonical(vertices_);
}

FiniteHypergraph::FiniteHypergraph(std::uint32_t u, std::uint64_t n) : u_(u), n_(n) {
    if (u < 2) throw std::invalid_argument("uniformity must be at least 2");
    const BigInt edges = binomial(n, u);
    if (edges > kEdgeCountGuard) {
        throw GuardError("hypergraph on " + std::to_string(n) + " vertices has " +
                         big_to_string(edges) + " edge sets, beyond the materialization guard");
    }
    binom_.assign(n + 1, std::vector<std::uint64_t>(u + 1, 0));
    for (std::uint64_t i = 0; i <= n; ++i) {
        binom_[i][0] = 1;
        for (std::uint32_t j = 1; j <= u && j <= i; ++j) {
            binom_[i][j] = binomial_u64(i, j);
        }
    }
    labels_.resize(edges.convert_to<std::uint64_t>());
}

FiniteHypergraph::FiniteHypergraph(
    std::uint32_t u, std::uint64_t n,
    const std::function<BigInt(std::span<const Vertex>)>& labeler)
    : FiniteHypergraph(u, n) {
    std::uint64_t rank = 0;
    for_each_edge([&](std::span<const Vertex> edge) { labels_[rank++] = labeler(edge); });
}

FiniteHypergraph FiniteHypergraph::from_labels(std::uint32_t u, std::uint64_t n,
                                               std::vector<BigInt> labels_by_colex_rank) {
    FiniteHypergraph h(u, n);
    if (labels_by_colex_rank.size() != h.labels_.size()) {
        throw std::invalid_argument("label vector does not cover all edge sets");
    }
    for (const BigInt& l : labels_by_colex_rank) {
        if (l < 0) throw std::invalid_argument("edge labels must be nonnegative");
    }
    h.labels_ = std::move(labels_by_colex_rank);
    return h;
}

std::uint64_t FiniteHypergraph::colex_rank(std::span<const Vertex> edge) const {
    if (edge.size() != u_) {
        throw std::invalid_argument("edge set arity does not match the uniformity");
    }
    require_canonical(edge);
    if (edge.back() >= n_) throw std::invalid_argument("edge set vertex out of range");
    std::uint64_t rank = 0;
    for (std::uint32_t j = 0; j < u_; ++j) {
        rank += binom_[edge[j]][j + 1];
    }
    return rank;
}

const BigInt& FiniteHypergraph::label(std::span<const Vertex> edge) const {
    return labels_[colex_rank(edge)];
}

void FiniteHypergraph::for_each_edge(
    const std::function<void(std::span<const Vertex>)>& fn) const {
    if (n_ < u_) return;
    std::vector<Vertex> edge(u_);
    for (std::uint32_t i = 0; i < u_; ++i) edge[i] = i;
    do {
        fn(edge);
    } while (detail::next_subset_colex(edge, n_));
}

namespace detail {

bool next_subset_colex(std::vector<Vertex>& subset, std::uint64_t n) {
    const std::size_t k = subset.size();
    for (std::size_t j = 0; j < k; ++j) {
        const Vertex ceiling = (j + 1 < k) ? subset[j + 1] : n;
        if (subset[j] + 1 < ceiling) {
            ++subset[j];
            for (std::size_t i = 0; i < j; ++i) subset[i] = i;
            return true;
        }
    }
    return false;
}

} // namespace detail

FiniteHypergraph induced(const FiniteHypergraph& h, std::span<const Vertex> selection) {
    std::vector<Vertex> sorted(selection.begin(), selection.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0 && sorted[i] == sorted[i - 1]) {
            throw std::invalid_argument("induced: duplicated vertex in selection");
        }
        if (sorted[i] >= h.vertex_count()) {
            throw std::invalid_argument("induced: vertex out of range");
        }
    }
    const std::uint32_t u = h.uniformity();
    std::vector<Vertex> image(u);
    return FiniteHypergraph(u, selection.size(), [&](std::span<const Vertex> edge) {
        for (std::uint32_t i = 0; i < u; ++i) image[i] = selection[edge[i]];
        std::sort(image.begin(), image.end());
        return h.label(image);
    });
}

bool is_embedding(const FiniteHypergraph& a, const FiniteHypergraph& b, const VertexMap& m) {
    if (a.uniformity() != b.uniformity()) {
        throw std::invalid_argument("is_embedding: uniformity mismatch");
    }
    if (m.image.size() != a.vertex_count()) {
        throw std::invalid_argument("is_embedding: map does not cover the domain");
    }
    for (Vertex y : m.image) {
        if (y >= b.vertex_count()) {
            throw std::invalid_argument("is_embedding: image vertex out of range");
        }
    }
    std::vector<Vertex> sorted = m.image;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;

    const std::uint32_t u = a.uniformity();
    bool ok = true;
    std::vector<Vertex> image(u);
    a.for_each_edge([&](std::span<const Vertex> edge) {
        if (!ok) return;
        for (std::uint32_t i = 0; i < u; ++i) image[i] = m.image[edge[i]];
        std::sort(image.begin(), image.end());
        if (a.label(edge) != b.label(image)) ok = false;
    });
    return ok;
}

namespace {

// Depth-first extension of a partial image; candidates ascend, so complete
// maps come out in lexicographic order of image tuples.
void extend_embedding(const FiniteHypergraph& a, const FiniteHypergraph& b,
                      std::vector<Vertex>& image, std::vector<bool>& used,
                      std::vector<VertexMap>& out) {
    const std::size_t depth = image.size();
    if (depth == a.vertex_count()) {
        out.push_back(VertexMap{image});
        return;
    }
    const std::uint32_t u = a.uniformity();
    std::vector<Vertex> edge_image(u);
    for (Vertex y = 0; y < b.vertex_count(); ++y) {
        if (used[y]) continue;
        image.push_back(y);
        used[y] = true;

        bool consistent = true;
        if (depth + 1 >= u) {
            // Only edge sets completed by this vertex need checking.
            std::vector<Vertex> rest(u - 1);
            for (std::uint32_t i = 0; i + 1 < u; ++i) rest[i] = i;
            bool more = depth >= u - 1;
            while (more && consistent) {
                std::vector<Vertex> edge(rest.begin(), rest.end());
                edge.push_back(depth);
                for (std::uint32_t i = 0; i < u; ++i) edge_image[i] = image[edge[i]];
                std::sort(edge_image.begin(), edge_image.end());
                if (a.label(edge) != b.label(edge_image)) consistent = false;
                more = detail::next_subset_colex(rest, depth);
            }
        }
        if (consistent) extend_embedding(a, b, image, used, out);

        used[y] = false;
        image.pop_back();
    }
}

} // namespace

std::vector<VertexMap> enumerate_embeddings(const FiniteHypergraph& a,
                                            const FiniteHypergraph& b,
                                            std::size_t max_domain) {
    if (a.uniformity() != b.uniformity()) {
        throw std::invalid_argument("enumerate_embeddings: uniformity mismatch");
    }
    if (a.vertex_count() > max_domain) {
        throw GuardError("enumerate_embeddings: domain of " +
                         std::to_string(a.vertex_count()) +
                         " vertices exceeds the search guard of " + std::to_string(max_domain));
    }
    std::vector<VertexMap> out;
    std::vector<Vertex> image;
    std::vector<bool> used(b.vertex_count(), false);
    image.reserve(a.vertex_count());
    extend_embedding(a, b, image, used, out);
    return out;
}

std::string hypergraph_to_json(const FiniteHypergraph& h) {
    nlohmann::ordered_json j;
    j["u"] = h.uniformity();
    j["n"] = h.vertex_count();
    auto edges = nlohmann::ordered_json::array();
    h.for_each_edge([&](std::span<const Vertex> edge) {
        auto entry = nlohmann::ordered_json::array();
        for (Vertex v : edge) entry.push_back(v);
        entry.push_back(big_to_string(h.label(edge)));
        edges.push_back(std::move(entry));
    });
    j["edges"] = std::move(edges);
    return j.dump(2) + "\n";
}

FiniteHypergraph hypergraph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("hypergraph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("u") || !j.contains("n") || !j.contains("edges")) {
        throw FormatError("hypergraph JSON: expected keys u, n, edges");
    }
    if (!j["u"].is_number_unsigned() || !j["n"].is_number_unsigned() ||
        !j["edges"].is_array()) {
        throw FormatError("hypergraph JSON: bad field types");
    }
    const auto u = j["u"].get<std::uint32_t>();
    const auto n = j["n"].get<std::uint64_t>();
    if (u < 2) throw FormatError("hypergraph JSON: uniformity must be at least 2");

    FiniteHypergraph shell(u, n, [](std::span<const Vertex>) { return BigInt(0); });
    const std::uint64_t expected = shell.edge_count();
    if (j["edges"].size() != expected) {
        throw FormatError("hypergraph JSON: expected " + std::to_string(expected) +
                          " edge entries, found " + std::to_string(j["edges"].size()));
    }
    std::vector<BigInt> labels(expected);
    std::vector<bool> seen(expected, false);
    std::vector<Vertex> edge(u);
    for (const auto& entry : j["edges"]) {
        if (!entry.is_array() || entry.size() != u + 1) {
            throw FormatError("hypergraph JSON: each edge entry must list u vertices and a label");
        }
        for (std::uint32_t i = 0; i < u; ++i) {
            if (!entry[i].is_number_unsigned()) {
                throw FormatError("hypergraph JSON: vertex ids must be nonnegative integers");
            }
            edge[i] = entry[i].get<Vertex>();
        }
        if (!entry[u].is_string()) {
            throw FormatError("hypergraph JSON: labels must be decimal strings");
        }
        std::uint64_t rank;
        try {
            rank = shell.colex_rank(edge);
        } catch (const std::invalid_argument& e) {
            throw FormatError(std::string("hypergraph JSON: ") + e.what());
        }
        if (seen[rank]) throw FormatError("hypergraph JSON: duplicate edge set");
        seen[rank] = true;
        labels[rank] = big_from_string(entry[u].get<std::string>());
    }
    return FiniteHypergraph::from_labels(u, n, std::move(labels));
}

} // namespace tft
