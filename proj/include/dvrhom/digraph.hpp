#pragma once

// Finite digraphs viewed as Alexandroff closure spaces.
//
// Orientation convention: the closure of a vertex x is its out-set
// c(x) = {y : x E y}, while the minimal neighborhood of x is its in-set
// U_x = {y : y E x}. Every digraph is stored in spatial form, i.e. with all
// loops present, so both sets always contain x itself.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "dvrhom/error.hpp"

namespace dvrhom {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free set of vertex identifiers.
class VertexSet {
public:
    using const_iterator = std::vector<Vertex>::const_iterator;

    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> vs) : VertexSet(std::vector<Vertex>(vs)) {}
    explicit VertexSet(std::vector<Vertex> vs) : members_(std::move(vs)) {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    /// {0, 1, ..., n-1}
    static VertexSet range(std::size_t n) {
        std::vector<Vertex> vs(n);
        for (std::size_t i = 0; i < n; ++i) vs[i] = static_cast<Vertex>(i);
        return VertexSet(std::move(vs));
    }

    const std::vector<Vertex>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const_iterator begin() const noexcept { return members_.begin(); }
    const_iterator end() const noexcept { return members_.end(); }
    Vertex operator[](std::size_t i) const { return members_[i]; }

    bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

    bool is_subset_of(const VertexSet& other) const {
        return std::includes(other.begin(), other.end(), begin(), end());
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

private:
    std::vector<Vertex> members_;
};

/// Reflexive digraph on vertices 0..n-1 with bitset adjacency rows.
///
/// Immutable after construction. Equality compares vertex count and edge
/// set; labels are presentation only.
class Digraph {
public:
    using Row = boost::dynamic_bitset<std::uint64_t>;

    Digraph() = default;

    /// Builds the spatial digraph: the listed edges plus every loop (u,u).
    /// Duplicate edges collapse and input loops are absorbed. Labels, when
    /// given, must be unique and one per vertex.
    static Digraph from_edge_list(std::size_t n, std::span<const Edge> edges,
                                  std::vector<std::string> labels = {}) {
        Digraph g(n);
        for (const auto& [u, v] : edges) {
            if (u >= n || v >= n) {
                throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                 ") has an endpoint outside 0.." + std::to_string(n == 0 ? 0 : n - 1) +
                                 (n == 0 ? " (empty vertex set)" : ""));
            }
            g.out_[u].set(v);
            g.in_[v].set(u);
        }
        if (!labels.empty()) {
            if (labels.size() != n) {
                throw InputError("expected " + std::to_string(n) + " labels, got " + std::to_string(labels.size()));
            }
            std::set<std::string> seen;
            for (const auto& l : labels) {
                if (!seen.insert(l).second) throw InputError("duplicate vertex label '" + l + "'");
            }
            g.labels_ = std::move(labels);
        }
        return g;
    }

    static Digraph from_edge_list(std::size_t n, std::initializer_list<Edge> edges) {
        return from_edge_list(n, std::span<const Edge>(edges.begin(), edges.size()));
    }

    std::size_t size() const noexcept { return out_.size(); }

    bool has_edge(Vertex u, Vertex v) const { return out_[u].test(v); }

    const Row& out_row(Vertex u) const { return out_[u]; }
    const Row& in_row(Vertex v) const { return in_[v]; }

    VertexSet out_set(Vertex u) const { return to_set(out_[u]); }
    VertexSet in_set(Vertex v) const { return to_set(in_[v]); }

    /// Non-loop edges in lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> result;
        for (Vertex u = 0; u < size(); ++u) {
            for (auto v = out_[u].find_first(); v != Row::npos; v = out_[u].find_next(v)) {
                if (v != u) result.emplace_back(u, static_cast<Vertex>(v));
            }
        }
        return result;
    }

    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// The label of v, or its decimal identifier when unlabeled.
    std::string label(Vertex v) const { return labels_.empty() ? std::to_string(v) : labels_[v]; }

    friend bool operator==(const Digraph& a, const Digraph& b) { return a.out_ == b.out_; }

    static VertexSet to_set(const Row& row) {
        std::vector<Vertex> vs;
        vs.reserve(row.count());
        for (auto v = row.find_first(); v != Row::npos; v = row.find_next(v)) vs.push_back(static_cast<Vertex>(v));
        return VertexSet(std::move(vs));
    }

private:
    explicit Digraph(std::size_t n) : out_(n, Row(n)), in_(n, Row(n)) {
        for (std::size_t v = 0; v < n; ++v) {
            out_[v].set(v);
            in_[v].set(v);
        }
    }

    std::vector<Row> out_;
    std::vector<Row> in_;
    std::vector<std::string> labels_;
};

namespace detail {

inline void check_within(const Digraph& g, const VertexSet& a) {
    if (!a.empty() && a.members().back() >= g.size()) {
        throw InputError("vertex " + std::to_string(a.members().back()) + " out of range for a digraph with " +
                         std::to_string(g.size()) + " vertices");
    }
}

inline void check_vertex(const Digraph& g, Vertex x) {
    if (x >= g.size()) {
        throw InputError("vertex " + std::to_string(x) + " out of range for a digraph with " +
                         std::to_string(g.size()) + " vertices");
    }
}

inline Digraph::Row to_row(const Digraph& g, const VertexSet& a) {
    Digraph::Row row(g.size());
    for (Vertex v : a) row.set(v);
    return row;
}

}  // namespace detail

/// c(A): the union of the out-sets of the members of A.
inline VertexSet closure_of(const Digraph& g, const VertexSet& a) {
    detail::check_within(g, a);
    Digraph::Row acc(g.size());
    for (Vertex x : a) acc |= g.out_row(x);
    return Digraph::to_set(acc);
}

/// i(A) = X \ c(X \ A).
inline VertexSet interior_of(const Digraph& g, const VertexSet& a) {
    detail::check_within(g, a);
    Digraph::Row complement = ~detail::to_row(g, a);
    Digraph::Row reach(g.size());
    for (auto x = complement.find_first(); x != Digraph::Row::npos; x = complement.find_next(x)) {
        reach |= g.out_row(static_cast<Vertex>(x));
    }
    return Digraph::to_set(~reach);
}

/// U_x = {y : y E x}, the smallest neighborhood of x.
inline VertexSet minimal_neighborhood(const Digraph& g, Vertex x) {
    detail::check_vertex(g, x);
    return g.in_set(x);
}

/// True iff the interiors of the family's members cover every vertex.
inline bool is_interior_cover(const Digraph& g, std::span<const VertexSet> family) {
    Digraph::Row covered(g.size());
    for (const auto& u : family) covered |= detail::to_row(g, interior_of(g, u));
    return covered.all();
}

inline bool is_symmetric(const Digraph& g) {
    for (Vertex v = 0; v < g.size(); ++v) {
        if (g.out_row(v) != g.in_row(v)) return false;
    }
    return true;
}

/// An induced subgraph together with the map from its vertices back to
/// the parent's identifiers.
struct InducedSubgraph {
    Digraph graph;
    std::vector<Vertex> to_parent;
};

/// The full subgraph on A, re-indexed to 0..|A|-1 in ascending order.
/// Labels are inherited from the parent when it has them and are the
/// parent identifiers otherwise.
inline InducedSubgraph induced_subgraph(const Digraph& g, const VertexSet& a) {
    if (a.empty()) throw InputError("induced subgraph requires a nonempty vertex set");
    detail::check_within(g, a);
    const auto& members = a.members();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (i != j && g.has_edge(members[i], members[j])) {
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
            }
        }
    }
    std::vector<std::string> labels;
    labels.reserve(members.size());
    for (Vertex v : members) labels.push_back(g.label(v));
    return {Digraph::from_edge_list(members.size(), edges, std::move(labels)), members};
}

/// A vertex bijection phi with u E v iff phi(u) E phi(v), or nothing.
/// Backtracking search with degree pruning; meant for small graphs.
inline std::optional<std::vector<Vertex>> find_isomorphism(const Digraph& a, const Digraph& b) {
    const std::size_t n = a.size();
    if (n != b.size() || a.edges().size() != b.edges().size()) return std::nullopt;
    std::vector<Vertex> phi(n);
    std::vector<bool> used(n, false);
    auto compatible = [&](Vertex u, Vertex w) {
        return a.out_row(u).count() == b.out_row(w).count() && a.in_row(u).count() == b.in_row(w).count();
    };
    auto extend = [&](auto&& self, Vertex u) -> bool {
        if (u == n) return true;
        for (Vertex w = 0; w < n; ++w) {
            if (used[w] || !compatible(u, w)) continue;
            bool ok = true;
            for (Vertex p = 0; p < u && ok; ++p) {
                ok = a.has_edge(p, u) == b.has_edge(phi[p], w) && a.has_edge(u, p) == b.has_edge(w, phi[p]);
            }
            if (!ok) continue;
            phi[u] = w;
            used[w] = true;
            if (self(self, u + 1)) return true;
            used[w] = false;
        }
        return false;
    };
    if (!extend(extend, 0)) return std::nullopt;
    return phi;
}

}  // namespace dvrhom
