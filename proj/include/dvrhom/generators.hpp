#pragma once

// Deterministic constructors for example spaces and random test corpora.

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dvrhom/digraph.hpp"
#include "dvrhom/error.hpp"

namespace dvrhom {

using LatticePoint = std::vector<std::int64_t>;

/// (Z_n, c_m): u E v iff v - u is congruent to one of -m..m mod n.
inline Digraph circulant(std::size_t n, std::size_t m) {
    if (n < 1) throw InputError("circulant requires n >= 1");
    if (m > n) throw InputError("circulant requires m <= n");
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            const std::size_t diff = (v + n - u) % n;
            if (diff != 0 && (diff <= m || diff >= n - m)) {
                edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
            }
        }
    }
    return Digraph::from_edge_list(n, edges);
}

/// Digital image: points are adjacent when every coordinate differs by at
/// most one (diagonal neighbors included). Vertex i is points[i].
inline Digraph digital_image(const std::vector<LatticePoint>& points) {
    std::set<LatticePoint> seen;
    for (const auto& p : points) {
        if (p.size() != points.front().size()) throw InputError("lattice points have mixed dimensions");
        if (!seen.insert(p).second) {
            std::string s;
            for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
            throw InputError("duplicate lattice point (" + s + ")");
        }
    }
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::string label = "(";
        for (std::size_t c = 0; c < points[i].size(); ++c) label += (c ? "," : "") + std::to_string(points[i][c]);
        labels.push_back(label + ")");
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (i == j) continue;
            bool adjacent = true;
            for (std::size_t c = 0; c < points[i].size() && adjacent; ++c) {
                const auto d = points[i][c] - points[j][c];
                adjacent = d >= -1 && d <= 1;
            }
            if (adjacent) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
        }
    }
    return Digraph::from_edge_list(points.size(), edges, std::move(labels));
}

/// {+e1, -e1, +e2, -e2, +e3, -e3} in Z^3.
inline std::vector<LatticePoint> digital_sphere_points() {
    std::vector<LatticePoint> pts;
    for (std::size_t axis = 0; axis < 3; ++axis) {
        for (std::int64_t sign : {1, -1}) {
            LatticePoint p(3, 0);
            p[axis] = sign;
            pts.push_back(p);
        }
    }
    return pts;
}

enum class Figure { left, middle, right };

/// The three four-vertex digraphs on A, B, C, D = 0, 1, 2, 3:
///   left   A->B A->C A->D B->D C->D   (filled square)
///   middle A->B A->C D->A B->D C->D   (square with a hollow diagonal)
///   right  A->B A->C B->D C->D        (hollow square)
inline Digraph figure_digraph(Figure which) {
    std::vector<Edge> edges;
    switch (which) {
        case Figure::left: edges = {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}; break;
        case Figure::middle: edges = {{0, 1}, {0, 2}, {3, 0}, {1, 3}, {2, 3}}; break;
        case Figure::right: edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}}; break;
    }
    return Digraph::from_edge_list(4, edges, {"A", "B", "C", "D"});
}

/// Every ordered pair (u, v), u != v, gets an edge independently with
/// probability p. Pairs are visited in row-major order, one 64-bit draw of
/// mt19937_64 each, so the result depends only on (n, p, seed).
inline Digraph random_digraph(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v) continue;
            const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (r < p) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        }
    }
    return Digraph::from_edge_list(n, edges);
}

}  // namespace dvrhom
