#pragma once

// Edge-path group presentations from the 2-skeleton of a complex.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dvrhom/complex.hpp"
#include "dvrhom/error.hpp"
#include "dvrhom/homology.hpp"
#include "dvrhom/smith.hpp"

namespace dvrhom {

struct Letter {
    std::size_t generator = 0;
    int exponent = 1;  ///< +1 or -1

    Letter inverse() const { return {generator, -exponent}; }
    friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;

    std::string format_word(const Word& w) const {
        if (w.empty()) return "1";
        std::string out;
        for (std::size_t i = 0; i < w.size(); ++i) {
            out += (i ? " " : "") + generators[w[i].generator];
            if (w[i].exponent < 0) out += "^-1";
        }
        return out;
    }
};

inline Word inverse(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
    return out;
}

/// Free and cyclic reduction.
inline Word cyclically_reduce(const Word& w) {
    Word out;
    for (const auto& l : w) {
        if (!out.empty() && out.back() == l.inverse()) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    std::size_t lo = 0, hi = out.size();
    while (hi - lo >= 2 && out[lo] == out[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    return Word(out.begin() + static_cast<std::ptrdiff_t>(lo), out.begin() + static_cast<std::ptrdiff_t>(hi));
}

/// Elementary Tietze moves to a fixed point: reduce relators, drop trivial
/// and repeated ones, and eliminate any generator that occurs exactly once
/// in some relator together with that relator.
inline Presentation simplify(Presentation p) {
    std::vector<bool> alive(p.generators.size(), true);
    for (;;) {
        std::vector<Word> kept;
        for (const auto& r : p.relators) {
            auto w = cyclically_reduce(r);
            if (!w.empty() && std::find(kept.begin(), kept.end(), w) == kept.end()) kept.push_back(std::move(w));
        }
        p.relators = std::move(kept);

        std::optional<std::pair<std::size_t, std::size_t>> pick;  // (relator, position)
        for (std::size_t r = 0; r < p.relators.size() && !pick; ++r) {
            std::map<std::size_t, std::size_t> count;
            for (const auto& l : p.relators[r]) ++count[l.generator];
            for (std::size_t i = 0; i < p.relators[r].size(); ++i) {
                if (count[p.relators[r][i].generator] == 1) {
                    pick = {{r, i}};
                    break;
                }
            }
        }
        if (!pick) break;

        // Rotate the relator to g^e w; then g = w^-1 when e = 1, else g = w.
        const Word& rel = p.relators[pick->first];
        const Letter g = rel[pick->second];
        Word rest(rel.begin() + static_cast<std::ptrdiff_t>(pick->second) + 1, rel.end());
        rest.insert(rest.end(), rel.begin(), rel.begin() + static_cast<std::ptrdiff_t>(pick->second));
        const Word replacement = g.exponent > 0 ? inverse(rest) : rest;
        const Word replacement_inv = inverse(replacement);

        std::vector<Word> next;
        for (std::size_t r = 0; r < p.relators.size(); ++r) {
            if (r == pick->first) continue;
            Word w;
            for (const auto& l : p.relators[r]) {
                if (l.generator == g.generator) {
                    const auto& sub = l.exponent > 0 ? replacement : replacement_inv;
                    w.insert(w.end(), sub.begin(), sub.end());
                } else {
                    w.push_back(l);
                }
            }
            next.push_back(std::move(w));
        }
        p.relators = std::move(next);
        alive[g.generator] = false;
    }

    std::vector<std::size_t> renumber(p.generators.size());
    Presentation out;
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
        if (!alive[i]) continue;
        renumber[i] = out.generators.size();
        out.generators.push_back(p.generators[i]);
    }
    for (const auto& r : p.relators) {
        Word w;
        for (const auto& l : r) w.push_back({renumber[l.generator], l.exponent});
        out.relators.push_back(std::move(w));
    }
    return out;
}

/// Edge-path group of k at a basepoint. A breadth-first spanning tree of the
/// 1-skeleton (neighbors in ascending order) fixes the trivial edges; every
/// other edge {u<v} is a generator "e<u>_<v>" and every triangle {a<b<c}
/// contributes the relator ab.bc.(ac)^-1. The result is Tietze-simplified.
inline Presentation pi1_presentation(const SimplicialComplex& k, Vertex basepoint) {
    if (k.empty()) throw PreconditionError("fundamental group of the empty complex is undefined");
    const auto base = k.find(VertexSet{basepoint});
    if (!base) throw PreconditionError("basepoint " + std::to_string(basepoint) + " is not a vertex of the complex");

    const auto vertices = k.simplices(0);
    const auto edges = k.simplices(1);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency(vertices.size());  // (neighbor, edge)
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto a = k.find(VertexSet{edges[e].vertices[0]})->index;
        const auto b = k.find(VertexSet{edges[e].vertices[1]})->index;
        adjacency[a].emplace_back(b, e);
        adjacency[b].emplace_back(a, e);
    }
    for (auto& list : adjacency) std::sort(list.begin(), list.end());

    std::vector<bool> visited(vertices.size(), false), tree(edges.size(), false);
    std::deque<std::size_t> queue{base->index};
    visited[base->index] = true;
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (const auto& [w, e] : adjacency[v]) {
            if (visited[w]) continue;
            visited[w] = true;
            tree[e] = true;
            queue.push_back(w);
        }
    }
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (!visited[v]) {
            throw PreconditionError("complex is disconnected: vertices " + std::to_string(basepoint) + " and " +
                                    std::to_string(vertices[v].vertices[0]) + " lie in different components");
        }
    }

    Presentation p;
    std::vector<std::optional<std::size_t>> generator_of(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (tree[e]) continue;
        generator_of[e] = p.generators.size();
        p.generators.push_back("e" + std::to_string(edges[e].vertices[0]) + "_" + std::to_string(edges[e].vertices[1]));
    }
    auto edge_word = [&](Vertex u, Vertex v, int exponent) -> Word {
        const auto e = k.find(VertexSet{u, v})->index;
        if (!generator_of[e]) return {};
        return {Letter{*generator_of[e], exponent}};
    };
    for (const auto& t : k.simplices(2)) {
        const Vertex a = t.vertices[0], b = t.vertices[1], c = t.vertices[2];
        Word w = edge_word(a, b, 1);
        for (const auto& part : {edge_word(b, c, 1), edge_word(a, c, -1)}) w.insert(w.end(), part.begin(), part.end());
        p.relators.push_back(std::move(w));
    }
    return simplify(std::move(p));
}

/// The abelianized group, from the Smith form of the relator exponent-sum
/// matrix.
inline HomologyGroup abelianization(const Presentation& p) {
    IntegerMatrix m(p.relators.size(), p.generators.size());
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
        std::vector<long> sums(p.generators.size(), 0);
        for (const auto& l : p.relators[r]) sums[l.generator] += l.exponent;
        for (std::size_t g = 0; g < sums.size(); ++g) m.set(r, g, sums[g]);
    }
    const auto snf = smith_normal_form(m, false);
    HomologyGroup h;
    h.betti = p.generators.size() - snf.rank();
    for (const auto& d : snf.d) {
        if (d > 1) h.torsion.push_back(d);
    }
    return h;
}

}  // namespace dvrhom
