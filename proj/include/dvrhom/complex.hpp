#pragma once

// Directed Vietoris-Rips complexes.
//
// A nonempty vertex set s is a simplex of dVR(g) when its members admit an
// ordering v0, ..., vn with vi E vj for every i < j. For a symmetric digraph
// this is the clique (flag) complex. Simplices are identified by their
// sorted support; the certifying ordering ("witness") is carried as
// metadata.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dvrhom/digraph.hpp"
#include "dvrhom/error.hpp"

namespace dvrhom {

struct Simplex {
    VertexSet vertices;
    std::vector<Vertex> witness;

    std::size_t dimension() const noexcept { return vertices.size() - 1; }
};

struct SimplexId {
    std::size_t dim = 0;
    std::size_t index = 0;

    friend bool operator==(const SimplexId&, const SimplexId&) = default;
};

namespace detail {

struct VertexVectorHash {
    std::size_t operator()(const std::vector<Vertex>& vs) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (Vertex v : vs) {
            h ^= v;
            h *= 0x100000001b3ULL;
        }
        return h;
    }
};

}  // namespace detail

/// Face-closed family of simplices graded by dimension. Each dimension's
/// list is sorted by vertex tuple, which fixes a global deterministic order.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Abstract complex from a list of simplices. With close_faces, every
    /// missing face is added with its sorted order as witness; without it
    /// the input must already be face-closed.
    static SimplicialComplex from_simplices(std::vector<Simplex> simplices, bool close_faces = true) {
        std::set<VertexSet> seen;
        std::vector<Simplex> all;
        for (auto& s : simplices) {
            if (s.vertices.empty()) throw InputError("simplices must be nonempty");
            if (s.witness.empty()) s.witness = s.vertices.members();
            if (VertexSet(s.witness) != s.vertices || s.witness.size() != s.vertices.size()) {
                throw InputError("witness is not a permutation of the simplex " + describe(s.vertices));
            }
            if (seen.insert(s.vertices).second) all.push_back(std::move(s));
        }
        if (close_faces) {
            std::vector<Simplex> extra;
            for (const auto& s : all) {
                for_each_proper_face(s.vertices, [&](const VertexSet& face) {
                    if (seen.insert(face).second) extra.push_back({face, face.members()});
                });
            }
            for (auto& s : extra) all.push_back(std::move(s));
        }
        std::sort(all.begin(), all.end(), [](const Simplex& a, const Simplex& b) {
            return a.vertices.size() != b.vertices.size() ? a.vertices.size() < b.vertices.size()
                                                          : a.vertices < b.vertices;
        });
        SimplicialComplex k;
        for (auto& s : all) k.append(std::move(s));
        if (!close_faces) {
            for (std::size_t d = 1; d < k.by_dim_.size(); ++d) {
                for (const auto& s : k.by_dim_[d]) {
                    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
                        auto facet = drop(s.vertices, i);
                        if (!k.contains(facet)) {
                            throw InputError("simplex " + describe(s.vertices) + " is missing its face " +
                                             describe(facet));
                        }
                    }
                }
            }
        }
        return k;
    }

    /// -1 for the empty complex.
    std::ptrdiff_t dimension() const noexcept { return static_cast<std::ptrdiff_t>(by_dim_.size()) - 1; }
    bool empty() const noexcept { return by_dim_.empty(); }

    std::span<const Simplex> simplices(std::size_t dim) const {
        if (dim >= by_dim_.size()) return {};
        return by_dim_[dim];
    }

    std::size_t count(std::size_t dim) const { return dim < by_dim_.size() ? by_dim_[dim].size() : 0; }

    std::size_t total_size() const {
        std::size_t total = 0;
        for (const auto& level : by_dim_) total += level.size();
        return total;
    }

    const Simplex& at(SimplexId id) const { return by_dim_.at(id.dim).at(id.index); }

    std::optional<SimplexId> find(const VertexSet& support) const {
        auto it = index_.find(support.members());
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const VertexSet& support) const { return index_.contains(support.members()); }

    /// Whether construction stopped at a dimension cap while higher
    /// simplices existed. Homology in the top degree is then unreliable.
    bool truncated() const noexcept { return truncated_; }

    VertexSet vertex_set() const {
        std::vector<Vertex> vs;
        for (const auto& s : simplices(0)) vs.push_back(s.vertices[0]);
        return VertexSet(std::move(vs));
    }

    /// Visits every simplex in global order (by dimension, then by support).
    template <class F>
    void for_each(F&& f) const {
        for (const auto& level : by_dim_) {
            for (const auto& s : level) f(s);
        }
    }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        if (a.by_dim_.size() != b.by_dim_.size()) return false;
        for (std::size_t d = 0; d < a.by_dim_.size(); ++d) {
            if (a.by_dim_[d].size() != b.by_dim_[d].size()) return false;
            for (std::size_t i = 0; i < a.by_dim_[d].size(); ++i) {
                if (a.by_dim_[d][i].vertices != b.by_dim_[d][i].vertices) return false;
            }
        }
        return true;
    }

    static VertexSet drop(const VertexSet& s, std::size_t position) {
        std::vector<Vertex> vs;
        vs.reserve(s.size() - 1);
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i != position) vs.push_back(s[i]);
        }
        return VertexSet(std::move(vs));
    }

    static std::string describe(const VertexSet& s) {
        std::string out = "{";
        for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
        return out + "}";
    }

    /// Calls f on every nonempty proper subset of s.
    template <class F>
    static void for_each_proper_face(const VertexSet& s, F&& f) {
        const std::size_t k = s.size();
        if (k > 20) throw InputError("simplex too large to enumerate faces: " + describe(s));
        for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
            std::vector<Vertex> vs;
            for (std::size_t i = 0; i < k; ++i) {
                if (mask & (1u << i)) vs.push_back(s[i]);
            }
            f(VertexSet(std::move(vs)));
        }
    }

private:
    friend SimplicialComplex build_complex(const Digraph&, std::optional<std::size_t>);

    // Callers append in (dimension, support) order.
    void append(Simplex s) {
        const std::size_t d = s.dimension();
        if (by_dim_.size() <= d) by_dim_.resize(d + 1);
        index_.emplace(s.vertices.members(), SimplexId{d, by_dim_[d].size()});
        by_dim_[d].push_back(std::move(s));
    }

    std::vector<std::vector<Simplex>> by_dim_;
    std::unordered_map<std::vector<Vertex>, SimplexId, detail::VertexVectorHash> index_;
    bool truncated_ = false;
};

/// The first ordering w0..wn of s with wi E wj for all i < j found by a
/// depth-first search that appends at the tail and tries candidates in
/// ascending order, or nothing when s is not a simplex.
inline std::optional<std::vector<Vertex>> is_simplex(const Digraph& g, const VertexSet& s) {
    if (s.empty()) throw InputError("is_simplex requires a nonempty vertex set");
    detail::check_within(g, s);
    const std::size_t k = s.size();
    std::vector<Vertex> order;
    order.reserve(k);
    std::vector<bool> used(k, false);
    auto extend = [&](auto&& self) -> bool {
        if (order.size() == k) return true;
        for (std::size_t i = 0; i < k; ++i) {
            if (used[i]) continue;
            const Vertex w = s[i];
            bool ok = true;
            for (Vertex v : order) {
                if (!g.has_edge(v, w)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            used[i] = true;
            order.push_back(w);
            if (self(self)) return true;
            order.pop_back();
            used[i] = false;
        }
        return false;
    };
    if (!extend(extend)) return std::nullopt;
    return order;
}

/// dVR(g), optionally capped at max_dim.
///
/// Level-by-level: a candidate sigma + {w} with w > max(sigma) is examined
/// only when w is joined (in at least one direction) to every vertex of
/// sigma and every facet of the candidate is already present; survivors are
/// confirmed by is_simplex, whose ordering becomes the stored witness.
inline SimplicialComplex build_complex(const Digraph& g, std::optional<std::size_t> max_dim = std::nullopt) {
    SimplicialComplex k;
    const std::size_t n = g.size();
    for (Vertex v = 0; v < n; ++v) k.append({VertexSet{v}, {v}});
    if (n == 0) return k;

    std::vector<Digraph::Row> joined(n);
    for (Vertex v = 0; v < n; ++v) joined[v] = g.out_row(v) | g.in_row(v);

    // Returns true as soon as one (d+1)-simplex is found when probe_only.
    auto grow = [&](std::size_t d, bool probe_only) -> bool {
        std::vector<Simplex> next;
        for (const auto& sigma : k.simplices(d)) {
            Digraph::Row candidates = joined[sigma.vertices[0]];
            for (std::size_t i = 1; i < sigma.vertices.size(); ++i) candidates &= joined[sigma.vertices[i]];
            const Vertex top = sigma.vertices.members().back();
            for (auto w = candidates.find_next(top); w != Digraph::Row::npos; w = candidates.find_next(w)) {
                std::vector<Vertex> vs = sigma.vertices.members();
                vs.push_back(static_cast<Vertex>(w));
                VertexSet candidate(std::move(vs));
                bool faces_present = true;
                for (std::size_t i = 0; i + 1 < candidate.size() && faces_present; ++i) {
                    faces_present = k.contains(SimplicialComplex::drop(candidate, i));
                }
                if (!faces_present) continue;
                auto witness = is_simplex(g, candidate);
                if (!witness) continue;
                if (probe_only) return true;
                next.push_back({std::move(candidate), std::move(*witness)});
            }
        }
        for (auto& s : next) k.append(std::move(s));
        return !next.empty();
    };

    for (std::size_t d = 0;; ++d) {
        if (max_dim && d >= *max_dim) {
            k.truncated_ = grow(d, true);
            break;
        }
        if (!grow(d, false)) break;
    }
    return k;
}

/// Simplex counts per dimension; empty for the empty complex.
inline std::vector<std::size_t> f_vector(const SimplicialComplex& k) {
    std::vector<std::size_t> f;
    for (std::ptrdiff_t d = 0; d <= k.dimension(); ++d) f.push_back(k.count(static_cast<std::size_t>(d)));
    return f;
}

/// Renames vertices through a map; witnesses follow the renaming.
inline SimplicialComplex relabel(const SimplicialComplex& k, std::span<const Vertex> map) {
    std::vector<Simplex> out;
    k.for_each([&](const Simplex& s) {
        std::vector<Vertex> w;
        for (Vertex v : s.witness) w.push_back(map[v]);
        out.push_back({VertexSet(w), w});
    });
    return SimplicialComplex::from_simplices(std::move(out), false);
}

/// Every simplex of k whose support lies in a.
inline SimplicialComplex full_subcomplex(const SimplicialComplex& k, const VertexSet& a) {
    std::vector<Simplex> out;
    k.for_each([&](const Simplex& s) {
        if (s.vertices.is_subset_of(a)) out.push_back(s);
    });
    return SimplicialComplex::from_simplices(std::move(out), false);
}

/// dVR of the subgraph induced on a, expressed in the parent's vertex ids.
inline SimplicialComplex induced_complex(const Digraph& g, const VertexSet& a,
                                         std::optional<std::size_t> max_dim = std::nullopt) {
    auto sub = induced_subgraph(g, a);
    return relabel(build_complex(sub.graph, max_dim), sub.to_parent);
}

/// Executable check that dVR(A) is the full subcomplex of dVR(X) on A.
inline bool check_full_subcomplex(const Digraph& g, const VertexSet& a,
                                  std::optional<std::size_t> cap = std::nullopt) {
    const auto whole = build_complex(g, cap);
    const auto restricted = induced_complex(g, a, cap);
    return full_subcomplex(whole, a) == restricted;
}

/// Executable check that dVR(U_x) is a cone with apex x.
inline bool check_cone(const Digraph& g, Vertex x) {
    const auto ux = minimal_neighborhood(g, x);
    const auto k = induced_complex(g, ux);
    bool cone = true;
    k.for_each([&](const Simplex& s) {
        if (!cone) return;
        std::vector<Vertex> vs = s.vertices.members();
        vs.push_back(x);
        cone = k.contains(VertexSet(std::move(vs)));
    });
    return cone;
}

struct SimplicialMapReport {
    struct Entry {
        VertexSet source;
        VertexSet image;
        bool image_is_simplex = false;

        /// Lower than the source dimension when the image is degenerate.
        std::size_t image_dimension() const { return image.size() - 1; }
    };

    std::vector<Entry> entries;

    bool all_images_are_simplices() const {
        return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.image_is_simplex; });
    }
};

/// Pushes every simplex of dVR(source) forward along a vertex map, which
/// must be a digraph morphism (u E u' implies f(u) E f(u')).
inline SimplicialMapReport map_complex(std::span<const Vertex> f, const Digraph& source, const Digraph& target) {
    if (f.size() != source.size()) {
        throw PreconditionError("vertex map has " + std::to_string(f.size()) + " entries for " +
                                std::to_string(source.size()) + " source vertices");
    }
    for (Vertex u = 0; u < f.size(); ++u) {
        if (f[u] >= target.size()) {
            throw PreconditionError("vertex map sends " + std::to_string(u) + " outside the target");
        }
    }
    for (const auto& [u, v] : source.edges()) {
        if (!target.has_edge(f[u], f[v])) {
            throw PreconditionError("not a digraph morphism: edge (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") maps to non-edge (" + std::to_string(f[u]) + "," + std::to_string(f[v]) + ")");
        }
    }
    const auto src = build_complex(source);
    const auto dst = build_complex(target);
    SimplicialMapReport report;
    src.for_each([&](const Simplex& s) {
        std::vector<Vertex> image;
        for (Vertex v : s.vertices) image.push_back(f[v]);
        VertexSet img(std::move(image));
        const bool ok = dst.contains(img);
        report.entries.push_back({s.vertices, std::move(img), ok});
    });
    return report;
}

}  // namespace dvrhom
