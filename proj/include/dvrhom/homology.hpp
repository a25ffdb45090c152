#pragma once

// Simplicial homology of complexes and pairs.
//
// Every simplex is oriented by its sorted vertex tuple, independently of its
// witness ordering, so boundary signs are reproducible.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "dvrhom/complex.hpp"
#include "dvrhom/error.hpp"
#include "dvrhom/field.hpp"
#include "dvrhom/smith.hpp"

namespace dvrhom {

/// Free rank plus torsion coefficients t1 | t2 | ... (each at least 2).
struct HomologyGroup {
    std::size_t betti = 0;
    std::vector<mpz_class> torsion;

    bool is_zero() const noexcept { return betti == 0 && torsion.empty(); }
    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct Homology {
    std::vector<HomologyGroup> groups;  ///< indexed by degree
    bool reduced = false;
    bool truncated = false;  ///< top degree may lack coboundaries

    std::vector<std::size_t> betti() const {
        std::vector<std::size_t> b;
        for (const auto& g : groups) b.push_back(g.betti);
        return b;
    }
};

/// Free chain complex given by its ranks and boundary matrices.
/// boundary(n) maps C_n to C_{n-1}; boundary(0) is the zero map.
class ChainComplex {
public:
    ChainComplex() = default;
    ChainComplex(std::vector<std::size_t> ranks, std::vector<IntegerMatrix> boundaries)
        : ranks_(std::move(ranks)), boundaries_(std::move(boundaries)) {}

    /// Number of degrees carrying chains (top degree + 1).
    std::size_t length() const noexcept { return ranks_.size(); }

    std::size_t rank(std::size_t n) const { return n < ranks_.size() ? ranks_[n] : 0; }

    IntegerMatrix boundary(std::size_t n) const {
        if (n == 0) return IntegerMatrix(0, rank(0));
        if (n < boundaries_.size()) return boundaries_[n];
        return IntegerMatrix(rank(n - 1), rank(n));
    }

private:
    std::vector<std::size_t> ranks_;
    std::vector<IntegerMatrix> boundaries_;
};

/// Matrix of the boundary map C_n -> C_{n-1}: column per n-simplex, row per
/// (n-1)-simplex, entry (-1)^i where the row is the column's support with
/// its i-th vertex deleted.
inline IntegerMatrix boundary_matrix(const SimplicialComplex& k, std::size_t n) {
    if (n == 0) return IntegerMatrix(0, k.count(0));
    IntegerMatrix m(k.count(n - 1), k.count(n));
    const auto simplices = k.simplices(n);
    for (std::size_t col = 0; col < simplices.size(); ++col) {
        const auto& s = simplices[col].vertices;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto face = k.find(SimplicialComplex::drop(s, i));
            if (!face) throw PreconditionError("complex is not face-closed at " + SimplicialComplex::describe(s));
            m.set(face->index, col, i % 2 == 0 ? 1 : -1);
        }
    }
    return m;
}

inline ChainComplex chain_complex(const SimplicialComplex& k) {
    std::vector<std::size_t> ranks;
    std::vector<IntegerMatrix> boundaries;
    for (std::ptrdiff_t n = 0; n <= k.dimension(); ++n) {
        ranks.push_back(k.count(static_cast<std::size_t>(n)));
        boundaries.push_back(boundary_matrix(k, static_cast<std::size_t>(n)));
    }
    return {std::move(ranks), std::move(boundaries)};
}

/// Positions of the simplices of sub inside k, per dimension. Throws when
/// sub is not a subcomplex of k.
inline std::vector<std::vector<std::size_t>> inclusion_map(const SimplicialComplex& k, const SimplicialComplex& sub) {
    std::vector<std::vector<std::size_t>> map;
    for (std::ptrdiff_t n = 0; n <= sub.dimension(); ++n) {
        auto& level = map.emplace_back();
        for (const auto& s : sub.simplices(static_cast<std::size_t>(n))) {
            const auto id = k.find(s.vertices);
            if (!id) {
                throw PreconditionError("not a subcomplex: simplex " + SimplicialComplex::describe(s.vertices) +
                                        " is missing from the ambient complex");
            }
            level.push_back(id->index);
        }
    }
    return map;
}

/// The quotient C(k)/C(sub) together with, per dimension, the position in
/// k of each surviving basis simplex.
struct RelativeChains {
    ChainComplex chains;
    std::vector<std::vector<std::size_t>> kept;
};

inline RelativeChains relative_chain_complex(const SimplicialComplex& k, const SimplicialComplex& sub) {
    const auto incl = inclusion_map(k, sub);
    const std::size_t length = static_cast<std::size_t>(k.dimension() + 1);
    std::vector<std::vector<std::size_t>> kept(length);
    std::vector<std::vector<std::optional<std::size_t>>> position(length);
    for (std::size_t n = 0; n < length; ++n) {
        std::vector<bool> in_sub(k.count(n), false);
        if (n < incl.size()) {
            for (auto p : incl[n]) in_sub[p] = true;
        }
        position[n].assign(k.count(n), std::nullopt);
        for (std::size_t p = 0; p < k.count(n); ++p) {
            if (!in_sub[p]) {
                position[n][p] = kept[n].size();
                kept[n].push_back(p);
            }
        }
    }
    std::vector<std::size_t> ranks;
    std::vector<IntegerMatrix> boundaries;
    for (std::size_t n = 0; n < length; ++n) {
        ranks.push_back(kept[n].size());
        if (n == 0) {
            boundaries.emplace_back(0, kept[0].size());
            continue;
        }
        IntegerMatrix full = boundary_matrix(k, n);
        IntegerMatrix m(kept[n - 1].size(), kept[n].size());
        for (const auto& [key, value] : full.entries()) {
            const auto row = position[n - 1][key.first];
            const auto col = position[n][key.second];
            if (row && col) m.set(*row, *col, value);
        }
        boundaries.push_back(std::move(m));
    }
    return {ChainComplex(std::move(ranks), std::move(boundaries)), std::move(kept)};
}

/// Integer homology of a free chain complex via Smith normal form:
/// betti_n = rank C_n - rank d_n - rank d_{n+1}, torsion_n = invariant
/// factors of d_{n+1} above 1.
inline std::vector<HomologyGroup> integer_homology(const ChainComplex& c) {
    std::vector<SmithForm> forms;
    for (std::size_t n = 0; n <= c.length(); ++n) forms.push_back(smith_normal_form(c.boundary(n), false));
    std::vector<HomologyGroup> groups;
    for (std::size_t n = 0; n < c.length(); ++n) {
        HomologyGroup h;
        h.betti = c.rank(n) - forms[n].rank() - forms[n + 1].rank();
        for (const auto& d : forms[n + 1].d) {
            if (d > 1) h.torsion.push_back(d);
        }
        groups.push_back(std::move(h));
    }
    return groups;
}

/// H_n(k; Z) for every degree up to the top dimension. The reduced variant
/// drops one copy of Z from H_0.
inline Homology homology_integer(const SimplicialComplex& k, bool reduced = false) {
    Homology h{integer_homology(chain_complex(k)), reduced, k.truncated()};
    if (reduced && !h.groups.empty()) h.groups[0].betti -= 1;
    return h;
}

/// H_n(k, sub; Z), computed from the quotient chain complex.
inline Homology relative_homology(const SimplicialComplex& k, const SimplicialComplex& sub) {
    return {integer_homology(relative_chain_complex(k, sub).chains), false, k.truncated()};
}

template <class F>
std::vector<std::size_t> field_betti(const F& f, const ChainComplex& c) {
    std::vector<std::size_t> ranks;
    for (std::size_t n = 0; n <= c.length(); ++n) ranks.push_back(rank(f, FieldMatrix<F>::from_integer(f, c.boundary(n))));
    std::vector<std::size_t> betti;
    for (std::size_t n = 0; n < c.length(); ++n) betti.push_back(c.rank(n) - ranks[n] - ranks[n + 1]);
    return betti;
}

/// Betti numbers over Q or Z/p by Gaussian elimination.
inline std::vector<std::size_t> homology_field(const SimplicialComplex& k, const Coefficients& field) {
    return std::visit([&](const auto& f) { return field_betti(f, chain_complex(k)); }, field);
}

// ---------------------------------------------------------------------------
// Long exact sequence of a pair over a field.

/// One node of  ... -> H_n(A) -> H_n(X) -> H_n(X,A) -> H_{n-1}(A) -> ...
struct LesNode {
    std::string label;  ///< "H_n(A)", "H_n(X)" or "H_n(X,A)"
    std::size_t degree = 0;
    std::size_t dimension = 0;       ///< dim of the homology group
    std::size_t incoming_rank = 0;   ///< rank of the map into this node
    std::size_t outgoing_rank = 0;   ///< rank of the map out of this node
    bool composite_zero = true;      ///< outgoing o incoming == 0

    std::size_t kernel_dimension() const noexcept { return dimension - outgoing_rank; }
    bool exact() const noexcept { return composite_zero && incoming_rank == kernel_dimension(); }
};

struct LesReport {
    std::string field;
    std::vector<LesNode> nodes;  ///< in sequence order, from the top degree down

    bool exact() const {
        return std::all_of(nodes.begin(), nodes.end(), [](const LesNode& n) { return n.exact(); });
    }
};

namespace detail {

/// Homology of a chain complex in one degree over a field, with explicit
/// representative cycles and a coordinate map from cycles to classes.
template <class F>
class HomologyModel {
public:
    using T = typename F::value_type;
    using Vector = std::vector<T>;

    HomologyModel(const F& f, const ChainComplex& c, std::size_t n) : f_(f), chain_rank_(c.rank(n)) {
        const auto d_n = FieldMatrix<F>::from_integer(f, c.boundary(n));
        const auto d_up = FieldMatrix<F>::from_integer(f, c.boundary(n + 1));
        const auto cycles = kernel_basis(f, d_n);
        // Boundaries first so that pivots among the cycles pick a complement.
        FieldMatrix<F> stacked(f, chain_rank_, d_up.cols + cycles.size());
        for (std::size_t i = 0; i < chain_rank_; ++i) {
            for (std::size_t j = 0; j < d_up.cols; ++j) stacked.data[i][j] = d_up.data[i][j];
            for (std::size_t j = 0; j < cycles.size(); ++j) stacked.data[i][d_up.cols + j] = cycles[j][i];
        }
        auto reduced = stacked;
        std::vector<Vector> columns;
        for (auto p : row_reduce(f, reduced)) {
            Vector col(chain_rank_);
            for (std::size_t i = 0; i < chain_rank_; ++i) col[i] = stacked.data[i][p];
            if (p < d_up.cols) {
                ++boundary_rank_;
            } else {
                representatives_.push_back(col);
            }
            columns.push_back(std::move(col));
        }
        basis_ = FieldMatrix<F>::from_columns(f, chain_rank_, columns);
    }

    std::size_t dimension() const noexcept { return representatives_.size(); }
    const std::vector<Vector>& representatives() const noexcept { return representatives_; }

    /// Class of a cycle in the representative basis.
    Vector coordinates(const Vector& cycle) const {
        auto x = solve(f_, basis_, cycle);
        if (!x) throw std::logic_error("chain is not a cycle");
        return Vector(x->begin() + static_cast<std::ptrdiff_t>(boundary_rank_), x->end());
    }

private:
    F f_;
    std::size_t chain_rank_;
    std::size_t boundary_rank_ = 0;
    std::vector<Vector> representatives_;
    FieldMatrix<F> basis_;
};

template <class F>
LesReport les_check(const F& f, const SimplicialComplex& k, const SimplicialComplex& sub) {
    using T = typename F::value_type;
    using Vector = std::vector<T>;

    const auto incl = inclusion_map(k, sub);
    const auto rel = relative_chain_complex(k, sub);
    const auto cx = chain_complex(k);
    const auto ca = chain_complex(sub);
    const std::size_t length = cx.length();

    std::vector<HomologyModel<F>> ha, hx, hr;
    for (std::size_t n = 0; n < length; ++n) {
        ha.emplace_back(f, ca, n);
        hx.emplace_back(f, cx, n);
        hr.emplace_back(f, rel.chains, n);
    }

    auto embed = [&](std::size_t n, const Vector& a_chain) {
        Vector x(cx.rank(n), f.zero());
        for (std::size_t p = 0; p < a_chain.size(); ++p) x[incl[n][p]] = a_chain[p];
        return x;
    };
    auto project = [&](std::size_t n, const Vector& x_chain) {
        Vector r(rel.kept[n].size());
        for (std::size_t p = 0; p < r.size(); ++p) r[p] = x_chain[rel.kept[n][p]];
        return r;
    };
    auto lift = [&](std::size_t n, const Vector& r_chain) {
        Vector x(cx.rank(n), f.zero());
        for (std::size_t p = 0; p < r_chain.size(); ++p) x[rel.kept[n][p]] = r_chain[p];
        return x;
    };
    auto restrict_to_sub = [&](std::size_t n, const Vector& x_chain) {
        Vector a(ca.rank(n), f.zero());
        std::vector<bool> hit(x_chain.size(), false);
        if (n < incl.size()) {
            for (std::size_t p = 0; p < a.size(); ++p) {
                a[p] = x_chain[incl[n][p]];
                hit[incl[n][p]] = true;
            }
        }
        for (std::size_t q = 0; q < x_chain.size(); ++q) {
            if (!hit[q] && !f.is_zero(x_chain[q])) throw std::logic_error("connecting boundary leaves the subcomplex");
        }
        return a;
    };
    auto map_matrix = [&](std::size_t target_dim, const std::vector<Vector>& images) {
        return FieldMatrix<F>::from_columns(f, target_dim, images);
    };

    // Maps in sequence order: i_n, j_n, d_n for n = top..0.
    struct Step {
        std::string label;
        std::size_t degree;
        std::size_t dimension;
        FieldMatrix<F> outgoing;
    };
    std::vector<Step> steps;
    for (std::size_t m = length; m-- > 0;) {
        {
            std::vector<Vector> images;
            for (const auto& z : ha[m].representatives()) images.push_back(hx[m].coordinates(embed(m, z)));
            steps.push_back({"H_" + std::to_string(m) + "(A)", m, ha[m].dimension(), map_matrix(hx[m].dimension(), images)});
        }
        {
            std::vector<Vector> images;
            for (const auto& z : hx[m].representatives()) images.push_back(hr[m].coordinates(project(m, z)));
            steps.push_back({"H_" + std::to_string(m) + "(X)", m, hx[m].dimension(), map_matrix(hr[m].dimension(), images)});
        }
        {
            std::vector<Vector> images;
            const std::size_t target = m == 0 ? 0 : ha[m - 1].dimension();
            if (m > 0) {
                const auto d = FieldMatrix<F>::from_integer(f, cx.boundary(m));
                for (const auto& z : hr[m].representatives()) {
                    images.push_back(ha[m - 1].coordinates(restrict_to_sub(m - 1, d.apply(f, lift(m, z)))));
                }
            } else {
                images.assign(hr[0].dimension(), Vector{});
            }
            steps.push_back({"H_" + std::to_string(m) + "(X,A)", m, hr[m].dimension(), map_matrix(target, images)});
        }
    }

    LesReport report;
    report.field = f.name();
    for (std::size_t s = 0; s < steps.size(); ++s) {
        LesNode node;
        node.label = steps[s].label;
        node.degree = steps[s].degree;
        node.dimension = steps[s].dimension;
        node.outgoing_rank = rank(f, steps[s].outgoing);
        if (s > 0) {
            const auto& incoming = steps[s - 1].outgoing;
            node.incoming_rank = rank(f, incoming);
            node.composite_zero = steps[s].outgoing.multiply(f, incoming).is_zero(f);
        }
        report.nodes.push_back(std::move(node));
    }
    return report;
}

}  // namespace detail

/// Builds the maps i*, j* and the connecting map of the pair (k, sub) over
/// a field and checks exactness at every node of the sequence.
inline LesReport les_exactness_check(const SimplicialComplex& k, const SimplicialComplex& sub,
                                     const Coefficients& field) {
    return std::visit([&](const auto& f) { return detail::les_check(f, k, sub); }, field);
}

}  // namespace dvrhom
