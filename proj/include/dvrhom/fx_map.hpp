#pragma once

// The comparison map f : |dVR(g)| -> g.
//
// On a simplex with witness v0, ..., vn a point goes to its nearest vertex.
// With barycentric coordinates t, |x - e_i|^2 = sum_k t_k^2 - 2 t_i + 1, so
// the nearest vertices are exactly the argmax coordinates. Ties go to the
// tied vertex with the largest witness index. Points with zero coordinates
// belong to a face and must be presented on that face, with its own witness.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dvrhom/complex.hpp"
#include "dvrhom/digraph.hpp"
#include "dvrhom/error.hpp"

namespace dvrhom {

/// A point of the realization: a carrier simplex, listed in its witness
/// order, and exact barycentric coordinates against that order.
struct RealizationPoint {
    std::vector<Vertex> carrier;
    std::vector<mpq_class> coords;

    void validate() const {
        if (carrier.empty() || carrier.size() != coords.size()) {
            throw InputError("realization point needs one coordinate per carrier vertex");
        }
        if (VertexSet(carrier).size() != carrier.size()) throw InputError("carrier repeats a vertex");
        mpq_class total = 0;
        for (const auto& t : coords) {
            if (t < 0) throw InputError("barycentric coordinates must be non-negative");
            total += t;
        }
        if (total != 1) throw InputError("barycentric coordinates must sum to 1, got " + total.get_str());
    }

    std::string describe() const {
        std::string out = "[";
        for (std::size_t i = 0; i < carrier.size(); ++i) {
            out += (i ? ", " : "") + std::to_string(carrier[i]) + ":" + coords[i].get_str();
        }
        return out + "]";
    }
};

/// Point on a stored simplex, coordinates indexed by its witness.
inline RealizationPoint point_on(const SimplicialComplex& k, SimplexId id, std::vector<mpq_class> coords) {
    RealizationPoint p{k.at(id).witness, std::move(coords)};
    for (auto& t : p.coords) t.canonicalize();
    p.validate();
    return p;
}

inline RealizationPoint barycenter(const SimplicialComplex& k, SimplexId id) {
    const auto& s = k.at(id);
    const mpq_class t(1, static_cast<unsigned long>(s.witness.size()));
    return {s.witness, std::vector<mpq_class>(s.witness.size(), t)};
}

/// Moves a point onto the face spanned by its nonzero coordinates, using
/// that face's stored witness.
inline RealizationPoint minimal_carrier(const SimplicialComplex& k, const RealizationPoint& p) {
    std::vector<Vertex> support;
    for (std::size_t i = 0; i < p.carrier.size(); ++i) {
        if (p.coords[i] != 0) support.push_back(p.carrier[i]);
    }
    if (support.size() == p.carrier.size()) return p;
    const auto id = k.find(VertexSet(support));
    if (!id) throw PreconditionError("face " + SimplicialComplex::describe(VertexSet(support)) + " is not in the complex");
    RealizationPoint q{k.at(*id).witness, {}};
    for (Vertex v : q.carrier) {
        const auto pos = std::find(p.carrier.begin(), p.carrier.end(), v) - p.carrier.begin();
        q.coords.push_back(p.coords[static_cast<std::size_t>(pos)]);
    }
    return q;
}

/// Vertices whose coordinate equals the maximum, compared exactly.
struct TieSet {
    VertexSet members;
};

inline TieSet tie_set(const RealizationPoint& p) {
    p.validate();
    const auto& top = *std::max_element(p.coords.begin(), p.coords.end());
    std::vector<Vertex> ties;
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
        if (p.coords[i] == top) ties.push_back(p.carrier[i]);
    }
    return {VertexSet(std::move(ties))};
}

/// The nearest vertex; among equidistant ones, the one latest in the
/// carrier's witness order.
inline Vertex evaluate_fx(const RealizationPoint& p) {
    p.validate();
    const auto& top = *std::max_element(p.coords.begin(), p.coords.end());
    for (std::size_t i = p.coords.size(); i-- > 0;) {
        if (p.coords[i] == top) return p.carrier[i];
    }
    throw std::logic_error("unreachable");
}

struct CertificateFailure {
    VertexSet simplex;
    VertexSet face;
    VertexSet tie;
    Vertex image = 0;     ///< tie member latest in the face's witness
    Vertex violator = 0;  ///< tie member v without v E image
};

struct CertificateReport {
    std::size_t triples_checked = 0;
    std::optional<CertificateFailure> failure;

    bool passed() const noexcept { return !failure.has_value(); }
};

/// For every simplex s, every face f of s and every nonempty t inside f,
/// checks that each member of t reaches the member of t latest in f's
/// witness. This is the combinatorial content of f(W) lying in U_{f(x)}
/// near a point whose tie set is t.
inline CertificateReport continuity_certificate(const SimplicialComplex& k, const Digraph& g) {
    CertificateReport report;
    k.for_each([&](const Simplex& s) {
        if (report.failure) return;
        const std::size_t size = s.vertices.size();
        if (size > 16) throw PreconditionError("simplex too large to certify: " + SimplicialComplex::describe(s.vertices));
        for (std::uint32_t face_mask = 1; face_mask < (1u << size) && !report.failure; ++face_mask) {
            std::vector<Vertex> face_vs;
            for (std::size_t i = 0; i < size; ++i) {
                if (face_mask & (1u << i)) face_vs.push_back(s.vertices[i]);
            }
            const VertexSet face(face_vs);
            const auto id = k.find(face);
            if (!id) throw PreconditionError("complex is not face-closed at " + SimplicialComplex::describe(face));
            const auto& witness = k.at(*id).witness;
            const std::size_t fsize = witness.size();
            for (std::uint32_t tie_mask = 1; tie_mask < (1u << fsize); ++tie_mask) {
                ++report.triples_checked;
                std::size_t latest = 0;
                for (std::size_t i = 0; i < fsize; ++i) {
                    if (tie_mask & (1u << i)) latest = i;
                }
                const Vertex w = witness[latest];
                for (std::size_t i = 0; i < fsize; ++i) {
                    if ((tie_mask & (1u << i)) && !g.has_edge(witness[i], w)) {
                        std::vector<Vertex> tie;
                        for (std::size_t j = 0; j < fsize; ++j) {
                            if (tie_mask & (1u << j)) tie.push_back(witness[j]);
                        }
                        report.failure = CertificateFailure{s.vertices, face, VertexSet(tie), w, witness[i]};
                        return;
                    }
                }
            }
        }
    });
    return report;
}

enum class SampleMode { interior, barycenter, boundary, mixed };

struct SamplingOptions {
    std::size_t samples = 1000;
    mpq_class delta{1, 100};  ///< l1 radius of the perturbation
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::interior;
};

struct SampleFailure {
    std::size_t index = 0;
    RealizationPoint point;
    RealizationPoint perturbed;
    Vertex image = 0;
    Vertex perturbed_image = 0;
    /// Largest l1 distance, along the same direction, at which the failure
    /// disappears; empty if it survived every halving tried.
    std::optional<mpq_class> vanishing_delta;
};

struct SamplingReport {
    std::size_t samples = 0;
    std::size_t skipped = 0;  ///< zero perturbations (e.g. vertex points)
    std::vector<SampleFailure> failures;

    double failure_rate() const {
        return samples == 0 ? 0.0 : static_cast<double>(failures.size()) / static_cast<double>(samples);
    }
};

namespace detail {

// Uniform integer in [lo, hi] by rejection.
inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % span;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
}

inline mpq_class l1_distance(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    mpq_class d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += abs(a[i] - b[i]);
    return d;
}

}  // namespace detail

/// Monte Carlo check of continuity at sampled points: each point x is moved
/// within its sampled simplex by at most delta in l1 and the image of the
/// moved point must reach f(x), i.e. lie in U_{f(x)}. Sample i draws from
/// mt19937_64 seeded with (seed, i), so results do not depend on order.
inline SamplingReport sampled_continuity_check(const SimplicialComplex& k, const Digraph& g,
                                               const SamplingOptions& options) {
    if (options.delta <= 0) throw InputError("delta must be positive");
    SamplingReport report;
    const std::size_t total = k.total_size();
    if (total == 0) return report;

    for (std::size_t index = 0; index < options.samples; ++index) {
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        std::mt19937_64 rng(seq);
        ++report.samples;

        // Simplex uniformly among all simplices.
        auto pick = static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<std::int64_t>(total) - 1));
        SimplexId id;
        while (pick >= k.count(id.dim)) pick -= k.count(id.dim++);
        id.index = pick;
        const auto& simplex = k.at(id);
        const std::size_t size = simplex.witness.size();

        SampleMode mode = options.mode;
        if (mode == SampleMode::mixed) {
            constexpr SampleMode cycle[] = {SampleMode::interior, SampleMode::barycenter, SampleMode::boundary};
            mode = cycle[index % 3];
        }

        std::vector<mpz_class> weights(size, 1);
        if (mode != SampleMode::barycenter) {
            for (auto& w : weights) w = static_cast<long>(detail::uniform(rng, 1, 1000));
        }
        if (mode == SampleMode::boundary && size > 1) {
            // Zero a random nonempty proper subset.
            const auto mask = detail::uniform(rng, 1, (std::int64_t{1} << size) - 2);
            for (std::size_t i = 0; i < size; ++i) {
                if (mask & (std::int64_t{1} << i)) weights[i] = 0;
            }
        }
        mpz_class weight_sum = 0;
        for (const auto& w : weights) weight_sum += w;
        RealizationPoint x{simplex.witness, {}};
        for (const auto& w : weights) x.coords.emplace_back(w, weight_sum);
        for (auto& t : x.coords) t.canonicalize();

        // Direction with zero sum that does not leave the simplex through a
        // face the point already lies on.
        std::vector<mpq_class> dir(size, 0);
        std::size_t positive = 0;
        for (std::size_t i = 0; i < size; ++i) {
            auto e = detail::uniform(rng, -1000, 1000);
            if (x.coords[i] == 0) e = e < 0 ? -e : e;
            dir[i] = e;
            if (x.coords[i] > 0) ++positive;
        }
        mpq_class drift = 0;
        for (const auto& e : dir) drift += e;
        for (std::size_t i = 0; i < size; ++i) {
            if (x.coords[i] > 0) dir[i] -= drift / positive;
        }
        mpq_class norm = 0;
        for (const auto& e : dir) norm += abs(e);
        if (norm == 0) {
            ++report.skipped;
            continue;
        }
        mpq_class u(detail::uniform(rng, 1, 1000), 1000);
        u.canonicalize();
        mpq_class scale = options.delta * u / norm;
        for (std::size_t i = 0; i < size; ++i) {
            if (dir[i] < 0) scale = std::min(scale, mpq_class(x.coords[i] / -dir[i]));
        }

        const Vertex image = evaluate_fx(minimal_carrier(k, x));
        auto moved = [&](const mpq_class& s) {
            RealizationPoint y{x.carrier, x.coords};
            for (std::size_t i = 0; i < size; ++i) y.coords[i] += s * dir[i];
            return y;
        };
        const auto y = moved(scale);
        const Vertex moved_image = evaluate_fx(minimal_carrier(k, y));
        if (g.has_edge(moved_image, image)) continue;

        SampleFailure failure{index, x, y, image, moved_image, std::nullopt};
        mpq_class s = scale;
        for (int halving = 0; halving < 200; ++halving) {
            s /= 2;
            const auto z = moved(s);
            if (g.has_edge(evaluate_fx(minimal_carrier(k, z)), image)) {
                failure.vanishing_delta = detail::l1_distance(x.coords, z.coords);
                break;
            }
        }
        report.failures.push_back(std::move(failure));
    }
    return report;
}

}  // namespace dvrhom
