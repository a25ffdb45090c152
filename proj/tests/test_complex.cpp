#include <gtest/gtest.h>

#include <random>

#include "dvrhom/complex.hpp"
#include "dvrhom/generators.hpp"
#include "oracles.hpp"

using namespace dvrhom;

namespace {

std::set<oracle::Support> supports(const SimplicialComplex& k) {
    std::set<oracle::Support> out;
    k.for_each([&](const Simplex& s) { out.insert(s.vertices.members()); });
    return out;
}

using Sizes = std::vector<std::size_t>;

}  // namespace

TEST(IsSimplex, Examples) {
    const auto left = figure_digraph(Figure::left);
    EXPECT_EQ(is_simplex(left, {2}), (std::vector<Vertex>{2}));
    EXPECT_EQ(is_simplex(left, {0, 1, 3}), (std::vector<Vertex>{0, 1, 3}));
    EXPECT_FALSE(is_simplex(Digraph::from_edge_list(3, {{0, 1}, {1, 2}, {2, 0}}), {0, 1, 2}));
}

TEST(IsSimplex, WitnessFollowsAscendingTailExtension) {
    // 2 -> 0 -> 1 and 2 -> 1: the only ordering is [2, 0, 1].
    const auto g = Digraph::from_edge_list(3, {{2, 0}, {0, 1}, {2, 1}});
    EXPECT_EQ(is_simplex(g, {0, 1, 2}), (std::vector<Vertex>{2, 0, 1}));
    // Complete bidirected: ascending order is found first.
    EXPECT_EQ(is_simplex(circulant(4, 2), {0, 1, 2, 3}), (std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(BuildComplex, FigureFixtures) {
    const auto left = build_complex(figure_digraph(Figure::left));
    EXPECT_EQ(f_vector(left), (Sizes{4, 5, 2}));
    EXPECT_TRUE(left.contains({0, 1, 3}));
    EXPECT_TRUE(left.contains({0, 2, 3}));
    EXPECT_FALSE(left.contains({1, 2}));

    const auto middle = build_complex(figure_digraph(Figure::middle));
    EXPECT_EQ(f_vector(middle), (Sizes{4, 5}));
    EXPECT_TRUE(middle.contains({0, 3}));

    EXPECT_EQ(f_vector(build_complex(figure_digraph(Figure::right))), (Sizes{4, 4}));
}

TEST(BuildComplex, OctahedronFromCirculant) {
    const auto k = build_complex(circulant(6, 2));
    EXPECT_EQ(f_vector(k), (Sizes{6, 12, 8}));
    EXPECT_EQ(supports(k), oracle::brute_force_dvr(circulant(6, 2)));
}

TEST(BuildComplex, SimplexListsAreSortedAndIndexed) {
    const auto k = build_complex(random_digraph(7, 0.6, 3));
    for (std::ptrdiff_t d = 0; d <= k.dimension(); ++d) {
        const auto level = k.simplices(static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < level.size(); ++i) {
            if (i > 0) {
                EXPECT_LT(level[i - 1].vertices, level[i].vertices);
            }
            EXPECT_EQ(k.find(level[i].vertices), (SimplexId{static_cast<std::size_t>(d), i}));
        }
    }
}

TEST(BuildComplex, DimensionCap) {
    const auto g = circulant(6, 2);
    const auto k0 = build_complex(g, 0);
    EXPECT_EQ(f_vector(k0), (Sizes{6}));
    EXPECT_TRUE(k0.truncated());

    const auto k1 = build_complex(g, 1);
    EXPECT_EQ(f_vector(k1), (Sizes{6, 12}));
    EXPECT_TRUE(k1.truncated());

    const auto k2 = build_complex(g, 2);
    EXPECT_EQ(f_vector(k2), (Sizes{6, 12, 8}));
    EXPECT_FALSE(k2.truncated());
    EXPECT_FALSE(build_complex(g).truncated());

    EXPECT_FALSE(build_complex(Digraph::from_edge_list(3, {}), 0).truncated());
}

TEST(FVector, SmallCases) {
    EXPECT_EQ(f_vector(build_complex(Digraph::from_edge_list(1, {}))), (Sizes{1}));
    EXPECT_TRUE(f_vector(build_complex(Digraph{})).empty());
    EXPECT_EQ(f_vector(build_complex(digital_image(digital_sphere_points()))), (Sizes{6, 12, 8}));
}

TEST(AbstractComplex, ClosesFacesAndValidates) {
    const auto k = SimplicialComplex::from_simplices({{VertexSet{0, 1, 2}, {}}});
    EXPECT_EQ(f_vector(k), (Sizes{3, 3, 1}));
    EXPECT_THROW(SimplicialComplex::from_simplices({{VertexSet{0, 1}, {}}}, false), InputError);
    EXPECT_THROW(SimplicialComplex::from_simplices({{VertexSet{0, 1}, {0, 2}}}), InputError);
}

TEST(FullSubcomplex, Examples) {
    const auto g = circulant(6, 2);
    EXPECT_TRUE(check_full_subcomplex(g, VertexSet::range(6)));
    EXPECT_TRUE(check_full_subcomplex(g, {0, 1, 2}));
    EXPECT_EQ(f_vector(induced_complex(g, {0, 1, 2})), (Sizes{3, 3, 1}));
}

TEST(FullSubcomplex, RandomCampaign) {
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t n = 2 + seed % 6;
        const auto g = random_digraph(n, 0.5, 1000 + seed);
        std::vector<Vertex> vs;
        for (Vertex v = 0; v < n; ++v) {
            if (rng() % 2) vs.push_back(v);
        }
        if (vs.empty()) vs.push_back(0);
        EXPECT_TRUE(check_full_subcomplex(g, VertexSet(vs))) << "seed " << seed;
        EXPECT_TRUE(check_full_subcomplex(g, VertexSet(vs), 1)) << "seed " << seed;
    }
}

TEST(Cone, Examples) {
    EXPECT_TRUE(check_cone(Digraph::from_edge_list(3, {}), 1));
    EXPECT_TRUE(check_cone(circulant(6, 2), 0));
    const auto middle = figure_digraph(Figure::middle);
    EXPECT_EQ(minimal_neighborhood(middle, 3), (VertexSet{1, 2, 3}));
    EXPECT_TRUE(check_cone(middle, 3));
}

TEST(Cone, DetectsNonCone) {
    // No vertex has U_x equal to the whole vertex set here, so the
    // complex of a 4-cycle is not a cone on any vertex.
    const auto k = build_complex(figure_digraph(Figure::right));
    bool any_apex = false;
    for (Vertex x = 0; x < 4; ++x) {
        bool apex = true;
        k.for_each([&](const Simplex& s) {
            std::vector<Vertex> vs = s.vertices.members();
            vs.push_back(x);
            apex = apex && k.contains(VertexSet(vs));
        });
        any_apex = any_apex || apex;
    }
    EXPECT_FALSE(any_apex);
}

TEST(MapComplex, IdentityAndConstant) {
    const auto g = figure_digraph(Figure::left);
    const std::vector<Vertex> id{0, 1, 2, 3};
    const auto r = map_complex(id, g, g);
    EXPECT_TRUE(r.all_images_are_simplices());
    for (const auto& e : r.entries) EXPECT_EQ(e.source, e.image);

    const std::vector<Vertex> constant{2, 2, 2, 2};
    const auto c = map_complex(constant, g, g);
    for (const auto& e : c.entries) {
        EXPECT_EQ(e.image, (VertexSet{2}));
        EXPECT_EQ(e.image_dimension(), 0u);
    }
}

TEST(MapComplex, OctahedronQuotient) {
    const std::vector<Vertex> mod3{0, 1, 2, 0, 1, 2};
    const auto r = map_complex(mod3, circulant(6, 2), circulant(3, 1));
    EXPECT_TRUE(r.all_images_are_simplices());
    std::size_t triangles = 0;
    for (const auto& e : r.entries) {
        if (e.source.size() == 3) {
            ++triangles;
            EXPECT_EQ(e.image, (VertexSet{0, 1, 2}));
        }
    }
    EXPECT_EQ(triangles, 8u);
}

TEST(MapComplex, RejectsNonMorphism) {
    const std::vector<Vertex> swap{1, 0, 2, 3};
    try {
        map_complex(swap, figure_digraph(Figure::left), figure_digraph(Figure::left));
        FAIL() << "expected PreconditionError";
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("edge (0,"), std::string::npos);
    }
}

// Face closure, witness validity and agreement with the permutation oracle.
TEST(ComplexProperties, BruteForceOracleAgreement) {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const std::size_t n = 1 + seed % 7;
        const double p = std::vector<double>{0.2, 0.45, 0.7, 0.9}[seed % 4];
        const auto g = random_digraph(n, p, seed);
        const auto k = build_complex(g);
        EXPECT_EQ(supports(k), oracle::brute_force_dvr(g)) << "seed " << seed;
        k.for_each([&](const Simplex& s) {
            ASSERT_EQ(VertexSet(s.witness), s.vertices);
            for (std::size_t i = 0; i < s.witness.size(); ++i) {
                for (std::size_t j = i + 1; j < s.witness.size(); ++j) EXPECT_TRUE(g.has_edge(s.witness[i], s.witness[j]));
            }
            if (s.dimension() <= 5) {
                SimplicialComplex::for_each_proper_face(s.vertices, [&](const VertexSet& f) { EXPECT_TRUE(k.contains(f)); });
            }
        });
    }
}

TEST(ComplexProperties, SymmetricMatchesCliqueEnumeration) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t n = 1 + seed % 10;
        const auto r = random_digraph(n, 0.55, 500 + seed);
        // Symmetrize.
        std::vector<Edge> edges;
        for (const auto& [u, v] : r.edges()) {
            edges.emplace_back(u, v);
            edges.emplace_back(v, u);
        }
        const auto g = Digraph::from_edge_list(n, edges);
        ASSERT_TRUE(is_symmetric(g));
        EXPECT_EQ(supports(build_complex(g)), oracle::clique_complex(g)) << "seed " << seed;
    }
}

TEST(ComplexProperties, Deterministic) {
    const auto g = random_digraph(8, 0.6, 99);
    const auto a = build_complex(g), b = build_complex(g);
    ASSERT_EQ(a, b);
    for (std::ptrdiff_t d = 0; d <= a.dimension(); ++d) {
        const auto la = a.simplices(static_cast<std::size_t>(d)), lb = b.simplices(static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < la.size(); ++i) EXPECT_EQ(la[i].witness, lb[i].witness);
    }
}
