#include <gtest/gtest.h>

#include "dvrhom/complex.hpp"
#include "dvrhom/fundamental_group.hpp"
#include "dvrhom/generators.hpp"
#include "dvrhom/homology.hpp"

using namespace dvrhom;

TEST(Pi1, TreeIsTrivial) {
    const auto path = Digraph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}});
    const auto p = pi1_presentation(build_complex(path), 0);
    EXPECT_TRUE(p.generators.empty());
    EXPECT_TRUE(p.relators.empty());
}

TEST(Pi1, HollowSquareIsFreeOnOneGenerator) {
    const auto p = pi1_presentation(build_complex(figure_digraph(Figure::right)), 0);
    // BFS from 0 takes {0,1}, {0,2}, {1,3}; the loop closes through {2,3}.
    EXPECT_EQ(p.generators, std::vector<std::string>{"e2_3"});
    EXPECT_TRUE(p.relators.empty());
    EXPECT_EQ(abelianization(p), (HomologyGroup{1, {}}));
}

TEST(Pi1, OctahedronAbelianizesToTrivial) {
    const auto k = build_complex(circulant(6, 2));
    const auto p = pi1_presentation(k, 0);
    EXPECT_TRUE(abelianization(p).is_zero());
    EXPECT_TRUE(p.generators.empty()) << "Tietze moves should remove all generators";
}

TEST(Pi1, FigureMiddleMatchesH1) {
    const auto k = build_complex(figure_digraph(Figure::middle));
    const auto ab = abelianization(pi1_presentation(k, 0));
    EXPECT_EQ(ab, (HomologyGroup{2, {}}));
    EXPECT_EQ(ab, homology_integer(k).groups[1]);
}

TEST(Pi1, Errors) {
    EXPECT_THROW(pi1_presentation(SimplicialComplex{}, 0), PreconditionError);
    const auto two_points = build_complex(Digraph::from_edge_list(2, {}));
    try {
        pi1_presentation(two_points, 0);
        FAIL() << "expected PreconditionError";
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("0 and 1"), std::string::npos);
    }
    EXPECT_THROW(pi1_presentation(build_complex(circulant(3, 1)), 7), PreconditionError);
}

TEST(Abelianization, SmallPresentations) {
    EXPECT_TRUE(abelianization(Presentation{}).is_zero());
    Presentation p{{"a"}, {{Letter{0, 1}, Letter{0, 1}}}};
    const auto h = abelianization(p);
    EXPECT_EQ(h.betti, 0u);
    EXPECT_EQ(h.torsion, std::vector<mpz_class>{2});
}

TEST(Tietze, ReductionsKeepAbelianization) {
    // <a, b | a b a^-1 b^-1, a a> : Z x Z/2
    Presentation p{{"a", "b"},
                   {{Letter{0, 1}, Letter{1, 1}, Letter{0, -1}, Letter{1, -1}}, {Letter{0, 1}, Letter{0, 1}}}};
    const auto s = simplify(p);
    EXPECT_EQ(abelianization(s), abelianization(p));
    // <a, b | a b> collapses to the trivial presentation on one generator.
    const auto t = simplify(Presentation{{"a", "b"}, {{Letter{0, 1}, Letter{1, 1}}}});
    EXPECT_EQ(t.generators.size(), 1u);
    EXPECT_TRUE(t.relators.empty());
}

TEST(Tietze, CyclicReduction) {
    const Word w{Letter{0, 1}, Letter{1, 1}, Letter{1, -1}, Letter{2, 1}, Letter{0, -1}};
    EXPECT_EQ(cyclically_reduce(w), (Word{Letter{2, 1}}));
}

TEST(Pi1, AbelianizationMatchesH1OnRandomComplexes) {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const auto g = random_digraph(2 + seed % 7, std::vector<double>{0.3, 0.5, 0.8}[seed % 3], 300 + seed);
        const auto k = build_complex(g);
        const auto h = homology_integer(k);
        if (h.groups[0].betti != 1) continue;
        const HomologyGroup h1 = h.groups.size() > 1 ? h.groups[1] : HomologyGroup{};
        EXPECT_EQ(abelianization(pi1_presentation(k, 0)), h1) << "seed " << seed;
    }
}
