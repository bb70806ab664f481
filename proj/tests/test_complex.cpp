#include <random>

#include <gtest/gtest.h>

#include "detfacet/complex.hpp"
#include "detfacet/detideal.hpp"
#include "oracles.hpp"

using namespace detfacet;

namespace {

std::vector<std::vector<int>> clique_sets(const CliqueDecomposition& cd) {
    std::vector<std::vector<int>> out;
    for (const auto& c : cd.cliques) out.push_back(c.vertices);
    return out;
}

// Closedness read off leading terms: generators from facets of distinct
// cliques must have coprime diagonals.
bool closed_by_leading_terms(const SimplicialComplex& d) {
    int m = d.rows();
    VariableLayout layout(m, d.max_label());
    auto cd = clique_decomposition(d);
    std::vector<std::vector<Monomial>> lts;
    for (const auto& c : cd.cliques) {
        std::vector<Monomial> v;
        for (const auto& f : c.facets())
            for (const auto& r : k_subsets(full_rows(m), f.size())) v.push_back(oracle::diagonal(layout, MinorSpec(r, f)));
        lts.push_back(v);
    }
    for (std::size_t i = 0; i < lts.size(); ++i)
        for (std::size_t j = i + 1; j < lts.size(); ++j)
            for (const auto& a : lts[i])
                for (const auto& b : lts[j])
                    if (!a.coprime(b)) return false;
    return true;
}

SimplicialComplex random_complex(std::mt19937_64& rng, int m, int n) {
    std::uniform_int_distribution<int> count(1, 5), size(2, m);
    std::vector<Facet> fs;
    std::vector<int> verts(static_cast<std::size_t>(n));
    std::iota(verts.begin(), verts.end(), 1);
    int k = count(rng);
    for (int i = 0; i < k; ++i) {
        std::shuffle(verts.begin(), verts.end(), rng);
        Facet f(verts.begin(), verts.begin() + size(rng));
        std::sort(f.begin(), f.end());
        fs.push_back(f);
    }
    // Drop faces contained in others.
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    std::vector<Facet> kept;
    for (const auto& f : fs) {
        bool sub = false;
        for (const auto& g : fs) sub = sub || (f != g && is_subset(f, g));
        if (!sub) kept.push_back(f);
    }
    return SimplicialComplex(m, kept);
}

} // namespace

TEST(Complex, Validation) {
    EXPECT_THROW(SimplicialComplex(3, {{1, 2, 3, 4}}), StructuralError);
    EXPECT_THROW(SimplicialComplex(3, {{1}}), StructuralError);
    EXPECT_THROW(SimplicialComplex(3, {{1, 2, 3}, {1, 2}}), StructuralError);
    EXPECT_THROW(SimplicialComplex(3, {{0, 1}}), StructuralError);
    EXPECT_THROW(SimplicialComplex(3, {}), StructuralError);
    SimplicialComplex d(3, {{3, 2, 1}, {3, 2, 1}});
    EXPECT_EQ(d.facets().size(), 1u);
    EXPECT_EQ(d.facets()[0], (Facet{1, 2, 3}));
}

TEST(Cliques, FourCliques) {
    SimplicialComplex d(3, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}, {3, 4, 5}, {5, 6, 7}, {7, 8}, {8, 9}, {7, 9}});
    auto cd = clique_decomposition(d);
    ASSERT_EQ(cd.cliques.size(), 4u);
    EXPECT_EQ(cd.cliques[0], (Clique{{1, 2, 3, 4}, 2}));
    EXPECT_EQ(cd.cliques[1], (Clique{{3, 4, 5}, 2}));
    EXPECT_EQ(cd.cliques[2], (Clique{{5, 6, 7}, 2}));
    EXPECT_EQ(cd.cliques[3], (Clique{{7, 8, 9}, 1}));
}

TEST(Cliques, ClosedPath) {
    SimplicialComplex d(3, {{1, 2}, {2, 3, 4}, {4, 5, 6}, {6, 7}});
    auto cd = clique_decomposition(d);
    EXPECT_EQ(clique_sets(cd), (std::vector<std::vector<int>>{{1, 2}, {2, 3, 4}, {4, 5, 6}, {6, 7}}));
    EXPECT_TRUE(is_closed(d).closed);
}

TEST(Cliques, SingleSimplex) {
    auto cd = clique_decomposition(SimplicialComplex(3, {{2, 5, 9}}));
    ASSERT_EQ(cd.cliques.size(), 1u);
    EXPECT_EQ(cd.cliques[0], (Clique{{2, 5, 9}, 2}));
}

// Pairwise incomparable cliques that cover every facet.
TEST(Cliques, CoverAndIncomparable) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        auto d = random_complex(rng, 3, 7);
        auto cd = clique_decomposition(d);
        std::set<Facet> covered;
        for (const auto& c : cd.cliques)
            for (const auto& f : c.facets()) {
                EXPECT_NE(std::find(d.facets().begin(), d.facets().end(), f), d.facets().end());
                covered.insert(f);
            }
        EXPECT_EQ(covered.size(), d.facets().size());
        for (std::size_t i = 0; i < cd.cliques.size(); ++i)
            for (std::size_t j = 0; j < cd.cliques.size(); ++j) {
                if (i == j) continue;
                auto fi = cd.cliques[i].facets(), fj = cd.cliques[j].facets();
                std::sort(fi.begin(), fi.end());
                std::sort(fj.begin(), fj.end());
                EXPECT_FALSE(std::includes(fj.begin(), fj.end(), fi.begin(), fi.end()));
            }
    }
}

TEST(Closed, OpenPathWitness) {
    SimplicialComplex d(3, {{1, 2}, {1, 3, 4}, {4, 5, 6}, {5, 7}});
    auto r = is_closed(d);
    ASSERT_FALSE(r.closed);
    ASSERT_TRUE(r.witness.has_value());
    bool first = r.witness->vertex == 1 && r.witness->b == Facet{1, 2} && r.witness->c == Facet{1, 3, 4};
    bool second = r.witness->vertex == 5 && r.witness->b == Facet{5, 7} && r.witness->c == Facet{4, 5, 6};
    EXPECT_TRUE(first || second);
    auto labels = find_closed_labeling(d);
    ASSERT_TRUE(labels.has_value());
    EXPECT_TRUE(is_closed(d.relabeled(*labels)).closed);
}

TEST(Closed, FullSkeletonIdentity) {
    SimplicialComplex d(3, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
    EXPECT_TRUE(is_closed(d).closed);
    auto labels = find_closed_labeling(d);
    ASSERT_TRUE(labels.has_value());
    for (auto [from, to] : *labels) EXPECT_EQ(from, to);
}

TEST(Closed, BoundExceeded) {
    std::vector<Facet> fs;
    for (int v = 1; v < 11; ++v) fs.push_back({v, v + 1});
    EXPECT_THROW(find_closed_labeling(SimplicialComplex(2, fs), 9), ResourceError);
}

// A 1-dimensional complex at m = 2 is closed only if some labeling makes
// every vertex of a 3-star avoid the first/last conflict; the star K_{1,3}
// has none (three edges share the center).
TEST(Closed, ExhaustionProvesNone) {
    SimplicialComplex star(2, {{1, 2}, {1, 3}, {1, 4}});
    EXPECT_FALSE(find_closed_labeling(star).has_value());
    // Oracle: every permutation checked by leading-term coprimality.
    std::vector<int> perm{1, 2, 3, 4};
    bool any = false;
    do {
        std::map<int, int> lab;
        for (int i = 0; i < 4; ++i) lab[i + 1] = perm[static_cast<std::size_t>(i)];
        any = any || closed_by_leading_terms(star.relabeled(lab));
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_FALSE(any);
}

TEST(Closed, EquivalentToCoprimeLeadingTerms) {
    std::mt19937_64 rng(7);
    int closed = 0;
    for (int trial = 0; trial < 400; ++trial) {
        int m = trial % 2 ? 3 : 4;
        auto d = random_complex(rng, m, 7);
        bool a = is_closed(d).closed;
        EXPECT_EQ(a, closed_by_leading_terms(d)) << trial;
        closed += a;
    }
    EXPECT_GT(closed, 10);
}

TEST(BlockStructure, AdjacentExample) {
    SimplicialComplex d(3, {{1, 2, 3}, {2, 3, 4}, {2, 3, 5}, {2, 4, 5}, {3, 4, 5}, {4, 5, 6}});
    auto bs = block_structure(d);
    ASSERT_EQ(bs.components.size(), 1u);
    const auto& c = bs.components[0];
    ASSERT_EQ(c.blocks.size(), 3u);
    EXPECT_EQ(c.blocks[0].vertices, (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(c.blocks[1].vertices, (std::vector<int>{2, 3, 4, 5}));
    EXPECT_EQ(c.blocks[2].vertices, (std::vector<int>{4, 5, 6}));
    EXPECT_EQ(c.blocks[1].first, 2);
    EXPECT_EQ(c.blocks[1].last, 5);
}

TEST(BlockStructure, UnionExample) {
    SimplicialComplex d(3, {{1, 2, 3}, {3, 4, 5}, {4, 5, 6}, {4, 6, 7}, {4, 5, 7}, {5, 6, 7}, {6, 7, 8}, {7, 8, 9}});
    auto bs = block_structure(d);
    ASSERT_EQ(bs.components.size(), 2u);
    EXPECT_EQ(bs.components[0].vertices, (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(bs.components[1].vertices, (std::vector<int>{3, 4, 5, 6, 7, 8, 9}));
    EXPECT_EQ(bs.components[1].overlap_prev, 1);
}

TEST(BlockStructure, NonContiguousLabels) {
    SimplicialComplex d(4, {{4, 6, 7, 8}, {6, 7, 8, 9}});
    auto bs = block_structure(d);
    ASSERT_EQ(bs.components.size(), 1u);
    const auto& c = bs.components[0];
    EXPECT_EQ(c.vertices, (std::vector<int>{4, 6, 7, 8, 9}));
    ASSERT_EQ(c.blocks.size(), 2u);
    EXPECT_EQ(set_intersection(c.blocks[0].vertices, c.blocks[1].vertices), (std::vector<int>{6, 7, 8}));
    EXPECT_EQ(c.label(2), 6);
}

TEST(BlockStructure, RoundTripFacets) {
    std::vector<SimplicialComplex> cases{
        SimplicialComplex(3, {{1, 2, 3}, {2, 3, 4}, {2, 3, 5}, {2, 4, 5}, {3, 4, 5}, {4, 5, 6}}),
        SimplicialComplex(3, {{1, 2, 3}, {3, 4, 5}, {4, 5, 6}, {4, 6, 7}, {4, 5, 7}, {5, 6, 7}, {6, 7, 8}, {7, 8, 9}}),
        SimplicialComplex(3, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}, {3, 4, 5}, {4, 5, 6}, {5, 6, 7}}),
    };
    for (const auto& d : cases) {
        std::set<Facet> rebuilt;
        for (const auto& comp : block_structure(d).components)
            for (const auto& b : comp.blocks)
                for (const auto& f : Clique{b.vertices, b.dim}.facets()) rebuilt.insert(f);
        EXPECT_EQ(rebuilt, std::set<Facet>(d.facets().begin(), d.facets().end()));
    }
}

TEST(BlockStructure, Rejections) {
    // Overlap of m-2 vertices between two top cliques that are also not a
    // valid union overlap ordering.
    EXPECT_THROW(block_structure(SimplicialComplex(3, {{1, 2, 3}, {4, 5, 6}})), StructuralError);
    EXPECT_THROW(block_structure(SimplicialComplex(3, {{1, 2}, {2, 3, 4}})), StructuralError);
    try {
        block_structure(SimplicialComplex(3, {{1, 2, 3}, {4, 5, 6}}));
    } catch (const StructuralError& e) {
        EXPECT_NE(std::string(e.what()).find("overlap in 0"), std::string::npos);
    }
}

TEST(Graph, Cactus) {
    auto g = intersection_graph(std::vector<std::vector<int>>{{1, 2, 3, 4}, {4, 5, 6, 7}, {3, 7, 8, 9}, {9, 10, 11, 12}});
    EXPECT_EQ(g.edges, (std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}, {3, 4}}));
    EXPECT_TRUE(g.is_cactus);
    EXPECT_FALSE(g.is_forest);
}

TEST(Graph, PathAndSingle) {
    auto g = intersection_graph(std::vector<std::vector<int>>{{1, 2, 3, 4}, {2, 5, 6, 7}, {4, 8, 9}});
    EXPECT_EQ(g.edges, (std::vector<std::pair<int, int>>{{1, 2}, {1, 3}}));
    EXPECT_TRUE(g.is_tree());
    auto s = intersection_graph(std::vector<std::vector<int>>{{1, 2, 3}});
    EXPECT_TRUE(s.edges.empty());
    EXPECT_TRUE(s.is_forest);
}

TEST(Graph, TwoTrianglesSharingAnEdgeIsNotCactus) {
    // K4 minus an edge: the shared edge lies on two cycles.
    auto g = intersection_graph(std::vector<std::vector<int>>{{1, 2}, {2, 3, 4}, {1, 4, 5}, {3, 5}});
    EXPECT_FALSE(g.is_cactus);
}

TEST(Graph, EdgesMatchBruteForce) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> v(1, 12);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::vector<int>> sets(5);
        for (auto& s : sets) {
            std::set<int> x;
            for (int k = 0; k < 3; ++k) x.insert(v(rng));
            s.assign(x.begin(), x.end());
        }
        auto g = intersection_graph(sets);
        std::vector<std::pair<int, int>> expected;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) {
                bool meet = false;
                for (int a : sets[static_cast<std::size_t>(i)])
                    for (int b : sets[static_cast<std::size_t>(j)]) meet = meet || a == b;
                if (meet) expected.emplace_back(i + 1, j + 1);
            }
        EXPECT_EQ(g.edges, expected);
    }
}

TEST(ForestConditions, ExampleTwo) {
    std::vector<std::vector<int>> comps{{1, 2, 3, 4, 5}, {4, 6, 7, 8, 9}, {5, 9, 10, 11}};
    auto r = check_forest_conditions(comps, 4);
    EXPECT_TRUE(r.cond_a);
    EXPECT_TRUE(r.cond_b);
    ASSERT_EQ(r.pairs.size(), 3u);
    EXPECT_EQ(r.pairs[0].shared, (std::vector<int>{4}));
    EXPECT_TRUE(r.pairs[0].cond_c);
    EXPECT_EQ(r.pairs[1].shared, (std::vector<int>{5}));
    EXPECT_TRUE(r.pairs[1].cond_c);
    EXPECT_EQ(r.pairs[2].shared, (std::vector<int>{9}));
    EXPECT_TRUE(r.pairs[2].cond_c);
    EXPECT_FALSE(intersection_graph(comps).is_forest);
}

TEST(ForestConditions, DisjointAndFailures) {
    auto r = check_forest_conditions({{1, 2, 3}, {4, 5, 6}}, 3);
    EXPECT_TRUE(r.cond_a && r.cond_b && r.cond_c);
    EXPECT_TRUE(r.pairs.empty());
    auto t = check_forest_conditions({{1, 2, 3}, {3, 4, 5}, {3, 6, 7}}, 3);
    EXPECT_FALSE(t.cond_a);
    auto b = check_forest_conditions({{1, 2, 3, 4}, {3, 4, 5, 6}}, 3);
    EXPECT_FALSE(b.cond_b);
    // Cactus pair Δ_1, Δ_3 meet at 3, the third of four positions in Δ_1
    // and the first in Δ_3: neither inclusion holds at m = 3.
    auto c = check_forest_conditions({{1, 2, 3, 4}, {3, 7, 8, 9}}, 3);
    EXPECT_FALSE(c.cond_c);
}
