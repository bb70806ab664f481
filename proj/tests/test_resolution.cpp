#include <random>

#include <gtest/gtest.h>

#include "detfacet/resolution.hpp"
#include "examples.hpp"
#include "oracles.hpp"

using namespace detfacet;

namespace {

Monomial mono(int nvars, std::initializer_list<int> vars) {
    Monomial m(nvars);
    for (int v : vars) m.set(v, m.exponent(v) + 1);
    return m;
}

GradedBettiTable table(std::initializer_list<std::tuple<int, int, std::uint64_t>> entries) {
    GradedBettiTable t;
    for (auto [h, d, r] : entries) t.add(h, d, r);
    return t;
}

// Coefficients of Q(t)/(1-t)^d up to degree `upto`.
std::vector<mpz_class> expand(const HilbertSummary& h, int upto) {
    std::vector<mpz_class> out;
    for (int k = 0; k <= upto; ++k) {
        mpz_class c = 0;
        for (std::size_t i = 0; i < h.numerator.size() && static_cast<int>(i) <= k; ++i)
            c += h.numerator[i] * oracle::binomial(k - static_cast<long>(i) + h.dimension - 1, h.dimension - 1);
        out.push_back(c);
    }
    return out;
}

} // namespace

TEST(EagonNorthcott, SmallCases) {
    EXPECT_EQ(en_betti(3, 4), table({{1, 3, 4}, {2, 4, 3}}));
    EXPECT_EQ(en_betti(4, 4), table({{1, 4, 1}}));
    EXPECT_EQ(en_betti(2, 3), table({{1, 2, 3}, {2, 3, 2}}));
    EXPECT_EQ(en_betti(3, 4).ideal_beta(0, 3), 4u);
    EXPECT_THROW(en_betti(4, 3), ArgumentError);
}

TEST(EagonNorthcott, AlternatingSumVanishes) {
    for (int m = 1; m <= 5; ++m)
        for (int n = m + 1; n <= 10; ++n) {
            long long s = 0;
            auto t = en_betti(m, n);
            for (const auto& [k, v] : t.entries()) s += (k.first % 2 ? -1 : 1) * static_cast<long long>(v);
            EXPECT_EQ(s, 0) << m << "x" << n;
        }
}

TEST(LinearQuotients, TwoByThree) {
    auto gens = maximal_minor_initial_ideal(2, 3);
    VariableLayout l(2, 3);
    ASSERT_EQ(gens.size(), 3u);
    EXPECT_EQ(gens[0].to_string(l), "x11*x22");
    EXPECT_EQ(gens[1].to_string(l), "x11*x23");
    EXPECT_EQ(gens[2].to_string(l), "x12*x23");
    auto lq = linear_quotients(gens);
    ASSERT_TRUE(lq.ok);
    EXPECT_EQ(lq.sets[0].size(), 0u);
    EXPECT_EQ(lq.sets[1], std::vector<int>{l.id(2, 2)});
    EXPECT_EQ(lq.sets[2], std::vector<int>{l.id(1, 1)});
    EXPECT_EQ(betti_from_linear_quotients(gens, lq), en_betti(2, 3));
}

TEST(LinearQuotients, DiagonalSetSize) {
    for (int m = 2; m <= 4; ++m)
        for (int n = m; n <= 7; ++n) {
            VariableLayout l(m, n);
            auto gens = maximal_minor_initial_ideal(m, n);
            auto lq = linear_quotients(gens);
            ASSERT_TRUE(lq.ok);
            for (std::size_t u = 0; u < gens.size(); ++u) {
                // last column used by the diagonal
                int last = 0;
                for (int j = 1; j <= n; ++j)
                    if (gens[u].exponent(l.id(m, j))) last = j;
                EXPECT_EQ(static_cast<int>(lq.sets[u].size()), last - m);
            }
        }
}

TEST(LinearQuotients, FailureAndSingle) {
    auto one = linear_quotients({mono(4, {0, 1})});
    ASSERT_TRUE(one.ok);
    EXPECT_TRUE(one.sets[0].empty());
    EXPECT_EQ(betti_from_linear_quotients({mono(4, {0, 1})}, one), GradedBettiTable::principal(2));
    // (ab, cd): the colon is (ab), not linear
    auto bad = linear_quotients({mono(4, {0, 1}), mono(4, {2, 3})});
    EXPECT_FALSE(bad.ok);
    EXPECT_EQ(bad.failing_index, std::optional<std::size_t>(1));
    EXPECT_THROW(betti_from_linear_quotients({mono(4, {0, 1}), mono(4, {2, 3})}, bad), ArgumentError);
    EXPECT_THROW(linear_quotients({mono(4, {0}), mono(4, {0})}), ArgumentError);
}

TEST(Convolution, WorkedResolution) {
    auto t = betti_convolution({en_betti(3, 4), GradedBettiTable::principal(3), GradedBettiTable::principal(3)});
    EXPECT_EQ(t, table({{1, 3, 6}, {2, 4, 3}, {2, 6, 9}, {3, 7, 6}, {3, 9, 4}, {4, 10, 3}}));
}

TEST(Convolution, IdentityAndKoszul) {
    EXPECT_EQ(betti_convolution({en_betti(2, 5), GradedBettiTable()}), en_betti(2, 5));
    EXPECT_EQ(betti_convolution({GradedBettiTable::principal(2), GradedBettiTable::principal(5)}),
              table({{1, 2, 1}, {1, 5, 1}, {2, 7, 1}}));
    auto a = en_betti(2, 4), b = en_betti(3, 5), c = GradedBettiTable::principal(4);
    EXPECT_EQ(betti_convolution({a, b, c}), betti_convolution({c, betti_convolution({b, a})}));
    EXPECT_THROW(betti_convolution({}), ArgumentError);
}

TEST(Taylor, PrincipalAndKoszul) {
    EXPECT_EQ(taylor_strand_betti<PrimeField>({mono(3, {0, 1})}).graded, GradedBettiTable::principal(2));
    EXPECT_EQ(taylor_strand_betti<PrimeField>({mono(3, {0}), mono(3, {1})}).graded, table({{1, 1, 2}, {2, 2, 1}}));
    // k variables: Koszul ranks C(k,h) in degree h
    std::vector<Monomial> vars;
    for (int v = 0; v < 6; ++v) vars.push_back(mono(6, {v}));
    auto t = taylor_strand_betti<RationalField>(vars).graded;
    for (int h = 1; h <= 6; ++h) EXPECT_EQ(t.at(h, h), oracle::binomial(6, h).get_ui());
}

TEST(Taylor, AgreesWithEagonNorthcott) {
    for (int m = 2; m <= 4; ++m)
        for (int n = m; n <= 7; ++n) {
            if (choose(n, m) > 16) continue;
            auto gens = maximal_minor_initial_ideal(m, n);
            EXPECT_EQ(taylor_strand_betti<PrimeField>(gens).graded, en_betti(m, n)) << m << "x" << n;
        }
}

// The worked resolution ideal: J for {123,124,134,234,456,567}.
TEST(Taylor, WorkedIdealMatchesConvolution) {
    auto ws = make_workspace<PrimeField>(3, 7);
    auto gb = groebner_basis(facet_ideal(ws, examples::skeleton_strip()).polynomials());
    auto in = minimalize(leading_monomials(gb));
    ASSERT_EQ(in.size(), 6u);
    auto expected = betti_convolution({en_betti(3, 4), GradedBettiTable::principal(3), GradedBettiTable::principal(3)});
    auto p = taylor_strand_betti<PrimeField>(in);
    auto q = taylor_strand_betti<RationalField>(in);
    EXPECT_EQ(p.graded, expected);
    EXPECT_EQ(q.graded, expected);
}

TEST(Taylor, ReorderingAndFields) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> var(0, 5), len(1, 3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Monomial> gens;
        for (int g = 0; g < 7; ++g) {
            Monomial m(6);
            for (int k = len(rng); k > 0; --k) {
                int v = var(rng);
                m.set(v, m.exponent(v) + 1);
            }
            gens.push_back(m);
        }
        gens = minimalize(gens);
        auto base = taylor_strand_betti<PrimeField>(gens).graded;
        std::shuffle(gens.begin(), gens.end(), rng);
        EXPECT_EQ(taylor_strand_betti<PrimeField>(gens).graded, base);
        EXPECT_EQ(taylor_strand_betti<RationalField>(gens).graded, base);
        // Euler characteristic of the Hilbert numerator
        auto q = detail::hilbert_numerator(gens);
        q.resize(40, 0);
        std::vector<mpz_class> fromBetti(40, 0);
        for (const auto& [k, v] : base.entries()) fromBetti[static_cast<std::size_t>(k.second)] += (k.first % 2 ? -1 : 1) * static_cast<long>(v);
        EXPECT_EQ(q, fromBetti);
    }
}

TEST(Taylor, CapIsEnforced) {
    std::vector<Monomial> gens;
    for (int v = 0; v < 17; ++v) gens.push_back(mono(17, {v}));
    EXPECT_THROW(taylor_strand_betti<PrimeField>(gens), ResourceError);
    EXPECT_NO_THROW(taylor_strand_betti<PrimeField>(gens, PrimeField(), 17));
}

TEST(Hilbert, ZeroIdealAndMaximalMinors) {
    auto z = hilbert_series({}, 5);
    EXPECT_EQ(z.numerator, IntPoly{1});
    EXPECT_EQ(z.dimension, 5);
    EXPECT_EQ(z.multiplicity, 1);
    auto h = hilbert_series(maximal_minor_initial_ideal(2, 3), 6);
    EXPECT_EQ(h.multiplicity, 3);
    EXPECT_EQ(h.height(), 2);
    // The unit ideal has no dimension.
    EXPECT_EQ(hilbert_series({Monomial(3)}, 3).multiplicity, 0);
}

TEST(Hilbert, MatchesStandardMonomialCount) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> var(0, 4), len(1, 3), count(1, 5);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Monomial> gens;
        for (int g = count(rng); g > 0; --g) {
            Monomial m(5);
            for (int k = len(rng); k > 0; --k) {
                int v = var(rng);
                m.set(v, m.exponent(v) + 1);
            }
            gens.push_back(m);
        }
        auto h = hilbert_series(gens, 5);
        auto series = expand(h, 7);
        for (int d = 0; d <= 7; ++d) EXPECT_EQ(series[static_cast<std::size_t>(d)], oracle::hilbert_function(gens, 5, d));
    }
}

TEST(Hilbert, DisjointVariablesMultiply) {
    auto a = maximal_minor_initial_ideal(2, 3);  // variables 0..5
    std::vector<Monomial> gens;
    for (const auto& g : a) {
        Monomial wide(12);
        for (int v = 0; v < 6; ++v) wide.set(v, g.exponent(v));
        gens.push_back(wide);
        Monomial shifted(12);
        for (int v = 0; v < 6; ++v) shifted.set(v + 6, g.exponent(v));
        gens.push_back(shifted);
    }
    auto whole = detail::hilbert_numerator(gens);
    auto part = detail::hilbert_numerator(a);
    EXPECT_EQ(whole, detail::poly_mul(part, part));
    EXPECT_EQ(hilbert_series(gens, 12).multiplicity, 9);
}

TEST(Binomial, Identity) {
    auto small = binomial_identity_check(2, 1);
    EXPECT_TRUE(small.holds);
    auto r = binomial_identity_check(12, 12);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.cases, 91u * 13u);
    // n=2, a=1, i=1: C(1,1)C(2,1) + C(2,1)C(3,1) = 2 + 6 = 8 = C(4,3)C(2,1)
    EXPECT_EQ(oracle::binomial(4, 3) * oracle::binomial(2, 1), 8);
}

TEST(Invariants, OneSkeletonOnThree) {
    auto ws = make_workspace<PrimeField>(2, 3);
    auto rep = invariants_report(ws, SimplicialComplex(2, {{1, 2}, {1, 3}, {2, 3}}));
    ASSERT_GE(rep.items.size(), 4u);
    EXPECT_EQ(rep.items[0].formula, "2");
    EXPECT_EQ(rep.items[0].computed, "2");
    EXPECT_EQ(rep.items[1].formula, "3");
    EXPECT_EQ(rep.items[1].computed, "3");
    EXPECT_TRUE(rep.all_agree());
}

TEST(Invariants, TwoFacetsSharingAnEdge) {
    auto ws = make_workspace<PrimeField>(3, 4);
    auto rep = invariants_report(ws, SimplicialComplex(3, {{1, 2, 3}, {2, 3, 4}}));
    // Two cubic determinants: height 1 + 1, multiplicity C(3,2)^2.
    EXPECT_EQ(rep.items[0].formula, "2");
    EXPECT_EQ(rep.items[1].formula, "9");
    EXPECT_EQ(rep.items[1].computed, "9");
    for (const auto& item : rep.items) EXPECT_TRUE(item.agree.value_or(false)) << item.name;
    EXPECT_THROW(invariants_report(ws, SimplicialComplex(3, {{1, 2}, {1, 3, 4}})), StructuralError);
}
