#include <random>

#include <gtest/gtest.h>

#include "detfacet/ring.hpp"

using namespace detfacet;

namespace {

Monomial random_monomial(std::mt19937_64& rng, int nvars, int maxexp) {
    std::uniform_int_distribution<int> d(0, maxexp);
    std::vector<int> e(static_cast<std::size_t>(nvars));
    for (auto& x : e) x = d(rng);
    return Monomial::from_exponents(e);
}

template <class F>
Polynomial<F> random_poly(std::mt19937_64& rng, const RingPtr<F>& ring, const OrderPtr& order, int terms) {
    std::vector<typename Polynomial<F>::Term> ts;
    std::uniform_int_distribution<int> c(-5, 5);
    for (int i = 0; i < terms; ++i) ts.push_back({ring->field.from_int(c(rng)), random_monomial(rng, ring->nvars(), 2)});
    return Polynomial<F>::from_terms(ring, order, ts);
}

} // namespace

TEST(Layout, RowMajorIds) {
    VariableLayout l(3, 4);
    EXPECT_EQ(l.id(1, 1), 0);
    EXPECT_EQ(l.id(1, 4), 3);
    EXPECT_EQ(l.id(2, 1), 4);
    EXPECT_EQ(l.id(3, 4), 11);
    EXPECT_EQ(l.entry(6), std::pair(2, 3));
    EXPECT_EQ(l.variable_name(5), "x22");
    EXPECT_THROW(l.id(4, 1), LayoutError);
    EXPECT_THROW(l.id(1, 0), LayoutError);
    EXPECT_EQ(VariableLayout(2, 12).variable_name(11), "x1_12");
    EXPECT_THROW(VariableLayout(8, 9), LayoutError);
}

TEST(Field, PrimeArithmetic) {
    PrimeField k;
    EXPECT_EQ(k.modulus(), 32003u);
    for (std::uint32_t a = 1; a < 200; ++a) EXPECT_EQ(k.mul(a, k.inv(a)), 1u);
    EXPECT_EQ(k.from_int(-1), 32002u);
    EXPECT_EQ(k.to_string(32002), "-1");
    EXPECT_THROW(PrimeField(32004), ArgumentError);
    EXPECT_THROW(k.inv(0), ArgumentError);
}

TEST(Field, RationalReduction) {
    PrimeField k(101);
    mpq_class q(3, 7);
    EXPECT_EQ(reduce(k, q), k.mul(3, k.inv(7)));
    EXPECT_EQ(reduce(k, mpq_class(-1)), 100u);
}

TEST(Monomial, DivisibilityAndLcm) {
    auto a = Monomial::from_exponents(std::vector<int>{1, 0, 2});
    auto b = Monomial::from_exponents(std::vector<int>{1, 1, 3});
    EXPECT_TRUE(a.divides(b));
    EXPECT_FALSE(b.divides(a));
    EXPECT_EQ(b.quotient(a), Monomial::from_exponents(std::vector<int>{0, 1, 1}));
    EXPECT_EQ(a.lcm(Monomial::variable(3, 1)), Monomial::from_exponents(std::vector<int>{1, 1, 2}));
    EXPECT_FALSE(a.coprime(b));
    EXPECT_TRUE(Monomial::variable(3, 1).coprime(a));
    EXPECT_EQ((a * b).degree(), 8);
}

// Total order, multiplicativity and well-foundedness on random samples.
TEST(TermOrder, Axioms) {
    std::mt19937_64 rng(11);
    std::vector<int> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    for (int round = 0; round < 5; ++round) {
        std::shuffle(perm.begin(), perm.end(), rng);
        auto o = TermOrder::from_priority(perm);
        for (int trial = 0; trial < 300; ++trial) {
            auto a = random_monomial(rng, 6, 3), b = random_monomial(rng, 6, 3), c = random_monomial(rng, 6, 3);
            auto ab = o.compare(a, b);
            EXPECT_EQ(ab == 0, a == b);
            EXPECT_EQ(o.compare(b, a), 0 <=> ab);
            EXPECT_EQ(o.compare(a * c, b * c), ab);
            EXPECT_TRUE(o.compare(a, Monomial(6)) >= 0);
            if (ab > 0 && o.compare(b, c) > 0) {
                EXPECT_TRUE(o.compare(a, c) > 0);
            }
        }
    }
}

TEST(TermOrder, DefaultIsRowMajorLex) {
    VariableLayout l(2, 3);
    auto o = TermOrder::lex(l.size());
    auto x11 = Monomial::variable(6, l.id(1, 1));
    auto x12 = Monomial::variable(6, l.id(1, 2));
    auto x21 = Monomial::variable(6, l.id(2, 1));
    EXPECT_TRUE(o.compare(x11, x12) > 0);
    EXPECT_TRUE(o.compare(x12, x21) > 0);
    EXPECT_TRUE(o.compare(x11, x12 * x12 * x21) > 0);
    EXPECT_THROW(o.compare(x11, Monomial(5)), LayoutError);
    EXPECT_THROW(TermOrder::from_priority({0, 0, 1}), ArgumentError);
}

TEST(TermOrder, EliminationFastPathMatchesGeneral) {
    std::mt19937_64 rng(5);
    auto fast = TermOrder::lex(5).with_elimination_block(1);
    // Same priority built so that the general comparison path is used.
    std::vector<int> p{5, 0, 1, 2, 3, 4};
    auto general = TermOrder::from_priority(p);
    for (int i = 0; i < 500; ++i) {
        auto a = random_monomial(rng, 6, 2), b = random_monomial(rng, 6, 2);
        EXPECT_EQ(fast.compare(a, b), general.compare(a, b));
    }
}

template <class F>
class PolyTest : public ::testing::Test {};
using Fields = ::testing::Types<PrimeField, RationalField>;
TYPED_TEST_SUITE(PolyTest, Fields);

TYPED_TEST(PolyTest, RingAxioms) {
    std::mt19937_64 rng(3);
    auto ring = make_ring<TypeParam>(VariableLayout(2, 2));
    auto order = make_order(TermOrder::lex(4));
    for (int i = 0; i < 40; ++i) {
        auto f = random_poly(rng, ring, order, 4), g = random_poly(rng, ring, order, 3), h = random_poly(rng, ring, order, 3);
        EXPECT_EQ(f + g, g + f);
        EXPECT_EQ(f * g, g * f);
        EXPECT_EQ((f + g) * h, f * h + g * h);
        EXPECT_EQ((f * g) * h, f * (g * h));
        EXPECT_TRUE((f - f).is_zero());
        if (!f.is_zero() && !g.is_zero()) {
            EXPECT_EQ((f * g).leading_monomial(), f.leading_monomial() * g.leading_monomial());
        }
    }
}

TYPED_TEST(PolyTest, ErrorsOnMixingAndZero) {
    auto ring = make_ring<TypeParam>(VariableLayout(2, 2));
    auto lex = make_order(TermOrder::lex(4));
    auto other = make_order(TermOrder::from_priority({3, 2, 1, 0}));
    auto x = Polynomial<TypeParam>::variable(ring, lex, 0);
    auto y = Polynomial<TypeParam>::variable(ring, other, 1);
    EXPECT_THROW(x + y, ConfigurationError);
    Polynomial<TypeParam> zero(ring, lex);
    EXPECT_THROW(zero.leading_term(), EmptyInputError);
    auto ring3 = make_ring<TypeParam>(VariableLayout(3, 2));
    auto z = Polynomial<TypeParam>::variable(ring3, make_order(TermOrder::lex(6)), 0);
    EXPECT_THROW(x * z, ConfigurationError);
}

TEST(Polynomial, ToStringAndReorder) {
    auto ring = make_ring<PrimeField>(VariableLayout(2, 2));
    auto lex = make_order(TermOrder::lex(4));
    using P = Polynomial<PrimeField>;
    auto det = P::variable(ring, lex, 0) * P::variable(ring, lex, 3) - P::variable(ring, lex, 1) * P::variable(ring, lex, 2);
    EXPECT_EQ(det.to_string(), "x11*x22 - x12*x21");
    auto rev = det.with_order(make_order(TermOrder::from_priority({3, 2, 1, 0})));
    EXPECT_EQ(rev.to_string(), "x11*x22 - x12*x21");
    auto rev2 = det.with_order(make_order(TermOrder::from_priority({1, 0, 2, 3})));
    EXPECT_EQ(rev2.to_string(), "-x12*x21 + x11*x22");
}
