// Polynomials over Q and Q(sqrt D). Expected factorizations, resultants and
// discriminants are from sympy (factor_list with extension=sqrt(D)).

#include <apsq/quadroots.hpp>
#include <gtest/gtest.h>

using namespace apsq;

namespace {

QPoly qp(std::vector<long> hi_to_lo) {
    std::vector<Rational> c;
    for (auto it = hi_to_lo.rbegin(); it != hi_to_lo.rend(); ++it) c.emplace_back(*it);
    return QPoly(c);
}

std::vector<int> kdegrees(const KPoly& p, long D) {
    std::vector<int> d;
    for (auto& f : factor_over_quadfield(p, D))
        for (unsigned i = 0; i < f.multiplicity; ++i) d.push_back(f.factor.degree());
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace

TEST(PolyQ, Arithmetic) {
    QPoly a = qp({1, 0, -2, 5}), b = qp({3, 1, -7});
    auto [q, r] = QPoly::divmod(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree(), b.degree());
    EXPECT_EQ(poly_gcd(qp({1, 0, -1}), qp({1, -2, 1})), qp({1, -1}));
    EXPECT_EQ(resultant(a, b), 452);
    EXPECT_EQ(discriminant(qp({1, 0, 4, 0, 64})), 58982400);
    EXPECT_EQ(discriminant(qp({1, -2, 2, 2, 1})), 2304);
    EXPECT_EQ(resultant(qp({1, 1, 2, -1, 1}), qp({1, -1, -1})), 36);
}

TEST(PolyQ, Factorizations) {
    // x^8 + 14x^4 + 1 = G(x) G(-x)
    auto f = factor_rational_poly(qp({1, 0, 0, 0, 14, 0, 0, 0, 1}));
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0].first * f.factors[1].first, qp({1, 0, 0, 0, 14, 0, 0, 0, 1}));
    EXPECT_EQ(factor_rational_poly(qp({1, -20, 38, 108, -63})).degrees(), (std::vector<int>{2, 2}));
    EXPECT_EQ(factor_rational_poly(qp({1, 0, 0, 0, 0, 0, -1})).degrees(), (std::vector<int>{1, 1, 2, 2}));
    EXPECT_EQ(factor_rational_poly(qp({6, -5, -33, 20, 12})).degrees(), (std::vector<int>{1, 3}));
    EXPECT_TRUE(is_irreducible_rational(qp({1, 0, 0, 0, -1, -1})));
    EXPECT_TRUE(is_irreducible_rational(qp({1, 0, 4, 0, 64})));
    EXPECT_TRUE(is_irreducible_rational(qp({1, 1, 2, -1, 1})));
    // repeated factors
    QPoly sq = qp({1, -1}) * qp({1, -1}) * qp({1, 0, 1});
    auto g = factor_rational_poly(sq);
    EXPECT_EQ(g.expand(), sq);
    EXPECT_EQ(g.degrees(), (std::vector<int>{1, 1, 2}));
}

TEST(PolyQ, RationalRoots) {
    QPoly p = qp({2, -3}) * qp({3, 1}) * qp({1, -4}) * qp({1, 0, 1});
    auto r = rational_roots(p);
    std::sort(r.begin(), r.end());
    EXPECT_EQ(r, (std::vector<Rational>{Rational(-1, 3), Rational(3, 2), Rational(4)}));
    EXPECT_TRUE(rational_roots(qp({1, 0, -2})).empty());
}

TEST(PolyK, FactorOverQuadraticFields) {
    KPoly e8 = to_kpoly(qp({1, 0, 0, 0, 14, 0, 0, 0, 1}), 0);
    EXPECT_EQ(kdegrees(e8, -1), (std::vector<int>{2, 2, 2, 2}));
    EXPECT_EQ(kdegrees(e8, 2), (std::vector<int>{4, 4}));
    EXPECT_EQ(kdegrees(e8, -3), (std::vector<int>{2, 2, 2, 2}));
    EXPECT_EQ(kdegrees(e8, 3), (std::vector<int>{2, 2, 2, 2}));
    EXPECT_EQ(kdegrees(e8, 5), (std::vector<int>{4, 4}));

    KPoly q64 = to_kpoly(qp({1, 0, 4, 0, 64}), 0);
    for (long D : {-1L, 2L, -3L, 5L, -2L}) EXPECT_TRUE(is_irreducible_over_quadfield(q64, D)) << D;
    auto f3 = factor_over_quadfield(q64, 3);
    ASSERT_EQ(f3.size(), 2u);
    // x^2 -+ 2 sqrt3 x + 8
    std::set<QuadElem> mids{f3[0].factor.coeff(1), f3[1].factor.coeff(1)};
    EXPECT_EQ(mids, (std::set<QuadElem>{QuadElem(3, 0, 2), QuadElem(3, 0, -2)}));
    EXPECT_EQ(f3[0].factor.coeff(0), QuadElem(8));

    KPoly t4 = to_kpoly(qp({1, 1, 2, -1, 1}), 0);
    EXPECT_EQ(kdegrees(t4, -3), (std::vector<int>{2, 2}));
    EXPECT_EQ(kdegrees(t4, 5), (std::vector<int>{2, 2}));
    EXPECT_EQ(kdegrees(t4, 3), (std::vector<int>{4}));

    KPoly h = to_kpoly(qp({1, -20, 38, 108, -63}), 0);
    EXPECT_EQ(kdegrees(h, 2), (std::vector<int>{1, 1, 1, 1}));
    auto r = roots_in_quadfield(h, 2);
    std::set<QuadElem> got(r.begin(), r.end());
    std::set<QuadElem> want{QuadElem(2, 9, 6), QuadElem(2, 9, -6), QuadElem(2, 1, 2), QuadElem(2, 1, -2)};
    EXPECT_EQ(got, want);
    EXPECT_EQ(kdegrees(to_kpoly(qp({1, 0, 0, 0, 0, 0, -1}), 0), -3), (std::vector<int>{1, 1, 1, 1, 1, 1}));
}

TEST(PolyK, NonRationalCoefficients) {
    // (x - (1 + sqrt2))(x^2 + sqrt2 x + 3)
    KPoly a({QuadElem(2, -1, -1), QuadElem(1)});
    KPoly b({QuadElem(3), QuadElem(2, 0, 1), QuadElem(1)});
    auto f = factor_over_quadfield(a * b, 2);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0].factor, a);
    EXPECT_EQ(f[1].factor, b);
    auto r = roots_in_quadfield(a * b, 2);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0], QuadElem(2, 1, 1));
    EXPECT_EQ(rational_minpoly_of_root(b), qp({1, 0, 4, 0, 9}));
    EXPECT_EQ(rational_degree_of_root(b), 4);
}
