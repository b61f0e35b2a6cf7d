// Curves: group law, torsion, traces of Frobenius, twists, halving.
// Torsion sets come from a Nagell-Lutz search; a_p from naive point counts.

#include <apsq/orbit.hpp>
#include <gtest/gtest.h>

using namespace apsq;

namespace {

WeierstrassCurve curve(long a2, long a4, long a6) { return WeierstrassCurve(QuadElem(a2), QuadElem(a4), QuadElem(a6)); }

CurvePoint pt(long x, long y) { return CurvePoint::affine(QuadElem(x), QuadElem(y)); }

long naive_ap(long a2, long a4, long a6, long p) {
    long count = 1;
    for (long x = 0; x < p; ++x) {
        long r = ((((x * x % p) * x + a2 * x % p * x + a4 * x + a6) % p) + p) % p;
        for (long y = 0; y < p; ++y)
            if (y * y % p == r) ++count;
    }
    return p + 1 - count;
}

std::set<CurvePoint> with_O(std::vector<CurvePoint> v) {
    std::set<CurvePoint> s(v.begin(), v.end());
    s.insert(CurvePoint::O());
    return s;
}

} // namespace

TEST(Curve, Invariants) {
    EXPECT_EQ(curve(-1, -9, 9).j_invariant(), QuadElem(Rational(21952, 9)));
    EXPECT_EQ(curve(-1, 1, 0).j_invariant(), QuadElem(Rational(2048, 3)));
    EXPECT_EQ(curve(14, 1, 0).j_invariant(), QuadElem(Rational(28756228, 3)));
    EXPECT_EQ(curve(14, -4, -56).j_invariant(), QuadElem(Rational(35152, 9)));
    EXPECT_EQ(curve(-1, -9, 9).discriminant(), QuadElem(36864));
    EXPECT_EQ(curve(-1, 1, 0).discriminant(), QuadElem(-48));
}

TEST(Curve, GroupLaw) {
    auto E = curve(-1, -9, 9);
    CurvePoint P = pt(0, 3), T1 = pt(-3, 0);
    EXPECT_EQ(E.add(P, E.neg(P)), CurvePoint::O());
    EXPECT_EQ(E.mul(2, T1), CurvePoint::O());
    EXPECT_EQ(E.add(pt(5, 8), P), T1); // P0 + P = T1
    EXPECT_EQ(E.mul(2, P), CurvePoint::affine(QuadElem(Rational(13, 4)), QuadElem(Rational(15, 8))));
    for (long n = -6; n <= 6; ++n) EXPECT_TRUE(E.contains(E.mul(n, P)));
    EXPECT_EQ(E.mul(3, P), E.add(P, E.mul(2, P)));
}

TEST(Curve, TorsionOverQ) {
    EXPECT_EQ(with_O(compute_torsion(curve(-1, -9, 9), 0).points), with_O({pt(-3, 0), pt(1, 0), pt(3, 0)}));
    EXPECT_EQ(with_O(compute_torsion(curve(-1, 1, 0), 0).points), with_O({pt(0, 0), pt(1, 1), pt(1, -1)}));
    EXPECT_EQ(with_O(compute_torsion(curve(14, 1, 0), 0).points), with_O({pt(0, 0), pt(1, 4), pt(1, -4)}));
    auto T6 = compute_torsion(curve(14, -4, -56), 0);
    EXPECT_EQ(with_O(T6.points), with_O({pt(-14, 0), pt(-2, 0), pt(2, 0), pt(-6, 16), pt(-6, -16), pt(10, 48), pt(10, -48)}));
    EXPECT_EQ(T6.structure(), "Z/2 x Z/4");
}

TEST(Curve, TorsionGrowth) {
    // E1 : y^2 = x^3 - x^2 + x gains x^2 - x + 1 = 0 roots over Q(sqrt -3)
    auto E1 = curve(-1, 1, 0);
    auto T = compute_torsion(E1, -3);
    EXPECT_GT(T.points.size(), 4u);
    for (auto& P : T.points) EXPECT_TRUE(E1.contains(P));
    EXPECT_EQ(compute_torsion(E1, 7).points.size(), 4u);
}

TEST(Curve, TraceOfFrobenius) {
    for (long p : {5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L}) {
        EXPECT_EQ(trace_of_frobenius(curve(-1, -9, 9), p), naive_ap(-1, -9, 9, p)) << p;
        EXPECT_EQ(trace_of_frobenius(curve(-1, 1, 0), p), naive_ap(-1, 1, 0, p)) << p;
        EXPECT_EQ(trace_of_frobenius(curve(14, -4, -56), p), naive_ap(14, -4, -56, p)) << p;
    }
    EXPECT_THROW(trace_of_frobenius(curve(-1, 1, 0), 3), BadReduction);
}

TEST(Curve, TwistsAndIsomorphisms) {
    auto E = curve(-1, 1, 0);
    auto Et = quadratic_twist(E, -1);
    EXPECT_FALSE(find_isomorphism(E, Et).has_value());
    EXPECT_TRUE(find_isomorphism(E, Et, -1).has_value());
    // x -> 4x' + 1, y -> 8y' maps E to an isomorphic model
    CurveIsomorphism m{QuadElem(2), QuadElem(1)};
    auto E2 = apply_isomorphism(E, m);
    auto iso = find_isomorphism(E, E2);
    ASSERT_TRUE(iso);
    for (auto& P : compute_torsion(E, 0).points) EXPECT_TRUE(E2.contains(iso->to_target(P)));
    EXPECT_FALSE(find_isomorphism(curve(4, 17, 0), quadratic_twist(E, -1)).has_value());
}

TEST(Curve, Halving) {
    auto E = curve(-1, -9, 9);
    CurvePoint P0 = pt(5, 8);
    CurvePoint R = CurvePoint::affine(QuadElem(2, 1, 2), QuadElem(-4));
    EXPECT_EQ(E.mul(2, R), P0);
    auto halves = halve_point(E, P0, 2);
    EXPECT_EQ(halves.size(), 4u);
    for (auto& H : halves) EXPECT_EQ(E.mul(2, H), P0);
    EXPECT_TRUE(halve_point(E, P0, 0).empty());
    EXPECT_TRUE(halve_point(E, pt(0, 3), 2).empty());
}

TEST(Quartic, MapRoundTrip) {
    QuarticCurve C({QuadElem(1), QuadElem(2), QuadElem(2), QuadElem(-2), QuadElem(1)}, QuadElem(0), QuadElem(-1));
    QuarticMap M(C);
    EXPECT_EQ(M.curve().j_invariant(), C.j_invariant());
    EXPECT_EQ(C.j_invariant(), QuadElem(Rational(21952, 9)));
    for (long t : {1L, 2L, 4L, -3L}) {
        QuadElem y2 = C.rhs(QuadElem(t));
        auto y = is_square_quad(y2);
        if (!y) continue;
        QuarticPoint P = QuarticPoint::affine(QuadElem(t), *y);
        CurvePoint W = M.to_weierstrass(P);
        EXPECT_TRUE(M.curve().contains(W));
        EXPECT_EQ(M.to_quartic(W), P);
    }
}
