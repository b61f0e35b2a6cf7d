// Randomized property checks with fixed seeds. Oracles: brute-force grid
// search for squares, exact division for squarefreeness, sympy for the
// factorization of x^8 + 14x^4 + 1.

#include <apsq/orbit.hpp>
#include <gtest/gtest.h>

#include <random>

using namespace apsq;

namespace {

const std::vector<long> fields = {-1, -2, -3, -7, 2, 3, 5, 7};

long pick(std::mt19937_64& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

// integral elements a + b*omega of O_K with |a|, |b| <= B
std::vector<QuadElem> integers_in(long D, long B) {
    QuadElem w = quad_field(D).omega();
    std::vector<QuadElem> out;
    for (long a = -B; a <= B; ++a)
        for (long b = -B; b <= B; ++b) out.push_back(QuadElem(a) + QuadElem(b) * w);
    return out;
}

} // namespace

TEST(Properties, GroupLawAssociative) {
    std::mt19937_64 g(20240501);
    const auto& cc = c0_correspondence();
    const auto& E = cc.E0();
    auto G2 = generators(OrbitSetting::plus_two);
    auto Gm = generators(OrbitSetting::minus_two);
    auto random_point = [&](int which) {
        const Generators& gs = which == 0 ? G2 : Gm;
        return E.add(E.add(E.mul(pick(g, 0, 1), gs.T1), E.mul(pick(g, 0, 3), gs.T2)), E.mul(pick(g, -3, 3), gs.P));
    };
    for (int i = 0; i < 100; ++i) {
        int w = i % 2;
        CurvePoint P = random_point(w), Q = random_point(w), R = random_point(w);
        EXPECT_EQ(E.add(E.add(P, Q), R), E.add(P, E.add(Q, R))) << P << " " << Q << " " << R;
    }
}

TEST(Properties, QuarticRoundTrip) {
    std::mt19937_64 g(7);
    const auto& cc = c0_correspondence();
    const auto& E = cc.E0();
    auto G2 = generators(OrbitSetting::plus_two);
    int done = 0;
    for (int i = 0; done < 100 && i < 1000; ++i) {
        CurvePoint R = E.add(E.add(E.mul(pick(g, 0, 1), G2.T1), E.mul(pick(g, 0, 1), G2.T2)), E.mul(pick(g, -4, 4), G2.P));
        QuarticPoint q = cc.to_quartic(R);
        if (!q.at_infinity) EXPECT_TRUE(cc.map().quartic().contains(q));
        EXPECT_EQ(cc.to_curve(q), R) << R;
        ++done;
    }
    EXPECT_EQ(done, 100);
}

TEST(Properties, SquareTestAgainstGrid) {
    std::mt19937_64 g(11);
    for (int i = 0; i < 500; ++i) {
        long D = fields[i % fields.size()];
        QuadElem z;
        if (i % 2) {
            QuadElem w = QuadElem(pick(g, -6, 6)) + QuadElem(pick(g, -6, 6)) * quad_field(D).omega();
            z = w * w;
        } else {
            z = QuadElem(pick(g, -40, 40)) + QuadElem(pick(g, -40, 40)) * QuadElem::sqrt_of(D);
        }
        z = z.in_field(D);
        // any square root is integral with coordinates bounded by the embeddings of z
        double bound = std::sqrt(std::abs(z.u().get_d()) + std::abs(z.v().get_d()) * std::sqrt(double(std::labs(D)))) + 2;
        bool grid = false;
        for (auto& w : integers_in(D, long(2 * bound) + 1))
            if (w.in_field(D) * w.in_field(D) == z) {
                grid = true;
                break;
            }
        auto r = is_square_quad(z);
        EXPECT_EQ(r.has_value(), grid) << z << " in Q(sqrt " << D << ")";
        if (r) EXPECT_EQ(*r * *r, z);
    }
}

TEST(Properties, SquarefreeDecomposition) {
    std::mt19937_64 g(13);
    for (int i = 0; i < 200; ++i) {
        long D = fields[i % fields.size()];
        QuadElem w = quad_field(D).omega();
        QuadElem a = (QuadElem(pick(g, -9, 9)) + QuadElem(pick(g, -9, 9)) * w).in_field(D);
        QuadElem b = (QuadElem(pick(g, 1, 6)) + QuadElem(pick(g, -6, 6)) * w).in_field(D);
        if (a.is_zero()) a = QuadElem(3).in_field(D);
        QuadElem z = a * b * b;
        auto dec = squarefree_decompose(z);
        EXPECT_EQ(dec.alpha * dec.delta * dec.delta, z);
        // certify: no prime element squared divides alpha
        Integer N = abs(dec.alpha.norm().get_num());
        for (long p = 2; p <= N; ++p) {
            if (N % p != 0) continue;
            bool prime = true;
            for (long q = 2; q * q <= p; ++q) prime = prime && p % q != 0;
            if (!prime) continue;
            for (auto& pi : prime_elements_above(D, Integer(p))) {
                QuadElem q = dec.alpha / (pi * pi);
                EXPECT_FALSE(q.is_integral()) << dec.alpha << " divisible by (" << pi << ")^2";
            }
        }
    }
}

TEST(Properties, NormalizeInvariance) {
    std::mt19937_64 g(17);
    for (int i = 0; i < 200; ++i) {
        long D = i % 2 ? 0 : fields[(i / 2) % fields.size()];
        QuadElem t = D == 0 ? QuadElem(make_rational(pick(g, -9, 9), pick(g, 1, 5))) : QuadElem(D, make_rational(pick(g, -4, 4), pick(g, 1, 3)), pick(g, 1, 3));
        if (t.is_zero() || classify_t(t).kind != ElementaryKind::non_elementary) t = QuadElem(4);
        FiveTermAP ap = ap_from_t(t, D);
        APClass c = normalize_ap(ap);
        EXPECT_EQ(normalize_ap(c.canonical).canonical.terms, c.canonical.terms);
        QuadElem lam = D == 0 ? QuadElem(make_rational(pick(g, 1, 7), pick(g, 1, 7))) : QuadElem(D, pick(g, 1, 4), pick(g, -3, 3));
        FiveTermAP scaled = ap;
        for (auto& z : scaled.terms) z = z * lam * lam;
        EXPECT_EQ(normalize_ap(scaled).canonical.terms, c.canonical.terms) << ap.str();
        EXPECT_EQ(normalize_ap(ap.reversed()).canonical.terms, c.canonical.terms) << ap.str();
    }
}

TEST(Properties, OcticFactorization) {
    QPoly G = G_poly();
    QPoly Gm = G.compose(QPoly({Rational(0), Rational(-1)}));
    QPoly octic({1, 0, 0, 0, 14, 0, 0, 0, 1});
    EXPECT_EQ(G * Gm, octic);
    auto f = factor_rational_poly(octic);
    ASSERT_EQ(f.factors.size(), 2u);
    std::set<std::string> got{f.factors[0].first.str("x"), f.factors[1].first.str("x")};
    EXPECT_TRUE(got.count(G.str("x")) && got.count(Gm.str("x")));
    // over Q(i): four quadratics
    EXPECT_EQ(factor_over_quadfield(to_kpoly(octic, -1), -1).size(), 4u);
}
