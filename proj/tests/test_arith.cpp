// Integer and rational helpers. Factorizations checked against sympy.factorint.

#include <apsq/arith.hpp>
#include <gtest/gtest.h>

using namespace apsq;

namespace {

Integer expand(const PrimeFactorization& f) {
    Integer r = f.sign;
    for (auto& [p, e] : f) r *= ipow(p, e);
    return r;
}

} // namespace

TEST(Factor, MatchesReferenceFactorizations) {
    struct Case {
        const char* n;
        std::vector<std::pair<const char*, unsigned>> f;
    };
    std::vector<Case> cases = {
        {"18446744073709551617", {{"274177", 1}, {"67280421310721", 1}}},
        {"1000000009000000001", {{"7", 1}, {"2617", 1}, {"54588133031279", 1}}},
        {"600851475143", {{"71", 1}, {"839", 1}, {"1471", 1}, {"6857", 1}}},
        {"1234567891011121314151617", {{"3", 2}, {"47", 1}, {"4993", 1}, {"584538396786764503", 1}}},
        {"116643", {{"3", 1}, {"59", 1}, {"659", 1}}},
        {"65876669771", {{"11", 1}, {"10691", 1}, {"560171", 1}}},
        {"349040886543845", {{"5", 1}, {"6301969", 1}, {"11077201", 1}}},
        {"70408565", {{"5", 1}, {"1013", 1}, {"13901", 1}}},
    };
    for (auto& c : cases) {
        Factorization got = factor_integer(Integer(c.n));
        Factorization want;
        for (auto& [p, e] : c.f) want.push_back({Integer(p), e});
        EXPECT_EQ(static_cast<const Factorization&>(got), want) << c.n;
    }
}

TEST(Factor, ProductIdentity) {
    for (long n = 2; n < 3000; ++n) EXPECT_EQ(expand(factor_integer(Integer(n))), n);
    EXPECT_EQ(expand(factor_integer(Integer(-360))), -360);
    EXPECT_EQ(factor_integer(Integer(-360)).value(), -360);
    EXPECT_THROW(factor_integer(Integer(0)), std::domain_error);
}

TEST(Primality, KnownValues) {
    EXPECT_TRUE(is_prime(Integer("618970019642690137449562111"))); // 2^89 - 1
    EXPECT_FALSE(is_prime(Integer(561)));
    EXPECT_FALSE(is_prime(Integer("3317044064679887385961981"))); // strong pseudoprime to bases 2..37
    EXPECT_FALSE(is_prime(Integer(1)));
    EXPECT_TRUE(is_prime(Integer(2)));
    long count = 0;
    for (long n = 0; n < 10000; ++n) count += is_prime(Integer(n));
    EXPECT_EQ(count, 1229);
}

TEST(Squarefree, RationalPart) {
    for (auto q : {Rational(-72, 5), Rational(409), Rational(1, 12), Rational(-2), Rational(98, 75)}) {
        auto [m, s] = squarefree_part_rational(q);
        EXPECT_EQ(Rational(m) * s * s, q);
        for (auto& [p, e] : factor_integer(abs(m))) EXPECT_EQ(e, 1u);
    }
    EXPECT_TRUE(is_square_rational(Rational(49, 4)));
    EXPECT_FALSE(is_square_rational(Rational(-4)));
    EXPECT_FALSE(is_square_rational(Rational(2, 9)));
}

TEST(Integer, RootsAndPowers) {
    EXPECT_EQ(isqrt(Integer("1000000000000000000000000")), Integer("1000000000000"));
    EXPECT_TRUE(is_perfect_square(Integer(649 * 649)));
    EXPECT_FALSE(is_perfect_square(Integer(649)));
    EXPECT_EQ(ipow(Integer(3), 40), Integer("12157665459056928801"));
    EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
    EXPECT_THROW(parse_rational("1/0"), ParseError);
}
