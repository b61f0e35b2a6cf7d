// Quadratic field elements, parsing, units and class numbers.
// Class numbers and units are the standard tabulated values.

#include <apsq/quadfield.hpp>
#include <gtest/gtest.h>

using namespace apsq;

TEST(QuadElem, Arithmetic) {
    QuadElem a(2, 1, 1), b(2, 3, -2); // 1+sqrt2, 3-2sqrt2
    EXPECT_EQ(a * b, QuadElem(2, -1, 1));
    EXPECT_EQ(a * a, QuadElem(2, 3, 2));
    EXPECT_EQ(a.norm(), -1);
    EXPECT_EQ(b.norm(), 1);
    EXPECT_EQ(a.inverse(), QuadElem(2, -1, 1));
    EXPECT_EQ(a / a, QuadElem(1));
    EXPECT_EQ(a.conj(), QuadElem(2, 1, -1));
    EXPECT_EQ(a.trace(), 2);
    EXPECT_EQ(QuadElem::sqrt_of(-1).pow(4), QuadElem(1));
}

TEST(QuadElem, MixingFieldsThrows) {
    EXPECT_THROW(QuadElem(2, 0, 1) + QuadElem(3, 0, 1), FieldMismatch);
    // rationals mix with anything
    EXPECT_EQ(QuadElem(Rational(1, 2)) + QuadElem(3, 0, 1), QuadElem(3, Rational(1, 2), 1));
}

TEST(QuadElem, ParseForms) {
    EXPECT_EQ(parse_quad("-4+4i"), QuadElem(-1, -4, 4));
    EXPECT_EQ(parse_quad("4i"), QuadElem(-1, 0, 4));
    EXPECT_EQ(parse_quad("-2+2*sqrt(-3)"), QuadElem(-3, -2, 2));
    EXPECT_EQ(parse_quad("24-16*sqrt(3)"), QuadElem(3, 24, -16));
    EXPECT_EQ(parse_quad("1/2"), QuadElem(Rational(1, 2)));
    EXPECT_EQ(parse_quad("-sqrt(2)"), QuadElem(2, 0, -1));
    EXPECT_EQ(parse_quad("1/2*sqrt(5)"), QuadElem(5, 0, Rational(1, 2)));
    EXPECT_THROW(parse_quad("1+"), ParseError);
    EXPECT_THROW(parse_quad("sqrt(2)+sqrt(3)"), ParseError);
    EXPECT_THROW(parse_quad(""), ParseError);
}

TEST(QuadElem, StrRoundTrip) {
    for (long D : {-3L, -1L, 2L, 5L, 7L})
        for (int u = -5; u <= 5; ++u)
            for (int v = -5; v <= 5; ++v)
                for (int den : {1, 2, 3}) {
                    QuadElem z(D, make_rational(u, den), make_rational(v, den));
                    EXPECT_EQ(parse_quad(z.str()), z) << z.str();
                }
}

TEST(QuadField, ClassNumbers) {
    std::vector<std::pair<long, long>> table = {{-1, 1}, {-2, 1}, {-3, 1}, {-5, 2}, {-6, 2}, {-7, 1}, {-11, 1}, {-14, 4}, {-15, 2}, {-19, 1}, {-23, 3}, {-43, 1}, {-47, 5}, {-163, 1}, {2, 1}, {3, 1}, {5, 1}, {6, 1}, {7, 1}, {10, 2}, {15, 2}, {26, 2}, {38, 1}, {79, 3}, {82, 4}, {86, 1}, {229, 3}};
    for (auto [D, h] : table) EXPECT_EQ(quad_field(D).class_number, h) << "D = " << D;
}

TEST(QuadField, FundamentalUnits) {
    EXPECT_EQ(quad_field(2).fundamental_unit, QuadElem(2, 1, 1));
    EXPECT_EQ(quad_field(3).fundamental_unit, QuadElem(3, 2, 1));
    EXPECT_EQ(quad_field(5).fundamental_unit, QuadElem(5, Rational(1, 2), Rational(1, 2)));
    EXPECT_EQ(quad_field(7).fundamental_unit, QuadElem(7, 8, 3));
    EXPECT_EQ(quad_field(94).fundamental_unit, QuadElem(94, 2143295, 221064));
    EXPECT_EQ(quad_field(2).unit_norm, -1);
    EXPECT_EQ(quad_field(3).unit_norm, 1);
}

TEST(SquareTest, Examples) {
    EXPECT_TRUE(is_square_quad(QuadElem(2, 3, 2)));        // (1+sqrt2)^2
    EXPECT_TRUE(is_square_quad(QuadElem(-1, 0, 2)));       // (1+i)^2
    EXPECT_FALSE(is_square_quad(QuadElem(-3).in_field(7)));
    EXPECT_TRUE(is_square_quad(QuadElem(-3).in_field(-3)));
    EXPECT_FALSE(is_square_quad(QuadElem(3).in_field(-1)));
    EXPECT_FALSE(is_square_quad(QuadElem(2, 1, 1)));       // unit of norm -1
    auto w = is_square_quad(QuadElem(5, Rational(3, 2), Rational(1, 2)));
    ASSERT_TRUE(w);
    EXPECT_EQ(*w * *w, QuadElem(5, Rational(3, 2), Rational(1, 2)));
}

TEST(Squarefree, Decompose) {
    QuadElem z = QuadElem(-2, 0, 1) * QuadElem(-2, 1, 1) * QuadElem(-2, 1, 1) * QuadElem(9);
    auto dec = squarefree_decompose(z);
    EXPECT_EQ(dec.alpha * dec.delta * dec.delta, z);
    EXPECT_FALSE(is_square_quad(dec.alpha));
}
