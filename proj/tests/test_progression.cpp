// Five-term progressions from t, classification, normal forms, fields,
// six-term extensions and the conjecture shapes. Expected terms are worked
// out by hand from a = t^2-2t-1, c = t^2+1, e = t^2+2t-1 and G.

#include <apsq/orbit.hpp>
#include <gtest/gtest.h>

using namespace apsq;

namespace {

std::array<QuadElem, 5> ints(std::array<long, 5> v) {
    std::array<QuadElem, 5> z;
    for (int k = 0; k < 5; ++k) z[k] = QuadElem(v[k]);
    return z;
}

} // namespace

TEST(Progression, FromT) {
    FiveTermAP ap = ap_from_t(QuadElem(4));
    EXPECT_EQ(ap.terms, ints({49, 169, 289, 409, 529}));
    EXPECT_TRUE(ap.is_progression());
    EXPECT_TRUE(ap.witnesses_consistent());
    EXPECT_EQ(classify_t(QuadElem(4)).kind, ElementaryKind::non_elementary);
    EXPECT_EQ(G_of(QuadElem(2)), QuadElem(13));
    EXPECT_EQ(G_of(QuadElem(-2)), QuadElem(37));
}

TEST(Progression, Elementary) {
    EXPECT_EQ(classify_t(QuadElem(0)).kind, ElementaryKind::constant);
    EXPECT_EQ(classify_t(QuadElem(-1)).kind, ElementaryKind::constant);
    QuadElem t(2, 1, 1); // 1 + sqrt2: a = 0
    EXPECT_EQ(classify_t(t), (Classification{ElementaryKind::zero_term, 0}));
    EXPECT_EQ(classify_elementary(ap_from_t(t)), (Classification{ElementaryKind::zero_term, 0}));
    QuadElem i = QuadElem::sqrt_of(-1);
    EXPECT_EQ(classify_t(i), (Classification{ElementaryKind::zero_term, 2}));
    EXPECT_EQ(classify_t(QuadElem(2, -1, 1)), (Classification{ElementaryKind::zero_term, 4}));
}

TEST(Progression, NormalForm) {
    APClass c = normalize_ap(ap_from_t(QuadElem(4)));
    EXPECT_EQ(c.canonical.terms, ints({49, 169, 289, 409, 529}));
    // (4, 1, -2, -5, -8) over Q(sqrt -2) is canonical already
    FiveTermAP m = make_ap(ints({4, 1, -2, -5, -8}), -2);
    EXPECT_EQ(normalize_ap(m).canonical.terms, ints({4, 1, -2, -5, -8}));
    FiveTermAP doubled = make_ap(ints({8, 2, -4, -10, -16}), -2);
    // 2 = -(sqrt -2)^2: a square class times -1, so not equivalent
    EXPECT_FALSE(equivalent(m, doubled));
    FiveTermAP neg = make_ap(ints({-8, -2, 4, 10, 16}), -2);
    EXPECT_TRUE(equivalent(m, neg));
}

TEST(Progression, FieldOfDefinition) {
    auto F = proper_field_of_definition(ap_from_t(QuadElem(4)));
    EXPECT_EQ(F.degree, 2);
    EXPECT_TRUE(F.contains_sqrt(QuadElem(409)));
    EXPECT_FALSE(F.contains_sqrt(QuadElem(649)));
    auto F0 = proper_field_of_definition(make_ap(ints({0, 1, 2, 3, 4})));
    EXPECT_EQ(F0.degree, 4);
    EXPECT_TRUE(F0.contains_sqrt(QuadElem(6)));
}

TEST(SixTerm, Extensions) {
    FiveTermAP s1 = make_ap(ints({49, 169, 289, 409, 529}));
    auto r = six_term_extension_check(s1, 409, QuadElem(649));
    EXPECT_TRUE(r.append.square);
    EXPECT_EQ(r.append.term, QuadElem(649));
    EXPECT_FALSE(r.prepend.square);
    EXPECT_EQ(r.prepend.term, QuadElem(-71));

    auto r2 = six_term_extension_check(make_ap(ints({0, 1, 2, 3, 4})), 3, QuadElem(2));
    EXPECT_FALSE(r2.prepend.square);
    EXPECT_FALSE(r2.append.square);
    EXPECT_EQ(r2.prepend.term, QuadElem(-1));
    EXPECT_EQ(r2.append.term, QuadElem(5));

    auto r3 = six_term_extension_check(make_ap(ints({9, 9, 9, 9, 9})), 0, QuadElem(1));
    EXPECT_TRUE(r3.prepend.square);
    EXPECT_TRUE(r3.append.square);
}

TEST(Conjecture, Shapes) {
    auto ok = check_conjecture_shape(make_ap(ints({32, 25, 18, 11, 4})), 2);
    EXPECT_TRUE(ok.holds);
    EXPECT_EQ(ok.m, 11);
    auto bad = check_conjecture_shape(make_ap(ints({288, 225, 162, 99, 36})), 2);
    EXPECT_FALSE(bad.holds);
    EXPECT_EQ(bad.reason, "m is not squarefree");
    auto neg = check_conjecture_shape(make_ap(ints({1156, 529, -98, -725, -1352})), -2);
    EXPECT_TRUE(neg.holds);
    EXPECT_EQ(neg.m, 29);
    EXPECT_EQ(neg.d, 5);
}

TEST(Orbits, RationalGenerator) {
    auto rep = enumerate_orbit(1, OrbitSetting::rational);
    ASSERT_TRUE(rep.cls);
    EXPECT_TRUE(rep.consistent);
    EXPECT_EQ(rep.cls->canonical.terms, ints({49, 169, 289, 409, 529}));
    EXPECT_THROW(enumerate_orbit(2, OrbitSetting::plus_two), ParityError);
}
