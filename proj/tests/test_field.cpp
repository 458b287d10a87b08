#include <gtest/gtest.h>

#include "support.hpp"

using namespace linkform;
using namespace testing_support;

namespace {

FieldElem random_elem(std::mt19937& rng, long d) {
    std::uniform_int_distribution<int> c(-9, 9), q(1, 7);
    Rational a = R(c(rng), q(rng)), b = R(c(rng), q(rng)), cc = R(c(rng), q(rng)), e = R(c(rng), q(rng));
    if (d == 0) return FieldElem::complex(a, cc);
    return FieldElem(a, b, cc, e, d);
}

}  // namespace

TEST(Field, ParseAndPrintRoundTrip) {
    std::mt19937 rng(1);
    for (long d : {0L, 2L, 3L})
        for (int k = 0; k < 200; ++k) {
            FieldElem x = random_elem(rng, d);
            EXPECT_EQ(FieldElem::parse(x.str(), d), x) << x.str();
        }
}

TEST(Field, ParsesCommonSpellings) {
    EXPECT_EQ(FieldElem::parse("3/4", 0), Q(3, 4));
    EXPECT_EQ(FieldElem::parse("-2", 0), Q(-2));
    EXPECT_EQ(FieldElem::parse("i", 0), FieldElem::i());
    EXPECT_EQ(FieldElem::parse("1/2+3/5*i", 0), G(5, 6, 10));
    EXPECT_THROW(FieldElem::parse("1/0", 0), Error);
    EXPECT_THROW(FieldElem::parse("abc", 0), ParseError);
}

TEST(Field, ArithmeticIdentities) {
    std::mt19937 rng(2);
    for (long d : {0L, 3L})
        for (int k = 0; k < 200; ++k) {
            FieldElem x = random_elem(rng, d), y = random_elem(rng, d), z = random_elem(rng, d);
            EXPECT_EQ((x * y) * z, x * (y * z));
            EXPECT_EQ(x * (y + z), x * y + x * z);
            EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
            if (!y.is_zero()) EXPECT_EQ((x / y) * y, x);
            EXPECT_TRUE((x * x.conj()).is_real());
        }
}

TEST(Field, SqrtArithmeticIsExact) {
    FieldElem r3 = FieldElem::sqrt(3);
    EXPECT_EQ(r3 * r3, Q(3));
    EXPECT_EQ(compare_real(r3, Q(7, 4)), -1);  // 1.7320... < 1.75
    EXPECT_EQ(compare_real(r3, Q(173, 100)), 1);
    EXPECT_EQ((Q(2) - r3).inv() * (Q(2) - r3), Q(1));
}

TEST(Field, MixingRadicalsIsRefused) {
    try {
        (void)(FieldElem::sqrt(2) + FieldElem::sqrt(3));
        FAIL() << "expected field_mismatch";
    } catch (const MathError& e) {
        EXPECT_EQ(e.reason(), "field_mismatch");
    }
}

TEST(Circle, CayleyImages) {
    EXPECT_EQ(CirclePoint::cayley(Q(0)), CirclePoint());
    EXPECT_EQ(CirclePoint::cayley(Q(1)), CirclePoint::root_of_unity(1, 4));
    EXPECT_EQ(CirclePoint::cayley(Q(1, 2)).value(), G(3, 4, 5));
    EXPECT_EQ(CirclePoint::cayley(Q(1, 3)).value(), G(4, 3, 5));
}

TEST(Circle, ArgumentOrder) {
    EXPECT_LT(arg_compare(CirclePoint(), CirclePoint::root_of_unity(1, 4)), 0);
    CirclePoint w = CirclePoint::cayley(Q(1, 2));
    EXPECT_EQ(arg_compare(w, w), 0);
    EXPECT_GT(arg_compare(CirclePoint::cayley(Q(3)), w), 0);
    // ordering by argument in [0, 2 pi)
    auto pool = point_pool();
    for (const auto& a : pool)
        for (const auto& b : pool) {
            int c = arg_compare(a, b);
            EXPECT_EQ(c, -arg_compare(b, a));
            if (c < 0) EXPECT_LT(a.approx_arg(), b.approx_arg());
        }
}

TEST(Circle, Conjugation) {
    EXPECT_EQ(CirclePoint().conj(), CirclePoint());
    EXPECT_EQ(CirclePoint::root_of_unity(1, 4).conj(), CirclePoint::root_of_unity(3, 4));
    EXPECT_EQ(CirclePoint::root_of_unity(1, 6).conj(), CirclePoint::root_of_unity(5, 6));
}

TEST(Circle, KindsCompareByValue) {
    EXPECT_EQ(CirclePoint::root_of_unity(1, 4), CirclePoint::exact(Q(0), Q(1)));
    EXPECT_EQ(CirclePoint::root_of_unity(1, 2), CirclePoint::exact(Q(-1), Q(0)));
    EXPECT_NE(CirclePoint::root_of_unity(1, 6), CirclePoint::root_of_unity(5, 6));
}
