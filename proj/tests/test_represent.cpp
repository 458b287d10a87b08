#include <gtest/gtest.h>

#include "support.hpp"

using namespace linkform;
using namespace testing_support;

namespace {

const CirclePoint kI = CirclePoint::root_of_unity(1, 4);

FieldElem norm2(const FieldElem& x) { return x * x.conj(); }

}  // namespace

TEST(Represent, PairCoefficients) {
    PairCoeffs p = choose_pair_coeffs(kI);
    EXPECT_EQ(p.a, Q(1));
    EXPECT_EQ(p.b, Q(1));
    EXPECT_EQ(p.c, Q(1, 2));
    EXPECT_EQ(p.d, G(0, -2));
    for (const auto& xi : point_pool())
        for (bool nr : {false, true}) {
            PairCoeffs q = choose_pair_coeffs(xi, nr);
            EXPECT_EQ(q.a * q.b, -(q.d * (q.c * xi.value()).conj()));
            EXPECT_NE(Q(2) * (q.a * q.b.conj()).re(), norm2(q.c) + norm2(q.d));
        }
}

// Values computed symbolically from the 2x2 expansion: det A = -conj(xi)(2Re(a conj b) - |c|^2 - |d|^2) t^-1.
TEST(Represent, TrickyMatrixDeterminant) {
    CirclePoint w = CirclePoint::exact(Q(3, 5), Q(4, 5));
    EXPECT_EQ(det(tricky_matrix(w, choose_pair_coeffs(w))), LaurentPoly::monomial(G(27, -36, 20), -1));
    EXPECT_EQ(det(tricky_matrix(kI, choose_pair_coeffs(kI))), LaurentPoly::monomial(G(0, -9, 4), -1));
    for (const auto& xi : point_pool()) {
        PairCoeffs p = choose_pair_coeffs(xi, true);
        FieldElem k = Q(2) * (p.a * p.b.conj()).re() - norm2(p.c) - norm2(p.d);
        LMatrix a = tricky_matrix(xi, p);
        EXPECT_EQ(det(a), LaurentPoly::monomial(-xi.value().conj() * k, -1));
        EXPECT_TRUE(is_hermitian(linear(xi.value()) * a));
        for (int j = 1; j <= 2; ++j) EXPECT_TRUE(is_hermitian(linear(xi.value()) * tricky_matrix(xi, p, j)));
    }
}

TEST(Represent, PairPolynomial) {
    CirclePoint w = CirclePoint::exact(Q(3, 5), Q(4, 5));
    LaurentPoly p = pair_polynomial(w, w);
    EXPECT_EQ(p, C(w.value().conj()) * tt() - C(2) + C(w.value()) * ti());
    EXPECT_EQ(mult_at(p, w.value()), 2);
    LaurentPoly q = pair_polynomial(CirclePoint(), CirclePoint::root_of_unity(1, 2));
    EXPECT_TRUE(q.is_symmetric());
    EXPECT_TRUE(q.eval(Q(1)).is_zero());
    EXPECT_TRUE(q.eval(Q(-1)).is_zero());
    auto pool = point_pool();
    for (const auto& a : pool)
        for (const auto& b : pool) {
            LaurentPoly r = pair_polynomial(a, b);
            auto roots = circle_roots(r);
            int total = 0;
            for (const auto& x : roots) total += x.mult;
            EXPECT_EQ(total, 2);
        }
}

TEST(Represent, Verdicts) {
    StructuredForm e3(FieldTag::C, {BasicForm::e(FieldTag::C, 3, 1, kI)});
    auto v = is_representable(e3);
    EXPECT_FALSE(v.representable);
    EXPECT_EQ(v.total_jump, -1);
    EXPECT_EQ(v.certificate, "total-jump-nonzero");
    EXPECT_FALSE(represent(e3).matrix.has_value());
    try {
        build_representative(e3);
        FAIL() << "expected not_representable";
    } catch (const MathError& e) {
        EXPECT_EQ(e.reason(), "not_representable");
    }
    StructuredForm real(FieldTag::R, {BasicForm::e(FieldTag::R, 1, 1, kI)});
    EXPECT_EQ(is_representable(real).certificate, "real-always");
    StructuredForm pair(FieldTag::C, {BasicForm::e(FieldTag::C, 1, 1, kI), BasicForm::e(FieldTag::C, 3, -1, kI)});
    EXPECT_TRUE(is_representable(pair).representable);
}

TEST(Represent, BasicBlocks) {
    LaurentPoly desc = basic_poly_off_circle(Q(2), FieldTag::C);
    EXPECT_EQ(build_representative(StructuredForm(FieldTag::C, {BasicForm::f(FieldTag::C, 2, desc)})), one(desc * desc));
    LMatrix h = build_representative(StructuredForm(FieldTag::R, {BasicForm::f_pm1(1, CirclePoint())}));
    LMatrix expect(2, 2);
    expect(0, 1) = ti() - C(1);
    expect(1, 0) = tt() - C(1);
    EXPECT_EQ(h, expect);
    StructuredForm pair(FieldTag::C, {BasicForm::e(FieldTag::C, 1, 1, kI), BasicForm::e(FieldTag::C, 1, -1, kI)});
    EXPECT_EQ(build_representative(pair), linear(kI.value()) * tricky_matrix(kI, choose_pair_coeffs(kI)));
    EXPECT_EQ(build_representative(StructuredForm(FieldTag::C)).rows(), 0);
}

TEST(Represent, RoundTrips) {
    std::mt19937 rng(61);
    for (int k = 0; k < 16; ++k) {
        StructuredForm s = k % 2 ? random_representable(rng, 4) : random_real_form(rng, 4);
        auto v = represent(s);
        ASSERT_TRUE(v.matrix.has_value());
        EXPECT_TRUE(is_hermitian(*v.matrix));
        EXPECT_TRUE(is_isometric(classify_matrix(*v.matrix, s.field), s)) << s.str();
        // the matrix jumps are the structural jumps
        for (const auto& [p, j] : jumps_from_matrix(*v.matrix)) EXPECT_EQ(j, signature_jump(s, p));
    }
}
