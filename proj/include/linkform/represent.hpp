#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matrixrep.hpp"

namespace linkform {

struct RepresentabilityVerdict {
    bool representable = false;
    int total_jump = 0;
    std::string certificate;  // total-jump-nonzero | real-always | constructed
    std::optional<LMatrix> matrix;
};

inline RepresentabilityVerdict is_representable(const StructuredForm& s) {
    RepresentabilityVerdict v;
    v.total_jump = total_jump(s);
    if (s.field == FieldTag::R) {
        v.representable = true;
        v.certificate = "real-always";
    } else {
        v.representable = v.total_jump == 0;
        v.certificate = v.representable ? "constructed" : "total-jump-nonzero";
    }
    return v;
}

struct PairCoeffs {
    FieldElem a, b, c, d;
};

// a, b, c, d with ab = -d conj(c xi) and 2 Re(a conj b) != |c|^2 + |d|^2.
inline PairCoeffs choose_pair_coeffs(const CirclePoint& xi, bool non_real_b = false) {
    FieldElem z = xi.value();
    PairCoeffs p{FieldElem(1), non_real_b ? FieldElem::complex(1, 1) : FieldElem(1), FieldElem(1), {}};
    p.d = -(p.a * p.b) / (p.c * z).conj();
    auto norm2 = [](const FieldElem& x) { return x * x.conj(); };
    if (FieldElem(2) * (p.a * p.b.conj()).re() == norm2(p.c) + norm2(p.d)) {
        p.c = p.c * FieldElem(Rational(1, 2));
        p.d = p.d * FieldElem(2);
    }
    if (p.a * p.b != -(p.d * (p.c * z).conj())) throw IdentityViolation("pair coefficients violate ab = -d conj(c xi)");
    return p;
}

// The 2x2 matrix A'(k); A'(0) is the matrix A with (t - xi) A Hermitian and unit determinant.
inline LMatrix tricky_matrix(const CirclePoint& xi, const PairCoeffs& p, int k = 0) {
    FieldElem z = xi.value();
    LaurentPoly t = LaurentPoly::t(), ti = LaurentPoly::t(-1);
    LaurentPoly N = norm_poly(z);
    LaurentPoly u = linear(z), ub = ti - LaurentPoly(z.conj());
    LMatrix A(2, 2);
    A(0, 0) = power(N, k) * (p.a * ti - LaurentPoly((p.a * z).conj()));
    A(0, 1) = power(u, k) * (p.d * ti + LaurentPoly(p.c));
    A(1, 0) = -((p.c * z).conj() * ti + LaurentPoly((p.d * z).conj())) * power(ub, k);
    A(1, 1) = p.b * ti - LaurentPoly((p.b * z).conj());
    return A;
}

// Symmetric a t - 2b + conj(a) t^{-1} whose unit-circle roots are exactly xi1 and xi2.
inline LaurentPoly pair_polynomial(const CirclePoint& xi1, const CirclePoint& xi2) {
    FieldElem z1 = xi1.value(), z2 = xi2.value();
    FieldElem a, b;
    if (xi1 == xi2) {
        a = z1.conj();
        b = FieldElem(1);
    } else {
        a = FieldElem::i() * (z1.conj() - z2.conj());
        b = (a * z1).re();
    }
    LaurentPoly p = a * LaurentPoly::t() - LaurentPoly(FieldElem(2) * b) + a.conj() * LaurentPoly::t(-1);
    if (!p.eval(xi1).is_zero() || !p.eval(xi2).is_zero() || !p.is_symmetric())
        throw IdentityViolation("pair polynomial does not vanish at the prescribed points");
    return p;
}

namespace detail {

inline LMatrix one_by_one(const LaurentPoly& p) {
    LMatrix m(1, 1);
    m(0, 0) = p;
    return m;
}

inline int eps_of(const StructuredForm& s, const CirclePoint& xi, int n) {
    for (const auto& b : s.parts)
        if (b.is_e() && b.xi == xi && b.n == n) return b.eps;
    throw IdentityViolation("expected summand of order " + std::to_string(n) + " at " + xi.str() + " is missing");
}

// Block for e(n1, e1, x1) + e(n2, -e1, x2), n1 >= n2 odd.
inline LMatrix odd_pair_block(const BasicForm& big, const BasicForm& small, const Context& ctx) {
    FieldElem z = big.xi.value();
    LaurentPoly N = norm_poly(z);
    LMatrix block;
    if (big.xi != small.xi) {
        LaurentPoly p = pair_polynomial(big.xi, small.xi);
        block = one_by_one(power(N, (big.n - small.n) / 2) * power(p, small.n));
    } else if (big.n == small.n) {
        block = (linear(z) * power(N, (big.n - 1) / 2)) * tricky_matrix(big.xi, choose_pair_coeffs(big.xi));
    } else {
        int n = (big.n - 1) / 2, n2 = (small.n - 1) / 2;
        block = (linear(z) * power(N, n2)) * tricky_matrix(big.xi, choose_pair_coeffs(big.xi, true), n - n2);
    }
    if (big.xi != small.xi || big.n != small.n) {
        if (eps_of(classify_matrix(block, FieldTag::C, ctx), big.xi, big.n) != big.eps) block = -block;
    }
    return block;
}

}  // namespace detail

inline LMatrix build_representative(const StructuredForm& s, const Context& ctx = {}) {
    auto verdict = is_representable(s);
    if (!verdict.representable)
        throw MathError("not_representable", "total signature jump " + std::to_string(verdict.total_jump) + " is nonzero");
    LMatrix out(0, 0);
    std::vector<BasicForm> pos, neg;
    for (const auto& b : s.parts) {
        if (b.is_f_off()) {
            out = direct_sum(out, detail::one_by_one(power(b.desc, b.n)));
        } else if (b.is_f_pm1()) {
            FieldElem z = b.xi.value();
            LMatrix H(2, 2);
            H(0, 1) = power(LaurentPoly::t(-1) - LaurentPoly(z), b.n);
            H(1, 0) = power(linear(z), b.n);
            out = direct_sum(out, H);
        } else if (s.field == FieldTag::R && !b.xi.is_real_point()) {
            out = direct_sum(out, detail::one_by_one(FieldElem(b.eps) * power(basic_poly(b.xi, FieldTag::R), b.n)));
        } else if (b.n % 2 == 0) {
            out = direct_sum(out, detail::one_by_one(FieldElem(b.eps) * power(norm_poly(b.xi.value()), b.n / 2)));
        } else {
            (b.eps > 0 ? pos : neg).push_back(b);
        }
    }
    // greedy matching: same point and order, then same point, then anything
    auto take = [&](auto pred) {
        for (size_t i = 0; i < pos.size(); ++i)
            for (size_t j = 0; j < neg.size(); ++j)
                if (pred(pos[i], neg[j])) {
                    const BasicForm &x = pos[i], &y = neg[j];
                    const BasicForm& big = x.n >= y.n ? x : y;
                    const BasicForm& small = x.n >= y.n ? y : x;
                    out = direct_sum(out, detail::odd_pair_block(big, small, ctx));
                    pos.erase(pos.begin() + i);
                    neg.erase(neg.begin() + j);
                    return true;
                }
        return false;
    };
    while (take([](const BasicForm& x, const BasicForm& y) { return x.xi == y.xi && x.n == y.n; })) {
    }
    while (take([](const BasicForm& x, const BasicForm& y) { return x.xi == y.xi; })) {
    }
    while (take([](const BasicForm&, const BasicForm&) { return true; })) {
    }
    if (!pos.empty() || !neg.empty()) throw IdentityViolation("unmatched odd summands in a representable form");
    if (out.rows() > 0 && !is_isometric(classify_matrix(out, s.field, ctx), s))
        throw IdentityViolation("constructed matrix does not represent the form");
    return out;
}

inline RepresentabilityVerdict represent(const StructuredForm& s, const Context& ctx = {}) {
    auto v = is_representable(s);
    if (v.representable) v.matrix = build_representative(s, ctx);
    return v;
}

}  // namespace linkform
