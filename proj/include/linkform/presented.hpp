#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "forms.hpp"
#include "jet.hpp"
#include "matrix.hpp"
#include "ratfunc.hpp"

namespace linkform {

using Vec = std::vector<LaurentPoly>;
using FracMatrix = Matrix<Frac>;

// A linking form on M = ⊕ Λ/(orders[i]) given by its values on the generators.
struct PresentedForm {
    FieldTag field = FieldTag::C;
    Vec orders;
    FracMatrix gram;

    int size() const { return static_cast<int>(orders.size()); }

    // λ(x, y) = Σ x_i g_ij y_j^#
    Frac pair(const Vec& x, const Vec& y) const {
        if (static_cast<int>(x.size()) != size() || static_cast<int>(y.size()) != size())
            throw MathError("shape_mismatch", "coordinate vector has the wrong length");
        Frac s;
        for (int i = 0; i < size(); ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < size(); ++j) {
                if (y[j].is_zero() || gram(i, j).is_zero()) continue;
                s += (x[i] * y[j].involve()) * gram(i, j);
            }
        }
        return s;
    }

    bool is_hermitian() const {
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j)
                if (gram(j, i) != gram(i, j).involve()) return false;
        return true;
    }

    // Drops generators of unit order.
    PresentedForm trimmed() const {
        std::vector<int> keep;
        for (int i = 0; i < size(); ++i)
            if (orders[i].span() > 0) keep.push_back(i);
        PresentedForm p;
        p.field = field;
        p.gram = FracMatrix(static_cast<int>(keep.size()), static_cast<int>(keep.size()));
        for (size_t a = 0; a < keep.size(); ++a) {
            p.orders.push_back(orders[keep[a]]);
            for (size_t b = 0; b < keep.size(); ++b) p.gram(a, b) = gram(keep[a], keep[b]);
        }
        return p;
    }
};

inline PresentedForm direct_sum(const PresentedForm& a, const PresentedForm& b) {
    PresentedForm p;
    p.field = a.field;
    p.orders = a.orders;
    p.orders.insert(p.orders.end(), b.orders.begin(), b.orders.end());
    p.gram = direct_sum(a.gram, b.gram);
    return p;
}

// ---------- presentations of basic and structured forms ----------

inline LaurentPoly norm_poly(const FieldElem& z) {
    return linear(z) * (LaurentPoly::t(-1) - LaurentPoly(z.conj()));
}

inline PresentedForm presented(const BasicForm& b) {
    PresentedForm p;
    p.field = b.field;
    if (b.is_f_pm1()) {
        LaurentPoly q = power(linear(b.xi.value()), b.n);
        p.orders = {q, q};
        p.gram = FracMatrix(2, 2);
        p.gram(0, 1) = Frac::inverse_of(q);
        p.gram(1, 0) = p.gram(0, 1).involve();
        return p;
    }
    p.gram = FracMatrix(1, 1);
    if (b.is_f_off()) {
        LaurentPoly q = power(b.desc, b.n);
        p.orders = {q};
        p.gram(0, 0) = Frac::inverse_of(q);
        return p;
    }
    FieldElem z = b.xi.value();
    LaurentPoly N = norm_poly(z);
    LaurentPoly eps(b.eps);
    if (b.field == FieldTag::R && !b.xi.is_real_point()) {
        LaurentPoly q = power(basic_poly(b.xi, FieldTag::R), b.n);
        p.orders = {q};
        p.gram(0, 0) = Frac(eps, q);
    } else if (b.n % 2 == 0) {
        p.orders = {power(linear(z), b.n)};
        p.gram(0, 0) = Frac(eps, power(N, b.n / 2));
    } else {
        p.orders = {power(linear(z), b.n)};
        p.gram(0, 0) = Frac(eps * positive_linear(b.xi), linear(z) * power(N, (b.n - 1) / 2));
    }
    return p;
}

// Block presentation; generator offsets per summand are returned in `offsets`.
inline PresentedForm presented(const StructuredForm& s, std::vector<int>* offsets = nullptr) {
    PresentedForm p;
    p.field = s.field;
    p.gram = FracMatrix(0, 0);
    for (const auto& b : s.parts) {
        if (offsets) offsets->push_back(p.size());
        p = direct_sum(p, presented(b));
    }
    return p;
}

// ---------- local expansions ----------

// Coefficient of (t - xi)^{-k} in the Laurent expansion of g at xi.
inline FieldElem polar_coeff(const Frac& g, const CirclePoint& xi, int k) {
    if (g.is_zero()) return {};
    FieldElem z = xi.value();
    int m = mult_at(g.den(), z);
    if (k > m || k <= 0) return {};
    LaurentPoly rest = div_or_throw(g.den(), power(linear(z), m));
    JetContext jc(xi, m - k + 1);
    Jet q = jc.expand(g.num()) / jc.expand(rest);
    return q.coeff(m - k);
}

// Scaling that turns polar coefficients of order n at xi into a Hermitian form whose
// signature counts eps.
inline FieldElem residue_scale(const CirclePoint& xi, int n) {
    FieldElem xb = xi.value().conj();
    FieldElem q = -(xb * xb);
    if (n % 2 == 0) return power(q, n / 2);
    return FieldElem::i() * xb * power(q, (n - 1) / 2);
}

// ---------- non-degeneracy ----------

// The adjoint M -> Hom(M, F(t)/Λ) is onto (hence bijective) iff the stacked relation matrix
// [g_ij d_j^#; diag(d_j^#)] has unit invariant factors, i.e. iff at every root z of some d_j^#
// the columns J(z) = {j : d_j^#(z) = 0} of (g_ij d_j^#)(z) have full rank.  Roots are grouped
// by a coprime base b of the d_j^#, and the rank condition becomes: the maximal minors of
// those columns, reduced mod b, have no common factor with b.
inline bool is_nondegenerate(const PresentedForm& pf) {
    int n = pf.size();
    if (n == 0) return true;
    Vec dual(n);
    for (int j = 0; j < n; ++j) dual[j] = normalized(pf.orders[j].involve());
    LMatrix S(n, n);
    for (int j = 0; j < n; ++j) {
        LaurentPoly dj = pf.orders[j].involve();
        for (int i = 0; i < n; ++i) {
            const Frac& g = pf.gram(i, j);
            if (g.is_zero()) continue;
            auto q = exact_div(dj, g.den());
            if (!q || !divides(g.den(), pf.orders[i]))
                throw MathError("not_hermitian", "pairing value " + g.str() + " is not annihilated by the generator orders");
            S(i, j) = g.num() * *q;
        }
    }
    for (const auto& b : coprime_base(dual)) {
        std::vector<int> J;
        for (int j = 0; j < n; ++j)
            if (divides(b, dual[j])) J.push_back(j);
        int k = static_cast<int>(J.size());
        if (k == 0) continue;
        LMatrix R(n, k);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < k; ++c) R(i, c) = Frac::reduce(S(i, J[c]), b);
        LaurentPoly g = b;
        std::vector<int> rows(k);
        for (int c = 0; c < k; ++c) rows[c] = c;
        for (;;) {
            LMatrix m(k, k);
            for (int a = 0; a < k; ++a)
                for (int c = 0; c < k; ++c) m(a, c) = R(rows[a], c);
            LaurentPoly minor = Frac::reduce(det(m), b);
            if (!minor.is_zero()) g = gcd(g, minor);
            if (g.span() == 0) break;
            // next k-subset of the rows in lexicographic order
            int a = k - 1;
            while (a >= 0 && rows[a] == n - k + a) --a;
            if (a < 0) return false;
            ++rows[a];
            for (int c = a + 1; c < k; ++c) rows[c] = rows[c - 1] + 1;
        }
    }
    return true;
}

// ---------- classification ----------

namespace detail {

inline void check_form(const PresentedForm& pf) {
    if (pf.gram.rows() != pf.size() || pf.gram.cols() != pf.size())
        throw MathError("shape_mismatch", "Gram matrix does not match the generator list");
    for (const auto& d : pf.orders)
        if (d.is_zero()) throw MathError("not_torsion", "generator of infinite order");
    if (!pf.is_hermitian()) throw MathError("not_hermitian", "pairing is not Hermitian");
    if (pf.field == FieldTag::R)
        for (int i = 0; i < pf.size(); ++i) {
            if (!pf.orders[i].is_real()) throw MathError("not_real", "real form with a complex order");
            for (int j = 0; j < pf.size(); ++j)
                if (!pf.gram(i, j).num().is_real() || !pf.gram(i, j).den().is_real())
                    throw MathError("not_real", "real form with complex pairing values");
        }
}

// f-summands from the off-circle parts of the generator orders.
inline void add_f_parts(StructuredForm& out, const Vec& off, const Context& ctx) {
    std::vector<LaurentPoly> inputs;
    for (const auto& o : off) {
        if (o.span() <= 0) continue;
        inputs.push_back(o);
        auto sq = squarefree_decomposition(o.to_poly());
        for (size_t k = 1; k < sq.size(); ++k)
            if (sq[k].deg() > 0) inputs.push_back(LaurentPoly::from_poly(sq[k]));
    }
    auto base = coprime_base(inputs);
    std::map<std::vector<int>, LaurentPoly> merged;
    for (const auto& b : base) {
        std::vector<int> e;
        for (const auto& o : off) e.push_back(o.span() > 0 ? multiplicity_of(b, o) : 0);
        auto it = merged.find(e);
        if (it == merged.end()) merged.emplace(e, b);
        else it->second = it->second * b;
    }
    for (const auto& [e, desc] : merged)
        for (int k : e)
            if (k > 0) out.parts.push_back(BasicForm::f(out.field, k, desc, ctx));
}

}  // namespace detail

inline StructuredForm classify(const PresentedForm& input, const Context& ctx = {}) {
    detail::check_form(input);
    PresentedForm pf = input.trimmed();
    if (!is_nondegenerate(pf)) throw MathError("degenerate_form", "the linking form is degenerate");
    StructuredForm out;
    out.field = pf.field;
    LaurentPoly total(1);
    for (const auto& d : pf.orders) total *= d;
    Vec off = pf.orders;
    if (pf.size() > 0) {
        for (const auto& r : circle_roots(total, ctx)) {
            const CirclePoint& xi = r.point;
            if (!xi.is_exact())
                throw MathError("inexact_root", "circle root " + xi.str() + " is not exactly identified; supply --field-sqrt");
            FieldElem z = xi.value();
            std::vector<int> v;
            for (auto& o : off) {
                int m = mult_at(o, z);
                o = div_or_throw(o, power(linear(z), m));
            }
            for (const auto& d : pf.orders) v.push_back(mult_at(d, z));
            if (pf.field == FieldTag::R && xi.im_sign() < 0) continue;
            std::set<int> ns(v.begin(), v.end());
            for (int n : ns) {
                if (n == 0) continue;
                std::vector<int> idx;
                for (int i = 0; i < pf.size(); ++i)
                    if (v[i] == n) idx.push_back(i);
                int k = static_cast<int>(idx.size());
                FieldElem kappa = residue_scale(xi, n);
                FMatrix M(k, k);
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b) M(a, b) = kappa * polar_coeff(pf.gram(idx[a], idx[b]), xi, n);
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b)
                        if (M(a, b) != M(b, a).conj())
                            throw IdentityViolation("residue form at " + xi.str() + " is not Hermitian");
                Inertia in = inertia(M);
                if (in.zero > 0) throw MathError("degenerate_form", "residue form at " + xi.str() + " is singular");
                if (pf.field == FieldTag::R && xi.is_real_point() && n % 2 == 1) {
                    if (in.pos != in.neg)
                        throw MathError("odd_order_at_pm1", "odd order at +-1 over R does not support a non-degenerate form");
                    for (int c = 0; c < in.pos; ++c) out.parts.push_back(BasicForm::f_pm1(n, xi));
                    continue;
                }
                for (int c = 0; c < in.pos; ++c) out.parts.push_back(BasicForm::e(pf.field, n, 1, xi));
                for (int c = 0; c < in.neg; ++c) out.parts.push_back(BasicForm::e(pf.field, n, -1, xi));
            }
        }
    }
    detail::add_f_parts(out, off, ctx);
    out.canonicalize();
    return out;
}

// ---------- sublagrangian reduction ----------

// Presentation of (L^⊥/L, λ_L) for the isotropic submodule L spanned by `gens`.
inline PresentedForm sublagrangian_reduce(const PresentedForm& input, const std::vector<Vec>& gens) {
    detail::check_form(input);
    const PresentedForm& pf = input;
    int n = pf.size();
    for (const auto& l : gens)
        if (static_cast<int>(l.size()) != n) throw MathError("shape_mismatch", "generator of L has the wrong length");
    for (size_t a = 0; a < gens.size(); ++a)
        for (size_t b = a; b < gens.size(); ++b)
            if (!pf.pair(gens[a], gens[b]).is_zero())
                throw MathError("not_isotropic", "L is not isotropic");
    int k = static_cast<int>(gens.size());
    if (k == 0 || n == 0) return pf;
    // common denominator of λ(e_i, ℓ_a)
    LaurentPoly D(1);
    for (const auto& d : pf.orders) D = div_or_throw(D * d, gcd(D, d));
    LMatrix N(n, k);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < k; ++a) {
            Vec e(n);
            e[i] = LaurentPoly(1);
            Frac c = pf.pair(e, gens[a]);
            if (!c.is_zero()) N(i, a) = c.num() * div_or_throw(D, c.den());
        }
    // x ∈ L^⊥ iff x^T N ≡ 0 mod D; with U N V = diag(s): x = U^T y, y_i ∈ (D / gcd(D, s_i)) Λ
    SmithForm sn = smith(N);
    std::vector<LaurentPoly> c(n, LaurentPoly(1));
    for (int i = 0; i < std::min(n, k); ++i)
        if (!sn.d[i].is_zero()) c[i] = div_or_throw(D, gcd(D, sn.d[i]));
    LMatrix Ut = sn.U.transpose(), UinvT = sn.Uinv.transpose();
    LMatrix B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = Ut(i, j) * c[j];
    // relations of L^⊥/L in B-coordinates: B^{-1} diag(d), B^{-1} ℓ
    auto to_b = [&](const Vec& x) {
        Vec y(n);
        for (int i = 0; i < n; ++i) {
            LaurentPoly s;
            for (int j = 0; j < n; ++j) s += UinvT(i, j) * x[j];
            y[i] = div_or_throw(s, c[i]);
        }
        return y;
    };
    LMatrix Rel(n, n + k);
    for (int j = 0; j < n; ++j) {
        Vec x(n);
        x[j] = pf.orders[j];
        Vec y = to_b(x);
        for (int i = 0; i < n; ++i) Rel(i, j) = y[i];
    }
    for (int a = 0; a < k; ++a) {
        Vec y = to_b(gens[a]);
        for (int i = 0; i < n; ++i) Rel(i, n + a) = y[i];
    }
    SmithForm sr = smith(Rel);
    // generators f_i = B X^{-1} e_i
    LMatrix F = B * sr.Uinv;
    PresentedForm out;
    out.field = pf.field;
    out.orders = sr.d;
    out.gram = FracMatrix(n, n);
    std::vector<Vec> f(n, Vec(n));
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n; ++r) f[i][r] = F(r, i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.gram(i, j) = pf.pair(f[i], f[j]);
    return out.trimmed();
}

// ---------- cyclic forms ----------

// λ(1, 1) = h/f on Λ/(f).
struct CyclicForm {
    LaurentPoly f, h;
};

// h' ≡ h mod f with h'/f Hermitian: h + f g/2 where g = h^#/f^# - h/f.
inline LaurentPoly symmetrize_rep(const LaurentPoly& h, const LaurentPoly& f) {
    auto w = weak_symmetry(f);
    if (!w || f.is_zero()) throw MathError("not_weakly_symmetric", "order " + f.str() + " is not weakly symmetric");
    // h^#/f^# = h^# u / f with f = u f^#
    LaurentPoly num = h.involve() * w->unit() - h;
    auto g = exact_div(num, f);
    if (!g) throw MathError("not_hermitian", "h/f is not Hermitian modulo Λ");
    if (g->involve() != -*g) throw IdentityViolation("g^# != -g in symmetrization");
    return h + f * *g * FieldElem(Rational(1, 2));
}

inline PresentedForm presented(const CyclicForm& c, FieldTag field) {
    if (c.f.is_zero()) throw MathError("not_torsion", "cyclic form with zero order");
    PresentedForm p;
    p.field = field;
    p.orders = {c.f};
    p.gram = FracMatrix(1, 1);
    p.gram(0, 0) = Frac(c.h, c.f);
    return p;
}

inline StructuredForm classify_cyclic(const CyclicForm& c, FieldTag field, const Context& ctx = {}) {
    if (field == FieldTag::R)
        for (int s : {1, -1})
            if (c.f.span() > 0 && mult_at(c.f, FieldElem(s)) % 2 == 1)
                throw MathError("odd_order_at_pm1", "a cyclic module with odd order at " + std::to_string(s) +
                                                        " does not support a non-degenerate real form");
    PresentedForm p = presented(c, field);
    if (!p.is_hermitian()) throw MathError("not_hermitian", "h/f is not Hermitian modulo Λ; use symmetrize_rep");
    return classify(p, ctx);
}

// Splits a cyclic form into coprime primary pieces (one per basic polynomial on the circle,
// one for the off-circle part); each piece is (f_k, h (f/f_k)^#).
inline std::vector<CyclicForm> primary_decompose(const CyclicForm& c, FieldTag field, const Context& ctx = {}) {
    std::vector<LaurentPoly> pieces;
    LaurentPoly rest = normalized(c.f);
    for (const auto& r : circle_roots(c.f, ctx)) {
        if (!r.point.is_exact()) throw MathError("inexact_root", "circle root " + r.point.str() + " is not exactly identified");
        if (field == FieldTag::R && r.point.im_sign() < 0) continue;
        LaurentPoly q = power(basic_poly(r.point, field), r.mult);
        pieces.push_back(normalized(q));
        rest = div_or_throw(rest, q);
    }
    if (rest.span() > 0) pieces.push_back(rest);
    std::vector<CyclicForm> out;
    for (const auto& fk : pieces) {
        LaurentPoly co = div_or_throw(c.f, fk);
        Frac v(c.h * co.involve(), fk);
        out.push_back({v.den(), v.num()});
    }
    return out;
}

}  // namespace linkform
