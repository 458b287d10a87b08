#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "signature.hpp"

namespace linkform {

inline bool check_hermitian(const LMatrix& a) { return is_hermitian(a); }

inline void require_hermitian(const LMatrix& a) {
    if (!a.is_square()) throw MathError("shape_mismatch", "matrix is not square");
    if (!is_hermitian(a)) throw MathError("not_hermitian", "matrix is not Hermitian");
}

inline LaurentPoly require_nonsingular(const LMatrix& a) {
    LaurentPoly d = det(a);
    if (d.is_zero()) throw MathError("singular_matrix", "matrix has zero determinant");
    return d;
}

// Invariant factors of the module presented by A, with the transforms U A V = diag(d).
inline SmithForm snf(const LMatrix& a) {
    require_nonsingular(a);
    return smith(a);
}

inline int sign_at(const LMatrix& a, const CirclePoint& w) { return inertia(evaluate(a, w)).signature(); }

// ---------- step function ----------

namespace detail {

// Rational s-interval [lo, hi] around the Cayley parameter of p (p != -1), of width <= w
// for exact irrational points; isolated points give their isolating interval.
inline std::pair<Rational, Rational> s_bracket(CirclePoint& p, const Rational& w) {
    if (!p.is_exact()) return {p.lo(), p.hi()};
    FieldElem s = p.s();
    if (s.is_rational()) return {s.a(), s.a()};
    return rational_bracket(s, w);
}

// A point strictly inside the counterclockwise arc from a to b, where the arc neither
// contains 1 nor -1 in its interior.  `b_is_turn` marks b = 1 reached from below (arg 2π).
inline CirclePoint sample_inside(CirclePoint a, CirclePoint b, bool b_is_turn) {
    Rational w(1);
    for (int guard = 0; guard < 200; ++guard) {
        bool a_minf = a.is_minus_one();
        bool b_pinf = !b_is_turn && b.is_minus_one();
        Rational ua, lb;
        if (!a_minf) ua = s_bracket(a, w).second;
        if (b_is_turn) lb = 0;
        else if (!b_pinf) lb = s_bracket(b, w).first;
        if (a_minf && b_pinf) return CirclePoint::root_of_unity(1, 2);
        if (a_minf) return CirclePoint::cayley(FieldElem(Rational(lb - 1)));
        if (b_pinf) return CirclePoint::cayley(FieldElem(Rational(ua + 1)));
        if (ua < lb) return CirclePoint::cayley(FieldElem(Rational((ua + lb) / 2)));
        w /= 16;
        a.bisect();
        if (!b_is_turn) b.bisect();
    }
    throw MathError("refinement_limit", "could not separate breakpoints " + a.str() + " and " + b.str());
}

inline CirclePoint arc_sample(const std::vector<CirclePoint>& bps, int j) {
    int k = static_cast<int>(bps.size());
    if (k == 0) return CirclePoint();
    const CirclePoint& a = bps[j];
    bool wrap = j == k - 1;
    if (wrap && !bps[0].is_one()) return CirclePoint();
    const CirclePoint b = wrap ? CirclePoint() : bps[j + 1];
    bool b_turn = wrap;
    // -1 strictly inside?
    int ha = a.half();
    bool b_after_pi = b_turn ? true : b.half() == 2;
    if (ha == 0 && b_after_pi) return CirclePoint::root_of_unity(1, 2);
    return sample_inside(a, b, b_turn);
}

}  // namespace detail

// Pointwise signature of A(ω) on the circle: breakpoints at the circle roots of det A,
// arc values at exact sample points, breakpoint values where the point is exact.
inline SignatureFunction signature_step_function(const LMatrix& a, const Context& ctx = {}) {
    require_hermitian(a);
    LaurentPoly d = require_nonsingular(a);
    SignatureFunction f;
    for (const auto& r : circle_roots(d, ctx)) f.breakpoints.push_back(r.point);
    int k = f.k();
    if (k == 0) {
        f.samples = {CirclePoint()};
        f.arcs = {sign_at(a, CirclePoint())};
        return f;
    }
    for (int j = 0; j < k; ++j) {
        CirclePoint s = detail::arc_sample(f.breakpoints, j);
        f.samples.push_back(s);
        f.arcs.push_back(sign_at(a, s));
        const CirclePoint& p = f.breakpoints[j];
        f.points.push_back(p.is_exact() ? std::optional<int>(sign_at(a, p)) : std::nullopt);
    }
    return f;
}

using JumpMap = std::vector<std::pair<CirclePoint, int>>;

inline int jump_at(const JumpMap& m, const CirclePoint& xi) {
    for (const auto& [p, v] : m)
        if (p == xi) return v;
    return 0;
}

inline JumpMap jumps_of(const SignatureFunction& f) {
    JumpMap out;
    for (int j = 0; j < f.k(); ++j) {
        int diff = f.right_of(j) - f.left_of(j);
        if (diff % 2 != 0) throw IdentityViolation("odd signature jump at " + f.breakpoints[j].str());
        if (diff) out.push_back({f.breakpoints[j], diff / 2});
    }
    return out;
}

// Half the change of sign A(e^{iθ}) across each breakpoint.
inline JumpMap jumps_from_matrix(const LMatrix& a, const Context& ctx = {}) {
    return jumps_of(signature_step_function(a, ctx));
}

// sign^av A(ξ): mean of the one-sided limits.
inline int averaged_matrix_signature(const SignatureFunction& f, const CirclePoint& xi) {
    int j = f.index_of(xi);
    if (j < 0) return *f.value_at(xi);
    int s = f.left_of(j) + f.right_of(j);
    if (s % 2 != 0) throw IdentityViolation("odd sum of one-sided limits at " + xi.str());
    return s / 2;
}

// ---------- local diagonalization ----------

inline std::vector<Jet> local_diagonalize(const LMatrix& a, const CirclePoint& xi, int N) {
    require_hermitian(a);
    if (!xi.is_exact()) throw MathError("inexact_root", "local diagonalization needs an exact point");
    LaurentPoly d = require_nonsingular(a);
    int mult = mult_at(d, xi.value());
    JetContext jc(xi, N);
    int n = a.rows();
    Matrix<Jet> J(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) J(i, j) = jc.expand(a(i, j));
    std::vector<int> alive(n);
    for (int i = 0; i < n; ++i) alive[i] = i;
    std::vector<Jet> out;
    auto too_small = [&]() {
        return MathError("truncation_too_small", "truncation order " + std::to_string(N) + " is too small at " + xi.str());
    };
    while (!alive.empty()) {
        int v = -1;
        for (int i : alive)
            for (int j : alive)
                if (J(i, j).known_nonzero() && (v < 0 || J(i, j).valuation() < v)) v = J(i, j).valuation();
        if (v < 0) throw too_small();
        for (int i : alive)
            for (int j : alive)
                if (!J(i, j).known_nonzero() && J(i, j).prec() <= v) throw too_small();
        int piv = -1;
        for (int i : alive)
            if (J(i, i).known_nonzero() && J(i, i).valuation() == v) {
                piv = i;
                break;
            }
        if (piv < 0) {
            int p = -1, q = -1;
            for (int i : alive)
                for (int j : alive)
                    if (p < 0 && i != j && J(i, j).known_nonzero() && J(i, j).valuation() == v) {
                        p = i;
                        q = j;
                    }
            bool done = false;
            for (const FieldElem& c : {FieldElem(1), FieldElem::i()}) {
                Jet cand = J(p, p) + c * J(q, p) + c.conj() * J(p, q) + (c * c.conj()) * J(q, q);
                if (!(cand.known_nonzero() && cand.valuation() == v)) continue;
                for (int k2 : alive) J(p, k2) = J(p, k2) + c * J(q, k2);
                for (int k2 : alive) J(k2, p) = J(k2, p) + c.conj() * J(k2, q);
                done = true;
                break;
            }
            if (!done) throw too_small();
            piv = p;
        }
        Jet dj = J(piv, piv);
        for (int i : alive) {
            if (i == piv) continue;
            Jet f = J(i, piv) / dj;
            for (int j : alive)
                if (j != piv) J(i, j) = J(i, j) - f * J(piv, j);
        }
        out.push_back(dj);
        alive.erase(std::find(alive.begin(), alive.end(), piv));
    }
    int sum = 0;
    for (const auto& e : out) {
        if (!e.known_nonzero()) throw too_small();
        sum += e.valuation();
    }
    if (sum != mult) throw too_small();
    return out;
}

struct LocalTerm {
    int n;
    int eps;
};

// Orders and signs at xi of diagonal jet entries; valuation-0 entries are dropped.
inline std::vector<LocalTerm> classify_local(const std::vector<Jet>& entries, const CirclePoint& xi) {
    std::vector<LocalTerm> out;
    for (const auto& e : entries) {
        int n = e.valuation();
        if (n == 0) continue;
        FieldElem r = residue_scale(xi, n) / e.coeff(n);
        if (!r.im().is_zero()) throw IdentityViolation("leading jet coefficient has the wrong phase at " + xi.str());
        out.push_back({n, r.re().sign()});
    }
    return out;
}

inline std::vector<LocalTerm> local_terms(const LMatrix& a, const CirclePoint& xi, int mult, const Context& ctx) {
    int N = ctx.truncation > 0 ? ctx.truncation : mult + 2;
    try {
        return classify_local(local_diagonalize(a, xi, N), xi);
    } catch (const MathError& e) {
        if (e.reason() != "truncation_too_small") throw;
    }
    return classify_local(local_diagonalize(a, xi, 2 * N), xi);
}

inline FieldTag natural_field(const LMatrix& a) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_real()) return FieldTag::C;
    return FieldTag::R;
}

// Full structural classification of λ_A.
inline StructuredForm classify_matrix(const LMatrix& a, FieldTag field, const Context& ctx = {}) {
    require_hermitian(a);
    if (field == FieldTag::R && natural_field(a) != FieldTag::R)
        throw MathError("not_real", "real classification of a matrix with complex entries");
    LaurentPoly d = require_nonsingular(a);
    StructuredForm out;
    out.field = field;
    Vec off = invariant_factors(a);
    for (const auto& r : circle_roots(d, ctx)) {
        const CirclePoint& xi = r.point;
        if (!xi.is_exact())
            throw MathError("inexact_root", "circle root " + xi.str() + " is not exactly identified; supply --field-sqrt");
        FieldElem z = xi.value();
        for (auto& o : off) o = div_or_throw(o, power(linear(z), mult_at(o, z)));
        if (field == FieldTag::R && xi.im_sign() < 0) continue;
        auto terms = local_terms(a, xi, r.mult, ctx);
        if (field == FieldTag::R && xi.is_real_point()) {
            std::map<int, std::pair<int, int>> odd;
            for (const auto& t : terms) {
                if (t.n % 2 == 0) out.parts.push_back(BasicForm::e(field, t.n, t.eps, xi));
                else (t.eps > 0 ? odd[t.n].first : odd[t.n].second)++;
            }
            for (const auto& [n, pn] : odd) {
                if (pn.first != pn.second) throw IdentityViolation("unbalanced odd terms at " + xi.str());
                for (int c = 0; c < pn.first; ++c) out.parts.push_back(BasicForm::f_pm1(n, xi));
            }
            continue;
        }
        for (const auto& t : terms) out.parts.push_back(BasicForm::e(field, t.n, t.eps, xi));
    }
    detail::add_f_parts(out, off, ctx);
    out.canonicalize();
    return out;
}

inline StructuredForm classify_matrix(const LMatrix& a, const Context& ctx = {}) {
    return classify_matrix(a, natural_field(a), ctx);
}

// ---------- Ranicki moves ----------

inline LMatrix congruence_transform(const LMatrix& a, const LMatrix& p) {
    if (!p.is_square() || p.rows() != a.rows()) throw MathError("shape_mismatch", "transform has the wrong shape");
    if (!is_unimodular(p)) throw MathError("not_unimodular", "transform is not invertible over the Laurent ring");
    return p * a * involve_transpose(p);
}

inline LMatrix stabilize(const LMatrix& a, const LMatrix& d) {
    if (!is_hermitian(d)) throw MathError("not_hermitian", "stabilizing block is not Hermitian");
    if (!det(d).is_unit()) throw MathError("not_unimodular", "stabilizing block must have unit determinant");
    return direct_sum(a, d);
}

// ---------- the form λ_A(x, y) = x^T A^{-1} y^# ----------

struct MatrixPresentation {
    SmithForm s;      // of A^T
    PresentedForm form;  // generators x = U^{-1} e_i, unit orders kept
};

inline MatrixPresentation present_matrix(const LMatrix& a, FieldTag field) {
    require_hermitian(a);
    require_nonsingular(a);
    MatrixPresentation mp;
    mp.s = smith(a.transpose());
    int n = a.rows();
    LMatrix W = mp.s.V.transpose() * mp.s.Uinv.map([](const LaurentPoly& p) { return p.involve(); });
    mp.form.field = field;
    mp.form.orders = mp.s.d;
    mp.form.gram = FracMatrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mp.form.gram(i, j) = Frac(W(i, j), mp.s.d[i]);
    return mp;
}

inline Frac lambda_eval(const LMatrix& a, const Vec& x, const Vec& y) {
    int n = a.rows();
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw MathError("shape_mismatch", "vector length does not match the matrix");
    require_nonsingular(a);
    SmithForm s = smith(a.transpose());
    Frac out;
    for (int i = 0; i < n; ++i) {
        LaurentPoly ux, vy;
        for (int k = 0; k < n; ++k) {
            ux += s.U(i, k) * x[k];
            vy += s.V(k, i) * y[k].involve();
        }
        if (!ux.is_zero() && !vy.is_zero()) out += Frac(ux * vy, s.d[i]);
    }
    return out;
}

// Reduction along L (generator vectors in Λ^n, the coordinates of λ_A), re-classified.
inline StructuredForm sublagrangian_reduce_presented(const LMatrix& a, const std::vector<Vec>& L, FieldTag field,
                                                     const Context& ctx = {}) {
    MatrixPresentation mp = present_matrix(a, field);
    std::vector<Vec> coords;
    for (const auto& x : L) {
        if (static_cast<int>(x.size()) != a.rows()) throw MathError("shape_mismatch", "generator has the wrong length");
        Vec w(a.rows());
        for (int i = 0; i < a.rows(); ++i)
            for (int k = 0; k < a.rows(); ++k) w[i] += mp.s.U(i, k) * x[k];
        coords.push_back(w);
    }
    return classify(sublagrangian_reduce(mp.form, coords), ctx);
}

}  // namespace linkform
