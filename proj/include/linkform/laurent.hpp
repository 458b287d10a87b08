#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circle.hpp"
#include "poly.hpp"

namespace linkform {

enum class FieldTag { R, C };

inline std::string tag_str(FieldTag f) { return f == FieldTag::R ? "R" : "C"; }

// Laurent polynomial sum_k c_k t^k over FieldElem, stored densely from the lowest exponent.
class LaurentPoly {
  public:
    LaurentPoly() = default;
    LaurentPoly(const FieldElem& constant) {
        if (!constant.is_zero()) c_.push_back(constant);
    }
    LaurentPoly(int constant) : LaurentPoly(FieldElem(constant)) {}
    static LaurentPoly monomial(const FieldElem& coeff, int k) {
        LaurentPoly p(coeff);
        p.lo_ = p.is_zero() ? 0 : k;
        return p;
    }
    static LaurentPoly t(int k = 1) { return monomial(1, k); }
    static LaurentPoly from_terms(const std::map<int, FieldElem>& terms) {
        LaurentPoly p;
        for (const auto& [k, v] : terms) p = p + monomial(v, k);
        return p;
    }
    static LaurentPoly from_poly(const Poly& q, int shift = 0) {
        LaurentPoly p;
        p.c_ = q.coeffs();
        p.lo_ = shift;
        p.trim();
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int low() const { return lo_; }
    int high() const { return lo_ + static_cast<int>(c_.size()) - 1; }
    int span() const { return is_zero() ? -1 : static_cast<int>(c_.size()) - 1; }
    FieldElem coeff(int k) const {
        int j = k - lo_;
        return (j >= 0 && j < static_cast<int>(c_.size())) ? c_[j] : FieldElem();
    }
    std::map<int, FieldElem> terms() const {
        std::map<int, FieldElem> m;
        for (size_t j = 0; j < c_.size(); ++j)
            if (!c_[j].is_zero()) m[lo_ + static_cast<int>(j)] = c_[j];
        return m;
    }
    // p = t^low() * to_poly()
    Poly to_poly() const { return Poly(c_); }
    bool is_unit() const { return c_.size() == 1; }
    bool is_real() const {
        return std::all_of(c_.begin(), c_.end(), [](const FieldElem& a) { return a.is_real(); });
    }

    // p^# = sum conj(c_k) t^{-k}
    LaurentPoly involve() const {
        LaurentPoly p;
        p.c_.assign(c_.rbegin(), c_.rend());
        for (auto& a : p.c_) a = a.conj();
        p.lo_ = is_zero() ? 0 : -high();
        return p;
    }
    LaurentPoly shift(int k) const {
        LaurentPoly p = *this;
        if (!is_zero()) p.lo_ += k;
        return p;
    }

    FieldElem eval(const FieldElem& z) const {
        if (is_zero()) return {};
        return to_poly().eval(z) * power(z, lo_);
    }
    // Evaluation at an exact point of the unit circle, where t^{-1} = conj(t).
    FieldElem eval(const CirclePoint& w) const {
        if (is_zero()) return {};
        FieldElem z = w.value();
        FieldElem base = to_poly().eval(z);
        return base * (lo_ >= 0 ? power(z, lo_) : power(z.conj(), -lo_));
    }

    friend LaurentPoly operator+(const LaurentPoly& p, const LaurentPoly& q) {
        if (p.is_zero()) return q;
        if (q.is_zero()) return p;
        int lo = std::min(p.lo_, q.lo_), hi = std::max(p.high(), q.high());
        LaurentPoly r;
        r.lo_ = lo;
        r.c_.resize(hi - lo + 1);
        for (int k = lo; k <= hi; ++k) r.c_[k - lo] = p.coeff(k) + q.coeff(k);
        r.trim();
        return r;
    }
    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& p, const LaurentPoly& q) { return p + (-q); }
    friend LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) {
        if (p.is_zero() || q.is_zero()) return {};
        LaurentPoly r;
        r.lo_ = p.lo_ + q.lo_;
        r.c_.resize(p.c_.size() + q.c_.size() - 1);
        for (size_t i = 0; i < p.c_.size(); ++i) {
            if (p.c_[i].is_zero()) continue;
            for (size_t j = 0; j < q.c_.size(); ++j) r.c_[i + j] += p.c_[i] * q.c_[j];
        }
        r.trim();
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& p, const FieldElem& s) { return p * LaurentPoly(s); }
    friend LaurentPoly operator*(const FieldElem& s, const LaurentPoly& p) { return p * LaurentPoly(s); }
    LaurentPoly& operator+=(const LaurentPoly& q) { return *this = *this + q; }
    LaurentPoly& operator-=(const LaurentPoly& q) { return *this = *this - q; }
    LaurentPoly& operator*=(const LaurentPoly& q) { return *this = *this * q; }
    friend bool operator==(const LaurentPoly& p, const LaurentPoly& q) { return p.lo_ == q.lo_ && p.c_ == q.c_; }
    friend bool operator!=(const LaurentPoly& p, const LaurentPoly& q) { return !(p == q); }

    bool is_symmetric() const { return *this == involve(); }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = high(); k >= lo_; --k) {
            FieldElem a = coeff(k);
            if (a.is_zero()) continue;
            std::string cs = a.str();
            bool compound = cs.find_first_of("+-", 1) != std::string::npos;
            if (compound) cs = "(" + cs + ")";
            if (!out.empty()) out += (cs[0] == '-' ? " " : " + ");
            if (k == 0) {
                out += cs;
            } else {
                if (cs == "-1") out += "-";
                else if (cs != "1") out += cs + "*";
                out += k == 1 ? "t" : "t^" + std::to_string(k);
            }
        }
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        size_t z = 0;
        while (z < c_.size() && c_[z].is_zero()) ++z;
        if (z) {
            c_.erase(c_.begin(), c_.begin() + z);
            lo_ += static_cast<int>(z);
        }
        if (c_.empty()) lo_ = 0;
    }

    int lo_ = 0;
    std::vector<FieldElem> c_;
};

inline LaurentPoly power(const LaurentPoly& p, int k) {
    if (k < 0) throw Error("negative power of a Laurent polynomial");
    LaurentPoly r(1), b = p;
    while (k > 0) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

// Division with remainder in the Euclidean ring F[t, t^-1]: a = q b + r, span(r) < span(b).
inline std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw MathError("division_by_zero", "Laurent division by zero");
    if (a.is_zero()) return {};
    auto [q0, r0] = divmod(a.to_poly(), b.to_poly());
    return {LaurentPoly::from_poly(q0, a.low() - b.low()), LaurentPoly::from_poly(r0, a.low())};
}

inline std::optional<LaurentPoly> exact_div(const LaurentPoly& a, const LaurentPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

inline bool divides(const LaurentPoly& b, const LaurentPoly& a) {
    if (b.is_zero()) return a.is_zero();
    return divmod(a, b).second.is_zero();
}

inline LaurentPoly div_or_throw(const LaurentPoly& a, const LaurentPoly& b) {
    auto q = exact_div(a, b);
    if (!q) throw Error("inexact Laurent division: (" + a.str() + ") / (" + b.str() + ")");
    return *q;
}

// Monic polynomial with nonzero constant term, associated to p (zero stays zero).
inline LaurentPoly normalized(const LaurentPoly& p) {
    if (p.is_zero()) return p;
    return LaurentPoly::from_poly(p.to_poly().monic());
}

// The unit u with p = u * normalized(p).
inline LaurentPoly unit_part(const LaurentPoly& p) {
    return LaurentPoly::monomial(p.to_poly().lead(), p.low());
}

inline LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return normalized(b);
    if (b.is_zero()) return normalized(a);
    return LaurentPoly::from_poly(gcd(a.to_poly(), b.to_poly()));
}

// Equality up to units of the Laurent ring.
inline bool associated(const LaurentPoly& a, const LaurentPoly& b) { return normalized(a) == normalized(b); }

// Multiplicity of z as a root of p.
inline int mult_at(const LaurentPoly& p, const FieldElem& z) {
    if (p.is_zero()) throw MathError("zero_polynomial", "multiplicity of a root of the zero polynomial");
    Poly q = p.to_poly();
    Poly lin({-z, FieldElem(1)});
    int m = 0;
    for (;;) {
        auto [qq, r] = divmod(q, lin);
        if (!r.is_zero()) break;
        q = qq;
        ++m;
    }
    return m;
}
inline int mult_at(const LaurentPoly& p, const CirclePoint& w) { return mult_at(p, w.value()); }

// Some t - z as a Laurent polynomial.
inline LaurentPoly linear(const FieldElem& z) { return LaurentPoly::t() - LaurentPoly(z); }

struct WeakSymmetry {
    FieldElem c;  // p = c t^k p^#
    int k = 0;
    LaurentPoly unit() const { return LaurentPoly::monomial(c, k); }
};

inline std::optional<WeakSymmetry> weak_symmetry(const LaurentPoly& p) {
    if (p.is_zero()) return WeakSymmetry{FieldElem(1), 0};
    LaurentPoly ps = p.involve();
    WeakSymmetry w;
    w.k = p.low() + p.high();
    w.c = p.coeff(p.low()) / ps.coeff(ps.low());
    if (w.unit() * ps != p) return std::nullopt;
    return w;
}

inline bool is_weakly_symmetric(const LaurentPoly& p) { return weak_symmetry(p).has_value(); }

// Canonical symmetric associate of a weakly symmetric polynomial of even span:
// centred exponents and a top coefficient with real part 1 (or imaginary part 1 when the
// real part vanishes).  Polynomials that admit no symmetric associate are returned normalized.
inline LaurentPoly canonical_symmetric(const LaurentPoly& p) {
    auto w = weak_symmetry(p);
    if (!w || w->k % 2 != 0) return normalized(p);
    LaurentPoly q = p.shift(-w->k / 2);
    // q = c q^#; pick alpha with conj(alpha)/alpha = c
    FieldElem c = w->c;
    FieldElem alpha = (c == FieldElem(-1)) ? FieldElem::i() : FieldElem(1) + c.conj();
    q = q * alpha;
    FieldElem top = q.coeff(q.high());
    FieldElem scale = top.re().is_zero() ? top.im() : top.re();
    return q * scale.inv();
}

// ---------- unit-circle roots ----------

struct CircleRoot {
    CirclePoint point;
    int mult = 0;
};
using CircleRootSet = std::vector<CircleRoot>;

namespace detail {

inline CirclePoint upgrade_root(RealRoot r, const Context& ctx) {
    if (r.exact) return CirclePoint::cayley(r.value);
    const Poly& g = r.poly;
    if (g.deg() == 1) return CirclePoint::cayley(-g.coeff(0) / g.coeff(1));
    auto inside = [&](const FieldElem& s) {
        return compare_real(s, FieldElem(r.lo)) > 0 && compare_real(s, FieldElem(r.hi)) < 0;
    };
    // roots of unity of the session field
    std::vector<long> orders{4};
    if (ctx.sqrt_d == 3) orders = {4, 3, 6, 12};
    if (ctx.sqrt_d == 2) orders = {4, 8};
    for (long n : orders) {
        for (long k = 1; k < n; ++k) {
            if (2 * k == n) continue;
            auto xy = unit_root_coords(k, n);
            if (!xy) continue;
            FieldElem s = xy->second / (FieldElem(1) + xy->first);
            if (inside(s) && g.eval(s).is_zero()) return CirclePoint::root_of_unity(k, n);
        }
    }
    // Cayley images of small-height rationals
    long H = std::max(1, ctx.height_bound);
    refine_root(r, Rational(1, 2 * H * H));
    if (r.exact) return CirclePoint::cayley(r.value);
    for (long q = 1; q <= H; ++q) {
        mpz_class pmin = r.lo.get_num() * q, pmax = r.hi.get_num() * q;
        mpz_class lo_p, hi_p;
        mpz_fdiv_q(lo_p.get_mpz_t(), pmin.get_mpz_t(), r.lo.get_den().get_mpz_t());
        mpz_cdiv_q(hi_p.get_mpz_t(), pmax.get_mpz_t(), r.hi.get_den().get_mpz_t());
        for (mpz_class p = lo_p; p <= hi_p; ++p) {
            if (abs(p) > H) continue;
            Rational s(p, q);
            s.canonicalize();
            if (s > r.lo && s < r.hi && g.sign_at(s) == 0) return CirclePoint::cayley(FieldElem(s));
        }
    }
    return CirclePoint::isolated(r.poly, r.lo, r.hi);
}

}  // namespace detail

// The Cayley-substituted polynomial P(s) = (1 - i s)^D q((1 + i s)/(1 - i s)) of the
// polynomial part q of p after removing the factor (t + 1)^m; returns {P, m}.
inline std::pair<Poly, int> cayley_polynomial(const LaurentPoly& p) {
    Poly q = p.to_poly();
    Poly tp1({FieldElem(1), FieldElem(1)});
    int m = 0;
    while (q.deg() >= 1 && q.eval(FieldElem(-1)).is_zero()) {
        q = q / tp1;
        ++m;
    }
    int D = q.deg();
    Poly A({FieldElem(1), FieldElem::i()}), B({FieldElem(1), -FieldElem::i()});
    std::vector<Poly> pa(D + 1), pb(D + 1);
    pa[0] = pb[0] = Poly(FieldElem(1));
    for (int k = 1; k <= D; ++k) {
        pa[k] = pa[k - 1] * A;
        pb[k] = pb[k - 1] * B;
    }
    Poly P;
    for (int k = 0; k <= D; ++k)
        if (!q.coeff(k).is_zero()) P = P + pa[k] * pb[D - k] * q.coeff(k);
    return {P, m};
}

inline CircleRootSet circle_roots(const LaurentPoly& p, const Context& ctx = {}) {
    if (p.is_zero()) throw MathError("zero_polynomial", "circle roots of the zero polynomial");
    auto [P, m] = cayley_polynomial(p);
    CircleRootSet out;
    Poly G = P.is_real() ? P : gcd(P.re_part(), P.im_part());
    if (G.deg() >= 1) {
        auto parts = squarefree_decomposition(G);
        for (size_t k = 1; k < parts.size(); ++k) {
            if (parts[k].deg() < 1) continue;
            for (auto& r : isolate_real_roots(parts[k])) out.push_back({detail::upgrade_root(r, ctx), static_cast<int>(k)});
        }
    }
    if (m > 0) out.push_back({CirclePoint::root_of_unity(1, 2), m});
    std::sort(out.begin(), out.end(),
              [](const CircleRoot& a, const CircleRoot& b) { return arg_compare(a.point, b.point) < 0; });
    return out;
}

// Product of (t - xi)^m over the circle roots; every root must be exact.
inline LaurentPoly circle_part(const LaurentPoly& p, const Context& ctx = {}) {
    LaurentPoly out(1);
    for (const auto& r : circle_roots(p, ctx)) out *= power(linear(r.point.value()), r.mult);
    return out;
}

// ---------- basic polynomials and positivity ----------

inline LaurentPoly basic_poly(const CirclePoint& xi, FieldTag field) {
    if (field == FieldTag::C || xi.is_real_point()) return linear(xi.value());
    // (t - xi)(1 - conj(xi) t^{-1}) = t - 2 Re(xi) + t^{-1}
    return LaurentPoly::t() - LaurentPoly(FieldElem(2) * xi.x()) + LaurentPoly::t(-1);
}

// Basic polynomial of an off-circle point z (0 < |z| != 1), canonically normalized.
inline LaurentPoly basic_poly_off_circle(const FieldElem& z, FieldTag field) {
    if (z.is_zero()) throw MathError("unsupported_point", "0 is not a valid off-circle point");
    FieldElem n2 = z * z.conj();
    if (n2 == FieldElem(1)) throw MathError("unsupported_point", "point " + z.str() + " lies on the unit circle");
    LaurentPoly t = LaurentPoly::t(), ti = LaurentPoly::t(-1);
    LaurentPoly p;
    if (field == FieldTag::C) {
        p = (t - LaurentPoly(z)) * (ti - LaurentPoly(z.conj()));
    } else if (z.is_real()) {
        p = t + ti - LaurentPoly(z + z.inv());
    } else {
        p = (t + ti - LaurentPoly(z + z.inv())) * (t + ti - LaurentPoly(z.conj() + z.conj().inv()));
    }
    return canonical_symmetric(p);
}

// Residue criterion: r is xi-positive iff Im(conj(xi) r(xi)) < 0.
inline bool is_xi_positive(const LaurentPoly& r, const CirclePoint& xi) {
    FieldElem xb = xi.value().conj();
    LaurentPoly w = (LaurentPoly::t(-1) - LaurentPoly(xb)) * r;
    if (!w.is_symmetric())
        throw MathError("symmetry_precondition", "(t^-1 - conj(xi)) r is not symmetric for r = " + r.str());
    FieldElem r0 = r.eval(xi);
    if (r0.is_zero()) throw MathError("zero_at_point", "r vanishes at xi");
    return (xb * r0).im().sign() < 0;
}

// The xi-positive linear polynomial stored in complex odd basic forms.
inline LaurentPoly positive_linear(const CirclePoint& xi) {
    LaurentPoly t = LaurentPoly::t();
    if (xi.is_one()) return FieldElem(0, 0, -1, 0, 0) * (t + LaurentPoly(1));
    if (xi.is_minus_one()) return FieldElem(0, 0, -1, 0, 0) * (t - LaurentPoly(1));
    LaurentPoly r = LaurentPoly(1) - LaurentPoly(xi.value()) * t;
    return xi.im_sign() > 0 ? r : -r;
}

}  // namespace linkform
