#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "field.hpp"

namespace linkform {

// Dense univariate polynomial over FieldElem, c[k] is the coefficient of x^k.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<FieldElem> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Poly(const FieldElem& constant) {
        if (!constant.is_zero()) c_.push_back(constant);
    }
    static Poly monomial(const FieldElem& coeff, int k) {
        std::vector<FieldElem> v(k + 1);
        v[k] = coeff;
        return Poly(std::move(v));
    }
    static Poly x() { return monomial(1, 1); }

    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<FieldElem>& coeffs() const { return c_; }
    FieldElem coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : FieldElem(); }
    const FieldElem& lead() const { return c_.back(); }

    template <class T>
    FieldElem eval(const T& x) const {
        FieldElem r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }
    int sign_at(const Rational& x) const { return eval(FieldElem(x)).sign(); }

    bool is_real() const {
        return std::all_of(c_.begin(), c_.end(), [](const FieldElem& a) { return a.is_real(); });
    }
    Poly re_part() const { return map([](const FieldElem& a) { return a.re(); }); }
    Poly im_part() const { return map([](const FieldElem& a) { return a.im(); }); }
    Poly conj_coeffs() const { return map([](const FieldElem& a) { return a.conj(); }); }
    // p(-x)
    Poly negate_var() const {
        std::vector<FieldElem> v = c_;
        for (size_t k = 1; k < v.size(); k += 2) v[k] = -v[k];
        return Poly(std::move(v));
    }
    Poly deriv() const {
        if (c_.size() <= 1) return {};
        std::vector<FieldElem> v(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * FieldElem(static_cast<long>(k));
        return Poly(std::move(v));
    }
    Poly monic() const {
        if (is_zero()) return {};
        return (*this) * lead().inv();
    }

    friend Poly operator+(const Poly& p, const Poly& q) {
        std::vector<FieldElem> v(std::max(p.c_.size(), q.c_.size()));
        for (size_t k = 0; k < v.size(); ++k) v[k] = p.coeff(k) + q.coeff(k);
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& p, const Poly& q) {
        std::vector<FieldElem> v(std::max(p.c_.size(), q.c_.size()));
        for (size_t k = 0; k < v.size(); ++k) v[k] = p.coeff(k) - q.coeff(k);
        return Poly(std::move(v));
    }
    Poly operator-() const { return map([](const FieldElem& a) { return -a; }); }
    friend Poly operator*(const Poly& p, const Poly& q) {
        if (p.is_zero() || q.is_zero()) return {};
        std::vector<FieldElem> v(p.c_.size() + q.c_.size() - 1);
        for (size_t i = 0; i < p.c_.size(); ++i) {
            if (p.c_[i].is_zero()) continue;
            for (size_t j = 0; j < q.c_.size(); ++j) v[i + j] += p.c_[i] * q.c_[j];
        }
        return Poly(std::move(v));
    }
    friend Poly operator*(const Poly& p, const FieldElem& s) {
        return s.is_zero() ? Poly() : p.map([&](const FieldElem& a) { return a * s; });
    }
    friend bool operator==(const Poly& p, const Poly& q) { return p.c_ == q.c_; }
    friend bool operator!=(const Poly& p, const Poly& q) { return !(p == q); }

    // Euclidean division p = q*d + r with deg r < deg d.
    friend std::pair<Poly, Poly> divmod(const Poly& p, const Poly& d) {
        if (d.is_zero()) throw MathError("division_by_zero", "polynomial division by zero");
        if (p.deg() < d.deg()) return {Poly(), p};
        std::vector<FieldElem> r = p.c_;
        std::vector<FieldElem> q(p.deg() - d.deg() + 1);
        FieldElem inv_lead = d.lead().inv();
        for (int k = p.deg(); k >= d.deg(); --k) {
            if (r[k].is_zero()) continue;
            FieldElem f = r[k] * inv_lead;
            q[k - d.deg()] = f;
            for (int j = 0; j <= d.deg(); ++j) r[k - d.deg() + j] -= f * d.c_[j];
        }
        r.resize(d.deg() > 0 ? d.deg() : 0);
        return {Poly(std::move(q)), Poly(std::move(r))};
    }
    friend Poly operator/(const Poly& p, const Poly& d) { return divmod(p, d).first; }
    friend Poly operator%(const Poly& p, const Poly& d) { return divmod(p, d).second; }

  private:
    template <class F>
    Poly map(F f) const {
        std::vector<FieldElem> v;
        v.reserve(c_.size());
        for (const auto& a : c_) v.push_back(f(a));
        return Poly(std::move(v));
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<FieldElem> c_;
};

// Monic gcd (zero only when both inputs are zero).
inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline Poly power(const Poly& p, int k) {
    Poly r(FieldElem(1));
    for (int j = 0; j < k; ++j) r = r * p;
    return r;
}

// Yun's algorithm: returns g with p = lead * prod_k g[k]^k, each g[k] monic squarefree
// and pairwise coprime (g[0] unused).
inline std::vector<Poly> squarefree_decomposition(const Poly& p) {
    std::vector<Poly> out(1, Poly(FieldElem(1)));
    if (p.deg() <= 0) return out;
    Poly f = p.monic();
    Poly a = gcd(f, f.deriv());
    Poly b = f / a;
    Poly c = f.deriv() / a;
    Poly dd = c - b.deriv();
    while (b.deg() > 0) {
        Poly g = gcd(b, dd);
        out.push_back(g);
        b = b / g;
        c = dd / g;
        dd = c - b.deriv();
    }
    return out;
}

// ----- Sturm sequences and real root isolation (real coefficients) -----

inline std::vector<Poly> sturm_sequence(const Poly& p) {
    std::vector<Poly> seq{p, p.deriv()};
    while (!seq.back().is_zero()) {
        Poly r = -(seq[seq.size() - 2] % seq.back());
        if (r.is_zero()) break;
        // scale by a positive constant to keep coefficients small
        FieldElem s = r.lead();
        if (s.sign() < 0) s = -s;
        seq.push_back(r * s.inv());
    }
    if (seq.back().is_zero()) seq.pop_back();
    return seq;
}

inline int sign_variations(const std::vector<Poly>& seq, const Rational& x) {
    int count = 0, last = 0;
    FieldElem xv(x);
    for (const auto& q : seq) {
        int s = q.eval(xv).sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

// Upper bound on the absolute value of every complex root (Cauchy).
inline Rational root_bound(const Poly& p) {
    auto abs_bound = [](const FieldElem& x) {
        Rational s = abs(x.a()) + abs(x.c());
        if (x.d() != 0) {
            mpz_class r = sqrt(mpz_class(x.d())) + 1;
            s += (abs(x.b()) + abs(x.e())) * Rational(r);
        }
        return s;
    };
    Rational m = 0;
    FieldElem inv_lead = p.lead().inv();
    for (int k = 0; k < p.deg(); ++k) {
        Rational b = abs_bound(p.coeff(k) * inv_lead);
        if (b > m) m = b;
    }
    return m + 1;
}

struct RealRoot {
    bool exact = false;
    FieldElem value;      // when exact
    Rational lo, hi;      // open isolating interval otherwise; never contains 0
    Poly poly;            // squarefree polynomial with exactly one root in (lo, hi)
};

// Refines an isolated root to interval width <= w, turning it exact if a midpoint hits it.
inline void refine_root(RealRoot& r, const Rational& w) {
    if (r.exact) return;
    int s_lo = r.poly.sign_at(r.lo);
    while (r.hi - r.lo > w) {
        Rational mid = (r.lo + r.hi) / 2;
        int s = r.poly.sign_at(mid);
        if (s == 0) {
            r.exact = true;
            r.value = FieldElem(mid);
            return;
        }
        if (s == s_lo) r.lo = mid;
        else r.hi = mid;
    }
}

inline void bisect_root(RealRoot& r) { refine_root(r, (r.hi - r.lo) / 2); }

// Real roots of a real squarefree polynomial, sorted increasingly.
inline std::vector<RealRoot> isolate_real_roots(Poly g) {
    if (!g.is_real()) throw MathError("not_real", "root isolation needs real coefficients");
    std::vector<RealRoot> exact_roots, found;
    for (;;) {
        found.clear();
        if (g.deg() <= 0) break;
        if (g.coeff(0).is_zero()) {
            RealRoot r;
            r.exact = true;
            r.value = FieldElem(0);
            exact_roots.push_back(r);
            g = g / Poly::x();
            continue;
        }
        Rational B = root_bound(g);
        auto seq = sturm_sequence(g);
        std::vector<std::pair<Rational, Rational>> stack{{Rational(0), B}, {-B, Rational(0)}};
        bool restarted = false;
        while (!stack.empty() && !restarted) {
            auto [lo, hi] = stack.back();
            stack.pop_back();
            int cnt = sign_variations(seq, lo) - sign_variations(seq, hi);
            if (cnt == 0) continue;
            if (cnt == 1) {
                RealRoot r;
                r.lo = lo;
                r.hi = hi;
                found.push_back(r);
                continue;
            }
            Rational mid = (lo + hi) / 2;
            if (g.sign_at(mid) == 0) {
                RealRoot r;
                r.exact = true;
                r.value = FieldElem(mid);
                exact_roots.push_back(r);
                g = g / (Poly::x() - Poly(FieldElem(mid)));
                restarted = true;
                break;
            }
            stack.push_back({mid, hi});
            stack.push_back({lo, mid});
        }
        if (!restarted) break;
    }
    for (auto& r : found) r.poly = g;
    found.insert(found.end(), exact_roots.begin(), exact_roots.end());
    auto approx = [](const RealRoot& r) {
        return r.exact ? r.value.approx().real() : Rational((r.lo + r.hi) / 2).get_d();
    };
    std::sort(found.begin(), found.end(), [&](const RealRoot& x, const RealRoot& y) { return approx(x) < approx(y); });
    return found;
}

}  // namespace linkform
