#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <utility>

#include "errors.hpp"

namespace linkform {

using Rational = mpq_class;

// Session settings shared by the algorithms that need to know the field.
struct Context {
    long sqrt_d = 0;        // 0 means the base field Q(i)
    int height_bound = 64;  // Cayley parameters tried when upgrading roots to exact points
    int truncation = 0;     // 0 means "choose automatically"
};

inline Rational parse_rational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ParseError("empty rational");
    auto slash = s.find('/');
    auto valid_int = [](const std::string& p) {
        size_t k = (!p.empty() && (p[0] == '-' || p[0] == '+')) ? 1 : 0;
        if (k >= p.size()) return false;
        for (; k < p.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(p[k]))) return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num = num.substr(1);
    if (!valid_int(num) || !valid_int(den)) throw ParseError("bad rational '" + text + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline std::string rational_string(const Rational& q) { return q.get_str(); }


// Element a + b*sqrt(d) + i*(c + e*sqrt(d)) of Q(i, sqrt d).  d == 0 encodes Q(i);
// the radical tag is dropped whenever b = e = 0 so that elements of Q(i) mix freely.
class FieldElem {
  public:
    FieldElem() = default;
    FieldElem(long v) : a_(v) {}
    FieldElem(int v) : a_(v) {}
    FieldElem(const Rational& v) : a_(v) {}
    FieldElem(Rational a, Rational b, Rational c, Rational e, long d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), e_(std::move(e)), d_(d) {
        tidy();
    }

    static FieldElem complex(const Rational& re, const Rational& im) { return {re, 0, im, 0, 0}; }
    static FieldElem i() { return complex(0, 1); }
    static FieldElem sqrt(long d) {
        if (d <= 1) throw MathError("unsupported_field", "sqrt parameter must be a squarefree integer > 1");
        return {0, 1, 0, 0, d};
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }
    const Rational& e() const { return e_; }
    long d() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && e_ == 0; }
    bool is_real() const { return c_ == 0 && e_ == 0; }
    bool is_rational() const { return b_ == 0 && c_ == 0 && e_ == 0; }

    FieldElem re() const { return {a_, b_, 0, 0, d_}; }
    FieldElem im() const { return {c_, e_, 0, 0, d_}; }
    FieldElem conj() const { return {a_, b_, -c_, -e_, d_}; }

    // Exact sign of a real element.
    int sign() const {
        if (!is_real()) throw MathError("not_real", "sign of a non-real field element");
        return sign_qr(a_, b_, d_);
    }

    FieldElem operator-() const { return {-a_, -b_, -c_, -e_, d_}; }

    friend FieldElem operator+(const FieldElem& x, const FieldElem& y) {
        return {x.a_ + y.a_, x.b_ + y.b_, x.c_ + y.c_, x.e_ + y.e_, merge(x.d_, y.d_)};
    }
    friend FieldElem operator-(const FieldElem& x, const FieldElem& y) {
        return {x.a_ - y.a_, x.b_ - y.b_, x.c_ - y.c_, x.e_ - y.e_, merge(x.d_, y.d_)};
    }
    friend FieldElem operator*(const FieldElem& x, const FieldElem& y) {
        long d = merge(x.d_, y.d_);
        if (d == 0) {
            return {x.a_ * y.a_ - x.c_ * y.c_, 0, x.a_ * y.c_ + x.c_ * y.a_, 0, 0};
        }
        Rational rr_a, rr_b, ii_a, ii_b, ri_a, ri_b, ir_a, ir_b;
        mul_qr(x.a_, x.b_, y.a_, y.b_, d, rr_a, rr_b);
        mul_qr(x.c_, x.e_, y.c_, y.e_, d, ii_a, ii_b);
        mul_qr(x.a_, x.b_, y.c_, y.e_, d, ri_a, ri_b);
        mul_qr(x.c_, x.e_, y.a_, y.b_, d, ir_a, ir_b);
        return {rr_a - ii_a, rr_b - ii_b, ri_a + ir_a, ri_b + ir_b, d};
    }
    FieldElem inv() const {
        if (is_zero()) throw MathError("division_by_zero", "division by zero in field");
        // 1/z = conj(z) / |z|^2 and 1/(p + q r) = (p - q r)/(p^2 - d q^2)
        FieldElem n2 = (*this) * conj();
        Rational p = n2.a_, q = n2.b_;
        Rational den = p * p - Rational(n2.d_) * q * q;
        FieldElem inv_n2(p / den, -q / den, 0, 0, n2.d_);
        return conj() * inv_n2;
    }
    friend FieldElem operator/(const FieldElem& x, const FieldElem& y) { return x * y.inv(); }

    FieldElem& operator+=(const FieldElem& y) { return *this = *this + y; }
    FieldElem& operator-=(const FieldElem& y) { return *this = *this - y; }
    FieldElem& operator*=(const FieldElem& y) { return *this = *this * y; }
    FieldElem& operator/=(const FieldElem& y) { return *this = *this / y; }

    friend bool operator==(const FieldElem& x, const FieldElem& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.e_ == y.e_ &&
               (x.d_ == y.d_ || (x.b_ == 0 && x.e_ == 0));
    }
    friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }

    std::complex<double> approx() const {
        double r = d_ ? std::sqrt(static_cast<double>(d_)) : 0.0;
        return {a_.get_d() + b_.get_d() * r, c_.get_d() + e_.get_d() * r};
    }

    // Textual form "a+c*i+b*r+e*i*r" with r = sqrt(d); zero terms omitted.
    std::string str() const {
        std::string out;
        auto term = [&](const Rational& q, const char* suffix) {
            if (q == 0) return;
            std::string s = q.get_str();
            if (!out.empty() && s[0] != '-') out += "+";
            out += s;
            out += suffix;
        };
        term(a_, "");
        term(c_, "*i");
        term(b_, "*r");
        term(e_, "*i*r");
        return out.empty() ? "0" : out;
    }

    // Parses the textual form; `d` is the session radical used for "*r" terms.
    static FieldElem parse(const std::string& text, long d) {
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
        if (s.empty()) throw ParseError("empty field element");
        Rational a, b, c, e;
        size_t pos = 0;
        while (pos < s.size()) {
            size_t end = pos + 1;
            while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
            std::string t = s.substr(pos, end - pos);
            pos = end;
            bool has_i = false, has_r = false;
            // strip "*i" / "*r" factors (either order), or a bare "i"/"r"
            for (;;) {
                if (t.size() >= 2 && (t.substr(t.size() - 2) == "*i" || t.substr(t.size() - 2) == "*r")) {
                    char f = t.back();
                    if ((f == 'i' && has_i) || (f == 'r' && has_r)) throw ParseError("repeated factor in '" + text + "'");
                    (f == 'i' ? has_i : has_r) = true;
                    t.resize(t.size() - 2);
                } else if (!t.empty() && (t.back() == 'i' || t.back() == 'r')) {
                    char f = t.back();
                    if ((f == 'i' && has_i) || (f == 'r' && has_r)) throw ParseError("repeated factor in '" + text + "'");
                    (f == 'i' ? has_i : has_r) = true;
                    t.pop_back();
                    if (t.empty() || t == "+" || t == "-") t += "1";
                    break;
                } else {
                    break;
                }
            }
            Rational q = parse_rational(t);
            if (has_r && d == 0) throw ParseError("'" + text + "' uses sqrt(d) but no --field-sqrt was given");
            if (has_i && has_r) e += q;
            else if (has_i) c += q;
            else if (has_r) b += q;
            else a += q;
        }
        return {a, b, c, e, (b != 0 || e != 0) ? d : 0};
    }

  private:
    static long merge(long d1, long d2) {
        if (d1 == 0) return d2;
        if (d2 == 0 || d1 == d2) return d1;
        throw MathError("field_mismatch", "elements from Q(i,sqrt " + std::to_string(d1) + ") and Q(i,sqrt " +
                                              std::to_string(d2) + ") cannot be combined");
    }
    static void mul_qr(const Rational& a1, const Rational& b1, const Rational& a2, const Rational& b2, long d,
                       Rational& ra, Rational& rb) {
        ra = a1 * a2 + Rational(d) * b1 * b2;
        rb = a1 * b2 + a2 * b1;
    }
    static int sign_qr(const Rational& a, const Rational& b, long d) {
        int sa = sgn(a), sb = sgn(b);
        if (sb == 0 || d == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        Rational lhs = a * a, rhs = Rational(d) * b * b;
        return lhs > rhs ? sa : sb;
    }
    void tidy() {
        if (b_ == 0 && e_ == 0) d_ = 0;
    }

    Rational a_, b_, c_, e_;
    long d_ = 0;
};

// Compare two real elements exactly.
inline int compare_real(const FieldElem& x, const FieldElem& y) { return (x - y).sign(); }

inline FieldElem power(FieldElem x, long k) {
    if (k < 0) {
        x = x.inv();
        k = -k;
    }
    FieldElem r(1);
    while (k > 0) {
        if (k & 1) r *= x;
        x *= x;
        k >>= 1;
    }
    return r;
}
inline FieldElem power(const FieldElem& x, int k) { return power(x, static_cast<long>(k)); }

// Rational bounds lo <= x <= hi for a real element, with hi - lo <= width.
inline std::pair<Rational, Rational> rational_bracket(const FieldElem& x, const Rational& width) {
    if (x.is_rational()) return {x.a(), x.a()};
    Rational mid(x.approx().real());
    Rational lo = mid - width / 2, hi = mid + width / 2;
    if (compare_real(x, lo) >= 0 && compare_real(x, hi) <= 0) return {lo, hi};
    // the double was too coarse: widen around it, then bisect down to width
    lo = mid - 1;
    hi = mid + 1;
    while (compare_real(x, lo) < 0) lo -= (hi - lo);
    while (compare_real(x, hi) > 0) hi += (hi - lo);
    while (hi - lo > width) {
        Rational m = (lo + hi) / 2;
        if (compare_real(x, m) >= 0) lo = m;
        else hi = m;
    }
    return {lo, hi};
}

}  // namespace linkform
