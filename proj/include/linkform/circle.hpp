#pragma once

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace linkform {

// Coordinates of exp(2 pi i k/n) when they lie in Q(i), Q(i, sqrt 2) or Q(i, sqrt 3).
inline std::optional<std::pair<FieldElem, FieldElem>> unit_root_coords(long k, long n) {
    if (n <= 0) return std::nullopt;
    k = ((k % n) + n) % n;
    if ((360 * k) % n != 0) return std::nullopt;
    long deg = 360 * k / n;
    Rational half(1, 2);
    auto axis = [](long dgr) -> std::pair<FieldElem, FieldElem> {
        switch (dgr) {
            case 0: return {1, 0};
            case 90: return {0, 1};
            case 180: return {-1, 0};
            default: return {0, -1};
        }
    };
    if (deg % 90 == 0) return axis(deg);
    int quadrant = static_cast<int>(deg / 90);
    long rem = deg % 90;
    FieldElem cx, cy;  // cos, sin of rem in the first quadrant
    if (rem == 30 || rem == 60) {
        FieldElem s3 = FieldElem::sqrt(3) * FieldElem(half);
        cx = rem == 30 ? s3 : FieldElem(half);
        cy = rem == 30 ? FieldElem(half) : s3;
    } else if (rem == 45) {
        cx = cy = FieldElem::sqrt(2) * FieldElem(half);
    } else {
        return std::nullopt;
    }
    // rotate by quadrant * 90 degrees
    for (int q = 0; q < quadrant; ++q) {
        FieldElem nx = -cy, ny = cx;
        cx = nx;
        cy = ny;
    }
    return std::make_pair(cx, cy);
}

// A point on the unit circle: exact coordinates in the session field, a root of unity,
// or a root of a real polynomial in the Cayley parameter s = tan(arg/2) isolated in (lo, hi).
class CirclePoint {
  public:
    enum class Kind { Exact, RootOfUnity, Isolated };

    CirclePoint() = default;  // the point 1

    static CirclePoint exact(const FieldElem& x, const FieldElem& y) {
        if (!x.is_real() || !y.is_real())
            throw MathError("not_on_circle", "circle point coordinates must be real");
        if (x * x + y * y != FieldElem(1))
            throw MathError("not_on_circle", "point (" + x.str() + ", " + y.str() + ") is not on the unit circle");
        CirclePoint p;
        p.kind_ = Kind::Exact;
        p.x_ = x;
        p.y_ = y;
        p.canonicalize();
        return p;
    }
    static CirclePoint from_value(const FieldElem& w) { return exact(w.re(), w.im()); }
    static CirclePoint root_of_unity(long k, long n) {
        auto xy = unit_root_coords(k, n);
        if (!xy) throw MathError("unsupported_point", "root of unity " + std::to_string(k) + "/" + std::to_string(n) +
                                                            " is not representable in a supported field");
        CirclePoint p;
        p.kind_ = Kind::RootOfUnity;
        long g = std::gcd(((k % n) + n) % n, n);
        if (g == 0) g = n;
        p.k_ = (((k % n) + n) % n) / g;
        p.n_ = n / g;
        p.x_ = xy->first;
        p.y_ = xy->second;
        return p;
    }
    // The Cayley image (1 + i s)/(1 - i s) of a real s.
    static CirclePoint cayley(const FieldElem& s) {
        if (!s.is_real()) throw MathError("not_real", "Cayley parameter must be real");
        FieldElem s2 = s * s, den = FieldElem(1) + s2;
        return exact((FieldElem(1) - s2) / den, FieldElem(2) * s / den);
    }
    static CirclePoint isolated(Poly poly, Rational lo, Rational hi) {
        if (lo < 0 && hi > 0) throw Error("isolating interval must not contain 0");
        CirclePoint p;
        p.kind_ = Kind::Isolated;
        p.poly_ = std::move(poly);
        p.lo_ = std::move(lo);
        p.hi_ = std::move(hi);
        return p;
    }

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ != Kind::Isolated; }
    const FieldElem& x() const { return need_exact(), x_; }
    const FieldElem& y() const { return need_exact(), y_; }
    FieldElem value() const { return need_exact(), x_ + FieldElem::i() * y_; }
    long k() const { return k_; }
    long n() const { return n_; }
    const Poly& poly() const { return poly_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }

    bool is_one() const { return is_exact() && y_.is_zero() && x_ == FieldElem(1); }
    bool is_minus_one() const { return is_exact() && y_.is_zero() && x_ == FieldElem(-1); }
    bool is_real_point() const { return is_one() || is_minus_one(); }

    // 0: argument in [0, pi), 1: the point -1, 2: argument in (pi, 2 pi)
    int half() const {
        if (kind_ == Kind::Isolated) return lo_ >= 0 ? 0 : 2;
        int sy = y_.sign();
        if (sy > 0) return 0;
        if (sy < 0) return 2;
        return x_.sign() > 0 ? 0 : 1;
    }
    // Sign of the imaginary part.
    int im_sign() const {
        int h = half();
        if (h == 1 || is_one()) return 0;
        return h == 0 ? 1 : -1;
    }

    // Cayley parameter of an exact point other than -1.
    FieldElem s() const {
        if (is_minus_one()) throw Error("the point -1 has no finite Cayley parameter");
        return y() / (FieldElem(1) + x());
    }

    CirclePoint conj() const {
        if (kind_ == Kind::Isolated) return isolated(poly_.negate_var(), -hi_, -lo_);
        if (kind_ == Kind::RootOfUnity) return root_of_unity(n_ - k_, n_);
        return exact(x_, -y_);
    }

    double approx_arg() const {
        const double two_pi = 2 * M_PI;
        double a;
        if (kind_ == Kind::Isolated) {
            CirclePoint q = *this;
            for (int it = 0; it < 200 && q.kind_ == Kind::Isolated && Rational(q.hi_ - q.lo_) > Rational(1, 10000000000000); ++it)
                q.bisect();
            if (q.kind_ != Kind::Isolated) return q.approx_arg();
            a = 2 * std::atan(Rational((q.lo_ + q.hi_) / 2).get_d());
        } else {
            a = std::atan2(y_.approx().real(), x_.approx().real());
        }
        if (a < 0) a += two_pi;
        return a;
    }
    // Rational bounds on the argument (as doubles) for output annotations.
    std::pair<double, double> approx_arg_range() const {
        if (kind_ != Kind::Isolated) return {approx_arg(), approx_arg()};
        double a = 2 * std::atan(lo_.get_d()), b = 2 * std::atan(hi_.get_d());
        if (a < 0) a += 2 * M_PI;
        if (b < 0) b += 2 * M_PI;
        return {a, b};
    }

    std::string str() const {
        switch (kind_) {
            case Kind::RootOfUnity:
                return "exp(2*pi*i*" + std::to_string(k_) + "/" + std::to_string(n_) + ")";
            case Kind::Exact:
                return "(" + x_.str() + ", " + y_.str() + ")";
            default: {
                std::string p;
                for (int k = 0; k <= poly_.deg(); ++k) p += (k ? "," : "") + poly_.coeff(k).str();
                return "cayley(root of [" + p + "] in (" + lo_.get_str() + ", " + hi_.get_str() + "))";
            }
        }
    }

    // Bisects an isolating interval once (may turn the point exact).
    void bisect() {
        if (kind_ != Kind::Isolated) return;
        RealRoot r{false, {}, lo_, hi_, poly_};
        bisect_root(r);
        if (r.exact) {
            *this = cayley(r.value);
        } else {
            lo_ = r.lo;
            hi_ = r.hi;
        }
    }

  private:
    void need_exact() const {
        if (kind_ == Kind::Isolated)
            throw MathError("inexact_root", "circle point " + str() + " is not exactly identified");
    }
    void canonicalize() {
        long d = x_.d() ? x_.d() : y_.d();
        std::vector<long> orders;
        if (x_.is_zero() || y_.is_zero()) orders = {1, 2, 4};
        else if (d == 3) orders = {3, 6, 12};
        else if (d == 2) orders = {8};
        for (long n : orders) {
            for (long k = 0; k < n; ++k) {
                if (std::gcd(k, n) != 1) continue;
                auto xy = unit_root_coords(k, n);
                if (xy && xy->first == x_ && xy->second == y_) {
                    kind_ = Kind::RootOfUnity;
                    k_ = k;
                    n_ = n;
                    return;
                }
            }
        }
    }

    Kind kind_ = Kind::RootOfUnity;
    FieldElem x_{1}, y_{0};
    long k_ = 0, n_ = 1;
    Poly poly_;
    Rational lo_, hi_;
};

namespace detail {

// Compares an isolated point with an exact Cayley parameter in the same half.
inline int compare_isolated_exact(CirclePoint p, const FieldElem& s0) {
    for (int guard = 0; guard < 100000; ++guard) {
        if (p.is_exact()) return compare_real(p.s(), s0);
        if (compare_real(s0, FieldElem(p.lo())) <= 0) return 1;
        if (compare_real(s0, FieldElem(p.hi())) >= 0) return -1;
        if (p.poly().eval(s0).is_zero()) return 0;
        p.bisect();
    }
    throw MathError("refinement_limit", "could not separate circle points");
}

}  // namespace detail

// Counterclockwise order by argument in [0, 2 pi): -1, 0, +1.
inline int arg_compare(const CirclePoint& a, const CirclePoint& b) {
    int ha = a.half(), hb = b.half();
    if (ha != hb) return ha < hb ? -1 : 1;
    if (ha == 1) return 0;
    if (a.is_exact() && b.is_exact()) {
        if (a.x() == b.x() && a.y() == b.y()) return 0;
        return compare_real(a.s(), b.s());
    }
    if (a.is_exact()) return -detail::compare_isolated_exact(b, a.s());
    if (b.is_exact()) return detail::compare_isolated_exact(a, b.s());
    CirclePoint p = a, q = b;
    bool checked_common = false;
    for (int guard = 0; guard < 100000; ++guard) {
        if (p.is_exact() || q.is_exact()) return arg_compare(p, q);
        if (p.hi() <= q.lo()) return -1;
        if (q.hi() <= p.lo()) return 1;
        if (!checked_common) {
            checked_common = true;
            Poly g = gcd(p.poly(), q.poly());
            if (g.deg() >= 1) {
                Rational lo = std::max(p.lo(), q.lo()), hi = std::min(p.hi(), q.hi());
                auto seq = sturm_sequence(g);
                if (sign_variations(seq, lo) - sign_variations(seq, hi) > 0) return 0;
            }
        }
        p.bisect();
        q.bisect();
    }
    throw MathError("refinement_limit", "could not separate circle points " + a.str() + " and " + b.str());
}

inline bool operator==(const CirclePoint& a, const CirclePoint& b) { return arg_compare(a, b) == 0; }
inline bool operator!=(const CirclePoint& a, const CirclePoint& b) { return arg_compare(a, b) != 0; }

struct ArgLess {
    bool operator()(const CirclePoint& a, const CirclePoint& b) const { return arg_compare(a, b) < 0; }
};

}  // namespace linkform
