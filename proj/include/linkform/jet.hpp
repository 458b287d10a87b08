#pragma once

#include <algorithm>
#include <vector>

#include "matrix.hpp"

namespace linkform {

// Truncated power series sum c_j u^j in u = t - xi, known modulo u^prec.
class Jet {
  public:
    Jet() = default;
    Jet(std::vector<FieldElem> c, int prec) : c_(std::move(c)), prec_(prec) { c_.resize(std::max(prec_, 0)); }

    static Jet constant(const FieldElem& v, int prec) {
        std::vector<FieldElem> c(std::max(prec, 0));
        if (prec > 0) c[0] = v;
        return Jet(std::move(c), prec);
    }

    int prec() const { return prec_; }
    FieldElem coeff(int j) const { return (j >= 0 && j < prec_) ? c_[j] : FieldElem(); }
    // First nonzero index, or prec() when nothing nonzero is known.
    int valuation() const {
        for (int j = 0; j < prec_; ++j)
            if (!c_[j].is_zero()) return j;
        return prec_;
    }
    bool known_nonzero() const { return valuation() < prec_; }
    bool is_zero() const { return !known_nonzero(); }

    friend Jet operator+(const Jet& x, const Jet& y) {
        int p = std::min(x.prec_, y.prec_);
        std::vector<FieldElem> c(p);
        for (int j = 0; j < p; ++j) c[j] = x.c_[j] + y.c_[j];
        return Jet(std::move(c), p);
    }
    Jet operator-() const {
        Jet r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend Jet operator-(const Jet& x, const Jet& y) { return x + (-y); }
    Jet& operator+=(const Jet& y) { return *this = *this + y; }
    Jet& operator-=(const Jet& y) { return *this = *this - y; }
    friend Jet operator*(const Jet& x, const Jet& y) {
        int vx = x.valuation(), vy = y.valuation();
        int p = std::min(x.prec_ + vy, y.prec_ + vx);
        std::vector<FieldElem> c(std::max(p, 0));
        for (int i = vx; i < std::min(x.prec_, p); ++i) {
            if (x.c_[i].is_zero()) continue;
            for (int j = vy; j < y.prec_ && i + j < p; ++j) c[i + j] += x.c_[i] * y.c_[j];
        }
        return Jet(std::move(c), p);
    }
    friend Jet operator*(const FieldElem& s, const Jet& x) {
        Jet r = x;
        for (auto& v : r.c_) v = s * v;
        return r;
    }
    // Exact quotient x / y; requires valuation(x) >= valuation(y) with y known nonzero.
    friend Jet operator/(const Jet& x, const Jet& y) {
        int vy = y.valuation();
        if (vy >= y.prec_) throw MathError("truncation_too_small", "division by a jet with no known nonzero term");
        int vx = x.valuation();
        if (vx < vy && vx < x.prec_) throw Error("jet division with negative valuation");
        // 1 / (u^{-vy} y) modulo u^{y.prec - vy}
        int pu = y.prec_ - vy;
        std::vector<FieldElem> inv(pu);
        FieldElem lead_inv = y.c_[vy].inv();
        for (int k = 0; k < pu; ++k) {
            FieldElem s = k == 0 ? FieldElem(1) : FieldElem();
            for (int j = 1; j <= k; ++j) s -= y.c_[vy + j] * inv[k - j];
            inv[k] = s * lead_inv;
        }
        Jet yinv(std::move(inv), pu);
        Jet prod = x * yinv;  // still carries the factor u^vy
        int p = prod.prec_ - vy;
        std::vector<FieldElem> c(std::max(p, 0));
        for (int j = 0; j < p; ++j) c[j] = prod.c_[j + vy];
        return Jet(std::move(c), p);
    }

    // Composition with the series w(u) of valuation >= 1.
    Jet compose(const Jet& w) const {
        Jet acc = Jet::constant(FieldElem(), prec_);
        Jet pw = Jet::constant(FieldElem(1), prec_);
        for (int j = 0; j < prec_; ++j) {
            if (!c_[j].is_zero()) acc += c_[j] * pw;
            pw = pw * w;
            pw = pw.truncated(prec_);
        }
        return acc.truncated(prec_);
    }
    Jet truncated(int p) const {
        if (p >= prec_) return *this;
        return Jet(std::vector<FieldElem>(c_.begin(), c_.begin() + std::max(p, 0)), p);
    }
    Jet conj_coeffs() const {
        Jet r = *this;
        for (auto& v : r.c_) v = v.conj();
        return r;
    }

  private:
    std::vector<FieldElem> c_;
    int prec_ = 0;
};

// Expansions at a fixed exact point xi of the unit circle.
class JetContext {
  public:
    JetContext(const CirclePoint& xi, int prec) : xi_(xi), z_(xi.value()), prec_(prec) {
        // t^{-1} - conj(xi) = sum_{j>=1} conj(xi) (-conj(xi))^j u^j
        FieldElem xb = z_.conj();
        std::vector<FieldElem> w(prec_);
        FieldElem pw(1);
        for (int j = 1; j < prec_; ++j) {
            pw *= -xb;
            w[j] = xb * pw;
        }
        w_ = Jet(std::move(w), prec_);
        std::vector<FieldElem> ti(prec_);
        for (int j = 0; j < prec_; ++j) ti[j] = (j == 0 ? xb : FieldElem()) + w_.coeff(j);
        tinv_ = Jet(std::move(ti), prec_);
    }

    int prec() const { return prec_; }
    const CirclePoint& point() const { return xi_; }

    Jet expand(const LaurentPoly& p) const {
        if (p.is_zero()) return Jet::constant(FieldElem(), prec_);
        // Taylor shift of the polynomial part, then multiply by t^low.
        Poly q = p.to_poly();
        std::vector<FieldElem> c(q.coeffs());
        int deg = static_cast<int>(c.size()) - 1;
        for (int i = 0; i < deg; ++i)
            for (int j = deg - 1; j >= i; --j) c[j] += z_ * c[j + 1];
        c.resize(std::max(static_cast<int>(c.size()), prec_));
        c.resize(prec_);
        Jet out(std::move(c), prec_);
        int k = p.low();
        if (k != 0) {
            Jet base = k > 0 ? Jet(std::vector<FieldElem>{z_, FieldElem(1)}, prec_) : tinv_;
            for (int j = 0; j < std::abs(k); ++j) out = (out * base).truncated(prec_);
        }
        return out;
    }
    // f^#, using t^{-1} - conj(xi) = w(u).
    Jet involve(const Jet& f) const { return f.conj_coeffs().compose(w_.truncated(f.prec())); }

  private:
    CirclePoint xi_;
    FieldElem z_;
    int prec_;
    Jet w_, tinv_;
};

}  // namespace linkform
