#pragma once

#include <string>
#include <utility>

#include "laurent.hpp"

namespace linkform {

// An element of F(t)/Λ, stored as num/den with den monic, den(0) != 0, num a polynomial of
// degree < deg den and gcd(num, den) = 1.  Zero is 0/1.
class Frac {
  public:
    Frac() : den_(1) {}
    Frac(const LaurentPoly& num, const LaurentPoly& den) {
        if (den.is_zero()) throw MathError("division_by_zero", "fraction with zero denominator");
        LaurentPoly d = normalized(den);
        LaurentPoly u = unit_part(den);
        // num/den = num * u^{-1} / d
        LaurentPoly n = num * LaurentPoly::monomial(u.coeff(u.low()).inv(), -u.low());
        den_ = d;
        num_ = reduce(n, d);
        LaurentPoly g = gcd(num_, den_);
        if (g.span() > 0) {
            num_ = div_or_throw(num_, g);
            den_ = div_or_throw(den_, g);
        }
        if (num_.is_zero()) den_ = LaurentPoly(1);
    }
    static Frac inverse_of(const LaurentPoly& den) { return Frac(LaurentPoly(1), den); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    Frac involve() const { return is_zero() ? Frac() : Frac(num_.involve(), den_.involve()); }

    friend Frac operator+(const Frac& x, const Frac& y) {
        if (x.is_zero()) return y;
        if (y.is_zero()) return x;
        if (x.den_ == y.den_) return Frac(x.num_ + y.num_, x.den_);
        LaurentPoly g = gcd(x.den_, y.den_);
        LaurentPoly xc = div_or_throw(y.den_, g), yc = div_or_throw(x.den_, g);
        return Frac(x.num_ * xc + y.num_ * yc, x.den_ * xc);
    }
    Frac operator-() const {
        Frac r = *this;
        r.num_ = reduce(-num_, den_);
        return r;
    }
    friend Frac operator-(const Frac& x, const Frac& y) { return x + (-y); }
    friend Frac operator*(const LaurentPoly& p, const Frac& x) {
        if (x.is_zero() || p.is_zero()) return Frac();
        return Frac(p * x.num_, x.den_);
    }
    friend Frac operator*(const Frac& x, const LaurentPoly& p) { return p * x; }
    Frac& operator+=(const Frac& y) { return *this = *this + y; }
    friend bool operator==(const Frac& x, const Frac& y) { return x.num_ == y.num_ && x.den_ == y.den_; }
    friend bool operator!=(const Frac& x, const Frac& y) { return !(x == y); }

    bool is_hermitian_value() const { return involve() == *this; }

    std::string str() const {
        if (is_zero()) return "0";
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

    // Residue of p modulo a monic d with d(0) != 0, as a polynomial of degree < deg d.
    static LaurentPoly reduce(const LaurentPoly& p, const LaurentPoly& d) {
        if (p.is_zero()) return p;
        if (d.span() == 0) return {};
        // d has no negative exponents here, so polynomial remainders are the canonical residues
        Poly D = d.to_poly();
        Poly r = p.to_poly() % D;
        int k = p.low();
        if (k != 0) {
            Poly step;
            if (k > 0) {
                step = Poly::x() % D;
            } else {
                // d = d0 + t q, so t^{-1} = -q/d0 modulo d
                FieldElem d0 = D.coeff(0);
                std::vector<FieldElem> q(D.coeffs().begin() + 1, D.coeffs().end());
                step = Poly(std::move(q)) * (-d0.inv());
                k = -k;
            }
            Poly acc(FieldElem(1));
            while (k > 0) {
                if (k & 1) acc = (acc * step) % D;
                step = (step * step) % D;
                k >>= 1;
            }
            r = (r * acc) % D;
        }
        return LaurentPoly::from_poly(r);
    }

  private:
    LaurentPoly num_, den_;
};

}  // namespace linkform
