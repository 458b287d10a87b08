#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "linkform/linkform.hpp"

namespace testing_support {

using namespace linkform;

inline LaurentPoly tt() { return LaurentPoly::t(); }
inline LaurentPoly ti() { return LaurentPoly::t(-1); }
inline LaurentPoly C(long v) { return LaurentPoly(FieldElem(v)); }
inline LaurentPoly C(const FieldElem& v) { return LaurentPoly(v); }
inline Rational R(long p, long q = 1) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}
inline FieldElem Q(long p, long q = 1) { return FieldElem(R(p, q)); }
inline FieldElem G(long re, long im, long q = 1) { return FieldElem::complex(R(re, q), R(im, q)); }

inline LaurentPoly trefoil() { return tt() - C(1) + ti(); }

inline LMatrix one(const LaurentPoly& p) {
    LMatrix m(1, 1);
    m(0, 0) = p;
    return m;
}

// The circle points used by the randomized suites.
inline std::vector<CirclePoint> point_pool() {
    return {CirclePoint(),
            CirclePoint::root_of_unity(1, 2),
            CirclePoint::root_of_unity(1, 4),
            CirclePoint::root_of_unity(3, 4),
            CirclePoint::exact(Q(3, 5), Q(4, 5)),
            CirclePoint::exact(Q(3, 5), Q(-4, 5)),
            CirclePoint::cayley(Q(1, 3)),
            CirclePoint::cayley(Q(-1, 3))};
}

inline std::complex<double> approx(const FieldElem& x) { return x.approx(); }

inline std::complex<double> eval_approx(const LaurentPoly& p, double theta) {
    if (p.is_zero()) return 0;
    std::complex<double> w = std::polar(1.0, theta), s = 0;
    for (int k = p.high(); k >= p.low(); --k) s = s * w + approx(p.coeff(k));
    return s * std::polar(1.0, p.low() * theta);
}

// Random Laurent polynomial with small Gaussian-integer coefficients.
inline LaurentPoly random_poly(std::mt19937& rng, int lo, int hi, bool real = false, int range = 3) {
    std::uniform_int_distribution<int> c(-range, range);
    LaurentPoly p;
    for (int k = lo; k <= hi; ++k) p += LaurentPoly::monomial(real ? Q(c(rng)) : G(c(rng), c(rng)), k);
    return p;
}

// p with p^# = p and span at most 2*half.
inline LaurentPoly random_symmetric(std::mt19937& rng, int half, bool real = false, int range = 4) {
    std::uniform_int_distribution<int> c(-range, range);
    LaurentPoly p = C(Q(c(rng)));
    for (int k = 1; k <= half; ++k) {
        FieldElem a = real ? Q(c(rng)) : G(c(rng), c(rng));
        p += LaurentPoly::monomial(a, k) + LaurentPoly::monomial(a.conj(), -k);
    }
    return p;
}

// Unimodular matrix over the Laurent ring: a product of elementary moves and unit scalings.
inline LMatrix random_unimodular(std::mt19937& rng, int n, bool real = false, int moves = 4) {
    LMatrix p = LMatrix::identity(n);
    if (n == 0) return p;
    std::uniform_int_distribution<int> idx(0, n - 1), pw(-1, 1), coin(0, 1);
    for (int m = 0; m < moves; ++m) {
        int i = idx(rng), j = idx(rng);
        if (i != j) {
            p.add_row(i, j, random_poly(rng, 0, coin(rng), real, 1));
        } else {
            FieldElem u = real ? FieldElem(coin(rng) ? 1 : -1) : (coin(rng) ? FieldElem::i() : FieldElem(2));
            p.scale_row(i, LaurentPoly::monomial(u, pw(rng)));
        }
    }
    return p;
}

// Random representable complex form with at most max_parts summands and balanced odd signs.
inline StructuredForm random_representable(std::mt19937& rng, int max_parts = 6) {
    auto pool = point_pool();
    std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1), coin(0, 1), ord(1, 3);
    std::uniform_int_distribution<int> kind(0, 5), count(1, max_parts);
    StructuredForm s;
    s.field = FieldTag::C;
    int target = count(rng);
    while (static_cast<int>(s.parts.size()) < target) {
        int k = kind(rng);
        int room = target - static_cast<int>(s.parts.size());
        if (k <= 2 && room >= 2) {
            // a pair of odd summands of opposite sign
            int e = coin(rng) ? 1 : -1;
            s.parts.push_back(BasicForm::e(FieldTag::C, 2 * ord(rng) - 1, e, pool[pick(rng)]));
            s.parts.push_back(BasicForm::e(FieldTag::C, 2 * ord(rng) - 1, -e, pool[pick(rng)]));
        } else if (k <= 4) {
            s.parts.push_back(BasicForm::e(FieldTag::C, 2 + 2 * coin(rng), coin(rng) ? 1 : -1, pool[pick(rng)]));
        } else {
            FieldElem z = coin(rng) ? Q(2) : G(1, 1);
            s.parts.push_back(BasicForm::f(FieldTag::C, ord(rng), basic_poly_off_circle(z, FieldTag::C)));
        }
    }
    s.canonicalize();
    return s;
}

// Random real form: e-summands at upper points, even e and odd f at +-1, and an off-circle f.
inline StructuredForm random_real_form(std::mt19937& rng, int max_parts = 5) {
    std::vector<CirclePoint> upper = {CirclePoint::root_of_unity(1, 4), CirclePoint::exact(Q(3, 5), Q(4, 5)),
                                      CirclePoint::cayley(Q(1, 3))};
    std::vector<CirclePoint> pm1 = {CirclePoint(), CirclePoint::root_of_unity(1, 2)};
    std::uniform_int_distribution<int> up(0, 2), coin(0, 1), ord(1, 3), kind(0, 5), count(1, max_parts);
    StructuredForm s;
    s.field = FieldTag::R;
    int target = count(rng);
    for (int j = 0; j < target; ++j) {
        int k = kind(rng);
        int e = coin(rng) ? 1 : -1;
        if (k <= 2) s.parts.push_back(BasicForm::e(FieldTag::R, ord(rng), e, upper[up(rng)]));
        else if (k == 3) s.parts.push_back(BasicForm::e(FieldTag::R, 2 * coin(rng) + 2, e, pm1[coin(rng)]));
        else if (k == 4) s.parts.push_back(BasicForm::f_pm1(2 * coin(rng) + 1, pm1[coin(rng)]));
        else s.parts.push_back(BasicForm::f(FieldTag::R, ord(rng), basic_poly_off_circle(Q(2), FieldTag::R)));
    }
    s.canonicalize();
    return s;
}

// Generators of an isotropic submodule of presented(s), one summand (or opposite pair) at a time.
inline std::vector<Vec> random_isotropic(std::mt19937& rng, const StructuredForm& s) {
    std::vector<int> off;
    PresentedForm pf = presented(s, &off);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<Vec> L;
    std::vector<bool> used(s.parts.size(), false);
    auto unit_vec = [&](int i, const LaurentPoly& c) {
        Vec v(pf.size());
        v[i] = c;
        return v;
    };
    for (size_t a = 0; a < s.parts.size(); ++a) {
        if (used[a] || !coin(rng)) continue;
        const BasicForm& b = s.parts[a];
        int n = b.n;
        if (b.is_f_pm1()) {
            L.push_back(unit_vec(off[a], C(1)));
        } else if (b.is_f_off()) {
            L.push_back(unit_vec(off[a], power(b.desc, (n + 1) / 2)));
        } else {
            // an opposite partner turns the whole generator isotropic
            bool paired = false;
            for (size_t c = a + 1; c < s.parts.size() && n % 2 == 1; ++c) {
                const BasicForm& o = s.parts[c];
                if (!used[c] && o.is_e() && o.n == n && o.xi == b.xi && o.eps == -b.eps) {
                    Vec v(pf.size());
                    v[off[a]] = C(1);
                    v[off[c]] = C(1);
                    L.push_back(v);
                    used[c] = paired = true;
                    break;
                }
            }
            if (!paired && n >= 2) {
                LaurentPoly base = s.field == FieldTag::R && !b.xi.is_real_point() ? basic_poly(b.xi, FieldTag::R)
                                                                                   : linear(b.xi.value());
                L.push_back(unit_vec(off[a], power(base, (n + 1) / 2)));
            }
        }
        used[a] = true;
    }
    return L;
}

// Unit-determinant Hermitian block for stabilization.
inline LMatrix random_stabilizer(std::mt19937& rng, bool real) {
    std::uniform_int_distribution<int> kind(0, 2), pw(-2, 2), coin(0, 1);
    int k = kind(rng);
    if (k == 0) return one(C(coin(rng) ? 1 : -1));
    if (k == 1) {
        LMatrix d(2, 2);
        LaurentPoly u = LaurentPoly::monomial(real ? FieldElem(coin(rng) ? 1 : -1) : FieldElem::i(), pw(rng));
        d(0, 1) = u;
        d(1, 0) = u.involve();
        return d;
    }
    LMatrix d = LMatrix::diagonal({C(1), C(-1)});
    return d;
}

}  // namespace testing_support
