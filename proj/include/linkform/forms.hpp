#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "laurent.hpp"

namespace linkform {

// The basic linking forms e(n, eps, xi) on the unit circle and f(n, xi) elsewhere
// (and at xi = +-1 for odd n over the reals).
struct BasicForm {
    enum class Type { E, F };

    FieldTag field = FieldTag::C;
    Type type = Type::E;
    int n = 1;
    int eps = 1;            // E only
    CirclePoint xi;         // E, and F at +-1
    LaurentPoly desc;       // F away from the circle: canonical symmetric basic polynomial(s)

    static BasicForm e(FieldTag field, int n, int eps, const CirclePoint& xi) {
        if (n <= 0) throw MathError("invalid_form", "order must be positive");
        if (eps != 1 && eps != -1) throw MathError("invalid_form", "eps must be +1 or -1");
        if (field == FieldTag::R) {
            if (xi.is_real_point() && n % 2 != 0)
                throw MathError("odd_order_at_pm1", "e(n, eps, +-1) over R needs n even");
            if (xi.im_sign() < 0)
                throw MathError("unsupported_point", "real e-forms are indexed by points with Im >= 0");
        }
        BasicForm b;
        b.field = field;
        b.type = Type::E;
        b.n = n;
        b.eps = eps;
        b.xi = xi;
        return b;
    }
    // f(n, +-1) over the reals, n odd.
    static BasicForm f_pm1(int n, const CirclePoint& xi) {
        if (!xi.is_real_point()) throw MathError("unsupported_point", "f-forms on the circle exist only at +-1");
        if (n <= 0 || n % 2 == 0) throw MathError("invalid_form", "f(n, +-1) over R needs n odd");
        BasicForm b;
        b.field = FieldTag::R;
        b.type = Type::F;
        b.n = n;
        b.eps = 0;
        b.xi = xi;
        return b;
    }
    // f(n, desc) for a symmetric descriptor without unit-circle roots.
    static BasicForm f(FieldTag field, int n, const LaurentPoly& desc, const Context& ctx = {}) {
        if (n <= 0) throw MathError("invalid_form", "order must be positive");
        if (desc.span() <= 0) throw MathError("invalid_form", "f-descriptor must be a non-unit");
        if (!is_weakly_symmetric(desc)) throw MathError("not_weakly_symmetric", "f-descriptor " + desc.str() + " is not weakly symmetric");
        if (field == FieldTag::R && !desc.is_real()) throw MathError("not_real", "real f-descriptor has complex coefficients");
        if (!circle_roots(desc, ctx).empty()) throw MathError("unsupported_point", "f-descriptor " + desc.str() + " vanishes on the unit circle");
        BasicForm b;
        b.field = field;
        b.type = Type::F;
        b.n = n;
        b.eps = 0;
        b.desc = canonical_symmetric(desc);
        return b;
    }

    bool is_e() const { return type == Type::E; }
    bool is_f_pm1() const { return type == Type::F && desc.is_zero(); }
    bool is_f_off() const { return type == Type::F && !desc.is_zero(); }

    // F_xi for E and f at +-1, the descriptor otherwise.
    LaurentPoly basic() const { return is_f_off() ? desc : basic_poly(xi, field); }
    // Order of the underlying module.
    LaurentPoly order() const {
        LaurentPoly p = power(basic(), n);
        return is_f_pm1() ? p * p : p;
    }

    std::string str() const {
        std::string f = tag_str(field);
        if (is_e()) return "e(" + std::to_string(n) + "," + (eps > 0 ? "+1" : "-1") + "," + xi.str() + "," + f + ")";
        if (is_f_pm1()) return "f(" + std::to_string(n) + "," + xi.str() + "," + f + ")";
        return "f(" + std::to_string(n) + ",[" + desc.str() + "]," + f + ")";
    }
};

inline int compare(const BasicForm& a, const BasicForm& b) {
    auto rank = [](const BasicForm& x) { return x.is_e() ? 0 : x.is_f_pm1() ? 1 : 2; };
    if (rank(a) != rank(b)) return rank(a) < rank(b) ? -1 : 1;
    if (!a.is_f_off()) {
        int c = arg_compare(a.xi, b.xi);
        if (c) return c;
    } else {
        std::string sa = a.desc.str(), sb = b.desc.str();
        if (sa != sb) return sa < sb ? -1 : 1;
    }
    if (a.n != b.n) return a.n < b.n ? -1 : 1;
    if (a.eps != b.eps) return a.eps > b.eps ? -1 : 1;
    return 0;
}
inline bool operator==(const BasicForm& a, const BasicForm& b) { return a.field == b.field && compare(a, b) == 0; }

// A direct sum of basic forms, kept sorted.
struct StructuredForm {
    FieldTag field = FieldTag::C;
    std::vector<BasicForm> parts;

    StructuredForm() = default;
    explicit StructuredForm(FieldTag f, std::vector<BasicForm> p = {}) : field(f), parts(std::move(p)) { canonicalize(); }

    void canonicalize() {
        for (const auto& b : parts)
            if (b.field != field) throw MathError("field_mismatch", "summand " + b.str() + " has the wrong field");
        std::stable_sort(parts.begin(), parts.end(), [](const BasicForm& a, const BasicForm& b) { return compare(a, b) < 0; });
    }
    void add(const BasicForm& b) {
        parts.push_back(b);
        canonicalize();
    }
    bool empty() const { return parts.empty(); }
    LaurentPoly order() const {
        LaurentPoly p(1);
        for (const auto& b : parts) p *= b.order();
        return p;
    }
    std::string str() const {
        if (parts.empty()) return "0";
        std::string s;
        for (const auto& b : parts) s += (s.empty() ? "" : " + ") + b.str();
        return s;
    }
};

inline StructuredForm direct_sum(const StructuredForm& a, const StructuredForm& b) {
    if (a.field != b.field) throw MathError("field_mismatch", "direct sum of forms over different fields");
    std::vector<BasicForm> p = a.parts;
    p.insert(p.end(), b.parts.begin(), b.parts.end());
    return StructuredForm(a.field, p);
}

// ---------- Hodge numbers ----------

struct HodgeP {
    int n, eps;
    CirclePoint xi;
    int count;
};
struct HodgeQ {
    int n;
    BasicForm form;  // representative f-form carrying the descriptor or the point
    int count;
};
struct HodgeNumbers {
    FieldTag field = FieldTag::C;
    std::vector<HodgeP> P;
    std::vector<HodgeQ> Q;

    int p(int n, int eps, const CirclePoint& xi) const {
        for (const auto& h : P)
            if (h.n == n && h.eps == eps && h.xi == xi) return h.count;
        return 0;
    }
};

inline HodgeNumbers hodge_numbers(const StructuredForm& s) {
    HodgeNumbers h;
    h.field = s.field;
    for (size_t i = 0; i < s.parts.size();) {
        size_t j = i;
        while (j < s.parts.size() && compare(s.parts[i], s.parts[j]) == 0) ++j;
        const BasicForm& b = s.parts[i];
        int cnt = static_cast<int>(j - i);
        if (b.is_e()) h.P.push_back({b.n, b.eps, b.xi, cnt});
        else h.Q.push_back({b.n, b, cnt});
        i = j;
    }
    return h;
}

// ---------- coprime bases ----------

// Pairwise coprime normalized non-units such that every input is a product of their powers.
inline std::vector<LaurentPoly> coprime_base(const std::vector<LaurentPoly>& inputs) {
    std::vector<LaurentPoly> base;
    for (const auto& p : inputs)
        if (!p.is_zero() && p.span() > 0) base.push_back(normalized(p));
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i < base.size() && !changed; ++i)
            for (size_t j = i + 1; j < base.size() && !changed; ++j) {
                if (base[i] == base[j]) {
                    base.erase(base.begin() + j);
                    changed = true;
                    break;
                }
                LaurentPoly g = gcd(base[i], base[j]);
                if (g.span() == 0) continue;
                LaurentPoly a = div_or_throw(base[i], g), b = div_or_throw(base[j], g);
                base.erase(base.begin() + j);
                base.erase(base.begin() + i);
                for (const auto& q : {g, a, b})
                    if (q.span() > 0) base.push_back(normalized(q));
                changed = true;
            }
    }
    std::sort(base.begin(), base.end(), [](const LaurentPoly& a, const LaurentPoly& b) { return a.str() < b.str(); });
    return base;
}

inline int multiplicity_of(const LaurentPoly& factor, LaurentPoly p) {
    int m = 0;
    while (auto q = exact_div(p, factor)) {
        p = *q;
        ++m;
    }
    return m;
}

// Multiset of (n, base element) describing the off-circle f-summands over a common refinement.
inline std::vector<std::pair<int, std::string>> refined_f_parts(const StructuredForm& s, const std::vector<LaurentPoly>& base) {
    std::vector<std::pair<int, std::string>> out;
    for (const auto& b : s.parts) {
        if (!b.is_f_off()) continue;
        for (const auto& q : base)
            if (divides(q, b.desc)) out.push_back({b.n, q.str()});
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_isometric(const StructuredForm& a, const StructuredForm& b) {
    if (a.field != b.field) throw MathError("field_mismatch", "isometry test across fields");
    std::vector<BasicForm> ea, eb;
    std::vector<LaurentPoly> descs;
    for (const auto& x : a.parts) (x.is_f_off() ? descs.push_back(x.desc) : ea.push_back(x));
    for (const auto& x : b.parts) (x.is_f_off() ? descs.push_back(x.desc) : eb.push_back(x));
    if (ea.size() != eb.size()) return false;
    for (size_t i = 0; i < ea.size(); ++i)
        if (compare(ea[i], eb[i]) != 0) return false;
    auto base = coprime_base(descs);
    return refined_f_parts(a, base) == refined_f_parts(b, base);
}

// Signed count of e(n, ., xi) summands: (dimension, signature).
inline std::pair<int, int> hermitian_residue_form(const StructuredForm& s, const CirclePoint& xi, int n) {
    int dim = 0, sig = 0;
    for (const auto& b : s.parts)
        if (b.is_e() && b.n == n && b.xi == xi) {
            ++dim;
            sig += b.eps;
        }
    return {dim, sig};
}

// Groups summands by basic polynomial.
inline std::vector<StructuredForm> primary_decompose(const StructuredForm& s) {
    std::vector<StructuredForm> out;
    for (const auto& b : s.parts) {
        bool placed = false;
        for (auto& g : out) {
            const BasicForm& r = g.parts.front();
            bool same = r.is_f_off() == b.is_f_off() &&
                        (b.is_f_off() ? r.desc == b.desc : r.xi == b.xi);
            if (same) {
                g.add(b);
                placed = true;
                break;
            }
        }
        if (!placed) out.push_back(StructuredForm(s.field, {b}));
    }
    return out;
}

}  // namespace linkform
