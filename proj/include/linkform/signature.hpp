#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "presented.hpp"

namespace linkform {

// e-type data after tensoring with C: one entry per complex summand e(n, eps, xi).
struct ComplexTerm {
    CirclePoint xi;
    int n;
    int eps;
};

inline std::vector<ComplexTerm> complexified(const StructuredForm& s) {
    std::vector<ComplexTerm> out;
    for (const auto& b : s.parts) {
        if (b.is_f_off()) continue;
        if (b.is_f_pm1()) {
            out.push_back({b.xi, b.n, 1});
            out.push_back({b.xi, b.n, -1});
            continue;
        }
        out.push_back({b.xi, b.n, b.eps});
        if (s.field == FieldTag::R && !b.xi.is_real_point())
            out.push_back({b.xi.conj(), b.n, b.n % 2 == 1 ? -b.eps : b.eps});
    }
    return out;
}

// δσ(ξ) = -Σ_{n odd} ε P(n, ε, ξ) over the complexified data.
inline int signature_jump(const StructuredForm& s, const CirclePoint& xi) {
    int j = 0;
    for (const auto& c : complexified(s))
        if (c.n % 2 == 1 && c.xi == xi) j -= c.eps;
    return j;
}

// σ^loc(ξ) = -Σ_{n even} ε P(n, ε, ξ).
inline int sigma_loc(const StructuredForm& s, const CirclePoint& xi) {
    int j = 0;
    for (const auto& c : complexified(s))
        if (c.n % 2 == 0 && c.xi == xi) j -= c.eps;
    return j;
}

inline int total_jump(const StructuredForm& s) {
    int j = 0;
    for (const auto& c : complexified(s))
        if (c.n % 2 == 1) j -= c.eps;
    return j;
}

// Points of the circle carrying e-type data, ordered by argument.
inline std::vector<CirclePoint> support(const StructuredForm& s) {
    std::vector<CirclePoint> pts;
    for (const auto& c : complexified(s)) {
        bool seen = false;
        for (const auto& p : pts)
            if (p == c.xi) seen = true;
        if (!seen) pts.push_back(c.xi);
    }
    std::sort(pts.begin(), pts.end(), ArgLess());
    return pts;
}

// Piecewise constant function on the circle.  arcs[j] is the value on the open arc that
// starts at breakpoints[j] and runs counterclockwise to the next breakpoint; with no
// breakpoints there is a single arc.
struct SignatureFunction {
    std::vector<CirclePoint> breakpoints;
    std::vector<int> arcs;
    std::vector<std::optional<int>> points;
    std::vector<CirclePoint> samples;  // arc sample points, when the function came from a matrix

    int k() const { return static_cast<int>(breakpoints.size()); }
    int left_of(int j) const { return arcs[(j - 1 + k()) % k()]; }
    int right_of(int j) const { return arcs[j]; }

    int index_of(const CirclePoint& p) const {
        for (int j = 0; j < k(); ++j)
            if (breakpoints[j] == p) return j;
        return -1;
    }
    // Index of the arc containing a non-breakpoint p.
    int arc_of(const CirclePoint& p) const {
        if (k() == 0) return 0;
        for (int j = k() - 1; j >= 0; --j)
            if (arg_compare(breakpoints[j], p) < 0) return j;
        return k() - 1;
    }
    std::optional<int> value_at(const CirclePoint& p) const {
        int j = index_of(p);
        if (j >= 0) return points[j];
        return arcs[arc_of(p)];
    }
    // Value just after p counterclockwise.
    int right_limit(const CirclePoint& p) const {
        int j = index_of(p);
        return j >= 0 ? arcs[j] : arcs[arc_of(p)];
    }
};

inline SignatureFunction signature_function(const StructuredForm& s) {
    SignatureFunction f;
    CirclePoint one;
    f.breakpoints = support(s);
    if (total_jump(s) != 0 && (f.breakpoints.empty() || !f.breakpoints.front().is_one()))
        f.breakpoints.insert(f.breakpoints.begin(), one);
    int d1 = signature_jump(s, one);
    if (f.breakpoints.empty()) {
        f.arcs = {0};
        return f;
    }
    int acc = d1;
    for (const auto& p : f.breakpoints) {
        int dj = p.is_one() ? 0 : signature_jump(s, p);
        int loc = sigma_loc(s, p);
        if (p.is_one()) f.points.push_back(loc + 2 * d1);
        else f.points.push_back(acc + dj + loc);
        acc += 2 * dj;
        f.arcs.push_back(acc);
    }
    return f;
}

inline int signature_value(const StructuredForm& s, const CirclePoint& xi) {
    return *signature_function(s).value_at(xi);
}

// σ^av(ξ) = σ(ξ) - σ^loc(ξ) away from 1, and the total jump at 1.
inline int averaged_signature(const StructuredForm& s, const CirclePoint& xi) {
    if (xi.is_one()) return total_jump(s);
    return signature_value(s, xi) - sigma_loc(s, xi);
}

// ---------- Witt classes ----------

// Coordinates: Σ_{n odd} ε over e(n, ε, ξ) summands (ξ in the closed upper half for R).
struct WittClass {
    FieldTag field = FieldTag::C;
    std::vector<std::pair<CirclePoint, int>> coords;

    bool is_zero() const { return coords.empty(); }
    int at(const CirclePoint& xi) const {
        for (const auto& [p, v] : coords)
            if (p == xi) return v;
        return 0;
    }
};

inline bool operator==(const WittClass& a, const WittClass& b) {
    if (a.field != b.field || a.coords.size() != b.coords.size()) return false;
    for (size_t i = 0; i < a.coords.size(); ++i)
        if (a.coords[i].first != b.coords[i].first || a.coords[i].second != b.coords[i].second) return false;
    return true;
}

inline WittClass witt_class(const StructuredForm& s) {
    WittClass w;
    w.field = s.field;
    for (const auto& b : s.parts) {
        if (!b.is_e() || b.n % 2 == 0) continue;
        bool found = false;
        for (auto& [p, v] : w.coords)
            if (p == b.xi) {
                v += b.eps;
                found = true;
            }
        if (!found) w.coords.push_back({b.xi, b.eps});
    }
    std::erase_if(w.coords, [](const auto& c) { return c.second == 0; });
    std::sort(w.coords.begin(), w.coords.end(), [](const auto& a, const auto& b) { return arg_compare(a.first, b.first) < 0; });
    return w;
}

inline bool is_metabolic(const StructuredForm& s) { return witt_class(s).is_zero(); }

inline bool is_witt_equivalent(const StructuredForm& a, const StructuredForm& b) { return witt_class(a) == witt_class(b); }

inline StructuredForm witt_normal_form(const WittClass& w) {
    StructuredForm s;
    s.field = w.field;
    for (const auto& [p, v] : w.coords)
        for (int k = 0; k < std::abs(v); ++k) s.parts.push_back(BasicForm::e(w.field, 1, v > 0 ? 1 : -1, p));
    s.canonicalize();
    return s;
}

// L is given by coordinates in the generators of presented(s) (one per summand, two for f(n, ±1, R)).
inline StructuredForm sublagrangian_reduce(const StructuredForm& s, const std::vector<Vec>& L, const Context& ctx = {}) {
    return classify(sublagrangian_reduce(presented(s), L), ctx);
}

struct OrderCondition {
    bool divides = false;
    bool equality = false;
};

// ord(M) ord(M)^# | ord(M') ord(M'') and equality up to units.
inline OrderCondition check_order_condition(const LaurentPoly& m, const LaurentPoly& m1, const LaurentPoly& m2) {
    if (m.is_zero() || m1.is_zero() || m2.is_zero()) throw MathError("not_torsion", "orders must be nonzero");
    LaurentPoly lhs = m * m.involve(), rhs = m1 * m2;
    return {linkform::divides(lhs, rhs), associated(lhs, rhs)};
}

}  // namespace linkform
