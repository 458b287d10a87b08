#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "represent.hpp"

namespace linkform::io {

using json = nlohmann::ordered_json;

// ---------- scalars and polynomials ----------

inline FieldElem parse_elem(const json& j, const Context& ctx) {
    if (j.is_number_integer()) return FieldElem(j.get<long>());
    if (!j.is_string()) throw ParseError("field element must be a string");
    FieldElem x = FieldElem::parse(j.get<std::string>(), ctx.sqrt_d);
    return x;
}

inline json elem_json(const FieldElem& x) { return x.str(); }

inline LaurentPoly parse_poly(const json& j, const Context& ctx) {
    if (j.is_string() || j.is_number_integer()) return LaurentPoly(parse_elem(j, ctx));
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_object())
        throw ParseError("polynomial must be an object {\"coeffs\": {exponent: coefficient}}");
    LaurentPoly p;
    for (const auto& [k, v] : j["coeffs"].items()) {
        int e;
        try {
            size_t used = 0;
            e = std::stoi(k, &used);
            if (used != k.size()) throw ParseError("");
        } catch (...) {
            throw ParseError("bad exponent '" + k + "'");
        }
        p += LaurentPoly::monomial(parse_elem(v, ctx), e);
    }
    return p;
}

inline json poly_json(const LaurentPoly& p) {
    json c = json::object();
    for (const auto& [k, v] : p.terms()) c[std::to_string(k)] = v.str();
    return json{{"coeffs", c}};
}

// ---------- circle points ----------

inline void check_session(const FieldElem& x, const Context& ctx) {
    if (x.d() != 0 && x.d() != ctx.sqrt_d)
        throw MathError("unsupported_point", "point needs sqrt(" + std::to_string(x.d()) + "); set the session field with --field-sqrt");
}

inline CirclePoint parse_point(const json& j, const Context& ctx) {
    if (!j.is_object()) throw ParseError("circle point must be an object");
    CirclePoint p;
    if (j.contains("s")) {
        FieldElem s = parse_elem(j["s"], ctx);
        if (!s.is_real()) throw ParseError("Cayley parameter must be real");
        p = CirclePoint::cayley(s);
    } else if (j.contains("xi")) {
        const json& a = j["xi"];
        if (!a.is_array() || a.size() != 2) throw ParseError("\"xi\" must be [x, y]");
        p = CirclePoint::exact(parse_elem(a[0], ctx), parse_elem(a[1], ctx));
    } else if (j.contains("root_of_unity")) {
        const json& a = j["root_of_unity"];
        if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() || !a[1].is_number_integer())
            throw ParseError("\"root_of_unity\" must be [k, n]");
        p = CirclePoint::root_of_unity(a[0].get<long>(), a[1].get<long>());
    } else if (j.contains("isolated")) {
        const json& a = j["isolated"];
        std::vector<FieldElem> c;
        for (const auto& v : a.at("poly")) c.push_back(parse_elem(v, ctx));
        const json& iv = a.at("interval");
        p = CirclePoint::isolated(Poly(c), parse_rational(iv.at(0).get<std::string>()), parse_rational(iv.at(1).get<std::string>()));
        return p;
    } else {
        throw ParseError("circle point needs one of \"s\", \"xi\", \"root_of_unity\", \"isolated\"");
    }
    check_session(p.x(), ctx);
    check_session(p.y(), ctx);
    return p;
}

inline json point_json(const CirclePoint& p) {
    json j;
    switch (p.kind()) {
        case CirclePoint::Kind::RootOfUnity:
            j["root_of_unity"] = {p.k(), p.n()};
            break;
        case CirclePoint::Kind::Exact:
            j["xi"] = {p.x().str(), p.y().str()};
            break;
        default: {
            json c = json::array();
            for (int k = 0; k <= p.poly().deg(); ++k) c.push_back(p.poly().coeff(k).str());
            j["isolated"] = {{"poly", c}, {"interval", {p.lo().get_str(), p.hi().get_str()}}};
        }
    }
    j["arg_approx"] = p.approx_arg();
    return j;
}

// Compact comma-free anchor text for CSV cells and object keys.
inline std::string anchor(const CirclePoint& p) {
    switch (p.kind()) {
        case CirclePoint::Kind::RootOfUnity:
            return "root_of_unity(" + std::to_string(p.k()) + "/" + std::to_string(p.n()) + ")";
        case CirclePoint::Kind::Exact:
            return "xi(" + p.x().str() + ";" + p.y().str() + ")";
        default: {
            std::string c;
            for (int k = 0; k <= p.poly().deg(); ++k) c += (k ? ";" : "") + p.poly().coeff(k).str();
            return "cayley_root([" + c + "];" + p.lo().get_str() + ";" + p.hi().get_str() + ")";
        }
    }
}

// ---------- forms ----------

inline FieldTag parse_field(const json& j) {
    if (!j.contains("field")) throw ParseError("missing \"field\" (\"R\" or \"C\")");
    std::string f = j["field"].get<std::string>();
    if (f == "R") return FieldTag::R;
    if (f == "C") return FieldTag::C;
    throw ParseError("field must be \"R\" or \"C\"");
}

inline int get_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) throw ParseError(std::string("missing integer \"") + key + "\"");
    return j[key].get<int>();
}

inline BasicForm parse_basic(const json& j, FieldTag field, const Context& ctx) {
    if (!j.is_object() || !j.contains("type")) throw ParseError("basic form needs \"type\"");
    std::string type = j["type"].get<std::string>();
    int n = get_int(j, "n");
    if (type == "e") return BasicForm::e(field, n, get_int(j, "eps"), parse_point(j.at("xi"), ctx));
    if (type == "f") {
        if (j.contains("desc")) return BasicForm::f(field, n, parse_poly(j["desc"], ctx), ctx);
        if (j.contains("xi")) {
            if (field != FieldTag::R) throw MathError("unsupported_point", "complex f-forms are given by \"desc\"");
            return BasicForm::f_pm1(n, parse_point(j["xi"], ctx));
        }
        throw ParseError("f-form needs \"desc\" or \"xi\"");
    }
    throw ParseError("unknown basic form type '" + type + "'");
}

inline StructuredForm parse_structured(const json& j, const Context& ctx) {
    FieldTag field = parse_field(j);
    StructuredForm s;
    s.field = field;
    if (!j["basic"].is_array()) throw ParseError("\"basic\" must be an array");
    for (const auto& b : j["basic"]) s.parts.push_back(parse_basic(b, field, ctx));
    s.canonicalize();
    return s;
}

inline json basic_json(const BasicForm& b) {
    json j;
    j["type"] = b.is_e() ? "e" : "f";
    j["n"] = b.n;
    if (b.is_e()) j["eps"] = b.eps;
    if (b.is_f_off()) j["desc"] = poly_json(b.desc);
    else j["xi"] = point_json(b.xi);
    return j;
}

inline json hodge_json(const HodgeNumbers& h) {
    json P = json::array(), Q = json::array();
    for (const auto& p : h.P) P.push_back({{"n", p.n}, {"eps", p.eps}, {"xi", point_json(p.xi)}, {"count", p.count}});
    for (const auto& q : h.Q) {
        json e{{"n", q.n}, {"count", q.count}};
        if (q.form.is_f_off()) e["desc"] = poly_json(q.form.desc);
        else e["xi"] = point_json(q.form.xi);
        Q.push_back(e);
    }
    return {{"P", P}, {"Q", Q}};
}

inline json structured_json(const StructuredForm& s, bool with_hodge = true) {
    json j;
    j["field"] = tag_str(s.field);
    json b = json::array();
    for (const auto& x : s.parts) b.push_back(basic_json(x));
    j["basic"] = b;
    if (with_hodge) j["hodge"] = hodge_json(hodge_numbers(s));
    return j;
}

inline LMatrix parse_matrix(const json& j, const Context& ctx) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    int n = static_cast<int>(j.size());
    LMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != n) throw ParseError("matrix must be square");
        for (int k = 0; k < n; ++k) m(i, k) = parse_poly(j[i][k], ctx);
    }
    return m;
}

inline json matrix_json(const LMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int k = 0; k < m.cols(); ++k) r.push_back(poly_json(m(i, k)));
        rows.push_back(r);
    }
    return rows;
}

inline std::vector<Vec> parse_vectors(const json& j, const Context& ctx) {
    if (!j.is_array()) throw ParseError("\"L\" must be an array of coordinate vectors");
    std::vector<Vec> out;
    for (const auto& v : j) {
        if (!v.is_array()) throw ParseError("coordinate vector must be an array");
        Vec x;
        for (const auto& e : v) x.push_back(parse_poly(e, ctx));
        out.push_back(x);
    }
    return out;
}

inline json frac_json(const Frac& f) { return {{"num", poly_json(f.num())}, {"den", poly_json(f.den())}}; }

inline Frac parse_frac(const json& j, const Context& ctx) {
    if (j.is_object() && j.contains("num")) return Frac(parse_poly(j["num"], ctx), parse_poly(j.at("den"), ctx));
    if (j.is_object() && j.contains("coeffs")) return Frac(parse_poly(j, ctx), LaurentPoly(1));
    throw ParseError("fraction must be {\"num\": poly, \"den\": poly}");
}

// {"orders": [poly, ...], "gram": [[frac, ...], ...]} with generator i of order orders[i].
inline PresentedForm parse_presented(const json& j, FieldTag field, const Context& ctx) {
    if (!j.is_object() || !j.contains("orders") || !j.contains("gram")) throw ParseError("presented form needs \"orders\" and \"gram\"");
    PresentedForm pf;
    pf.field = field;
    for (const auto& o : j["orders"]) pf.orders.push_back(parse_poly(o, ctx));
    int n = pf.size();
    const json& g = j["gram"];
    if (!g.is_array() || static_cast<int>(g.size()) != n) throw ParseError("gram matrix has the wrong size");
    pf.gram = FracMatrix(n, n);
    for (int i = 0; i < n; ++i) {
        if (!g[i].is_array() || static_cast<int>(g[i].size()) != n) throw ParseError("gram matrix has the wrong size");
        for (int k = 0; k < n; ++k) pf.gram(i, k) = parse_frac(g[i][k], ctx);
    }
    return pf;
}

inline json presented_json(const PresentedForm& pf) {
    json orders = json::array(), gram = json::array();
    for (const auto& o : pf.orders) orders.push_back(poly_json(o));
    for (int i = 0; i < pf.size(); ++i) {
        json r = json::array();
        for (int k = 0; k < pf.size(); ++k) r.push_back(frac_json(pf.gram(i, k)));
        gram.push_back(r);
    }
    return {{"orders", orders}, {"gram", gram}};
}

// ---------- signature functions ----------

inline json signature_function_json(const SignatureFunction& f) {
    json bps = json::array(), arcs = json::array();
    for (int j = 0; j < f.k(); ++j) {
        json p{{"point", point_json(f.breakpoints[j])}};
        if (f.points[j]) p["value"] = *f.points[j];
        else p["value"] = "unavailable (needs exact point)";
        bps.push_back(p);
    }
    int arcs_n = static_cast<int>(f.arcs.size());
    for (int j = 0; j < arcs_n; ++j) {
        json a{{"value", f.arcs[j]}};
        if (f.k() > 0) {
            a["from"] = point_json(f.breakpoints[j]);
            a["to"] = point_json(f.breakpoints[(j + 1) % f.k()]);
        }
        if (j < static_cast<int>(f.samples.size())) a["sample"] = point_json(f.samples[j]);
        arcs.push_back(a);
    }
    return {{"breakpoints", bps}, {"arcs", arcs}};
}

inline std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    return buf;
}

inline std::string signature_function_csv(const SignatureFunction& f) {
    std::ostringstream out;
    out << "kind,left_anchor,right_anchor,exact_tag,arg_lo_approx,arg_hi_approx,value\n";
    const double two_pi = 2 * M_PI;
    if (f.k() == 0) {
        out << "arc,root_of_unity(0/1),root_of_unity(0/1),exact," << fmt_double(0) << "," << fmt_double(two_pi) << ","
            << f.arcs[0] << "\n";
        return out.str();
    }
    auto tag = [](const CirclePoint& p) { return p.is_exact() ? "exact" : "isolated"; };
    for (int j = 0; j < f.k(); ++j) {
        const CirclePoint& p = f.breakpoints[j];
        auto [lo, hi] = p.approx_arg_range();
        out << "point," << anchor(p) << "," << anchor(p) << "," << tag(p) << "," << fmt_double(lo) << "," << fmt_double(hi)
            << "," << (f.points[j] ? std::to_string(*f.points[j]) : "unavailable") << "\n";
        const CirclePoint& q = f.breakpoints[(j + 1) % f.k()];
        double a = p.approx_arg_range().second, b = q.approx_arg_range().first;
        if (j == f.k() - 1) b += two_pi;
        bool exact = p.is_exact() && q.is_exact();
        out << "arc," << anchor(p) << "," << anchor(q) << "," << (exact ? "exact" : "isolated") << "," << fmt_double(a)
            << "," << fmt_double(b) << "," << f.arcs[j] << "\n";
    }
    return out.str();
}

// ---------- verification report ----------

struct VerifyReport {
    SignatureFunction step;
    StructuredForm form;
    JumpMap matrix_jumps;
    bool jumpisjump = true, jumpisjump_half = true, sigissig2 = true, sigissig = true;
    std::vector<std::string> failures;
    bool ok() const { return jumpisjump && jumpisjump_half && sigissig2 && sigissig; }
};

// Cross-checks the pointwise matrix signatures against the structural classification.
inline VerifyReport verify_matrix(const LMatrix& a, FieldTag field, const Context& ctx) {
    VerifyReport r;
    r.step = signature_step_function(a, ctx);
    r.form = classify_matrix(a, field, ctx);
    r.matrix_jumps = jumps_of(r.step);
    CirclePoint one;
    auto fail = [&](bool& flag, const std::string& what) {
        flag = false;
        r.failures.push_back(what);
    };
    std::vector<CirclePoint> pts = r.step.breakpoints;
    for (const auto& p : support(r.form)) pts.push_back(p);
    for (const auto& p : pts)
        if (jump_at(r.matrix_jumps, p) != signature_jump(r.form, p))
            fail(r.jumpisjump, "jumpisjump at " + anchor(p));
    int d1 = signature_jump(r.form, one);
    int av1 = averaged_matrix_signature(r.step, one);
    int right_of_one = r.step.right_limit(one);
    auto check_point = [&](const CirclePoint& p, std::optional<int> value, int sav) {
        if (averaged_signature(r.form, p) != sav - av1) fail(r.sigissig2, "sigissig2 at " + anchor(p));
        // σ(ξ0) = sign A(ξ0) - lim_{θ→0+} sign A(e^{iθ}) + δσ(1); the θ1 = 0 choice makes ξ0 = 1 differ when δσ(1) != 0
        if (value && !(p.is_one() && d1 != 0) && signature_value(r.form, p) != *value - right_of_one + d1)
            fail(r.sigissig, "sigissig at " + anchor(p));
    };
    for (int j = 0; j < r.step.k(); ++j) {
        const CirclePoint& p = r.step.breakpoints[j];
        if (r.step.points[j]) {
            int lhs = *r.step.points[j] - r.step.left_of(j);
            if (lhs != signature_jump(r.form, p) + sigma_loc(r.form, p)) fail(r.jumpisjump_half, "jumpisjump_half at " + anchor(p));
        }
        check_point(p, r.step.points[j], averaged_matrix_signature(r.step, p));
    }
    for (size_t j = 0; j < r.step.samples.size(); ++j) {
        const CirclePoint& s = r.step.samples[j];
        check_point(s, r.step.arcs[j], r.step.arcs[j]);
    }
    return r;
}

inline json verify_json(const VerifyReport& r) {
    json bps = json::array();
    for (const auto& p : r.step.breakpoints) bps.push_back(point_json(p));
    json jumps = json::object();
    for (const auto& [p, v] : r.matrix_jumps) jumps[anchor(p)] = v;
    auto st = [](bool b) { return b ? "ok" : "violated"; };
    json j{{"breakpoints", bps},
           {"jumps", jumps},
           {"identities",
            {{"jumpisjump", st(r.jumpisjump)},
             {"jumpisjump_half", st(r.jumpisjump_half)},
             {"sigissig2", st(r.sigissig2)},
             {"sigissig", st(r.sigissig)}}},
           {"classification", structured_json(r.form)},
           {"step_function", signature_function_json(r.step)}};
    if (!r.failures.empty()) j["failures"] = r.failures;
    return j;
}

}  // namespace linkform::io
