#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "linkform/io.hpp"
#include "linkform/linkform.hpp"

using namespace linkform;
using io::json;

namespace {

const char* kConvention =
    "delta_sigma(xi) = -(sum of eps over odd-order summands at xi), computed from complexified data; "
    "equals half the jump of sign A(e^{i theta}) at xi for any representing matrix A";

// Whatever the input describes, reduced to a classified form plus the original object.
struct Subject {
    FieldTag field = FieldTag::C;
    std::optional<StructuredForm> structured;
    std::optional<LMatrix> matrix;
    std::optional<PresentedForm> presented;
    Context ctx;

    // Matrices are classified only when a verb needs the structure.
    const StructuredForm& form() {
        if (!structured) structured = classify_matrix(*matrix, field, ctx);
        return *structured;
    }
};

std::string read_all(const std::string& where) {
    if (!where.empty() && where.front() == '{') return where;
    if (where == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(where);
    if (!in) throw ParseError("cannot read input '" + where + "'");
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_all(const std::string& where, const std::string& text) {
    if (where == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::string tmp = where + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw ParseError("cannot write output '" + where + "'");
        out << text;
    }
    std::filesystem::rename(tmp, where);
}

Subject load_subject(const json& j, const Context& ctx) {
    Subject s;
    s.ctx = ctx;
    if (j.contains("matrix")) {
        LMatrix a = io::parse_matrix(j["matrix"], ctx);
        s.field = j.contains("field") ? io::parse_field(j) : natural_field(a);
        for (int r = 0; r < a.rows(); ++r)
            for (int c = 0; c < a.cols(); ++c)
                if (s.field == FieldTag::R && !a(r, c).is_real())
                    throw MathError("field_mismatch", "matrix over R has non-real coefficients");
        require_hermitian(a);
        require_nonsingular(a);
        s.matrix = a;
        return s;
    }
    if (j.contains("basic")) {
        s.structured = io::parse_structured(j, ctx);
        s.field = s.structured->field;
        return s;
    }
    s.field = io::parse_field(j);
    if (j.contains("cyclic")) {
        const json& c = j["cyclic"];
        if (!c.contains("f") || !c.contains("h")) throw ParseError("cyclic form needs \"f\" and \"h\"");
        CyclicForm cf{io::parse_poly(c["f"], ctx), io::parse_poly(c["h"], ctx)};
        s.structured = classify_cyclic(cf, s.field, ctx);
        s.presented = presented(cf, s.field);
        return s;
    }
    if (j.contains("presented")) {
        PresentedForm pf = io::parse_presented(j["presented"], s.field, ctx);
        s.structured = classify(pf, ctx);
        s.presented = pf;
        return s;
    }
    throw ParseError("input needs one of \"basic\", \"cyclic\", \"presented\", \"matrix\"");
}

json jumps_json(Subject& s, const Context& ctx) {
    json list = json::array();
    if (s.matrix) {
        for (const auto& [p, v] : jumps_from_matrix(*s.matrix, ctx)) list.push_back({{"xi", io::point_json(p)}, {"jump", v}});
    } else {
        for (const auto& p : support(s.form())) {
            int v = signature_jump(s.form(), p);
            if (v) list.push_back({{"xi", io::point_json(p)}, {"jump", v}});
        }
    }
    int total = 0;
    for (const auto& e : list) total += e["jump"].get<int>();
    return {{"source", s.matrix ? "matrix" : "structure"}, {"convention", kConvention}, {"jumps", list}, {"total_jump", total}};
}

json witt_json(const StructuredForm& form) {
    WittClass w = witt_class(form);
    json coords = json::array();
    for (const auto& [p, v] : w.coords) coords.push_back({{"xi", io::point_json(p)}, {"value", v}});
    return {{"field", tag_str(w.field)}, {"coords", coords}, {"metabolic", w.is_zero()},
            {"normal_form", io::structured_json(witt_normal_form(w), false)}};
}

json verdict_json(const RepresentabilityVerdict& v) {
    return {{"representable", v.representable}, {"total_jump", v.total_jump}, {"certificate", v.certificate}};
}

// Returns the report and whether every identity held.
std::pair<std::string, bool> run(const std::string& verb, const json& in, const std::string& format, const Context& ctx) {
    if (format == "csv" && verb != "sigfn") throw ParseError("csv output is only available for sigfn");
    Subject s = load_subject(in, ctx);
    json out;
    bool ok = true;
    if (verb == "classify") {
        out = io::structured_json(s.form());
    } else if (verb == "jumps") {
        out = jumps_json(s, ctx);
    } else if (verb == "sigfn") {
        SignatureFunction f = s.matrix ? signature_step_function(*s.matrix, ctx) : signature_function(s.form());
        if (format == "csv") return {io::signature_function_csv(f), true};
        out = io::signature_function_json(f);
        out["source"] = s.matrix ? "matrix" : "structure";
    } else if (verb == "witt") {
        out = witt_json(s.form());
    } else if (verb == "metabolic") {
        out = {{"metabolic", is_metabolic(s.form())}};
    } else if (verb == "representable") {
        out = verdict_json(is_representable(s.form()));
    } else if (verb == "represent") {
        auto v = represent(s.form(), ctx);
        out = verdict_json(v);
        if (v.matrix) {
            out["matrix"] = io::matrix_json(*v.matrix);
            auto r = io::verify_matrix(*v.matrix, s.field, ctx);
            ok = r.ok() && is_isometric(r.form, s.form());
            out["verification"] = io::verify_json(r);
        }
    } else if (verb == "verify") {
        LMatrix a = s.matrix ? *s.matrix : build_representative(s.form(), ctx);
        auto r = io::verify_matrix(a, s.field, ctx);
        ok = r.ok() && is_isometric(r.form, s.form());
        out = io::verify_json(r);
        if (!s.matrix) out["matrix"] = io::matrix_json(a);
    } else if (verb == "reduce") {
        if (!in.contains("L")) throw ParseError("reduce needs \"L\" (generator coordinates of an isotropic submodule)");
        std::vector<Vec> L = io::parse_vectors(in["L"], ctx);
        StructuredForm r;
        if (s.matrix) r = sublagrangian_reduce_presented(*s.matrix, L, s.field, ctx);
        else if (s.presented) r = classify(sublagrangian_reduce(*s.presented, L), ctx);
        else r = sublagrangian_reduce(s.form(), L, ctx);
        out = io::structured_json(r);
        out["witt_class_preserved"] = is_witt_equivalent(r, s.form());
        ok = is_witt_equivalent(r, s.form());
    } else {
        throw ParseError("unknown verb '" + verb + "'");
    }
    return {out.dump(2) + "\n", ok};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linkform: classification and signature invariants of linking forms over F[t, t^-1]"};
    std::string verb, in_path = "-", out_path = "-", format = "json";
    std::optional<long> sqrt_d;
    int truncation = 0;
    app.add_option("verb", verb, "classify | jumps | sigfn | witt | metabolic | representable | represent | verify | reduce")
        ->required();
    app.add_option("--in", in_path, "input file, '-' for stdin, or inline JSON");
    app.add_option("--out", out_path, "output file or '-'");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--field-sqrt", sqrt_d, "session field Q(i, sqrt d)");
    app.add_option("--truncation", truncation, "jet truncation order (0 = automatic)")->check(CLI::NonNegativeNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    auto fail = [](int code, const std::string& reason, const std::string& message) {
        json err{{"error", reason}, {"message", message}, {"exit_code", code}};
        std::cerr << err.dump() << "\n";
        return code;
    };
    try {
        json in;
        try {
            in = json::parse(read_all(in_path));
        } catch (const json::exception& e) {
            throw ParseError(e.what());
        }
        if (!in.is_object()) throw ParseError("input must be a JSON object");
        Context ctx;
        ctx.truncation = truncation;
        if (in.contains("field_sqrt")) {
            if (!in["field_sqrt"].is_number_integer()) throw ParseError("\"field_sqrt\" must be an integer");
            ctx.sqrt_d = in["field_sqrt"].get<long>();
        }
        if (sqrt_d) {
            if (in.contains("field_sqrt") && *sqrt_d != ctx.sqrt_d) throw ParseError("--field-sqrt disagrees with \"field_sqrt\"");
            ctx.sqrt_d = *sqrt_d;
        }
        if (ctx.sqrt_d < 0) throw ParseError("field_sqrt must be a non-negative squarefree integer");
        auto [text, ok] = run(verb, in, format, ctx);
        write_all(out_path, text);
        if (!ok) return fail(4, "identity_violation", "cross-pipeline identities failed; see report");
        return 0;
    } catch (const ParseError& e) {
        return fail(2, "parse_error", e.what());
    } catch (const MathError& e) {
        return fail(3, e.reason(), e.what());
    } catch (const IdentityViolation& e) {
        return fail(4, "identity_violation", e.what());
    } catch (const json::exception& e) {
        return fail(2, "parse_error", e.what());
    } catch (const std::exception& e) {
        return fail(4, "internal_error", e.what());
    }
}
