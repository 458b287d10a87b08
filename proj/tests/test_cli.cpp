#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "linkform/io.hpp"
#include "support.hpp"

using namespace linkform;
using namespace testing_support;
using io::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out, err;
};

std::string fixture(const std::string& name) { return std::string(LINKFORM_FIXTURES) + "/" + name; }

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

RunResult run_cli(const std::vector<std::string>& args) {
    auto err_path = std::filesystem::temp_directory_path() / ("linkform_cli_" + std::to_string(::getpid()) + ".err");
    std::string cmd = quote(LINKFORM_CLI);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " 2>" + quote(err_path.string());
    RunResult r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = ::pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream e(err_path);
    r.err.assign(std::istreambuf_iterator<char>(e), {});
    std::filesystem::remove(err_path);
    return r;
}

const std::vector<std::string> kFixtures = {"trefoil_cyclic.json", "trefoil_matrix.json", "tricky_pair.json",
                                            "tricky_unequal.json", "complex_mixed.json",  "real_mixed.json",
                                            "sqrt3_points.json"};

}  // namespace

TEST(Io, PolynomialAndPointRoundTrip) {
    Context ctx;
    std::mt19937 rng(71);
    for (int k = 0; k < 30; ++k) {
        LaurentPoly p = random_poly(rng, -2, 2);
        EXPECT_EQ(io::parse_poly(io::poly_json(p), ctx), p);
    }
    auto pts = point_pool();
    pts.push_back(circle_roots(trefoil()).front().point);
    for (const auto& p : pts) EXPECT_EQ(io::parse_point(io::point_json(p), ctx), p) << p.str();
    Context c3;
    c3.sqrt_d = 3;
    CirclePoint w = CirclePoint::root_of_unity(1, 12);
    EXPECT_EQ(io::parse_point(io::point_json(w), c3), w);
    // the radical is written r; it needs a session field
    json half_r{{"xi", {"1/2", "1/2*r"}}};
    EXPECT_EQ(io::parse_point(half_r, c3), CirclePoint::root_of_unity(1, 6));
    EXPECT_THROW(io::parse_point(half_r, ctx), ParseError);
    try {
        io::parse_point(json{{"root_of_unity", {1, 12}}}, ctx);
        FAIL() << "expected unsupported_point";
    } catch (const MathError& e) {
        EXPECT_EQ(e.reason(), "unsupported_point");
    }
}

TEST(Io, StructuredAndMatrixRoundTrip) {
    Context ctx;
    std::mt19937 rng(72);
    for (int k = 0; k < 20; ++k) {
        StructuredForm s = k % 2 ? random_representable(rng) : random_real_form(rng);
        json j = io::structured_json(s);
        StructuredForm back = io::parse_structured(j, ctx);
        EXPECT_TRUE(is_isometric(back, s));
        EXPECT_EQ(io::structured_json(back).dump(), j.dump());
        LMatrix a = build_representative(s);
        EXPECT_EQ(io::parse_matrix(io::matrix_json(a), ctx), a);
        PresentedForm pf = presented(s);
        PresentedForm pb = io::parse_presented(io::presented_json(pf), s.field, ctx);
        EXPECT_EQ(pb.orders, pf.orders);
        EXPECT_EQ(pb.gram, pf.gram);
    }
}

TEST(Cli, ClassifiesTheTrefoil) {
    RunResult r = run_cli({"classify", "--in", fixture("trefoil_cyclic.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(r.out);
    ASSERT_EQ(j["basic"].size(), 1u);
    EXPECT_EQ(j["basic"][0]["eps"], 1);
    EXPECT_EQ(j["basic"][0]["xi"]["root_of_unity"], json::array({1, 6}));
    RunResult m = run_cli({"classify", "--in", fixture("trefoil_matrix.json")});
    ASSERT_EQ(m.code, 0) << m.err;
    EXPECT_EQ(json::parse(m.out)["basic"], j["basic"]);
}

TEST(Cli, JumpsAndRepresentability) {
    RunResult r = run_cli({"jumps", "--in", fixture("trefoil_matrix.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(r.out);
    ASSERT_EQ(j["jumps"].size(), 2u);
    EXPECT_EQ(j["jumps"][0]["jump"], -1);
    EXPECT_EQ(j["jumps"][1]["jump"], 1);
    EXPECT_EQ(j["total_jump"], 0);
    const char* e3 = R"({"field":"C","basic":[{"type":"e","n":3,"eps":1,"xi":{"root_of_unity":[1,4]}}]})";
    RunResult v = run_cli({"representable", "--in", e3});
    ASSERT_EQ(v.code, 0) << v.err;
    EXPECT_EQ(json::parse(v.out)["representable"], false);
    EXPECT_EQ(json::parse(v.out)["total_jump"], -1);
}

TEST(Cli, EmptyFormSignatureCsv) {
    RunResult r = run_cli({"sigfn", "--format", "csv", "--in", R"({"field":"C","basic":[]})"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out,
              "kind,left_anchor,right_anchor,exact_tag,arg_lo_approx,arg_hi_approx,value\n"
              "arc,root_of_unity(0/1),root_of_unity(0/1),exact,0.000000000000,6.283185307180,0\n");
}

TEST(Cli, VerifyPassesOnAllFixtures) {
    for (const auto& f : kFixtures) {
        RunResult r = run_cli({"verify", "--in", fixture(f)});
        EXPECT_EQ(r.code, 0) << f << ": " << r.err;
        json j = json::parse(r.out);
        for (const auto& [k, v] : j["identities"].items()) EXPECT_EQ(v, "ok") << f << " " << k;
    }
}

TEST(Cli, OutputIsByteStableAndReparses) {
    for (const auto& f : kFixtures) {
        RunResult a = run_cli({"classify", "--in", fixture(f)});
        RunResult b = run_cli({"classify", "--in", fixture(f)});
        ASSERT_EQ(a.code, 0) << f << ": " << a.err;
        EXPECT_EQ(a.out, b.out);
        // the classification reads back in and reproduces itself
        json j = json::parse(a.out);
        json in = f.find("sqrt3") != std::string::npos || f.find("trefoil") != std::string::npos ||
                          f.find("real_mixed") != std::string::npos
                      ? json{{"field_sqrt", 3}}
                      : json::object();
        in["field"] = j["field"];
        in["basic"] = j["basic"];
        RunResult c = run_cli({"classify", "--in", in.dump()});
        ASSERT_EQ(c.code, 0) << f << ": " << c.err;
        EXPECT_EQ(c.out, a.out) << f;
    }
}

TEST(Cli, ExitCodes) {
    RunResult bad = run_cli({"classify", "--in", "{not json"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_EQ(json::parse(bad.err)["exit_code"], 2);
    EXPECT_EQ(run_cli({"classify", "--in", R"({"field":"Q","basic":[]})"}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate", "--in", R"({"field":"C","basic":[]})"}).code, 2);
    EXPECT_EQ(run_cli({"classify", "--format", "csv", "--in", R"({"field":"C","basic":[]})"}).code, 2);
    RunResult deg = run_cli({"classify", "--in", fixture("invalid/degenerate.json")});
    EXPECT_EQ(deg.code, 3);
    EXPECT_EQ(json::parse(deg.err)["error"], "degenerate_form");
    RunResult sq = run_cli({"classify", "--in", R"({"field":"C","basic":[{"type":"e","n":1,"eps":1,"xi":{"root_of_unity":[1,12]}}]})"});
    EXPECT_EQ(sq.code, 3);
    EXPECT_EQ(json::parse(sq.err)["error"], "unsupported_point");
    RunResult inexact = run_cli({"classify", "--in", R"({"field":"R","matrix":[[{"coeffs":{"-1":"1","0":"-1","1":"1"}}]]})"});
    EXPECT_EQ(inexact.code, 3);
    EXPECT_EQ(json::parse(inexact.err)["error"], "inexact_root");
    RunResult mismatch = run_cli({"classify", "--field-sqrt", "2", "--in", fixture("trefoil_matrix.json")});
    EXPECT_EQ(mismatch.code, 2);
}

TEST(Cli, WritesToAnOutputFile) {
    auto path = std::filesystem::temp_directory_path() / ("linkform_cli_" + std::to_string(::getpid()) + ".json");
    RunResult r = run_cli({"witt", "--in", fixture("tricky_pair.json"), "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    json j = json::parse(std::string(std::istreambuf_iterator<char>(in), {}));
    EXPECT_EQ(j["metabolic"], true);
    std::filesystem::remove(path);
}
