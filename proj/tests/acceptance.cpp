// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "linkform/io.hpp"
#include "support.hpp"

using namespace linkform;
using namespace testing_support;

namespace {

// Time budgets in seconds.
constexpr double kLimit1 = 1, kLimit2 = 30, kLimit3 = 5, kLimit4 = 60, kLimit5 = 30, kLimit6 = 30, kLimit7 = 10, kLimit8 = 1;
constexpr unsigned kSeed = 20240601;

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;
std::vector<int> only;  // criteria selected on the command line; empty means all

void criterion(int id, const char* name, double limit, const std::function<void(Outcome&)>& body) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) return;
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > limit) {
        o.ok = false;
        o.detail = "over time budget";
    }
    std::printf("criterion %d %-34s %s  %.3fs (limit %.0fs)%s%s\n", id, name, o.ok ? "PASS" : "FAIL", secs, limit,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
}

StructuredForm single(const BasicForm& b) {
    StructuredForm s;
    s.field = b.field;
    s.parts = {b};
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    for (int k = 1; k < argc; ++k) only.push_back(std::atoi(argv[k]));
    Context ctx3;
    ctx3.sqrt_d = 3;

    criterion(1, "trefoil pipeline", kLimit1, [&](Outcome& o) {
        CirclePoint w = CirclePoint::root_of_unity(1, 6), wb = CirclePoint::root_of_unity(5, 6);
        StructuredForm s = classify_cyclic({trefoil(), C(1)}, FieldTag::R, ctx3);
        o.require(is_isometric(s, single(BasicForm::e(FieldTag::R, 1, 1, w))), "cyclic form is not e(1,+1,omega,R)");
        LMatrix a = one(trefoil());
        SignatureFunction f = signature_step_function(a, ctx3);
        o.require(f.k() == 2 && f.breakpoints[0] == w && f.breakpoints[1] == wb, "breakpoints are not exactly cos = 1/2");
        o.require(f.value_at(CirclePoint()) == 1, "arc through 1 is not +1");
        o.require(f.value_at(CirclePoint::root_of_unity(1, 2)) == -1, "arc through -1 is not -1");
        JumpMap j = jumps_of(f);
        o.require(j.size() == 2 && jump_at(j, w) == -1 && jump_at(j, wb) == 1, "jump map differs from {w:-1, wbar:+1}");
        int lhs = averaged_signature(s, w);
        int rhs = averaged_matrix_signature(f, w) - averaged_matrix_signature(f, CirclePoint());
        o.require(lhs == -1 && rhs == -1, "sigissig2 at omega fails");
        o.require(is_isometric(classify_matrix(a, FieldTag::R, ctx3), s), "matrix classification disagrees");
    });

    criterion(2, "jumpisjump suite (200 matrices)", kLimit2, [&](Outcome& o) {
        std::mt19937 rng(kSeed);
        for (int k = 0; k < 200 && o.ok; ++k) {
            StructuredForm s = k % 2 ? random_representable(rng) : random_real_form(rng);
            LMatrix a = build_representative(s);
            io::VerifyReport r = io::verify_matrix(a, s.field, {});
            o.require(r.jumpisjump, "jumpisjump failed on instance " + std::to_string(k) + ": " + s.str());
            o.require(r.jumpisjump_half, "jumpisjump_half failed on instance " + std::to_string(k) + ": " + s.str());
            for (const auto& p : point_pool())
                o.require(jump_at(r.matrix_jumps, p) == signature_jump(s, p), "matrix jump differs from the input structure on " + s.str());
        }
    });

    criterion(3, "representability", kLimit3, [&](Outcome& o) {
        for (const auto& xi : point_pool()) {
            for (int n : {0, 1, 2})
                for (int e : {1, -1}) {
                    auto s = single(BasicForm::e(FieldTag::C, 2 * n + 1, e, xi));
                    auto v = is_representable(s);
                    o.require(!v.representable && v.total_jump == -e, "e(2n+1) not rejected at " + xi.str());
                    bool threw = false;
                    try {
                        build_representative(s);
                    } catch (const MathError& err) {
                        threw = err.reason() == "not_representable";
                    }
                    o.require(threw, "build_representative accepted e(2n+1)");
                }
            LMatrix b = linear(xi.value()) * tricky_matrix(xi, choose_pair_coeffs(xi));
            auto d = snf(b).d;
            o.require(d.size() == 2 && associated(d[0], linear(xi.value())) && associated(d[1], linear(xi.value())),
                      "SNF of B is not (t - xi, t - xi) at " + xi.str());
            StructuredForm want;
            want.field = FieldTag::C;
            want.parts = {BasicForm::e(FieldTag::C, 1, 1, xi), BasicForm::e(FieldTag::C, 1, -1, xi)};
            o.require(is_isometric(classify_matrix(b, FieldTag::C), want), "B does not classify to e(1,+1) + e(1,-1) at " + xi.str());
        }
    });

    criterion(4, "representative round trip (100)", kLimit4, [&](Outcome& o) {
        std::mt19937 rng(kSeed + 4);
        for (int k = 0; k < 100 && o.ok; ++k) {
            StructuredForm s = random_representable(rng, 6);
            StructuredForm back = classify_matrix(build_representative(s), FieldTag::C);
            o.require(is_isometric(back, s), "round trip failed: " + s.str() + " -> " + back.str());
        }
    });

    criterion(5, "witt suite", kLimit5, [&](Outcome& o) {
        for (const auto& xi : point_pool())
            for (int e : {1, -1})
                for (int m : {1, 2}) {
                    o.require(is_metabolic(single(BasicForm::e(FieldTag::C, 2 * m, e, xi))), "e(2m) not metabolic");
                    o.require(is_witt_equivalent(single(BasicForm::e(FieldTag::C, 2 * m + 1, e, xi)),
                                                 single(BasicForm::e(FieldTag::C, 1, e, xi))),
                              "e(2m+1) not Witt equivalent to e(1)");
                }
        std::mt19937 rng(kSeed + 5);
        std::vector<CirclePoint> probes = point_pool();
        probes.push_back(CirclePoint::cayley(Q(2)));
        probes.push_back(CirclePoint::cayley(Q(-7, 2)));
        probes.push_back(CirclePoint::cayley(Q(1, 9)));
        int reductions = 0;
        for (int k = 0; k < 100 && o.ok; ++k) {
            StructuredForm s = k % 2 ? random_representable(rng) : random_real_form(rng);
            // guarantee something to reduce
            if (k % 3 == 0) s.parts.push_back(BasicForm::e(s.field, 3, 1, CirclePoint::root_of_unity(1, 4)));
            s.canonicalize();
            std::vector<Vec> L = random_isotropic(rng, s);
            StructuredForm r = sublagrangian_reduce(s, L);
            if (!L.empty()) ++reductions;
            o.require(witt_class(r) == witt_class(s), "witt class changed: " + s.str() + " -> " + r.str());
            for (const auto& p : probes)
                o.require(averaged_signature(r, p) == averaged_signature(s, p), "averaged signature changed: " + s.str());
            bool metabolic = is_metabolic(s);
            bool no_jumps = true, flat = true;
            for (const auto& p : support(s)) no_jumps = no_jumps && signature_jump(s, p) == 0;
            SignatureFunction f = signature_function(s);
            for (int a : f.arcs) flat = flat && a == 0;
            for (const auto& p : probes) flat = flat && averaged_signature(s, p) == 0;
            o.require(metabolic == no_jumps && no_jumps == flat, "metabolic / jumps / averaged signature disagree on " + s.str());
        }
        o.require(reductions >= 50, "too few non-trivial reductions");
    });

    criterion(6, "ranicki move invariance (100)", kLimit6, [&](Outcome& o) {
        std::mt19937 rng(kSeed + 6);
        std::vector<CirclePoint> probes = point_pool();
        probes.push_back(CirclePoint::cayley(Q(2)));
        probes.push_back(CirclePoint::cayley(Q(-5)));
        for (int k = 0; k < 100 && o.ok; ++k) {
            bool real = k % 2 == 0;
            StructuredForm s = real ? random_real_form(rng, 3) : random_representable(rng, 4);
            LMatrix a = build_representative(s);
            LMatrix p = random_unimodular(rng, a.rows(), real);
            LMatrix b = stabilize(congruence_transform(a, p), random_stabilizer(rng, real));
            FieldTag field = s.field;
            o.require(is_isometric(classify_matrix(b, field), classify_matrix(a, field)), "classification changed: " + s.str());
            JumpMap ja = jumps_from_matrix(a), jb = jumps_from_matrix(b);
            for (const auto& q : probes) o.require(jump_at(ja, q) == jump_at(jb, q), "jump map changed: " + s.str());
            o.require(ja.size() == jb.size(), "jump support changed: " + s.str());
            const CirclePoint& ref = probes.back();
            for (const auto& q : probes)
                o.require(sign_at(a, q) - sign_at(a, ref) == sign_at(b, q) - sign_at(b, ref), "sign difference changed: " + s.str());
        }
    });

    criterion(7, "sturm vs sampling oracle (100)", kLimit7, [&](Outcome& o) {
        std::mt19937 rng(kSeed + 7);
        const int grid = 1 << 15;
        const double step = 2 * M_PI / grid;
        for (int k = 0; k < 100 && o.ok; ++k) {
            LaurentPoly p;
            while (p.is_zero()) p = random_symmetric(rng, 1 + k % 4, k % 3 == 0);
            std::vector<int> changes;  // index g: sign change between samples g and g+1
            std::vector<std::complex<double>> coef;
            for (int e = p.low(); e <= p.high(); ++e) coef.push_back(approx(p.coeff(e)));
            auto val = [&](int g) {
                double th = (g + 0.5) * step;
                std::complex<double> w = std::polar(1.0, th), acc = 0;
                for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * w + *it;
                return (acc * std::polar(1.0, p.low() * th)).real();
            };
            double prev = val(0);
            for (int g = 1; g <= grid; ++g) {
                double cur = val(g % grid);
                if ((prev < 0) != (cur < 0)) changes.push_back(g - 1);
                prev = cur;
            }
            int odd = 0;
            for (const auto& r : circle_roots(p)) {
                if (r.mult % 2 == 1) ++odd;
                if (r.point.is_exact()) continue;
                auto [lo, hi] = r.point.approx_arg_range();
                bool bracketed = false;
                for (int g : changes) bracketed = bracketed || (g * step + 0.5 * step <= hi + 1e-12 && (g + 1.5) * step >= lo - 1e-12);
                o.require(bracketed, "isolated root interval without an oracle sign change for " + p.str());
            }
            o.require(odd == static_cast<int>(changes.size()),
                      "root count " + std::to_string(odd) + " vs oracle " + std::to_string(changes.size()) + " for " + p.str());
        }
    });

    criterion(8, "degenerate fixture", kLimit8, [&](Outcome& o) {
        LaurentPoly p = trefoil();
        PresentedForm pf;
        pf.field = FieldTag::R;
        pf.orders = {power(p, 5), power(p, 4)};
        pf.gram = FracMatrix(2, 2);
        pf.gram(0, 0) = Frac::inverse_of(p);
        pf.gram(0, 1) = pf.gram(1, 0) = Frac::inverse_of(power(p, 3));
        pf.gram(1, 1) = Frac::inverse_of(power(p, 2));
        o.require(pf.is_hermitian(), "fixture is not Hermitian");
        o.require(!is_nondegenerate(pf), "fixture not detected as degenerate");
        std::string reason;
        try {
            classify(pf, ctx3);
        } catch (const MathError& e) {
            reason = e.reason();
        }
        o.require(reason == "degenerate_form", "classification not refused with degenerate_form");
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
