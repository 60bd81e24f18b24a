// Acceptance gate. Each criterion runs exact-arithmetic checks under a wall
// clock budget and reports exactly one PASS/FAIL line; the binary exits
// nonzero if any line fails. No tolerances anywhere: every comparison is
// FieldElement equality.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "derivlab/calculus.hpp"
#include "derivlab/demos.hpp"
#include "derivlab/elem_parse.hpp"
#include "derivlab/maps.hpp"
#include "derivlab/samples.hpp"
#include "derivlab/theorems.hpp"
#include "derivlab/tower.hpp"

using namespace derivlab;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool cond, const std::string& msg) {
    if (!cond)
        throw Failure(msg);
}

void expect_status(const VerdictReport& rep, Status want, const std::string& what) {
    if (rep.status == want)
        return;
    std::string msg = what + ": expected " + status_name(want) + ", got " +
                      status_name(rep.status);
    if (!rep.error.empty())
        msg += " [" + rep.error + "]";
    if (rep.witness && !rep.witness->inputs.empty())
        msg += " at " + rep.witness->inputs[0].first + " = " +
               rep.witness->inputs[0].second;
    throw Failure(msg);
}

void expect_pass(const VerdictReport& rep, const std::string& what) {
    expect_status(rep, Status::PASS, what);
}

bool has_note(const VerdictReport& rep, const std::string& needle) {
    for (const auto& n : rep.notes)
        if (n.find(needle) != std::string::npos)
            return true;
    return false;
}

const SubVerdict& find_sub(const VerdictReport& rep, const std::string& name) {
    for (const auto& sv : rep.sub_verdicts)
        if (sv.name == name)
            return sv;
    throw Failure("missing sub-verdict '" + name + "'");
}

TowerPtr make_qt() {
    return TowerField::rationals()->extend_transcendental("t");
}

TowerPtr make_qsqrt2() {
    return TowerField::rationals()->extend_algebraic(
        "sqrt2", Poly({Rational(-2), Rational(0), Rational(1)}));
}

TowerPtr make_qts() {
    auto K = make_qt();
    return K->extend_algebraic("s", {-K->generator("t"), K->zero(), K->one()});
}

// 1: power rule f(x^k) = k*x^(k-1)*f(x) for k in [-5,5]\{0} on Q(t) and
// Q(t, s | s^2 = t), 20 samples each, every verdict exact.
void criterion1() {
    for (auto K : {make_qt(), make_qts()}) {
        auto D = derivation_extend(K, {{"t", K->one()}});
        auto s = default_samples(K, 20);
        for (long k = -5; k <= 5; ++k) {
            if (k == 0)
                continue;
            auto rep = check_power_rule(D, k, s);
            expect_pass(rep, "power rule k=" + std::to_string(k) + " on " + K->describe());
            expect(rep.samples_tested >= 20,
                   "power rule tested fewer than 20 samples on " + K->describe());
        }
    }
}

// 2: the only derivation on an algebraic extension of Q is zero; checked on
// Q(sqrt2) and Q(cbrt2) with 50 random elements each.
void criterion2() {
    std::mt19937_64 rng(1201);
    auto Kc = TowerField::rationals()->extend_algebraic(
        "cbrt2", Poly({Rational(-2), Rational(0), Rational(0), Rational(1)}));
    for (auto K : {make_qsqrt2(), Kc}) {
        auto D = derivation_extend(K);
        for (const auto& name : K->generator_names())
            expect(D(K->generator(name)).is_zero(),
                   "derivation nonzero on generator " + name);
        SampleSet s = random_samples(K, 50, rng);
        expect(s.size() >= 50, "short random sample set");
        for (const auto& x : s.elements)
            expect(D(x).is_zero(), "derivation nonzero at " + x.to_string());
        expect_pass(is_derivation_on_samples(D, s), "Leibniz check on " + K->describe());
    }
}

// 3: with b(x) = 2*x*D(x), the second difference recovers the bilinear form
// 2*B(y1,y2) = 2*(y1*D(y2) + y2*D(y1)) independently of the basepoint, and
// the third difference annihilates b. 100 tuples, 5 basepoints.
void criterion3() {
    auto K = make_qt();
    auto D = derivation_extend(K, {{"t", K->one()}});
    std::mt19937_64 rng(333);
    PointFunction b{K, [D](const FieldElement& x) { return x * D(x) * Rational(2); }, {}};

    auto base = default_basepoints(K, rng);
    base.resize(5);
    for (int i = 0; i < 100; ++i) {
        FieldElement y1 = random_element(K, rng);
        FieldElement y2 = random_element(K, rng);
        FieldElement y3 = random_element(K, rng);
        FieldElement expected = (y1 * D(y2) + y2 * D(y1)) * Rational(2);
        auto d2 = delta_multi(b, {y1, y2});
        auto d3 = delta_multi(b, {y1, y2, y3});
        for (const auto& x : base) {
            expect(d2(x) == expected, "second difference depends on basepoint " +
                                          x.to_string());
            expect(d3(x).is_zero(), "third difference nonzero at " + x.to_string());
        }
    }
    expect_pass(poly_degree_check(b, 2, default_samples(K, 20)),
                "degree bound for x*D(x)");
}

// 4: decomposition roundtrip. 20 random sums f0+f1+f2+f3 of homogeneous
// traces over Q are decomposed and re-evaluated on 10 fresh samples; both the
// sum and every individual trace must match exactly.
void criterion4() {
    auto Q = TowerField::rationals();
    std::mt19937_64 rng(44);
    auto rat = [&rng] {
        long num = static_cast<long>(rng() % 19) - 9;
        long den = 1 + static_cast<long>(rng() % 4);
        return Rational(num, den);
    };
    auto s = default_samples(Q, 20);
    for (int trial = 0; trial < 20; ++trial) {
        Rational c0 = rat(), c1 = rat(), c2 = rat(), c3 = rat();
        PointFunction p{Q,
                        [=](const FieldElement& x) {
                            return x.tower()->from_rational(c0) + x * c1 + x * x * c2 +
                                   x * x * x * c3;
                        },
                        {}};
        auto dec = decompose_polynomial(p, 3, s);
        expect(dec.traces.size() == 4, "expected 4 traces");
        for (int i = 0; i < 10; ++i) {
            FieldElement x = random_element(Q, rng);
            expect(dec.eval_sum(x) == p(x), "trace sum != p at " + x.to_string());
            expect(dec.traces[0](x) == Q->from_rational(c0), "constant trace off");
            expect(dec.traces[1](x) == x * c1, "linear trace off");
            expect(dec.traces[2](x) == x * x * c2, "quadratic trace off");
            expect(dec.traces[3](x) == x * x * x * c3, "cubic trace off");
        }
    }
}

// 5: the symmetrized form for (n,m) in {(2,1),(3,1),(3,2)} is symmetric and
// additive in every slot (32 trials per slot), its trace equals phi, and the
// forward check confirms phi(x) = (f(1)-g(1))*x^n for solution-shaped pairs.
void criterion5() {
    auto K = make_qt();
    auto D = derivation_extend(K, {{"t", K->one()}});
    auto id = AdditiveMap::identity(K);
    std::mt19937_64 rng(555);
    auto s = default_samples(K, 20);

    const std::vector<std::pair<long, long>> nm = {{2, 1}, {3, 1}, {3, 2}};
    for (auto [n, m] : nm) {
        Rational ratio(n, m);
        struct Pair {
            AdditiveMap f, g;
            const char* label;
        };
        const std::vector<Pair> pairs = {
            {id, id, "(id, id)"},
            {D, D.scale(ratio), "(D, (n/m)D)"},
            {D + id.scale(Rational(2)), D.scale(ratio) + id.scale(Rational(3)),
             "(D+2id, (n/m)D+3id)"},
        };
        for (const auto& pr : pairs) {
            std::string tag = "(n,m)=(" + std::to_string(n) + "," + std::to_string(m) +
                              ") " + pr.label;
            auto Phi = symmetrize_thm21(pr.f, pr.g, n, m);
            expect_pass(Phi.certify_symmetry(rng), "symmetry " + tag);
            expect_pass(Phi.certify_slot_additivity(rng, 32), "slot additivity " + tag);
            auto tr = Phi.trace();
            for (int i = 0; i < 10; ++i) {
                FieldElement x = random_element(K, rng);
                expect(tr(x) == phi_power(pr.f, pr.g, n, m, x),
                       "trace != phi " + tag + " at " + x.to_string());
            }
            auto rep = verify_phi_power(pr.f, pr.g, n, m, s);
            expect_pass(rep, "forward check " + tag);
            expect(has_note(rep, "c = f(1) - g(1) ="), "missing c note " + tag);
        }
    }
}

struct Corpus {
    TowerPtr S, T;
    std::vector<std::pair<AdditiveMap, std::string>> maps;
    std::vector<std::pair<AdditiveMap, AdditiveMap>> chi_pairs;
};

Corpus build_corpus() {
    Corpus c;
    c.S = make_qsqrt2();
    auto r2 = c.S->generator("sqrt2");
    auto one = c.S->one();
    auto sigma = matrix_map({one, r2}, {one, -r2});
    auto proj = matrix_map({one, r2}, {c.S->zero(), one});
    auto swp = matrix_map({one, r2}, {r2, one});
    auto idS = AdditiveMap::identity(c.S);
    auto twoS = AdditiveMap::scaled_identity(c.S, Rational(2));

    c.T = make_qt();
    auto D = derivation_extend(c.T, {{"t", c.T->one()}});
    auto idT = AdditiveMap::identity(c.T);
    auto zeroT = AdditiveMap::zero(c.T);
    auto f4 = D + idT.scale(Rational(4));
    auto gm2 = D.scale(Rational(-2));

    c.maps = {{sigma, "sigma"}, {proj, "proj"},   {swp, "swap"}, {idS, "idS"},
              {twoS, "2idS"},   {D, "D"},         {idT, "idT"},  {zeroT, "zeroT"},
              {f4, "D+4id"},    {gm2, "-2D"}};
    c.chi_pairs = {{sigma, sigma}, {proj, sigma}, {sigma, proj}, {proj, swp},
                   {swp, twoS},    {zeroT, idT},  {D, D},        {f4, gm2},
                   {gm2, f4},      {idT, D}};
    return c;
}

// 6: the chi transform identity follows from additivity alone, so it must
// hold for all 10 corpus pairs, including the nonlinear matrix maps on
// Q(sqrt2) and the structural maps on Q(t). 20 samples each.
void criterion6() {
    auto c = build_corpus();
    auto sS = default_samples(c.S, 20);
    auto sT = default_samples(c.T, 20);
    int done = 0;
    for (const auto& [f, g] : c.chi_pairs) {
        const auto& s = f.tower()->has_transcendental() ? sT : sS;
        auto rep = chi_transform_identity(f, g, s);
        expect_pass(rep, "chi pair #" + std::to_string(done));
        expect(rep.samples_tested >= 15, "chi pair tested too few samples");
        ++done;
    }
    expect(done == 10, "corpus size");
}

// 7: the composite identity for phi(x) = f(x^n) - kappa*x^(n-m)*f(x^m) is
// pure algebra and passes for every additive f; the proportionality
// constraint passes for kappa != n/m only when the non-identity part of f
// vanishes.
void criterion7() {
    auto c = build_corpus();
    auto sS = default_samples(c.S, 20);
    auto sT = default_samples(c.T, 20);
    const std::vector<std::pair<long, long>> nm = {{2, 1}, {3, 2}};
    for (const auto& [f, label] : c.maps) {
        const auto& s = f.tower()->has_transcendental() ? sT : sS;
        auto F = linear_part_split(f).first;
        bool part_vanishes = true;
        for (const auto& x : s.elements)
            if (!F(x).is_zero()) {
                part_vanishes = false;
                break;
            }
        for (auto [n, m] : nm) {
            std::string tag = label + " (n,m)=(" + std::to_string(n) + "," +
                              std::to_string(m) + ")";
            auto good = lemma21_composite(f, Rational(n, m), n, m, s);
            expect_pass(good, "composite at kappa=n/m " + tag);

            auto off = lemma21_composite(f, Rational(n + m, m), n, m, s);
            expect(find_sub(off, "composite_identity").status == Status::PASS,
                   "composite sub-verdict must not depend on kappa " + tag);
            Status want = part_vanishes ? Status::PASS : Status::FAIL;
            expect(find_sub(off, "proportionality_constraint").status == want,
                   "proportionality constraint off-ratio " + tag);
        }
    }
}

// 8: Mobius forward relation. The chain rule oracle fixes
// g = n*det(M)*F independently; then check_star and the forward check pass,
// and doubling g fails with a concrete witness. Four matrices, n in
// {1,2,3,-1} minus the excluded corners.
void criterion8() {
    auto K = make_qt();
    auto D = derivation_extend(K, {{"t", K->one()}});
    const std::vector<MobiusCoeffs> Ms = {
        {Rational(1), Rational(0), Rational(0), Rational(1)},
        {Rational(0), Rational(1), Rational(1), Rational(0)},
        {Rational(1), Rational(1), Rational(1), Rational(2)},
        {Rational(2), Rational(3), Rational(1), Rational(1)},
    };
    const std::vector<long> ns = {1, 2, 3, -1};
    int combos = 0;
    for (const auto& M : Ms) {
        for (long n : ns) {
            if (M.c.is_zero() && n == 1)
                continue;
            if (M.d.is_zero() && n == -1)
                continue;
            std::string tag = M.to_string() + " n=" + std::to_string(n);
            auto s = mobius_pole_free(default_samples(K, 20), M, n);
            expect(s.size() >= 10, "pole filter left too few samples " + tag);

            const Rational det = M.det();
            for (const auto& x : s.elements) {
                auto den = x.pow(n) * M.c + K->from_rational(M.d);
                auto lhs = D(mobius_apply(M, n, x));
                auto rhs = x.pow(n - 1) * D(x) * (det * Rational(n)) / (den * den);
                expect(lhs == rhs, "chain rule oracle " + tag + " at " + x.to_string());
            }

            auto g = D.scale(det * Rational(n));
            expect_pass(check_star(D, g, n, M, s), "star " + tag);
            expect_pass(verify_thm22_forward(D, Rational(2), Rational(3), n, M, s),
                        "forward " + tag);
            auto bad = check_star(D, g.scale(Rational(2)), n, M, s);
            expect_status(bad, Status::FAIL, "doubled star " + tag);
            expect(bad.witness.has_value(), "doubled star lacks witness " + tag);
            ++combos;
        }
    }
    expect(combos == 14, "expected 14 admissible (M, n) combinations");
}

// 9: the triangle law f(M(x^n)) = M(g(x)^n) holds for the conjugation
// automorphism and the identity across all matrices and exponents, and fails
// for f = g = 2*id with a shift matrix.
void criterion9() {
    auto S = make_qsqrt2();
    auto r2 = S->generator("sqrt2");
    auto sigma = matrix_map({S->one(), r2}, {S->one(), -r2});
    auto idS = AdditiveMap::identity(S);
    const std::vector<MobiusCoeffs> Ms = {
        {Rational(1), Rational(0), Rational(0), Rational(1)},
        {Rational(0), Rational(1), Rational(1), Rational(0)},
        {Rational(1), Rational(1), Rational(1), Rational(2)},
        {Rational(2), Rational(3), Rational(1), Rational(1)},
    };
    for (const auto& M : Ms) {
        for (long n : {1L, 2L, 3L, -1L}) {
            std::string tag = M.to_string() + " n=" + std::to_string(n);
            auto s = mobius_pole_free(default_samples(S, 20), M, n);
            expect(s.size() >= 8, "pole filter left too few samples " + tag);
            expect_pass(check_triangle(sigma, sigma, n, M, s), "triangle sigma " + tag);
            expect_pass(check_triangle(idS, idS, n, M, s), "triangle id " + tag);
        }
    }
    MobiusCoeffs shift{Rational(1), Rational(1), Rational(0), Rational(1)};
    auto two = AdditiveMap::scaled_identity(S, Rational(2));
    auto rep = check_triangle(two, two, 1, shift,
                              mobius_pole_free(default_samples(S, 20), shift, 1));
    expect_status(rep, Status::FAIL, "triangle 2id shift");
    expect(rep.witness.has_value(), "triangle 2id shift lacks witness");
}

// 10: the linearity alternative. 2*id lands in the linear branch with
// c = -2; the conjugation automorphism lands in the homomorphism branch with
// the subfield flag; the projection fails outright.
void criterion10() {
    auto S = make_qsqrt2();
    auto r2 = S->generator("sqrt2");
    auto s = default_samples(S, 20);

    auto rep1 = check_linearity_theorem(AdditiveMap::scaled_identity(S, Rational(2)), 2, s);
    expect_pass(rep1, "2id linear branch");
    expect(has_note(rep1, "branch: linear"), "2id missing linear branch note");
    expect(has_note(rep1, "c = f(1) - f(1)^n = -2"), "2id missing c = -2 note");

    auto sigma = matrix_map({S->one(), r2}, {S->one(), -r2});
    auto rep2 = check_linearity_theorem(sigma, 2, s);
    expect_pass(rep2, "sigma homomorphism branch");
    expect(has_note(rep2, "branch: homomorphism"), "sigma missing homomorphism note");
    expect(has_note(rep2, "c = f(1) - f(1)^n = 0"), "sigma missing c = 0 note");
    expect(has_note(rep2, "nonlinear homomorphism on subfield"),
           "sigma missing subfield flag");

    auto proj = matrix_map({S->one(), r2}, {S->zero(), S->one()});
    auto rep3 = check_linearity_theorem(proj, 2, s);
    expect_status(rep3, Status::FAIL, "projection");
}

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(DERIVLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    expect(p != nullptr, "popen failed");
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        out.append(buf, n);
    int st = pclose(p);
    int code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return {code, out};
}

// 11: the CLI emits byte-identical JSON across runs when timestamps are
// suppressed, 500 printed elements parse back to themselves, and the exit
// codes are 0 for met expectations, 1 for violated ones, 2 for bad input.
void criterion11() {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path();
    auto write_file = [&dir](const char* name, const std::string& text) {
        auto path = (dir / name).string();
        std::ofstream out(path);
        out << text;
        return path;
    };

    auto good = write_file("derivlab_accept_good.dl",
                           "tower Q(sqrt2 | x^2 - 2)\n"
                           "map sigma = matrix basis(1, sqrt2) images(1, -sqrt2)\n"
                           "check triangle f=sigma g=sigma n=2 M=(1,1;1,2)\n"
                           "check linearity f=sigma n=2\n");
    auto r1 = run_cli("run " + good + " --format json --no-timestamp --seed 11");
    auto r2 = run_cli("run " + good + " --format json --no-timestamp --seed 11");
    expect(r1.exit_code == 0, "met expectations must exit 0");
    expect(!r1.out.empty() && r1.out == r2.out, "JSON output differs across runs");
    auto doc = nlohmann::json::parse(r1.out);
    expect(doc["schema"] == 1, "schema field");
    expect(doc["checks"].size() == 2, "checks array size");
    expect(doc["all_expectations_met"] == true, "all_expectations_met");
    expect(doc.count("timestamp") == 0, "timestamp must be suppressed");

    for (const auto& demo : bundled_demos()) {
        auto d1 = run_cli("demo " + demo.name + " --format json --no-timestamp");
        auto d2 = run_cli("demo " + demo.name + " --format json --no-timestamp");
        expect(d1.exit_code == 0, "demo " + demo.name + " must exit 0");
        expect(!d1.out.empty() && d1.out == d2.out,
               "demo " + demo.name + " output differs across runs");
    }

    auto violated = write_file("derivlab_accept_viol.dl",
                               "tower Q(sqrt2 | x^2 - 2)\n"
                               "map sigma = matrix basis(1, sqrt2) images(1, -sqrt2)\n"
                               "check linear f=sigma\n");
    expect(run_cli("run " + violated + " --format json --no-timestamp").exit_code == 1,
           "violated expectation must exit 1");

    auto malformed = write_file("derivlab_accept_bad.dl",
                                "tower Q(t)\nmap D = d/dt\ncheck bogus f=D\n");
    expect(run_cli("run " + malformed).exit_code == 2, "malformed check must exit 2");
    expect(run_cli("run " + (dir / "derivlab_accept_missing.dl").string()).exit_code == 2,
           "missing file must exit 2");
    expect(run_cli("demo no_such_demo").exit_code == 2, "unknown demo must exit 2");
    expect(run_cli("list").exit_code == 0, "list must exit 0");

    std::mt19937_64 rng(2026);
    const std::vector<TowerPtr> Ks = {make_qt(), make_qsqrt2(), make_qts()};
    for (int i = 0; i < 500; ++i) {
        const auto& K = Ks[i % 3];
        FieldElement e = random_element(K, rng);
        if (i % 3 == 1 && !e.is_zero())
            e = e.inv();
        if (i % 5 == 0)
            e = e + K->one();
        const std::string text = e.to_string();
        expect(parse_element(text, K) == e, "roundtrip mismatch on '" + text + "'");
    }
}

struct Criterion {
    int id;
    const char* desc;
    double budget_s;
    void (*body)();
};

} // namespace

int main() {
    const std::vector<Criterion> rows = {
        {1, "power rule along x^k, k in [-5,5]\\{0}, on Q(t) and Q(t,s|s^2=t)", 5.0,
         criterion1},
        {2, "derivations vanish identically on Q(sqrt2) and Q(cbrt2)", 2.0, criterion2},
        {3, "difference calculus recovers the bilinear form basepoint-free", 5.0,
         criterion3},
        {4, "polynomial decomposition roundtrips through homogeneous traces", 10.0,
         criterion4},
        {5, "symmetrized forms: symmetry, slot additivity, trace = phi", 20.0,
         criterion5},
        {6, "chi transform identity holds for all 10 additive pairs", 10.0, criterion6},
        {7, "composite identity universal; proportionality pinned to kappa = n/m", 10.0,
         criterion7},
        {8, "Mobius forward relation, chain-rule oracle, perturbation witness", 30.0,
         criterion8},
        {9, "triangle law for automorphisms; scaled identity fails it", 5.0, criterion9},
        {10, "linearity alternative: both branches and the failing projection", 5.0,
         criterion10},
        {11, "CLI determinism, 500-element parser roundtrip, exit codes", 10.0,
         criterion11},
    };

    bool all_ok = true;
    for (const auto& r : rows) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string err;
        try {
            r.body();
        } catch (const std::exception& e) {
            err = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_budget = secs < r.budget_s;
        const bool ok = err.empty() && in_budget;
        all_ok = all_ok && ok;
        std::string line = ok ? "PASS" : "FAIL";
        std::printf("criterion %2d: %s  (%6.2fs < %2.0fs)  %s", r.id, line.c_str(), secs,
                    r.budget_s, r.desc);
        if (!err.empty())
            std::printf("  :: %s", err.c_str());
        else if (!in_budget)
            std::printf("  :: budget exceeded");
        std::printf("\n");
    }
    std::printf("acceptance: %s\n", all_ok ? "all criteria met" : "FAILURES PRESENT");
    return all_ok ? 0 : 1;
}
