#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "derivlab/error.hpp"
#include "derivlab/maps.hpp"
#include "derivlab/samples.hpp"
#include "derivlab/theorems.hpp"
#include "derivlab/tower.hpp"

using namespace derivlab;

static TowerPtr q_t() {
    return TowerField::rationals()->extend_transcendental("t");
}

static TowerPtr q_sqrt2() {
    return TowerField::rationals()->extend_algebraic("sqrt2", Poly({Rational(-2), Rational(0), Rational(1)}));
}

static SampleSet singleton(const FieldElement& x) {
    SampleSet s;
    s.elements = {x};
    return s;
}

static bool has_note(const VerdictReport& rep, const std::string& needle) {
    for (const auto& n : rep.notes)
        if (n.find(needle) != std::string::npos)
            return true;
    return false;
}

static const SubVerdict* find_sub(const VerdictReport& rep, const std::string& name) {
    for (const auto& sv : rep.sub_verdicts)
        if (sv.name == name)
            return &sv;
    return nullptr;
}

TEST_CASE("power rule holds for derivations and fails for a projection") {
    auto K = q_t();
    auto D = derivation_extend(K, K->one());
    auto s = default_samples(K);

    for (long k : {3L, -1L, 5L, -4L}) {
        auto rep = check_power_rule(D, k, s);
        CHECK(rep.status == Status::PASS);
        CHECK(rep.samples_tested == static_cast<long>(s.size()));
        CHECK(has_note(rep, "k = " + std::to_string(k)));
    }

    auto S = q_sqrt2();
    auto proj = matrix_map({S->one(), S->generator("sqrt2")}, {S->zero(), S->one()});
    auto x = S->one() + S->generator("sqrt2");
    auto rep = check_power_rule(proj, 2, singleton(x));
    CHECK(rep.status == Status::FAIL);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->lhs == S->integer(2).to_string());
    CHECK(rep.witness->rhs == (x * Rational(2)).to_string());

    CHECK_THROWS_AS(check_power_rule(D, 0, s), Error);
}

TEST_CASE("reciprocal identity agrees with Jurkat and Kurepa on the classical cases") {
    auto K = q_t();
    auto s = default_samples(K);

    auto three_id = AdditiveMap::scaled_identity(K, Rational(3));
    auto rep = check_jurkat_kurepa(three_id, s);
    CHECK(rep.status == Status::PASS);
    REQUIRE(rep.sub_verdicts.size() == 1);
    CHECK(rep.sub_verdicts[0].name == "linearity");
    CHECK(rep.sub_verdicts[0].status == Status::PASS);
    CHECK(has_note(rep, "agree"));

    auto D = derivation_extend(K, K->one());
    auto bad = check_jurkat_kurepa(D, singleton(K->generator("t")));
    CHECK(bad.status == Status::FAIL);
    REQUIRE(bad.witness.has_value());
    auto t = K->generator("t");
    CHECK(bad.witness->lhs == (-(t * t).inv()).to_string());
    CHECK(bad.witness->rhs == (t * t).inv().to_string());

    auto S = q_sqrt2();
    auto r2 = S->generator("sqrt2");
    auto proj = matrix_map({S->one(), r2}, {S->zero(), S->one()});
    auto pr = check_jurkat_kurepa(proj, singleton(S->one() + r2));
    CHECK(pr.status == Status::FAIL);
    REQUIRE(pr.witness.has_value());
    CHECK(pr.witness->lhs == S->one().to_string());
    CHECK(pr.witness->rhs == (S->integer(3) - r2 * Rational(2)).to_string());
}

TEST_CASE("Nishiyama-Horinouchi form with explicit constants") {
    auto K = q_t();
    auto s = default_samples(K);
    auto id = AdditiveMap::identity(K);
    auto D = derivation_extend(K, K->one());

    CHECK(check_nishiyama(id, Rational(1), 2, 1, 1, s).status == Status::PASS);
    CHECK(check_nishiyama(D, Rational(3, 2), 3, 2, 1, s).status == Status::PASS);
    CHECK(check_nishiyama(D, Rational(5, 2), 5, 2, 3, s).status == Status::PASS);

    auto bad = check_nishiyama(D, Rational(1), 2, 1, 1, s);
    CHECK(bad.status == Status::FAIL);
    CHECK(bad.witness.has_value());
    CHECK(has_note(bad, "c = 1"));
}

TEST_CASE("full characterization check: hypothesis, derivation parts, proportionality") {
    auto K = q_t();
    auto s = default_samples(K);
    auto D = derivation_extend(K, K->one());
    auto id = AdditiveMap::identity(K);

    long n = 3, m = 2;
    auto f = D.scale(Rational(m)) + AdditiveMap::scaled_identity(K, Rational(5));
    auto g = D.scale(Rational(n)) + AdditiveMap::scaled_identity(K, Rational(5));
    auto rep = check_theorem1(f, g, n, m, s);
    CHECK(rep.status == Status::PASS);
    REQUIRE(rep.sub_verdicts.size() == 3);
    CHECK(find_sub(rep, "hypothesis")->status == Status::PASS);
    CHECK(find_sub(rep, "derivation_parts")->status == Status::PASS);
    CHECK(find_sub(rep, "proportionality")->status == Status::PASS);

    CHECK(check_theorem1(id, id, 2, 1, s).status == Status::PASS);

    auto twisted = check_theorem1(D, D, 2, 1, s);
    CHECK(twisted.status == Status::FAIL);
    CHECK(find_sub(twisted, "hypothesis")->status == Status::FAIL);
    CHECK(find_sub(twisted, "derivation_parts")->status == Status::PASS);
    CHECK(find_sub(twisted, "proportionality")->status == Status::FAIL);
    CHECK(twisted.witness.has_value());

    CHECK_THROWS_AS(check_theorem1(D, D, 2, 2, s), Error);
    CHECK_THROWS_AS(check_theorem1(D, D, 0, 1, s), Error);
    auto S = q_sqrt2();
    CHECK_THROWS_AS(check_theorem1(D, AdditiveMap::identity(S), 2, 1, s), Error);
}

TEST_CASE("phi along powers evaluates to the expected residues") {
    auto K = q_t();
    auto t = K->generator("t");
    auto D = derivation_extend(K, K->one());
    auto f = D + AdditiveMap::scaled_identity(K, Rational(2));
    auto g = D.scale(Rational(2)) + AdditiveMap::scaled_identity(K, Rational(3));

    CHECK(phi_power(f, g, 2, 1, t) == -(t * t));
    CHECK(phi_power(D, AdditiveMap::zero(K), 2, 1, t) == t * Rational(2));
}

TEST_CASE("phi along powers collapses to c*x^n exactly when the parts are proportional") {
    auto K = q_t();
    auto s = default_samples(K);
    auto D = derivation_extend(K, K->one());
    auto id = AdditiveMap::identity(K);

    auto f = D + AdditiveMap::scaled_identity(K, Rational(2));
    auto g = D.scale(Rational(2)) + AdditiveMap::scaled_identity(K, Rational(3));
    auto rep = verify_phi_power(f, g, 2, 1, s);
    CHECK(rep.status == Status::PASS);
    CHECK(has_note(rep, "c = f(1) - g(1) = -1"));
    CHECK(has_note(rep, "structural: derivation part of g = (n/m)*derivation part of f"));

    CHECK(verify_phi_power(id, id, 3, 1, s).status == Status::PASS);

    auto bad = verify_phi_power(D, AdditiveMap::zero(K), 2, 1, s);
    CHECK(bad.status == Status::FAIL);
    CHECK(bad.witness.has_value());
    CHECK(has_note(bad, "structural: derivation part of g differs"));

    auto mismatched = verify_phi_power(D, D.scale(Rational(3)), 2, 1, s);
    CHECK(mismatched.status == Status::FAIL);
    CHECK(has_note(mismatched, "differs"));

    auto inverse_pair = verify_phi_power(D, D.scale(Rational(-1)), 1, -1, s);
    CHECK(inverse_pair.status == Status::PASS);

    CHECK_THROWS_AS(verify_phi_power(D, D, 2, 2, s), Error);
    CHECK_THROWS_AS(verify_phi_power(D, D, 0, 1, s), Error);
    CHECK_THROWS_AS(verify_phi_power(D, D, 2, -1, s), Error);
}

TEST_CASE("chi transform identity holds for every additive pair") {
    auto K = q_t();
    auto s = default_samples(K);
    auto D = derivation_extend(K, K->one());
    auto id = AdditiveMap::identity(K);
    auto zero = AdditiveMap::zero(K);

    CHECK(chi_transform_identity(zero, id, s).status == Status::PASS);
    CHECK(chi_transform_identity(zero, D, s).status == Status::PASS);
    CHECK(chi_transform_identity(D, D, s).status == Status::PASS);
    CHECK(chi_transform_identity(D + id.scale(Rational(4)), D.scale(Rational(-2)), s).status ==
          Status::PASS);

    // spot check at u = 2 with f = 0, g = id: both sides equal 4
    auto u = K->integer(2);
    auto one = K->one();
    auto v = u + one;
    auto psi = [&](const FieldElement& x) { return -(x / (x * x)); };
    auto lhs = u * u * (v * v) * (psi(u * v) - psi(u) + psi(v)) + u * u * one;
    auto rhs = u * u * Rational(2) - u * u;
    CHECK(lhs == K->integer(4));
    CHECK(rhs == K->integer(4));

    auto S = q_sqrt2();
    auto r2 = S->generator("sqrt2");
    auto sigma = matrix_map({S->one(), r2}, {S->one(), -r2});
    auto proj = matrix_map({S->one(), r2}, {S->zero(), S->one()});
    auto ss = default_samples(S);
    CHECK(chi_transform_identity(sigma, proj, ss).status == Status::PASS);
    CHECK(chi_transform_identity(proj, sigma, ss).status == Status::PASS);

    // partial-domain map: 1/x escapes span(sqrt2), reported as ERROR not a crash
    auto h = matrix_map({r2}, {S->one()});
    auto err = chi_transform_identity(h, h, ss);
    CHECK(err.status == Status::ERROR);
    CHECK_FALSE(err.error.empty());

    CHECK_THROWS_AS(chi_transform_identity(D, AdditiveMap::identity(S), s), Error);
}

TEST_CASE("composite phi identity and the proportionality constraint") {
    auto K = q_t();
    auto s = default_samples(K);
    auto id = AdditiveMap::identity(K);
    auto D = derivation_extend(K, K->one());

    auto lin = lemma21_composite(id, Rational(7), 2, 1, s);
    CHECK(lin.status == Status::PASS);
    CHECK(find_sub(lin, "composite_identity")->status == Status::PASS);
    CHECK(find_sub(lin, "proportionality_constraint")->status == Status::PASS);

    auto matched = lemma21_composite(D, Rational(3, 2), 3, 2, s);
    CHECK(matched.status == Status::PASS);

    auto off = lemma21_composite(D, Rational(1), 2, 1, s);
    CHECK(off.status == Status::FAIL);
    CHECK(find_sub(off, "composite_identity")->status == Status::PASS);
    auto* constraint = find_sub(off, "proportionality_constraint");
    CHECK(constraint->status == Status::FAIL);
    CHECK(constraint->note.find("n - kappa*m = 1") != std::string::npos);
    CHECK(off.witness.has_value());

    CHECK_THROWS_AS(lemma21_composite(D, Rational(1), 2, 2, s), Error);
    CHECK_THROWS_AS(lemma21_composite(D, Rational(1), 0, 1, s), Error);
}

TEST_CASE("phi along a Mobius substitution specializes to the reciprocal form") {
    auto K = q_t();
    auto t = K->generator("t");
    auto D = derivation_extend(K, K->one());
    MobiusCoeffs swap(Rational(0), Rational(1), Rational(1), Rational(0));

    auto direct = D(t.inv()) - D(t) / (t * t);
    CHECK(phi_mobius(D, D, 1, swap, t) == direct);
    CHECK(direct == -(t * t).inv() * Rational(2));

    MobiusCoeffs pole(Rational(1), Rational(0), Rational(1), Rational(-1));
    CHECK_THROWS_AS(phi_mobius(D, D, 1, pole, K->one()), Error);
}

TEST_CASE("chain rule for derivations through Mobius substitutions, checked directly") {
    auto K = q_t();
    auto D = derivation_extend(K, K->one());
    std::vector<MobiusCoeffs> ms = {MobiusCoeffs(Rational(1), Rational(1), Rational(1), Rational(2)),
                                    MobiusCoeffs(Rational(2), Rational(3), Rational(1), Rational(1)),
                                    MobiusCoeffs(Rational(0), Rational(1), Rational(1), Rational(0))};
    for (const auto& M : ms) {
        for (long n : {1L, 2L, 3L, -1L}) {
            auto s = mobius_pole_free(default_samples(K), M, n);
            REQUIRE(s.size() > 10);
            for (const auto& x : s.elements) {
                auto den = x.pow(n) * M.c + K->from_rational(M.d);
                auto lhs = D(mobius_apply(M, n, x));
                auto rhs = x.pow(n - 1) * D(x) * (Rational(n) * M.det()) / (den * den);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("forward verification of the Mobius target form") {
    auto K = q_t();
    auto D = derivation_extend(K, K->one());
    MobiusCoeffs M(Rational(1), Rational(1), Rational(1), Rational(2));

    for (long n : {1L, 2L, 3L, -1L}) {
        auto s = mobius_pole_free(default_samples(K), M, n);
        auto rep = verify_thm22_forward(D, Rational(2), Rational(3), n, M, s);
        CHECK(rep.status == Status::PASS);
        CHECK(find_sub(rep, "derivation_precondition")->status == Status::PASS);
        CHECK(find_sub(rep, "target_form")->status == Status::PASS);
    }

    auto zero = AdditiveMap::zero(K);
    MobiusCoeffs ident(Rational(1), Rational(0), Rational(0), Rational(1));
    auto s2 = mobius_pole_free(default_samples(K), ident, 2);
    CHECK(verify_thm22_forward(zero, Rational(0), Rational(0), 2, ident, s2).status ==
          Status::PASS);

    auto not_deriv = verify_thm22_forward(AdditiveMap::identity(K), Rational(0), Rational(0), 2,
                                          M, mobius_pole_free(default_samples(K), M, 2));
    CHECK(not_deriv.status == Status::FAIL);
    CHECK(find_sub(not_deriv, "derivation_precondition")->status == Status::FAIL);

    CHECK_THROWS_AS(
        verify_thm22_forward(D, Rational(0), Rational(0), 1, ident, default_samples(K)), Error);
    MobiusCoeffs no_d(Rational(1), Rational(1), Rational(1), Rational(0));
    CHECK_THROWS_AS(
        verify_thm22_forward(D, Rational(0), Rational(0), -1, no_d, default_samples(K)), Error);
}

TEST_CASE("the starred equation detects a perturbed right side") {
    auto K = q_t();
    auto D = derivation_extend(K, K->one());
    MobiusCoeffs M(Rational(2), Rational(3), Rational(1), Rational(1)); // det = -1
    long n = 2;
    auto s = mobius_pole_free(default_samples(K), M, n);

    auto good = check_star(D, D.scale(Rational(n) * M.det()), n, M, s);
    CHECK(good.status == Status::PASS);

    auto bad = check_star(D, D.scale(Rational(n) * M.det() * Rational(2)), n, M, s);
    CHECK(bad.status == Status::FAIL);
    CHECK(bad.witness.has_value());

    auto flipped = check_star(D, D.scale(-(Rational(n) * M.det())), n, M, s);
    CHECK(flipped.status == Status::FAIL);
}

TEST_CASE("the triangle equation holds for automorphisms and fails for scalings") {
    auto S = q_sqrt2();
    auto r2 = S->generator("sqrt2");
    auto sigma = matrix_map({S->one(), r2}, {S->one(), -r2});
    MobiusCoeffs M(Rational(1), Rational(1), Rational(1), Rational(2));
    auto s = mobius_pole_free(default_samples(S), M, 2);
    CHECK(check_triangle(sigma, sigma, 2, M, s).status == Status::PASS);

    auto K = q_t();
    auto id = AdditiveMap::identity(K);
    MobiusCoeffs M2(Rational(2), Rational(3), Rational(1), Rational(1));
    CHECK(check_triangle(id, id, 3, M2, mobius_pole_free(default_samples(K), M2, 3)).status ==
          Status::PASS);

    auto twice = AdditiveMap::scaled_identity(K, Rational(2));
    MobiusCoeffs shift(Rational(1), Rational(1), Rational(0), Rational(1));
    auto t = K->generator("t");
    auto bad = check_triangle(twice, twice, 1, shift, singleton(t));
    CHECK(bad.status == Status::FAIL);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->lhs == (t * Rational(2) + K->integer(2)).to_string());
    CHECK(bad.witness->rhs == (t * Rational(2) + K->one()).to_string());

    // g lands on a pole of the substitution: reported as ERROR, not a crash
    MobiusCoeffs pole(Rational(1), Rational(0), Rational(1), Rational(-1));
    auto err = check_triangle(twice, twice, 1, pole, singleton(K->from_rational(Rational(1, 2))));
    CHECK(err.status == Status::ERROR);
    CHECK_FALSE(err.error.empty());
}

TEST_CASE("linearity characterization branches on f(1)") {
    auto K = q_t();
    auto s = default_samples(K);

    auto twice = AdditiveMap::scaled_identity(K, Rational(2));
    auto lin = check_linearity_theorem(twice, 2, s);
    CHECK(lin.status == Status::PASS);
    CHECK(has_note(lin, "branch: linear"));
    CHECK(has_note(lin, "c = f(1) - f(1)^n = -2"));
    CHECK(find_sub(lin, "phi_target")->status == Status::PASS);
    CHECK(find_sub(lin, "linear_branch")->status == Status::PASS);

    auto hom = check_linearity_theorem(AdditiveMap::identity(K), 3, s);
    CHECK(hom.status == Status::PASS);
    CHECK(has_note(hom, "branch: homomorphism"));
    CHECK(find_sub(hom, "homomorphism_branch")->status == Status::PASS);
    CHECK_FALSE(has_note(hom, "nonlinear homomorphism"));

    auto S = q_sqrt2();
    auto r2 = S->generator("sqrt2");
    auto sigma = matrix_map({S->one(), r2}, {S->one(), -r2});
    auto ss = default_samples(S);
    auto flagged = check_linearity_theorem(sigma, 2, ss);
    CHECK(flagged.status == Status::PASS);
    CHECK(has_note(flagged, "branch: homomorphism"));
    CHECK(has_note(flagged, "nonlinear homomorphism on subfield"));

    auto proj = matrix_map({S->one(), r2}, {S->zero(), S->one()});
    auto bad = check_linearity_theorem(proj, 2, ss);
    CHECK(bad.status == Status::FAIL);
    CHECK(find_sub(bad, "phi_target")->status == Status::FAIL);

    CHECK_THROWS_AS(check_linearity_theorem(twice, 1, s), Error);
}

TEST_CASE("rational homogeneity of pointwise functions") {
    auto K = q_t();
    auto s = default_samples(K);
    auto D = derivation_extend(K, K->one());
    auto f = D + AdditiveMap::scaled_identity(K, Rational(2));
    auto g = D.scale(Rational(2)) + AdditiveMap::scaled_identity(K, Rational(3));
    std::vector<Rational> rs = {Rational(2), Rational(-3), Rational(1, 2)};

    PointFunction phi{K, [&](const FieldElement& x) { return phi_power(f, g, 2, 1, x); }, {}};
    CHECK(q_homogeneity_check(phi, 2, s, rs).status == Status::PASS);

    PointFunction square{K, [](const FieldElement& x) { return x * x; }, {}};
    CHECK(q_homogeneity_check(square, 2, s, rs).status == Status::PASS);
    auto bad = q_homogeneity_check(square, 1, s, rs);
    CHECK(bad.status == Status::FAIL);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->inputs.size() == 2);
    CHECK(bad.witness->inputs[1].first == "r");

    CHECK_THROWS_AS(q_homogeneity_check(square, 2, s, {Rational(0)}), Error);
    CHECK_THROWS_AS(q_homogeneity_check(square, 2, s, {}), Error);
}
