#include "derivlab/theorems.hpp"

#include <functional>
#include <utility>

#include "derivlab/batch.hpp"
#include "derivlab/error.hpp"

namespace derivlab {

namespace {

using Sides = std::function<std::pair<FieldElement, FieldElement>(const FieldElement&)>;

VerdictReport check_on_samples(const std::string& check, const std::string& anchor,
                               const SampleSet& s, const Sides& sides) {
    return run_identity_check(
        check, anchor, s.size(),
        [&](size_t i) {
            auto [lhs, rhs] = sides(s.elements[i]);
            return lhs == rhs;
        },
        [&](size_t i) {
            auto [lhs, rhs] = sides(s.elements[i]);
            Witness w;
            w.inputs = {{"x", s.elements[i].to_string()}};
            w.lhs = lhs.to_string();
            w.rhs = rhs.to_string();
            return w;
        });
}

std::string join_notes(const std::vector<std::string>& notes) {
    std::string out;
    for (const auto& n : notes) {
        if (!out.empty())
            out += "; ";
        out += n;
    }
    return out;
}

SubVerdict to_sub_verdict(std::string name, const VerdictReport& rep) {
    SubVerdict sv;
    sv.name = std::move(name);
    sv.status = rep.status;
    sv.witness = rep.witness;
    sv.note = rep.status == Status::ERROR ? rep.error : join_notes(rep.notes);
    return sv;
}

void combine_sub_verdicts(VerdictReport& rep) {
    rep.status = Status::PASS;
    for (const auto& sv : rep.sub_verdicts) {
        if (sv.status == Status::ERROR) {
            rep.status = Status::ERROR;
            rep.error = sv.name + ": " + sv.note;
            break;
        }
        if (sv.status == Status::FAIL && rep.status == Status::PASS) {
            rep.status = Status::FAIL;
            rep.witness = sv.witness;
        }
    }
}


template <typename Fn>
VerdictReport guarded(const std::string& check, const std::string& anchor, Fn&& body) {
    try {
        return body();
    } catch (const Error& e) {
        VerdictReport rep;
        rep.check = check;
        rep.anchor = anchor;
        rep.status = Status::ERROR;
        rep.error = e.what();
        return rep;
    }
}

} // namespace

VerdictReport check_power_rule(const AdditiveMap& f, long k, const SampleSet& s) {
    if (k == 0)
        fail(Errc::ParameterOutOfRange, "exponent k must be nonzero");
    return guarded("check_power_rule", "f(x^k) = k*x^(k-1)*f(x)", [&] {
        VerdictReport rep = check_on_samples(
            "check_power_rule", "f(x^k) = k*x^(k-1)*f(x)", s,
            [&](const FieldElement& x) {
                return std::make_pair(f(x.pow(k)), x.pow(k - 1) * f(x) * Rational(k));
            });
        rep.assumptions = f.tower()->assumptions();
        rep.notes.push_back("k = " + std::to_string(k));
        return rep;
    });
}

VerdictReport check_jurkat_kurepa(const AdditiveMap& f, const SampleSet& s) {
    return guarded("check_jurkat_kurepa", "f(1/x) = f(x)/x^2 (Jurkat, Kurepa)", [&] {
        VerdictReport rep = check_on_samples(
            "check_jurkat_kurepa", "f(1/x) = f(x)/x^2 (Jurkat, Kurepa)", s,
            [&](const FieldElement& x) {
                return std::make_pair(f(x.inv()), f(x) / (x * x));
            });
        rep.assumptions = f.tower()->assumptions();
        VerdictReport lin = is_linear_on_samples(f, s);
        rep.sub_verdicts.push_back(to_sub_verdict("linearity", lin));
        if (rep.status != Status::ERROR && lin.status != Status::ERROR)
            rep.notes.push_back(rep.status == lin.status
                                    ? "reciprocal identity and linearity verdicts agree"
                                    : "reciprocal identity and linearity verdicts disagree");
        return rep;
    });
}

VerdictReport check_nishiyama(const AdditiveMap& f, const Rational& c, long n, long m,
                              long k, const SampleSet& s) {
    return guarded("check_nishiyama", "f(x^n) = c*x^k*f(x^m) (Nishiyama, Horinouchi)", [&] {
        VerdictReport rep = check_on_samples(
            "check_nishiyama", "f(x^n) = c*x^k*f(x^m) (Nishiyama, Horinouchi)", s,
            [&](const FieldElement& x) {
                return std::make_pair(f(x.pow(n)), x.pow(k) * f(x.pow(m)) * c);
            });
        rep.assumptions = f.tower()->assumptions();
        rep.notes.push_back("c = " + c.to_string() + ", n = " + std::to_string(n) +
                            ", m = " + std::to_string(m) + ", k = " + std::to_string(k));
        return rep;
    });
}

VerdictReport check_theorem1(const AdditiveMap& f, const AdditiveMap& g, long n, long m,
                             const SampleSet& s) {
    if (n == 0 || m == 0 || n == m)
        fail(Errc::ParameterOutOfRange, "need nonzero n, m with n != m, got n = " +
                                            std::to_string(n) + ", m = " + std::to_string(m));
    if (!f.tower()->same_as(*g.tower()))
        fail(Errc::TowerMismatch,
             "maps on " + f.tower()->describe() + " and " + g.tower()->describe());

    return guarded("check_theorem1",
                   "f(x^n) = x^(n-m)*g(x^m) with derivation parts F, G and n*F = m*G", [&] {
    VerdictReport rep;
    rep.check = "check_theorem1";
    rep.anchor = "f(x^n) = x^(n-m)*g(x^m) with derivation parts F, G and n*F = m*G";
    rep.assumptions = f.tower()->assumptions();
    rep.notes.push_back("n = " + std::to_string(n) + ", m = " + std::to_string(m));

    VerdictReport hyp = check_on_samples(
        "hypothesis", "f(x^n) = x^(n-m)*g(x^m)", s, [&](const FieldElement& x) {
            return std::make_pair(f(x.pow(n)), x.pow(n - m) * g(x.pow(m)));
        });
    rep.sub_verdicts.push_back(to_sub_verdict("hypothesis", hyp));

    auto [F, fl] = linear_part_split(f);
    auto [G, gl] = linear_part_split(g);
    VerdictReport df = is_derivation_on_samples(F, s);
    VerdictReport dg = is_derivation_on_samples(G, s);
    SubVerdict parts;
    parts.name = "derivation_parts";
    if (df.status == Status::ERROR || dg.status == Status::ERROR) {
        parts.status = Status::ERROR;
        parts.note = df.status == Status::ERROR ? df.error : dg.error;
    } else if (df.status == Status::FAIL || dg.status == Status::FAIL) {
        parts.status = Status::FAIL;
        parts.witness = df.status == Status::FAIL ? df.witness : dg.witness;
        parts.note = df.status == Status::FAIL ? "F = f - f(1)*id fails the Leibniz rule"
                                               : "G = g - g(1)*id fails the Leibniz rule";
    } else {
        parts.status = Status::PASS;
        parts.note = "F and G both satisfy the Leibniz rule on the samples";
    }
    rep.sub_verdicts.push_back(parts);

    VerdictReport prop = check_on_samples(
        "proportionality", "n*F(x) = m*G(x)", s, [&](const FieldElement& x) {
            return std::make_pair(F(x) * Rational(n), G(x) * Rational(m));
        });
    rep.sub_verdicts.push_back(to_sub_verdict("proportionality", prop));

    rep.samples_tested = hyp.samples_tested;
    combine_sub_verdicts(rep);
    return rep;
    });
}

FieldElement phi_power(const AdditiveMap& f, const AdditiveMap& g, long n, long m,
                       const FieldElement& x) {
    return f(x.pow(n)) - x.pow(n - m) * g(x.pow(m));
}

VerdictReport verify_phi_power(const AdditiveMap& f, const AdditiveMap& g, long n, long m,
                               const SampleSet& s) {
    if (n == 0 || m == 0 || n == m || !(n == -m || (n > 0) == (m > 0)))
        fail(Errc::ParameterOutOfRange,
             "need n != m with n = -m or matching signs, got n = " + std::to_string(n) +
                 ", m = " + std::to_string(m));
    return guarded("verify_phi_power",
                   "phi(x) = f(x^n) - x^(n-m)*g(x^m) = (f(1) - g(1))*x^n", [&] {
        const FieldElement c = f.at_one() - g.at_one();
        VerdictReport rep = check_on_samples(
            "verify_phi_power", "phi(x) = f(x^n) - x^(n-m)*g(x^m) = (f(1) - g(1))*x^n", s,
            [&](const FieldElement& x) {
                return std::make_pair(phi_power(f, g, n, m, x), x.pow(n) * c);
            });
        rep.assumptions = f.tower()->assumptions();
        rep.notes.push_back("target form phi(x) = c*x^n with c = f(1) - g(1) = " + c.to_string());
        const auto fd = f.derivation_part_images();
        const auto gd = g.derivation_part_images();
        if (fd && gd) {
            const Rational ratio(n, m);
            bool matches = fd->size() == gd->size();
            for (size_t i = 0; matches && i < fd->size(); ++i)
                matches = (*gd)[i] == (*fd)[i] * ratio;
            rep.notes.push_back(matches
                                    ? "structural: derivation part of g = (n/m)*derivation part of f"
                                    : "structural: derivation part of g differs from "
                                      "(n/m)*derivation part of f");
        }
        return rep;
    });
}

VerdictReport chi_transform_identity(const AdditiveMap& f, const AdditiveMap& g,
                                     const SampleSet& s) {
    if (!f.tower()->same_as(*g.tower()))
        fail(Errc::TowerMismatch,
             "maps on " + f.tower()->describe() + " and " + g.tower()->describe());
    const char* anchor =
        "u^2*(u+1)^2*[psi(u*(u+1)) - psi(u) + psi(u+1)] + u^2*g(1) = 2*u*g(u) - g(u^2)";
    return guarded("chi_transform_identity", anchor, [&] {
        const TowerPtr K = f.tower();
        const FieldElement one = K->one();
        SampleSet us = filter_samples(
            s,
            [&](const FieldElement& u) { return !u.is_zero() && !(u + one).is_zero(); },
            "u and u+1 nonzero");
        auto psi = [&](const FieldElement& x) { return f(x.inv()) - g(x) / (x * x); };
        const FieldElement g1 = g.at_one();
        VerdictReport rep = check_on_samples(
            "chi_transform_identity", anchor, us, [&](const FieldElement& u) {
                const FieldElement v = u + one;
                const FieldElement uu = u * u;
                const FieldElement lhs =
                    uu * (v * v) * (psi(u * v) - psi(u) + psi(v)) + uu * g1;
                const FieldElement rhs = u * g(u) * Rational(2) - g(uu);
                return std::make_pair(lhs, rhs);
            });
        rep.assumptions = K->assumptions();
        rep.notes.push_back("psi(x) = f(1/x) - g(x)/x^2");
        return rep;
    });
}

VerdictReport lemma21_composite(const AdditiveMap& f, const Rational& kappa, long n,
                                long m, const SampleSet& s) {
    if (n == 0 || m == 0 || n == m)
        fail(Errc::ParameterOutOfRange, "need nonzero n, m with n != m, got n = " +
                                            std::to_string(n) + ", m = " + std::to_string(m));
    return guarded(
        "lemma21_composite",
        "phi(x^n) + kappa*x^(n(n-m))*phi(x^m) = f(x^(n^2)) - kappa^2*x^(n^2-m^2)*f(x^(m^2))",
        [&] {
    VerdictReport rep;
    rep.check = "lemma21_composite";
    rep.anchor = "phi(x^n) + kappa*x^(n(n-m))*phi(x^m) = f(x^(n^2)) - kappa^2*x^(n^2-m^2)*f(x^(m^2))";
    rep.assumptions = f.tower()->assumptions();
    rep.notes.push_back("kappa = " + kappa.to_string() + ", n = " + std::to_string(n) +
                        ", m = " + std::to_string(m));

    auto phi = [&](const FieldElement& x) {
        return f(x.pow(n)) - x.pow(n - m) * f(x.pow(m)) * kappa;
    };
    VerdictReport comp = check_on_samples(
        "composite_identity", rep.anchor, s, [&](const FieldElement& x) {
            const FieldElement lhs =
                phi(x.pow(n)) + x.pow(n * (n - m)) * phi(x.pow(m)) * kappa;
            const FieldElement rhs =
                f(x.pow(n * n)) - x.pow(n * n - m * m) * f(x.pow(m * m)) * (kappa * kappa);
            return std::make_pair(lhs, rhs);
        });
    rep.sub_verdicts.push_back(to_sub_verdict("composite_identity", comp));

    auto [F, fl] = linear_part_split(f);
    const Rational factor = Rational(n) - kappa * Rational(m);
    VerdictReport prop = check_on_samples(
        "proportionality_constraint", "(n - kappa*m)*F(x) = 0", s,
        [&](const FieldElement& x) {
            return std::make_pair(F(x) * factor, f.tower()->zero());
        });
    SubVerdict sv = to_sub_verdict("proportionality_constraint", prop);
    sv.note = "n - kappa*m = " + factor.to_string();
    rep.sub_verdicts.push_back(sv);

    rep.samples_tested = comp.samples_tested;
    combine_sub_verdicts(rep);
    return rep;
    });
}

FieldElement phi_mobius(const AdditiveMap& f, const AdditiveMap& g, long n,
                        const MobiusCoeffs& M, const FieldElement& x) {
    const FieldElement mv = mobius_apply(M, n, x);
    const FieldElement den = x.pow(n) * M.c + x.tower()->from_rational(M.d);
    return f(mv) - x.pow(n - 1) * g(x) / (den * den);
}

VerdictReport verify_thm22_forward(const AdditiveMap& F_der, const Rational& alpha,
                                   const Rational& beta, long n, const MobiusCoeffs& M,
                                   const SampleSet& s) {
    if (M.c.is_zero() && n == 1)
        fail(Errc::ParameterOutOfRange, "c = 0 requires n != 1");
    if (M.d.is_zero() && n == -1)
        fail(Errc::ParameterOutOfRange, "d = 0 requires n != -1");
    return guarded(
        "verify_thm22_forward",
        "phi(x) = f(M(x^n)) - x^(n-1)*g(x)/(c*x^n+d)^2 = alpha*M(x^n) - beta*x^n/(c*x^n+d)^2",
        [&] {
    const TowerPtr K = F_der.tower();
    const AdditiveMap f = F_der + AdditiveMap::scaled_identity(K, alpha);
    const AdditiveMap g =
        F_der.scale(Rational(n) * M.det()) + AdditiveMap::scaled_identity(K, beta);

    VerdictReport rep;
    rep.check = "verify_thm22_forward";
    rep.anchor = "phi(x) = f(M(x^n)) - x^(n-1)*g(x)/(c*x^n+d)^2 = alpha*M(x^n) - beta*x^n/(c*x^n+d)^2";
    rep.assumptions = K->assumptions();
    rep.notes.push_back("M = " + M.to_string() + ", n = " + std::to_string(n) +
                        ", alpha = " + alpha.to_string() + ", beta = " + beta.to_string());
    rep.notes.push_back("f = F + alpha*id, g = n*det(M)*F + beta*id with det(M) = " +
                        M.det().to_string());
    rep.notes.push_back("target form phi(x) = alpha*M(x^n) - beta*x^n/(c*x^n+d)^2");

    VerdictReport der = is_derivation_on_samples(F_der, s);
    rep.sub_verdicts.push_back(to_sub_verdict("derivation_precondition", der));

    VerdictReport target = check_on_samples(
        "target_form", rep.anchor, s, [&](const FieldElement& x) {
            const FieldElement xn = x.pow(n);
            const FieldElement den = xn * M.c + K->from_rational(M.d);
            const FieldElement lhs = phi_mobius(f, g, n, M, x);
            const FieldElement rhs =
                mobius_apply(M, n, x) * alpha - xn * beta / (den * den);
            return std::make_pair(lhs, rhs);
        });
    rep.sub_verdicts.push_back(to_sub_verdict("target_form", target));

    rep.samples_tested = target.samples_tested;
    combine_sub_verdicts(rep);
    return rep;
    });
}

VerdictReport check_star(const AdditiveMap& f, const AdditiveMap& g, long n,
                         const MobiusCoeffs& M, const SampleSet& s) {
    return guarded("check_star", "f((a*x^n+b)/(c*x^n+d)) = x^(n-1)*g(x)/(c*x^n+d)^2", [&] {
        VerdictReport rep = check_on_samples(
            "check_star", "f((a*x^n+b)/(c*x^n+d)) = x^(n-1)*g(x)/(c*x^n+d)^2", s,
            [&](const FieldElement& x) {
                const FieldElement den = x.pow(n) * M.c + x.tower()->from_rational(M.d);
                return std::make_pair(f(mobius_apply(M, n, x)),
                                      x.pow(n - 1) * g(x) / (den * den));
            });
        rep.assumptions = f.tower()->assumptions();
        rep.notes.push_back("M = " + M.to_string() + ", n = " + std::to_string(n));
        return rep;
    });
}

VerdictReport check_triangle(const AdditiveMap& f, const AdditiveMap& g, long n,
                             const MobiusCoeffs& M, const SampleSet& s) {
    return guarded("check_triangle", "f((a*x^n+b)/(c*x^n+d)) = (a*g(x)^n+b)/(c*g(x)^n+d)", [&] {
        VerdictReport rep = check_on_samples(
            "check_triangle", "f((a*x^n+b)/(c*x^n+d)) = (a*g(x)^n+b)/(c*g(x)^n+d)", s,
            [&](const FieldElement& x) {
                return std::make_pair(f(mobius_apply(M, n, x)), mobius_apply(M, n, g(x)));
            });
        rep.assumptions = f.tower()->assumptions();
        rep.notes.push_back("M = " + M.to_string() + ", n = " + std::to_string(n));
        return rep;
    });
}

VerdictReport check_linearity_theorem(const AdditiveMap& f, long n, const SampleSet& s) {
    if (n < 2)
        fail(Errc::ParameterOutOfRange, "need n >= 2, got " + std::to_string(n));
    return guarded(
        "check_linearity_theorem",
        "phi(x) = f(x^n) - f(x)^n = (f(1) - f(1)^n)*x^n, then linearity or homomorphism", [&] {
    const TowerPtr K = f.tower();
    const FieldElement f1 = f.at_one();
    const FieldElement c = f1 - f1.pow(n);

    VerdictReport rep;
    rep.check = "check_linearity_theorem";
    rep.anchor = "phi(x) = f(x^n) - f(x)^n = (f(1) - f(1)^n)*x^n, then linearity or homomorphism";
    rep.assumptions = K->assumptions();
    rep.notes.push_back("n = " + std::to_string(n) + ", c = f(1) - f(1)^n = " + c.to_string());

    VerdictReport target = check_on_samples(
        "phi_target", "f(x^n) - f(x)^n = c*x^n", s, [&](const FieldElement& x) {
            return std::make_pair(f(x.pow(n)) - f(x).pow(n), x.pow(n) * c);
        });
    rep.sub_verdicts.push_back(to_sub_verdict("phi_target", target));

    const bool linear_branch = f1.pow(n - 1) != K->one();
    if (linear_branch) {
        rep.notes.push_back("branch: linear (f(1)^(n-1) != 1)");
        VerdictReport lin = is_linear_on_samples(f, s);
        rep.sub_verdicts.push_back(to_sub_verdict("linear_branch", lin));
    } else {
        rep.notes.push_back("branch: homomorphism (f(1)^(n-1) = 1)");
        const FieldElement scale = f1.pow(n - 2);
        const size_t count = s.size();
        std::vector<std::pair<size_t, size_t>> pairs;
        pairs.reserve(count * (count + 1) / 2);
        for (size_t i = 0; i < count; ++i)
            for (size_t j = i; j < count; ++j)
                pairs.emplace_back(i, j);
        auto sides = [&](size_t idx) {
            const FieldElement& u = s.elements[pairs[idx].first];
            const FieldElement& v = s.elements[pairs[idx].second];
            return std::make_pair(f(u * v), f(u) * f(v) * scale);
        };
        VerdictReport hom = run_identity_check(
            "homomorphism_branch", "f(u*v) = f(u)*f(v)*f(1)^(n-2)", pairs.size(),
            [&](size_t idx) {
                auto [lhs, rhs] = sides(idx);
                return lhs == rhs;
            },
            [&](size_t idx) {
                auto [lhs, rhs] = sides(idx);
                Witness w;
                w.inputs = {{"u", s.elements[pairs[idx].first].to_string()},
                            {"v", s.elements[pairs[idx].second].to_string()}};
                w.lhs = lhs.to_string();
                w.rhs = rhs.to_string();
                return w;
            });
        rep.sub_verdicts.push_back(to_sub_verdict("homomorphism_branch", hom));
        if (hom.status == Status::PASS &&
            is_linear_on_samples(f, s).status == Status::FAIL)
            rep.notes.push_back("nonlinear homomorphism on subfield; the full-field "
                                "linearity conclusion is not applicable");
    }

    rep.samples_tested = target.samples_tested;
    combine_sub_verdicts(rep);
    return rep;
    });
}

VerdictReport q_homogeneity_check(const PointFunction& phi, long alpha, const SampleSet& s,
                                  const std::vector<Rational>& rationals) {
    for (const auto& r : rationals)
        if (r.is_zero())
            fail(Errc::ParameterOutOfRange, "scaling rationals must be nonzero");
    if (rationals.empty())
        fail(Errc::ParameterOutOfRange, "at least one scaling rational is required");
    return guarded("q_homogeneity_check", "phi(r*x) = r^alpha*phi(x)", [&] {
    const size_t count = s.size() * rationals.size();
    auto sides = [&](size_t idx) {
        const FieldElement& x = s.elements[idx / rationals.size()];
        const Rational& r = rationals[idx % rationals.size()];
        return std::make_pair(phi(x * r), phi(x) * r.pow(alpha));
    };
    VerdictReport rep = run_identity_check(
        "q_homogeneity_check", "phi(r*x) = r^alpha*phi(x)", count,
        [&](size_t idx) {
            auto [lhs, rhs] = sides(idx);
            return lhs == rhs;
        },
        [&](size_t idx) {
            auto [lhs, rhs] = sides(idx);
            Witness w;
            w.inputs = {{"x", s.elements[idx / rationals.size()].to_string()},
                        {"r", rationals[idx % rationals.size()].to_string()}};
            w.lhs = lhs.to_string();
            w.rhs = rhs.to_string();
            return w;
        });
    if (phi.tower)
        rep.assumptions = phi.tower->assumptions();
    rep.notes.push_back("alpha = " + std::to_string(alpha));
    return rep;
    });
}

} // namespace derivlab
