#pragma once

#include <vector>

#include "derivlab/calculus.hpp"
#include "derivlab/maps.hpp"
#include "derivlab/report.hpp"
#include "derivlab/samples.hpp"
#include "derivlab/tower.hpp"

namespace derivlab {

// f(x^k) = k*x^(k-1)*f(x), the power rule along the k-th power substitution.
VerdictReport check_power_rule(const AdditiveMap& f, long k, const SampleSet& s);

// f(1/x) = f(x)/x^2, the Jurkat-Kurepa reciprocal equation; the report also
// runs the linearity check and records whether the verdicts agree.
VerdictReport check_jurkat_kurepa(const AdditiveMap& f, const SampleSet& s);

// f(x^n) = c*x^k*f(x^m), the Nishiyama-Horinouchi family.
VerdictReport check_nishiyama(const AdditiveMap& f, const Rational& c, long n, long m,
                              long k, const SampleSet& s);

// 3 sub-verdicts: the hypothesis f(x^n) = x^(n-m)*g(x^m), the split parts F
// and G passing the Leibniz check, and the proportionality n*F = m*G.
VerdictReport check_theorem1(const AdditiveMap& f, const AdditiveMap& g, long n, long m,
                             const SampleSet& s);

// phi(x) = f(x^n) - x^(n-m)*g(x^m)
FieldElement phi_power(const AdditiveMap& f, const AdditiveMap& g, long n, long m,
                       const FieldElement& x);

// PASS iff phi(x) = (f(1) - g(1))*x^n on all samples, the forward direction
// for solution-shaped pairs. The report notes whether the structural
// derivation parts satisfy g_der = (n/m)*f_der when that is decidable.
VerdictReport verify_phi_power(const AdditiveMap& f, const AdditiveMap& g, long n, long m,
                               const SampleSet& s);

// With psi(x) = f(1/x) - g(x)/x^2, checks
//   u^2*(u+1)^2*[psi(u*(u+1)) - psi(u) + psi(u+1)] + u^2*g(1) = 2*u*g(u) - g(u^2),
// which follows from additivity alone and must pass for every additive pair.
VerdictReport chi_transform_identity(const AdditiveMap& f, const AdditiveMap& g,
                                     const SampleSet& s);

// Two sub-verdicts around phi(x) = f(x^n) - kappa*x^(n-m)*f(x^m): the
// composite identity phi(x^n) + kappa*x^(n(n-m))*phi(x^m) =
// f(x^(n^2)) - kappa^2*x^(n^2-m^2)*f(x^(m^2)) (pure algebra), and the
// proportionality constraint (n - kappa*m)*F(x) = 0 for the split part F.
VerdictReport lemma21_composite(const AdditiveMap& f, const Rational& kappa, long n,
                                long m, const SampleSet& s);

// phi(x) = f((a*x^n+b)/(c*x^n+d)) - x^(n-1)*g(x)/(c*x^n+d)^2
FieldElement phi_mobius(const AdditiveMap& f, const AdditiveMap& g, long n,
                        const MobiusCoeffs& M, const FieldElement& x);

// Forward check for the Mobius-substitution equation: with f = F + alpha*id
// and g = n*det(M)*F + beta*id for a derivation F, PASS iff
// phi(x) = alpha*M(x^n) - beta*x^n/(c*x^n+d)^2 on all samples.
// Excluded parameters: c = 0 with n = 1, and d = 0 with n = -1.
VerdictReport verify_thm22_forward(const AdditiveMap& F_der, const Rational& alpha,
                                   const Rational& beta, long n, const MobiusCoeffs& M,
                                   const SampleSet& s);

// f((a*x^n+b)/(c*x^n+d)) = x^(n-1)*g(x)/(c*x^n+d)^2
VerdictReport check_star(const AdditiveMap& f, const AdditiveMap& g, long n,
                         const MobiusCoeffs& M, const SampleSet& s);

// f((a*x^n+b)/(c*x^n+d)) = (a*g(x)^n+b)/(c*g(x)^n+d)
VerdictReport check_triangle(const AdditiveMap& f, const AdditiveMap& g, long n,
                             const MobiusCoeffs& M, const SampleSet& s);

// phi(x) = f(x^n) - f(x)^n with c = f(1) - f(1)^n; verifies phi(x) = c*x^n,
// then branches on f(1)^(n-1): != 1 checks f(x) = f(1)*x, = 1 checks the
// homomorphism law f(u*v) = f(u)*f(v)*f(1)^(n-2) and reports the branch.
VerdictReport check_linearity_theorem(const AdditiveMap& f, long n, const SampleSet& s);

// phi(r*x) = r^alpha*phi(x) for every sample x and listed rational r.
VerdictReport q_homogeneity_check(const PointFunction& phi, long alpha, const SampleSet& s,
                                  const std::vector<Rational>& rationals);

} // namespace derivlab
