#include "derivlab/demos.hpp"

namespace derivlab {

const std::vector<DemoScenario>& bundled_demos() {
    static const std::vector<DemoScenario> demos = {
        {"thm21_forward",
         "f(x^n) = x^(n-m)*g(x^m) forces phi(x) = (f(1) - g(1))*x^n and n*F = m*G",
         R"(# forward suite along power substitutions
tower Q(t)
map D = d/dt with D(t) = 1
map f21 = D + 2*id
map g21 = 2*D + 3*id
map f31 = 2*D + 5*id
map g31 = 6*D + 5*id
check phi_power f=f21 g=g21 n=2 m=1
check phi_power f=f31 g=g31 n=3 m=1
check theorem1 f=f31 g=g31 n=3 m=1
check power_rule f=D k=3
check power_rule f=D k=-1
)"},
        {"nonlinear_witness",
         "additive maps on a subfield need not be linear: a projection witness",
         R"(# the coefficient-extraction projection is additive but not linear
tower Q(sqrt2 | x^2 - 2)
map s = matrix basis(1, sqrt2) images(0, 1)
check linear f=s expect=fail
check reciprocal f=s expect=fail
check derivation f=s expect=fail
)"},
        {"corollary21",
         "f(x^n) = c*x^k*f(x^m) for derivations on a radical tower (Nishiyama, Horinouchi)",
         R"(# square-root radical adjoined to Q(t); D extends with D(s) = 1/(2s)
tower Q(t, s | s^2 = t)
map D = d/dt with D(t) = 1
check nishiyama f=D c=2 n=2 m=1 k=1
check nishiyama f=D c=3/2 n=3 m=2 k=1
check power_rule f=D k=2
check power_rule f=D k=-3
)"},
        {"mobius_forward",
         "f(M(x^n)) = x^(n-1)*g(x)/(c*x^n+d)^2 with the chain-rule relation g = n*det(M)*F",
         R"(# forward checks along Mobius substitutions
tower Q(t)
map D = d/dt with D(t) = 1
map G = -2*D
check thm22_forward F=D alpha=2 beta=3 n=2 M=(1,1;1,2)
check star f=D g=G n=2 M=(2,3;1,1)
check star f=D g=D n=2 M=(2,3;1,1) expect=fail
)"},
        {"automorphism_triangle",
         "f(M(x^n)) = M(g(x)^n) holds for the conjugation automorphism, fails for scalings",
         R"(# conjugation commutes with rational Mobius substitutions
tower Q(sqrt2 | x^2 - 2)
map sigma = matrix basis(1, sqrt2) images(1, -sqrt2)
map twice = 2*id
check triangle f=sigma g=sigma n=2 M=(1,1;1,2)
check triangle f=twice g=twice n=1 M=(1,1;0,1) expect=fail
check linearity f=sigma n=2
)"},
        {"chi_universal",
         "the chi transform identity holds for every additive pair (f, g)",
         R"(# no hypothesis beyond additivity is needed
tower Q(t)
map D = d/dt with D(t) = 1
map f = D + 4*id
map g = -2*D
check chi f=f g=g
check chi f=D g=D
check lemma21 f=D kappa=2 n=2 m=1
check lemma21 f=D kappa=1 n=2 m=1 expect=fail
)"},
    };
    return demos;
}

const DemoScenario* find_demo(const std::string& name) {
    for (const auto& d : bundled_demos())
        if (d.name == name)
            return &d;
    return nullptr;
}

} // namespace derivlab
