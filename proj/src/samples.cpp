#include "derivlab/samples.hpp"

#include <algorithm>

#include "derivlab/error.hpp"

namespace derivlab {

SampleSet default_samples(const TowerPtr& K, size_t count) {
    SampleSet s;
    s.constraints.push_back("nonzero");
    auto push = [&](const FieldElement& e) {
        if (s.elements.size() >= count || e.is_zero())
            return;
        if (std::find(s.elements.begin(), s.elements.end(), e) == s.elements.end())
            s.elements.push_back(e);
    };
    const std::vector<Rational> rats = {Rational(1),     Rational(2),     Rational(3),
                                        Rational(-1),    Rational(-2),    Rational(1, 2),
                                        Rational(-1, 3), Rational(3, 2),  Rational(2, 5),
                                        Rational(-5, 2)};
    for (const auto& r : rats)
        push(K->from_rational(r));
    for (const auto& name : K->generator_names()) {
        const FieldElement g = K->generator(name);
        push(g);
        push(g + K->one());
        push(g - K->one());
        push(g * Rational(2) + K->one());
        push(g + K->from_rational(Rational(1, 2)));
    }
    if (K->has_transcendental()) {
        const FieldElement t = K->generator(K->transcendental_name());
        push(t * t);
        push(t * t + K->one());
        push(t * t + t + K->one());
        push(t * t * Rational(2) - t);
    }
    if (K->generator_names().size() >= 2) {
        const auto names = K->generator_names();
        push(K->generator(names[0]) + K->generator(names[1]));
    }
    for (long v = 4; s.elements.size() < count; ++v) {
        push(K->integer(v));
        push(K->from_rational(Rational(1, v)));
    }
    return s;
}

FieldElement random_element(const TowerPtr& K, std::mt19937_64& rng, int coeff_bound) {
    std::uniform_int_distribution<int> small(-coeff_bound, coeff_bound);
    std::uniform_int_distribution<int> den(1, 3);
    auto r = [&] { return Rational(small(rng), den(rng)); };
    FieldElement e = K->from_rational(r());
    for (const auto& name : K->generator_names()) {
        const FieldElement g = K->generator(name);
        e += g * r() + g * g * r();
    }
    return e;
}

FieldElement random_nonzero(const TowerPtr& K, std::mt19937_64& rng, int coeff_bound) {
    for (;;) {
        FieldElement e = random_element(K, rng, coeff_bound);
        if (!e.is_zero())
            return e;
    }
}

SampleSet random_samples(const TowerPtr& K, size_t count, std::mt19937_64& rng) {
    SampleSet s;
    s.constraints.push_back("nonzero");
    while (s.elements.size() < count)
        s.elements.push_back(random_nonzero(K, rng));
    return s;
}

SampleSet filter_samples(SampleSet s, const std::function<bool(const FieldElement&)>& keep,
                         const std::string& label) {
    std::vector<FieldElement> kept;
    for (auto& e : s.elements)
        if (keep(e))
            kept.push_back(std::move(e));
    s.elements = std::move(kept);
    s.constraints.push_back(label);
    return s;
}

SampleSet mobius_pole_free(SampleSet s, const MobiusCoeffs& M, long n) {
    auto keep = [&](const FieldElement& x) {
        if (x.is_zero())
            return false;
        const FieldElement xn = x.pow(n);
        return !(xn * M.c + x.tower()->from_rational(M.d)).is_zero();
    };
    return filter_samples(std::move(s), keep, "mobius-pole-free" + M.to_string() + "^" +
                                                  std::to_string(n));
}

} // namespace derivlab
