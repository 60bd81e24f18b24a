#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "derivlab/tower.hpp"

namespace derivlab {

struct SampleSet {
    std::vector<FieldElement> elements;
    std::vector<std::string> constraints;

    size_t size() const { return elements.size(); }
};

// Deterministic per-tower sample list: small integers and rationals, degree
// <= 2 polynomials in the transcendental generator, mixed algebraic elements.
// All nonzero.
SampleSet default_samples(const TowerPtr& K, size_t count = 20);

FieldElement random_element(const TowerPtr& K, std::mt19937_64& rng, int coeff_bound = 4);
FieldElement random_nonzero(const TowerPtr& K, std::mt19937_64& rng, int coeff_bound = 4);
SampleSet random_samples(const TowerPtr& K, size_t count, std::mt19937_64& rng);

SampleSet filter_samples(SampleSet s, const std::function<bool(const FieldElement&)>& keep,
                         const std::string& label);
// Keep x with x != 0 and c*x^n + d != 0.
SampleSet mobius_pole_free(SampleSet s, const MobiusCoeffs& M, long n);

} // namespace derivlab
