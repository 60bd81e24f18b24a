#pragma once

#include <functional>
#include <random>
#include <vector>

#include "derivlab/maps.hpp"
#include "derivlab/report.hpp"
#include "derivlab/samples.hpp"
#include "derivlab/tower.hpp"

namespace derivlab {

// Evaluable unary function on a tower, closed over maps, powers, or Mobius
// substitutions. Evaluation is exact; the optional domain predicate guards
// poles and span restrictions.
struct PointFunction {
    TowerPtr tower;
    std::function<FieldElement(const FieldElement&)> fn;
    std::function<bool(const FieldElement&)> domain; // empty means everywhere

    FieldElement operator()(const FieldElement& x) const;
    bool in_domain(const FieldElement& x) const;

    static PointFunction from_map(const AdditiveMap& f);
    static PointFunction constant(const FieldElement& c);
};

// x -> f(x + h) - f(x)
PointFunction delta(const PointFunction& f, const FieldElement& h);

// Superposition delta_{h1} ... delta_{hk} f; empty span list returns f.
PointFunction delta_multi(const PointFunction& f, const std::vector<FieldElement>& spans);

// PASS iff n+1 nested differences annihilate f on tuples drawn from the
// sample set (one tuple per sample, spans rotated through the set).
VerdictReport poly_degree_check(const PointFunction& f, long n, const SampleSet& samples);

// Recover F(y1..yn) = delta_{y1..yn} f(x) / n! from the trace f of a
// symmetric n-additive F, checking the value is basepoint-independent.
FieldElement trace_to_multiadditive(const PointFunction& f, long n,
                                    const std::vector<FieldElement>& tuple,
                                    const std::vector<FieldElement>& basepoints);
// Default basepoints: 0, 1, and five random elements.
FieldElement trace_to_multiadditive(const PointFunction& f, long n,
                                    const std::vector<FieldElement>& tuple,
                                    std::mt19937_64& rng);

std::vector<FieldElement> default_basepoints(const TowerPtr& K, std::mt19937_64& rng,
                                             size_t random_count = 5);

class MultiAdditiveMap {
public:
    using Evaluator = std::function<FieldElement(const std::vector<FieldElement>&)>;

    MultiAdditiveMap(TowerPtr K, size_t arity, Evaluator eval, bool symmetric);

    size_t arity() const { return arity_; }
    bool symmetric() const { return symmetric_; }
    const TowerPtr& tower() const { return tower_; }

    FieldElement eval(const std::vector<FieldElement>& xs) const;
    FieldElement operator()(const std::vector<FieldElement>& xs) const { return eval(xs); }

    // x -> F(x, ..., x)
    PointFunction trace() const;

    // Randomized certificates; each tested instance is decided exactly.
    VerdictReport certify_slot_additivity(std::mt19937_64& rng, int trials_per_slot = 32) const;
    VerdictReport certify_symmetry(std::mt19937_64& rng, int trials = 16) const;

private:
    TowerPtr tower_;
    size_t arity_;
    Evaluator eval_;
    bool symmetric_;
};

// Traces f_0..f_n of the unique decomposition p = sum f_k into traces of
// symmetric k-additive maps, extracted by forward differences at 0.
struct PolynomialDecomposition {
    long degree_bound = 0;
    std::vector<PointFunction> traces; // index = homogeneity degree

    FieldElement eval_sum(const FieldElement& x) const;
};

PolynomialDecomposition decompose_polynomial(const PointFunction& p, long n,
                                             const SampleSet& samples);

// Phi(x1..xn) = f(prod x_i) - (1/C(n,m)) sum_{|I|=m} (prod_{j not in I} x_j) g(prod_{i in I} x_i)
MultiAdditiveMap symmetrize_thm21(const AdditiveMap& f, const AdditiveMap& g, long n, long m);

// Phi(x1..xn) = f(prod x_i) - prod f(x_i)
MultiAdditiveMap symmetrize_linearity(const AdditiveMap& f, long n);

} // namespace derivlab
