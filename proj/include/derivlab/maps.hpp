#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "derivlab/report.hpp"
#include "derivlab/samples.hpp"
#include "derivlab/tower.hpp"

namespace derivlab {

// Q-linear map on a tower field or on a finite-dimensional Q-span inside it.
// Variants: scaled identity, structural derivation (Leibniz extension),
// matrix map on a Q-span, sums, and rational scalings. Immutable.
class AdditiveMap {
public:
    AdditiveMap() = default;

    static AdditiveMap zero(const TowerPtr& K);
    static AdditiveMap identity(const TowerPtr& K);
    static AdditiveMap scaled_identity(const TowerPtr& K, const Rational& r);
    // f(x) = lambda*x for a fixed tower element lambda.
    static AdditiveMap scaled_identity(const FieldElement& lambda);

    FieldElement eval(const FieldElement& x) const;
    FieldElement operator()(const FieldElement& x) const { return eval(x); }

    AdditiveMap operator+(const AdditiveMap& o) const;
    AdditiveMap operator-(const AdditiveMap& o) const;
    AdditiveMap scale(const Rational& r) const;

    const TowerPtr& tower() const { return tower_; }
    // Whole tower unless a matrix map restricts the domain to a Q-span.
    bool whole_domain() const { return !span_.has_value(); }
    const std::vector<FieldElement>& span_basis() const;
    bool in_domain(const FieldElement& x) const;

    FieldElement at_one() const;

    // Images of the tower generators under the map's derivation part, when
    // the map is built purely from structural variants (no matrix part);
    // aligned with generator_names(). Decides derivation-part equality.
    std::optional<std::vector<FieldElement>> derivation_part_images() const;

    std::string describe() const;
    bool valid() const { return node_ != nullptr; }

    struct Node;

private:
    friend AdditiveMap derivation_extend(const TowerPtr&,
                                         const std::map<std::string, FieldElement>&);
    friend AdditiveMap matrix_map(const std::vector<FieldElement>&,
                                  const std::vector<FieldElement>&);
    AdditiveMap(TowerPtr K, std::shared_ptr<const Node> node,
                std::optional<std::vector<FieldElement>> span);

    TowerPtr tower_;
    std::shared_ptr<const Node> node_;
    std::optional<std::vector<FieldElement>> span_; // engaged iff QSpan domain
};

// The unique derivation on K with the given transcendental image; images of
// algebraic generators are forced by differentiating their minimal
// polynomials. Pass an empty assignment for towers without a transcendental
// generator (the zero derivation on algebraic towers).
AdditiveMap derivation_extend(const TowerPtr& K,
                              const std::map<std::string, FieldElement>& images);
AdditiveMap derivation_extend(const TowerPtr& K, const FieldElement& t_image);
AdditiveMap derivation_extend(const TowerPtr& K);

// The unique Q-linear map with basis[i] -> images[i], domain QSpan(basis).
AdditiveMap matrix_map(const std::vector<FieldElement>& basis,
                       const std::vector<FieldElement>& images);

// f = F + f(1)*id with F(1) = 0.
std::pair<AdditiveMap, FieldElement> linear_part_split(const AdditiveMap& f);

VerdictReport is_derivation_on_samples(const AdditiveMap& f, const SampleSet& samples);
VerdictReport is_linear_on_samples(const AdditiveMap& f, const SampleSet& samples);

} // namespace derivlab
