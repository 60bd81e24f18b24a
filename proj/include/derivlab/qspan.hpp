#pragma once

#include <optional>
#include <vector>

#include "derivlab/tower.hpp"

namespace derivlab {

// Lift every element into the tallest tower present; fails with TowerMismatch
// when the towers are not nested.
std::vector<FieldElement> to_common_tower(std::vector<FieldElement> elems);

// Exact Q-coordinates of each element over a shared flattened basis: the set
// is scaled by a common denominator, then indexed by residue leaf path and
// power of the transcendental generator. Columns align with input order.
std::vector<std::vector<Rational>> flatten_to_q(const std::vector<FieldElement>& elems);

bool q_linearly_independent(const std::vector<FieldElement>& elems);

// Coordinates of x in span(basis) over Q, or nullopt when x is outside.
std::optional<std::vector<Rational>> coordinates_in_span(
    const std::vector<FieldElement>& basis, const FieldElement& x);

// A Q-basis of span(U) ∩ span(V).
std::vector<FieldElement> span_intersection(const std::vector<FieldElement>& U,
                                            const std::vector<FieldElement>& V);

} // namespace derivlab
