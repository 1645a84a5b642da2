#pragma once

#include <cstddef>
#include <vector>

#include "plategen/geometry.hpp"
#include "plategen/matcher.hpp"

namespace plategen {

// Bounds for the brute-force reference matcher. The transform group is
// infinite (translations and scales are dense), so the oracle enumerates a
// caller-supplied finite scale list and every translation that puts some
// feature point of the pattern onto some candidate point of the canvas,
// then keeps exactly the anchored subshape occurrences. Because a match is
// by definition anchored, this blunt enumeration finds all of them.
struct OracleBounds {
    std::vector<Rational> scales = {Rational(1)};  // tried only when opts.scale
    std::size_t budget = 4000000;                  // max hypotheses before giving up
};

// Reference implementation of find_matches: same contract, no cleverness.
// Throws OracleBudgetExceeded when the hypothesis count passes the budget.
std::vector<Transform> brute_force_matches(const Shape& lhs, const Shape& canvas,
                                           const MatchOptions& opts,
                                           const OracleBounds& bounds);

}  // namespace plategen
