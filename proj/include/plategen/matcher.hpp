#pragma once

#include <string>
#include <vector>

#include "plategen/geometry.hpp"

namespace plategen {

// Which parts of the transform group a rule may use. Translation is always
// available; everything else is opt-in.
struct MatchOptions {
    bool rotate = false;  // quarter turns
    bool mirror = false;  // reflection across the x-axis (applied first)
    bool scale = false;   // positive rational scale
};

// A match is a transform T with T(lhs) part of the canvas and T anchored:
// the image of the pattern's anchor feature lands on a candidate point of
// the canvas. Candidate points of a layer are the endpoints of its maximal
// runs, the crossings of two maximal runs (where the crossing lies on both
// closed spans), and the positions of its tagged points. The anchor feature
// is the first maximal run of the pattern in canonical order (its two
// endpoints; one of them must land on a candidate, both when scaling is
// enabled, since two pinned points determine the scale), or for a pattern
// with no segments its first tagged point in canonical order (its image
// must land on a same-layer same-tag point; with scaling, the image of the
// nearest second tagged point must land on a matching point as well, and a
// pattern without a second distinct position only gets scale 1).
//
// Matches that produce the same image are one match; the representative is
// the smallest transform in (translate, rot, mirror, scale) order, and the
// returned list is sorted by that same order.
std::vector<Transform> find_matches(const Shape& lhs, const Shape& canvas,
                                    const MatchOptions& opts);

// True iff find_matches would be non-empty; stops at the first hit.
bool exists_match(const Shape& lhs, const Shape& canvas, const MatchOptions& opts);

// The candidate anchor points of one layer of a shape, sorted and deduped.
std::vector<Point> candidate_points(const Shape& shape, Layer layer);

}  // namespace plategen
