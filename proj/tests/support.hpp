// Shared helpers for the test binaries: an independent scale-set derivation
// so the brute-force oracle can be handed every scale a match could use.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "plategen/geometry.hpp"
#include "plategen/matcher.hpp"

namespace plategen::testsupport {

// Every scale a match can use satisfies s^2 = |c2-c1|^2 / |e2-e1|^2 for
// some candidate pair, so collect the rational square roots of those
// ratios.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r.sign() < 0) return std::nullopt;
    auto isqrt = [](std::int64_t v) -> std::optional<std::int64_t> {
        if (v < 0) return std::nullopt;
        std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
        for (std::int64_t k = root > 1 ? root - 2 : 0; k <= root + 2; ++k)
            if (k * k == v) return k;
        return std::nullopt;
    };
    auto n = isqrt(r.num());
    auto d = isqrt(r.den());
    if (!n || !d) return std::nullopt;
    return Rational(*n, *d);
}

inline Rational dist2(const Point& a, const Point& b) {
    return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
}

// Anchor pair of a pattern, mirroring the documented match definition.
inline std::pair<Point, Point> anchor_pair(const Shape& lhs) {
    auto runs = lhs.runs();
    if (!runs.empty()) return {runs[0].p1(), runs[0].p2()};
    auto pts = lhs.points();
    Point q1 = pts[0].pos;
    std::optional<Point> q2;
    for (const auto& p : pts) {
        if (p.pos == q1) continue;
        if (!q2 || dist2(p.pos, q1) < dist2(*q2, q1)) q2 = p.pos;
    }
    return {q1, q2.value_or(q1)};
}

inline std::vector<Rational> derive_scales(const Shape& lhs, const Shape& canvas) {
    std::set<Rational> scales{Rational(1)};
    auto [e1, e2] = anchor_pair(lhs);
    if (e1 == e2) return {scales.begin(), scales.end()};
    Rational base = dist2(e1, e2);
    // Pool candidates across layers: the two pinned anchor points may sit
    // on different layers (a two-point pattern can span layers).
    std::set<Point> pool;
    for (Layer layer : kAllLayers) {
        for (const Point& p : candidate_points(canvas, layer)) pool.insert(p);
        for (const TaggedPoint& p : canvas.points_on(layer)) pool.insert(p.pos);
    }
    std::vector<Point> cand(pool.begin(), pool.end());
    for (std::size_t i = 0; i < cand.size(); ++i) {
        for (std::size_t j = i + 1; j < cand.size(); ++j) {
            auto s = rational_sqrt(dist2(cand[i], cand[j]) / base);
            if (s && s->sign() > 0) scales.insert(*s);
        }
    }
    return {scales.begin(), scales.end()};
}

}  // namespace plategen::testsupport
