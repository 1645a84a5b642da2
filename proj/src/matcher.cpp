#include "plategen/matcher.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace plategen {

namespace {

// Squared distance; exact, used only to pick the scale reference point.
Rational dist2(const Point& a, const Point& b) {
    Rational dx = a.x - b.x;
    Rational dy = a.y - b.y;
    return dx * dx + dy * dy;
}

struct Anchor {
    bool from_points = false;
    // segment anchor
    Layer layer = Layer::LAYOUT;
    Point e1, e2;
    // point anchor
    TaggedPoint q1;
    std::optional<TaggedPoint> q2;  // nearest second position, for scaling
};

Anchor compute_anchor(const Shape& lhs) {
    if (lhs.empty()) throw EmptyLeftHandSide("pattern has no segments and no points");
    Anchor a;
    auto runs = lhs.runs();
    if (!runs.empty()) {
        a.from_points = false;
        a.layer = runs[0].layer;
        a.e1 = runs[0].p1();
        a.e2 = runs[0].p2();
        return a;
    }
    auto pts = lhs.points();
    a.from_points = true;
    a.q1 = pts[0];
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].pos == a.q1.pos) continue;
        if (!a.q2 || dist2(pts[i].pos, a.q1.pos) < dist2(a.q2->pos, a.q1.pos)) a.q2 = pts[i];
    }
    return a;
}

// Linear factor with unit scale for one (rot, mirror) choice.
Transform unit_linear(int rot, bool mirror) {
    Transform t;
    t.rot = rot;
    t.mirror = mirror;
    return t;
}

// Solve c2 - c1 == s * d for s > 0; d != 0.
std::optional<Rational> solve_scale(const Point& d, const Point& c1, const Point& c2) {
    Rational vx = c2.x - c1.x;
    Rational vy = c2.y - c1.y;
    Rational s;
    if (!d.x.is_zero()) {
        s = vx / d.x;
        if (s * d.y != vy) return std::nullopt;
    } else {
        if (!vx.is_zero()) return std::nullopt;
        if (d.y.is_zero()) return std::nullopt;
        s = vy / d.y;
    }
    if (s.sign() <= 0) return std::nullopt;
    return s;
}

// Candidate positions carrying a given tag on a given layer.
std::vector<Point> tag_positions(const Shape& shape, Layer layer, const std::string& tag) {
    std::vector<Point> out;
    for (const TaggedPoint& p : shape.points_on(layer))
        if (p.tag == tag) out.push_back(p.pos);
    return out;
}

// Enumerates every anchored transform hypothesis, filters by a cheap
// anchor-feature coverage probe, and hands survivors of the full subshape
// test to the sink. Returns early when the sink returns false.
bool for_each_match(const Shape& lhs, const Shape& canvas, const MatchOptions& opts,
                    const std::function<bool(const Transform&)>& sink) {
    Anchor anchor = compute_anchor(lhs);
    std::vector<int> rots = opts.rotate ? std::vector<int>{0, 1, 2, 3} : std::vector<int>{0};
    std::vector<int> mirrors = opts.mirror ? std::vector<int>{0, 1} : std::vector<int>{0};

    auto try_transform = [&](Transform t) -> bool {
        if (anchor.from_points) {
            TaggedPoint probe{anchor.q1.layer, t.apply(anchor.q1.pos), anchor.q1.tag};
            if (!canvas.has_point(probe)) return true;
        } else {
            if (!canvas.covers_segment(anchor.layer, t.apply(anchor.e1), t.apply(anchor.e2)))
                return true;
        }
        if (!Shape::part_of(lhs.transformed(t), canvas)) return true;
        return sink(t);
    };

    if (!anchor.from_points) {
        std::vector<Point> cand = candidate_points(canvas, anchor.layer);
        for (int rot : rots) {
            for (int mir : mirrors) {
                Transform lin = unit_linear(rot, mir != 0);
                if (opts.scale) {
                    Point d = lin.apply_linear(anchor.e2 - anchor.e1);
                    for (const Point& c1 : cand) {
                        for (const Point& c2 : cand) {
                            if (c1 == c2) continue;
                            auto s = solve_scale(d, c1, c2);
                            if (!s) continue;
                            Transform t = lin;
                            t.scale = *s;
                            t.translate = c1 - t.apply_linear(anchor.e1);
                            if (!try_transform(t)) return false;
                        }
                    }
                } else {
                    for (const Point& c : cand) {
                        for (const Point& e : {anchor.e1, anchor.e2}) {
                            Transform t = lin;
                            t.translate = c - t.apply_linear(e);
                            if (!try_transform(t)) return false;
                        }
                    }
                }
            }
        }
        return true;
    }

    std::vector<Point> cand1 = tag_positions(canvas, anchor.q1.layer, anchor.q1.tag);
    bool scaled = opts.scale && anchor.q2.has_value();
    for (int rot : rots) {
        for (int mir : mirrors) {
            Transform lin = unit_linear(rot, mir != 0);
            if (scaled) {
                Point d = lin.apply_linear(anchor.q2->pos - anchor.q1.pos);
                std::vector<Point> cand2 =
                    tag_positions(canvas, anchor.q2->layer, anchor.q2->tag);
                for (const Point& c1 : cand1) {
                    for (const Point& c2 : cand2) {
                        if (c1 == c2) continue;
                        auto s = solve_scale(d, c1, c2);
                        if (!s) continue;
                        Transform t = lin;
                        t.scale = *s;
                        t.translate = c1 - t.apply_linear(anchor.q1.pos);
                        if (!try_transform(t)) return false;
                    }
                }
            } else {
                // With scaling enabled but only one distinct position, only
                // the unit scale is attempted.
                for (const Point& c : cand1) {
                    Transform t = lin;
                    t.translate = c - t.apply_linear(anchor.q1.pos);
                    if (!try_transform(t)) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

std::vector<Point> candidate_points(const Shape& shape, Layer layer) {
    std::set<Point> out;
    auto runs = shape.runs_on(layer);
    for (const CarrierRun& run : runs) {
        out.insert(run.p1());
        out.insert(run.p2());
    }
    for (std::size_t i = 0; i < runs.size(); ++i) {
        for (std::size_t j = i + 1; j < runs.size(); ++j) {
            if (runs[i].carrier == runs[j].carrier) continue;
            auto x = Carrier::intersect(runs[i].carrier, runs[j].carrier);
            if (!x) continue;
            Rational ti = runs[i].carrier.tau(*x);
            if (ti < runs[i].span.lo || runs[i].span.hi < ti) continue;
            Rational tj = runs[j].carrier.tau(*x);
            if (tj < runs[j].span.lo || runs[j].span.hi < tj) continue;
            out.insert(*x);
        }
    }
    for (const TaggedPoint& p : shape.points_on(layer)) out.insert(p.pos);
    return std::vector<Point>(out.begin(), out.end());
}

std::vector<Transform> find_matches(const Shape& lhs, const Shape& canvas,
                                    const MatchOptions& opts) {
    // image text -> smallest transform producing it
    std::map<std::string, Transform> by_image;
    for_each_match(lhs, canvas, opts, [&](const Transform& t) {
        std::string image = lhs.transformed(t).canonical_text();
        auto [it, fresh] = by_image.emplace(image, t);
        if (!fresh && t < it->second) it->second = t;
        return true;
    });
    std::vector<Transform> out;
    out.reserve(by_image.size());
    for (const auto& [image, t] : by_image) out.push_back(t);
    std::sort(out.begin(), out.end());
    return out;
}

bool exists_match(const Shape& lhs, const Shape& canvas, const MatchOptions& opts) {
    bool found = false;
    for_each_match(lhs, canvas, opts, [&](const Transform&) {
        found = true;
        return false;
    });
    return found;
}

}  // namespace plategen
