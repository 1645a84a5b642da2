#include "plategen/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace plategen {

namespace {

// Everything below re-derives the match definition with the plainest code
// available so it can disagree with the production matcher if either one
// drifts from the contract.

Rational dist2(const Point& a, const Point& b) {
    return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
}

std::set<Point> naive_candidates(const Shape& shape, Layer layer) {
    std::set<Point> out;
    std::vector<CarrierRun> runs = shape.runs_on(layer);
    for (const CarrierRun& r : runs) {
        out.insert(r.p1());
        out.insert(r.p2());
    }
    for (const CarrierRun& r : runs) {
        for (const CarrierRun& q : runs) {
            auto x = Carrier::intersect(r.carrier, q.carrier);
            if (!x) continue;
            Rational tr = r.carrier.tau(*x);
            Rational tq = q.carrier.tau(*x);
            if (r.span.lo <= tr && tr <= r.span.hi && q.span.lo <= tq && tq <= q.span.hi)
                out.insert(*x);
        }
    }
    for (const TaggedPoint& p : shape.points_on(layer)) out.insert(p.pos);
    return out;
}

std::set<Point> naive_tag_positions(const Shape& shape, Layer layer, const std::string& tag) {
    std::set<Point> out;
    for (const TaggedPoint& p : shape.points()) {
        if (p.layer == layer && p.tag == tag) out.insert(p.pos);
    }
    return out;
}

}  // namespace

std::vector<Transform> brute_force_matches(const Shape& lhs, const Shape& canvas,
                                           const MatchOptions& opts,
                                           const OracleBounds& bounds) {
    if (lhs.empty()) throw EmptyLeftHandSide("pattern has no segments and no points");

    // Anchor feature, per the match definition.
    bool from_points = lhs.runs().empty();
    Layer anchor_layer = Layer::LAYOUT;
    Point e1, e2;
    TaggedPoint q1;
    std::optional<TaggedPoint> q2;
    if (from_points) {
        q1 = lhs.points()[0];
        for (const TaggedPoint& p : lhs.points()) {
            if (p.pos == q1.pos) continue;
            if (!q2 || dist2(p.pos, q1.pos) < dist2(q2->pos, q1.pos)) q2 = p;
        }
    } else {
        CarrierRun first = lhs.runs()[0];
        anchor_layer = first.layer;
        e1 = first.p1();
        e2 = first.p2();
    }

    std::map<Layer, std::set<Point>> canvas_candidates;
    for (Layer layer : kAllLayers) canvas_candidates[layer] = naive_candidates(canvas, layer);

    // Feature points of the pattern, with the layer whose candidates they
    // may land on. Translations are generated from every (feature,
    // candidate) pairing; the anchored filter below discards the rest.
    std::vector<std::pair<Layer, Point>> features;
    for (const CarrierRun& r : lhs.runs()) {
        features.push_back({r.layer, r.p1()});
        features.push_back({r.layer, r.p2()});
    }
    for (const TaggedPoint& p : lhs.points()) features.push_back({p.layer, p.pos});

    std::vector<int> rots = opts.rotate ? std::vector<int>{0, 1, 2, 3} : std::vector<int>{0};
    std::vector<int> mirrors = opts.mirror ? std::vector<int>{0, 1} : std::vector<int>{0};
    std::vector<Rational> scales = opts.scale ? bounds.scales : std::vector<Rational>{Rational(1)};

    auto anchored = [&](const Transform& t) {
        if (from_points) {
            const std::set<Point>& c1 = naive_tag_positions(canvas, q1.layer, q1.tag);
            if (opts.scale && q2) {
                const std::set<Point> c2 = naive_tag_positions(canvas, q2->layer, q2->tag);
                return c1.count(t.apply(q1.pos)) != 0 && c2.count(t.apply(q2->pos)) != 0;
            }
            if (opts.scale && t.scale != Rational(1)) return false;
            return c1.count(t.apply(q1.pos)) != 0;
        }
        const std::set<Point>& cand = canvas_candidates[anchor_layer];
        if (opts.scale) return cand.count(t.apply(e1)) != 0 && cand.count(t.apply(e2)) != 0;
        return cand.count(t.apply(e1)) != 0 || cand.count(t.apply(e2)) != 0;
    };

    std::size_t hypotheses = 0;
    std::map<std::string, Transform> by_image;
    for (int rot : rots) {
        for (int mir : mirrors) {
            for (const Rational& s : scales) {
                Transform lin;
                lin.rot = rot;
                lin.mirror = mir != 0;
                lin.scale = s;
                std::set<Point> translations;
                for (const auto& [layer, p] : features) {
                    Point image = lin.apply_linear(p);
                    for (const Point& c : canvas_candidates[layer])
                        translations.insert(c - image);
                }
                for (const Point& tr : translations) {
                    if (++hypotheses > bounds.budget)
                        throw OracleBudgetExceeded("brute-force matcher passed " +
                                                   std::to_string(bounds.budget) +
                                                   " hypotheses");
                    Transform t = lin;
                    t.translate = tr;
                    if (!anchored(t)) continue;
                    Shape image = lhs.transformed(t);
                    if (!Shape::part_of(image, canvas)) continue;
                    std::string key = image.canonical_text();
                    auto [it, fresh] = by_image.emplace(key, t);
                    if (!fresh && t < it->second) it->second = t;
                }
            }
        }
    }
    std::vector<Transform> out;
    out.reserve(by_image.size());
    for (const auto& [image, t] : by_image) out.push_back(t);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace plategen
