#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plategen/rational.hpp"

namespace plategen {

// The five drawing layers. Enum order is the canonical output order.
enum class Layer : int { LAYOUT = 0, MARK = 1, DETAIL = 2, WALL = 3, CONFIG = 4 };

constexpr std::array<Layer, 5> kAllLayers = {Layer::LAYOUT, Layer::MARK, Layer::DETAIL,
                                             Layer::WALL, Layer::CONFIG};

const char* layer_name(Layer layer);
std::optional<Layer> layer_from_name(const std::string& name);

struct Point {
    Rational x;
    Rational y;

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    // Lexicographic order; the tie-breaking order used everywhere.
    friend bool operator<(const Point& a, const Point& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
    friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
    std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

// Infinite line a*x + b*y = c with integer coefficients, gcd-reduced,
// sign-normalized so a > 0, or a == 0 and b > 0. Every line has exactly one
// such representation, which makes carriers directly comparable.
struct Carrier {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;

    static Carrier through(const Point& p, const Point& q);

    bool contains(const Point& p) const;

    // Canonical direction along the carrier: the lexicographically positive
    // choice of +-(b, -a). tau() is strictly increasing along the line in
    // this direction and agrees with lexicographic point order.
    std::pair<std::int64_t, std::int64_t> direction() const;
    Rational tau(const Point& p) const;
    Point point_at(const Rational& t) const;

    // Crossing point of two non-parallel carriers.
    static std::optional<Point> intersect(const Carrier& l, const Carrier& m);

    friend bool operator==(const Carrier& l, const Carrier& m) {
        return l.a == m.a && l.b == m.b && l.c == m.c;
    }
    friend bool operator<(const Carrier& l, const Carrier& m) {
        if (l.a != m.a) return l.a < m.a;
        if (l.b != m.b) return l.b < m.b;
        return l.c < m.c;
    }
};

// Closed interval [lo, hi] of tau-coordinates on a carrier, lo < hi.
struct Interval {
    Rational lo;
    Rational hi;
    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

struct Segment {
    Layer layer;
    Point p1;  // p1 < p2 lexicographically
    Point p2;
};

struct TaggedPoint {
    Layer layer;
    Point pos;
    std::string tag;

    friend bool operator==(const TaggedPoint& a, const TaggedPoint& b) {
        return a.layer == b.layer && a.pos == b.pos && a.tag == b.tag;
    }
    friend bool operator<(const TaggedPoint& a, const TaggedPoint& b) {
        if (a.layer != b.layer) return static_cast<int>(a.layer) < static_cast<int>(b.layer);
        if (a.pos != b.pos) return a.pos < b.pos;
        return a.tag < b.tag;
    }
};

// One maximal run on one carrier of one layer; the unit the matcher and the
// renderer consume.
struct CarrierRun {
    Layer layer;
    Carrier carrier;
    Interval span;
    Point p1() const { return carrier.point_at(span.lo); }
    Point p2() const { return carrier.point_at(span.hi); }
};

struct Box {
    Point min;
    Point max;
};

// Similarity transform with the fixed composition order: mirror across the
// x-axis first, then rotate by rot quarter turns counter-clockwise, then
// scale by a positive rational, then translate.
struct Transform {
    bool mirror = false;
    int rot = 0;  // 0..3 quarter turns CCW
    Rational scale = Rational(1);
    Point translate{Rational(0), Rational(0)};

    Point apply(const Point& p) const;
    Point apply_linear(const Point& p) const;  // without translation

    static Transform compose(const Transform& outer, const Transform& inner);
    Transform inverse() const;

    friend bool operator==(const Transform& s, const Transform& t) {
        return s.mirror == t.mirror && s.rot == t.rot && s.scale == t.scale &&
               s.translate == t.translate;
    }
    friend bool operator!=(const Transform& s, const Transform& t) { return !(s == t); }
    // Deterministic report order: by translation, then rotation, mirror, scale.
    friend bool operator<(const Transform& s, const Transform& t);

    std::string str() const;

private:
    // Row-major 2x2 linear part and its decomposition back into the
    // canonical (mirror, rot, scale) factors.
    std::array<Rational, 4> linear() const;
    static Transform from_linear(const std::array<Rational, 4>& l, const Point& translate);
};

// A drawing: per (layer, carrier) a set of disjoint, non-touching closed
// intervals (the maximal-line canonical form), plus a set of tagged points.
// Zero-measure residues never survive an operation.
class Shape {
public:
    Shape() = default;

    void add_segment(Layer layer, const Point& p, const Point& q);
    void add_point(Layer layer, const Point& pos, const std::string& tag);
    void add(const Segment& s) { add_segment(s.layer, s.p1, s.p2); }
    void add(const TaggedPoint& p) { add_point(p.layer, p.pos, p.tag); }

    bool empty() const;
    std::size_t n_segments() const;
    std::size_t n_points() const { return points_.size(); }

    std::vector<CarrierRun> runs() const;                 // sorted (layer, carrier, lo)
    std::vector<Segment> segments() const;                // same order, as endpoint pairs
    std::vector<TaggedPoint> points() const;              // sorted
    std::vector<CarrierRun> runs_on(Layer layer) const;   // one layer only
    std::vector<TaggedPoint> points_on(Layer layer) const;

    static Shape sum(const Shape& a, const Shape& b);
    static Shape difference(const Shape& a, const Shape& b);
    static Shape intersection(const Shape& a, const Shape& b);
    static bool part_of(const Shape& sub, const Shape& super);

    // Fast probes used by the matcher's hypothesis filter.
    bool covers_segment(Layer layer, const Point& p, const Point& q) const;
    bool has_point(const TaggedPoint& p) const { return points_.count(p) != 0; }

    Shape transformed(const Transform& t) const;

    std::optional<Box> bbox() const;

    // Canonical text form; two shapes are equal iff their texts are equal.
    std::string canonical_text() const;
    std::uint64_t digest() const;  // FNV-1a 64 over canonical_text()

    friend bool operator==(const Shape& a, const Shape& b) {
        return a.lines_ == b.lines_ && a.points_ == b.points_;
    }
    friend bool operator!=(const Shape& a, const Shape& b) { return !(a == b); }

private:
    struct Key {
        Layer layer;
        Carrier carrier;
        friend bool operator==(const Key& a, const Key& b) {
            return a.layer == b.layer && a.carrier == b.carrier;
        }
        friend bool operator<(const Key& a, const Key& b) {
            if (a.layer != b.layer) return static_cast<int>(a.layer) < static_cast<int>(b.layer);
            return a.carrier < b.carrier;
        }
    };

    // Sorted, pairwise disjoint, non-touching (hi_i < lo_{i+1}).
    using IntervalSet = std::vector<Interval>;

    static void insert_interval(IntervalSet& set, Interval iv);
    static IntervalSet subtract_intervals(const IntervalSet& from, const IntervalSet& what);
    static IntervalSet intersect_intervals(const IntervalSet& a, const IntervalSet& b);
    static bool covers(const IntervalSet& outer, const IntervalSet& inner);

    std::map<Key, IntervalSet> lines_;
    std::set<TaggedPoint> points_;
};

std::uint64_t fnv1a64(const std::string& text);

}  // namespace plategen
