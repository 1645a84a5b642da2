#include "plategen/geometry.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <numeric>

namespace plategen {

std::optional<Rational> parse_rational_text(const std::string& text) {
    std::size_t slash = text.find('/');
    auto parse_i64 = [](const std::string& s) -> std::optional<std::int64_t> {
        if (s.empty() || (s.size() == 1 && s[0] == '-')) return std::nullopt;
        std::size_t k = s[0] == '-' ? 1 : 0;
        for (; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') return std::nullopt;
        errno = 0;
        char* end = nullptr;
        long long v = std::strtoll(s.c_str(), &end, 10);
        if (errno != 0 || end != s.c_str() + s.size()) return std::nullopt;
        return static_cast<std::int64_t>(v);
    };
    auto num = parse_i64(slash == std::string::npos ? text : text.substr(0, slash));
    if (!num) return std::nullopt;
    std::int64_t den = 1;
    if (slash != std::string::npos) {
        auto d = parse_i64(text.substr(slash + 1));
        if (!d || *d == 0) return std::nullopt;
        den = *d;
    }
    try {
        return Rational(*num, den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

const char* layer_name(Layer layer) {
    switch (layer) {
        case Layer::LAYOUT: return "LAYOUT";
        case Layer::MARK: return "MARK";
        case Layer::DETAIL: return "DETAIL";
        case Layer::WALL: return "WALL";
        case Layer::CONFIG: return "CONFIG";
    }
    throw InvalidGeometry("unknown layer");
}

std::optional<Layer> layer_from_name(const std::string& name) {
    for (Layer layer : kAllLayers)
        if (name == layer_name(layer)) return layer;
    return std::nullopt;
}

namespace {

std::int64_t checked_i64(__int128 v, const char* what) {
    if (v > static_cast<__int128>(INT64_MAX) || v < -static_cast<__int128>(INT64_MAX) - 1)
        throw GeometryOverflow(what);
    return static_cast<std::int64_t>(v);
}

__int128 gcd3(__int128 a, __int128 b, __int128 c) {
    auto g = [](__int128 x, __int128 y) {
        if (x < 0) x = -x;
        if (y < 0) y = -y;
        while (y != 0) {
            __int128 t = x % y;
            x = y;
            y = t;
        }
        return x;
    };
    return g(g(a, b), c);
}

}  // namespace

Carrier Carrier::through(const Point& p, const Point& q) {
    if (p == q) throw InvalidGeometry("carrier through coincident points " + p.str());
    Rational a = q.y - p.y;
    Rational b = p.x - q.x;
    Rational c = a * p.x + b * p.y;
    // Clear denominators, reduce, and fix the sign so coefficients are unique.
    __int128 l = a.den();
    l = l / std::gcd(static_cast<std::int64_t>(l), b.den()) * b.den();
    l = l / std::gcd(checked_i64(l, "carrier lcm"), c.den()) * c.den();
    __int128 ia = static_cast<__int128>(a.num()) * (l / a.den());
    __int128 ib = static_cast<__int128>(b.num()) * (l / b.den());
    __int128 ic = static_cast<__int128>(c.num()) * (l / c.den());
    __int128 g = gcd3(ia, ib, ic);
    ia /= g;
    ib /= g;
    ic /= g;
    if (ia < 0 || (ia == 0 && ib < 0)) {
        ia = -ia;
        ib = -ib;
        ic = -ic;
    }
    Carrier out;
    out.a = checked_i64(ia, "carrier coefficient a");
    out.b = checked_i64(ib, "carrier coefficient b");
    out.c = checked_i64(ic, "carrier coefficient c");
    return out;
}

bool Carrier::contains(const Point& p) const {
    return Rational(a) * p.x + Rational(b) * p.y == Rational(c);
}

std::pair<std::int64_t, std::int64_t> Carrier::direction() const {
    std::int64_t dx = b;
    std::int64_t dy = -a;
    if (dx < 0 || (dx == 0 && dy < 0)) {
        dx = -dx;
        dy = -dy;
    }
    return {dx, dy};
}

Rational Carrier::tau(const Point& p) const {
    auto [dx, dy] = direction();
    return Rational(dx) * p.x + Rational(dy) * p.y;
}

Point Carrier::point_at(const Rational& t) const {
    // Anchor point on the line, then walk along the canonical direction.
    Point q0 = (b != 0) ? Point{Rational(0), Rational(c, b)} : Point{Rational(c, a), Rational(0)};
    auto [dx, dy] = direction();
    Rational d2 = Rational(dx) * Rational(dx) + Rational(dy) * Rational(dy);
    Rational u = (t - tau(q0)) / d2;
    return {q0.x + u * Rational(dx), q0.y + u * Rational(dy)};
}

std::optional<Point> Carrier::intersect(const Carrier& l, const Carrier& m) {
    __int128 det = static_cast<__int128>(l.a) * m.b - static_cast<__int128>(m.a) * l.b;
    if (det == 0) return std::nullopt;
    __int128 xn = static_cast<__int128>(l.c) * m.b - static_cast<__int128>(m.c) * l.b;
    __int128 yn = static_cast<__int128>(l.a) * m.c - static_cast<__int128>(m.a) * l.c;
    Rational x = Rational(checked_i64(xn, "carrier intersection")) /
                 Rational(checked_i64(det, "carrier intersection"));
    Rational y = Rational(checked_i64(yn, "carrier intersection")) /
                 Rational(checked_i64(det, "carrier intersection"));
    return Point{x, y};
}

Point Transform::apply_linear(const Point& p) const {
    Rational x = p.x;
    Rational y = mirror ? -p.y : p.y;
    Rational rx, ry;
    switch (rot & 3) {
        case 0: rx = x; ry = y; break;
        case 1: rx = -y; ry = x; break;
        case 2: rx = -x; ry = -y; break;
        default: rx = y; ry = -x; break;
    }
    return {scale * rx, scale * ry};
}

Point Transform::apply(const Point& p) const {
    Point q = apply_linear(p);
    return {q.x + translate.x, q.y + translate.y};
}

std::array<Rational, 4> Transform::linear() const {
    Point e1 = apply_linear({Rational(1), Rational(0)});
    Point e2 = apply_linear({Rational(0), Rational(1)});
    return {e1.x, e2.x, e1.y, e2.y};  // row-major [[a,b],[c,d]]
}

Transform Transform::from_linear(const std::array<Rational, 4>& l, const Point& translate) {
    const Rational &a = l[0], &b = l[1], &c = l[2], &d = l[3];
    Transform t;
    t.translate = translate;
    if (!a.is_zero() || !d.is_zero()) {
        // diagonal: signs of (a, d) pick the factorization
        if (b != Rational(0) || c != Rational(0) || a.abs() != d.abs() || a.is_zero())
            throw InvalidGeometry("linear part is not a signed quarter-turn similarity");
        t.scale = a.abs();
        if (a.sign() > 0 && d.sign() > 0) { t.rot = 0; t.mirror = false; }
        else if (a.sign() < 0 && d.sign() < 0) { t.rot = 2; t.mirror = false; }
        else if (a.sign() > 0) { t.rot = 0; t.mirror = true; }
        else { t.rot = 2; t.mirror = true; }
    } else {
        // antidiagonal: signs of (b, c)
        if (b.abs() != c.abs() || b.is_zero())
            throw InvalidGeometry("linear part is not a signed quarter-turn similarity");
        t.scale = b.abs();
        if (b.sign() < 0 && c.sign() > 0) { t.rot = 1; t.mirror = false; }
        else if (b.sign() > 0 && c.sign() < 0) { t.rot = 3; t.mirror = false; }
        else if (b.sign() > 0) { t.rot = 1; t.mirror = true; }
        else { t.rot = 3; t.mirror = true; }
    }
    return t;
}

Transform Transform::compose(const Transform& outer, const Transform& inner) {
    auto lo = outer.linear();
    auto li = inner.linear();
    std::array<Rational, 4> l = {
        lo[0] * li[0] + lo[1] * li[2], lo[0] * li[1] + lo[1] * li[3],
        lo[2] * li[0] + lo[3] * li[2], lo[2] * li[1] + lo[3] * li[3]};
    Point t = outer.apply(inner.translate);
    return from_linear(l, t);
}

Transform Transform::inverse() const {
    auto l = linear();
    Rational det = l[0] * l[3] - l[1] * l[2];
    std::array<Rational, 4> inv = {l[3] / det, Rational(0) - l[1] / det,
                                   Rational(0) - l[2] / det, l[0] / det};
    Rational tx = Rational(0) - (inv[0] * translate.x + inv[1] * translate.y);
    Rational ty = Rational(0) - (inv[2] * translate.x + inv[3] * translate.y);
    return from_linear(inv, {tx, ty});
}

bool operator<(const Transform& s, const Transform& t) {
    if (s.translate != t.translate) return s.translate < t.translate;
    if (s.rot != t.rot) return s.rot < t.rot;
    if (s.mirror != t.mirror) return !s.mirror;
    return s.scale < t.scale;
}

std::string Transform::str() const {
    std::string out = "[";
    out += mirror ? "mirror " : "";
    out += "rot" + std::to_string(rot * 90);
    out += " scale " + scale.str();
    out += " move " + translate.str() + "]";
    return out;
}

void Shape::insert_interval(IntervalSet& set, Interval iv) {
    // Merge everything that overlaps or touches [iv.lo, iv.hi]; closed
    // intervals that share an endpoint form one maximal run.
    IntervalSet out;
    out.reserve(set.size() + 1);
    std::size_t i = 0;
    while (i < set.size() && set[i].hi < iv.lo) out.push_back(set[i++]);
    while (i < set.size() && set[i].lo <= iv.hi) {
        if (set[i].lo < iv.lo) iv.lo = set[i].lo;
        if (set[i].hi > iv.hi) iv.hi = set[i].hi;
        ++i;
    }
    out.push_back(iv);
    while (i < set.size()) out.push_back(set[i++]);
    set = std::move(out);
}

Shape::IntervalSet Shape::subtract_intervals(const IntervalSet& from, const IntervalSet& what) {
    IntervalSet out;
    for (Interval iv : from) {
        Rational lo = iv.lo;
        for (const Interval& w : what) {
            if (w.hi <= lo) continue;
            if (w.lo >= iv.hi) break;
            if (w.lo > lo) out.push_back({lo, w.lo});
            lo = w.hi > lo ? w.hi : lo;
            if (lo >= iv.hi) break;
        }
        if (lo < iv.hi) out.push_back({lo, iv.hi});
    }
    return out;
}

Shape::IntervalSet Shape::intersect_intervals(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        Rational lo = a[i].lo > b[j].lo ? a[i].lo : b[j].lo;
        Rational hi = a[i].hi < b[j].hi ? a[i].hi : b[j].hi;
        if (lo < hi) out.push_back({lo, hi});  // zero-measure overlap is empty
        if (a[i].hi < b[j].hi) ++i;
        else ++j;
    }
    return out;
}

bool Shape::covers(const IntervalSet& outer, const IntervalSet& inner) {
    // Outer runs are disjoint and non-touching, so each inner interval must
    // sit inside a single outer interval.
    std::size_t i = 0;
    for (const Interval& iv : inner) {
        while (i < outer.size() && outer[i].hi < iv.hi) ++i;
        if (i == outer.size() || outer[i].lo > iv.lo) return false;
    }
    return true;
}

void Shape::add_segment(Layer layer, const Point& p, const Point& q) {
    Carrier carrier = Carrier::through(p, q);
    Rational t1 = carrier.tau(p);
    Rational t2 = carrier.tau(q);
    if (t2 < t1) std::swap(t1, t2);
    insert_interval(lines_[{layer, carrier}], {t1, t2});
}

void Shape::add_point(Layer layer, const Point& pos, const std::string& tag) {
    points_.insert({layer, pos, tag});
}

bool Shape::empty() const { return lines_.empty() && points_.empty(); }

std::size_t Shape::n_segments() const {
    std::size_t n = 0;
    for (const auto& [key, set] : lines_) n += set.size();
    return n;
}

std::vector<CarrierRun> Shape::runs() const {
    std::vector<CarrierRun> out;
    out.reserve(n_segments());
    for (const auto& [key, set] : lines_)
        for (const Interval& iv : set) out.push_back({key.layer, key.carrier, iv});
    return out;
}

std::vector<CarrierRun> Shape::runs_on(Layer layer) const {
    std::vector<CarrierRun> out;
    for (const auto& [key, set] : lines_) {
        if (key.layer != layer) continue;
        for (const Interval& iv : set) out.push_back({key.layer, key.carrier, iv});
    }
    return out;
}

std::vector<Segment> Shape::segments() const {
    std::vector<Segment> out;
    out.reserve(n_segments());
    for (const CarrierRun& run : runs()) out.push_back({run.layer, run.p1(), run.p2()});
    return out;
}

std::vector<TaggedPoint> Shape::points() const {
    return std::vector<TaggedPoint>(points_.begin(), points_.end());
}

std::vector<TaggedPoint> Shape::points_on(Layer layer) const {
    std::vector<TaggedPoint> out;
    for (const TaggedPoint& p : points_)
        if (p.layer == layer) out.push_back(p);
    return out;
}

Shape Shape::sum(const Shape& a, const Shape& b) {
    Shape out = a;
    for (const auto& [key, set] : b.lines_)
        for (const Interval& iv : set) insert_interval(out.lines_[key], iv);
    out.points_.insert(b.points_.begin(), b.points_.end());
    return out;
}

Shape Shape::difference(const Shape& a, const Shape& b) {
    Shape out;
    for (const auto& [key, set] : a.lines_) {
        auto it = b.lines_.find(key);
        IntervalSet rest = (it == b.lines_.end()) ? set : subtract_intervals(set, it->second);
        if (!rest.empty()) out.lines_[key] = std::move(rest);
    }
    for (const TaggedPoint& p : a.points_)
        if (!b.points_.count(p)) out.points_.insert(p);
    return out;
}

Shape Shape::intersection(const Shape& a, const Shape& b) {
    Shape out;
    for (const auto& [key, set] : a.lines_) {
        auto it = b.lines_.find(key);
        if (it == b.lines_.end()) continue;
        IntervalSet common = intersect_intervals(set, it->second);
        if (!common.empty()) out.lines_[key] = std::move(common);
    }
    for (const TaggedPoint& p : a.points_)
        if (b.points_.count(p)) out.points_.insert(p);
    return out;
}

bool Shape::covers_segment(Layer layer, const Point& p, const Point& q) const {
    Carrier carrier = Carrier::through(p, q);
    auto it = lines_.find({layer, carrier});
    if (it == lines_.end()) return false;
    Rational t1 = carrier.tau(p);
    Rational t2 = carrier.tau(q);
    if (t2 < t1) std::swap(t1, t2);
    auto iv = std::lower_bound(it->second.begin(), it->second.end(), t2,
                               [](const Interval& a, const Rational& t) { return a.hi < t; });
    return iv != it->second.end() && iv->lo <= t1;
}

bool Shape::part_of(const Shape& sub, const Shape& super) {
    for (const auto& [key, set] : sub.lines_) {
        auto it = super.lines_.find(key);
        if (it == super.lines_.end() || !covers(it->second, set)) return false;
    }
    for (const TaggedPoint& p : sub.points_)
        if (!super.points_.count(p)) return false;
    return true;
}

Shape Shape::transformed(const Transform& t) const {
    Shape out;
    for (const CarrierRun& run : runs())
        out.add_segment(run.layer, t.apply(run.p1()), t.apply(run.p2()));
    for (const TaggedPoint& p : points_) out.add_point(p.layer, t.apply(p.pos), p.tag);
    return out;
}

std::optional<Box> Shape::bbox() const {
    std::optional<Box> box;
    auto grow = [&box](const Point& p) {
        if (!box) {
            box = Box{p, p};
            return;
        }
        if (p.x < box->min.x) box->min.x = p.x;
        if (p.y < box->min.y) box->min.y = p.y;
        if (p.x > box->max.x) box->max.x = p.x;
        if (p.y > box->max.y) box->max.y = p.y;
    };
    for (const CarrierRun& run : runs()) {
        grow(run.p1());
        grow(run.p2());
    }
    for (const TaggedPoint& p : points_) grow(p.pos);
    return box;
}

std::string Shape::canonical_text() const {
    std::string out;
    for (const Segment& s : segments()) {
        out += "S ";
        out += layer_name(s.layer);
        out += ' ';
        out += s.p1.x.str();
        out += ' ';
        out += s.p1.y.str();
        out += ' ';
        out += s.p2.x.str();
        out += ' ';
        out += s.p2.y.str();
        out += '\n';
    }
    for (const TaggedPoint& p : points_) {
        out += "P ";
        out += layer_name(p.layer);
        out += ' ';
        out += p.pos.x.str();
        out += ' ';
        out += p.pos.y.str();
        out += ' ';
        out += p.tag;
        out += '\n';
    }
    return out;
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t Shape::digest() const { return fnv1a64(canonical_text()); }

}  // namespace plategen
