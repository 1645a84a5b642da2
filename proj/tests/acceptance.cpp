// Acceptance harness: one pass/fail line per criterion, exit 0 iff all
// pass. Each criterion is self-contained and reports a short reason on
// failure.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "plategen/dsl.hpp"
#include "plategen/durand.hpp"
#include "plategen/embedded_grammars.hpp"
#include "plategen/engine.hpp"
#include "plategen/errors.hpp"
#include "plategen/matcher.hpp"
#include "plategen/oracle.hpp"
#include "plategen/render.hpp"
#include "support.hpp"

using namespace plategen;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Reporter {
    std::ostringstream detail;  // success note, written by the criterion
    std::string failure;        // first failing condition only
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!ok || cond) return;
        ok = false;
        failure = what;
    }
};

Point P(std::int64_t x, std::int64_t y) { return {Rational(x), Rational(y)}; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// ---------------------------------------------------------------- shapes

Shape random_shape(std::mt19937_64& rng, int max_segments) {
    std::uniform_int_distribution<int> nseg(0, max_segments);
    std::uniform_int_distribution<int> npts(0, 4);
    std::uniform_int_distribution<int> layer(0, 4);
    std::uniform_int_distribution<std::int64_t> num(-16, 16);
    std::uniform_int_distribution<int> den_pick(0, 2);
    const std::int64_t dens[] = {1, 2, 4};
    const char* tags[] = {"a", "b", "door"};
    auto coord = [&] { return Rational(num(rng), dens[den_pick(rng)]); };
    Shape s;
    int n = nseg(rng);
    for (int i = 0; i < n; ++i) {
        Point a{coord(), coord()}, b{coord(), coord()};
        if (a == b) continue;
        s.add_segment(static_cast<Layer>(layer(rng)), a, b);
    }
    int m = npts(rng);
    for (int i = 0; i < m; ++i)
        s.add_point(static_cast<Layer>(layer(rng)), {coord(), coord()}, tags[i % 3]);
    return s;
}

Transform random_transform(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> rot(0, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> scale_pick(0, 4);
    std::uniform_int_distribution<std::int64_t> num(-8, 8);
    std::uniform_int_distribution<std::int64_t> den(1, 2);
    const Rational scales[] = {Rational(1), Rational(2), Rational(3), Rational(1, 2),
                               Rational(2, 3)};
    Transform t;
    t.mirror = coin(rng) != 0;
    t.rot = rot(rng);
    t.scale = scales[scale_pick(rng)];
    t.translate = {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
    return t;
}

bool criterion_1_algebra(Reporter& r) {
    auto t0 = Clock::now();
    std::mt19937_64 rng(20260816);
    std::vector<Shape> pool;
    pool.reserve(1000);
    for (int i = 0; i < 1000; ++i) pool.push_back(random_shape(rng, 20));
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const Shape& a = pool[i];
        const Shape& b = pool[(i * 7 + 1) % pool.size()];
        const Shape& c = pool[(i * 13 + 2) % pool.size()];
        Transform t = random_transform(rng);

        r.require(Shape::sum(Shape::sum(a, b), c) == Shape::sum(a, Shape::sum(b, c)),
                  "sum not associative");
        r.require(Shape::sum(a, b) == Shape::sum(b, a), "sum not commutative");
        r.require(Shape::sum(a, Shape{}) == a, "empty not a sum identity");
        r.require(Shape::sum(a, a) == a, "sum not idempotent");
        r.require(Shape::sum(Shape::difference(a, b), Shape::intersection(a, b)) == a,
                  "A != (A-B)+(A*B)");
        r.require(Shape::part_of(Shape::difference(a, b), a), "A-B not part of A");
        r.require(Shape::part_of(Shape::intersection(a, b), a), "A*B not part of A");
        r.require(Shape::part_of(Shape::intersection(a, b), b), "A*B not part of B");
        r.require(Shape::part_of(a, Shape::sum(a, b)), "A not part of A+B");
        r.require(Shape::part_of(a, b) == Shape::difference(a, b).empty(),
                  "part_of vs difference disagree");

        Shape ta = a.transformed(t), tb = b.transformed(t);
        r.require(Shape::sum(ta, tb) == Shape::sum(a, b).transformed(t),
                  "transform not a sum homomorphism");
        r.require(Shape::difference(ta, tb) == Shape::difference(a, b).transformed(t),
                  "transform not a difference homomorphism");
        r.require(Shape::intersection(ta, tb) == Shape::intersection(a, b).transformed(t),
                  "transform not an intersection homomorphism");
        r.require(Shape::part_of(ta, tb) == Shape::part_of(a, b),
                  "transform changes the part relation");
        r.require(ta.transformed(t.inverse()) == a, "inverse transform does not round-trip");
        if (!r.ok) return false;
    }
    double dt = seconds_since(t0);
    r.require(dt < 10.0, "over the 10 s budget");
    r.detail << "1000 shapes, 15 laws each, " << std::fixed;
    r.detail.precision(1);
    r.detail << dt << "s";
    return r.ok;
}

// --------------------------------------------------------------- matcher

// Canvas with at most `max_segments` segments and all coordinates in
// [0, 8] (halves allowed).
Shape random_canvas(std::mt19937_64& rng, int max_segments) {
    std::uniform_int_distribution<int> nseg(2, max_segments);
    std::uniform_int_distribution<int> npts(0, 3);
    std::uniform_int_distribution<int> layer(0, 2);
    std::uniform_int_distribution<std::int64_t> num(0, 16);
    const char* tags[] = {"a", "b"};
    auto coord = [&] { return Rational(num(rng), 2); };
    Shape s;
    int n = nseg(rng);
    for (int i = 0; i < n; ++i) {
        Point a{coord(), coord()}, b{coord(), coord()};
        if (a == b) continue;
        s.add_segment(static_cast<Layer>(layer(rng)), a, b);
    }
    int m = npts(rng);
    for (int i = 0; i < m; ++i)
        s.add_point(static_cast<Layer>(layer(rng)), {coord(), coord()}, tags[i % 2]);
    return s;
}

// Pattern sampled from the canvas (transformed, so matches usually exist)
// or freshly random (usually a negative case).
Shape random_pattern(std::mt19937_64& rng, const Shape& canvas) {
    std::uniform_int_distribution<int> coin(0, 1);
    if (coin(rng) == 0 || canvas.empty()) {
        Shape s = random_canvas(rng, 3);
        if (s.empty()) s.add_point(Layer::LAYOUT, P(0, 0), "a");
        return s;
    }
    auto segs = canvas.segments();
    std::uniform_int_distribution<std::size_t> pick(0, segs.empty() ? 0 : segs.size() - 1);
    std::uniform_int_distribution<int> take(1, 3);
    Shape s;
    int n = take(rng);
    for (int i = 0; i < n && !segs.empty(); ++i) s.add(segs[pick(rng)]);
    if (s.empty()) s.add_point(Layer::LAYOUT, P(0, 0), "a");
    Transform t = random_transform(rng);
    return s.transformed(t);
}

bool criterion_2_matcher_oracle(Reporter& r) {
    auto t0 = Clock::now();
    std::mt19937_64 rng(424242);
    int compared = 0;
    for (int i = 0; i < 200; ++i) {
        Shape canvas = random_canvas(rng, 12);
        Shape lhs = random_pattern(rng, canvas);
        for (int mask = 0; mask < 8; ++mask) {
            MatchOptions opts;
            opts.rotate = (mask & 1) != 0;
            opts.mirror = (mask & 2) != 0;
            opts.scale = (mask & 4) != 0;
            OracleBounds bounds;
            if (opts.scale) bounds.scales = testsupport::derive_scales(lhs, canvas);
            std::vector<Transform> expect;
            try {
                expect = brute_force_matches(lhs, canvas, opts, bounds);
            } catch (const OracleBudgetExceeded&) {
                continue;  // oracle over budget on this instance; skip the combo
            }
            auto got = find_matches(lhs, canvas, opts);
            ++compared;
            if (got != expect) {
                r.require(false, "discrepancy at instance " + std::to_string(i) + " mask " +
                                     std::to_string(mask));
                return false;
            }
        }
    }
    r.require(compared >= 200 * 4, "fewer than 800 oracle comparisons completed");
    r.detail << "200 instances x 8 flag combos (" << compared << " compared), " << std::fixed;
    r.detail.precision(1);
    r.detail << seconds_since(t0) << "s";
    return r.ok;
}

bool criterion_3_emergent_triangle(Reporter& r) {
    // Outer square with a square inscribed at its edge midpoints; the
    // corner triangles exist only as emergent parts of the drawing.
    Shape canvas;
    canvas.add_segment(Layer::LAYOUT, P(0, 0), P(4, 0));
    canvas.add_segment(Layer::LAYOUT, P(4, 0), P(4, 4));
    canvas.add_segment(Layer::LAYOUT, P(0, 4), P(4, 4));
    canvas.add_segment(Layer::LAYOUT, P(0, 0), P(0, 4));
    canvas.add_segment(Layer::LAYOUT, P(2, 0), P(4, 2));
    canvas.add_segment(Layer::LAYOUT, P(2, 4), P(4, 2));
    canvas.add_segment(Layer::LAYOUT, P(0, 2), P(2, 4));
    canvas.add_segment(Layer::LAYOUT, P(0, 2), P(2, 0));

    Shape triangle;
    triangle.add_segment(Layer::LAYOUT, P(0, 0), P(2, 0));
    triangle.add_segment(Layer::LAYOUT, P(0, 0), P(0, 2));
    triangle.add_segment(Layer::LAYOUT, P(0, 2), P(2, 0));

    MatchOptions opts;
    opts.rotate = true;
    opts.mirror = true;
    auto got = find_matches(triangle, canvas, opts);
    auto expect = brute_force_matches(triangle, canvas, opts, OracleBounds{});
    r.require(got == expect, "matcher disagrees with the brute-force oracle");
    r.require(got.size() == 4,
              "expected 4 corner-triangle images, got " + std::to_string(got.size()));
    std::set<std::string> images;
    for (const Transform& t : got) images.insert(triangle.transformed(t).canonical_text());
    r.require(images.size() == 4, "images not distinct");
    r.detail << "4 distinct corner triangles under rotation+mirror";
    return r.ok;
}

bool criterion_4_inscribe_grammar(Reporter& r) {
    Program base = parse_or_throw(embedded::kFig3);
    for (std::uint64_t n = 1; n <= 4 && r.ok; ++n) {
        Program patched = base;
        for (Instruction& ins : patched.main)
            if (auto* loop = std::get_if<LoopInstr>(&ins.op)) loop->count = n;
        auto t0 = Clock::now();
        RunResult res = run(patched, patched.shapes.at("initial"));
        double dt = seconds_since(t0);
        r.require(dt < 1.0, "loop " + std::to_string(n) + " over the 1 s budget");
        r.require(res.shape.runs().size() == 4 * (n + 1),
                  "loop " + std::to_string(n) + ": expected " + std::to_string(4 * (n + 1)) +
                      " maximal segments, got " + std::to_string(res.shape.runs().size()));
        // Ring k+1's vertices are the midpoints of ring k's edges.
        std::vector<Point> ring = {P(0, 0), P(4, 0), P(4, 4), P(0, 4)};
        for (std::uint64_t depth = 0; depth <= n; ++depth) {
            for (int e = 0; e < 4; ++e) {
                const Point& a = ring[e];
                const Point& b = ring[(e + 1) % 4];
                r.require(res.shape.covers_segment(Layer::LAYOUT, a, b),
                          "loop " + std::to_string(n) + " depth " + std::to_string(depth) +
                              ": missing edge " + a.str() + "-" + b.str());
            }
            std::vector<Point> next;
            for (int e = 0; e < 4; ++e) {
                const Point& a = ring[e];
                const Point& b = ring[(e + 1) % 4];
                next.push_back({(a.x + b.x) / Rational(2), (a.y + b.y) / Rational(2)});
            }
            ring = next;
        }
    }
    r.detail << "loop 1..4 give 8/12/16/20 maximal segments, midpoint-nested";
    return r.ok;
}

bool criterion_5_layout_counts(Reporter& r) {
    for (int nx = 1; nx <= 3; ++nx) {
        for (int ny = 1; ny <= 3; ++ny) {
            auto t0 = Clock::now();
            Shape layout = durand::generate_layout(nx, ny);
            double dt = seconds_since(t0);
            std::string at = std::to_string(nx) + "x" + std::to_string(ny);
            r.require(dt < 5.0, at + " over the 5 s budget");
            int courtyards = 0, rooms = 0;
            for (const TaggedPoint& p : layout.points_on(Layer::CONFIG)) {
                if (p.tag == "courtyard")
                    ++courtyards;
                else if (p.tag == "corner" || p.tag == "edge_5" || p.tag == "edge_11_h" ||
                         p.tag == "edge_11_v" || p.tag == "cell")
                    ++rooms;
            }
            r.require(courtyards == nx * ny, at + ": courtyard count");
            r.require(rooms == (2 * nx + 1) * (2 * ny + 1) - nx * ny, at + ": room-cell count");
            auto bb = layout.bbox();
            r.require(bb && bb->min == P(0, 0) && bb->max == P(16 * nx + 5, 16 * ny + 5),
                      at + ": bounding box");
            if (!r.ok) return false;
        }
    }
    r.detail << "nx,ny in {1,2,3}: counts and boxes as derived";
    return r.ok;
}

Shape mirror_x(const Shape& s) {
    auto bb = s.bbox();
    Transform t;
    t.mirror = true;
    t.rot = 2;
    t.translate = {bb->min.x + bb->max.x, Rational(0)};
    return s.transformed(t);
}

Shape mirror_y(const Shape& s) {
    auto bb = s.bbox();
    Transform t;
    t.mirror = true;
    t.translate = {Rational(0), bb->min.y + bb->max.y};
    return s.transformed(t);
}

bool criterion_6_plate5(Reporter& r) {
    durand::PlateSpec spec;
    spec.plate = 5;
    spec.nx = 2;
    spec.ny = 2;
    auto t0 = Clock::now();
    Shape shape = durand::generate_plate(spec).first;
    double dt = seconds_since(t0);
    r.require(dt < 60.0, "over the 60 s budget");
    r.require(mirror_x(shape) == shape && mirror_y(shape) == shape,
              "not double-axis mirror symmetric");
    r.require(shape.points_on(Layer::MARK).empty() && shape.points_on(Layer::CONFIG).empty(),
              "MARK/CONFIG remnants left");
    // Closed 37x37 perimeter as a thickened wall pair: both faces of all
    // four boundary walls plus the eight caps that close the corners.
    Rational W(37), H(37), q(1, 4), z(0);
    bool faces = shape.covers_segment(Layer::WALL, {z, -q}, {W, -q}) &&
                 shape.covers_segment(Layer::WALL, {z, H + q}, {W, H + q}) &&
                 shape.covers_segment(Layer::WALL, {-q, z}, {-q, H}) &&
                 shape.covers_segment(Layer::WALL, {W + q, z}, {W + q, H}) &&
                 shape.covers_segment(Layer::WALL, {q, q}, {W - q, q}) &&
                 shape.covers_segment(Layer::WALL, {q, H - q}, {W - q, H - q}) &&
                 shape.covers_segment(Layer::WALL, {q, q}, {q, H - q}) &&
                 shape.covers_segment(Layer::WALL, {W - q, q}, {W - q, H - q});
    bool caps = true;
    for (const Rational& x : {z, W})
        caps = caps && shape.covers_segment(Layer::WALL, {x, -q}, {x, q}) &&
               shape.covers_segment(Layer::WALL, {x, H - q}, {x, H + q});
    for (const Rational& y : {z, H})
        caps = caps && shape.covers_segment(Layer::WALL, {-q, y}, {q, y}) &&
               shape.covers_segment(Layer::WALL, {W - q, y}, {W + q, y});
    r.require(faces && caps, "outer perimeter not closed");
    std::string golden = slurp(std::string(PLATEGEN_REPO_ROOT) + "/tests/golden/plate5_2x2.svg");
    r.require(!golden.empty(), "golden SVG missing");
    r.require(render_svg(shape) == golden, "golden SVG mismatch");
    r.detail << "symmetric, clean, closed perimeter, golden match, " << std::fixed;
    r.detail.precision(1);
    r.detail << dt << "s";
    return r.ok;
}

bool criterion_7_plate4_variants(Reporter& r) {
    durand::PlateSpec base_spec;
    base_spec.plate = 4;
    Shape base = durand::generate_plate(base_spec).first;

    durand::PlateSpec corridors_spec = base_spec;
    corridors_spec.corridors = true;
    Shape with_corridors = durand::generate_plate(corridors_spec).first;
    Shape gained = Shape::difference(with_corridors, base);
    r.require(Shape::difference(base, with_corridors).empty(),
              "corridors variant removed base geometry");
    r.require(!gained.empty(), "corridors variant added nothing");
    auto gbb = gained.bbox();
    r.require(gbb && Rational(5) < gbb->min.x && Rational(5) < gbb->min.y &&
                  gbb->max.x < Rational(16) && gbb->max.y < Rational(16),
              "corridor additions outside the courtyard ring");

    durand::PlateSpec dome_spec = base_spec;
    dome_spec.dome = true;
    Shape with_dome = durand::generate_plate(dome_spec).first;
    Shape dome_gained = Shape::difference(with_dome, base);
    Shape dome_lost = Shape::difference(base, with_dome);
    for (const Shape* diff : {&dome_gained, &dome_lost}) {
        auto bb = diff->bbox();
        r.require(bb.has_value(), "dome variant identical to base");
        if (bb)
            r.require(Rational(5) < bb->min.x && Rational(5) < bb->min.y &&
                          bb->max.x < Rational(16) && bb->max.y < Rational(16),
                      "dome difference outside the central courtyard cell");
    }
    r.detail << "corridor diff additive in the ring; dome diff inside the courtyard";
    return r.ok;
}

bool criterion_8_determinism(Reporter& r) {
    // Trace replay: a recorded run replays to the same digest.
    durand::PlateSpec spec;
    spec.plate = 5;
    spec.nx = 1;
    spec.ny = 1;
    auto [shape, trace] = durand::generate_plate(spec);
    Shape replayed = replay(durand::master_program(), trace, durand::make_seed(spec));
    r.require(replayed.digest() == shape.digest(), "plate trace replay diverged");

    Program fig3 = parse_or_throw(embedded::kFig3);
    RunResult res = run(fig3, fig3.shapes.at("initial"));
    Shape fig3_replayed = replay(fig3, res.trace, fig3.shapes.at("initial"));
    r.require(fig3_replayed.digest() == res.shape.digest(), "script trace replay diverged");

    // CLI determinism: identical invocations, byte-identical SVGs.
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "plategen_acceptance";
    fs::create_directories(dir);
    std::string cli = PLATEGEN_CLI_PATH;
    std::string script = std::string(PLATEGEN_REPO_ROOT) + "/grammars/fig3.sgs";
    auto shell = [&](const std::string& cmd) { return std::system(cmd.c_str()) == 0; };
    bool ran = shell("'" + cli + "' durand --plate 4 -o '" + (dir / "p1.svg").string() + "'") &&
               shell("'" + cli + "' durand --plate 4 -o '" + (dir / "p2.svg").string() + "'") &&
               shell("'" + cli + "' run '" + script + "' -o '" + (dir / "f1.svg").string() +
                     "'") &&
               shell("'" + cli + "' run '" + script + "' -o '" + (dir / "f2.svg").string() + "'");
    r.require(ran, "CLI invocation failed");
    if (ran) {
        r.require(slurp((dir / "p1.svg").string()) == slurp((dir / "p2.svg").string()) &&
                      !slurp((dir / "p1.svg").string()).empty(),
                  "plate SVGs differ across runs");
        r.require(slurp((dir / "f1.svg").string()) == slurp((dir / "f2.svg").string()) &&
                      !slurp((dir / "f1.svg").string()).empty(),
                  "script SVGs differ across runs");
    }
    r.detail << "replay digests equal; CLI outputs byte-identical";
    return r.ok;
}

bool criterion_9_dsl_robustness(Reporter& r) {
    const char* shipped[] = {embedded::kFig3, embedded::kDurandMaster,
                             embedded::kBreakerEntryVestibule, embedded::kBreakerCrossGallery,
                             embedded::kBreakerCornerSuite};
    for (const char* text : shipped) {
        Program once = parse_or_throw(text);
        std::string formatted = format_program(once);
        Program twice = parse_or_throw(formatted);
        r.require(twice == once, "format changed the program");
        r.require(format_program(twice) == formatted, "format not a fixpoint");
    }

    auto t0 = Clock::now();
    std::mt19937_64 rng(990);
    const char* tokens[] = {"shape",  "rule",  "block", "main",   "lhs",      "rhs",
                            "seg",    "pt",    "tag",   "apply",  "once",     "all",
                            "times",  "while", "loop",  "label",  "jump",     "jumpif",
                            "match",  "nomatch", "snapshot", "halt", "call",  "random",
                            "first",  "{",     "}",     ";",      "(",        ")",
                            "-",      ",",     "->",    "[",      "]",        "LAYOUT",
                            "MARK",   "WALL",  "x1",    "7",      "-3/4",     "1/0",
                            "\"s\"",  "#c\n",  "\n",    " "};
    std::uniform_int_distribution<int> ntok(0, 60);
    std::uniform_int_distribution<std::size_t> tok(0, std::size(tokens) - 1);
    std::uniform_int_distribution<int> mode(0, 3);
    std::uniform_int_distribution<int> byte(32, 126);
    const std::string master = embedded::kDurandMaster;
    std::uniform_int_distribution<std::size_t> offset(0, master.size() - 1);
    int fuzzed = 0;
    for (int i = 0; i < 100000; ++i) {
        std::string input;
        int m = mode(rng);
        if (m == 0) {  // token soup
            int n = ntok(rng);
            for (int k = 0; k < n; ++k) {
                input += tokens[tok(rng)];
                input += ' ';
            }
        } else if (m == 1) {  // random printable bytes
            int n = ntok(rng) * 4;
            for (int k = 0; k < n; ++k) input += static_cast<char>(byte(rng));
        } else {  // slice of a real grammar, possibly mutated
            std::size_t at = offset(rng);
            std::size_t len = std::min<std::size_t>(200, master.size() - at);
            input = master.substr(at, len);
            if (m == 3 && !input.empty())
                input[offset(rng) % input.size()] = static_cast<char>(byte(rng));
        }
        try {
            ParseResult res = parse_program(input);
            if (res.ok()) (void)format_program(res.program);
        } catch (const std::exception& e) {
            r.require(false, "parse threw on fuzz input " + std::to_string(i) + ": " + e.what());
            return false;
        }
        ++fuzzed;
    }
    r.detail << "5 grammars at fixpoint; " << fuzzed << " fuzz inputs, " << std::fixed;
    r.detail.precision(1);
    r.detail << seconds_since(t0) << "s";
    return r.ok;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<bool(Reporter&)> fn;
    };
    const Criterion criteria[] = {
        {1, "shape-algebra laws on randomized shapes", criterion_1_algebra},
        {2, "matcher equals brute-force oracle", criterion_2_matcher_oracle},
        {3, "emergent corner triangle matches 4 ways", criterion_3_emergent_triangle},
        {4, "inscribe grammar nests to every loop depth", criterion_4_inscribe_grammar},
        {5, "layout counts for all grid sizes", criterion_5_layout_counts},
        {6, "plate-5 2x2 end-to-end with golden SVG", criterion_6_plate5},
        {7, "plate-4 corridor and dome diffs confined", criterion_7_plate4_variants},
        {8, "trace replay and CLI byte determinism", criterion_8_determinism},
        {9, "script format fixpoint and parser fuzzing", criterion_9_dsl_robustness},
    };

    bool all_ok = true;
    for (const Criterion& c : criteria) {
        Reporter r;
        bool ok = false;
        std::string threw;
        try {
            ok = c.fn(r);
        } catch (const std::exception& e) {
            threw = e.what();
        }
        std::string note = !threw.empty() ? ("exception: " + threw)
                                          : (ok ? r.detail.str() : r.failure);
        std::printf("%s  %d. %s — %s\n", ok ? "PASS" : "FAIL", c.id, c.title, note.c_str());
        std::fflush(stdout);
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
