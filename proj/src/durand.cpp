#include "plategen/durand.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "plategen/dsl.hpp"
#include "plategen/errors.hpp"

#include "plategen/embedded_grammars.hpp"

namespace plategen::durand {

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

RunOptions stage_options(std::uint64_t rng_seed = 0) {
    RunOptions opts;
    opts.max_steps = default_max_steps();
    opts.rng_seed = rng_seed;
    return opts;
}

Rational rat(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

// Tags legitimately present on MARK after the building stage; anything
// else left there means a room class nothing knew how to furnish.
const std::set<std::string>& furnishing_tags() {
    static const std::set<std::string> tags = {"op_door", "op_wide", "column", "pier",
                                               "stairs", "courtyard_center"};
    return tags;
}

// CONFIG tags that name still-unclassified cells after the marking stage.
const std::map<std::string, std::pair<int, int>>& cell_tag_sizes() {
    static const std::map<std::string, std::pair<int, int>> sizes = {
        {"corner", {5, 5}},    {"edge_5", {5, 5}},     {"edge_11_h", {11, 5}},
        {"edge_11_v", {5, 11}}, {"cell", {0, 0}},       {"courtyard", {11, 11}},
    };
    return sizes;
}

}  // namespace

DurandConstants parse_constants(const std::string& text) {
    std::map<std::string, Rational> values;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("constants line " + std::to_string(lineno) +
                                  ": expected key = value");
        std::string key = trimmed(line.substr(0, eq));
        std::string val = trimmed(line.substr(eq + 1));
        std::optional<Rational> r = parse_rational_text(val);
        if (!r)
            throw ValidationError("constants line " + std::to_string(lineno) + ": '" + val +
                                  "' is not a rational");
        if (!values.emplace(key, *r).second)
            throw ValidationError("constants line " + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");
    }
    DurandConstants c;
    auto take = [&](const char* key) {
        auto it = values.find(key);
        if (it == values.end())
            throw ValidationError(std::string("constants: missing key '") + key + "'");
        Rational r = it->second;
        values.erase(it);
        return r;
    };
    c.wall_thickness = take("wall_thickness");
    c.corridor_width = take("corridor_width");
    c.column_side = take("column_side");
    c.interaxis = take("interaxis");
    if (!values.empty())
        throw ValidationError("constants: unknown key '" + values.begin()->first + "'");
    return c;
}

const DurandConstants& constants() {
    static const DurandConstants c = parse_constants(embedded::kDurandConstants);
    return c;
}

const std::vector<std::string>& breaker_catalog() {
    static const std::vector<std::string> catalog = {"entry_vestibule", "cross_gallery",
                                                     "corner_suite"};
    return catalog;
}

const Program& master_program() {
    static const Program program = parse_or_throw(embedded::kDurandMaster);
    return program;
}

PlateSpec PlateSpec::resolved() const {
    if (plate != 4 && plate != 5)
        throw ValidationError("plate must be 4 or 5, got " + std::to_string(plate));
    if (nx < 0 || ny < 0)
        throw ValidationError("courtyard counts must be positive");
    PlateSpec r = *this;
    int def = (plate == 4) ? 1 : 2;
    if (r.nx == 0) r.nx = def;
    if (r.ny == 0) r.ny = def;
    const auto& catalog = breaker_catalog();
    for (const std::string& b : r.breakers)
        if (std::find(catalog.begin(), catalog.end(), b) == catalog.end())
            throw UnknownBreaker("unknown breaker '" + b + "'");
    return r;
}

std::string room_tag_text(const RoomTag& tag) {
    std::string base;
    switch (tag.cls) {
        case RoomClass::CORNER_5x5: base = "corner_5x5"; break;
        case RoomClass::EDGE_5x11_H: base = "edge_5x11_h"; break;
        case RoomClass::EDGE_5x11_V: base = "edge_5x11_v"; break;
        case RoomClass::INNER_5x5: base = "inner_5x5"; break;
        case RoomClass::INNER_5x11_H: base = "inner_5x11_h"; break;
        case RoomClass::INNER_5x11_V: base = "inner_5x11_v"; break;
        case RoomClass::COURTYARD_11x11: base = "courtyard_11x11"; break;
    }
    if (!tag.qualifier.empty() && tag.qualifier != "stairs") base += "_" + tag.qualifier;
    return base;
}

std::optional<RoomTag> parse_room_tag(const std::string& text) {
    // Corner rooms always carry the stair; the qualifier is implied.
    if (text == "corner_5x5") return RoomTag{RoomClass::CORNER_5x5, "stairs"};
    if (text == "edge_5x11_h") return RoomTag{RoomClass::EDGE_5x11_H, ""};
    if (text == "edge_5x11_v") return RoomTag{RoomClass::EDGE_5x11_V, ""};
    if (text == "inner_5x5") return RoomTag{RoomClass::INNER_5x5, ""};
    if (text == "inner_5x5_entry") return RoomTag{RoomClass::INNER_5x5, "entry"};
    if (text == "inner_5x11_h") return RoomTag{RoomClass::INNER_5x11_H, ""};
    if (text == "inner_5x11_v") return RoomTag{RoomClass::INNER_5x11_V, ""};
    if (text == "courtyard_11x11") return RoomTag{RoomClass::COURTYARD_11x11, ""};
    return std::nullopt;
}

Shape make_seed(const PlateSpec& spec) {
    PlateSpec s = spec.resolved();
    const std::int64_t nx = s.nx, ny = s.ny;
    const std::int64_t W = 16 * nx + 5, H = 16 * ny + 5;
    Shape seed;

    // First courtyard square; growth replicates it along both axes.
    seed.add_segment(Layer::LAYOUT, {rat(5), rat(5)}, {rat(16), rat(5)});
    seed.add_segment(Layer::LAYOUT, {rat(16), rat(5)}, {rat(16), rat(16)});
    seed.add_segment(Layer::LAYOUT, {rat(5), rat(16)}, {rat(16), rat(16)});
    seed.add_segment(Layer::LAYOUT, {rat(5), rat(5)}, {rat(5), rat(16)});

    auto pt = [&](Rational x, Rational y, const std::string& tag) {
        seed.add_point(Layer::CONFIG, {x, y}, tag);
    };

    // Growth instructions: one vertical chain, then one horizontal chain
    // per row. Each growth converts its point into a courtyard mark.
    pt(rat(21, 2), rat(21, 2), "courtyard");
    for (std::int64_t k = 1; k < ny; ++k) pt(rat(21, 2), rat(21 + 32 * k, 2), "grow_v");
    for (std::int64_t m = 1; m < nx; ++m)
        for (std::int64_t k = 0; k < ny; ++k)
            pt(rat(21 + 32 * m, 2), rat(21 + 32 * k, 2), "grow_h");

    // Cap instructions: one per courtyard column/row on each side, each
    // adding the outer room-band boundary in front of that courtyard.
    for (std::int64_t m = 0; m < nx; ++m) {
        pt(rat(21 + 32 * m, 2), rat(5, 2), "cap");
        pt(rat(21 + 32 * m, 2), rat(2 * H - 5, 2), "cap");
    }
    for (std::int64_t k = 0; k < ny; ++k) {
        pt(rat(5, 2), rat(21 + 32 * k, 2), "cap");
        pt(rat(2 * W - 5, 2), rat(21 + 32 * k, 2), "cap");
    }

    // Room classification evidence: corners, perimeter rooms (marked on
    // the boundary, inset one unit), and interior cells (at the centre).
    pt(rat(1), rat(1), "corner");
    pt(rat(W - 1), rat(1), "corner");
    pt(rat(1), rat(H - 1), "corner");
    pt(rat(W - 1), rat(H - 1), "corner");
    for (std::int64_t m = 1; m < nx; ++m) {
        pt(rat(32 * m + 5, 2), rat(1), "edge_5");
        pt(rat(32 * m + 5, 2), rat(H - 1), "edge_5");
    }
    for (std::int64_t k = 1; k < ny; ++k) {
        pt(rat(1), rat(32 * k + 5, 2), "edge_5");
        pt(rat(W - 1), rat(32 * k + 5, 2), "edge_5");
    }
    for (std::int64_t m = 0; m < nx; ++m) {
        pt(rat(32 * m + 21, 2), rat(1), "edge_11_h");
        pt(rat(32 * m + 21, 2), rat(H - 1), "edge_11_h");
    }
    for (std::int64_t k = 0; k < ny; ++k) {
        pt(rat(1), rat(32 * k + 21, 2), "edge_11_v");
        pt(rat(W - 1), rat(32 * k + 21, 2), "edge_11_v");
    }
    for (std::int64_t m = 1; m < nx; ++m)
        for (std::int64_t k = 1; k < ny; ++k)
            pt(rat(32 * m + 5, 2), rat(32 * k + 5, 2), "cell");
    for (std::int64_t m = 0; m < nx; ++m)
        for (std::int64_t k = 1; k < ny; ++k)
            pt(rat(32 * m + 21, 2), rat(32 * k + 5, 2), "cell");
    for (std::int64_t m = 1; m < nx; ++m)
        for (std::int64_t k = 0; k < ny; ++k)
            pt(rat(32 * m + 5, 2), rat(32 * k + 21, 2), "cell");

    // Variant flags, parked outside the plate.
    if (s.corridors) pt(rat(-2), rat(-2), "opt_corridors");
    if (s.dome) pt(rat(-2), rat(-3), "opt_dome");
    const auto& catalog = breaker_catalog();
    for (std::size_t i = 0; i < catalog.size(); ++i)
        if (std::find(s.breakers.begin(), s.breakers.end(), catalog[i]) != s.breakers.end())
            pt(rat(-2), rat(-4 - static_cast<std::int64_t>(i)), "opt_breaker_" + catalog[i]);

    return seed;
}

Shape generate_layout(int nx, int ny) {
    if (nx < 1 || ny < 1) throw ValidationError("courtyard counts must be positive");
    PlateSpec spec;
    spec.plate = 5;
    spec.nx = nx;
    spec.ny = ny;
    return run_block(master_program(), "layout", make_seed(spec), stage_options()).shape;
}

Shape break_walls(const Shape& canvas, const std::vector<std::string>& breakers) {
    const auto& catalog = breaker_catalog();
    for (const std::string& b : breakers)
        if (std::find(catalog.begin(), catalog.end(), b) == catalog.end())
            throw UnknownBreaker("unknown breaker '" + b + "'");
    Shape flagged = canvas;
    for (std::size_t i = 0; i < catalog.size(); ++i)
        if (std::find(breakers.begin(), breakers.end(), catalog[i]) != breakers.end())
            flagged.add_point(Layer::CONFIG, {rat(-2), rat(-4 - static_cast<std::int64_t>(i))},
                              "opt_breaker_" + catalog[i]);
    return run_block(master_program(), "breakwalls", flagged, stage_options()).shape;
}

Shape mark_rooms(const Shape& canvas) {
    Shape out = run_block(master_program(), "markrooms", canvas, stage_options()).shape;
    for (const TaggedPoint& p : out.points()) {
        if (p.layer != Layer::CONFIG) continue;
        auto it = cell_tag_sizes().find(p.tag);
        if (it == cell_tag_sizes().end()) continue;
        std::string msg = "unclassified cell: '" + it->first + "' evidence at " + p.pos.str();
        if (it->second.first > 0)
            msg += " (a " + std::to_string(it->second.first) + "x" +
                   std::to_string(it->second.second) + " cell)";
        throw UnknownRoomShape(msg);
    }
    return out;
}

Shape build_rooms(const Shape& canvas) {
    Shape out = run_block(master_program(), "buildrooms", canvas, stage_options()).shape;
    for (const TaggedPoint& p : out.points()) {
        if (p.layer != Layer::MARK) continue;
        if (furnishing_tags().count(p.tag)) continue;
        throw UnknownRoomShape("no builder for room tag '" + p.tag + "' at " + p.pos.str());
    }
    return out;
}

Shape add_corridors(const Shape& canvas) {
    return run_block(master_program(), "corridors", canvas, stage_options()).shape;
}

Shape detail_plate(const Shape& canvas, bool dome) {
    Shape flagged = canvas;
    if (dome) {
        bool has_courtyard = false;
        for (const TaggedPoint& p : canvas.points())
            if (p.layer == Layer::MARK && p.tag == "courtyard_center") has_courtyard = true;
        if (!has_courtyard)
            throw DomeWithoutCourtyard("dome requested but the canvas has no courtyard");
        flagged.add_point(Layer::CONFIG, {rat(-2), rat(-3)}, "opt_dome");
    }
    return run_block(master_program(), "detail", flagged, stage_options()).shape;
}

std::pair<Shape, Trace> generate_plate(const PlateSpec& spec) {
    PlateSpec s = spec.resolved();
    RunResult result = run(master_program(), make_seed(s), stage_options(s.seed));
    return {std::move(result.shape), std::move(result.trace)};
}

}  // namespace plategen::durand
