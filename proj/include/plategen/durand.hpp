#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plategen/engine.hpp"
#include "plategen/geometry.hpp"
#include "plategen/rational.hpp"

namespace plategen::durand {

// Dimensional constants shared by the shipped grammar corpus; see
// grammars/durand.constants. The grammar rules hard-code geometry that
// agrees with these values, and tests cross-check the two.
struct DurandConstants {
    Rational wall_thickness;
    Rational corridor_width;
    Rational column_side;
    Rational interaxis;
};

// Parses a key = value constants file ('#' starts a comment). Unknown keys
// and malformed lines throw ValidationError; all four keys are required.
DurandConstants parse_constants(const std::string& text);

// The constants compiled in from grammars/durand.constants.
const DurandConstants& constants();

// A plate request. nx/ny of 0 mean "the plate's traditional size":
// plate 4 is designed around one central courtyard, plate 5 around four.
struct PlateSpec {
    int plate = 5;
    int nx = 0;
    int ny = 0;
    bool corridors = false;
    bool dome = false;
    std::vector<std::string> breakers;
    std::uint64_t seed = 0;

    // Returns a copy with nx/ny defaults filled in. Throws ValidationError
    // for a plate other than 4 or 5 or negative dimensions, UnknownBreaker
    // for a breaker name outside the shipped catalog.
    PlateSpec resolved() const;
};

// Room classes assigned by the marking stage. A class may carry a variant
// qualifier ("entry" for the perimeter 5x5 that serves as an entrance,
// "stairs" for corner rooms, which receive a stair).
enum class RoomClass {
    CORNER_5x5,
    EDGE_5x11_H,
    EDGE_5x11_V,
    INNER_5x5,
    INNER_5x11_H,
    INNER_5x11_V,
    COURTYARD_11x11,
};

struct RoomTag {
    RoomClass cls;
    std::string qualifier;  // "" when the plain variant

    bool operator==(const RoomTag&) const = default;
};

// The MARK-point tag text for a room class, e.g. {INNER_5x5, "entry"} <->
// "inner_5x5_entry". parse_room_tag returns nullopt for non-room tags
// (column, op_door, ...).
std::string room_tag_text(const RoomTag& tag);
std::optional<RoomTag> parse_room_tag(const std::string& text);

// Names of the shipped wall-breaker rules, in application order.
const std::vector<std::string>& breaker_catalog();

// The master program compiled in from grammars/durand_master.sgs.
const Program& master_program();

// Builds the seed canvas for a spec: the first courtyard square plus the
// CONFIG points that drive growth, capping, room classification, and
// variant selection (option flags).
Shape make_seed(const PlateSpec& spec);

// Pipeline stages. Each runs the corresponding block of the master
// program on the given canvas.
Shape generate_layout(int nx, int ny);
Shape break_walls(const Shape& canvas, const std::vector<std::string>& breakers);
Shape mark_rooms(const Shape& canvas);
Shape build_rooms(const Shape& canvas);
Shape add_corridors(const Shape& canvas);
Shape detail_plate(const Shape& canvas, bool dome);

// Full pipeline: seeds from the spec and runs the master program's main.
// Deterministic per spec.
std::pair<Shape, Trace> generate_plate(const PlateSpec& spec);

}  // namespace plategen::durand
