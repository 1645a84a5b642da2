#pragma once

#include <optional>
#include <string>

#include "plategen/geometry.hpp"

namespace plategen {

struct RenderOptions {
    bool labels = true;  // draw tag text beside tagged points
};

// Deterministic SVG: canonical element order (layer, carrier, span; then
// points), exact decimal coordinates whenever the denominator is 2^a*5^b,
// otherwise six significant digits plus a data-exact attribute carrying the
// exact rational endpoints. Equal shapes render to identical bytes.
std::string render_svg(const Shape& shape, const RenderOptions& opts = {});

// Decimal text of a rational: exact when finite, nothing otherwise.
std::optional<std::string> finite_decimal(const Rational& r);

// Six-significant-digit decimal via integer-only rounding (half away from
// zero); used when the exact decimal does not terminate.
std::string rounded_decimal(const Rational& r);

}  // namespace plategen
