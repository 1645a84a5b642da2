#pragma once

#include <string>

#include "plategen/engine.hpp"

namespace plategen {

// Canonical JSON forms. Serialization is byte-deterministic: fixed key
// order, two-space indent, rationals as their canonical text ("3", "-1/2"),
// digests as fixed-width hex strings. Deserialization accepts any key order
// and throws DeserializeError on malformed input.

std::string shape_to_json(const Shape& shape);
Shape shape_from_json(const std::string& text);

std::string trace_to_json(const Trace& trace);
Trace trace_from_json(const std::string& text);

std::string transform_to_json(const Transform& t);
Transform transform_from_json(const std::string& text);

}  // namespace plategen
