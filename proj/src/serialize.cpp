#include "plategen/serialize.hpp"

#include <json.hpp>

namespace plategen {

namespace {

using Json = nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

std::uint64_t parse_hex64(const std::string& s) {
    if (s.size() != 16) throw DeserializeError("digest must be 16 hex digits");
    std::uint64_t v = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else throw DeserializeError("digest must be 16 hex digits");
        v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    return v;
}

Json parse_or_die(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw DeserializeError("malformed JSON");
    return j;
}

Rational get_rational(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw DeserializeError(std::string("missing rational field '") + key + "'");
    auto r = parse_rational_text(j[key].get<std::string>());
    if (!r)
        throw DeserializeError(std::string("bad rational in field '") + key + "': " +
                               j[key].get<std::string>());
    return *r;
}

std::string get_string(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw DeserializeError(std::string("missing string field '") + key + "'");
    return j[key].get<std::string>();
}

Layer get_layer(const Json& j) {
    auto layer = layer_from_name(get_string(j, "layer"));
    if (!layer) throw DeserializeError("unknown layer name");
    return *layer;
}

Json shape_to_value(const Shape& shape) {
    Json segments = Json::array();
    for (const Segment& s : shape.segments()) {
        Json seg;
        seg["layer"] = layer_name(s.layer);
        seg["x1"] = s.p1.x.str();
        seg["y1"] = s.p1.y.str();
        seg["x2"] = s.p2.x.str();
        seg["y2"] = s.p2.y.str();
        segments.push_back(seg);
    }
    Json points = Json::array();
    for (const TaggedPoint& p : shape.points()) {
        Json point;
        point["layer"] = layer_name(p.layer);
        point["x"] = p.pos.x.str();
        point["y"] = p.pos.y.str();
        point["tag"] = p.tag;
        points.push_back(point);
    }
    Json out;
    out["segments"] = segments;
    out["points"] = points;
    return out;
}

Shape shape_from_value(const Json& j) {
    if (!j.is_object()) throw DeserializeError("shape must be an object");
    Shape shape;
    if (j.contains("segments")) {
        if (!j["segments"].is_array()) throw DeserializeError("'segments' must be an array");
        for (const Json& seg : j["segments"]) {
            Point a{get_rational(seg, "x1"), get_rational(seg, "y1")};
            Point b{get_rational(seg, "x2"), get_rational(seg, "y2")};
            if (a == b) throw DeserializeError("segment endpoints coincide at " + a.str());
            shape.add_segment(get_layer(seg), a, b);
        }
    }
    if (j.contains("points")) {
        if (!j["points"].is_array()) throw DeserializeError("'points' must be an array");
        for (const Json& point : j["points"]) {
            Point p{get_rational(point, "x"), get_rational(point, "y")};
            shape.add_point(get_layer(point), p, get_string(point, "tag"));
        }
    }
    return shape;
}

Json transform_to_value(const Transform& t) {
    Json out;
    out["mirror"] = t.mirror;
    out["rot"] = t.rot;
    out["scale"] = t.scale.str();
    out["tx"] = t.translate.x.str();
    out["ty"] = t.translate.y.str();
    return out;
}

Transform transform_from_value(const Json& j) {
    if (!j.is_object()) throw DeserializeError("transform must be an object");
    Transform t;
    if (!j.contains("mirror") || !j["mirror"].is_boolean())
        throw DeserializeError("missing boolean field 'mirror'");
    t.mirror = j["mirror"].get<bool>();
    if (!j.contains("rot") || !j["rot"].is_number_integer())
        throw DeserializeError("missing integer field 'rot'");
    t.rot = j["rot"].get<int>();
    if (t.rot < 0 || t.rot > 3) throw DeserializeError("'rot' must be 0..3");
    t.scale = get_rational(j, "scale");
    if (t.scale.sign() <= 0) throw DeserializeError("'scale' must be positive");
    t.translate = {get_rational(j, "tx"), get_rational(j, "ty")};
    return t;
}

}  // namespace

std::string shape_to_json(const Shape& shape) { return shape_to_value(shape).dump(2) + "\n"; }

Shape shape_from_json(const std::string& text) { return shape_from_value(parse_or_die(text)); }

std::string transform_to_json(const Transform& t) {
    return transform_to_value(t).dump(2) + "\n";
}

Transform transform_from_json(const std::string& text) {
    return transform_from_value(parse_or_die(text));
}

std::string trace_to_json(const Trace& trace) {
    Json steps = Json::array();
    for (const TraceStep& s : trace.steps) {
        Json step;
        step["step"] = s.step;
        step["instruction"] = s.instruction;
        step["rule"] = s.rule;
        step["transform"] = transform_to_value(s.transform);
        step["digest"] = hex64(s.digest);
        steps.push_back(step);
    }
    Json snapshots = Json::array();
    for (const TraceSnapshot& s : trace.snapshots) {
        Json snap;
        snap["tag"] = s.tag;
        snap["step"] = s.step;
        snap["digest"] = hex64(s.digest);
        snap["shape"] = shape_to_value(s.shape);
        snapshots.push_back(snap);
    }
    Json out;
    out["steps"] = steps;
    out["snapshots"] = snapshots;
    return out.dump(2) + "\n";
}

Trace trace_from_json(const std::string& text) {
    Json j = parse_or_die(text);
    if (!j.is_object()) throw DeserializeError("trace must be an object");
    Trace trace;
    if (j.contains("steps")) {
        if (!j["steps"].is_array()) throw DeserializeError("'steps' must be an array");
        for (const Json& s : j["steps"]) {
            TraceStep step;
            if (!s.contains("step") || !s["step"].is_number_unsigned())
                throw DeserializeError("missing unsigned field 'step'");
            step.step = s["step"].get<std::uint64_t>();
            step.instruction = get_string(s, "instruction");
            step.rule = get_string(s, "rule");
            if (!s.contains("transform")) throw DeserializeError("missing field 'transform'");
            step.transform = transform_from_value(s["transform"]);
            step.digest = parse_hex64(get_string(s, "digest"));
            trace.steps.push_back(std::move(step));
        }
    }
    if (j.contains("snapshots")) {
        if (!j["snapshots"].is_array()) throw DeserializeError("'snapshots' must be an array");
        for (const Json& s : j["snapshots"]) {
            TraceSnapshot snap;
            snap.tag = get_string(s, "tag");
            if (!s.contains("step") || !s["step"].is_number_unsigned())
                throw DeserializeError("missing unsigned field 'step'");
            snap.step = s["step"].get<std::uint64_t>();
            snap.digest = parse_hex64(get_string(s, "digest"));
            if (!s.contains("shape")) throw DeserializeError("missing field 'shape'");
            snap.shape = shape_from_value(s["shape"]);
            trace.snapshots.push_back(std::move(snap));
        }
    }
    return trace;
}

}  // namespace plategen
