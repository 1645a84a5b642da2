// Python bindings for the core operations: the exact-rational shape
// algebra, subshape matching, the rule engine, the script front end, SVG
// and JSON output, and the Durand plate presets.
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "plategen/dsl.hpp"
#include "plategen/durand.hpp"
#include "plategen/engine.hpp"
#include "plategen/errors.hpp"
#include "plategen/matcher.hpp"
#include "plategen/render.hpp"
#include "plategen/serialize.hpp"

namespace py = pybind11;
using namespace plategen;

namespace {

Rational rational_from_str(const std::string& text) {
    auto r = parse_rational_text(text);
    if (!r) throw InvalidGeometry("not a rational: '" + text + "'");
    return *r;
}

std::string require_layer_name(Layer layer) { return layer_name(layer); }

}  // namespace

PYBIND11_MODULE(_plategen, m) {
    m.doc() = "Shape-grammar rewriting engine with an exact-rational shape algebra";

    py::register_exception<InvalidGeometry>(m, "InvalidGeometry", PyExc_ValueError);
    py::register_exception<GeometryOverflow>(m, "GeometryOverflow", PyExc_OverflowError);
    py::register_exception<NotAMatch>(m, "NotAMatch", PyExc_ValueError);
    py::register_exception<StepLimitExceeded>(m, "StepLimitExceeded", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<TraceDiverged>(m, "TraceDiverged", PyExc_RuntimeError);
    py::register_exception<DeserializeError>(m, "DeserializeError", PyExc_ValueError);
    py::register_exception<UnknownBreaker>(m, "UnknownBreaker", PyExc_ValueError);
    py::register_exception<UnknownRoomShape>(m, "UnknownRoomShape", PyExc_ValueError);
    py::register_exception<DomeWithoutCourtyard>(m, "DomeWithoutCourtyard", PyExc_ValueError);

    py::enum_<Layer>(m, "Layer")
        .value("LAYOUT", Layer::LAYOUT)
        .value("MARK", Layer::MARK)
        .value("DETAIL", Layer::DETAIL)
        .value("WALL", Layer::WALL)
        .value("CONFIG", Layer::CONFIG);

    py::class_<Rational>(m, "Rational")
        .def(py::init<std::int64_t>(), py::arg("num"))
        .def(py::init<std::int64_t, std::int64_t>(), py::arg("num"), py::arg("den"))
        .def(py::init(&rational_from_str), py::arg("text"))
        .def_property_readonly("num", &Rational::num)
        .def_property_readonly("den", &Rational::den)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def(py::self < py::self)
        .def(py::self <= py::self)
        .def(py::self > py::self)
        .def(py::self >= py::self)
        .def("__str__", &Rational::str)
        .def("__repr__", [](const Rational& r) { return "Rational('" + r.str() + "')"; })
        .def("__float__",
             [](const Rational& r) { return static_cast<double>(r.num()) / r.den(); })
        .def("__hash__",
             [](const Rational& r) { return py::hash(py::make_tuple(r.num(), r.den())); });
    py::implicitly_convertible<py::int_, Rational>();
    py::implicitly_convertible<py::str, Rational>();

    py::class_<Point>(m, "Point")
        .def(py::init<Rational, Rational>(), py::arg("x"), py::arg("y"))
        .def(py::init([](py::tuple t) {
                 if (t.size() != 2) throw py::value_error("Point needs (x, y)");
                 return Point{t[0].cast<Rational>(), t[1].cast<Rational>()};
             }),
             py::arg("xy"))
        .def_readwrite("x", &Point::x)
        .def_readwrite("y", &Point::y)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def(py::self < py::self)
        .def("__str__", &Point::str)
        .def("__repr__", [](const Point& p) { return "Point" + p.str(); });
    py::implicitly_convertible<py::tuple, Point>();

    py::class_<Segment>(m, "Segment")
        .def_readonly("layer", &Segment::layer)
        .def_readonly("p1", &Segment::p1)
        .def_readonly("p2", &Segment::p2)
        .def("__repr__", [](const Segment& s) {
            return "Segment(" + require_layer_name(s.layer) + " " + s.p1.str() + "-" +
                   s.p2.str() + ")";
        });

    py::class_<TaggedPoint>(m, "TaggedPoint")
        .def(py::init([](Layer layer, const Point& pos, const std::string& tag) {
                 return TaggedPoint{layer, pos, tag};
             }),
             py::arg("layer"), py::arg("pos"), py::arg("tag"))
        .def_readonly("layer", &TaggedPoint::layer)
        .def_readonly("pos", &TaggedPoint::pos)
        .def_readonly("tag", &TaggedPoint::tag)
        .def(py::self == py::self)
        .def("__repr__", [](const TaggedPoint& p) {
            return "TaggedPoint(" + require_layer_name(p.layer) + " " + p.pos.str() + " " +
                   p.tag + ")";
        });

    py::class_<Box>(m, "Box")
        .def_readonly("min", &Box::min)
        .def_readonly("max", &Box::max)
        .def("__repr__",
             [](const Box& b) { return "Box(" + b.min.str() + ", " + b.max.str() + ")"; });

    py::class_<Transform>(m, "Transform")
        .def(py::init([](bool mirror, int rot, Rational scale, Point translate) {
                 Transform t;
                 t.mirror = mirror;
                 t.rot = rot;
                 t.scale = scale;
                 t.translate = translate;
                 return t;
             }),
             py::arg("mirror") = false, py::arg("rot") = 0,
             py::arg("scale") = Rational(1),
             py::arg("translate") = Point{Rational(0), Rational(0)})
        .def_readwrite("mirror", &Transform::mirror)
        .def_readwrite("rot", &Transform::rot)
        .def_readwrite("scale", &Transform::scale)
        .def_readwrite("translate", &Transform::translate)
        .def("apply", &Transform::apply, py::arg("point"))
        .def_static("compose", &Transform::compose, py::arg("outer"), py::arg("inner"))
        .def("inverse", &Transform::inverse)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def(py::self < py::self)
        .def("__str__", &Transform::str)
        .def("__repr__", [](const Transform& t) { return "Transform" + t.str(); });

    py::class_<Shape>(m, "Shape")
        .def(py::init<>())
        .def("add_segment", &Shape::add_segment, py::arg("layer"), py::arg("p"), py::arg("q"))
        .def("add_point", &Shape::add_point, py::arg("layer"), py::arg("pos"), py::arg("tag"))
        .def("empty", &Shape::empty)
        .def("n_segments", &Shape::n_segments)
        .def("n_points", &Shape::n_points)
        .def("segments", &Shape::segments)
        .def("points", &Shape::points)
        .def_static("sum", &Shape::sum, py::arg("a"), py::arg("b"))
        .def_static("difference", &Shape::difference, py::arg("a"), py::arg("b"))
        .def_static("intersection", &Shape::intersection, py::arg("a"), py::arg("b"))
        .def_static("part_of", &Shape::part_of, py::arg("sub"), py::arg("super"))
        .def("covers_segment", &Shape::covers_segment, py::arg("layer"), py::arg("p"),
             py::arg("q"))
        .def("has_point", &Shape::has_point, py::arg("point"))
        .def("transformed", &Shape::transformed, py::arg("transform"))
        .def("bbox", &Shape::bbox)
        .def("canonical_text", &Shape::canonical_text)
        .def("digest", &Shape::digest)
        .def("__add__", &Shape::sum)
        .def("__sub__", &Shape::difference)
        .def("__and__", &Shape::intersection)
        .def("__le__", &Shape::part_of)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def("__repr__", [](const Shape& s) {
            std::ostringstream out;
            out << "Shape(" << s.n_segments() << " segments, " << s.n_points() << " points)";
            return out.str();
        });

    py::class_<MatchOptions>(m, "MatchOptions")
        .def(py::init([](bool rotate, bool mirror, bool scale) {
                 return MatchOptions{rotate, mirror, scale};
             }),
             py::arg("rotate") = false, py::arg("mirror") = false, py::arg("scale") = false)
        .def_readwrite("rotate", &MatchOptions::rotate)
        .def_readwrite("mirror", &MatchOptions::mirror)
        .def_readwrite("scale", &MatchOptions::scale);

    m.def("find_matches", &find_matches, py::arg("lhs"), py::arg("canvas"),
          py::arg("options") = MatchOptions{});
    m.def("exists_match", &exists_match, py::arg("lhs"), py::arg("canvas"),
          py::arg("options") = MatchOptions{});

    py::class_<Rule>(m, "Rule")
        .def(py::init([](std::string name, Shape lhs, Shape rhs, MatchOptions options) {
                 return Rule{std::move(name), std::move(lhs), std::move(rhs), options};
             }),
             py::arg("name"), py::arg("lhs"), py::arg("rhs"),
             py::arg("options") = MatchOptions{})
        .def_readwrite("name", &Rule::name)
        .def_readwrite("lhs", &Rule::lhs)
        .def_readwrite("rhs", &Rule::rhs)
        .def_readwrite("options", &Rule::options);

    m.def("apply_rule", &apply_rule, py::arg("canvas"), py::arg("rule"), py::arg("transform"));

    py::class_<TraceStep>(m, "TraceStep")
        .def_readonly("step", &TraceStep::step)
        .def_readonly("instruction", &TraceStep::instruction)
        .def_readonly("rule", &TraceStep::rule)
        .def_readonly("transform", &TraceStep::transform)
        .def_readonly("digest", &TraceStep::digest);

    py::class_<TraceSnapshot>(m, "TraceSnapshot")
        .def_readonly("tag", &TraceSnapshot::tag)
        .def_readonly("step", &TraceSnapshot::step)
        .def_readonly("digest", &TraceSnapshot::digest)
        .def_readonly("shape", &TraceSnapshot::shape);

    py::class_<Trace>(m, "Trace")
        .def_readonly("steps", &Trace::steps)
        .def_readonly("snapshots", &Trace::snapshots);

    py::class_<RunOptions>(m, "RunOptions")
        .def(py::init([](std::uint64_t max_steps, std::uint64_t rng_seed) {
                 RunOptions o;
                 o.max_steps = max_steps;
                 o.rng_seed = rng_seed;
                 return o;
             }),
             py::arg("max_steps") = RunOptions{}.max_steps, py::arg("rng_seed") = 0)
        .def_readwrite("max_steps", &RunOptions::max_steps)
        .def_readwrite("rng_seed", &RunOptions::rng_seed);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("shape", &RunResult::shape)
        .def_readonly("trace", &RunResult::trace)
        .def_readonly("steps", &RunResult::steps)
        .def_readonly("halted", &RunResult::halted);

    py::class_<Program>(m, "Program")
        .def("shape", [](const Program& p, const std::string& name) {
            auto it = p.shapes.find(name);
            if (it == p.shapes.end()) throw py::key_error("no shape named '" + name + "'");
            return it->second;
        })
        .def("shape_names",
             [](const Program& p) {
                 std::vector<std::string> names;
                 for (const auto& [name, shape] : p.shapes) names.push_back(name);
                 return names;
             })
        .def("rule", [](const Program& p, const std::string& name) {
            auto it = p.rules.find(name);
            if (it == p.rules.end()) throw py::key_error("no rule named '" + name + "'");
            return it->second;
        })
        .def("rule_names",
             [](const Program& p) {
                 std::vector<std::string> names;
                 for (const auto& [name, rule] : p.rules) names.push_back(name);
                 return names;
             })
        .def("block_names", [](const Program& p) {
            std::vector<std::string> names;
            for (const auto& [name, block] : p.blocks) names.push_back(name);
            return names;
        });

    py::class_<Diagnostic>(m, "Diagnostic")
        .def_readonly("line", &Diagnostic::line)
        .def_readonly("col", &Diagnostic::col)
        .def_readonly("message", &Diagnostic::message)
        .def("__str__", &Diagnostic::str)
        .def("__repr__", [](const Diagnostic& d) { return "Diagnostic(" + d.str() + ")"; });

    m.def("parse_program", &parse_or_throw, py::arg("source"),
          "Parse rule-script source; raises ValidationError with located "
          "diagnostics on malformed input.");
    m.def(
        "parse_diagnostics",
        [](const std::string& source) { return parse_program(source).diagnostics; },
        py::arg("source"), "Diagnostics a parse would raise, without raising.");
    m.def("validate_program", &validate_program, py::arg("program"));
    m.def("format_program", &format_program, py::arg("program"));

    m.def("run", &run, py::arg("program"), py::arg("initial") = Shape{},
          py::arg("options") = RunOptions{});
    m.def("run_block", &run_block, py::arg("program"), py::arg("block"),
          py::arg("initial") = Shape{}, py::arg("options") = RunOptions{});
    m.def("replay", &replay, py::arg("program"), py::arg("trace"),
          py::arg("initial") = Shape{});
    m.def("default_max_steps", &default_max_steps);

    m.def(
        "render_svg",
        [](const Shape& shape, bool labels) {
            RenderOptions opts;
            opts.labels = labels;
            return render_svg(shape, opts);
        },
        py::arg("shape"), py::arg("labels") = true);

    m.def("shape_to_json", &shape_to_json, py::arg("shape"));
    m.def("shape_from_json", &shape_from_json, py::arg("text"));
    m.def("trace_to_json", &trace_to_json, py::arg("trace"));
    m.def("trace_from_json", &trace_from_json, py::arg("text"));
    m.def("transform_to_json", &transform_to_json, py::arg("transform"));
    m.def("transform_from_json", &transform_from_json, py::arg("text"));

    py::module_ durand = m.def_submodule("durand", "Durand plate presets");

    py::class_<plategen::durand::PlateSpec>(durand, "PlateSpec")
        .def(py::init([](int plate, int nx, int ny, bool corridors, bool dome,
                         std::vector<std::string> breakers, std::uint64_t seed) {
                 plategen::durand::PlateSpec s;
                 s.plate = plate;
                 s.nx = nx;
                 s.ny = ny;
                 s.corridors = corridors;
                 s.dome = dome;
                 s.breakers = std::move(breakers);
                 s.seed = seed;
                 return s;
             }),
             py::arg("plate") = 5, py::arg("nx") = 0, py::arg("ny") = 0,
             py::arg("corridors") = false, py::arg("dome") = false,
             py::arg("breakers") = std::vector<std::string>{}, py::arg("seed") = 0)
        .def_readwrite("plate", &plategen::durand::PlateSpec::plate)
        .def_readwrite("nx", &plategen::durand::PlateSpec::nx)
        .def_readwrite("ny", &plategen::durand::PlateSpec::ny)
        .def_readwrite("corridors", &plategen::durand::PlateSpec::corridors)
        .def_readwrite("dome", &plategen::durand::PlateSpec::dome)
        .def_readwrite("breakers", &plategen::durand::PlateSpec::breakers)
        .def_readwrite("seed", &plategen::durand::PlateSpec::seed)
        .def("resolved", &plategen::durand::PlateSpec::resolved);

    durand.def("breaker_catalog", [] { return plategen::durand::breaker_catalog(); });
    durand.def("make_seed", &plategen::durand::make_seed, py::arg("spec"));
    durand.def("generate_layout", &plategen::durand::generate_layout, py::arg("nx"),
               py::arg("ny"));
    durand.def("break_walls", &plategen::durand::break_walls, py::arg("canvas"),
               py::arg("breakers"));
    durand.def("mark_rooms", &plategen::durand::mark_rooms, py::arg("canvas"));
    durand.def("build_rooms", &plategen::durand::build_rooms, py::arg("canvas"));
    durand.def("add_corridors", &plategen::durand::add_corridors, py::arg("canvas"));
    durand.def("detail_plate", &plategen::durand::detail_plate, py::arg("canvas"),
               py::arg("dome") = false);
    durand.def("generate_plate", &plategen::durand::generate_plate, py::arg("spec"));
    durand.def("master_program", [] { return plategen::durand::master_program(); });
    durand.def("constants", [] {
        const auto& c = plategen::durand::constants();
        py::dict d;
        d["wall_thickness"] = c.wall_thickness;
        d["corridor_width"] = c.corridor_width;
        d["column_side"] = c.column_side;
        d["interaxis"] = c.interaxis;
        return d;
    });
}
