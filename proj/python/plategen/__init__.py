"""Shape-grammar rewriting engine with an exact-rational shape algebra.

The heavy lifting lives in the compiled ``_plategen`` module; this package
re-exports its public surface.
"""

from ._plategen import (  # noqa: F401
    Box,
    DeserializeError,
    Diagnostic,
    DomeWithoutCourtyard,
    GeometryOverflow,
    InvalidGeometry,
    Layer,
    MatchOptions,
    NotAMatch,
    Point,
    Program,
    Rational,
    Rule,
    RunOptions,
    RunResult,
    Segment,
    Shape,
    StepLimitExceeded,
    TaggedPoint,
    Trace,
    TraceDiverged,
    TraceSnapshot,
    TraceStep,
    Transform,
    UnknownBreaker,
    UnknownRoomShape,
    ValidationError,
    apply_rule,
    default_max_steps,
    durand,
    exists_match,
    find_matches,
    format_program,
    parse_diagnostics,
    parse_program,
    render_svg,
    replay,
    run,
    run_block,
    shape_from_json,
    shape_to_json,
    trace_from_json,
    trace_to_json,
    transform_from_json,
    transform_to_json,
    validate_program,
)

__all__ = [name for name in dir() if not name.startswith("_")]
