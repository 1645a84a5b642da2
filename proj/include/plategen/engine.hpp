#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plategen/matcher.hpp"

namespace plategen {

struct Rule {
    std::string name;
    Shape lhs;
    Shape rhs;
    MatchOptions options;
};

// How often one apply instruction fires its rule.
//   ONCE    exactly one application (no match: no-op)
//   ALL     every match found on the canvas as it was when the instruction
//           started; matches whose image is no longer present are skipped
//   TIMES   n sequential ONCE applications, stopping early when no match
//   WHILE   sequential ONCE applications until no match or the cap is hit;
//           hitting the cap is a normal stop, not an error
struct ApplyMode {
    enum class Kind { ONCE, ALL, TIMES, WHILE } kind = Kind::ONCE;
    std::uint64_t limit = 0;  // TIMES: n, WHILE: cap
};

// Which match an apply instruction picks when several exist.
enum class Selector { FIRST, RANDOM };

struct Instruction;
using InstructionList = std::vector<Instruction>;

struct ApplyInstr {
    std::string rule;
    ApplyMode mode;
    Selector selector = Selector::FIRST;
};
struct CallInstr {
    std::string block;
};
struct LoopInstr {
    std::uint64_t count = 0;
    InstructionList body;
};
struct LabelInstr {
    std::string name;
};
struct JumpInstr {
    std::string label;
};
// jumpif match R -> L / jumpif nomatch R -> L
struct JumpIfInstr {
    bool on_match = true;
    std::string rule;
    std::string label;
};
struct SnapshotInstr {
    std::string tag;
};
struct HaltInstr {};

struct Instruction {
    std::variant<ApplyInstr, CallInstr, LoopInstr, LabelInstr, JumpInstr, JumpIfInstr,
                 SnapshotInstr, HaltInstr>
        op;
    int line = 0;  // source line, 0 when built programmatically
};

struct Program {
    std::map<std::string, Shape> shapes;  // named shape definitions
    std::map<std::string, Rule> rules;
    std::map<std::string, InstructionList> blocks;
    InstructionList main;

    friend bool operator==(const Program& a, const Program& b);
};

struct TraceStep {
    std::uint64_t step = 0;        // engine step counter after this application
    std::string instruction;       // rendered source of the instruction
    std::string rule;
    Transform transform;
    std::uint64_t digest = 0;      // canvas digest after this application
};

struct TraceSnapshot {
    std::string tag;
    std::uint64_t step = 0;
    std::uint64_t digest = 0;
    Shape shape;
};

struct Trace {
    std::vector<TraceStep> steps;
    std::vector<TraceSnapshot> snapshots;
};

struct RunOptions {
    std::uint64_t max_steps = 200000;  // overridden by PLATEGEN_MAX_STEPS env var
    std::uint64_t rng_seed = 0;        // for Selector::RANDOM
};

struct RunResult {
    Shape shape;
    Trace trace;
    std::uint64_t steps = 0;
    bool halted = false;  // stopped by halt
};

// Applies one rule at one match: canvas - T(lhs) + T(rhs). Throws NotAMatch
// if T(lhs) is not part of the canvas.
Shape apply_rule(const Shape& canvas, const Rule& rule, const Transform& t);

// Runs program.main against the initial canvas. Every instruction costs one
// step and every rule application costs one step; exceeding max_steps
// throws StepLimitExceeded. Undefined rule/block/label names throw
// ValidationError before anything runs.
RunResult run(const Program& program, const Shape& initial, const RunOptions& opts = {});

// Runs one named block instead of main.
RunResult run_block(const Program& program, const std::string& block, const Shape& initial,
                    const RunOptions& opts = {});

// Re-applies the recorded applications to the initial canvas, checking each
// recorded image is still a subshape and each digest agrees; throws
// TraceDiverged otherwise. Returns the final canvas.
Shape replay(const Program& program, const Trace& trace, const Shape& initial);

// Effective default step limit: RunOptions{}.max_steps unless the
// PLATEGEN_MAX_STEPS environment variable gives a positive integer.
std::uint64_t default_max_steps();

}  // namespace plategen
