#pragma once

#include <string>
#include <vector>

#include "plategen/engine.hpp"

namespace plategen {

struct Diagnostic {
    int line = 0;
    int col = 0;
    std::string message;
    std::string str() const {
        return std::to_string(line) + ":" + std::to_string(col) + ": " + message;
    }
};

// Result of parsing a rule-script source. The parser is total: it never
// throws on malformed input; it records located diagnostics and recovers at
// the next ';' or '}' so later definitions still parse. When ok() is false
// the program holds everything that parsed cleanly.
struct ParseResult {
    Program program;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return diagnostics.empty(); }
};

ParseResult parse_program(const std::string& source);

// parse_program, but a parse with diagnostics throws ValidationError whose
// message lists them.
Program parse_or_throw(const std::string& source);

// Static checks on a parsed (or hand-built) program: every applied or
// probed rule and every called block must exist, jump targets must be
// labels of the same block or loop body, the block call graph must be
// acyclic, and no rule may have an empty lhs. Returns one located
// diagnostic per violation; an empty list means the program is runnable.
// Instructions carry their source line; rule-level findings report 0:0.
std::vector<Diagnostic> validate_program(const Program& program);

// Canonical formatter: definitions sorted by kind then name, two-space
// indent, shapes in canonical element order, normalized rationals. The
// output parses back to an equal Program, and formatting is a fixpoint:
// format(parse(format(parse(s)))) == format(parse(s)).
std::string format_program(const Program& program);

}  // namespace plategen
