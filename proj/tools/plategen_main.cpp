// plategen: command-line front end for the rule-script engine and the
// Durand plate presets. Exit codes: 0 success, 1 user/program error
// (diagnostics, bad flags), 2 runtime or I/O error.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plategen/dsl.hpp"
#include "plategen/durand.hpp"
#include "plategen/engine.hpp"
#include "plategen/errors.hpp"
#include "plategen/render.hpp"

namespace {

using namespace plategen;

constexpr const char* kUsage = R"(usage: plategen <command> [options]

commands:
  run SCRIPT -o OUT.svg [--seed S] [--max-steps N] [--trace DIR]
      Parse, validate, and execute a rule script, starting from its
      'initial' shape (an empty canvas when it defines none), and render
      the final canvas as SVG.

  durand [--plate {4|5}] [--nx N] [--ny N] [--corridors] [--dome]
         [--breakers a,b] [--seed S] -o OUT.svg [--trace DIR]
      Generate a plate preset. --nx/--ny of 0 pick the plate's
      traditional courtyard grid (plate 4: 1x1, plate 5: 2x2).

  validate SCRIPT
      Parse and statically check a rule script; print diagnostics.
      Exit 0 iff the script is clean.

options:
  -o PATH        output SVG path (required for run and durand)
  --trace DIR    also write one step-NNNN.svg per snapshot instruction
                 plus a trace.log of every rule application
  --seed S       seed for random match selection (default 0)
  --max-steps N  step budget for run (default 200000, or the
                 PLATEGEN_MAX_STEPS environment variable)

Identical invocations produce byte-identical output files.
)";

struct CliConfig {
    std::string command;
    std::string script;
    std::string output;
    std::string trace_dir;
    std::uint64_t seed = 0;
    std::uint64_t max_steps = default_max_steps();
    durand::PlateSpec plate;
};

int usage_error(const std::string& message) {
    std::cerr << "plategen: " << message << "\n" << kUsage;
    return 1;
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) return std::nullopt;
    std::ostringstream out;
    out << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return out.str();
}

// All outputs are written atomically: a temp file in the target directory,
// flushed, then renamed over the destination.
void write_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out.good()) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out.good()) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    std::filesystem::rename(tmp, path);
}

std::string hex_digest(std::uint64_t digest) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

void write_trace(const std::string& dir, const Trace& trace) {
    std::filesystem::path root(dir);
    std::filesystem::create_directories(root);
    std::ostringstream log;
    for (std::size_t i = 0; i < trace.snapshots.size(); ++i) {
        const TraceSnapshot& snap = trace.snapshots[i];
        char name[32];
        std::snprintf(name, sizeof name, "step-%04zu.svg", i);
        write_atomic(root / name, render_svg(snap.shape));
        log << "snapshot " << name << "  tag " << snap.tag << "  step " << snap.step
            << "  digest " << hex_digest(snap.digest) << "\n";
    }
    for (const TraceStep& step : trace.steps) {
        log << "step " << step.step << "  digest " << hex_digest(step.digest) << "  rule "
            << (step.rule.empty() ? "-" : step.rule) << "  transform " << step.transform.str()
            << "  instr " << step.instruction << "\n";
    }
    write_atomic(root / "trace.log", log.str());
}

bool parse_u64(const std::string& text, std::uint64_t& out) {
    if (text.empty()) return false;
    std::uint64_t value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') return false;
        if (value > (UINT64_MAX - (c - '0')) / 10) return false;
        value = value * 10 + (c - '0');
    }
    out = value;
    return true;
}

bool parse_int(const std::string& text, int& out) {
    std::uint64_t value = 0;
    if (!parse_u64(text, value) || value > 1000000) return false;
    out = static_cast<int>(value);
    return true;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            if (!current.empty()) parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) parts.push_back(current);
    return parts;
}

void print_diagnostics(const std::string& path, const std::vector<Diagnostic>& diags) {
    for (const Diagnostic& d : diags) std::cerr << path << ":" << d.str() << "\n";
}

int cmd_validate(const CliConfig& cfg) {
    auto source = read_file(cfg.script);
    if (!source) {
        std::cerr << "plategen: cannot read '" << cfg.script << "'\n";
        return 2;
    }
    ParseResult parsed = parse_program(*source);
    std::vector<Diagnostic> diags = parsed.diagnostics;
    if (parsed.ok()) diags = validate_program(parsed.program);
    print_diagnostics(cfg.script, diags);
    return diags.empty() ? 0 : 1;
}

int cmd_run(const CliConfig& cfg) {
    auto source = read_file(cfg.script);
    if (!source) {
        std::cerr << "plategen: cannot read '" << cfg.script << "'\n";
        return 2;
    }
    ParseResult parsed = parse_program(*source);
    if (!parsed.ok()) {
        print_diagnostics(cfg.script, parsed.diagnostics);
        return 1;
    }
    std::vector<Diagnostic> diags = validate_program(parsed.program);
    if (!diags.empty()) {
        print_diagnostics(cfg.script, diags);
        return 1;
    }
    Shape initial;
    auto it = parsed.program.shapes.find("initial");
    if (it != parsed.program.shapes.end()) initial = it->second;
    RunOptions opts;
    opts.max_steps = cfg.max_steps;
    opts.rng_seed = cfg.seed;
    RunResult result = run(parsed.program, initial, opts);
    write_atomic(cfg.output, render_svg(result.shape));
    if (!cfg.trace_dir.empty()) write_trace(cfg.trace_dir, result.trace);
    return 0;
}

int cmd_durand(const CliConfig& cfg) {
    auto [shape, trace] = durand::generate_plate(cfg.plate);
    write_atomic(cfg.output, render_svg(shape));
    if (!cfg.trace_dir.empty()) write_trace(cfg.trace_dir, trace);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) return usage_error("missing command");
    if (args[0] == "-h" || args[0] == "--help" || args[0] == "help") {
        std::cout << kUsage;
        return 0;
    }

    CliConfig cfg;
    cfg.command = args[0];
    if (cfg.command != "run" && cfg.command != "durand" && cfg.command != "validate")
        return usage_error("unknown command '" + cfg.command + "'");

    auto value_of = [&](std::size_t& i) -> std::optional<std::string> {
        if (i + 1 >= args.size()) return std::nullopt;
        return args[++i];
    };

    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& arg = args[i];
        if (arg == "-o" || arg == "--output") {
            auto v = value_of(i);
            if (!v) return usage_error("-o needs a path");
            cfg.output = *v;
        } else if (arg == "--trace") {
            auto v = value_of(i);
            if (!v) return usage_error("--trace needs a directory");
            cfg.trace_dir = *v;
        } else if (arg == "--seed") {
            auto v = value_of(i);
            if (!v || !parse_u64(*v, cfg.seed)) return usage_error("--seed needs an integer");
            cfg.plate.seed = cfg.seed;
        } else if (arg == "--max-steps" && cfg.command == "run") {
            auto v = value_of(i);
            if (!v || !parse_u64(*v, cfg.max_steps))
                return usage_error("--max-steps needs an integer");
        } else if (cfg.command == "durand" && arg == "--plate") {
            auto v = value_of(i);
            if (!v || !parse_int(*v, cfg.plate.plate)) return usage_error("--plate needs 4 or 5");
        } else if (cfg.command == "durand" && arg == "--nx") {
            auto v = value_of(i);
            if (!v || !parse_int(*v, cfg.plate.nx)) return usage_error("--nx needs an integer");
        } else if (cfg.command == "durand" && arg == "--ny") {
            auto v = value_of(i);
            if (!v || !parse_int(*v, cfg.plate.ny)) return usage_error("--ny needs an integer");
        } else if (cfg.command == "durand" && arg == "--corridors") {
            cfg.plate.corridors = true;
        } else if (cfg.command == "durand" && arg == "--dome") {
            cfg.plate.dome = true;
        } else if (cfg.command == "durand" && arg == "--breakers") {
            auto v = value_of(i);
            if (!v) return usage_error("--breakers needs a comma-separated list");
            cfg.plate.breakers = split_commas(*v);
        } else if (!arg.empty() && arg[0] != '-' && cfg.script.empty() &&
                   cfg.command != "durand") {
            cfg.script = arg;
        } else {
            return usage_error("unexpected argument '" + arg + "'");
        }
    }

    if (cfg.command != "durand" && cfg.script.empty()) return usage_error("missing script path");
    if (cfg.command != "validate" && cfg.output.empty())
        return usage_error("missing -o output path");

    try {
        if (cfg.command == "validate") return cmd_validate(cfg);
        if (cfg.command == "run") return cmd_run(cfg);
        return cmd_durand(cfg);
    } catch (const ValidationError& e) {
        if (cfg.command == "durand") return usage_error(e.what());
        std::cerr << "plategen: " << e.what() << "\n";
        return 1;
    } catch (const UnknownBreaker& e) {
        return usage_error(e.what());
    } catch (const std::exception& e) {
        std::cerr << "plategen: " << e.what() << "\n";
        return 2;
    }
}
