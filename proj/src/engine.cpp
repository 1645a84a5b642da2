#include "plategen/engine.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>

namespace plategen {

namespace {

std::string mode_text(const ApplyMode& mode) {
    switch (mode.kind) {
        case ApplyMode::Kind::ONCE: return "once";
        case ApplyMode::Kind::ALL: return "all";
        case ApplyMode::Kind::TIMES: return "times " + std::to_string(mode.limit);
        case ApplyMode::Kind::WHILE: return "while " + std::to_string(mode.limit);
    }
    return "once";
}

std::string apply_text(const ApplyInstr& a) {
    std::string out = "apply " + a.rule + " " + mode_text(a.mode);
    if (a.selector == Selector::RANDOM) out += " random";
    return out + ";";
}

// Uniform index in [0, n) from raw 64-bit draws: mask to the smallest
// covering power of two and reject overshoots. std::uniform_int_distribution
// is implementation-defined, so it would not give reproducible runs.
std::size_t pick_uniform(std::mt19937_64& rng, std::size_t n) {
    if (n <= 1) return 0;
    std::uint64_t mask = ~0ULL >> std::countl_zero(static_cast<std::uint64_t>(n - 1));
    for (;;) {
        std::uint64_t v = rng() & mask;
        if (v < n) return static_cast<std::size_t>(v);
    }
}

void validate_list(const Program& prog, const InstructionList& list) {
    std::set<std::string> labels;
    for (const Instruction& ins : list) {
        if (const auto* l = std::get_if<LabelInstr>(&ins.op)) {
            if (!labels.insert(l->name).second)
                throw ValidationError("duplicate label '" + l->name + "'");
        }
    }
    for (const Instruction& ins : list) {
        if (const auto* a = std::get_if<ApplyInstr>(&ins.op)) {
            if (!prog.rules.count(a->rule))
                throw ValidationError("apply of undefined rule '" + a->rule + "'");
        } else if (const auto* c = std::get_if<CallInstr>(&ins.op)) {
            if (!prog.blocks.count(c->block))
                throw ValidationError("call of undefined block '" + c->block + "'");
        } else if (const auto* j = std::get_if<JumpInstr>(&ins.op)) {
            if (!labels.count(j->label))
                throw ValidationError("jump to unknown label '" + j->label +
                                      "' (labels are local to their block or loop body)");
        } else if (const auto* ji = std::get_if<JumpIfInstr>(&ins.op)) {
            if (!prog.rules.count(ji->rule))
                throw ValidationError("jumpif probes undefined rule '" + ji->rule + "'");
            if (!labels.count(ji->label))
                throw ValidationError("jumpif to unknown label '" + ji->label +
                                      "' (labels are local to their block or loop body)");
        } else if (const auto* lp = std::get_if<LoopInstr>(&ins.op)) {
            validate_list(prog, lp->body);
        }
    }
}

void validate(const Program& prog) {
    for (const auto& [name, block] : prog.blocks) validate_list(prog, block);
    validate_list(prog, prog.main);
}

class Executor {
public:
    Executor(const Program& prog, const Shape& initial, const RunOptions& opts)
        : prog_(prog), opts_(opts), rng_(opts.rng_seed), canvas_(initial) {}

    RunResult finish() && {
        run_list(prog_.main);
        return {std::move(canvas_), std::move(trace_), steps_, halted_};
    }

    RunResult finish_block(const std::string& block) && {
        auto it = prog_.blocks.find(block);
        if (it == prog_.blocks.end()) throw ValidationError("unknown block '" + block + "'");
        run_list(it->second);
        return {std::move(canvas_), std::move(trace_), steps_, halted_};
    }

private:
    void bump() {
        if (++steps_ > opts_.max_steps)
            throw StepLimitExceeded("step limit " + std::to_string(opts_.max_steps) +
                                    " exceeded");
    }

    // Applies the chosen match and records it. One step per application.
    void apply_match(const ApplyInstr& ins, const Rule& rule, const Transform& t) {
        canvas_ = Shape::sum(Shape::difference(canvas_, rule.lhs.transformed(t)),
                             rule.rhs.transformed(t));
        bump();
        trace_.steps.push_back({steps_, apply_text(ins), rule.name, t, canvas_.digest()});
    }

    // One ONCE round: match, select, apply. False when nothing matched.
    bool apply_once(const ApplyInstr& ins, const Rule& rule) {
        auto matches = find_matches(rule.lhs, canvas_, rule.options);
        if (matches.empty()) return false;
        std::size_t index = ins.selector == Selector::RANDOM
                                ? pick_uniform(rng_, matches.size())
                                : 0;
        apply_match(ins, rule, matches[index]);
        return true;
    }

    void exec_apply(const ApplyInstr& ins) {
        const Rule& rule = prog_.rules.at(ins.rule);
        switch (ins.mode.kind) {
            case ApplyMode::Kind::ONCE:
                apply_once(ins, rule);
                break;
            case ApplyMode::Kind::ALL: {
                // Matches are frozen against the canvas as it is now; stale
                // images (consumed by an earlier application in this round)
                // are skipped.
                auto matches = find_matches(rule.lhs, canvas_, rule.options);
                for (const Transform& t : matches) {
                    if (!Shape::part_of(rule.lhs.transformed(t), canvas_)) continue;
                    apply_match(ins, rule, t);
                }
                break;
            }
            case ApplyMode::Kind::TIMES:
                for (std::uint64_t i = 0; i < ins.mode.limit; ++i)
                    if (!apply_once(ins, rule)) break;
                break;
            case ApplyMode::Kind::WHILE:
                // Reaching the cap is a normal stop.
                for (std::uint64_t i = 0; i < ins.mode.limit; ++i)
                    if (!apply_once(ins, rule)) break;
                break;
        }
    }

    void run_list(const InstructionList& list) {
        std::map<std::string, std::size_t> labels;
        for (std::size_t i = 0; i < list.size(); ++i)
            if (const auto* l = std::get_if<LabelInstr>(&list[i].op)) labels[l->name] = i;

        std::size_t i = 0;
        while (i < list.size() && !halted_) {
            const Instruction& ins = list[i];
            ++i;
            if (const auto* a = std::get_if<ApplyInstr>(&ins.op)) {
                bump();
                exec_apply(*a);
            } else if (const auto* c = std::get_if<CallInstr>(&ins.op)) {
                bump();
                run_list(prog_.blocks.at(c->block));
            } else if (const auto* lp = std::get_if<LoopInstr>(&ins.op)) {
                bump();
                for (std::uint64_t k = 0; k < lp->count && !halted_; ++k) run_list(lp->body);
            } else if (std::get_if<LabelInstr>(&ins.op)) {
                bump();
            } else if (const auto* j = std::get_if<JumpInstr>(&ins.op)) {
                bump();
                i = labels.at(j->label);
            } else if (const auto* ji = std::get_if<JumpIfInstr>(&ins.op)) {
                bump();
                const Rule& rule = prog_.rules.at(ji->rule);
                bool hit = exists_match(rule.lhs, canvas_, rule.options);
                if (hit == ji->on_match) i = labels.at(ji->label);
            } else if (const auto* s = std::get_if<SnapshotInstr>(&ins.op)) {
                bump();
                trace_.snapshots.push_back({s->tag, steps_, canvas_.digest(), canvas_});
            } else if (std::get_if<HaltInstr>(&ins.op)) {
                bump();
                halted_ = true;
            }
        }
    }

    const Program& prog_;
    RunOptions opts_;
    std::mt19937_64 rng_;
    Shape canvas_;
    Trace trace_;
    std::uint64_t steps_ = 0;
    bool halted_ = false;
};

}  // namespace

Shape apply_rule(const Shape& canvas, const Rule& rule, const Transform& t) {
    Shape image = rule.lhs.transformed(t);
    if (!Shape::part_of(image, canvas))
        throw NotAMatch("rule '" + rule.name + "' does not match at " + t.str());
    return Shape::sum(Shape::difference(canvas, image), rule.rhs.transformed(t));
}

RunResult run(const Program& program, const Shape& initial, const RunOptions& opts) {
    validate(program);
    return Executor(program, initial, opts).finish();
}

RunResult run_block(const Program& program, const std::string& block, const Shape& initial,
                    const RunOptions& opts) {
    validate(program);
    return Executor(program, initial, opts).finish_block(block);
}

Shape replay(const Program& program, const Trace& trace, const Shape& initial) {
    Shape canvas = initial;
    std::size_t snap = 0;
    auto check_snapshots_before = [&](std::uint64_t step) {
        while (snap < trace.snapshots.size() && trace.snapshots[snap].step < step) {
            if (trace.snapshots[snap].digest != canvas.digest())
                throw TraceDiverged("snapshot '" + trace.snapshots[snap].tag +
                                    "' digest mismatch during replay");
            ++snap;
        }
    };
    for (const TraceStep& step : trace.steps) {
        check_snapshots_before(step.step);
        auto it = program.rules.find(step.rule);
        if (it == program.rules.end())
            throw TraceDiverged("trace references unknown rule '" + step.rule + "'");
        const Rule& rule = it->second;
        Shape image = rule.lhs.transformed(step.transform);
        if (!Shape::part_of(image, canvas))
            throw TraceDiverged("recorded match of '" + step.rule + "' at " +
                                step.transform.str() + " no longer applies");
        canvas = Shape::sum(Shape::difference(canvas, image),
                            rule.rhs.transformed(step.transform));
        if (canvas.digest() != step.digest)
            throw TraceDiverged("canvas digest mismatch after step " +
                                std::to_string(step.step));
    }
    check_snapshots_before(UINT64_MAX);
    return canvas;
}

std::uint64_t default_max_steps() {
    if (const char* env = std::getenv("PLATEGEN_MAX_STEPS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
    }
    return 200000;
}

bool operator==(const Program& a, const Program& b) {
    auto rules_equal = [](const std::map<std::string, Rule>& x,
                          const std::map<std::string, Rule>& y) {
        if (x.size() != y.size()) return false;
        for (auto xi = x.begin(), yi = y.begin(); xi != x.end(); ++xi, ++yi) {
            if (xi->first != yi->first) return false;
            const Rule &r = xi->second, &s = yi->second;
            if (r.name != s.name || r.lhs != s.lhs || r.rhs != s.rhs) return false;
            if (r.options.rotate != s.options.rotate || r.options.mirror != s.options.mirror ||
                r.options.scale != s.options.scale)
                return false;
        }
        return true;
    };
    std::function<bool(const InstructionList&, const InstructionList&)> lists_equal =
        [&](const InstructionList& x, const InstructionList& y) {
            if (x.size() != y.size()) return false;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const auto &ox = x[i].op, &oy = y[i].op;
                if (ox.index() != oy.index()) return false;
                if (const auto* ax = std::get_if<ApplyInstr>(&ox)) {
                    const auto* ay = std::get_if<ApplyInstr>(&oy);
                    if (ax->rule != ay->rule || ax->mode.kind != ay->mode.kind ||
                        ax->mode.limit != ay->mode.limit || ax->selector != ay->selector)
                        return false;
                } else if (const auto* cx = std::get_if<CallInstr>(&ox)) {
                    if (cx->block != std::get_if<CallInstr>(&oy)->block) return false;
                } else if (const auto* lx = std::get_if<LoopInstr>(&ox)) {
                    const auto* ly = std::get_if<LoopInstr>(&oy);
                    if (lx->count != ly->count || !lists_equal(lx->body, ly->body)) return false;
                } else if (const auto* bx = std::get_if<LabelInstr>(&ox)) {
                    if (bx->name != std::get_if<LabelInstr>(&oy)->name) return false;
                } else if (const auto* jx = std::get_if<JumpInstr>(&ox)) {
                    if (jx->label != std::get_if<JumpInstr>(&oy)->label) return false;
                } else if (const auto* jix = std::get_if<JumpIfInstr>(&ox)) {
                    const auto* jiy = std::get_if<JumpIfInstr>(&oy);
                    if (jix->on_match != jiy->on_match || jix->rule != jiy->rule ||
                        jix->label != jiy->label)
                        return false;
                } else if (const auto* sx = std::get_if<SnapshotInstr>(&ox)) {
                    if (sx->tag != std::get_if<SnapshotInstr>(&oy)->tag) return false;
                }
            }
            return true;
        };
    if (!(a.shapes == b.shapes)) return false;
    if (!rules_equal(a.rules, b.rules)) return false;
    if (a.blocks.size() != b.blocks.size()) return false;
    for (auto ai = a.blocks.begin(), bi = b.blocks.begin(); ai != a.blocks.end(); ++ai, ++bi) {
        if (ai->first != bi->first || !lists_equal(ai->second, bi->second)) return false;
    }
    return lists_equal(a.main, b.main);
}

}  // namespace plategen
