#include "plategen/dsl.hpp"

#include <cctype>
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <optional>

namespace plategen {

namespace {

enum class Tok {
    NAME, INT, STRING,
    LBRACE, RBRACE, LPAREN, RPAREN, LBRACK, RBRACK,
    COMMA, SEMI, MINUS, SLASH, ARROW,
    END,
};

struct Token {
    Tok kind;
    std::string text;
    int line = 1;
    int col = 1;
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::NAME: return "name";
        case Tok::INT: return "integer";
        case Tok::STRING: return "string";
        case Tok::LBRACE: return "'{'";
        case Tok::RBRACE: return "'}'";
        case Tok::LPAREN: return "'('";
        case Tok::RPAREN: return "')'";
        case Tok::LBRACK: return "'['";
        case Tok::RBRACK: return "']'";
        case Tok::COMMA: return "','";
        case Tok::SEMI: return "';'";
        case Tok::MINUS: return "'-'";
        case Tok::SLASH: return "'/'";
        case Tok::ARROW: return "'->'";
        case Tok::END: return "end of input";
    }
    return "?";
}

// Parse failure local to one definition/instruction/element; the caller
// records it and resynchronizes.
struct ParseError {
    Diagnostic diag;
};

[[noreturn]] void fail(const Token& at, const std::string& message) {
    throw ParseError{{at.line, at.col, message}};
}

class Lexer {
public:
    Lexer(const std::string& src, std::vector<Diagnostic>& diags) : src_(src), diags_(diags) {}

    std::vector<Token> lex() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            int line = line_, col = col_;
            if (eof()) {
                out.push_back({Tok::END, "", line, col});
                return out;
            }
            char c = peek();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name;
                while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                                  peek() == '_'))
                    name += advance();
                out.push_back({Tok::NAME, name, line, col});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
                    digits += advance();
                out.push_back({Tok::INT, digits, line, col});
            } else if (c == '"') {
                advance();
                std::string text;
                bool closed = false;
                while (!eof()) {
                    char ch = advance();
                    if (ch == '"') {
                        closed = true;
                        break;
                    }
                    if (ch == '\n') break;
                    if (ch == '\\' && !eof() && (peek() == '"' || peek() == '\\'))
                        ch = advance();
                    text += ch;
                }
                if (!closed)
                    diags_.push_back({line, col, "unterminated string literal"});
                out.push_back({Tok::STRING, text, line, col});
            } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                advance();
                advance();
                out.push_back({Tok::ARROW, "->", line, col});
            } else {
                advance();
                Tok kind;
                switch (c) {
                    case '{': kind = Tok::LBRACE; break;
                    case '}': kind = Tok::RBRACE; break;
                    case '(': kind = Tok::LPAREN; break;
                    case ')': kind = Tok::RPAREN; break;
                    case '[': kind = Tok::LBRACK; break;
                    case ']': kind = Tok::RBRACK; break;
                    case ',': kind = Tok::COMMA; break;
                    case ';': kind = Tok::SEMI; break;
                    case '-': kind = Tok::MINUS; break;
                    case '/': kind = Tok::SLASH; break;
                    default:
                        diags_.push_back({line, col,
                                          std::string("stray character '") + c + "'"});
                        continue;
                }
                out.push_back({kind, std::string(1, c), line, col});
            }
        }
    }

private:
    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip_space_and_comments() {
        while (!eof()) {
            char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    const std::string& src_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
        : toks_(std::move(tokens)), diags_(diags) {}

    Program parse() {
        Program prog;
        while (!at(Tok::END)) {
            try {
                parse_item(prog);
            } catch (const ParseError& e) {
                diags_.push_back(e.diag);
                recover_item();
            } catch (const std::exception& e) {
                // geometry errors from element construction become located
                // diagnostics; the parser itself never throws
                diags_.push_back({cur().line, cur().col, e.what()});
                recover_item();
            }
        }
        return prog;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    bool at(Tok kind) const { return cur().kind == kind; }
    bool at_word(const char* w) const { return at(Tok::NAME) && cur().text == w; }
    Token take() { return toks_[at(Tok::END) ? pos_ : pos_++]; }
    Token expect(Tok kind, const std::string& what) {
        if (!at(kind))
            fail(cur(), "expected " + what + ", found " + describe(cur()));
        return take();
    }
    Token expect_word(const char* w) {
        if (!at_word(w))
            fail(cur(), std::string("expected '") + w + "', found " + describe(cur()));
        return take();
    }
    static std::string describe(const Token& t) {
        if (t.kind == Tok::NAME) return "'" + t.text + "'";
        if (t.kind == Tok::INT) return "'" + t.text + "'";
        if (t.kind == Tok::STRING) return "string";
        return tok_name(t.kind);
    }

    // After a failed definition: skip to the next top-level keyword,
    // balancing braces so we do not resync inside the broken body.
    void recover_item() {
        int depth = 0;
        while (!at(Tok::END)) {
            if (at(Tok::LBRACE)) ++depth;
            if (at(Tok::RBRACE)) {
                if (depth <= 1) {
                    take();
                    return;
                }
                --depth;
            }
            if (depth == 0 &&
                (at_word("shape") || at_word("rule") || at_word("block") || at_word("main")))
                return;
            take();
        }
    }

    // After a failed statement inside a body: skip to ';' (consumed) or stop
    // before '}' so the body can close.
    void recover_statement() {
        while (!at(Tok::END) && !at(Tok::RBRACE)) {
            if (at(Tok::SEMI)) {
                take();
                return;
            }
            if (at(Tok::LBRACE)) {  // skip a nested block wholesale
                int depth = 0;
                while (!at(Tok::END)) {
                    if (at(Tok::LBRACE)) ++depth;
                    if (at(Tok::RBRACE) && --depth == 0) {
                        take();
                        return;
                    }
                    take();
                }
                return;
            }
            take();
        }
    }

    void parse_item(Program& prog) {
        if (at_word("shape")) {
            take();
            Token name = expect(Tok::NAME, "shape name");
            if (prog.shapes.count(name.text))
                diags_.push_back({name.line, name.col,
                                  "duplicate shape '" + name.text + "'"});
            expect(Tok::LBRACE, "'{'");
            prog.shapes[name.text] = parse_elements();
            expect(Tok::RBRACE, "'}'");
        } else if (at_word("rule")) {
            take();
            Token name = expect(Tok::NAME, "rule name");
            if (prog.rules.count(name.text))
                diags_.push_back({name.line, name.col,
                                  "duplicate rule '" + name.text + "'"});
            Rule rule;
            rule.name = name.text;
            if (at(Tok::LBRACK)) {
                take();
                while (!at(Tok::RBRACK)) {
                    Token flag = expect(Tok::NAME, "'rot', 'mirror', or 'scale'");
                    if (flag.text == "rot") rule.options.rotate = true;
                    else if (flag.text == "mirror") rule.options.mirror = true;
                    else if (flag.text == "scale") rule.options.scale = true;
                    else fail(flag, "unknown rule flag '" + flag.text + "'");
                }
                take();
            }
            expect(Tok::LBRACE, "'{'");
            expect_word("lhs");
            expect(Tok::LBRACE, "'{'");
            rule.lhs = parse_elements();
            expect(Tok::RBRACE, "'}'");
            expect_word("rhs");
            expect(Tok::LBRACE, "'{'");
            rule.rhs = parse_elements();
            expect(Tok::RBRACE, "'}'");
            expect(Tok::RBRACE, "'}'");
            prog.rules[rule.name] = std::move(rule);
        } else if (at_word("block")) {
            take();
            Token name = expect(Tok::NAME, "block name");
            if (prog.blocks.count(name.text))
                diags_.push_back({name.line, name.col,
                                  "duplicate block '" + name.text + "'"});
            expect(Tok::LBRACE, "'{'");
            prog.blocks[name.text] = parse_instructions();
            expect(Tok::RBRACE, "'}'");
        } else if (at_word("main")) {
            Token kw = take();
            if (seen_main_) diags_.push_back({kw.line, kw.col, "duplicate main block"});
            seen_main_ = true;
            expect(Tok::LBRACE, "'{'");
            prog.main = parse_instructions();
            expect(Tok::RBRACE, "'}'");
        } else {
            fail(cur(), "expected 'shape', 'rule', 'block', or 'main', found " +
                            describe(cur()));
        }
    }

    Shape parse_elements() {
        Shape shape;
        while (!at(Tok::RBRACE) && !at(Tok::END)) {
            try {
                parse_element(shape);
            } catch (const ParseError& e) {
                diags_.push_back(e.diag);
                recover_statement();
            } catch (const std::exception& e) {
                diags_.push_back({cur().line, cur().col, e.what()});
                recover_statement();
            }
        }
        return shape;
    }

    void parse_element(Shape& shape) {
        if (at_word("seg")) {
            Token kw = take();
            Layer layer = parse_layer();
            Point a = parse_point();
            expect(Tok::MINUS, "'-' between points");
            Point b = parse_point();
            if (a == b) fail(kw, "segment endpoints coincide at " + a.str());
            expect(Tok::SEMI, "';'");
            shape.add_segment(layer, a, b);
        } else if (at_word("pt")) {
            take();
            Layer layer = parse_layer();
            Point p = parse_point();
            expect_word("tag");
            Token tag = expect(Tok::NAME, "tag name");
            expect(Tok::SEMI, "';'");
            shape.add_point(layer, p, tag.text);
        } else {
            fail(cur(), "expected 'seg' or 'pt', found " + describe(cur()));
        }
    }

    Layer parse_layer() {
        Token t = expect(Tok::NAME, "layer name");
        std::string upper = t.text;
        for (char& c : upper) c = char(std::toupper(static_cast<unsigned char>(c)));
        auto layer = layer_from_name(upper);  // case-insensitive; formatter emits uppercase
        if (!layer)
            fail(t, "unknown layer '" + t.text +
                        "' (expected LAYOUT, MARK, DETAIL, WALL, or CONFIG)");
        return *layer;
    }

    Point parse_point() {
        expect(Tok::LPAREN, "'('");
        Rational x = parse_rational();
        expect(Tok::COMMA, "','");
        Rational y = parse_rational();
        expect(Tok::RPAREN, "')'");
        return {x, y};
    }

    std::int64_t parse_int_token(const Token& t) {
        errno = 0;
        char* end = nullptr;
        unsigned long long v = std::strtoull(t.text.c_str(), &end, 10);
        if (errno != 0 || v > static_cast<unsigned long long>(INT64_MAX))
            fail(t, "integer '" + t.text + "' is out of range");
        return static_cast<std::int64_t>(v);
    }

    Rational parse_rational() {
        bool neg = false;
        if (at(Tok::MINUS)) {
            take();
            neg = true;
        }
        Token num = expect(Tok::INT, "number");
        std::int64_t n = parse_int_token(num);
        std::int64_t d = 1;
        if (at(Tok::SLASH)) {
            take();
            Token den = expect(Tok::INT, "denominator");
            d = parse_int_token(den);
            if (d == 0) fail(den, "denominator is zero");
        }
        return Rational(neg ? -n : n, d);
    }

    std::uint64_t parse_count() {
        Token t = expect(Tok::INT, "count");
        errno = 0;
        char* end = nullptr;
        unsigned long long v = std::strtoull(t.text.c_str(), &end, 10);
        if (errno != 0) fail(t, "count '" + t.text + "' is out of range");
        return static_cast<std::uint64_t>(v);
    }

    InstructionList parse_instructions() {
        InstructionList list;
        while (!at(Tok::RBRACE) && !at(Tok::END)) {
            try {
                parse_instruction(list);
            } catch (const ParseError& e) {
                diags_.push_back(e.diag);
                recover_statement();
            } catch (const std::exception& e) {
                diags_.push_back({cur().line, cur().col, e.what()});
                recover_statement();
            }
        }
        return list;
    }

    void parse_instruction(InstructionList& list) {
        int line = cur().line;
        if (at_word("apply")) {
            take();
            ApplyInstr a;
            a.rule = expect(Tok::NAME, "rule name").text;
            Token mode = expect(Tok::NAME, "'once', 'all', 'times', or 'while'");
            if (mode.text == "once") {
                a.mode.kind = ApplyMode::Kind::ONCE;
            } else if (mode.text == "all") {
                a.mode.kind = ApplyMode::Kind::ALL;
            } else if (mode.text == "times") {
                a.mode.kind = ApplyMode::Kind::TIMES;
                a.mode.limit = parse_count();
            } else if (mode.text == "while") {
                a.mode.kind = ApplyMode::Kind::WHILE;
                a.mode.limit = parse_count();
            } else {
                fail(mode, "unknown apply mode '" + mode.text + "'");
            }
            if (at_word("first")) {
                take();
            } else if (at_word("random")) {
                take();
                a.selector = Selector::RANDOM;
            }
            expect(Tok::SEMI, "';'");
            list.push_back({a, line});
        } else if (at_word("call")) {
            take();
            CallInstr c;
            c.block = expect(Tok::NAME, "block name").text;
            expect(Tok::SEMI, "';'");
            list.push_back({c, line});
        } else if (at_word("loop")) {
            take();
            LoopInstr l;
            l.count = parse_count();
            expect(Tok::LBRACE, "'{'");
            l.body = parse_instructions();
            expect(Tok::RBRACE, "'}'");
            list.push_back({l, line});
        } else if (at_word("label")) {
            take();
            LabelInstr l;
            l.name = expect(Tok::NAME, "label name").text;
            expect(Tok::SEMI, "';'");
            list.push_back({l, line});
        } else if (at_word("jump")) {
            take();
            JumpInstr j;
            j.label = expect(Tok::NAME, "label name").text;
            expect(Tok::SEMI, "';'");
            list.push_back({j, line});
        } else if (at_word("jumpif")) {
            take();
            JumpIfInstr j;
            Token cond = expect(Tok::NAME, "'match' or 'nomatch'");
            if (cond.text == "match") j.on_match = true;
            else if (cond.text == "nomatch") j.on_match = false;
            else fail(cond, "expected 'match' or 'nomatch', found '" + cond.text + "'");
            j.rule = expect(Tok::NAME, "rule name").text;
            expect(Tok::ARROW, "'->'");
            j.label = expect(Tok::NAME, "label name").text;
            expect(Tok::SEMI, "';'");
            list.push_back({j, line});
        } else if (at_word("snapshot")) {
            take();
            SnapshotInstr s;
            s.tag = expect(Tok::STRING, "snapshot tag string").text;
            expect(Tok::SEMI, "';'");
            list.push_back({s, line});
        } else if (at_word("halt")) {
            take();
            expect(Tok::SEMI, "';'");
            list.push_back({HaltInstr{}, line});
        } else {
            fail(cur(), "expected an instruction, found " + describe(cur()));
        }
    }

    std::vector<Token> toks_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;
    bool seen_main_ = false;
};

std::string escape_tag(const std::string& tag) {
    std::string out;
    for (char c : tag) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void format_elements(std::string& out, const Shape& shape, const std::string& indent) {
    for (const Segment& s : shape.segments()) {
        out += indent + "seg " + layer_name(s.layer) + " " + s.p1.str() + " - " +
               s.p2.str() + ";\n";
    }
    for (const TaggedPoint& p : shape.points()) {
        out += indent + "pt " + layer_name(p.layer) + " " + p.pos.str() + " tag " + p.tag +
               ";\n";
    }
}

void format_instructions(std::string& out, const InstructionList& list, int depth) {
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    for (const Instruction& ins : list) {
        if (const auto* a = std::get_if<ApplyInstr>(&ins.op)) {
            out += indent + "apply " + a->rule + " ";
            switch (a->mode.kind) {
                case ApplyMode::Kind::ONCE: out += "once"; break;
                case ApplyMode::Kind::ALL: out += "all"; break;
                case ApplyMode::Kind::TIMES: out += "times " + std::to_string(a->mode.limit); break;
                case ApplyMode::Kind::WHILE: out += "while " + std::to_string(a->mode.limit); break;
            }
            if (a->selector == Selector::RANDOM) out += " random";
            out += ";\n";
        } else if (const auto* c = std::get_if<CallInstr>(&ins.op)) {
            out += indent + "call " + c->block + ";\n";
        } else if (const auto* l = std::get_if<LoopInstr>(&ins.op)) {
            out += indent + "loop " + std::to_string(l->count) + " {\n";
            format_instructions(out, l->body, depth + 1);
            out += indent + "}\n";
        } else if (const auto* lb = std::get_if<LabelInstr>(&ins.op)) {
            out += indent + "label " + lb->name + ";\n";
        } else if (const auto* j = std::get_if<JumpInstr>(&ins.op)) {
            out += indent + "jump " + j->label + ";\n";
        } else if (const auto* ji = std::get_if<JumpIfInstr>(&ins.op)) {
            out += indent + "jumpif " + (ji->on_match ? "match " : "nomatch ") + ji->rule +
                   " -> " + ji->label + ";\n";
        } else if (const auto* s = std::get_if<SnapshotInstr>(&ins.op)) {
            out += indent + "snapshot \"" + escape_tag(s->tag) + "\";\n";
        } else if (std::get_if<HaltInstr>(&ins.op)) {
            out += indent + "halt;\n";
        }
    }
}

}  // namespace

ParseResult parse_program(const std::string& source) {
    ParseResult result;
    Lexer lexer(source, result.diagnostics);
    Parser parser(lexer.lex(), result.diagnostics);
    result.program = parser.parse();
    return result;
}

Program parse_or_throw(const std::string& source) {
    ParseResult result = parse_program(source);
    if (!result.ok()) {
        std::string msg = "parse failed:";
        for (const Diagnostic& d : result.diagnostics) msg += "\n  " + d.str();
        throw ValidationError(msg);
    }
    return result.program;
}

std::string format_program(const Program& program) {
    std::string out;
    bool first = true;
    auto gap = [&] {
        if (!first) out += "\n";
        first = false;
    };
    for (const auto& [name, shape] : program.shapes) {
        gap();
        out += "shape " + name + " {\n";
        format_elements(out, shape, "  ");
        out += "}\n";
    }
    for (const auto& [name, rule] : program.rules) {
        gap();
        out += "rule " + name;
        if (rule.options.rotate || rule.options.mirror || rule.options.scale) {
            out += " [";
            std::string flags;
            if (rule.options.rotate) flags += "rot ";
            if (rule.options.mirror) flags += "mirror ";
            if (rule.options.scale) flags += "scale ";
            flags.pop_back();
            out += flags + "]";
        }
        out += " {\n  lhs {\n";
        format_elements(out, rule.lhs, "    ");
        out += "  }\n  rhs {\n";
        format_elements(out, rule.rhs, "    ");
        out += "  }\n}\n";
    }
    for (const auto& [name, block] : program.blocks) {
        gap();
        out += "block " + name + " {\n";
        format_instructions(out, block, 1);
        out += "}\n";
    }
    gap();
    out += "main {\n";
    format_instructions(out, program.main, 1);
    out += "}\n";
    return out;
}

namespace {

// Labels are local to one block or loop body; loop bodies are checked as
// their own scopes, mirroring the executor's jump resolution.
void check_list(const Program& program, const InstructionList& list,
                std::vector<Diagnostic>& out) {
    std::set<std::string> labels;
    for (const Instruction& ins : list) {
        if (const auto* l = std::get_if<LabelInstr>(&ins.op)) {
            if (!labels.insert(l->name).second)
                out.push_back({ins.line, 1, "duplicate label '" + l->name + "'"});
        }
    }
    for (const Instruction& ins : list) {
        if (const auto* a = std::get_if<ApplyInstr>(&ins.op)) {
            if (!program.rules.count(a->rule))
                out.push_back({ins.line, 1, "apply of undefined rule '" + a->rule + "'"});
        } else if (const auto* c = std::get_if<CallInstr>(&ins.op)) {
            if (!program.blocks.count(c->block))
                out.push_back({ins.line, 1, "call of undefined block '" + c->block + "'"});
        } else if (const auto* j = std::get_if<JumpInstr>(&ins.op)) {
            if (!labels.count(j->label))
                out.push_back({ins.line, 1, "jump to unknown label '" + j->label + "'"});
        } else if (const auto* ji = std::get_if<JumpIfInstr>(&ins.op)) {
            if (!program.rules.count(ji->rule))
                out.push_back({ins.line, 1, "jumpif probes undefined rule '" + ji->rule + "'"});
            if (!labels.count(ji->label))
                out.push_back({ins.line, 1, "jumpif to unknown label '" + ji->label + "'"});
        } else if (const auto* lp = std::get_if<LoopInstr>(&ins.op)) {
            check_list(program, lp->body, out);
        }
    }
}

void collect_calls(const InstructionList& list, std::set<std::string>& out) {
    for (const Instruction& ins : list) {
        if (const auto* c = std::get_if<CallInstr>(&ins.op)) out.insert(c->block);
        else if (const auto* lp = std::get_if<LoopInstr>(&ins.op)) collect_calls(lp->body, out);
    }
}

// 0 = unvisited, 1 = on the current path, 2 = done.
bool find_cycle(const Program& program, const std::string& block,
                std::map<std::string, int>& state, std::vector<std::string>& path) {
    int& st = state[block];
    if (st == 1) {
        path.push_back(block);
        return true;
    }
    if (st == 2) return false;
    st = 1;
    auto it = program.blocks.find(block);
    if (it != program.blocks.end()) {
        std::set<std::string> callees;
        collect_calls(it->second, callees);
        for (const std::string& callee : callees) {
            if (find_cycle(program, callee, state, path)) {
                path.push_back(block);
                return true;
            }
        }
    }
    st = 2;
    return false;
}

}  // namespace

std::vector<Diagnostic> validate_program(const Program& program) {
    std::vector<Diagnostic> out;
    for (const auto& [name, rule] : program.rules) {
        (void)name;
        if (rule.lhs.empty())
            out.push_back({0, 0, "rule '" + rule.name + "' has an empty lhs"});
    }
    for (const auto& [name, block] : program.blocks) {
        (void)name;
        check_list(program, block, out);
    }
    check_list(program, program.main, out);
    std::map<std::string, int> state;
    for (const auto& [name, block] : program.blocks) {
        (void)block;
        std::vector<std::string> path;
        if (find_cycle(program, name, state, path)) {
            std::string msg = "block call cycle:";
            for (auto it = path.rbegin(); it != path.rend(); ++it) msg += " " + *it;
            out.push_back({0, 0, msg});
        }
        // a found cycle unwinds without finishing its path nodes; close them
        // out so later roots do not rediscover the same cycle
        for (auto& [block_name, st] : state)
            if (st == 1) st = 2;
    }
    return out;
}

}  // namespace plategen
