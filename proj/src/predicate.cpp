#include "witness/predicate.hpp"

#include <array>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace witness {

namespace {

constexpr std::string_view kLearnedText =
    "f(A,B) :- square(B,C,D), path(A,E), count(D,E,F), greaterThan(F,C).\n"
    "f(A,B) :- square(B,D,C), path(A,E), count(E,C,F), notAdjacent(A,B), three(D), one(F).\n"
    "f(A,B) :- square(B,D,C), path(A,E), count(E,C,F), notAdjacent(A,B), three(D), two(F).\n";

enum class Type : std::uint8_t { path, square, integer, list };

struct ArgSpec {
    Type type;
    bool output;  // may bind an unbound variable
};

struct AtomSpec {
    AtomKind kind;
    std::string_view name;
    std::vector<ArgSpec> args;
};

const std::vector<AtomSpec>& vocabulary()
{
    static const std::vector<AtomSpec> specs = {
        {AtomKind::square, "square", {{Type::square, false}, {Type::integer, true}, {Type::list, true}}},
        {AtomKind::path, "path", {{Type::path, false}, {Type::list, true}}},
        {AtomKind::count, "count", {{Type::list, false}, {Type::list, false}, {Type::integer, true}}},
        {AtomKind::len, "len", {{Type::list, false}, {Type::integer, true}}},
        {AtomKind::gte, "gte", {{Type::integer, false}, {Type::integer, false}}},
        {AtomKind::greater_than, "greaterThan", {{Type::integer, false}, {Type::integer, false}}},
        {AtomKind::adjacent, "adjacent", {{Type::path, false}, {Type::square, false}}},
        {AtomKind::not_adjacent, "notAdjacent", {{Type::path, false}, {Type::square, false}}},
        {AtomKind::one, "one", {{Type::integer, false}}},
        {AtomKind::two, "two", {{Type::integer, false}}},
        {AtomKind::three, "three", {{Type::integer, false}}},
    };
    return specs;
}

const AtomSpec& spec_of(AtomKind kind)
{
    return vocabulary()[static_cast<std::size_t>(kind)];
}

std::optional<AtomKind> lookup_atom(std::string_view name)
{
    for (const auto& s : vocabulary())
        if (s.name == name) return s.kind;
    return std::nullopt;
}

std::string_view type_name(Type t)
{
    switch (t) {
    case Type::path: return "path";
    case Type::square: return "square";
    case Type::integer: return "integer";
    case Type::list: return "edge list";
    }
    return "?";
}

struct SourcePos {
    int line = 0;
    int column = 0;
};

}  // namespace

PredicateError::PredicateError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + message
                                  : message),
      line_(line),
      column_(column)
{
}

std::string_view atom_name(AtomKind kind) { return spec_of(kind).name; }

int atom_arity(AtomKind kind) { return static_cast<int>(spec_of(kind).args.size()); }

// Validation and compilation share one pass. Positions, when supplied, hold
// one entry per body atom for error reporting.
namespace {

std::vector<Clause::Op> compile_clause(const std::string& path_var, const std::string& square_var,
                                       const std::vector<Atom>& body, const std::vector<SourcePos>& where,
                                       int& variable_count)
{
    auto fail = [&](std::size_t atom, const std::string& msg) -> PredicateError {
        const SourcePos pos = atom < where.size() ? where[atom] : SourcePos{};
        return PredicateError(msg, pos.line, pos.column);
    };

    if (path_var == square_var)
        throw fail(body.size(), "head variables must be distinct");

    struct Binding {
        int slot;
        Type type;
        bool bound;
    };
    std::map<std::string, Binding, std::less<>> vars;
    vars[path_var] = {0, Type::path, true};
    vars[square_var] = {1, Type::square, true};
    int next_slot = 2;

    std::vector<Clause::Op> ops;
    for (std::size_t i = 0; i < body.size(); ++i) {
        const Atom& atom = body[i];
        const AtomSpec& spec = spec_of(atom.kind);
        if (atom.args.size() != spec.args.size())
            throw fail(i, "atom '" + std::string(spec.name) + "' expects " +
                              std::to_string(spec.args.size()) + " arguments, got " +
                              std::to_string(atom.args.size()));
        Clause::Op op{atom.kind, {}};
        for (std::size_t a = 0; a < atom.args.size(); ++a) {
            const Term& term = atom.args[a];
            const ArgSpec& arg = spec.args[a];
            Clause::Operand& operand = op.args[a];
            if (term.kind == Term::Kind::integer) {
                if (arg.type != Type::integer)
                    throw fail(i, "argument " + std::to_string(a + 1) + " of '" + std::string(spec.name) +
                                      "' must be a " + std::string(type_name(arg.type)) +
                                      " variable, not a constant");
                operand.constant = term.value;
                continue;
            }
            auto it = vars.find(term.variable);
            if (it == vars.end()) {
                if (!arg.output)
                    throw fail(i, "variable " + term.variable + " used in '" + std::string(spec.name) +
                                      "' before it is bound");
                if (arg.type == Type::path || arg.type == Type::square)
                    throw fail(i, "variable " + term.variable + " cannot be bound to a " +
                                      std::string(type_name(arg.type)));
                it = vars.emplace(term.variable, Binding{next_slot++, arg.type, false}).first;
            }
            Binding& b = it->second;
            if (b.type != arg.type)
                throw fail(i, "variable " + term.variable + " is a " + std::string(type_name(b.type)) +
                                  " but '" + std::string(spec.name) + "' expects a " +
                                  std::string(type_name(arg.type)) + " in argument " +
                                  std::to_string(a + 1));
            operand.slot = static_cast<std::int16_t>(b.slot);
            operand.binds = !b.bound;
            b.bound = true;
        }
        ops.push_back(op);
    }

    variable_count = static_cast<int>(vars.size());
    if (variable_count > Clause::max_variables)
        throw fail(body.size() ? body.size() - 1 : 0,
                   "clause uses " + std::to_string(variable_count) + " variables, at most " +
                       std::to_string(Clause::max_variables) + " allowed");
    return ops;
}

}  // namespace

Clause::Clause(std::string path_var, std::string square_var, std::vector<Atom> body)
    : path_var_(std::move(path_var)), square_var_(std::move(square_var)), body_(std::move(body))
{
    ops_ = compile_clause(path_var_, square_var_, body_, {}, variable_count_);
}

std::string Clause::to_string(std::string_view head) const
{
    std::ostringstream out;
    out << head << "(" << path_var_ << "," << square_var_ << ")";
    if (!body_.empty()) out << " :- ";
    for (std::size_t i = 0; i < body_.size(); ++i) {
        if (i) out << ", ";
        out << atom_name(body_[i].kind) << "(";
        for (std::size_t a = 0; a < body_[i].args.size(); ++a) {
            if (a) out << ",";
            const Term& t = body_[i].args[a];
            if (t.kind == Term::Kind::variable)
                out << t.variable;
            else
                out << t.value;
        }
        out << ")";
    }
    out << ".";
    return out.str();
}

PredicateProgram::PredicateProgram(std::string name, std::vector<Clause> clauses, bool trusted)
    : name_(std::move(name)), clauses_(std::move(clauses)), trusted_(trusted)
{
    if (clauses_.empty()) throw PredicateError("predicate program has no clauses", 0, 0);
}

PredicateProgram PredicateProgram::renamed(std::string name) const
{
    PredicateProgram copy = *this;
    copy.name_ = std::move(name);
    return copy;
}

std::string PredicateProgram::to_string() const
{
    std::string out;
    for (const auto& c : clauses_) out += c.to_string() + "\n";
    return out;
}

// --- parsing --------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { identifier, variable, integer, lparen, rparen, comma, neck, dot, end };
    Kind kind;
    std::string text;
    SourcePos pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next()
    {
        skip_space();
        const SourcePos pos{line_, column_};
        if (at_ >= text_.size()) return {Token::Kind::end, "", pos};
        const char c = text_[at_];
        if (std::islower(static_cast<unsigned char>(c))) return word(Token::Kind::identifier, pos);
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') return word(Token::Kind::variable, pos);
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && at_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[at_ + 1])))) {
            std::string digits(1, c);
            advance();
            while (at_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[at_]))) {
                digits += text_[at_];
                advance();
            }
            return {Token::Kind::integer, digits, pos};
        }
        advance();
        switch (c) {
        case '(': return {Token::Kind::lparen, "(", pos};
        case ')': return {Token::Kind::rparen, ")", pos};
        case ',': return {Token::Kind::comma, ",", pos};
        case '.': return {Token::Kind::dot, ".", pos};
        case ':':
            if (at_ < text_.size() && text_[at_] == '-') {
                advance();
                return {Token::Kind::neck, ":-", pos};
            }
            break;
        default: break;
        }
        throw PredicateError(std::string("unexpected character '") + c + "'", pos.line, pos.column);
    }

private:
    void advance()
    {
        if (text_[at_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++at_;
    }

    void skip_space()
    {
        while (at_ < text_.size()) {
            const char c = text_[at_];
            if (c == '%') {
                while (at_ < text_.size() && text_[at_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token word(Token::Kind kind, SourcePos pos)
    {
        std::string s;
        while (at_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[at_])) || text_[at_] == '_')) {
            s += text_[at_];
            advance();
        }
        return {kind, s, pos};
    }

    std::string_view text_;
    std::size_t at_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { tok_ = lexer_.next(); }

    PredicateProgram program(std::string name)
    {
        std::vector<Clause> clauses;
        std::string head_name;
        while (tok_.kind != Token::Kind::end) {
            const SourcePos head_pos = tok_.pos;
            std::string head = expect(Token::Kind::identifier, "clause head").text;
            if (head_name.empty())
                head_name = head;
            else if (head != head_name)
                throw PredicateError("clause head '" + head + "' differs from '" + head_name + "'",
                                     head_pos.line, head_pos.column);
            expect(Token::Kind::lparen, "'('");
            std::string path_var = expect(Token::Kind::variable, "path variable").text;
            expect(Token::Kind::comma, "','");
            std::string square_var = expect(Token::Kind::variable, "square variable").text;
            expect(Token::Kind::rparen, "')' (the head takes exactly two variables)");

            std::vector<Atom> body;
            std::vector<SourcePos> where;
            if (tok_.kind == Token::Kind::neck) {
                take();
                do {
                    where.push_back(tok_.pos);
                    body.push_back(atom());
                } while (tok_.kind == Token::Kind::comma && (take(), true));
            }
            where.push_back(tok_.pos);
            expect(Token::Kind::dot, "'.' at end of clause");

            int unused = 0;
            compile_clause(path_var, square_var, body, where, unused);
            clauses.emplace_back(std::move(path_var), std::move(square_var), std::move(body));
        }
        if (clauses.empty()) throw PredicateError("no clauses found", 1, 1);
        return PredicateProgram(name.empty() ? head_name : std::move(name), std::move(clauses));
    }

private:
    Atom atom()
    {
        const Token name = expect(Token::Kind::identifier, "atom name");
        const auto kind = lookup_atom(name.text);
        if (!kind) throw PredicateError("unknown atom '" + name.text + "'", name.pos.line, name.pos.column);
        expect(Token::Kind::lparen, "'('");
        Atom a{*kind, {}};
        for (;;) {
            if (tok_.kind == Token::Kind::variable) {
                std::string v = take().text;
                if (v == "_") v = "_" + std::to_string(anonymous_++);
                a.args.push_back(Term::var(std::move(v)));
            } else if (tok_.kind == Token::Kind::integer) {
                a.args.push_back(Term::constant(std::stoll(take().text)));
            } else {
                throw unexpected("variable or integer");
            }
            if (tok_.kind == Token::Kind::comma) {
                take();
                continue;
            }
            expect(Token::Kind::rparen, "')'");
            break;
        }
        return a;
    }

    Token take()
    {
        Token t = std::move(tok_);
        tok_ = lexer_.next();
        return t;
    }

    Token expect(Token::Kind kind, const std::string& what)
    {
        if (tok_.kind != kind) throw unexpected(what);
        return take();
    }

    PredicateError unexpected(const std::string& what) const
    {
        const std::string got = tok_.kind == Token::Kind::end ? "end of input" : "'" + tok_.text + "'";
        return PredicateError("expected " + what + ", got " + got, tok_.pos.line, tok_.pos.column);
    }

    Lexer lexer_;
    Token tok_;
    int anonymous_ = 0;
};

}  // namespace

PredicateProgram parse_predicate(std::string_view text, std::string name)
{
    return Parser(text).program(std::move(name));
}

// --- evaluation -------------------------------------------------------------

bool eval_clause(const Clause& clause, const PathView& path, Square square, int triangles,
                 const BitSet& square_mask)
{
    std::array<std::int64_t, Clause::max_variables + 1> num{};
    std::array<const BitSet*, Clause::max_variables + 1> list{};

    auto value = [&](const Clause::Operand& o) { return o.slot < 0 ? o.constant : num[o.slot]; };
    auto unify_num = [&](const Clause::Operand& o, std::int64_t v) {
        if (o.binds) {
            num[o.slot] = v;
            return true;
        }
        return value(o) == v;
    };
    auto unify_list = [&](const Clause::Operand& o, const BitSet* v) {
        if (o.binds) {
            list[o.slot] = v;
            return true;
        }
        return list[o.slot] == v || *list[o.slot] == *v;
    };
    auto head_on_square = [&] {
        const Vertex h = path.head;
        return (h.x == square.cx || h.x == square.cx + 1) && (h.y == square.cy || h.y == square.cy + 1);
    };

    for (const auto& op : clause.ops()) {
        bool ok = true;
        switch (op.kind) {
        case AtomKind::square:
            ok = unify_num(op.args[1], triangles) && unify_list(op.args[2], &square_mask);
            break;
        case AtomKind::path:
            ok = unify_list(op.args[1], &path.edges);
            break;
        case AtomKind::count:
            ok = unify_num(op.args[2], static_cast<std::int64_t>(
                                           list[op.args[0].slot]->count_common(*list[op.args[1].slot])));
            break;
        case AtomKind::len:
            ok = unify_num(op.args[1], static_cast<std::int64_t>(list[op.args[0].slot]->count()));
            break;
        case AtomKind::gte: ok = value(op.args[0]) >= value(op.args[1]); break;
        case AtomKind::greater_than: ok = value(op.args[0]) > value(op.args[1]); break;
        case AtomKind::adjacent: ok = head_on_square(); break;
        case AtomKind::not_adjacent: ok = !head_on_square(); break;
        case AtomKind::one: ok = value(op.args[0]) == 1; break;
        case AtomKind::two: ok = value(op.args[0]) == 2; break;
        case AtomKind::three: ok = value(op.args[0]) == 3; break;
        }
        if (!ok) return false;
    }
    return true;
}

namespace {

BitSet edge_set(const Path& path, const Puzzle& puzzle)
{
    BitSet edges(puzzle.edge_count());
    for (const auto& e : path_edges(path)) edges.set(puzzle.edge_index(e));
    return edges;
}

}  // namespace

bool eval_clause(const Clause& clause, const Path& path, Square square, const Puzzle& puzzle)
{
    if (path.vertices.empty()) throw InvalidPuzzle("empty path");
    const BitSet edges = edge_set(path, puzzle);
    int triangles = 0;
    for (const auto& c : puzzle.constraints())
        if (c.square == square) triangles = c.triangles;
    return eval_clause(clause, PathView{edges, path.head(), path.edge_count()}, square, triangles,
                       puzzle.square_mask(square));
}

bool eval_predicate(const PredicateProgram& prog, const PathView& path, const Puzzle& puzzle)
{
    const auto& constraints = puzzle.constraints();
    for (std::size_t i = 0; i < constraints.size(); ++i)
        for (const auto& clause : prog.clauses())
            if (eval_clause(clause, path, constraints[i].square, constraints[i].triangles,
                            puzzle.constraint_mask(i)))
                return true;
    return false;
}

bool eval_predicate(const PredicateProgram& prog, const Path& path, const Puzzle& puzzle)
{
    if (path.vertices.empty()) throw InvalidPuzzle("empty path");
    const BitSet edges = edge_set(path, puzzle);
    return eval_predicate(prog, PathView{edges, path.head(), path.edge_count()}, puzzle);
}

std::string_view learned_predicate_text() { return kLearnedText; }

PredicateProgram baseline_predicate()
{
    const auto full = parse_predicate(kLearnedText);
    return PredicateProgram("baseline", {full.clauses().front()}, true);
}

PredicateProgram learned_predicate()
{
    const auto full = parse_predicate(kLearnedText);
    return PredicateProgram("learned", full.clauses(), true);
}

bool exceeds_triangle_count(const PathView& path, const Puzzle& puzzle)
{
    for (std::size_t i = 0; i < puzzle.constraints().size(); ++i)
        if (path.edges.count_common(puzzle.constraint_mask(i)) >
            static_cast<std::size_t>(puzzle.constraints()[i].triangles))
            return true;
    return false;
}

PredicatePtr resolve_predicate(std::string_view spec)
{
    if (spec == "off") return nullptr;
    if (spec == "baseline") return std::make_shared<const PredicateProgram>(baseline_predicate());
    if (spec == "learned") return std::make_shared<const PredicateProgram>(learned_predicate());
    const std::filesystem::path file{std::string(spec)};
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open predicate file " + file.string());
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return std::make_shared<const PredicateProgram>(parse_predicate(text.str(), file.stem().string()));
    } catch (const PredicateError& e) {
        throw PredicateError(file.string() + ":" + e.what(), 0, 0);
    }
}

}  // namespace witness
