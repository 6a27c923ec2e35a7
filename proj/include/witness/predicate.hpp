#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "witness/grid.hpp"

namespace witness {

/// Syntax or validation failure in predicate text, with 1-based position.
class PredicateError : public std::runtime_error {
public:
    PredicateError(const std::string& message, int line, int column);

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// The background-knowledge vocabulary available to clause bodies.
enum class AtomKind : std::uint8_t {
    square,        // square(Square, Triangles, Edges)
    path,          // path(Path, Edges)
    count,         // count(Edges, Edges, N): N = |X ∩ Y|
    len,           // len(Edges, N)
    gte,           // gte(N, M): N >= M
    greater_than,  // greaterThan(N, M): N > M
    adjacent,      // adjacent(Path, Square): path head is a corner of the square
    not_adjacent,  // notAdjacent(Path, Square)
    one,
    two,
    three,
};

std::string_view atom_name(AtomKind kind);
int atom_arity(AtomKind kind);

struct Term {
    enum class Kind : std::uint8_t { variable, integer };

    Kind kind = Kind::variable;
    std::string variable;
    std::int64_t value = 0;

    static Term var(std::string name) { return Term{Kind::variable, std::move(name), 0}; }
    static Term constant(std::int64_t v) { return Term{Kind::integer, {}, v}; }

    friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
    AtomKind kind;
    std::vector<Term> args;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// `head(PathVar, SquareVar) :- body.` Variables are resolved to slots at
/// validation time; the head's path variable is slot 0, square variable slot 1.
class Clause {
public:
    static constexpr int max_variables = 7;

    /// Validates arity, types, binding order and the variable budget.
    /// Throws PredicateError (position 0:0 when built programmatically).
    Clause(std::string path_var, std::string square_var, std::vector<Atom> body);

    const std::string& path_var() const { return path_var_; }
    const std::string& square_var() const { return square_var_; }
    const std::vector<Atom>& body() const { return body_; }
    int variable_count() const { return variable_count_; }

    std::string to_string(std::string_view head = "f") const;

    friend bool operator==(const Clause& a, const Clause& b)
    {
        return a.path_var_ == b.path_var_ && a.square_var_ == b.square_var_ && a.body_ == b.body_;
    }

    struct Operand {
        std::int16_t slot = -1;  // -1 for a constant
        bool binds = false;      // unbound output position: assigns the slot
        std::int64_t constant = 0;
    };
    struct Op {
        AtomKind kind;
        Operand args[3];
    };
    const std::vector<Op>& ops() const { return ops_; }

private:
    std::string path_var_;
    std::string square_var_;
    std::vector<Atom> body_;
    std::vector<Op> ops_;
    int variable_count_ = 0;
};

/// Partial path as seen by a predicate: the set of traversed edges (indexed
/// by Puzzle::edge_index), the head vertex and the edge count.
struct PathView {
    const BitSet& edges;
    Vertex head;
    std::size_t length;
};

/// Disjunction of clauses, evaluated per constrained square.
class PredicateProgram {
public:
    /// `trusted` marks programs known to have no false positives, which may
    /// prune without an explicit override.
    PredicateProgram(std::string name, std::vector<Clause> clauses, bool trusted = false);

    const std::string& name() const { return name_; }
    const std::vector<Clause>& clauses() const { return clauses_; }
    bool trusted() const { return trusted_; }

    PredicateProgram renamed(std::string name) const;

    /// Clause text, one clause per line, using `f` as the head.
    std::string to_string() const;

    /// Structural equality over clauses; name and trust are ignored.
    friend bool operator==(const PredicateProgram& a, const PredicateProgram& b)
    {
        return a.clauses_ == b.clauses_;
    }

private:
    std::string name_;
    std::vector<Clause> clauses_;
    bool trusted_;
};

using PredicatePtr = std::shared_ptr<const PredicateProgram>;

/// Parses `f(A,B) :- atom, ..., atom.` clauses with `%` line comments. All
/// clauses must share the same head name. The program takes the head name
/// unless `name` is given.
PredicateProgram parse_predicate(std::string_view text, std::string name = {});

/// Single clause evaluated for one square of the puzzle.
bool eval_clause(const Clause& clause, const PathView& path, Square square, int triangles,
                 const BitSet& square_mask);
bool eval_clause(const Clause& clause, const Path& path, Square square, const Puzzle& puzzle);

/// OR over every (clause, constrained square) pair, squares in row-major
/// order. Always false on a puzzle without constraints.
bool eval_predicate(const PredicateProgram& prog, const PathView& path, const Puzzle& puzzle);
bool eval_predicate(const PredicateProgram& prog, const Path& path, const Puzzle& puzzle);

/// Flags paths that already use more of a square's edges than it has
/// triangles.
PredicateProgram baseline_predicate();

/// Baseline clause plus the two clauses that catch a path leaving a
/// three-triangle square with only one or two of its edges taken.
PredicateProgram learned_predicate();

/// Clause text of learned_predicate().
std::string_view learned_predicate_text();

/// Hand-coded local constraint check, independent of the clause evaluator.
bool exceeds_triangle_count(const PathView& path, const Puzzle& puzzle);

/// Resolves `off`, `baseline`, `learned`; otherwise loads the file (untrusted).
/// Returns nullptr for `off`.
PredicatePtr resolve_predicate(std::string_view spec);

}  // namespace witness
