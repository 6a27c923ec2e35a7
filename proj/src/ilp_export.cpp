#include "witness/ilp_export.hpp"

#include <sstream>

#include "witness/predicate.hpp"
#include "witness/puzzle_io.hpp"

namespace witness {

namespace {

std::string edge_atom(const Edge& e)
{
    return "e" + std::to_string(e.first().x) + "_" + std::to_string(e.first().y) + "_" +
           std::to_string(e.second().x) + "_" + std::to_string(e.second().y);
}

std::string square_atom(Square s)
{
    return "s" + std::to_string(s.cx) + "_" + std::to_string(s.cy);
}

std::string vertex_term(Vertex v)
{
    return "v(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

template <class Range>
std::string edge_list(const Range& edges)
{
    std::string out = "[";
    bool first = true;
    for (const auto& e : edges) {
        if (!first) out += ",";
        out += edge_atom(e);
        first = false;
    }
    return out + "]";
}

constexpr const char* kDefinitions = R"(
count(A,B,C) :- intersection(A,B,I), length(I,C).
len(A,B) :- length(A,B).
gte(A,B) :- A >= B.
greaterThan(A,B) :- A > B.
adjacent(A,B) :- head(A,V), corner(B,V).
notAdjacent(A,B) :- head(A,V), \+ corner(B,V).
one(1).
two(2).
three(3).
)";

constexpr const char* kBias = R"(max_vars(7).
head_pred(f,1).
body_pred(square,3).
body_pred(path,2).
body_pred(count,3).
body_pred(len,2).
body_pred(gte,2).
body_pred(greaterThan,2).
body_pred(adjacent,2).
body_pred(notAdjacent,2).
body_pred(one,1).
body_pred(two,1).
body_pred(three,1).
)";

}  // namespace

IlpFiles build_ilp_files(const Puzzle& p, const OracleOptions& opts)
{
    const auto examples = labeled_examples(p, opts);

    std::ostringstream bk;
    bk << "% " << p.rows() << "x" << p.cols() << " puzzle, start " << to_string(p.start()) << ", goal "
       << to_string(p.goal()) << "\n";
    bk << ":- discontiguous square/3.\n:- discontiguous path/2.\n"
          ":- discontiguous head/2.\n:- discontiguous corner/2.\n\n";
    for (const auto& c : p.constraints()) {
        bk << "square(" << square_atom(c.square) << "," << c.triangles << ","
           << edge_list(square_edges(c.square)) << ").\n";
        for (Vertex v : square_corners(c.square))
            bk << "corner(" << square_atom(c.square) << "," << vertex_term(v) << ").\n";
    }
    bk << "\n";

    IlpFiles files;
    std::ostringstream exs;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        const auto& ex = examples[i];
        const std::string id = "p" + std::to_string(i);
        bk << "path(" << id << "," << edge_list(path_edges(ex.path)) << ").\n";
        bk << "head(" << id << "," << vertex_term(ex.path.head()) << ").\n";
        if (ex.incompletable) {
            exs << "pos(f(" << id << ")).\n";
            ++files.positives;
        } else {
            exs << "neg(f(" << id << ")).\n";
            ++files.negatives;
        }
    }
    bk << kDefinitions;

    files.background = bk.str();
    files.examples = exs.str();
    files.bias = kBias;
    return files;
}

IlpFiles export_ilp(const Puzzle& p, const std::filesystem::path& dir, const OracleOptions& opts)
{
    IlpFiles files = build_ilp_files(p, opts);
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "bk.pl", files.background);
    write_file_atomic(dir / "exs.pl", files.examples);
    write_file_atomic(dir / "bias.pl", files.bias);
    return files;
}

}  // namespace witness
