// Python bindings. Vertices are (x, y) tuples, paths are lists of them and
// constraints are ((cx, cy), triangles) pairs.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "witness/bench.hpp"
#include "witness/generators.hpp"
#include "witness/ilp_export.hpp"
#include "witness/oracle.hpp"
#include "witness/predicate.hpp"
#include "witness/puzzle_io.hpp"
#include "witness/search.hpp"

namespace py = pybind11;
using namespace witness;

namespace {

using XY = std::pair<int, int>;
using PyPath = std::vector<XY>;
using PyConstraint = std::pair<XY, int>;

Vertex vertex(XY v) { return {v.first, v.second}; }
XY xy(Vertex v) { return {v.x, v.y}; }

Path to_path(const PyPath& p)
{
    Path out;
    for (XY v : p) out.vertices.push_back(vertex(v));
    return out;
}

PyPath from_path(const Path& p)
{
    PyPath out;
    for (Vertex v : p.vertices) out.push_back(xy(v));
    return out;
}

Puzzle make_puzzle(int rows, int cols, XY start, XY goal, const std::vector<PyConstraint>& constraints)
{
    std::vector<Constraint> cs;
    for (const auto& [sq, k] : constraints) cs.push_back({{sq.first, sq.second}, k});
    return Puzzle(rows, cols, vertex(start), vertex(goal), std::move(cs));
}

PredicatePtr predicate_arg(const py::object& arg)
{
    if (arg.is_none()) return nullptr;
    if (py::isinstance<PredicateProgram>(arg)) return std::make_shared<const PredicateProgram>(arg.cast<PredicateProgram>());
    return resolve_predicate(arg.cast<std::string>());
}

py::dict result_dict(const SearchResult& r)
{
    py::dict d;
    d["solved"] = r.solution.has_value();
    d["solution"] = r.solution ? py::cast(from_path(*r.solution)) : py::none();
    d["expansions"] = r.expansions;
    d["generated"] = r.generated;
    d["peak_open"] = r.peak_open;
    d["wall_time_s"] = r.wall_time_s;
    d["termination"] = std::string(to_string(r.termination));
    d["complete"] = r.complete;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Triangle-constraint grid puzzles, A* search and incompletability predicates";

    auto invalid = py::register_exception<InvalidPuzzle>(m, "InvalidPuzzle", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", invalid.ptr());
    py::register_exception<PredicateError>(m, "PredicateError", PyExc_ValueError);
    py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);
    py::register_exception<OracleLimitExceeded>(m, "OracleLimitExceeded", PyExc_RuntimeError);

    py::class_<Puzzle>(m, "Puzzle")
        .def(py::init(&make_puzzle), py::arg("rows"), py::arg("cols"), py::arg("start"), py::arg("goal"),
             py::arg("constraints") = std::vector<PyConstraint>{})
        .def_property_readonly("rows", &Puzzle::rows)
        .def_property_readonly("cols", &Puzzle::cols)
        .def_property_readonly("start", [](const Puzzle& p) { return xy(p.start()); })
        .def_property_readonly("goal", [](const Puzzle& p) { return xy(p.goal()); })
        .def_property_readonly("constraints",
                               [](const Puzzle& p) {
                                   std::vector<PyConstraint> out;
                                   for (const auto& c : p.constraints())
                                       out.push_back({{c.square.cx, c.square.cy}, c.triangles});
                                   return out;
                               })
        .def("neighbors",
             [](const Puzzle& p, XY v) {
                 PyPath out;
                 for (Vertex n : p.neighbors(vertex(v))) out.push_back(xy(n));
                 return out;
             })
        .def("is_solution", [](const Puzzle& p, const PyPath& path) { return is_solution(p, to_path(path)); })
        .def("to_json", &serialize_puzzle)
        .def_static("from_json", &parse_puzzle)
        .def_static("load", [](const std::string& file) { return load_puzzle(file); })
        .def("render", [](const Puzzle& p, const std::optional<PyPath>& path) {
                 if (!path) return render_ascii(p);
                 const Path pth = to_path(*path);
                 return render_ascii(p, &pth);
             }, py::arg("path") = py::none())
        .def("__eq__", [](const Puzzle& a, const Puzzle& b) { return a == b; })
        .def("__repr__", [](const Puzzle& p) {
            return "Puzzle(" + std::to_string(p.rows()) + "x" + std::to_string(p.cols()) + ", start " +
                   to_string(p.start()) + ", goal " + to_string(p.goal()) + ", " +
                   std::to_string(p.constraints().size()) + " constraints)";
        });

    m.def("shared_edge_count",
          [](const PyPath& path, XY square) { return shared_edge_count(to_path(path), {square.first, square.second}); });

    py::class_<PredicateProgram>(m, "Predicate")
        .def_property_readonly("name", &PredicateProgram::name)
        .def_property_readonly("trusted", &PredicateProgram::trusted)
        .def_property_readonly("clause_count", [](const PredicateProgram& p) { return p.clauses().size(); })
        .def("renamed", &PredicateProgram::renamed)
        .def("evaluate",
             [](const PredicateProgram& prog, const Puzzle& p, const PyPath& path) {
                 return eval_predicate(prog, to_path(path), p);
             })
        .def("__str__", &PredicateProgram::to_string)
        .def("__eq__", [](const PredicateProgram& a, const PredicateProgram& b) { return a == b; });

    m.def("parse_predicate", &parse_predicate, py::arg("text"), py::arg("name") = "");
    m.def("baseline_predicate", &baseline_predicate);
    m.def("learned_predicate", &learned_predicate);
    m.def("load_predicate", [](const std::string& spec) {
        const auto p = resolve_predicate(spec);
        if (!p) throw py::value_error("'off' is not a predicate");
        return *p;
    });

    m.def(
        "solve",
        [](const Puzzle& p, const py::object& predicate, const std::optional<std::string>& mode,
           std::optional<std::uint64_t> expansion_limit, std::optional<double> time_limit,
           std::optional<std::uint64_t> memory_limit, bool unsafe_prune) {
            SearchConfig cfg;
            cfg.predicate = predicate_arg(predicate);
            if (mode)
                cfg.mode = parse_search_mode(*mode);
            else if (cfg.predicate)
                cfg.mode = cfg.predicate->trusted() || unsafe_prune ? SearchMode::prune : SearchMode::sort;
            cfg.expansion_limit = expansion_limit;
            cfg.time_limit_s = time_limit;
            cfg.memory_limit = memory_limit;
            cfg.unsafe_prune = unsafe_prune;
            SearchResult r;
            {
                py::gil_scoped_release release;
                r = solve(p, cfg);
            }
            return result_dict(r);
        },
        py::arg("puzzle"), py::arg("predicate") = "learned", py::arg("mode") = py::none(),
        py::arg("expansion_limit") = py::none(), py::arg("time_limit") = py::none(),
        py::arg("memory_limit") = py::none(), py::arg("unsafe_prune") = false,
        "A* search. predicate is 'off', 'baseline', 'learned', a file path, a Predicate or None.");

    m.def(
        "solutions",
        [](const Puzzle& p, std::uint64_t node_cap) {
            std::vector<PyPath> out;
            for (const auto& s : enumerate_solutions(p, OracleOptions{node_cap})) out.push_back(from_path(s));
            return out;
        },
        py::arg("puzzle"), py::arg("node_cap") = OracleOptions{}.node_cap);
    m.def(
        "completable",
        [](const Puzzle& p, const PyPath& path, std::uint64_t node_cap) {
            return completable(p, to_path(path), OracleOptions{node_cap});
        },
        py::arg("puzzle"), py::arg("path"), py::arg("node_cap") = OracleOptions{}.node_cap);
    m.def(
        "labeled_examples",
        [](const Puzzle& p, std::uint64_t node_cap) {
            std::vector<std::pair<PyPath, bool>> out;
            for (const auto& e : labeled_examples(p, OracleOptions{node_cap}))
                out.emplace_back(from_path(e.path), e.incompletable);
            return out;
        },
        py::arg("puzzle"), py::arg("node_cap") = OracleOptions{}.node_cap,
        "(path, incompletable) for every partial path, DFS pre-order.");
    m.def(
        "verify",
        [](const PredicateProgram& prog, const std::vector<Puzzle>& puzzles, std::size_t max_reported) {
            const auto r = verify_no_false_positives(prog, puzzles, {}, max_reported);
            py::dict d;
            d["checked"] = r.checked;
            d["false_positives"] = r.false_positive_count;
            py::list examples;
            for (const auto& fp : r.false_positives) examples.append(py::make_tuple(fp.puzzle_index, from_path(fp.path)));
            d["examples"] = examples;
            return d;
        },
        py::arg("predicate"), py::arg("puzzles"), py::arg("max_reported") = 100);

    m.def("gen_random_triangles", [](int rows, int cols, std::uint64_t seed) { return gen_random_triangles(rows, cols, seed); },
          py::arg("rows"), py::arg("cols"), py::arg("seed"));
    m.def(
        "gen_from_path",
        [](int rows, int cols, std::uint64_t seed) {
            auto made = gen_from_path(rows, cols, seed);
            return py::make_tuple(made.puzzle, from_path(made.witness));
        },
        py::arg("rows"), py::arg("cols"), py::arg("seed"), "(puzzle, witness path)");

    m.def(
        "ilp_files",
        [](const Puzzle& p) {
            const auto f = build_ilp_files(p);
            py::dict d;
            d["bk"] = f.background;
            d["exs"] = f.examples;
            d["bias"] = f.bias;
            d["positives"] = f.positives;
            d["negatives"] = f.negatives;
            return d;
        },
        py::arg("puzzle"));
}
