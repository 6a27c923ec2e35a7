// Acceptance run: prints one PASS/FAIL line per criterion, exits nonzero if
// any criterion fails.
//
//   witness_acceptance [--records-dir DIR] [--corpus-size N]
//
// The expansion-speedup criteria use a corpus with the reference size mix
// (15,000 instances by default; --corpus-size 1500 for the quick variant).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "witness/bench.hpp"
#include "witness/generators.hpp"
#include "witness/oracle.hpp"
#include "witness/predicate.hpp"
#include "witness/puzzle_io.hpp"
#include "witness/rng.hpp"
#include "witness/search.hpp"

namespace fs = std::filesystem;
using namespace witness;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

PredicatePtr shared(PredicateProgram p)
{
    return std::make_shared<const PredicateProgram>(std::move(p));
}

const PredicatePtr& baseline()
{
    static const PredicatePtr p = shared(baseline_predicate());
    return p;
}

const PredicatePtr& learned()
{
    static const PredicatePtr p = shared(learned_predicate());
    return p;
}

// Flags paths that took exactly one edge of a two-triangle square and left
// it. Has false positives; sort mode must still be complete with it.
const PredicatePtr& unsound()
{
    static const PredicatePtr p = shared(parse_predicate(
        "f(A,B) :- square(B,D,C), path(A,E), count(E,C,F), notAdjacent(A,B), two(D), one(F).", "unsound"));
    return p;
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// ---- corpora ----------------------------------------------------------------

std::vector<NamedPuzzle> small_corpus()
{
    // 100 puzzles per generator, 1x2 up to 4x4.
    const std::vector<SizeBucket> buckets = {{1, 2, 5}, {2, 2, 15}, {2, 3, 20}, {3, 3, 20}, {3, 4, 20}, {4, 4, 20}};
    std::vector<NamedPuzzle> out;
    for (auto algo : {Algorithm::random_triangles, Algorithm::from_path})
        for (auto& e : generate_corpus(algo, buckets, algo == Algorithm::random_triangles ? 101 : 202))
            out.push_back({e.id, std::move(e.puzzle)});
    return out;
}

std::vector<NamedPuzzle> test_corpus(std::size_t size)
{
    std::vector<NamedPuzzle> out;
    for (auto& e : generate_corpus(Algorithm::random_triangles, scaled_size_mix(size), 2024))
        out.push_back({e.id, std::move(e.puzzle)});
    return out;
}

std::string corpus_text(const std::vector<NamedPuzzle>& corpus)
{
    std::string out;
    for (const auto& p : corpus) out += p.id + "\n" + serialize_puzzle(p.puzzle);
    return out;
}

// ---- criteria 1-3 -------------------------------------------------------------

struct CoreRun {
    Outcome c1;
    Outcome c2;
    Outcome c3;
    std::vector<NamedPuzzle> test;
    std::vector<BenchRecord> base;
    std::vector<BenchRecord> lrn;
    // Files compared byte for byte between runs.
    std::map<std::string, std::string> files;
};

Outcome oracle_ground_truth(const std::vector<NamedPuzzle>& corpus, std::vector<BenchRecord>& records)
{
    struct Setting {
        PredicatePtr pred;
        SearchMode mode;
    };
    const std::vector<Setting> settings = {
        {nullptr, SearchMode::off},          {baseline(), SearchMode::sort}, {learned(), SearchMode::sort},
        {unsound(), SearchMode::sort},       {baseline(), SearchMode::prune},
        {learned(), SearchMode::prune},
    };
    std::size_t solves = 0;
    std::size_t bad_paths = 0;
    std::size_t incomplete = 0;
    std::size_t solvable = 0;
    for (const auto& named : corpus) {
        const bool has_solution = !enumerate_solutions(named.puzzle).empty();
        solvable += has_solution;
        for (const auto& s : settings) {
            SearchConfig cfg;
            cfg.predicate = s.pred;
            cfg.mode = s.mode;
            const auto r = solve(named.puzzle, cfg);
            ++solves;
            if (r.solution && !is_solution(named.puzzle, *r.solution)) ++bad_paths;
            if (s.mode == SearchMode::sort && has_solution && !r.solution) ++incomplete;
            if (s.mode != SearchMode::sort && r.solution.has_value() != has_solution) ++incomplete;
            BenchRecord rec;
            rec.puzzle_id = named.id;
            rec.predicate = s.pred ? s.pred->name() : "off";
            rec.mode = s.mode;
            rec.solved = r.solution.has_value();
            rec.expansions = r.expansions;
            rec.generated = r.generated;
            rec.solution_len = r.solution ? r.solution->edge_count() : 0;
            rec.termination = r.termination;
            records.push_back(rec);
        }
    }
    Outcome o;
    o.pass = bad_paths == 0 && incomplete == 0 && solvable == corpus.size();
    o.detail = std::to_string(corpus.size()) + " puzzles, " + std::to_string(solves) + " solves, " +
               std::to_string(bad_paths) + " invalid paths, " + std::to_string(incomplete) + " missed solutions, " +
               std::to_string(solvable) + " solvable by oracle";
    return o;
}

Outcome no_false_positives(const std::vector<NamedPuzzle>& corpus, std::string& report_text)
{
    std::vector<Puzzle> puzzles;
    for (const auto& p : corpus) puzzles.push_back(p.puzzle);
    const auto lrn = verify_no_false_positives(*learned(), puzzles);
    const auto base = verify_no_false_positives(*baseline(), puzzles);
    // The check must be able to fail: the unsound clause is caught.
    const auto bad = verify_no_false_positives(*unsound(), puzzles, {}, 1);
    std::ostringstream out;
    out << "learned checked=" << lrn.checked << " false_positives=" << lrn.false_positive_count << "\n"
        << "baseline checked=" << base.checked << " false_positives=" << base.false_positive_count << "\n"
        << "unsound checked=" << bad.checked << " false_positives=" << bad.false_positive_count << "\n";
    report_text = out.str();
    Outcome o;
    o.pass = lrn.false_positive_count == 0 && base.false_positive_count == 0 && bad.false_positive_count > 0 &&
             lrn.checked > 0;
    o.detail = std::to_string(lrn.checked) + " partial paths; false positives learned=" +
               std::to_string(lrn.false_positive_count) + " baseline=" + std::to_string(base.false_positive_count) +
               " (control predicate: " + std::to_string(bad.false_positive_count) + ")";
    return o;
}

CoreRun run_core(std::size_t corpus_size, bool verbose)
{
    CoreRun run;
    auto t = Clock::now();
    const auto small = small_corpus();
    std::vector<BenchRecord> c1_records;
    run.c1 = oracle_ground_truth(small, c1_records);
    run.files["small_corpus.txt"] = corpus_text(small);
    run.files["c1_records.csv"] = records_to_csv(c1_records, false);
    if (verbose) std::cerr << "  criterion 1 done in " << fmt("%.1f", seconds_since(t)) << " s\n";

    t = Clock::now();
    std::string c2_text;
    run.c2 = no_false_positives(small, c2_text);
    run.files["c2_report.txt"] = c2_text;
    if (verbose) std::cerr << "  criterion 2 done in " << fmt("%.1f", seconds_since(t)) << " s\n";

    t = Clock::now();
    run.test = test_corpus(corpus_size);
    if (verbose) std::cerr << "  generated " << run.test.size() << " puzzles in " << fmt("%.1f", seconds_since(t)) << " s\n";
    t = Clock::now();
    run.base = run_bench(run.test, {BenchConfig{baseline(), SearchMode::prune}}, {}, 1);
    run.lrn = run_bench(run.test, {BenchConfig{learned(), SearchMode::prune}}, {}, 1);
    if (verbose) std::cerr << "  benchmarked in " << fmt("%.1f", seconds_since(t)) << " s\n";

    std::size_t violations = 0;
    std::size_t unsolved = 0;
    for (std::size_t i = 0; i < run.test.size(); ++i) {
        violations += run.lrn[i].expansions > run.base[i].expansions;
        unsolved += !run.lrn[i].solved || !run.base[i].solved;
    }
    run.c3.pass = violations == 0 && unsolved == 0 && !run.test.empty();
    run.c3.detail = std::to_string(run.test.size()) + " puzzles, " + std::to_string(violations) +
                    " instances where learned expanded more, " + std::to_string(unsolved) + " unsolved";
    run.files["test_corpus.txt"] = corpus_text(run.test);
    auto all = run.base;
    all.insert(all.end(), run.lrn.begin(), run.lrn.end());
    run.files["c3_records.csv"] = records_to_csv(all, false);
    return run;
}

// ---- criteria 4-7, 9 ------------------------------------------------------------

std::vector<std::string> ids_where(const std::vector<NamedPuzzle>& corpus,
                                   const std::function<bool(const Puzzle&)>& keep)
{
    std::vector<std::string> ids;
    for (const auto& p : corpus)
        if (keep(p.puzzle)) ids.push_back(p.id);
    return ids;
}

Outcome aggregate_speedup(const CoreRun& run)
{
    const auto all = ids_where(run.test, [](const Puzzle&) { return true; });
    const auto four = ids_where(run.test, [](const Puzzle& p) { return p.rows() * p.cols() == 4; });
    const auto twenty_five = ids_where(run.test, [](const Puzzle& p) { return p.rows() * p.cols() == 25; });
    const double total = speedup_expansions(run.lrn, run.base, all);
    const double s4 = speedup_expansions(run.lrn, run.base, four);
    const double s25 = speedup_expansions(run.lrn, run.base, twenty_five);
    Outcome o;
    o.pass = total >= 2.0 && total <= 20.0 && s25 > s4;
    o.detail = "speedup_expansions=" + fmt("%.3f", total) + " (4 squares " + fmt("%.3f", s4) + ", 25 squares " +
               fmt("%.3f", s25) + ")";
    return o;
}

Outcome baseline_workload(const CoreRun& run)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < run.test.size(); ++i)
        if (run.test[i].puzzle.rows() == 5 && run.test[i].puzzle.cols() == 5) {
            sum += static_cast<double>(run.base[i].expansions);
            ++n;
        }
    const double mean = n ? sum / static_cast<double>(n) : 0.0;
    Outcome o;
    o.pass = n > 0 && mean >= 1.4e4 && mean <= 1.4e6;
    o.detail = "5x5 mean baseline expansions " + fmt("%.4g", mean) + " over " + std::to_string(n) +
               " puzzles (allowed 1.4e4..1.4e6)";
    return o;
}

// Random start-anchored simple path that stops before the goal.
std::vector<Vertex> random_partial_path(const Puzzle& p, Rng& rng)
{
    std::vector<Vertex> path{p.start()};
    const auto target = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(p.vertex_count())));
    while (path.size() <= target) {
        std::vector<Vertex> options;
        for (Vertex v : p.neighbors(path.back()))
            if (v != p.goal() && std::find(path.begin(), path.end(), v) == path.end()) options.push_back(v);
        if (options.empty()) break;
        path.push_back(options[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(options.size()) - 1))]);
    }
    return path;
}

Outcome clause_one_equivalence()
{
    const PredicateProgram row_one("row1", {learned_predicate().clauses().front()});
    Rng rng = Rng::stream(6, "pairs");
    std::size_t agree = 0;
    std::size_t flagged = 0;
    constexpr std::size_t kPairs = 10'000;
    for (std::size_t i = 0; i < kPairs; ++i) {
        const int rows = static_cast<int>(rng.uniform(1, 5));
        const int cols = static_cast<int>(rng.uniform(1, 5));
        const auto goals = goal_candidates(rows, cols, {0, 0});
        const Vertex goal = goals[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(goals.size()) - 1))];
        std::vector<Constraint> cs;
        for (int cy = 0; cy < rows; ++cy)
            for (int cx = 0; cx < cols; ++cx)
                if (rng.uniform(0, 2) == 0) cs.push_back({{cx, cy}, static_cast<int>(rng.uniform(1, 3))});
        const Puzzle p(rows, cols, {0, 0}, goal, cs);
        const Path path{random_partial_path(p, rng)};
        BitSet edges(p.edge_count());
        for (const auto& e : path_edges(path)) edges.set(p.edge_index(e));
        const PathView view{edges, path.head(), path.edge_count()};
        const bool hand = exceeds_triangle_count(view, p);
        agree += eval_predicate(row_one, view, p) == hand;
        flagged += hand;
    }
    Outcome o;
    o.pass = agree == kPairs && flagged > 0 && flagged < kPairs;
    o.detail = std::to_string(agree) + "/" + std::to_string(kPairs) + " agree (" + std::to_string(flagged) +
               " flagged by the hand-coded check)";
    return o;
}

Outcome solve_rate()
{
    BenchLimits limits;
    limits.expansion_limit = 1'000'000;
    std::string detail;
    bool at_least = true;
    bool strictly = false;
    for (int size : {5, 6, 7}) {
        std::vector<NamedPuzzle> set;
        for (auto& e : generate_corpus(Algorithm::from_path, {{size, size, 50}}, 7000 + static_cast<std::uint64_t>(size)))
            set.push_back({e.id, std::move(e.puzzle)});
        const auto recs =
            run_bench(set, {BenchConfig{baseline(), SearchMode::prune}, BenchConfig{learned(), SearchMode::prune}}, limits, 1);
        std::size_t base = 0;
        std::size_t lrn = 0;
        for (std::size_t i = 0; i < recs.size(); i += 2) {
            base += recs[i].solved;
            lrn += recs[i + 1].solved;
        }
        at_least = at_least && lrn >= base;
        strictly = strictly || lrn > base;
        detail += std::to_string(size) + "x" + std::to_string(size) + ": learned " + std::to_string(lrn) +
                  "/50, baseline " + std::to_string(base) + "/50; ";
    }
    detail.resize(detail.size() - 2);
    return {at_least && strictly, detail};
}

Outcome figure_two_trace()
{
    const Puzzle p(1, 2, {0, 0}, {2, 1}, {{{0, 0}, 1}, {{1, 0}, 2}});
    std::vector<Path> pushed;
    std::size_t pruned = 0;
    SearchConfig cfg;
    cfg.predicate = baseline();
    cfg.mode = SearchMode::prune;
    cfg.trace = [&](TraceEvent e, const Path& path, bool) {
        if (path.edge_count() != 2) return;
        if (e == TraceEvent::pushed) pushed.push_back(path);
        if (e == TraceEvent::pruned) ++pruned;
    };
    const auto r = solve(p, cfg);
    const Path middle{{{0, 0}, {1, 0}, {2, 0}}};
    const Path expected{{{0, 0}, {1, 0}, {2, 0}, {2, 1}}};
    Outcome o;
    o.pass = pushed.size() == 1 && pushed[0] == middle && pruned == 2 && r.solution && *r.solution == expected;
    o.detail = "length-2 paths pushed " + std::to_string(pushed.size()) + ", pruned " + std::to_string(pruned) +
               (pushed.size() == 1 ? ", kept " + to_string(pushed[0]) : "") +
               (r.solution ? ", solution " + to_string(*r.solution) : "");
    return o;
}

void write_files(const fs::path& dir, const std::map<std::string, std::string>& files)
{
    fs::create_directories(dir);
    for (const auto& [name, text] : files) write_file_atomic(dir / name, text);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria"};
    std::string records_dir;
    std::size_t corpus_size = 15'000;
    bool quiet = false;
    app.add_option("--records-dir", records_dir, "Keep record files from both determinism runs here");
    app.add_option("--corpus-size", corpus_size, "Instances in the speedup corpus");
    app.add_flag("--quiet", quiet, "No progress output on stderr");
    CLI11_PARSE(app, argc, argv);

    const auto started = Clock::now();
    std::vector<std::pair<std::string, Outcome>> results(9);
    auto report = [&](int n, const std::string& name, const Outcome& o) {
        results[static_cast<std::size_t>(n - 1)] = {name, o};
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << " " << name << ": " << o.detail << std::endl;
    };

    if (!quiet) std::cerr << "run 1\n";
    const CoreRun first = run_core(corpus_size, !quiet);
    if (!quiet) std::cerr << "run 2\n";
    const CoreRun second = run_core(corpus_size, !quiet);

    report(1, "oracle ground truth", first.c1);
    report(2, "no false positives", first.c2);
    report(3, "per-instance expansion domination", first.c3);
    report(4, "aggregate expansion speedup", aggregate_speedup(first));
    report(5, "baseline workload", baseline_workload(first));
    report(6, "clause 1 equals the hand-coded baseline", clause_one_equivalence());
    report(7, "solve rate under an expansion budget", solve_rate());

    Outcome det;
    std::size_t identical = 0;
    for (const auto& [name, text] : first.files) {
        const auto it = second.files.find(name);
        identical += it != second.files.end() && it->second == text;
    }
    det.pass = identical == first.files.size() && first.files.size() == second.files.size() &&
               first.c1.detail == second.c1.detail && first.c2.detail == second.c2.detail &&
               first.c3.detail == second.c3.detail;
    det.detail = std::to_string(identical) + "/" + std::to_string(first.files.size()) +
                 " record files byte-identical across two runs";
    report(8, "determinism", det);
    report(9, "two-square trace", figure_two_trace());

    if (!records_dir.empty()) {
        write_files(fs::path(records_dir) / "run1", first.files);
        write_files(fs::path(records_dir) / "run2", second.files);
    }

    std::size_t passed = 0;
    for (const auto& r : results) passed += r.second.pass;
    std::cout << passed << "/9 criteria passed in " << fmt("%.0f", seconds_since(started)) << " s" << std::endl;
    return passed == 9 ? 0 : 1;
}
