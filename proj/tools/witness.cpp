// witness: generate, solve, benchmark and triage triangle puzzles.
//
// Exit codes: 0 success, 1 domain error (bad input file, failed
// verification, generator gave up), 2 usage error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "witness/bench.hpp"
#include "witness/generators.hpp"
#include "witness/ilp_export.hpp"
#include "witness/oracle.hpp"
#include "witness/predicate.hpp"
#include "witness/puzzle_io.hpp"
#include "witness/search.hpp"

namespace fs = std::filesystem;
using namespace witness;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep = ',')
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<NamedPuzzle> load_corpus(const fs::path& dir)
{
    if (!fs::is_directory(dir)) throw UsageError("not a directory: " + dir.string());
    auto puzzles = load_puzzle_dir(dir);
    if (puzzles.empty()) throw UsageError("no puzzle files in " + dir.string());
    return puzzles;
}

// Writes every file into a staging directory first, then moves them into
// place, so a failed run leaves nothing behind in `out`.
class Staging {
public:
    explicit Staging(fs::path out) : out_(std::move(out)), dir_(out_.string() + ".staging")
    {
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    ~Staging() { fs::remove_all(dir_); }

    void write(const std::string& name, const std::string& contents) { write_file_atomic(dir_ / name, contents); }

    void commit()
    {
        fs::create_directories(out_);
        std::vector<fs::path> files;
        for (const auto& entry : fs::recursive_directory_iterator(dir_))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            const fs::path target = out_ / fs::relative(f, dir_);
            fs::create_directories(target.parent_path());
            fs::rename(f, target);
        }
    }

    const fs::path& dir() const { return dir_; }

private:
    fs::path out_;
    fs::path dir_;
};

// ---- gen -------------------------------------------------------------------

struct GenArgs {
    std::string algo;
    int rows = 0;
    int cols = 0;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    std::string out;
    bool reference_mix = false;
};

int cmd_gen(const GenArgs& a)
{
    const Algorithm algo = parse_algorithm(a.algo);
    std::vector<SizeBucket> buckets;
    if (a.reference_mix) {
        buckets = scaled_size_mix(a.count);
    } else {
        if (a.rows < 1 || a.cols < 1) throw UsageError("--m and --n are required and must be positive");
        buckets = {{a.rows, a.cols, a.count}};
    }
    if (algo == Algorithm::random_triangles)
        for (const auto& b : buckets)
            if (b.count > 0 && b.rows * b.cols < 2)
                throw UsageError("random triangle placement needs at least 2 squares");

    const auto corpus = generate_corpus(algo, buckets, a.seed);

    Staging staging(a.out);
    nlohmann::ordered_json manifest;
    manifest["algorithm"] = std::string(to_string(algo));
    manifest["seed"] = a.seed;
    manifest["count"] = a.count;
    if (a.reference_mix) {
        manifest["size_mix"] = "reference";
    } else {
        manifest["m"] = a.rows;
        manifest["n"] = a.cols;
    }
    manifest["buckets"] = nlohmann::ordered_json::array();
    for (const auto& b : buckets) manifest["buckets"].push_back({{"m", b.rows}, {"n", b.cols}, {"count", b.count}});
    auto& entries = manifest["puzzles"] = nlohmann::ordered_json::array();
    for (const auto& e : corpus) {
        staging.write(e.id + ".json", serialize_puzzle(e.puzzle));
        entries.push_back({{"id", e.id},
                           {"file", e.id + ".json"},
                           {"seed", e.seed},
                           {"m", e.puzzle.rows()},
                           {"n", e.puzzle.cols()}});
    }
    staging.write("manifest.json", manifest.dump(2) + "\n");
    staging.commit();
    std::cout << "wrote " << corpus.size() << " " << to_string(algo) << " puzzles to " << a.out << "\n";
    return 0;
}

// ---- solve -----------------------------------------------------------------

struct LimitArgs {
    std::uint64_t expansion_limit = 0;
    double time_limit = 0.0;
    std::uint64_t memory_limit = 0;

    BenchLimits limits() const
    {
        BenchLimits l;
        if (expansion_limit) l.expansion_limit = expansion_limit;
        if (time_limit > 0.0) l.time_limit_s = time_limit;
        if (memory_limit) l.memory_limit = memory_limit;
        return l;
    }
};

void add_limit_options(CLI::App* cmd, LimitArgs& a)
{
    cmd->add_option("--expansion-limit", a.expansion_limit, "Stop after this many expansions (0 = unlimited)");
    cmd->add_option("--time-limit", a.time_limit, "Stop after this many seconds (0 = unlimited)");
    cmd->add_option("--memory-limit", a.memory_limit, "Cap on open-list entries (0 = unlimited)");
}

// Built-ins prune by default; user files sort unless explicitly allowed to prune.
SearchMode default_mode(const PredicatePtr& pred, bool unsafe_prune)
{
    if (!pred) return SearchMode::off;
    return pred->trusted() || unsafe_prune ? SearchMode::prune : SearchMode::sort;
}

void check_mode(const PredicatePtr& pred, SearchMode mode, bool unsafe_prune)
{
    if (mode != SearchMode::off && !pred) throw UsageError("mode '" + std::string(to_string(mode)) + "' needs a predicate");
    if (mode == SearchMode::prune && !pred->trusted() && !unsafe_prune)
        throw UsageError("predicate '" + pred->name() +
                         "' is not verified; use --mode sort or pass --unsafe-prune");
}

struct SolveArgs {
    std::string puzzle;
    std::string predicate = "learned";
    std::string mode;
    bool unsafe_prune = false;
    bool render = false;
    std::string out;
    LimitArgs limits;
};

int cmd_solve(const SolveArgs& a)
{
    const Puzzle p = load_puzzle(a.puzzle);
    const PredicatePtr pred = resolve_predicate(a.predicate);
    const SearchMode mode = a.mode.empty() ? default_mode(pred, a.unsafe_prune) : parse_search_mode(a.mode);
    check_mode(pred, mode, a.unsafe_prune);

    SearchConfig cfg;
    cfg.predicate = pred;
    cfg.mode = mode;
    cfg.unsafe_prune = a.unsafe_prune;
    const BenchLimits l = a.limits.limits();
    cfg.expansion_limit = l.expansion_limit;
    cfg.time_limit_s = l.time_limit_s;
    cfg.memory_limit = l.memory_limit;
    const SearchResult r = solve(p, cfg);

    nlohmann::ordered_json j;
    j["puzzle"] = fs::path(a.puzzle).stem().string();
    j["predicate"] = pred ? pred->name() : "off";
    j["mode"] = std::string(to_string(mode));
    j["solved"] = r.solution.has_value();
    j["termination"] = std::string(to_string(r.termination));
    j["expansions"] = r.expansions;
    j["generated"] = r.generated;
    j["peak_open"] = r.peak_open;
    j["wall_time_s"] = r.wall_time_s;
    j["complete"] = r.complete;
    j["solution_len"] = r.solution ? r.solution->edge_count() : 0;
    auto& sol = j["solution"] = nlohmann::ordered_json::array();
    if (r.solution)
        for (Vertex v : r.solution->vertices) sol.push_back({v.x, v.y});

    std::cout << "solved=" << (r.solution ? "true" : "false") << " termination=" << to_string(r.termination)
              << " predicate=" << j["predicate"].get<std::string>() << " mode=" << to_string(mode)
              << " expansions=" << r.expansions << " generated=" << r.generated
              << " solution_len=" << j["solution_len"].get<std::size_t>() << "\n";
    if (r.solution) std::cout << "path " << to_string(*r.solution) << "\n";
    if (!r.complete && !r.solution)
        std::cout << "note: an unverified predicate pruned; exhaustion does not prove unsolvability\n";
    if (a.render) std::cout << render_ascii(p, r.solution ? &*r.solution : nullptr);
    if (!a.out.empty()) write_file_atomic(a.out, j.dump(2) + "\n");
    return 0;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
    std::string puzzles;
    std::string predicates = "baseline,learned";
    std::string modes;
    std::string rank = "time";
    unsigned workers = 1;
    bool unsafe_prune = false;
    bool no_wall_time = false;
    std::string out;
    LimitArgs limits;
};

int cmd_bench(const BenchArgs& a)
{
    const Ranking ranking = parse_ranking(a.rank);
    const auto corpus = load_corpus(a.puzzles);

    std::vector<PredicatePtr> preds;
    std::set<std::string> names;
    for (const auto& spec : split(a.predicates)) {
        auto pred = resolve_predicate(spec);
        const std::string name = pred ? pred->name() : "off";
        if (!names.insert(name).second) throw UsageError("predicate '" + name + "' listed twice");
        preds.push_back(std::move(pred));
    }
    if (preds.empty()) throw UsageError("--predicates is empty");

    std::vector<BenchConfig> configs;
    auto add = [&](const PredicatePtr& pred, SearchMode mode) {
        for (const auto& c : configs)
            if (c.label() == (pred ? pred->name() : "off") && c.mode == mode) return;
        configs.push_back(BenchConfig{pred, mode, a.unsafe_prune});
    };
    // The reference run comes first.
    const auto baseline = std::make_shared<const PredicateProgram>(baseline_predicate());
    add(baseline, SearchMode::prune);
    for (const auto& pred : preds) {
        if (!pred) {
            add(nullptr, SearchMode::off);
            continue;
        }
        if (a.modes.empty()) {
            add(pred, default_mode(pred, a.unsafe_prune));
            continue;
        }
        for (const auto& m : split(a.modes)) {
            const SearchMode mode = parse_search_mode(m);
            if (mode == SearchMode::off) {
                add(nullptr, SearchMode::off);
                continue;
            }
            check_mode(pred, mode, a.unsafe_prune);
            add(pred, mode);
        }
    }
    // A built-in baseline configured explicitly keeps the name "baseline";
    // a file with the same stem would be ambiguous in the records.
    for (const auto& c : configs)
        if (c.predicate && c.predicate != baseline && c.label() == "baseline" && !c.predicate->trusted())
            throw UsageError("a predicate file may not be named 'baseline'");

    const auto records = run_bench(corpus, configs, a.limits.limits(), a.workers);

    std::vector<std::string> ids;
    for (const auto& p : corpus) ids.push_back(p.id);
    std::vector<BenchRecord> reference;
    for (std::size_t i = 0; i < records.size(); i += configs.size()) reference.push_back(records[i]);

    std::cout << "puzzles=" << corpus.size() << " reference=baseline/prune rank=" << to_string(ranking) << "\n";
    std::vector<std::pair<double, std::string>> lines;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        std::vector<BenchRecord> mine;
        std::size_t solved = 0;
        std::uint64_t expansions = 0;
        for (std::size_t i = c; i < records.size(); i += configs.size()) {
            mine.push_back(records[i]);
            solved += records[i].solved;
            expansions += records[i].expansions;
        }
        const double st = speedup_time(mine, reference, ids);
        const double se = speedup_expansions(mine, reference, ids);
        char line[256];
        std::snprintf(line, sizeof line,
                      "%-20s %-6s solved=%zu/%zu expansions=%llu speedup_time=%.3f speedup_expansions=%.3f",
                      configs[c].label().c_str(), std::string(to_string(configs[c].mode)).c_str(), solved,
                      corpus.size(), static_cast<unsigned long long>(expansions), st, se);
        lines.emplace_back(ranking == Ranking::time ? st : se, line);
    }
    std::stable_sort(lines.begin(), lines.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (const auto& l : lines) std::cout << l.second << "\n";

    if (!a.out.empty()) write_file_atomic(a.out, records_to_csv(records, !a.no_wall_time));
    return 0;
}

// ---- triage ----------------------------------------------------------------

struct TriageArgs {
    std::string candidates;
    std::string filter1;
    std::string filter2;
    std::string filter3;
    std::string verify_puzzles;
    std::size_t k1 = 25;
    std::size_t k2 = 5;
    std::string mode = "prune";
    std::string rank = "time";
    std::uint64_t expansion_cap = 1'000'000;
    unsigned workers = 1;
    std::string out;
};

int cmd_triage(const TriageArgs& a)
{
    if (!fs::is_directory(a.candidates)) throw UsageError("not a directory: " + a.candidates);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(a.candidates))
        if (entry.is_regular_file() && entry.path().extension() == ".pl") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw UsageError("no .pl candidate files in " + a.candidates);
    std::vector<PredicatePtr> candidates;
    for (const auto& f : files) candidates.push_back(resolve_predicate(f.string()));

    const auto f1 = load_corpus(a.filter1);
    const auto f2 = load_corpus(a.filter2);
    const auto f3 = load_corpus(a.filter3);

    TriageOptions opts;
    opts.k1 = a.k1;
    opts.k2 = a.k2;
    opts.mode = parse_search_mode(a.mode);
    opts.ranking = parse_ranking(a.rank);
    opts.expansion_cap = a.expansion_cap;
    opts.workers = a.workers;
    if (!a.verify_puzzles.empty()) {
        for (auto& p : load_corpus(a.verify_puzzles)) opts.verification_puzzles.push_back(std::move(p.puzzle));
    } else {
        // Small filter puzzles are cheap enough for exhaustive checking.
        for (const auto* set : {&f1, &f2, &f3})
            for (const auto& p : *set)
                if (p.puzzle.rows() * p.puzzle.cols() <= 9) opts.verification_puzzles.push_back(p.puzzle);
    }

    const auto report = triage(candidates, f1, f2, f3, opts);
    for (int s = 0; s < 3; ++s) {
        std::cout << "stage " << s + 1 << " (" << report.filter_sizes[s] << " puzzles)\n";
        for (const auto& e : report.stages[s]) {
            char line[256];
            std::snprintf(line, sizeof line, "  %-24s %-5s speedup_time=%.3f speedup_expansions=%.3f%s%s",
                          e.predicate.c_str(), std::string(to_string(e.mode_used)).c_str(), e.speedup_time,
                          e.speedup_expansions, e.capped ? " capped" : "",
                          e.demoted_to_sort ? " demoted" : "");
            std::cout << line << "\n";
        }
    }
    std::cout << "champion " << report.champion << "\n";
    if (!a.out.empty()) write_file_atomic(a.out, triage_report_to_json(report));
    return 0;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::string predicate;
    std::string puzzles;
    std::size_t max_reported = 20;
    std::uint64_t node_cap = 100'000'000;
    std::string out;
};

int cmd_verify(const VerifyArgs& a)
{
    const PredicatePtr pred = resolve_predicate(a.predicate);
    if (!pred) throw UsageError("verify needs a predicate, not 'off'");
    const auto corpus = load_corpus(a.puzzles);
    std::vector<Puzzle> puzzles;
    for (const auto& p : corpus) puzzles.push_back(p.puzzle);

    OracleOptions opts;
    opts.node_cap = a.node_cap;
    const auto report = verify_no_false_positives(*pred, puzzles, opts, a.max_reported);

    nlohmann::ordered_json j;
    j["predicate"] = pred->name();
    j["puzzles"] = puzzles.size();
    j["checked"] = report.checked;
    j["false_positives"] = report.false_positive_count;
    auto& list = j["examples"] = nlohmann::ordered_json::array();
    for (const auto& fp : report.false_positives)
        list.push_back({{"puzzle", corpus[fp.puzzle_index].id}, {"path", to_string(fp.path)}});

    std::cout << "predicate=" << pred->name() << " puzzles=" << puzzles.size() << " checked=" << report.checked
              << " false_positives=" << report.false_positive_count << "\n";
    for (const auto& fp : report.false_positives)
        std::cout << "  " << corpus[fp.puzzle_index].id << " " << to_string(fp.path) << "\n";
    if (!a.out.empty()) write_file_atomic(a.out, j.dump(2) + "\n");
    return report.false_positive_count == 0 ? 0 : 1;
}

// ---- export-ilp ------------------------------------------------------------

struct ExportArgs {
    std::string puzzles;
    std::string out;
    std::uint64_t node_cap = 100'000'000;
};

int cmd_export(const ExportArgs& a)
{
    std::vector<NamedPuzzle> corpus;
    if (fs::is_regular_file(a.puzzles))
        corpus.push_back({fs::path(a.puzzles).stem().string(), load_puzzle(a.puzzles)});
    else
        corpus = load_corpus(a.puzzles);

    OracleOptions opts;
    opts.node_cap = a.node_cap;
    Staging staging(a.out);
    std::size_t pos = 0;
    std::size_t neg = 0;
    for (const auto& p : corpus) {
        const auto files = export_ilp(p.puzzle, staging.dir() / p.id, opts);
        pos += files.positives;
        neg += files.negatives;
    }
    staging.commit();
    std::cout << "exported " << corpus.size() << " puzzles to " << a.out << ": " << pos << " positive, " << neg
              << " negative examples\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Triangle-constraint puzzle solver with learned incompletability predicates"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate a reproducible puzzle corpus");
    g->add_option("--algo", gen.algo, "random (triangles first) or path (path first)")
        ->required()
        ->check(CLI::IsMember({"random", "path"}));
    g->add_option("--m", gen.rows, "Rows of squares");
    g->add_option("--n", gen.cols, "Columns of squares");
    g->add_option("--count", gen.count, "Number of puzzles")->required();
    g->add_option("--seed", gen.seed, "Corpus seed")->required();
    g->add_option("--out", gen.out, "Output directory")->required();
    g->add_flag("--reference-mix", gen.reference_mix,
                "Spread --count over the 2x2..5x5 reference size mix instead of one size");

    SolveArgs sol;
    auto* s = app.add_subcommand("solve", "Solve one puzzle file");
    s->add_option("puzzle", sol.puzzle, "Puzzle JSON file")->required();
    s->add_option("--predicate", sol.predicate, "off, baseline, learned or a predicate file");
    s->add_option("--mode", sol.mode, "off, sort or prune")->check(CLI::IsMember({"off", "sort", "prune"}));
    s->add_flag("--unsafe-prune", sol.unsafe_prune, "Allow prune mode with an unverified predicate file");
    s->add_flag("--render", sol.render, "Print an ASCII picture of the puzzle and solution");
    s->add_option("--out", sol.out, "Write the result as JSON");
    add_limit_options(s, sol.limits);

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Benchmark predicates over a puzzle directory");
    b->add_option("--puzzles", bench.puzzles, "Puzzle directory")->required();
    b->add_option("--predicates", bench.predicates, "Comma-separated: off, baseline, learned or files");
    b->add_option("--modes", bench.modes, "Comma-separated modes (default: prune for built-ins, sort for files)");
    b->add_option("--rank", bench.rank, "time or expansions")->check(CLI::IsMember({"time", "expansions"}));
    b->add_option("--workers", bench.workers, "Parallel solver threads");
    b->add_flag("--unsafe-prune", bench.unsafe_prune, "Allow prune mode with unverified predicate files");
    b->add_flag("--no-wall-time", bench.no_wall_time, "Leave the wall_time_s column empty");
    b->add_option("--out", bench.out, "Records file (CSV)");
    add_limit_options(b, bench.limits);

    TriageArgs tri;
    auto* t = app.add_subcommand("triage", "Three-stage filtering of candidate predicates");
    t->add_option("--candidates", tri.candidates, "Directory of .pl candidate files")->required();
    t->add_option("--filter1", tri.filter1, "First (smallest) filter puzzle directory")->required();
    t->add_option("--filter2", tri.filter2, "Second filter puzzle directory")->required();
    t->add_option("--filter3", tri.filter3, "Third (largest) filter puzzle directory")->required();
    t->add_option("--verify-puzzles", tri.verify_puzzles,
                  "Puzzles for the false-positive check (default: filter puzzles with at most 9 squares)");
    t->add_option("--k1", tri.k1, "Candidates kept after stage 1");
    t->add_option("--k2", tri.k2, "Candidates kept after stage 2");
    t->add_option("--mode", tri.mode, "sort or prune")->check(CLI::IsMember({"sort", "prune"}));
    t->add_option("--rank", tri.rank, "time or expansions")->check(CLI::IsMember({"time", "expansions"}));
    t->add_option("--expansion-cap", tri.expansion_cap, "Per-run expansion cap; capped runs are charged the cap");
    t->add_option("--workers", tri.workers, "Parallel solver threads");
    t->add_option("--out", tri.out, "Report file (JSON)");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Check a predicate for false positives by exhaustive search");
    v->add_option("--predicate", ver.predicate, "baseline, learned or a predicate file")->required();
    v->add_option("--puzzles", ver.puzzles, "Puzzle directory")->required();
    v->add_option("--max-reported", ver.max_reported, "False positives listed in the report");
    v->add_option("--node-cap", ver.node_cap, "Oracle node budget per puzzle");
    v->add_option("--out", ver.out, "Report file (JSON)");

    ExportArgs exp;
    auto* e = app.add_subcommand("export-ilp", "Write ILP learner inputs, one directory per puzzle");
    e->add_option("--puzzles", exp.puzzles, "Puzzle file or directory")->required();
    e->add_option("--out", exp.out, "Output directory")->required();
    e->add_option("--node-cap", exp.node_cap, "Oracle node budget per puzzle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*g) return cmd_gen(gen);
        if (*s) return cmd_solve(sol);
        if (*b) return cmd_bench(bench);
        if (*t) return cmd_triage(tri);
        if (*v) return cmd_verify(ver);
        if (*e) return cmd_export(exp);
    } catch (const UsageError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const InvalidPuzzle& err) {
        // A puzzle file that parses but breaks an invariant is bad input.
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& err) {
        // Bad parameter values (unknown names, invalid dimensions, triage asserts).
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}
