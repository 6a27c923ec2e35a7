#include "witness/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace witness {

std::vector<BenchRecord> run_bench(const std::vector<NamedPuzzle>& puzzles,
                                   const std::vector<BenchConfig>& configs, const BenchLimits& limits,
                                   unsigned workers)
{
    const std::size_t total = puzzles.size() * configs.size();
    std::vector<BenchRecord> records(total);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t job = next++; job < total; job = next++) {
            const auto& named = puzzles[job / configs.size()];
            const auto& config = configs[job % configs.size()];
            SearchConfig cfg;
            cfg.predicate = config.predicate;
            cfg.mode = config.predicate ? config.mode : SearchMode::off;
            cfg.unsafe_prune = config.unsafe_prune;
            cfg.expansion_limit = limits.expansion_limit;
            cfg.time_limit_s = limits.time_limit_s;
            cfg.memory_limit = limits.memory_limit;
            const SearchResult r = solve(named.puzzle, cfg);

            BenchRecord& rec = records[job];
            rec.puzzle_id = named.id;
            rec.predicate = config.label();
            rec.mode = cfg.mode;
            rec.solved = r.solution.has_value();
            rec.expansions = r.expansions;
            rec.generated = r.generated;
            rec.wall_time_s = r.wall_time_s;
            rec.solution_len = r.solution ? r.solution->edge_count() : 0;
            rec.termination = r.termination;
        }
    };

    workers = std::max(1U, workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return records;
}

std::string records_to_csv(const std::vector<BenchRecord>& records, bool with_wall_time)
{
    std::ostringstream out;
    out << "puzzle_id,predicate,mode,solved,expansions,generated,wall_time_s,solution_len,termination\n";
    for (const auto& r : records) {
        char time[32] = "";
        if (with_wall_time) std::snprintf(time, sizeof time, "%.9f", r.wall_time_s);
        out << r.puzzle_id << ',' << r.predicate << ',' << to_string(r.mode) << ','
            << (r.solved ? "true" : "false") << ',' << r.expansions << ',' << r.generated << ',' << time
            << ',' << r.solution_len << ',' << to_string(r.termination) << '\n';
    }
    return out.str();
}

namespace {

template <class T>
T parse_number(std::string_view field, std::size_t line)
{
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw std::invalid_argument("record line " + std::to_string(line) + ": bad number '" +
                                    std::string(field) + "'");
    return value;
}

}  // namespace

std::vector<BenchRecord> records_from_csv(std::string_view text)
{
    std::vector<BenchRecord> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || line.empty()) continue;
        std::vector<std::string> f;
        std::string field;
        std::istringstream fields(line);
        while (std::getline(fields, field, ',')) f.push_back(field);
        if (f.size() != 9)
            throw std::invalid_argument("record line " + std::to_string(line_no) + ": expected 9 fields");
        BenchRecord r;
        r.puzzle_id = f[0];
        r.predicate = f[1];
        r.mode = parse_search_mode(f[2]);
        r.solved = f[3] == "true";
        r.expansions = parse_number<std::uint64_t>(f[4], line_no);
        r.generated = parse_number<std::uint64_t>(f[5], line_no);
        r.wall_time_s = f[6].empty() ? 0.0 : std::stod(f[6]);
        r.solution_len = parse_number<std::size_t>(f[7], line_no);
        r.termination = parse_termination(f[8]);
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

template <class Measure>
double speedup(const std::vector<BenchRecord>& candidate, const std::vector<BenchRecord>& baseline,
               const std::vector<std::string>& puzzle_ids, Measure measure)
{
    auto index = [](const std::vector<BenchRecord>& records) {
        std::map<std::string_view, const BenchRecord*> m;
        for (const auto& r : records) m[r.puzzle_id] = &r;
        return m;
    };
    const auto cand = index(candidate);
    const auto base = index(baseline);
    double num = 0.0;
    double den = 0.0;
    for (const auto& id : puzzle_ids) {
        const auto c = cand.find(id);
        const auto b = base.find(id);
        if (c == cand.end()) throw std::invalid_argument("no candidate record for puzzle " + id);
        if (b == base.end()) throw std::invalid_argument("no baseline record for puzzle " + id);
        num += measure(*b->second);
        den += measure(*c->second);
    }
    if (den <= 0.0) throw std::domain_error("candidate total is zero");
    return num / den;
}

}  // namespace

double speedup_time(const std::vector<BenchRecord>& candidate, const std::vector<BenchRecord>& baseline,
                    const std::vector<std::string>& puzzle_ids)
{
    return speedup(candidate, baseline, puzzle_ids, [](const BenchRecord& r) { return r.wall_time_s; });
}

double speedup_expansions(const std::vector<BenchRecord>& candidate,
                          const std::vector<BenchRecord>& baseline,
                          const std::vector<std::string>& puzzle_ids)
{
    return speedup(candidate, baseline, puzzle_ids,
                   [](const BenchRecord& r) { return static_cast<double>(r.expansions); });
}

std::string_view to_string(Ranking r)
{
    return r == Ranking::time ? "time" : "expansions";
}

Ranking parse_ranking(std::string_view s)
{
    if (s == "time") return Ranking::time;
    if (s == "expansions") return Ranking::expansions;
    throw std::invalid_argument("unknown ranking '" + std::string(s) + "'");
}

namespace {

struct Contender {
    PredicatePtr predicate;
    SearchMode mode;
    bool demoted = false;
};

std::vector<std::string> ids_of(const std::vector<NamedPuzzle>& set)
{
    std::vector<std::string> ids;
    for (const auto& p : set) ids.push_back(p.id);
    return ids;
}

std::vector<StageEntry> run_stage(const std::vector<Contender>& contenders, const std::vector<NamedPuzzle>& set,
                                  const TriageOptions& opts)
{
    BenchLimits limits;
    limits.expansion_limit = opts.expansion_cap;

    const auto baseline = run_bench(
        set, {BenchConfig{std::make_shared<const PredicateProgram>(baseline_predicate()), SearchMode::prune}},
        limits, opts.workers);

    std::vector<BenchConfig> configs;
    for (const auto& c : contenders)
        configs.push_back(BenchConfig{c.predicate, c.mode, c.mode == SearchMode::prune});
    const auto records = run_bench(set, configs, limits, opts.workers);
    const auto ids = ids_of(set);

    std::vector<StageEntry> entries;
    for (std::size_t i = 0; i < contenders.size(); ++i) {
        std::vector<BenchRecord> mine;
        for (std::size_t j = i; j < records.size(); j += contenders.size()) mine.push_back(records[j]);
        StageEntry e;
        e.predicate = contenders[i].predicate->name();
        e.mode_used = contenders[i].mode;
        e.demoted_to_sort = contenders[i].demoted;
        e.capped = std::any_of(mine.begin(), mine.end(), [](const BenchRecord& r) {
            return r.termination == Termination::expansion_limit;
        });
        e.speedup_time = speedup_time(mine, baseline, ids);
        e.speedup_expansions = speedup_expansions(mine, baseline, ids);
        entries.push_back(std::move(e));
    }

    const Ranking ranking = opts.ranking;
    std::sort(entries.begin(), entries.end(), [ranking](const StageEntry& a, const StageEntry& b) {
        const double sa = ranking == Ranking::time ? a.speedup_time : a.speedup_expansions;
        const double sb = ranking == Ranking::time ? b.speedup_time : b.speedup_expansions;
        if (sa != sb) return sa > sb;
        return a.predicate < b.predicate;
    });
    return entries;
}

std::vector<Contender> keep(const std::vector<Contender>& contenders, const std::vector<StageEntry>& ranked,
                            std::size_t k)
{
    std::vector<Contender> out;
    for (std::size_t i = 0; i < ranked.size() && out.size() < k; ++i)
        for (const auto& c : contenders)
            if (c.predicate->name() == ranked[i].predicate) out.push_back(c);
    return out;
}

}  // namespace

TriageReport triage(const std::vector<PredicatePtr>& candidates, const std::vector<NamedPuzzle>& filter1,
                    const std::vector<NamedPuzzle>& filter2, const std::vector<NamedPuzzle>& filter3,
                    const TriageOptions& opts)
{
    if (!(filter1.size() < filter2.size() && filter2.size() < filter3.size()))
        throw std::invalid_argument("filter sets must strictly grow: got " + std::to_string(filter1.size()) +
                                    ", " + std::to_string(filter2.size()) + ", " +
                                    std::to_string(filter3.size()));
    if (!(opts.k1 > opts.k2) || opts.k2 < 1)
        throw std::invalid_argument("need k1 > k2 >= 1, got k1=" + std::to_string(opts.k1) +
                                    ", k2=" + std::to_string(opts.k2));
    if (candidates.empty()) throw std::invalid_argument("no candidate predicates");
    if (opts.mode == SearchMode::off) throw std::invalid_argument("triage needs sort or prune mode");

    std::set<std::string> names;
    std::vector<Contender> contenders;
    for (const auto& c : candidates) {
        if (!c) throw std::invalid_argument("null candidate predicate");
        if (!names.insert(c->name()).second)
            throw std::invalid_argument("duplicate candidate name '" + c->name() + "'");
        Contender entry{c, opts.mode};
        if (opts.mode == SearchMode::prune && !c->trusted()) {
            // Without puzzles to check against, an unverified candidate may not prune.
            const bool unchecked = opts.verification_puzzles.empty();
            if (unchecked ||
                verify_no_false_positives(*c, opts.verification_puzzles, opts.oracle, 1).false_positive_count > 0) {
                entry.mode = SearchMode::sort;
                entry.demoted = true;
            }
        }
        contenders.push_back(std::move(entry));
    }

    TriageReport report;
    report.ranking = opts.ranking;
    report.mode = opts.mode;
    report.k1 = opts.k1;
    report.k2 = opts.k2;
    report.filter_sizes[0] = filter1.size();
    report.filter_sizes[1] = filter2.size();
    report.filter_sizes[2] = filter3.size();

    report.stages[0] = run_stage(contenders, filter1, opts);
    contenders = keep(contenders, report.stages[0], opts.k1);
    report.stages[1] = run_stage(contenders, filter2, opts);
    contenders = keep(contenders, report.stages[1], opts.k2);
    report.stages[2] = run_stage(contenders, filter3, opts);
    report.champion = report.stages[2].front().predicate;
    return report;
}

std::string triage_report_to_json(const TriageReport& report)
{
    nlohmann::ordered_json j;
    j["champion"] = report.champion;
    j["ranking"] = std::string(to_string(report.ranking));
    j["mode"] = std::string(to_string(report.mode));
    j["k1"] = report.k1;
    j["k2"] = report.k2;
    j["filter_sizes"] = {report.filter_sizes[0], report.filter_sizes[1], report.filter_sizes[2]};
    for (int s = 0; s < 3; ++s) {
        auto& stage = j["stage" + std::to_string(s + 1)];
        stage = nlohmann::ordered_json::array();
        for (const auto& e : report.stages[s]) {
            nlohmann::ordered_json row;
            row["predicate"] = e.predicate;
            row["speedup_time"] = e.speedup_time;
            row["speedup_expansions"] = e.speedup_expansions;
            row["mode"] = std::string(to_string(e.mode_used));
            row["capped"] = e.capped;
            row["demoted_to_sort"] = e.demoted_to_sort;
            stage.push_back(std::move(row));
        }
    }
    return j.dump(2) + "\n";
}

}  // namespace witness
