#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "witness/bench.hpp"
#include "witness/generators.hpp"

using namespace witness;

namespace {

std::vector<NamedPuzzle> corpus(std::size_t n, std::uint64_t seed, int rows = 3, int cols = 3)
{
    std::vector<NamedPuzzle> out;
    for (const auto& e : generate_corpus(Algorithm::random_triangles, {{rows, cols, n}}, seed))
        out.push_back({e.id, e.puzzle});
    return out;
}

PredicatePtr named(const PredicateProgram& prog, const std::string& name)
{
    return std::make_shared<const PredicateProgram>(prog.renamed(name));
}

BenchRecord record(std::string id, double time, std::uint64_t expansions)
{
    BenchRecord r;
    r.puzzle_id = std::move(id);
    r.wall_time_s = time;
    r.expansions = expansions;
    return r;
}

}  // namespace

TEST_CASE("records come back in puzzle, then config order for any worker count")
{
    const auto set = corpus(8, 1);
    const std::vector<BenchConfig> configs = {
        {nullptr, SearchMode::off},
        {std::make_shared<const PredicateProgram>(baseline_predicate()), SearchMode::prune},
        {std::make_shared<const PredicateProgram>(learned_predicate()), SearchMode::sort},
    };
    const auto one = run_bench(set, configs, {}, 1);
    const auto three = run_bench(set, configs, {}, 3);
    REQUIRE(one.size() == 24);
    CHECK(records_to_csv(one, false) == records_to_csv(three, false));
    CHECK(one[0].puzzle_id == set[0].id);
    CHECK(one[0].predicate == "off");
    CHECK(one[0].mode == SearchMode::off);
    CHECK(one[1].predicate == "baseline");
    CHECK(one[2].mode == SearchMode::sort);
    CHECK(one[3].puzzle_id == set[1].id);
    for (const auto& r : one) {
        CHECK(r.solved);
        CHECK(r.termination == Termination::solved);
        CHECK(r.solution_len > 0);
    }
}

TEST_CASE("csv round trip")
{
    const auto set = corpus(4, 2);
    const auto recs = run_bench(set, {{std::make_shared<const PredicateProgram>(learned_predicate())}}, {}, 1);
    const std::string csv = records_to_csv(recs);
    CHECK(csv.rfind("puzzle_id,predicate,mode,solved,expansions,generated,wall_time_s,solution_len,termination\n", 0) ==
          0);
    const auto back = records_from_csv(csv);
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(back[i].puzzle_id == recs[i].puzzle_id);
        CHECK(back[i].expansions == recs[i].expansions);
        CHECK(back[i].generated == recs[i].generated);
        CHECK(back[i].solution_len == recs[i].solution_len);
        CHECK(back[i].wall_time_s == doctest::Approx(recs[i].wall_time_s).epsilon(1e-6));
    }
    CHECK(records_to_csv(back, false) == records_to_csv(recs, false));
    CHECK_THROWS_AS(records_from_csv("header\na,b,c\n"), std::invalid_argument);
    CHECK_THROWS_AS(records_from_csv("header\na,off,off,true,x,1,,0,solved\n"), std::invalid_argument);
}

TEST_CASE("speedups are ratios of totals")
{
    const std::vector<BenchRecord> base = {record("a", 2.0, 100), record("b", 4.0, 300)};
    const std::vector<BenchRecord> cand = {record("a", 1.0, 50), record("b", 1.0, 50)};
    CHECK(speedup_time(cand, base, {"a", "b"}) == doctest::Approx(3.0));
    CHECK(speedup_expansions(cand, base, {"a", "b"}) == doctest::Approx(4.0));
    CHECK(speedup_expansions(cand, base, {"b"}) == doctest::Approx(6.0));
    CHECK_THROWS_AS(speedup_time(cand, base, {"c"}), std::invalid_argument);
    CHECK_THROWS_AS(speedup_time({record("a", 0.0, 0)}, base, {"a"}), std::domain_error);
}

TEST_CASE("learned beats baseline on expansions")
{
    const auto set = corpus(20, 3, 4, 4);
    const auto base = run_bench(set, {{std::make_shared<const PredicateProgram>(baseline_predicate())}}, {}, 1);
    const auto lrn = run_bench(set, {{std::make_shared<const PredicateProgram>(learned_predicate())}}, {}, 1);
    std::vector<std::string> ids;
    for (const auto& p : set) ids.push_back(p.id);
    CHECK(speedup_expansions(lrn, base, ids) >= 1.0);
    CHECK(speedup_expansions(base, base, ids) == doctest::Approx(1.0));
}

TEST_CASE("triage")
{
    const auto f1 = corpus(3, 10);
    const auto f2 = corpus(5, 11);
    const auto f3 = corpus(8, 12);

    TriageOptions opts;
    opts.k1 = 3;
    opts.k2 = 2;
    opts.ranking = Ranking::expansions;
    for (int i = 0; i < 20; ++i) opts.verification_puzzles.push_back(gen_random_triangles(2, 2, 100 + i));
    opts.verification_puzzles.push_back(Puzzle(2, 2, {0, 0}, {2, 2}, {{{0, 0}, 2}}));

    const auto broken = std::make_shared<const PredicateProgram>(parse_predicate(
        "f(A,B) :- square(B,D,C), path(A,E), count(E,C,F), notAdjacent(A,B), two(D), one(F).", "broken"));
    const std::vector<PredicatePtr> candidates = {
        named(parse_predicate(std::string(learned_predicate_text())), "cand_learned"),
        named(parse_predicate("f(A,B) :- square(B,C,D), path(A,E), count(D,E,F), greaterThan(F,C)."), "cand_base"),
        named(parse_predicate("f(A,B) :- square(B,C,D), path(A,E), count(D,E,F), greaterThan(F,C)."), "cand_twin"),
        broken,
    };

    const auto report = triage(candidates, f1, f2, f3, opts);
    CHECK(report.stages[0].size() == 4);
    CHECK(report.stages[1].size() == 3);
    CHECK(report.stages[2].size() == 2);
    CHECK(report.champion == "cand_learned");

    // Equal scores are ordered by name.
    const auto& s1 = report.stages[0];
    for (std::size_t i = 0; i + 1 < s1.size(); ++i) {
        CHECK(s1[i].speedup_expansions >= s1[i + 1].speedup_expansions);
        if (s1[i].speedup_expansions == s1[i + 1].speedup_expansions) CHECK(s1[i].predicate < s1[i + 1].predicate);
    }
    for (const auto& e : s1) {
        if (e.predicate == "broken") {
            CHECK(e.demoted_to_sort);
            CHECK(e.mode_used == SearchMode::sort);
        } else {
            CHECK_FALSE(e.demoted_to_sort);
            CHECK(e.mode_used == SearchMode::prune);
        }
        if (e.predicate == "cand_base") CHECK(e.speedup_expansions == doctest::Approx(1.0));
    }

    const auto json = nlohmann::json::parse(triage_report_to_json(report));
    CHECK(json["champion"] == "cand_learned");
    CHECK(json["stage3"].size() == 2);
    CHECK(json["filter_sizes"][2] == 8);

    const auto again = triage(candidates, f1, f2, f3, opts);
    CHECK(triage_report_to_json(again) != "");
    for (int s = 0; s < 3; ++s) {
        REQUIRE(again.stages[s].size() == report.stages[s].size());
        for (std::size_t i = 0; i < report.stages[s].size(); ++i)
            CHECK(again.stages[s][i].predicate == report.stages[s][i].predicate);
    }
}

TEST_CASE("triage argument checks")
{
    const auto f1 = corpus(2, 20);
    const auto f2 = corpus(3, 21);
    const auto f3 = corpus(4, 22);
    const std::vector<PredicatePtr> one = {named(baseline_predicate(), "a")};
    TriageOptions opts;
    opts.k1 = 2;
    opts.k2 = 1;
    CHECK_NOTHROW(triage(one, f1, f2, f3, opts));
    CHECK_THROWS_AS(triage(one, f2, f1, f3, opts), std::invalid_argument);
    CHECK_THROWS_AS(triage(one, f1, f2, f2, opts), std::invalid_argument);
    CHECK_THROWS_AS(triage({}, f1, f2, f3, opts), std::invalid_argument);
    CHECK_THROWS_AS(triage({one[0], one[0]}, f1, f2, f3, opts), std::invalid_argument);
    opts.k2 = 2;
    CHECK_THROWS_AS(triage(one, f1, f2, f3, opts), std::invalid_argument);
    opts.k2 = 0;
    CHECK_THROWS_AS(triage(one, f1, f2, f3, opts), std::invalid_argument);
}

TEST_CASE("ranking names")
{
    CHECK(parse_ranking("time") == Ranking::time);
    CHECK(parse_ranking("expansions") == Ranking::expansions);
    CHECK_THROWS_AS(parse_ranking("speed"), std::invalid_argument);
}

TEST_CASE("unverifiable candidates do not prune")
{
    const auto f1 = corpus(2, 30);
    const auto f2 = corpus(3, 31);
    const auto f3 = corpus(4, 32);
    TriageOptions opts;
    opts.k1 = 2;
    opts.k2 = 1;
    const auto untrusted = std::make_shared<const PredicateProgram>(parse_predicate(learned_predicate_text(), "file"));
    const auto report = triage({untrusted}, f1, f2, f3, opts);
    REQUIRE(report.stages[0].size() == 1);
    CHECK(report.stages[0][0].mode_used == SearchMode::sort);
    CHECK(report.stages[0][0].demoted_to_sort);
}
