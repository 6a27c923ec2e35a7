#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "witness/puzzle_io.hpp"
#include "witness/search.hpp"

namespace witness {

/// One solve of one puzzle with one (predicate, mode) configuration.
struct BenchRecord {
    std::string puzzle_id;
    std::string predicate;
    SearchMode mode = SearchMode::prune;
    bool solved = false;
    std::uint64_t expansions = 0;
    std::uint64_t generated = 0;
    double wall_time_s = 0.0;
    std::size_t solution_len = 0;
    Termination termination = Termination::exhausted;
};

struct BenchConfig {
    PredicatePtr predicate;  // nullptr runs plain A*
    SearchMode mode = SearchMode::prune;
    bool unsafe_prune = false;

    std::string label() const { return predicate ? predicate->name() : "off"; }
};

struct BenchLimits {
    std::optional<std::uint64_t> expansion_limit;
    std::optional<double> time_limit_s;
    std::optional<std::uint64_t> memory_limit;
};

/// Runs every configuration on every puzzle. Records come back ordered by
/// puzzle, then configuration, whatever the worker count.
std::vector<BenchRecord> run_bench(const std::vector<NamedPuzzle>& puzzles,
                                   const std::vector<BenchConfig>& configs, const BenchLimits& limits,
                                   unsigned workers = 1);

/// Header: puzzle_id,predicate,mode,solved,expansions,generated,wall_time_s,solution_len,termination
std::string records_to_csv(const std::vector<BenchRecord>& records, bool with_wall_time = true);
std::vector<BenchRecord> records_from_csv(std::string_view text);

/// Total baseline time over total candidate time on the given puzzles.
/// Throws std::invalid_argument for a missing record, std::domain_error for
/// a zero candidate total.
double speedup_time(const std::vector<BenchRecord>& candidate, const std::vector<BenchRecord>& baseline,
                    const std::vector<std::string>& puzzle_ids);
/// Same ratio over expansion counts.
double speedup_expansions(const std::vector<BenchRecord>& candidate,
                          const std::vector<BenchRecord>& baseline,
                          const std::vector<std::string>& puzzle_ids);

enum class Ranking : std::uint8_t {
    time,        // wall-clock speedup
    expansions,  // expansion speedup; deterministic
};

std::string_view to_string(Ranking r);
Ranking parse_ranking(std::string_view s);

struct StageEntry {
    std::string predicate;
    double speedup_time = 0.0;
    double speedup_expansions = 0.0;
    SearchMode mode_used = SearchMode::prune;
    /// Some run hit the expansion cap and was charged the cap.
    bool capped = false;
    /// Prune requested for an unverified candidate that showed false
    /// positives (or could not be checked); ran in sort.
    bool demoted_to_sort = false;
};

struct TriageOptions {
    std::size_t k1 = 25;
    std::size_t k2 = 5;
    SearchMode mode = SearchMode::prune;
    Ranking ranking = Ranking::time;
    std::uint64_t expansion_cap = 1'000'000;
    /// Oracle-scale puzzles used to check untrusted candidates before they
    /// may prune. When empty, untrusted candidates run in sort mode.
    std::vector<Puzzle> verification_puzzles;
    OracleOptions oracle;
    unsigned workers = 1;
};

struct TriageReport {
    Ranking ranking = Ranking::time;
    SearchMode mode = SearchMode::prune;
    std::size_t k1 = 0;
    std::size_t k2 = 0;
    std::size_t filter_sizes[3] = {0, 0, 0};
    std::vector<StageEntry> stages[3];
    std::string champion;
};

/// Three-stage filtering: rank all candidates on the first set and keep the
/// top k1, rank those on the second set and keep the top k2, then pick the
/// best on the third set. Speedups are relative to the baseline predicate in
/// prune mode. Ties go to the lexicographically smaller name.
///
/// Throws std::invalid_argument unless |set1| < |set2| < |set3|, k1 > k2 >= 1,
/// candidates are nonempty and their names are unique.
TriageReport triage(const std::vector<PredicatePtr>& candidates, const std::vector<NamedPuzzle>& filter1,
                    const std::vector<NamedPuzzle>& filter2, const std::vector<NamedPuzzle>& filter3,
                    const TriageOptions& opts);

std::string triage_report_to_json(const TriageReport& report);

}  // namespace witness
