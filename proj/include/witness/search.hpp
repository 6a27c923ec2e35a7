#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "witness/grid.hpp"
#include "witness/oracle.hpp"
#include "witness/predicate.hpp"

namespace witness {

enum class SearchMode : std::uint8_t {
    off,    // predicate ignored: plain A*
    sort,   // flagged paths are queued behind unflagged ones
    prune,  // flagged paths are discarded
};

enum class Termination : std::uint8_t { solved, exhausted, expansion_limit, time_limit, memory_limit };

std::string_view to_string(SearchMode m);
std::string_view to_string(Termination t);
SearchMode parse_search_mode(std::string_view s);
Termination parse_termination(std::string_view s);

enum class TraceEvent : std::uint8_t {
    expanded,       // popped from the open list
    pushed,         // generated and queued
    pruned,         // generated, flagged and discarded
    goal_rejected,  // reached the goal without satisfying every constraint
    solved,
};

std::string_view to_string(TraceEvent e);

struct SearchConfig {
    PredicatePtr predicate;
    SearchMode mode = SearchMode::off;
    std::optional<std::uint64_t> expansion_limit;
    std::optional<double> time_limit_s;
    /// Cap on open-list entries.
    std::optional<std::uint64_t> memory_limit;
    /// Allows prune mode with a predicate that is not trusted. The result is
    /// then marked as possibly incomplete.
    bool unsafe_prune = false;
    /// Debug hook; called with the full path for every search event.
    std::function<void(TraceEvent, const Path&, bool flag)> trace;
};

struct SearchResult {
    std::optional<Path> solution;
    std::uint64_t expansions = 0;
    std::uint64_t generated = 0;
    std::uint64_t peak_open = 0;
    double wall_time_s = 0.0;
    Termination termination = Termination::exhausted;
    /// False when an unverified predicate pruned: "exhausted" then does not
    /// prove unsolvability.
    bool complete = true;
};

int manhattan(Vertex v, Vertex goal);

/// A* over partial paths. The open list is ordered by (flag, g + h, h) with
/// FIFO order among exact ties; the flag is the predicate value computed
/// once when a path is generated. The first goal-reaching path satisfying
/// every constraint is returned; goal-reaching paths that fail are dropped.
///
/// Throws std::invalid_argument for prune mode with an untrusted predicate
/// unless unsafe_prune is set, or for sort/prune mode without a predicate.
SearchResult solve(const Puzzle& p, const SearchConfig& cfg);

struct FalsePositive {
    std::size_t puzzle_index;
    Path path;
};

struct VerificationReport {
    std::uint64_t checked = 0;
    std::uint64_t false_positive_count = 0;
    /// First `max_reported` false positives found.
    std::vector<FalsePositive> false_positives;
};

/// Evaluates the predicate on every simple start-anchored partial path of
/// every puzzle and records paths it flags that the oracle proves
/// completable.
VerificationReport verify_no_false_positives(const PredicateProgram& prog,
                                             const std::vector<Puzzle>& puzzles,
                                             const OracleOptions& opts = {},
                                             std::size_t max_reported = 1000);

}  // namespace witness
