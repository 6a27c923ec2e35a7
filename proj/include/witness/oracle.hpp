#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "witness/grid.hpp"
#include "witness/predicate.hpp"

namespace witness {

/// Exhaustive search exceeded its node budget; the instance is too large
/// for the oracle. Never converted into an answer.
class OracleLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleOptions {
    /// Maximum number of DFS nodes visited per call.
    std::uint64_t node_cap = 100'000'000;
};

/// All solutions in DFS order, neighbours visited up, right, down, left.
/// The goal vertex is terminal: no path continues through it.
std::vector<Path> enumerate_solutions(const Puzzle& p, const OracleOptions& opts = {});

/// True iff some solution has `path` as a prefix. Brute-force extension
/// search, independent of any predicate. Throws InvalidPuzzle if the path is
/// not simple or does not start at the puzzle's start.
bool completable(const Puzzle& p, const Path& path, const OracleOptions& opts = {});

struct LabeledExample {
    Path path;
    bool incompletable = false;  // positive ILP example
};

/// Every simple start-anchored path that does not contain the goal,
/// labeled by completability, in DFS pre-order.
std::vector<LabeledExample> labeled_examples(const Puzzle& p, const OracleOptions& opts = {});

/// Streaming form of labeled_examples: visits every partial path once
/// (post-order) with its edge set, head and completability. The vertex span
/// is only valid during the call.
using PartialPathVisitor =
    std::function<void(std::span<const Vertex> vertices, const PathView& view, bool completable)>;
std::uint64_t for_each_partial_path(const Puzzle& p, const PartialPathVisitor& visit,
                                    const OracleOptions& opts = {});

}  // namespace witness
