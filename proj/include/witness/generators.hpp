#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "witness/grid.hpp"

namespace witness {

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Algorithm : std::uint8_t {
    random_triangles,  // scatter triangles, keep if the baseline search solves it
    from_path,         // draw a path, then derive triangles from it
};

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view s);

struct RandomTrianglesOptions {
    std::uint32_t max_attempts = 10'000;
    /// Baseline expansions allowed when checking solvability. An attempt that
    /// hits the cap counts as unproven and is regenerated.
    std::uint64_t solve_expansion_cap = 20'000'000;
};

/// Start is the bottom-left corner; the goal is uniform over the other
/// boundary vertices. Between 1 and floor(mn/2) distinct squares receive 1-3
/// triangles each; attempts repeat until the baseline search finds a
/// solution. Throws InvalidPuzzle when mn < 2, GenerationError when the
/// attempt budget runs out.
Puzzle gen_random_triangles(int rows, int cols, std::uint64_t seed,
                            const RandomTrianglesOptions& opts = {});

struct PathPuzzle {
    Puzzle puzzle;
    Path witness;
};

/// Draws a random simple start-to-goal path (random self-avoiding walk,
/// restarted whenever it gets stuck), then gives a random nonempty subset
/// of the squares it touches exactly as many triangles as path edges they
/// share. The witness path always solves the puzzle.
PathPuzzle gen_from_path(int rows, int cols, std::uint64_t seed);

/// Every square sharing at least one edge with the path, with the number of
/// shared edges as its triangle count. Row-major.
std::vector<Constraint> touched_squares(int rows, int cols, const Path& path);

/// Random simple start-to-goal path used by gen_from_path.
Path random_simple_path(int rows, int cols, Vertex start, Vertex goal, std::uint64_t seed);

/// Boundary vertices other than `start`, row-major.
std::vector<Vertex> goal_candidates(int rows, int cols, Vertex start);

struct SizeBucket {
    int rows;
    int cols;
    std::size_t count;
};

/// Size distribution of the published 15,000-instance test set (2x2 to 5x5).
const std::vector<SizeBucket>& reference_size_mix();

/// reference_size_mix() scaled to `total` instances by largest remainder.
std::vector<SizeBucket> scaled_size_mix(std::size_t total);

struct CorpusEntry {
    std::string id;
    std::uint64_t seed;
    Puzzle puzzle;
};

/// Distinct puzzles for each bucket. Non-square buckets alternate between
/// rows x cols and cols x rows. Entry seeds regenerate the exact instance.
/// Throws GenerationError when a bucket cannot reach its count of distinct
/// instances within 50 x count draws.
std::vector<CorpusEntry> generate_corpus(Algorithm algo, const std::vector<SizeBucket>& buckets,
                                         std::uint64_t seed,
                                         const RandomTrianglesOptions& opts = {});

/// Single-instance generation by algorithm.
Puzzle generate(Algorithm algo, int rows, int cols, std::uint64_t seed,
                const RandomTrianglesOptions& opts = {});

}  // namespace witness
