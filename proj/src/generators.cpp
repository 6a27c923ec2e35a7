#include "witness/generators.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "witness/predicate.hpp"
#include "witness/puzzle_io.hpp"
#include "witness/rng.hpp"
#include "witness/search.hpp"

namespace witness {

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::string_view purpose)
{
    // FNV-1a over the purpose label.
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : purpose) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return Rng(mix64(seed) ^ h);
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t index)
{
    return mix64(mix64(seed) + index);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi)
{
    const auto range = static_cast<std::uint64_t>(hi - lo);
    if (range == ~std::uint64_t{0}) return static_cast<std::int64_t>(next());
    const std::uint64_t span = range + 1;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

std::string_view to_string(Algorithm a)
{
    return a == Algorithm::random_triangles ? "random" : "path";
}

Algorithm parse_algorithm(std::string_view s)
{
    if (s == "random") return Algorithm::random_triangles;
    if (s == "path") return Algorithm::from_path;
    throw std::invalid_argument("unknown generator algorithm '" + std::string(s) + "'");
}

std::vector<Vertex> goal_candidates(int rows, int cols, Vertex start)
{
    std::vector<Vertex> out;
    for (int y = 0; y <= rows; ++y)
        for (int x = 0; x <= cols; ++x)
            if ((x == 0 || y == 0 || x == cols || y == rows) && Vertex{x, y} != start)
                out.push_back({x, y});
    return out;
}

namespace {

void check_dims(int rows, int cols)
{
    if (rows < 1 || cols < 1)
        throw InvalidPuzzle("grid dimensions must be positive, got " + std::to_string(rows) + "x" +
                            std::to_string(cols));
}

std::vector<Square> all_squares(int rows, int cols)
{
    std::vector<Square> out;
    for (int cy = 0; cy < rows; ++cy)
        for (int cx = 0; cx < cols; ++cx) out.push_back({cx, cy});
    return out;
}

Vertex pick_goal(Rng& rng, int rows, int cols, Vertex start)
{
    const auto goals = goal_candidates(rows, cols, start);
    return goals[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(goals.size()) - 1))];
}

bool backtrack_walk(const Puzzle& grid, Rng& rng, std::vector<Vertex>& path, std::set<Vertex>& seen)
{
    if (path.back() == grid.goal()) return true;
    auto next = grid.neighbors(path.back());
    rng.shuffle(next);
    for (Vertex v : next) {
        if (seen.count(v)) continue;
        seen.insert(v);
        path.push_back(v);
        if (backtrack_walk(grid, rng, path, seen)) return true;
        path.pop_back();
        seen.erase(v);
    }
    return false;
}

}  // namespace

Puzzle gen_random_triangles(int rows, int cols, std::uint64_t seed, const RandomTrianglesOptions& opts)
{
    check_dims(rows, cols);
    const int max_constrained = rows * cols / 2;
    if (max_constrained < 1)
        throw InvalidPuzzle("random triangle placement needs at least 2 squares, got " +
                            std::to_string(rows) + "x" + std::to_string(cols));

    Rng goal_rng = Rng::stream(seed, "goal");
    Rng count_rng = Rng::stream(seed, "count");
    Rng square_rng = Rng::stream(seed, "squares");
    Rng triangle_rng = Rng::stream(seed, "triangles");

    SearchConfig cfg;
    cfg.predicate = std::make_shared<const PredicateProgram>(baseline_predicate());
    cfg.mode = SearchMode::prune;
    cfg.expansion_limit = opts.solve_expansion_cap;

    const Vertex start{0, 0};
    const auto squares = all_squares(rows, cols);
    for (std::uint32_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
        const Vertex goal = pick_goal(goal_rng, rows, cols, start);
        const auto k = static_cast<std::size_t>(count_rng.uniform(1, max_constrained));
        std::vector<Constraint> constraints;
        for (Square s : square_rng.sample(squares, k))
            constraints.push_back({s, static_cast<int>(triangle_rng.uniform(1, 3))});
        Puzzle candidate(rows, cols, start, goal, std::move(constraints));
        if (solve(candidate, cfg).termination == Termination::solved) return candidate;
    }
    throw GenerationError("no solvable " + std::to_string(rows) + "x" + std::to_string(cols) +
                          " puzzle after " + std::to_string(opts.max_attempts) + " attempts");
}

Path random_simple_path(int rows, int cols, Vertex start, Vertex goal, std::uint64_t seed)
{
    const Puzzle grid(rows, cols, start, goal, {});
    Rng rng = Rng::stream(seed, "walk");

    constexpr int kRestarts = 100'000;
    for (int attempt = 0; attempt < kRestarts; ++attempt) {
        std::vector<Vertex> path{start};
        std::set<Vertex> seen{start};
        for (;;) {
            if (path.back() == goal) return Path{std::move(path)};
            std::vector<Vertex> options;
            for (Vertex v : grid.neighbors(path.back()))
                if (!seen.count(v)) options.push_back(v);
            if (options.empty()) break;
            const Vertex v =
                options[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(options.size()) - 1))];
            seen.insert(v);
            path.push_back(v);
        }
    }
    // Walks keep getting stuck; fall back to randomized backtracking.
    std::vector<Vertex> path{start};
    std::set<Vertex> seen{start};
    backtrack_walk(grid, rng, path, seen);
    return Path{std::move(path)};
}

std::vector<Constraint> touched_squares(int rows, int cols, const Path& path)
{
    std::vector<Constraint> out;
    for (Square s : all_squares(rows, cols))
        if (const int shared = shared_edge_count(path, s); shared > 0) out.push_back({s, shared});
    return out;
}

PathPuzzle gen_from_path(int rows, int cols, std::uint64_t seed)
{
    check_dims(rows, cols);
    const Vertex start{0, 0};
    Rng goal_rng = Rng::stream(seed, "goal");
    const Vertex goal = pick_goal(goal_rng, rows, cols, start);
    Path witness = random_simple_path(rows, cols, start, goal, seed);

    const auto touched = touched_squares(rows, cols, witness);

    Rng count_rng = Rng::stream(seed, "count");
    Rng square_rng = Rng::stream(seed, "squares");
    const auto k = static_cast<std::size_t>(count_rng.uniform(1, static_cast<std::int64_t>(touched.size())));
    return PathPuzzle{Puzzle(rows, cols, start, goal, square_rng.sample(touched, k)), std::move(witness)};
}

Puzzle generate(Algorithm algo, int rows, int cols, std::uint64_t seed, const RandomTrianglesOptions& opts)
{
    if (algo == Algorithm::random_triangles) return gen_random_triangles(rows, cols, seed, opts);
    return gen_from_path(rows, cols, seed).puzzle;
}

const std::vector<SizeBucket>& reference_size_mix()
{
    static const std::vector<SizeBucket> mix = {
        {2, 2, 135},   {2, 3, 1321}, {2, 4, 1788}, {3, 3, 1012}, {2, 5, 1977},
        {3, 4, 2112},  {3, 5, 2313}, {4, 4, 1137}, {4, 5, 2123}, {5, 5, 1082},
    };
    return mix;
}

std::vector<SizeBucket> scaled_size_mix(std::size_t total)
{
    const auto& mix = reference_size_mix();
    std::size_t reference_total = 0;
    for (const auto& b : mix) reference_total += b.count;

    std::vector<SizeBucket> out;
    std::vector<std::pair<std::size_t, std::size_t>> remainders;  // (remainder, index)
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < mix.size(); ++i) {
        const std::size_t scaled = mix[i].count * total;
        out.push_back({mix[i].rows, mix[i].cols, scaled / reference_total});
        assigned += scaled / reference_total;
        remainders.emplace_back(scaled % reference_total, i);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < total; ++i, ++assigned) out[remainders[i].second].count += 1;
    return out;
}

std::vector<CorpusEntry> generate_corpus(Algorithm algo, const std::vector<SizeBucket>& buckets,
                                         std::uint64_t seed, const RandomTrianglesOptions& opts)
{
    std::vector<CorpusEntry> out;
    std::set<std::string> seen;
    for (std::size_t b = 0; b < buckets.size(); ++b) {
        const auto& bucket = buckets[b];
        const std::uint64_t bucket_seed = Rng::derive(seed, b);
        std::size_t made = 0;
        const std::size_t budget = 50 * bucket.count + 50;
        for (std::uint64_t draw = 0; made < bucket.count; ++draw) {
            if (draw >= budget)
                throw GenerationError("could not find " + std::to_string(bucket.count) + " distinct " +
                                      std::to_string(bucket.rows) + "x" + std::to_string(bucket.cols) +
                                      " puzzles");
            const bool flip = bucket.rows != bucket.cols && (made % 2 == 1);
            const int rows = flip ? bucket.cols : bucket.rows;
            const int cols = flip ? bucket.rows : bucket.cols;
            const std::uint64_t instance_seed = Rng::derive(bucket_seed, draw);
            Puzzle p = generate(algo, rows, cols, instance_seed, opts);
            if (!seen.insert(serialize_puzzle(p)).second) continue;
            char id[64];
            std::snprintf(id, sizeof id, "%s_%dx%d_%05zu", std::string(to_string(algo)).c_str(),
                          bucket.rows, bucket.cols, made);
            out.push_back(CorpusEntry{id, instance_seed, std::move(p)});
            ++made;
        }
    }
    return out;
}

}  // namespace witness
