#pragma once

#include <functional>
#include <vector>

#include "witness/grid.hpp"

namespace witness::testing {

// One row of two squares: the left square holds one triangle, the right two.
inline Puzzle p1()
{
    return Puzzle(1, 2, {0, 0}, {2, 1}, {{{0, 0}, 1}, {{1, 0}, 2}});
}

inline Path path(std::initializer_list<Vertex> vs)
{
    return Path{std::vector<Vertex>(vs)};
}

// Test-only brute force, deliberately naive: vectors and linear scans, no
// bit sets, no shared code with the library's oracle.
inline void naive_walk(const Puzzle& p, std::vector<Vertex>& cur,
                       const std::function<void(const std::vector<Vertex>&)>& on_partial,
                       const std::function<void(const std::vector<Vertex>&)>& on_goal)
{
    on_partial(cur);
    const Vertex h = cur.back();
    const Vertex candidates[4] = {{h.x, h.y + 1}, {h.x + 1, h.y}, {h.x, h.y - 1}, {h.x - 1, h.y}};
    for (Vertex v : candidates) {
        if (!p.in_bounds(v)) continue;
        bool used = false;
        for (Vertex u : cur) used = used || u == v;
        if (used) continue;
        cur.push_back(v);
        if (v == p.goal())
            on_goal(cur);
        else
            naive_walk(p, cur, on_partial, on_goal);
        cur.pop_back();
    }
}

inline std::vector<Path> naive_solutions(const Puzzle& p)
{
    std::vector<Path> out;
    std::vector<Vertex> cur{p.start()};
    naive_walk(
        p, cur, [](const auto&) {},
        [&](const std::vector<Vertex>& vs) {
            Path candidate{vs};
            bool ok = true;
            for (const auto& c : p.constraints()) ok = ok && shared_edge_count(candidate, c.square) == c.triangles;
            if (ok) out.push_back(candidate);
        });
    return out;
}

inline std::vector<Path> naive_partial_paths(const Puzzle& p)
{
    std::vector<Path> out;
    std::vector<Vertex> cur{p.start()};
    naive_walk(p, cur, [&](const std::vector<Vertex>& vs) { out.push_back(Path{vs}); }, [](const auto&) {});
    return out;
}

inline bool is_prefix(const Path& prefix, const Path& full)
{
    if (prefix.vertices.size() > full.vertices.size()) return false;
    for (std::size_t i = 0; i < prefix.vertices.size(); ++i)
        if (prefix.vertices[i] != full.vertices[i]) return false;
    return true;
}

// Small puzzles with random goal and random constraints; not necessarily
// solvable. Uses its own LCG so tests do not depend on the library RNG.
class TinyRandom {
public:
    explicit TinyRandom(std::uint64_t seed) : state_(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}
    int below(int n)
    {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<int>((state_ >> 33) % static_cast<std::uint64_t>(n));
    }

private:
    std::uint64_t state_;
};

inline Puzzle random_small_puzzle(TinyRandom& rng, int max_rows, int max_cols)
{
    const int rows = 1 + rng.below(max_rows);
    const int cols = 1 + rng.below(max_cols);
    std::vector<Vertex> goals;
    for (int y = 0; y <= rows; ++y)
        for (int x = 0; x <= cols; ++x)
            if ((x == 0 || y == 0 || x == cols || y == rows) && !(x == 0 && y == 0)) goals.push_back({x, y});
    const Vertex goal = goals[static_cast<std::size_t>(rng.below(static_cast<int>(goals.size())))];
    std::vector<Constraint> cs;
    for (int cy = 0; cy < rows; ++cy)
        for (int cx = 0; cx < cols; ++cx)
            if (rng.below(3) == 0) cs.push_back({{cx, cy}, 1 + rng.below(3)});
    return Puzzle(rows, cols, {0, 0}, goal, cs);
}

}  // namespace witness::testing
