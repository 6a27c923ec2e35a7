#include "witness/grid.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <set>
#include <sstream>

namespace witness {

std::string to_string(Vertex v)
{
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

Edge::Edge(Vertex a, Vertex b)
{
    if (std::abs(a.x - b.x) + std::abs(a.y - b.y) != 1)
        throw InvalidPuzzle("edge endpoints " + to_string(a) + " and " + to_string(b) +
                            " are not grid-adjacent");
    first_ = std::min(a, b);
    second_ = std::max(a, b);
}

std::string to_string(const Edge& e)
{
    return to_string(e.first()) + "-" + to_string(e.second());
}

std::array<Edge, 4> square_edges(Square s)
{
    const Vertex bl{s.cx, s.cy};
    const Vertex br{s.cx + 1, s.cy};
    const Vertex tl{s.cx, s.cy + 1};
    const Vertex tr{s.cx + 1, s.cy + 1};
    return {Edge{bl, br}, Edge{tl, tr}, Edge{bl, tl}, Edge{br, tr}};
}

std::array<Vertex, 4> square_corners(Square s)
{
    return {Vertex{s.cx, s.cy}, Vertex{s.cx + 1, s.cy}, Vertex{s.cx, s.cy + 1},
            Vertex{s.cx + 1, s.cy + 1}};
}

void BitSet::clear()
{
    std::fill(words_.begin(), words_.end(), 0);
}

std::size_t BitSet::count() const
{
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::size_t BitSet::count_common(const BitSet& other) const
{
    const std::size_t len = std::min(words_.size(), other.words_.size());
    std::size_t n = 0;
    for (std::size_t i = 0; i < len; ++i)
        n += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    return n;
}

std::string to_string(const Path& p)
{
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        if (i) out << ",";
        out << to_string(p.vertices[i]);
    }
    out << "]";
    return out.str();
}

Puzzle::Puzzle(int rows, int cols, Vertex start, Vertex goal, std::vector<Constraint> constraints)
    : rows_(rows), cols_(cols), start_(start), goal_(goal), constraints_(std::move(constraints))
{
    if (rows < 1 || cols < 1)
        throw InvalidPuzzle("grid dimensions must be positive, got " + std::to_string(rows) +
                            "x" + std::to_string(cols));
    // Keeps vertex and edge indices within 32 bits.
    if (static_cast<long long>(rows + 1) * (cols + 1) > (1LL << 30))
        throw InvalidPuzzle("grid too large");
    if (!in_bounds(start)) throw InvalidPuzzle("start " + to_string(start) + " out of bounds");
    if (!in_bounds(goal)) throw InvalidPuzzle("goal " + to_string(goal) + " out of bounds");
    if (start == goal) throw InvalidPuzzle("start and goal coincide at " + to_string(start));
    if (!on_boundary(goal))
        throw InvalidPuzzle("goal " + to_string(goal) + " is not on the grid boundary");

    std::set<Square> seen;
    for (const auto& c : constraints_) {
        if (!in_bounds(c.square))
            throw InvalidPuzzle("constraint square (" + std::to_string(c.square.cx) + "," +
                                std::to_string(c.square.cy) + ") out of bounds");
        if (c.triangles < 1 || c.triangles > 3)
            throw InvalidPuzzle("triangle count must be 1, 2 or 3, got " +
                                std::to_string(c.triangles));
        if (!seen.insert(c.square).second)
            throw InvalidPuzzle("duplicate constraint on square (" + std::to_string(c.square.cx) +
                                "," + std::to_string(c.square.cy) + ")");
    }
    std::sort(constraints_.begin(), constraints_.end(),
              [](const Constraint& a, const Constraint& b) { return a.square < b.square; });

    const auto nv = vertex_count();
    steps_.resize(nv);
    degree_.resize(nv);
    for (std::uint32_t i = 0; i < nv; ++i) {
        const Vertex v = vertex_at(i);
        std::uint8_t d = 0;
        for (Vertex w : {Vertex{v.x, v.y + 1}, Vertex{v.x + 1, v.y}, Vertex{v.x, v.y - 1},
                         Vertex{v.x - 1, v.y}}) {
            if (!in_bounds(w)) continue;
            steps_[i][d++] = Step{vertex_index(w), edge_index(Edge{v, w})};
        }
        degree_[i] = d;
    }

    square_masks_.reserve(square_count());
    for (int cy = 0; cy < rows_; ++cy)
        for (int cx = 0; cx < cols_; ++cx) {
            BitSet mask(edge_count());
            for (const auto& e : square_edges(Square{cx, cy})) mask.set(edge_index(e));
            square_masks_.push_back(std::move(mask));
        }
    for (const auto& c : constraints_) constraint_masks_.push_back(square_mask(c.square));
}

bool Puzzle::on_boundary(Vertex v) const
{
    return in_bounds(v) && (v.x == 0 || v.y == 0 || v.x == cols_ || v.y == rows_);
}

std::size_t Puzzle::edge_count() const
{
    return static_cast<std::size_t>(rows_ + 1) * cols_ + static_cast<std::size_t>(rows_) * (cols_ + 1);
}

std::uint32_t Puzzle::vertex_index(Vertex v) const
{
    if (!in_bounds(v)) throw InvalidPuzzle("vertex " + to_string(v) + " out of bounds");
    return static_cast<std::uint32_t>(v.y * (cols_ + 1) + v.x);
}

Vertex Puzzle::vertex_at(std::uint32_t index) const
{
    const auto width = static_cast<std::uint32_t>(cols_ + 1);
    return Vertex{static_cast<int>(index % width), static_cast<int>(index / width)};
}

// Horizontal edges first, row by row, then vertical edges row by row.
std::uint32_t Puzzle::edge_index(const Edge& e) const
{
    const Vertex a = e.first();
    if (!in_bounds(a) || !in_bounds(e.second()))
        throw InvalidPuzzle("edge " + to_string(e) + " out of bounds");
    if (e.horizontal()) return static_cast<std::uint32_t>(a.y * cols_ + a.x);
    const auto horizontal = static_cast<std::uint32_t>((rows_ + 1) * cols_);
    return horizontal + static_cast<std::uint32_t>(a.y * (cols_ + 1) + a.x);
}

Edge Puzzle::edge_at(std::uint32_t index) const
{
    const auto horizontal = static_cast<std::uint32_t>((rows_ + 1) * cols_);
    if (index < horizontal) {
        const int x = static_cast<int>(index % cols_);
        const int y = static_cast<int>(index / cols_);
        return Edge{Vertex{x, y}, Vertex{x + 1, y}};
    }
    index -= horizontal;
    const int x = static_cast<int>(index % (cols_ + 1));
    const int y = static_cast<int>(index / (cols_ + 1));
    return Edge{Vertex{x, y}, Vertex{x, y + 1}};
}

std::vector<Vertex> Puzzle::neighbors(Vertex v) const
{
    std::vector<Vertex> out;
    for (const auto& s : steps(vertex_index(v))) out.push_back(vertex_at(s.vertex));
    return out;
}

std::span<const Step> Puzzle::steps(std::uint32_t vertex_index) const
{
    return {steps_[vertex_index].data(), degree_[vertex_index]};
}

const BitSet& Puzzle::square_mask(Square s) const
{
    if (!in_bounds(s)) throw InvalidPuzzle("square out of bounds");
    return square_masks_[static_cast<std::size_t>(s.cy) * cols_ + s.cx];
}

std::vector<Edge> path_edges(const Path& path)
{
    std::vector<Edge> out;
    for (std::size_t i = 1; i < path.vertices.size(); ++i)
        out.emplace_back(path.vertices[i - 1], path.vertices[i]);
    return out;
}

int shared_edge_count(const Path& path, Square s)
{
    const auto sides = square_edges(s);
    int n = 0;
    for (const auto& e : path_edges(path))
        n += static_cast<int>(std::count(sides.begin(), sides.end(), e));
    return n;
}

bool is_simple_path(const Puzzle& p, const Path& path)
{
    if (path.vertices.empty()) return false;
    BitSet seen(p.vertex_count());
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
        const Vertex v = path.vertices[i];
        if (!p.in_bounds(v)) return false;
        const auto idx = p.vertex_index(v);
        if (seen.test(idx)) return false;
        seen.set(idx);
        if (i > 0) {
            const Vertex u = path.vertices[i - 1];
            if (std::abs(u.x - v.x) + std::abs(u.y - v.y) != 1) return false;
        }
    }
    return true;
}

bool is_solution(const Puzzle& p, const Path& path)
{
    if (!is_simple_path(p, path)) return false;
    if (path.vertices.front() != p.start() || path.vertices.back() != p.goal()) return false;
    BitSet edges(p.edge_count());
    for (const auto& e : path_edges(path)) edges.set(p.edge_index(e));
    for (std::size_t i = 0; i < p.constraints().size(); ++i)
        if (edges.count_common(p.constraint_mask(i)) !=
            static_cast<std::size_t>(p.constraints()[i].triangles))
            return false;
    return true;
}

}  // namespace witness
