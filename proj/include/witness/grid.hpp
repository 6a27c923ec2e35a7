#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace witness {

/// Raised when a puzzle, path or square violates the grid invariants.
class InvalidPuzzle : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Grid vertex. (0,0) is the bottom-left corner, x grows rightward, y upward.
/// Ordering is lexicographic by (y, x), which is also row-major index order.
struct Vertex {
    int x = 0;
    int y = 0;

    friend bool operator==(const Vertex&, const Vertex&) = default;
    friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b)
    {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }
};

std::string to_string(Vertex v);

/// Undirected grid edge with canonically ordered endpoints (first < second).
class Edge {
public:
    /// Throws InvalidPuzzle unless the endpoints are grid-adjacent.
    Edge(Vertex a, Vertex b);

    Vertex first() const { return first_; }
    Vertex second() const { return second_; }
    bool horizontal() const { return first_.y == second_.y; }

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;

private:
    Vertex first_;
    Vertex second_;
};

std::string to_string(const Edge& e);

/// Unit square identified by its bottom-left corner.
struct Square {
    int cx = 0;
    int cy = 0;

    friend bool operator==(const Square&, const Square&) = default;
    friend std::strong_ordering operator<=>(const Square& a, const Square& b)
    {
        if (auto c = a.cy <=> b.cy; c != 0) return c;
        return a.cx <=> b.cx;
    }
};

/// Edges of a square in the order bottom, top, left, right.
std::array<Edge, 4> square_edges(Square s);

/// Corners of a square: bottom-left, bottom-right, top-left, top-right.
std::array<Vertex, 4> square_corners(Square s);

struct Constraint {
    Square square;
    int triangles = 0;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Fixed-size bit set sized at runtime. Used for vertex and edge sets keyed
/// by the owning puzzle's dense indices.
class BitSet {
public:
    BitSet() = default;
    explicit BitSet(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void clear();

    std::size_t count() const;
    std::size_t count_common(const BitSet& other) const;

    std::span<const std::uint64_t> words() const { return words_; }

    friend bool operator==(const BitSet&, const BitSet&) = default;

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Simple path on the grid, in visiting order.
struct Path {
    std::vector<Vertex> vertices;

    std::size_t edge_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    Vertex head() const { return vertices.back(); }

    friend bool operator==(const Path&, const Path&) = default;
};

std::string to_string(const Path& p);

/// One grid-adjacent neighbour of a vertex, with the dense index of the
/// connecting edge.
struct Step {
    std::uint32_t vertex = 0;
    std::uint32_t edge = 0;
};

/// Validated, immutable triangle puzzle on an m x n grid of squares.
class Puzzle {
public:
    /// Validates every invariant; throws InvalidPuzzle on violation.
    /// Constraints are stored sorted row-major by square.
    Puzzle(int rows, int cols, Vertex start, Vertex goal, std::vector<Constraint> constraints);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Vertex start() const { return start_; }
    Vertex goal() const { return goal_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    bool in_bounds(Vertex v) const { return v.x >= 0 && v.x <= cols_ && v.y >= 0 && v.y <= rows_; }
    bool in_bounds(Square s) const { return s.cx >= 0 && s.cx < cols_ && s.cy >= 0 && s.cy < rows_; }
    bool on_boundary(Vertex v) const;

    std::size_t vertex_count() const { return static_cast<std::size_t>(rows_ + 1) * (cols_ + 1); }
    std::size_t edge_count() const;
    std::size_t square_count() const { return static_cast<std::size_t>(rows_) * cols_; }

    std::uint32_t vertex_index(Vertex v) const;
    Vertex vertex_at(std::uint32_t index) const;
    std::uint32_t edge_index(const Edge& e) const;
    Edge edge_at(std::uint32_t index) const;

    /// Neighbours in the fixed order up, right, down, left.
    std::vector<Vertex> neighbors(Vertex v) const;
    std::span<const Step> steps(std::uint32_t vertex_index) const;

    /// Edge-index mask of the square's four edges.
    const BitSet& square_mask(Square s) const;
    const BitSet& constraint_mask(std::size_t i) const { return constraint_masks_[i]; }

    friend bool operator==(const Puzzle& a, const Puzzle& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.start_ == b.start_ &&
               a.goal_ == b.goal_ && a.constraints_ == b.constraints_;
    }

private:
    int rows_;
    int cols_;
    Vertex start_;
    Vertex goal_;
    std::vector<Constraint> constraints_;

    std::vector<std::array<Step, 4>> steps_;
    std::vector<std::uint8_t> degree_;
    std::vector<BitSet> square_masks_;
    std::vector<BitSet> constraint_masks_;
};

/// Edges between consecutive vertices. Throws InvalidPuzzle if two
/// consecutive vertices are not adjacent.
std::vector<Edge> path_edges(const Path& path);

/// Number of the square's edges traversed by the path.
int shared_edge_count(const Path& path, Square s);

/// True iff the path is nonempty, in bounds, grid-connected and never
/// repeats a vertex.
bool is_simple_path(const Puzzle& p, const Path& path);

bool is_solution(const Puzzle& p, const Path& path);

}  // namespace witness
