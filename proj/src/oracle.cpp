#include "witness/oracle.hpp"

#include <string>

namespace witness {

namespace {

// Incremental DFS over simple start-anchored paths. Plain brute force: the
// only pruning is vertex reuse and the terminal goal.
class Walker {
public:
    Walker(const Puzzle& p, const OracleOptions& opts)
        : p_(p), cap_(opts.node_cap), goal_(p.vertex_index(p.goal())), visited_(p.vertex_count()),
          edges_(p.edge_count())
    {
    }

    void push_start(Vertex v)
    {
        const auto idx = p_.vertex_index(v);
        visited_.set(idx);
        stack_.push_back(idx);
        vertices_.push_back(v);
    }

    void push(const Step& s)
    {
        visited_.set(s.vertex);
        edges_.set(s.edge);
        stack_.push_back(s.vertex);
        edge_stack_.push_back(s.edge);
        vertices_.push_back(p_.vertex_at(s.vertex));
    }

    void pop()
    {
        visited_.reset(stack_.back());
        edges_.reset(edge_stack_.back());
        stack_.pop_back();
        edge_stack_.pop_back();
        vertices_.pop_back();
    }

    void tick()
    {
        if (++nodes_ > cap_)
            throw OracleLimitExceeded("oracle node cap of " + std::to_string(cap_) +
                                      " exceeded on a " + std::to_string(p_.rows()) + "x" +
                                      std::to_string(p_.cols()) + " puzzle");
    }

    // Whether stepping onto the goal via `edge` completes a solution.
    bool finishes(std::uint32_t edge)
    {
        edges_.set(edge);
        bool ok = true;
        for (std::size_t i = 0; ok && i < p_.constraints().size(); ++i)
            ok = edges_.count_common(p_.constraint_mask(i)) ==
                 static_cast<std::size_t>(p_.constraints()[i].triangles);
        edges_.reset(edge);
        return ok;
    }

    std::uint32_t head() const { return stack_.back(); }
    bool visited(std::uint32_t v) const { return visited_.test(v); }
    std::uint32_t goal() const { return goal_; }
    const Puzzle& puzzle() const { return p_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    PathView view() const { return PathView{edges_, vertices_.back(), edge_stack_.size()}; }
    std::uint64_t nodes() const { return nodes_; }

private:
    const Puzzle& p_;
    std::uint64_t cap_;
    std::uint64_t nodes_ = 0;
    std::uint32_t goal_;
    BitSet visited_;
    BitSet edges_;
    std::vector<std::uint32_t> stack_;
    std::vector<std::uint32_t> edge_stack_;
    std::vector<Vertex> vertices_;
};

void collect_solutions(Walker& w, std::vector<Path>& out)
{
    w.tick();
    for (const Step& s : w.puzzle().steps(w.head())) {
        if (w.visited(s.vertex)) continue;
        if (s.vertex == w.goal()) {
            if (w.finishes(s.edge)) {
                Path p{w.vertices()};
                p.vertices.push_back(w.puzzle().goal());
                out.push_back(std::move(p));
            }
            continue;
        }
        w.push(s);
        collect_solutions(w, out);
        w.pop();
    }
}

bool extends_to_solution(Walker& w)
{
    w.tick();
    for (const Step& s : w.puzzle().steps(w.head())) {
        if (w.visited(s.vertex)) continue;
        if (s.vertex == w.goal()) {
            if (w.finishes(s.edge)) return true;
            continue;
        }
        w.push(s);
        const bool found = extends_to_solution(w);
        w.pop();
        if (found) return true;
    }
    return false;
}

// Labels every partial path below the walker's current one. `enter` runs in
// pre-order and returns a token handed back to `leave` with the label.
template <class Enter, class Leave>
bool label_all(Walker& w, Enter& enter, Leave& leave)
{
    w.tick();
    const auto token = enter(w);
    bool completable = false;
    for (const Step& s : w.puzzle().steps(w.head())) {
        if (w.visited(s.vertex)) continue;
        if (s.vertex == w.goal()) {
            completable = completable || w.finishes(s.edge);
            continue;
        }
        w.push(s);
        completable = label_all(w, enter, leave) || completable;
        w.pop();
    }
    leave(w, token, completable);
    return completable;
}

}  // namespace

std::vector<Path> enumerate_solutions(const Puzzle& p, const OracleOptions& opts)
{
    Walker w(p, opts);
    w.push_start(p.start());
    std::vector<Path> out;
    collect_solutions(w, out);
    return out;
}

bool completable(const Puzzle& p, const Path& path, const OracleOptions& opts)
{
    if (!is_simple_path(p, path)) throw InvalidPuzzle("not a simple path: " + to_string(path));
    if (path.vertices.front() != p.start())
        throw InvalidPuzzle("path does not start at " + to_string(p.start()));

    for (std::size_t i = 0; i < path.vertices.size(); ++i)
        if (path.vertices[i] == p.goal()) return i + 1 == path.vertices.size() && is_solution(p, path);

    Walker w(p, opts);
    w.push_start(path.vertices.front());
    for (std::size_t i = 1; i < path.vertices.size(); ++i) {
        const auto from = w.head();
        const auto to = p.vertex_index(path.vertices[i]);
        for (const Step& s : p.steps(from))
            if (s.vertex == to) w.push(s);
    }
    return extends_to_solution(w);
}

std::vector<LabeledExample> labeled_examples(const Puzzle& p, const OracleOptions& opts)
{
    Walker w(p, opts);
    w.push_start(p.start());
    std::vector<LabeledExample> out;
    auto enter = [&](const Walker& walker) {
        out.push_back(LabeledExample{Path{walker.vertices()}, false});
        return out.size() - 1;
    };
    auto leave = [&](const Walker&, std::size_t slot, bool ok) { out[slot].incompletable = !ok; };
    label_all(w, enter, leave);
    return out;
}

std::uint64_t for_each_partial_path(const Puzzle& p, const PartialPathVisitor& visit,
                                    const OracleOptions& opts)
{
    Walker w(p, opts);
    w.push_start(p.start());
    auto enter = [](const Walker&) { return 0; };
    auto leave = [&](const Walker& walker, int, bool ok) {
        visit(std::span<const Vertex>(walker.vertices()), walker.view(), ok);
    };
    label_all(w, enter, leave);
    return w.nodes();
}

}  // namespace witness
