#include "witness/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <queue>
#include <stdexcept>

namespace witness {

std::string_view to_string(SearchMode m)
{
    switch (m) {
    case SearchMode::off: return "off";
    case SearchMode::sort: return "sort";
    case SearchMode::prune: return "prune";
    }
    return "?";
}

std::string_view to_string(Termination t)
{
    switch (t) {
    case Termination::solved: return "solved";
    case Termination::exhausted: return "exhausted";
    case Termination::expansion_limit: return "expansion_limit";
    case Termination::time_limit: return "time_limit";
    case Termination::memory_limit: return "memory_limit";
    }
    return "?";
}

SearchMode parse_search_mode(std::string_view s)
{
    for (auto m : {SearchMode::off, SearchMode::sort, SearchMode::prune})
        if (to_string(m) == s) return m;
    throw std::invalid_argument("unknown search mode '" + std::string(s) + "'");
}

Termination parse_termination(std::string_view s)
{
    for (auto t : {Termination::solved, Termination::exhausted, Termination::expansion_limit,
                   Termination::time_limit, Termination::memory_limit})
        if (to_string(t) == s) return t;
    throw std::invalid_argument("unknown termination '" + std::string(s) + "'");
}

std::string_view to_string(TraceEvent e)
{
    switch (e) {
    case TraceEvent::expanded: return "expanded";
    case TraceEvent::pushed: return "pushed";
    case TraceEvent::pruned: return "pruned";
    case TraceEvent::goal_rejected: return "goal_rejected";
    case TraceEvent::solved: return "solved";
    }
    return "?";
}

int manhattan(Vertex v, Vertex goal)
{
    return std::abs(v.x - goal.x) + std::abs(v.y - goal.y);
}

namespace {

// Open-list entries are packed into one word so the heap orders them with a
// single integer compare:
//   bit 63      predicate flag
//   bits 47-62  g + h
//   bits 31-46  h
//   bits 0-30   node index (allocation order, hence FIFO among ties)
constexpr std::uint64_t kNodeBits = 31;
constexpr std::uint64_t kMaxNodes = (std::uint64_t{1} << kNodeBits) - 1;
constexpr std::uint64_t kMaxCost = (1U << 16) - 1;

std::uint64_t pack(bool flag, std::uint64_t f, std::uint64_t h, std::uint64_t node)
{
    return (std::uint64_t{flag} << 63) | (f << 47) | (h << 31) | node;
}

struct Node {
    std::uint32_t parent;
    std::uint32_t vertex;
};

constexpr std::uint32_t kNoParent = 0xFFFFFFFFU;

}  // namespace

SearchResult solve(const Puzzle& p, const SearchConfig& cfg)
{
    using clock = std::chrono::steady_clock;

    if (cfg.mode != SearchMode::off && !cfg.predicate)
        throw std::invalid_argument("search mode '" + std::string(to_string(cfg.mode)) +
                                    "' requires a predicate");
    if (cfg.mode == SearchMode::prune && !cfg.predicate->trusted() && !cfg.unsafe_prune)
        throw std::invalid_argument("predicate '" + cfg.predicate->name() +
                                    "' is not known to be free of false positives; "
                                    "prune mode needs the unsafe-prune override");
    if (p.vertex_count() + static_cast<std::size_t>(p.rows() + p.cols()) > kMaxCost)
        throw std::invalid_argument("grid too large for the search engine");

    const auto started = clock::now();
    SearchResult result;
    result.complete = !(cfg.mode == SearchMode::prune && !cfg.predicate->trusted());

    const PredicateProgram* predicate = cfg.mode == SearchMode::off ? nullptr : cfg.predicate.get();
    const bool prune = cfg.mode == SearchMode::prune;
    const Vertex goal = p.goal();
    const std::uint32_t goal_index = p.vertex_index(goal);

    std::vector<Node> nodes;
    std::priority_queue<std::uint64_t, std::vector<std::uint64_t>, std::greater<>> open;

    BitSet visited(p.vertex_count());
    BitSet edges(p.edge_count());
    std::vector<std::uint32_t> trail;

    const auto finish = [&](Termination t) {
        result.termination = t;
        result.wall_time_s = std::chrono::duration<double>(clock::now() - started).count();
        return result;
    };

    auto edge_between = [&](std::uint32_t from, std::uint32_t to) {
        for (const Step& s : p.steps(from))
            if (s.vertex == to) return s.edge;
        throw std::logic_error("non-adjacent vertices in search tree");
    };

    const std::uint32_t start = p.vertex_index(p.start());
    nodes.push_back(Node{kNoParent, start});
    const auto h0 = static_cast<std::uint64_t>(manhattan(p.start(), goal));
    open.push(pack(false, h0, h0, 0));
    result.generated = 1;
    result.peak_open = 1;

    while (!open.empty()) {
        if (cfg.expansion_limit && result.expansions >= *cfg.expansion_limit)
            return finish(Termination::expansion_limit);
        if (cfg.time_limit_s && (result.expansions & 1023U) == 0 &&
            std::chrono::duration<double>(clock::now() - started).count() > *cfg.time_limit_s)
            return finish(Termination::time_limit);

        const std::uint64_t key = open.top();
        open.pop();
        ++result.expansions;

        const auto node_index = static_cast<std::uint32_t>(key & kMaxNodes);
        const std::uint64_t h = (key >> 31) & kMaxCost;
        const std::uint64_t g = ((key >> 47) & kMaxCost) - h;

        // Rebuild the path's vertex and edge sets from the parent chain.
        visited.clear();
        edges.clear();
        trail.clear();
        for (std::uint32_t n = node_index; n != kNoParent; n = nodes[n].parent) {
            trail.push_back(nodes[n].vertex);
            visited.set(nodes[n].vertex);
            if (nodes[n].parent != kNoParent) edges.set(edge_between(nodes[nodes[n].parent].vertex, nodes[n].vertex));
        }
        const std::uint32_t head = trail.front();

        auto trace = [&](TraceEvent event, std::optional<std::uint32_t> extra, bool flag) {
            Path path;
            for (auto it = trail.rbegin(); it != trail.rend(); ++it) path.vertices.push_back(p.vertex_at(*it));
            if (extra) path.vertices.push_back(p.vertex_at(*extra));
            cfg.trace(event, path, flag);
        };
        if (cfg.trace) trace(TraceEvent::expanded, std::nullopt, (key >> 63) != 0);

        for (const Step& s : p.steps(head)) {
            if (visited.test(s.vertex)) continue;
            edges.set(s.edge);
            if (s.vertex == goal_index) {
                bool ok = true;
                for (std::size_t i = 0; ok && i < p.constraints().size(); ++i)
                    ok = edges.count_common(p.constraint_mask(i)) ==
                         static_cast<std::size_t>(p.constraints()[i].triangles);
                if (ok) {
                    Path path;
                    path.vertices.reserve(trail.size() + 1);
                    for (auto it = trail.rbegin(); it != trail.rend(); ++it)
                        path.vertices.push_back(p.vertex_at(*it));
                    path.vertices.push_back(goal);
                    result.solution = std::move(path);
                    if (cfg.trace) cfg.trace(TraceEvent::solved, *result.solution, false);
                    return finish(Termination::solved);
                }
                edges.reset(s.edge);
                if (cfg.trace) trace(TraceEvent::goal_rejected, s.vertex, false);
                continue;
            }

            const Vertex next = p.vertex_at(s.vertex);
            const bool flag =
                predicate && eval_predicate(*predicate, PathView{edges, next, g + 1}, p);
            edges.reset(s.edge);
            if (flag && prune) {
                if (cfg.trace) trace(TraceEvent::pruned, s.vertex, true);
                continue;
            }
            if (cfg.trace) trace(TraceEvent::pushed, s.vertex, flag);

            if (nodes.size() >= kMaxNodes) return finish(Termination::memory_limit);
            const auto child = static_cast<std::uint32_t>(nodes.size());
            nodes.push_back(Node{node_index, s.vertex});
            const auto hn = static_cast<std::uint64_t>(manhattan(next, goal));
            open.push(pack(flag, g + 1 + hn, hn, child));
            ++result.generated;
            result.peak_open = std::max<std::uint64_t>(result.peak_open, open.size());
            if (cfg.memory_limit && open.size() > *cfg.memory_limit)
                return finish(Termination::memory_limit);
        }
    }
    return finish(Termination::exhausted);
}

VerificationReport verify_no_false_positives(const PredicateProgram& prog,
                                             const std::vector<Puzzle>& puzzles,
                                             const OracleOptions& opts, std::size_t max_reported)
{
    VerificationReport report;
    for (std::size_t i = 0; i < puzzles.size(); ++i) {
        const Puzzle& p = puzzles[i];
        for_each_partial_path(
            p,
            [&](std::span<const Vertex> vertices, const PathView& view, bool is_completable) {
                ++report.checked;
                if (!is_completable || !eval_predicate(prog, view, p)) return;
                ++report.false_positive_count;
                if (report.false_positives.size() < max_reported)
                    report.false_positives.push_back(
                        FalsePositive{i, Path{{vertices.begin(), vertices.end()}}});
            },
            opts);
    }
    return report;
}

}  // namespace witness
