#ifndef CIRCMIX_FOLD_HPP
#define CIRCMIX_FOLD_HPP

#include "reconfig.hpp"

#include <set>

namespace circmix {

/// One identification of two vertices at distance 2. `merged` disappears,
/// `kept` survives; `relabel` maps every pre-fold vertex to its post-fold index.
struct FoldStep {
    Vertex kept = -1;
    Vertex merged = -1;
    std::vector<Vertex> relabel;
};

/// Identifies `merged` into `kept`. Vertices above `merged` shift down by one.
inline std::pair<Graph, FoldStep> fold_into(const Graph &g, Vertex kept, Vertex merged)
{
    if (kept < 0 || merged < 0 || kept >= g.order() || merged >= g.order())
        throw InvalidInput("fold: vertex out of range");
    auto d = distance(g, kept, merged);
    if (!d || *d != 2)
        throw InvalidInput("fold: vertices " + std::to_string(kept) + " and " + std::to_string(merged) +
                           " are not at distance 2");
    FoldStep step;
    step.kept = kept;
    step.merged = merged;
    step.relabel.resize(static_cast<std::size_t>(g.order()));
    for (Vertex v = 0; v < g.order(); ++v)
        step.relabel[v] = v < merged ? v : v - 1;
    step.relabel[merged] = step.relabel[kept];
    std::vector<Edge> es;
    for (auto [u, v] : g.edges())
        es.emplace_back(step.relabel[u], step.relabel[v]);
    return {Graph(g.order() - 1, es), step};
}

/// Elementary fold of x and y (distance 2), keeping min(x, y).
inline std::pair<Graph, FoldStep> elementary_fold(const Graph &g, Vertex x, Vertex y)
{
    return fold_into(g, std::min(x, y), std::max(x, y));
}

/// A composition of elementary folds applied to `source`.
struct FoldTrace {
    Graph source;
    std::vector<FoldStep> steps;
    Graph final;
    std::vector<Vertex> composite; // source vertex -> final vertex
    std::vector<Vertex> origin;    // final vertex -> the source vertex it descends from (via kept)

    explicit FoldTrace(Graph g = Graph()) : source(g), final(std::move(g))
    {
        for (Vertex v = 0; v < source.order(); ++v) {
            composite.push_back(v);
            origin.push_back(v);
        }
    }

    /// Applies fold_into on the current final graph (current indices).
    void apply(Vertex kept, Vertex merged)
    {
        auto [next, step] = fold_into(final, kept, merged);
        for (auto &c : composite)
            c = step.relabel[c];
        std::vector<Vertex> next_origin(static_cast<std::size_t>(next.order()));
        for (Vertex v = 0; v < final.order(); ++v)
            if (v != merged)
                next_origin[step.relabel[v]] = origin[v];
        origin = std::move(next_origin);
        final = std::move(next);
        steps.push_back(std::move(step));
    }

    /// Current index of a surviving source vertex, or -1 once merged away.
    Vertex current_index(Vertex source_vertex) const
    {
        for (Vertex v = 0; v < final.order(); ++v)
            if (origin[v] == source_vertex)
                return v;
        return -1;
    }
};

/// Replays the steps of `trace` from its source and checks the recorded final
/// graph and composite map (which must be a homomorphism onto the final graph).
inline bool replay_fold_trace(const FoldTrace &trace)
{
    try {
        FoldTrace again(trace.source);
        for (const auto &s : trace.steps)
            again.apply(s.kept, s.merged);
        if (!(again.final == trace.final) || again.composite != trace.composite)
            return false;
        std::set<Edge> image;
        for (auto [u, v] : trace.source.edges()) {
            Vertex a = trace.composite[u], b = trace.composite[v];
            if (!trace.final.has_edge(a, b))
                return false;
            image.emplace(std::min(a, b), std::max(a, b));
        }
        return static_cast<int>(image.size()) == trace.final.size();
    } catch (const InvalidInput &) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Dominated-vertex reduction

/// Repeatedly folds a vertex u into v whenever N(u) is a non-empty subset of
/// N(v), lowest (u, v) first. Preserves (p, q)-mixing for 2 < p/q < 4.
inline std::pair<Graph, FoldTrace> reduce_dominated(const Graph &g, const CircularParams &params)
{
    if (!params.in_wind_range())
        throw InvalidInput("reduce_dominated requires 2 < p/q < 4, got " + to_string(params));
    FoldTrace trace(g);
    while (true) {
        const Graph &cur = trace.final;
        std::optional<std::pair<Vertex, Vertex>> pick;
        for (Vertex u = 0; u < cur.order() && !pick; ++u) {
            const auto &nu = cur.neighbours(u);
            if (nu.empty())
                continue;
            for (Vertex v = 0; v < cur.order(); ++v) {
                if (v == u)
                    continue;
                const auto &nv = cur.neighbours(v);
                if (std::includes(nv.begin(), nv.end(), nu.begin(), nu.end())) {
                    pick = std::make_pair(u, v);
                    break;
                }
            }
        }
        if (!pick)
            break;
        trace.apply(pick->second, pick->first);
    }
    return {trace.final, trace};
}

// ---------------------------------------------------------------------------
// Fold search

struct FoldSearchOptions {
    long long memo_budget = 1'000'000;
    int max_order = 24; // canonical key guard for this search
};

namespace detail {

class FoldSearch {
public:
    FoldSearch(int target, FoldSearchOptions options) : target_(target), options_(options) {}

    /// Folds (current indices) leading from g to the target, or nullopt.
    std::optional<std::vector<std::pair<Vertex, Vertex>>> run(const Graph &g)
    {
        std::vector<std::pair<Vertex, Vertex>> path;
        if (dfs(g, path))
            return path;
        return std::nullopt;
    }

private:
    bool dfs(const Graph &g, std::vector<std::pair<Vertex, Vertex>> &path)
    {
        if (is_cycle_graph(g, target_))
            return true;
        if (g.order() <= target_)
            return false;
        if (longest_cycle_length(g) < target_)
            return false;
        for (Vertex x = 0; x < g.order(); ++x) {
            auto dist = bfs_distances(g, x);
            for (Vertex y = x + 1; y < g.order(); ++y) {
                if (dist[y] != 2)
                    continue;
                Graph next = elementary_fold(g, x, y).first;
                std::string key = canonical_key(next, options_.max_order);
                if (failed_.count(key))
                    continue;
                path.emplace_back(x, y);
                if (dfs(next, path))
                    return true;
                path.pop_back();
                failed_.insert(std::move(key));
                if (static_cast<long long>(failed_.size()) > options_.memo_budget)
                    throw BudgetExceeded(options_.memo_budget);
            }
        }
        return false;
    }

    int target_;
    FoldSearchOptions options_;
    std::unordered_set<std::string> failed_;
};

} // namespace detail

/// Searches the fold closure of a connected graph for the cycle C_L.
/// Every successful trace has exactly n - L steps.
inline std::optional<FoldTrace> folds_to_cycle(const Graph &g, int length, FoldSearchOptions options = {})
{
    if (length < 3)
        throw InvalidInput("target cycle length must be at least 3");
    if (!is_connected(g))
        throw InvalidInput("folds_to_cycle requires a connected graph");
    auto folds = detail::FoldSearch(length, options).run(g);
    if (!folds)
        return std::nullopt;
    FoldTrace trace(g);
    for (auto [x, y] : *folds)
        trace.apply(std::min(x, y), std::max(x, y));
    return trace;
}

struct FoldMixingResult {
    MixingVerdict verdict = MixingVerdict::mixing;
    std::optional<FoldTrace> trace;    // folding of `component` onto C_{4k+2}
    std::vector<Vertex> component;      // source vertices of the folding component
};

/// C_{2k+1}-mixing of a bipartite graph: not mixing iff some component folds
/// to C_{4k+2}.
inline FoldMixingResult odd_mixing_by_fold(const Graph &g, int k, FoldSearchOptions options = {})
{
    if (k < 1)
        throw InvalidInput("k must be positive");
    if (!is_bipartite(g))
        throw InvalidInput("fold-based odd-cycle mixing is stated for bipartite graphs");
    int ncomp = 0;
    auto comp = components(g, &ncomp);
    FoldMixingResult r;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<Vertex> members;
        for (Vertex v = 0; v < g.order(); ++v)
            if (comp[v] == c)
                members.push_back(v);
        Graph sub = induced_subgraph(g, members);
        auto trace = folds_to_cycle(sub, 4 * k + 2, options);
        if (trace) {
            r.verdict = MixingVerdict::not_mixing;
            r.trace = std::move(trace);
            r.component = std::move(members);
            return r;
        }
    }
    return r;
}

struct ThresholdResult {
    int k = 1;                 // smallest k found C_{2k+1}-mixing (or the bound k0)
    int longest_cycle = 0;     // -1 when the cap prevented computing it
    int searched_from = 1, searched_to = 0; // k values decided by fold search
    bool bound_only = false;   // true when the search fell back to the trivial bound
};

/// Smallest k such that a connected bipartite graph is C_{2k+1}-mixing.
/// Values of k with 4k + 2 above the longest cycle need no search.
inline ThresholdResult circular_mixing_threshold(const Graph &g, int longest_cycle_cap = 20,
                                                 FoldSearchOptions options = {})
{
    if (!is_bipartite(g))
        throw InvalidInput("circular mixing threshold requires a bipartite graph");
    if (!is_connected(g))
        throw InvalidInput("circular mixing threshold requires a connected graph");
    ThresholdResult r;
    if (g.order() > longest_cycle_cap) {
        r.longest_cycle = -1;
        r.bound_only = true;
        r.k = 1;
        while (4 * r.k + 2 <= g.order())
            ++r.k;
        return r;
    }
    r.longest_cycle = longest_cycle_length(g);
    for (int k = 1;; ++k) {
        if (4 * k + 2 > r.longest_cycle) {
            r.k = k;
            return r;
        }
        r.searched_to = k;
        if (odd_mixing_by_fold(g, k, options).verdict == MixingVerdict::mixing) {
            r.k = k;
            return r;
        }
    }
}

// ---------------------------------------------------------------------------
// Retractions

struct RetractionMap {
    std::vector<Vertex> image;      // path or cycle, in order
    std::vector<Vertex> assignment; // vertex -> image vertex
};

/// Identity on the image, edge-preserving, idempotent.
inline bool is_retraction(const Graph &g, const RetractionMap &r)
{
    if (static_cast<int>(r.assignment.size()) != g.order())
        return false;
    std::vector<char> in_image(static_cast<std::size_t>(g.order()), 0);
    for (Vertex v : r.image)
        in_image[v] = 1;
    for (Vertex v : r.image)
        if (r.assignment[v] != v)
            return false;
    for (Vertex v = 0; v < g.order(); ++v)
        if (!in_image[r.assignment[v]] || r.assignment[r.assignment[v]] != r.assignment[v])
            return false;
    for (auto [u, v] : g.edges())
        if (!g.has_edge(r.assignment[u], r.assignment[v]))
            return false;
    return true;
}

/// Retraction of a connected bipartite graph onto a shortest x-y path: a vertex
/// at distance d from x goes to the d-th path vertex, alternating between the
/// last two path vertices beyond the far end.
inline RetractionMap retract_to_path(const Graph &g, Vertex x, Vertex y)
{
    if (!is_bipartite(g))
        throw InvalidInput("retract_to_path requires a bipartite graph");
    if (!is_connected(g))
        throw InvalidInput("retract_to_path requires a connected graph");
    if (x == y)
        throw InvalidInput("retract_to_path needs distinct endpoints");
    RetractionMap r;
    r.image = shortest_path(g, x, y);
    const int len = static_cast<int>(r.image.size()) - 1;
    auto dist = bfs_distances(g, x);
    r.assignment.resize(static_cast<std::size_t>(g.order()));
    for (Vertex v = 0; v < g.order(); ++v) {
        int d = dist[v];
        int idx = d <= len ? d : ((d - len) % 2 == 0 ? len : len - 1);
        r.assignment[v] = r.image[static_cast<std::size_t>(idx)];
    }
    return r;
}

/// Retraction of a connected bipartite graph onto one of its shortest cycles.
inline RetractionMap retract_to_shortest_cycle(const Graph &g)
{
    if (!is_bipartite(g) || !is_connected(g))
        throw InvalidInput("retract_to_shortest_cycle requires a connected bipartite graph");
    std::optional<Cycle> shortest;
    for_each_cycle(g, g.order(), [&](const Cycle &c) {
        if (!shortest || c.length() < shortest->length())
            shortest = c;
        return shortest->length() > 4;
    });
    if (!shortest)
        throw InvalidInput("retract_to_shortest_cycle: graph is acyclic");
    const auto &cyc = shortest->vertices();
    Vertex a = cyc.front(), b = cyc.back();
    std::vector<Edge> es;
    for (auto e : g.edges())
        if (e != Edge{std::min(a, b), std::max(a, b)})
            es.push_back(e);
    Graph without(g.order(), es);
    // shortest a-b path in G - ab is the cycle minus ab; retract onto it
    RetractionMap path = retract_to_path(without, a, b);
    RetractionMap r;
    r.image = path.image;
    r.assignment = path.assignment;
    return r;
}

} // namespace circmix

#endif
