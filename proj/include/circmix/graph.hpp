#ifndef CIRCMIX_GRAPH_HPP
#define CIRCMIX_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace circmix {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Raised for malformed inputs: out-of-range vertices, loops, bad parameters.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Finite simple undirected graph on vertices 0..n-1.
///
/// Immutable after construction. Adjacency lists are sorted ascending and
/// edges are stored as (u, v) with u < v in lexicographic order.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : adj_(static_cast<std::size_t>(check_count(n))) {}

    Graph(int n, const std::vector<Edge> &edges) : adj_(static_cast<std::size_t>(check_count(n)))
    {
        std::vector<Edge> normal;
        normal.reserve(edges.size());
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw InvalidInput("edge endpoint out of range: (" + std::to_string(u) + "," +
                                   std::to_string(v) + ") with n=" + std::to_string(n));
            if (u == v)
                throw InvalidInput("loop edge at vertex " + std::to_string(u));
            normal.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(normal.begin(), normal.end());
        auto last = std::unique(normal.begin(), normal.end());
        duplicates_ = static_cast<int>(normal.end() - last);
        normal.erase(last, normal.end());
        edges_ = std::move(normal);
        for (auto [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto &a : adj_)
            std::sort(a.begin(), a.end());
    }

    int order() const { return static_cast<int>(adj_.size()); }
    int size() const { return static_cast<int>(edges_.size()); }
    const std::vector<Vertex> &neighbours(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
    int degree(Vertex v) const { return static_cast<int>(neighbours(v).size()); }
    const std::vector<Edge> &edges() const { return edges_; }

    bool has_edge(Vertex u, Vertex v) const
    {
        if (u < 0 || v < 0 || u >= order() || v >= order())
            return false;
        const auto &a = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(a.begin(), a.end(), v);
    }

    /// Number of duplicate edges that were collapsed during construction.
    int duplicates_collapsed() const { return duplicates_; }

    friend bool operator==(const Graph &a, const Graph &b) { return a.adj_ == b.adj_; }

private:
    static int check_count(int n)
    {
        if (n < 0)
            throw InvalidInput("negative vertex count");
        return n;
    }

    std::vector<std::vector<Vertex>> adj_;
    std::vector<Edge> edges_;
    int duplicates_ = 0;
};

inline Graph build_graph(int n, const std::vector<Edge> &edges) { return Graph(n, edges); }

/// Subgraph induced by `keep` (in the given order); vertex i of the result is keep[i].
inline Graph induced_subgraph(const Graph &g, const std::vector<Vertex> &keep)
{
    std::vector<int> pos(static_cast<std::size_t>(g.order()), -1);
    for (std::size_t i = 0; i < keep.size(); ++i)
        pos[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
    std::vector<Edge> es;
    for (auto [u, v] : g.edges())
        if (pos[u] >= 0 && pos[v] >= 0)
            es.emplace_back(pos[u], pos[v]);
    return Graph(static_cast<int>(keep.size()), es);
}

// ---------------------------------------------------------------------------
// Traversal

inline std::vector<int> bfs_distances(const Graph &g, Vertex source)
{
    std::vector<int> dist(static_cast<std::size_t>(g.order()), -1);
    std::queue<Vertex> queue;
    dist[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop();
        for (Vertex w : g.neighbours(u))
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push(w);
            }
    }
    return dist;
}

/// Hop distance, or nullopt when unreachable.
inline std::optional<int> distance(const Graph &g, Vertex u, Vertex v)
{
    if (u < 0 || v < 0 || u >= g.order() || v >= g.order())
        throw InvalidInput("vertex out of range");
    int d = bfs_distances(g, u)[v];
    if (d < 0)
        return std::nullopt;
    return d;
}

/// Component index per vertex, numbered by lowest member.
inline std::vector<int> components(const Graph &g, int *count = nullptr)
{
    std::vector<int> comp(static_cast<std::size_t>(g.order()), -1);
    int c = 0;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (comp[s] >= 0)
            continue;
        std::vector<Vertex> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbours(u))
                if (comp[w] < 0) {
                    comp[w] = c;
                    stack.push_back(w);
                }
        }
        ++c;
    }
    if (count)
        *count = c;
    return comp;
}

inline int component_count(const Graph &g)
{
    int c = 0;
    components(g, &c);
    return c;
}

inline bool is_connected(const Graph &g) { return g.order() <= 1 || component_count(g) == 1; }

/// Shortest path from u to v (inclusive), lowest-index neighbours first; empty if unreachable.
inline std::vector<Vertex> shortest_path(const Graph &g, Vertex u, Vertex v)
{
    std::vector<int> parent(static_cast<std::size_t>(g.order()), -2);
    std::queue<Vertex> queue;
    parent[u] = -1;
    queue.push(u);
    while (!queue.empty() && parent[v] == -2) {
        Vertex x = queue.front();
        queue.pop();
        for (Vertex w : g.neighbours(x))
            if (parent[w] == -2) {
                parent[w] = x;
                queue.push(w);
            }
    }
    if (parent[v] == -2)
        return {};
    std::vector<Vertex> path;
    for (Vertex x = v; x != -1; x = parent[x])
        path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
}

// ---------------------------------------------------------------------------
// Cycles

/// Cyclic vertex sequence; the order gives the orientation.
///
/// Equality is up to rotation and reflection. `normalized()` gives the stored
/// representative: minimum vertex first, smaller of its two neighbours second.
class Cycle {
public:
    Cycle() = default;
    explicit Cycle(std::vector<Vertex> vertices) : vs_(std::move(vertices)) {}

    const std::vector<Vertex> &vertices() const { return vs_; }
    int length() const { return static_cast<int>(vs_.size()); }
    Vertex operator[](std::size_t i) const { return vs_[i]; }
    Vertex at_cyclic(int i) const
    {
        int l = length();
        return vs_[static_cast<std::size_t>(((i % l) + l) % l)];
    }

    Cycle reversed() const
    {
        std::vector<Vertex> r(vs_.rbegin(), vs_.rend());
        return Cycle(std::move(r));
    }

    Cycle normalized() const
    {
        if (vs_.empty())
            return *this;
        auto l = vs_.size();
        auto pos = static_cast<std::size_t>(std::min_element(vs_.begin(), vs_.end()) - vs_.begin());
        Vertex next = vs_[(pos + 1) % l];
        Vertex prev = vs_[(pos + l - 1) % l];
        std::vector<Vertex> out;
        out.reserve(l);
        if (next <= prev) {
            for (std::size_t i = 0; i < l; ++i)
                out.push_back(vs_[(pos + i) % l]);
        } else {
            for (std::size_t i = 0; i < l; ++i)
                out.push_back(vs_[(pos + l - i) % l]);
        }
        return Cycle(std::move(out));
    }

    std::vector<Edge> edges() const
    {
        std::vector<Edge> es;
        for (int i = 0; i < length(); ++i)
            es.emplace_back(at_cyclic(i), at_cyclic(i + 1));
        return es;
    }

    friend bool operator==(const Cycle &a, const Cycle &b) { return a.normalized().vs_ == b.normalized().vs_; }
    friend bool operator<(const Cycle &a, const Cycle &b) { return a.normalized().vs_ < b.normalized().vs_; }

private:
    std::vector<Vertex> vs_;
};

/// True if `c` is a simple cycle (length >= 3) of `g`.
inline bool is_cycle_of(const Graph &g, const Cycle &c)
{
    if (c.length() < 3)
        return false;
    std::vector<Vertex> sorted = c.vertices();
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return false;
    for (auto [u, v] : c.edges())
        if (!g.has_edge(u, v))
            return false;
    return true;
}

struct Bipartition {
    bool valid = false;
    std::vector<int> side;   // 0 = A, 1 = B; meaningful only when valid
    std::optional<Cycle> odd_cycle;
};

/// BFS 2-colouring; when none exists, an odd cycle is returned as evidence.
inline Bipartition bipartition(const Graph &g)
{
    const int n = g.order();
    std::vector<int> level(static_cast<std::size_t>(n), -1), parent(static_cast<std::size_t>(n), -1);
    for (Vertex s = 0; s < n; ++s) {
        if (level[s] >= 0)
            continue;
        level[s] = 0;
        std::queue<Vertex> queue;
        queue.push(s);
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop();
            for (Vertex w : g.neighbours(u)) {
                if (level[w] < 0) {
                    level[w] = level[u] + 1;
                    parent[w] = u;
                    queue.push(w);
                }
            }
        }
    }
    for (auto [u, v] : g.edges()) {
        if (level[u] != level[v])
            continue;
        // u and v share a BFS level: climb to the common ancestor.
        std::vector<Vertex> left{u}, right{v};
        Vertex a = u, b = v;
        while (a != b) {
            a = parent[a];
            b = parent[b];
            left.push_back(a);
            right.push_back(b);
        }
        right.pop_back();
        std::vector<Vertex> cyc(left.begin(), left.end());
        cyc.insert(cyc.end(), right.rbegin(), right.rend());
        Bipartition bp;
        bp.odd_cycle = Cycle(std::move(cyc)).normalized();
        return bp;
    }
    Bipartition bp;
    bp.valid = true;
    bp.side.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        bp.side[v] = level[v] % 2;
    return bp;
}

inline bool is_bipartite(const Graph &g) { return bipartition(g).valid; }

struct CycleBasis {
    std::vector<Edge> tree;        // spanning forest edges (parent, child)
    std::vector<Cycle> fundamental; // one per non-tree edge, in edge order
    std::vector<Edge> non_tree;    // the non-tree edge closing each fundamental cycle
};

/// Fundamental cycles of a BFS spanning forest rooted at the lowest vertex of
/// each component.
inline CycleBasis fundamental_cycle_basis(const Graph &g)
{
    const int n = g.order();
    std::vector<int> parent(static_cast<std::size_t>(n), -2), depth(static_cast<std::size_t>(n), 0);
    CycleBasis basis;
    for (Vertex s = 0; s < n; ++s) {
        if (parent[s] != -2)
            continue;
        parent[s] = -1;
        std::queue<Vertex> queue;
        queue.push(s);
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop();
            for (Vertex w : g.neighbours(u))
                if (parent[w] == -2) {
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    basis.tree.emplace_back(u, w);
                    queue.push(w);
                }
        }
    }
    for (auto [u, v] : g.edges()) {
        if (parent[u] == v || parent[v] == u)
            continue;
        std::vector<Vertex> left{u}, right{v};
        Vertex a = u, b = v;
        while (depth[a] > depth[b]) {
            a = parent[a];
            left.push_back(a);
        }
        while (depth[b] > depth[a]) {
            b = parent[b];
            right.push_back(b);
        }
        while (a != b) {
            a = parent[a];
            b = parent[b];
            left.push_back(a);
            right.push_back(b);
        }
        right.pop_back();
        std::vector<Vertex> cyc(left.begin(), left.end());
        cyc.insert(cyc.end(), right.rbegin(), right.rend());
        basis.fundamental.push_back(Cycle(std::move(cyc)).normalized());
        basis.non_tree.emplace_back(u, v);
    }
    return basis;
}

/// Streams every simple cycle of length <= max_len exactly once (normalized
/// form). The visitor returns false to stop early.
inline void for_each_cycle(const Graph &g, int max_len, const std::function<bool(const Cycle &)> &visit)
{
    const int n = g.order();
    std::vector<char> on_path(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> path;
    bool stop = false;
    std::function<void(Vertex)> extend = [&](Vertex u) {
        for (Vertex w : g.neighbours(u)) {
            if (stop)
                return;
            Vertex s = path.front();
            if (w == s) {
                if (path.size() >= 3 && path[1] < path.back())
                    if (!visit(Cycle(path)))
                        stop = true;
                continue;
            }
            if (w < s || on_path[w] || static_cast<int>(path.size()) >= max_len)
                continue;
            on_path[w] = 1;
            path.push_back(w);
            extend(w);
            path.pop_back();
            on_path[w] = 0;
        }
    };
    for (Vertex s = 0; s < n && !stop; ++s) {
        path.assign(1, s);
        on_path[s] = 1;
        extend(s);
        on_path[s] = 0;
    }
}

inline std::vector<Cycle> enumerate_cycles(const Graph &g, int max_len)
{
    std::vector<Cycle> out;
    for_each_cycle(g, max_len, [&](const Cycle &c) {
        out.push_back(c);
        return true;
    });
    return out;
}

/// Length of a longest cycle, 0 if acyclic. Exhaustive; desk scale only.
inline int longest_cycle_length(const Graph &g)
{
    int best = 0;
    for_each_cycle(g, g.order(), [&](const Cycle &c) {
        best = std::max(best, c.length());
        return best < g.order();
    });
    return best;
}

// ---------------------------------------------------------------------------
// Blocks

struct Block {
    std::vector<Vertex> vertices; // sorted
    std::vector<Edge> edges;      // (u < v), sorted
};

struct BlockDecomposition {
    std::vector<Block> blocks;
    std::vector<Vertex> cut_vertices; // sorted
};

/// Biconnected decomposition (bridges are their own blocks; isolated
/// vertices belong to no block).
inline BlockDecomposition blocks(const Graph &g)
{
    const int n = g.order();
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<char> is_cut(static_cast<std::size_t>(n), 0);
    std::vector<Edge> estack;
    BlockDecomposition out;
    int timer = 0;

    auto pop_block = [&](Vertex u, Vertex w) {
        Block b;
        while (true) {
            Edge e = estack.back();
            estack.pop_back();
            b.edges.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
            b.vertices.push_back(e.first);
            b.vertices.push_back(e.second);
            if (e.first == u && e.second == w)
                break;
        }
        std::sort(b.edges.begin(), b.edges.end());
        std::sort(b.vertices.begin(), b.vertices.end());
        b.vertices.erase(std::unique(b.vertices.begin(), b.vertices.end()), b.vertices.end());
        out.blocks.push_back(std::move(b));
    };

    std::function<void(Vertex, Vertex)> dfs = [&](Vertex u, Vertex par) {
        disc[u] = low[u] = timer++;
        int children = 0;
        for (Vertex w : g.neighbours(u)) {
            if (w == par)
                continue;
            if (disc[w] < 0) {
                ++children;
                estack.emplace_back(u, w);
                dfs(w, u);
                low[u] = std::min(low[u], low[w]);
                if (low[w] >= disc[u]) {
                    if (par != -1 || children > 1)
                        is_cut[u] = 1;
                    pop_block(u, w);
                }
            } else if (disc[w] < disc[u]) {
                low[u] = std::min(low[u], disc[w]);
                estack.emplace_back(u, w);
            }
        }
        // a root is a cut vertex iff it has more than one DFS child
        if (par == -1 && children < 2)
            is_cut[u] = 0;
    };
    for (Vertex s = 0; s < n; ++s)
        if (disc[s] < 0)
            dfs(s, -1);
    for (Vertex v = 0; v < n; ++v)
        if (is_cut[v])
            out.cut_vertices.push_back(v);
    std::sort(out.blocks.begin(), out.blocks.end(),
              [](const Block &a, const Block &b) { return a.edges < b.edges; });
    return out;
}

// ---------------------------------------------------------------------------
// Canonical form

/// Default size guard for canonical_key.
inline constexpr int kCanonicalKeyMaxOrder = 16;

namespace detail {

class Canonicalizer {
public:
    explicit Canonicalizer(const Graph &g) : g_(g), n_(g.order()) {}

    std::string run()
    {
        std::vector<std::vector<Vertex>> cells(1);
        for (Vertex v = 0; v < n_; ++v)
            cells[0].push_back(v);
        if (n_ > 0) {
            refine(cells);
            search(cells, {});
        }
        std::string key;
        key.push_back(static_cast<char>(n_));
        key += best_;
        return key;
    }

private:
    // Splits cells by neighbour counts into earlier cells until stable.
    // Cell order is a function of the isomorphism class of (graph, partition).
    void refine(std::vector<std::vector<Vertex>> &cells) const
    {
        bool changed = true;
        std::vector<int> cell_of(static_cast<std::size_t>(n_));
        while (changed) {
            changed = false;
            for (std::size_t c = 0; c < cells.size(); ++c)
                for (Vertex v : cells[c])
                    cell_of[v] = static_cast<int>(c);
            std::vector<std::vector<Vertex>> next;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (cells[c].size() == 1) {
                    next.push_back(cells[c]);
                    continue;
                }
                std::vector<std::pair<std::vector<int>, Vertex>> sig;
                for (Vertex v : cells[c]) {
                    std::vector<int> counts(cells.size(), 0);
                    for (Vertex w : g_.neighbours(v))
                        ++counts[cell_of[w]];
                    sig.emplace_back(std::move(counts), v);
                }
                std::sort(sig.begin(), sig.end());
                std::size_t start = next.size();
                next.emplace_back();
                next.back().push_back(sig[0].second);
                for (std::size_t i = 1; i < sig.size(); ++i) {
                    if (sig[i].first != sig[i - 1].first)
                        next.emplace_back();
                    next.back().push_back(sig[i].second);
                }
                if (next.size() - start > 1)
                    changed = true;
            }
            cells = std::move(next);
        }
    }

    std::string leaf_string(const std::vector<std::vector<Vertex>> &cells) const
    {
        std::vector<int> pos(static_cast<std::size_t>(n_));
        for (std::size_t i = 0; i < cells.size(); ++i)
            pos[cells[i][0]] = static_cast<int>(i);
        std::string bits(static_cast<std::size_t>(n_ * (n_ - 1) / 2), '0');
        for (auto [u, v] : g_.edges()) {
            int a = std::min(pos[u], pos[v]), b = std::max(pos[u], pos[v]);
            bits[static_cast<std::size_t>(b * (b - 1) / 2 + a)] = '1';
        }
        return bits;
    }

    std::vector<Vertex> leaf_labelling(const std::vector<std::vector<Vertex>> &cells) const
    {
        std::vector<Vertex> lab;
        for (const auto &c : cells)
            lab.push_back(c[0]);
        return lab;
    }

    void search(const std::vector<std::vector<Vertex>> &cells, const std::vector<Vertex> &prefix)
    {
        std::size_t target = cells.size();
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].size() > 1) {
                target = i;
                break;
            }
        if (target == cells.size()) {
            std::string s = leaf_string(cells);
            auto lab = leaf_labelling(cells);
            if (!have_best_ || s < best_) {
                best_ = s;
                best_lab_ = lab;
                have_best_ = true;
            } else if (s == best_) {
                // best_lab_[i] -> lab[i] is an automorphism
                std::vector<Vertex> perm(static_cast<std::size_t>(n_));
                for (int i = 0; i < n_; ++i)
                    perm[best_lab_[i]] = lab[i];
                automorphisms_.push_back(std::move(perm));
            }
            return;
        }
        const auto &cell = cells[target];
        std::vector<Vertex> explored;
        for (Vertex v : cell) {
            if (equivalent_to_explored(v, explored, prefix))
                continue;
            explored.push_back(v);
            std::vector<std::vector<Vertex>> child;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i == target) {
                    child.push_back({v});
                    std::vector<Vertex> rest;
                    for (Vertex w : cell)
                        if (w != v)
                            rest.push_back(w);
                    child.push_back(std::move(rest));
                } else {
                    child.push_back(cells[i]);
                }
            }
            refine(child);
            auto next_prefix = prefix;
            next_prefix.push_back(v);
            search(child, next_prefix);
        }
    }

    // v is skipped when a known automorphism fixing the prefix pointwise maps
    // an already explored sibling onto it (orbits under the generated group).
    bool equivalent_to_explored(Vertex v, const std::vector<Vertex> &explored,
                                const std::vector<Vertex> &prefix) const
    {
        if (explored.empty())
            return false;
        std::vector<const std::vector<Vertex> *> gens;
        for (const auto &a : automorphisms_) {
            bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](Vertex x) { return a[x] == x; });
            if (fixes)
                gens.push_back(&a);
        }
        if (gens.empty())
            return false;
        std::vector<char> seen(static_cast<std::size_t>(n_), 0);
        std::vector<Vertex> stack(explored.begin(), explored.end());
        for (Vertex x : explored)
            seen[x] = 1;
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            if (x == v)
                return true;
            for (auto *a : gens) {
                Vertex y = (*a)[x];
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
            }
        }
        return false;
    }

    const Graph &g_;
    int n_;
    std::string best_;
    std::vector<Vertex> best_lab_;
    bool have_best_ = false;
    std::vector<std::vector<Vertex>> automorphisms_;
};

} // namespace detail

/// Isomorphism-invariant byte string: equal keys iff isomorphic graphs.
/// Backtracking with colour refinement and automorphism pruning.
inline std::string canonical_key(const Graph &g, int max_order = kCanonicalKeyMaxOrder)
{
    if (g.order() > max_order)
        throw InvalidInput("canonical_key: graph order " + std::to_string(g.order()) +
                           " exceeds guard " + std::to_string(max_order));
    return detail::Canonicalizer(g).run();
}

// ---------------------------------------------------------------------------
// Small constructors

inline Graph cycle_graph(int len)
{
    if (len < 3)
        throw InvalidInput("cycle length must be at least 3");
    std::vector<Edge> es;
    for (int i = 0; i < len; ++i)
        es.emplace_back(i, (i + 1) % len);
    return Graph(len, es);
}

inline Graph path_graph(int n)
{
    std::vector<Edge> es;
    for (int i = 0; i + 1 < n; ++i)
        es.emplace_back(i, i + 1);
    return Graph(n, es);
}

/// True if g is connected, 2-regular, and of order len.
inline bool is_cycle_graph(const Graph &g, int len)
{
    if (g.order() != len || len < 3)
        return false;
    for (Vertex v = 0; v < g.order(); ++v)
        if (g.degree(v) != 2)
            return false;
    return is_connected(g);
}

} // namespace circmix

#endif
