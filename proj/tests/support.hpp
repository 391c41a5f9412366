// Independent reference implementations used as test oracles.
#ifndef CIRCMIX_TESTS_SUPPORT_HPP
#define CIRCMIX_TESTS_SUPPORT_HPP

#include <circmix/graph.hpp>
#include <circmix/circular.hpp>
#include <circmix/planar.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace testing_support {

using circmix::Edge;
using circmix::Graph;
using circmix::Vertex;

inline std::vector<std::vector<bool>> adjacency_matrix(const Graph &g)
{
    std::vector<std::vector<bool>> a(static_cast<std::size_t>(g.order()), std::vector<bool>(static_cast<std::size_t>(g.order())));
    for (auto [u, v] : g.edges())
        a[u][v] = a[v][u] = true;
    return a;
}

/// Isomorphism by trying every permutation.
inline bool isomorphic_brute(const Graph &g, const Graph &h)
{
    if (g.order() != h.order() || g.size() != h.size())
        return false;
    auto a = adjacency_matrix(g), b = adjacency_matrix(h);
    std::vector<int> perm(static_cast<std::size_t>(g.order()));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < g.order() && ok; ++u)
            for (int v = u + 1; v < g.order() && ok; ++v)
                ok = a[u][v] == b[perm[u]][perm[v]];
        if (ok)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// All proper (p,q)-colourings by filtering the full product p^n.
inline std::vector<std::vector<int>> colourings_brute(const Graph &g, int p, int q)
{
    std::vector<std::vector<int>> out;
    const int n = g.order();
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    auto edges = g.edges();
    while (true) {
        bool ok = true;
        for (auto [u, v] : edges) {
            int d = std::abs(c[u] - c[v]);
            d = std::min(d, p - d);
            if (d < q) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.push_back(c);
        int i = n - 1;
        while (i >= 0 && c[i] == p - 1)
            c[i--] = 0;
        if (i < 0)
            break;
        ++c[i];
    }
    return out;
}

/// Connectivity of Col(G, G_{p,q}) by plain BFS over the brute-force state
/// list (tiny inputs only).
inline bool mixing_brute(const Graph &g, int p, int q)
{
    auto states = colourings_brute(g, p, q);
    if (states.empty())
        return true;
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < states.size(); ++i)
        index[states[i]] = static_cast<int>(i);
    std::vector<char> seen(states.size(), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t at = 0; at < queue.size(); ++at) {
        auto s = states[static_cast<std::size_t>(queue[at])];
        for (int v = 0; v < g.order(); ++v) {
            int old = s[v];
            for (int c = 0; c < p; ++c) {
                s[v] = c;
                auto it = index.find(s);
                if (it != index.end() && !seen[static_cast<std::size_t>(it->second)]) {
                    seen[static_cast<std::size_t>(it->second)] = 1;
                    queue.push_back(it->second);
                }
            }
            s[v] = old;
        }
    }
    return queue.size() == states.size();
}

/// Face lengths of a rotation system, traced independently of the library.
inline std::vector<int> face_lengths(const Graph &g, const std::vector<std::vector<Vertex>> &rot)
{
    std::set<std::pair<Vertex, Vertex>> used;
    std::vector<int> out;
    for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v : rot[u]) {
            if (used.count({u, v}))
                continue;
            int len = 0;
            Vertex a = u, b = v;
            while (!used.count({a, b})) {
                used.insert({a, b});
                ++len;
                const auto &r = rot[b];
                auto it = std::find(r.begin(), r.end(), a);
                ++it;
                if (it == r.end())
                    it = r.begin();
                a = b;
                b = *it;
            }
            out.push_back(len);
        }
    return out;
}

inline bool is_plane_rotation(const Graph &g, const std::vector<std::vector<Vertex>> &rot)
{
    // connected inputs only
    int f = static_cast<int>(face_lengths(g, rot).size());
    return g.order() - g.size() + f == 2;
}

/// Every planar rotation system (up to `limit` tried), by permuting each
/// neighbour list with its first entry fixed.
inline std::vector<circmix::RotationSystem> all_plane_rotations(const Graph &g, long long limit = 200000)
{
    std::vector<std::vector<std::vector<Vertex>>> options(static_cast<std::size_t>(g.order()));
    for (Vertex v = 0; v < g.order(); ++v) {
        auto nb = g.neighbours(v);
        if (nb.size() <= 2) {
            options[v].push_back(nb);
            continue;
        }
        std::vector<Vertex> tail(nb.begin() + 1, nb.end());
        do {
            std::vector<Vertex> r{nb[0]};
            r.insert(r.end(), tail.begin(), tail.end());
            options[v].push_back(r);
        } while (std::next_permutation(tail.begin(), tail.end()));
    }
    std::vector<circmix::RotationSystem> out;
    std::vector<std::size_t> pick(static_cast<std::size_t>(g.order()), 0);
    long long tried = 0;
    while (tried++ < limit) {
        std::vector<std::vector<Vertex>> rot;
        for (Vertex v = 0; v < g.order(); ++v)
            rot.push_back(options[v][pick[v]]);
        if (is_plane_rotation(g, rot))
            out.push_back(circmix::RotationSystem{rot, std::nullopt});
        int v = 0;
        while (v < g.order() && ++pick[v] == options[v].size())
            pick[v++] = 0;
        if (v == g.order())
            break;
    }
    return out;
}

/// Connected bipartite graphs with `n` vertices, one per isomorphism class,
/// generated from every bipartition size and edge subset.
inline std::vector<Graph> connected_bipartite_graphs(int n)
{
    std::vector<Graph> out;
    if (n == 1) {
        out.emplace_back(1, std::vector<Edge>{});
        return out;
    }
    std::set<std::string> seen;
    for (int a = 1; a <= n / 2; ++a) {
        const int b = n - a;
        std::vector<Edge> all;
        for (int u = 0; u < a; ++u)
            for (int v = a; v < n; ++v)
                all.emplace_back(u, v);
        const std::uint64_t subsets = std::uint64_t{1} << all.size();
        for (std::uint64_t mask = 0; mask < subsets; ++mask) {
            if (std::popcount(mask) < n - 1)
                continue;
            std::vector<Edge> es;
            for (std::size_t i = 0; i < all.size(); ++i)
                if (mask >> i & 1)
                    es.push_back(all[i]);
            Graph g(n, es);
            if (!circmix::is_connected(g))
                continue;
            if (seen.insert(circmix::canonical_key(g)).second)
                out.push_back(g);
        }
        (void)b;
    }
    return out;
}

inline std::vector<Graph> connected_bipartite_graphs_up_to(int n)
{
    std::vector<Graph> out;
    for (int k = 1; k <= n; ++k)
        for (auto &g : connected_bipartite_graphs(k))
            out.push_back(std::move(g));
    return out;
}

/// Random connected bipartite graph: a random spanning tree across a random
/// bipartition plus extra cross edges with probability `density`.
inline Graph random_connected_bipartite(int n, double density, std::mt19937 &rng)
{
    std::vector<int> side(static_cast<std::size_t>(n));
    side[0] = 0;
    std::vector<Edge> es;
    for (int v = 1; v < n; ++v) {
        int parent = std::uniform_int_distribution<int>(0, v - 1)(rng);
        side[v] = 1 - side[parent];
        es.emplace_back(parent, v);
    }
    std::bernoulli_distribution extra(density);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (side[u] != side[v] && extra(rng))
                es.emplace_back(u, v);
    return Graph(n, es);
}

/// Random simple graph on n vertices with edge probability `density`.
inline Graph random_graph(int n, double density, std::mt19937 &rng)
{
    std::bernoulli_distribution pick(density);
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (pick(rng))
                es.emplace_back(u, v);
    return Graph(n, es);
}

/// Every graph on n vertices (n <= 6), labelled.
inline void for_each_labelled_graph(int n, const std::function<void(const Graph &)> &visit)
{
    std::vector<Edge> all;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            all.emplace_back(u, v);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
        std::vector<Edge> es;
        for (std::size_t i = 0; i < all.size(); ++i)
            if (mask >> i & 1)
                es.push_back(all[i]);
        visit(Graph(n, es));
    }
}

inline Graph relabel(const Graph &g, const std::vector<Vertex> &perm)
{
    std::vector<Edge> es;
    for (auto [u, v] : g.edges())
        es.emplace_back(perm[u], perm[v]);
    return Graph(g.order(), es);
}

} // namespace testing_support

#endif
