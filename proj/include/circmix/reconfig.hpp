#ifndef CIRCMIX_RECONFIG_HPP
#define CIRCMIX_RECONFIG_HPP

#include "circular.hpp"

#include <atomic>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace circmix {

/// Raised when an exhaustive search would exceed its configured state budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(long long budget)
        : std::runtime_error("state budget of " + std::to_string(budget) + " exceeded"), budget_(budget)
    {
    }
    long long budget() const { return budget_; }

private:
    long long budget_;
};

inline constexpr long long kDefaultStateBudget = 10'000'000;

enum class MixingVerdict { mixing, not_mixing, vacuous };

inline const char *to_string(MixingVerdict v)
{
    switch (v) {
    case MixingVerdict::mixing:
        return "MIXING";
    case MixingVerdict::not_mixing:
        return "NOT-MIXING";
    case MixingVerdict::vacuous:
        return "VACUOUS";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Col(G, G_{p,q}) as an implicit graph

namespace detail {

/// Allowed colours of v given the colours of its neighbours.
inline std::uint64_t allowed_colours(const Graph &g, const std::vector<std::uint64_t> &compat, std::uint64_t full,
                                     const std::vector<int> &colours, Vertex v)
{
    std::uint64_t mask = full;
    for (Vertex u : g.neighbours(v))
        mask &= compat[colours[u]];
    return mask;
}

inline std::string state_key(const std::vector<int> &colours)
{
    std::string key(colours.size(), '\0');
    for (std::size_t i = 0; i < colours.size(); ++i)
        key[i] = static_cast<char>(colours[i]);
    return key;
}

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace detail

/// Every proper colouring of g, indexed. Colourings are encoded base p (vertex
/// 0 most significant) when p^n fits in 64 bits, so lexicographic enumeration
/// yields sorted codes and lookup is a bucketed binary search; otherwise a hash
/// map over byte strings is used.
class StateSpace {
public:
    StateSpace(const Graph &g, const CircularParams &params, long long budget = kDefaultStateBudget)
        : g_(g), params_(params)
    {
        const int n = g.order();
        packed_ = true;
        long double span = 1;
        for (int i = 0; i < n; ++i) {
            span *= params.p;
            if (span > static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2)) {
                packed_ = false;
                break;
            }
        }
        place_.assign(static_cast<std::size_t>(n), 1);
        for (int v = n - 2; v >= 0; --v)
            place_[v] = packed_ ? place_[v + 1] * static_cast<std::uint64_t>(params.p) : 0;
        long long count = 0;
        for_each_colouring(g, params, [&](const std::vector<int> &c) {
            if (++count > budget)
                throw BudgetExceeded(budget);
            if (packed_) {
                std::uint64_t code = 0;
                for (int v = 0; v < n; ++v)
                    code += static_cast<std::uint64_t>(c[v]) * place_[v];
                codes_.push_back(code);
            } else {
                keys_.emplace(detail::state_key(c), strings_.size());
                strings_.push_back(c);
            }
            return true;
        });
        if (packed_ && !codes_.empty())
            build_buckets();
    }

    std::size_t size() const { return packed_ ? codes_.size() : strings_.size(); }
    const Graph &graph() const { return g_; }
    const CircularParams &params() const { return params_; }

    std::vector<int> state(std::size_t i) const
    {
        if (!packed_)
            return strings_[i];
        std::vector<int> c(static_cast<std::size_t>(g_.order()));
        std::uint64_t code = codes_[i];
        for (int v = g_.order() - 1; v >= 0; --v) {
            c[v] = static_cast<int>(code % static_cast<std::uint64_t>(params_.p));
            code /= static_cast<std::uint64_t>(params_.p);
        }
        return c;
    }

    std::optional<std::size_t> find(const std::vector<int> &colours) const
    {
        if (!packed_) {
            auto it = keys_.find(detail::state_key(colours));
            if (it == keys_.end())
                return std::nullopt;
            return it->second;
        }
        std::uint64_t code = 0;
        for (int v = 0; v < g_.order(); ++v)
            code += static_cast<std::uint64_t>(colours[v]) * place_[v];
        return find_code(code);
    }

    /// Index of state i with v recoloured to c; `colours` is state(i).
    std::optional<std::size_t> find_recoloured(std::size_t i, const std::vector<int> &colours, Vertex v, int c) const
    {
        if (!packed_) {
            auto changed = colours;
            changed[v] = c;
            return find(changed);
        }
        std::uint64_t code = codes_[i] - static_cast<std::uint64_t>(colours[v]) * place_[v] +
                             static_cast<std::uint64_t>(c) * place_[v];
        return find_code(code);
    }

private:
    void build_buckets()
    {
        std::uint64_t top = codes_.back() + 1;
        int bits = 0;
        while (bits < 64 && (top >> bits) != 0)
            ++bits;
        int bucket_bits = std::min(bits, 20);
        shift_ = bits - bucket_bits;
        bucket_start_.assign((std::size_t{1} << bucket_bits) + 1, 0);
        for (std::uint64_t code : codes_)
            ++bucket_start_[(code >> shift_) + 1];
        for (std::size_t i = 1; i < bucket_start_.size(); ++i)
            bucket_start_[i] += bucket_start_[i - 1];
    }

    std::optional<std::size_t> find_code(std::uint64_t code) const
    {
        if (codes_.empty())
            return std::nullopt;
        std::uint64_t b = code >> shift_;
        if (b + 1 >= bucket_start_.size())
            return std::nullopt;
        auto first = codes_.begin() + static_cast<std::ptrdiff_t>(bucket_start_[b]);
        auto last = codes_.begin() + static_cast<std::ptrdiff_t>(bucket_start_[b + 1]);
        auto it = std::lower_bound(first, last, code);
        if (it == last || *it != code)
            return std::nullopt;
        return static_cast<std::size_t>(it - codes_.begin());
    }

    Graph g_;
    CircularParams params_;
    bool packed_ = true;
    std::vector<std::uint64_t> place_;
    std::vector<std::uint64_t> codes_;
    std::vector<std::uint32_t> bucket_start_;
    int shift_ = 0;
    std::vector<std::vector<int>> strings_;
    std::unordered_map<std::string, std::size_t> keys_;
};

/// Component label of every state of Col(G, G_{p,q}); labels are the lowest
/// state index in each component.
struct ColComponents {
    std::unique_ptr<StateSpace> space;
    std::vector<std::uint32_t> component;
    std::size_t count = 0;
};

inline ColComponents col_components(const Graph &g, const CircularParams &params,
                                    long long budget = kDefaultStateBudget)
{
    ColComponents out;
    out.space = std::make_unique<StateSpace>(g, params, budget);
    const StateSpace &space = *out.space;
    if (space.size() > std::numeric_limits<std::uint32_t>::max())
        throw BudgetExceeded(budget);
    const auto compat = compatibility_masks(params);
    const std::uint64_t full = all_colours_mask(params.p);
    detail::UnionFind uf(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        auto colours = space.state(i);
        for (Vertex v = 0; v < g.order(); ++v) {
            // all recolourings of v are mutually adjacent; join to the least one
            int least = std::countr_zero(detail::allowed_colours(g, compat, full, colours, v));
            if (least == colours[v])
                continue;
            auto j = space.find_recoloured(i, colours, v, least);
            if (!j)
                throw std::logic_error("col_components: recoloured state missing from index");
            uf.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(*j));
        }
    }
    out.component.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        out.component[i] = uf.find(static_cast<std::uint32_t>(i));
        if (out.component[i] == i)
            ++out.count;
    }
    return out;
}

/// Proper colourings differing from s at exactly one vertex.
inline std::vector<Colouring> col_neighbours(const Graph &g, const Colouring &s)
{
    const auto compat = compatibility_masks(s.params);
    const std::uint64_t full = all_colours_mask(s.params.p);
    std::vector<Colouring> out;
    for (Vertex v = 0; v < g.order(); ++v) {
        std::uint64_t mask = detail::allowed_colours(g, compat, full, s.colours, v);
        for (int c = 0; c < s.params.p; ++c) {
            if (c == s[v] || !((mask >> c) & 1))
                continue;
            Colouring t = s;
            t.colours[v] = c;
            out.push_back(std::move(t));
        }
    }
    return out;
}

struct OracleResult {
    MixingVerdict verdict = MixingVerdict::vacuous;
    std::size_t states = 0;
    std::size_t components = 0;
    /// For not-mixing: two colourings in distinct components.
    std::optional<Colouring> first, second;
};

/// Exact mixing decision by exhaustive union-find over Col(G, G_{p,q}).
inline OracleResult is_mixing_oracle(const Graph &g, const CircularParams &params,
                                     long long budget = kDefaultStateBudget)
{
    auto cc = col_components(g, params, budget);
    OracleResult r;
    r.states = cc.space->size();
    r.components = cc.count;
    if (r.states == 0) {
        r.verdict = MixingVerdict::vacuous;
        return r;
    }
    if (cc.count == 1) {
        r.verdict = MixingVerdict::mixing;
        return r;
    }
    r.verdict = MixingVerdict::not_mixing;
    r.first = Colouring{params, cc.space->state(0)};
    for (std::size_t i = 1; i < r.states; ++i)
        if (cc.component[i] != cc.component[0]) {
            r.second = Colouring{params, cc.space->state(i)};
            break;
        }
    return r;
}

namespace detail {

/// BFS over the component of `start`, without enumerating all colourings.
/// `on_state` may return false to stop. Parents are recorded for path recovery.
template <typename OnState>
void explore_component(const Graph &g, const Colouring &start, long long budget, OnState &&on_state,
                       std::unordered_map<std::string, std::string> *parents = nullptr)
{
    const auto compat = compatibility_masks(start.params);
    const std::uint64_t full = all_colours_mask(start.params.p);
    std::unordered_set<std::string> seen;
    std::vector<std::vector<int>> frontier{start.colours};
    seen.insert(state_key(start.colours));
    if (parents)
        (*parents)[state_key(start.colours)] = std::string();
    if (!on_state(start.colours))
        return;
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (auto &s : frontier) {
            const std::string skey = state_key(s);
            for (Vertex v = 0; v < g.order(); ++v) {
                std::uint64_t mask = allowed_colours(g, compat, full, s, v);
                int old = s[v];
                for (int c = 0; c < start.params.p; ++c) {
                    if (c == old || !((mask >> c) & 1))
                        continue;
                    s[v] = c;
                    std::string key = state_key(s);
                    if (seen.insert(key).second) {
                        if (static_cast<long long>(seen.size()) > budget)
                            throw BudgetExceeded(budget);
                        if (parents)
                            (*parents)[key] = skey;
                        if (!on_state(static_cast<const std::vector<int> &>(s)))
                            return;
                        next.push_back(s);
                    }
                }
                s[v] = old;
            }
        }
        frontier = std::move(next);
    }
}

} // namespace detail

struct ReachResult {
    bool reachable = false;
    /// f = path.front(), ..., path.back() = g when reachable.
    std::vector<Colouring> path;
};

/// Exact reachability by BFS from f.
inline ReachResult is_reachable_oracle(const Graph &g, const Colouring &f, const Colouring &h,
                                       long long budget = kDefaultStateBudget)
{
    if (!is_proper(g, f) || !is_proper(g, h))
        throw InvalidInput("is_reachable_oracle: colourings must be proper");
    if (!(f.params == h.params))
        throw InvalidInput("is_reachable_oracle: colourings use different parameters");
    ReachResult r;
    std::unordered_map<std::string, std::string> parents;
    const std::string target = detail::state_key(h.colours);
    detail::explore_component(
        g, f, budget, [&](const std::vector<int> &s) { return detail::state_key(s) != target; }, &parents);
    auto it = parents.find(target);
    if (it == parents.end())
        return r;
    r.reachable = true;
    std::vector<std::string> keys;
    for (std::string key = target; !key.empty(); key = parents.at(key))
        keys.push_back(key);
    for (auto k = keys.rbegin(); k != keys.rend(); ++k) {
        Colouring c{f.params, {}};
        for (char ch : *k)
            c.colours.push_back(static_cast<unsigned char>(ch));
        r.path.push_back(std::move(c));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Locked and fixed vertices

/// Vertices that cannot change colour in one step: v has neighbours coloured
/// f(v) - q and f(v) + q.
inline std::vector<Vertex> locked_vertices(const Graph &g, const Colouring &f)
{
    if (!f.params.in_wind_range())
        throw InvalidInput("locked_vertices requires 2 < p/q < 4, got " + to_string(f.params));
    const int p = f.params.p, q = f.params.q;
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.order(); ++v) {
        bool below = false, above = false;
        for (Vertex u : g.neighbours(v)) {
            if (f[u] == mod(f[v] - q, p))
                below = true;
            if (f[u] == mod(f[v] + q, p))
                above = true;
        }
        if (below && above)
            out.push_back(v);
    }
    return out;
}

enum class FixedMethod { oracle, tight_digraph };

/// A directed walk along which every edge has weight q.
struct TightEvidence {
    Vertex vertex = -1;
    std::vector<Vertex> walk;
    bool closed = false; // a directed cycle (last -> first is also tight)
};

struct FixedSetReport {
    std::vector<Vertex> fixed;
    FixedMethod method = FixedMethod::oracle;
    std::vector<TightEvidence> evidence;
};

namespace detail {

inline std::vector<std::vector<Vertex>> tight_arcs(const Graph &g, const Colouring &f)
{
    std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(g.order()));
    for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v : g.neighbours(u))
            if (mod(f[v] - f[u], f.params.p) == f.params.q)
                out[u].push_back(v);
    return out;
}

inline std::vector<Vertex> bfs_path(const std::vector<std::vector<Vertex>> &arcs, const std::vector<Vertex> &sources,
                                    const std::function<bool(Vertex)> &is_target, bool allow_zero_length)
{
    std::vector<int> parent(arcs.size(), -2);
    std::queue<Vertex> queue;
    for (Vertex s : sources) {
        if (allow_zero_length && is_target(s))
            return {s};
        parent[s] = -1;
        queue.push(s);
    }
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop();
        for (Vertex w : arcs[u]) {
            if (is_target(w)) {
                std::vector<Vertex> path{w};
                for (Vertex x = u; x != -1; x = parent[x])
                    path.push_back(x);
                std::reverse(path.begin(), path.end());
                return path;
            }
            if (parent[w] == -2) {
                parent[w] = u;
                queue.push(w);
            }
        }
    }
    return {};
}

inline std::vector<char> reachable_from(const std::vector<std::vector<Vertex>> &arcs, const std::vector<char> &seed)
{
    std::vector<char> seen = seed;
    std::vector<Vertex> stack;
    for (std::size_t v = 0; v < seed.size(); ++v)
        if (seed[v])
            stack.push_back(static_cast<Vertex>(v));
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (Vertex w : arcs[u])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return seen;
}

inline FixedSetReport fixed_by_tight_digraph(const Graph &g, const Colouring &f)
{
    const int n = g.order();
    auto arcs = tight_arcs(g, f);
    std::vector<std::vector<Vertex>> reverse(static_cast<std::size_t>(n));
    for (Vertex u = 0; u < n; ++u)
        for (Vertex w : arcs[u])
            reverse[w].push_back(u);

    // vertices on directed cycles: v reaches itself
    std::vector<char> on_cycle(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<Vertex>> cycle_walk(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
        auto walk = bfs_path(arcs, {v}, [v](Vertex x) { return x == v; }, false);
        if (!walk.empty()) {
            on_cycle[v] = 1;
            walk.pop_back();
            cycle_walk[v] = std::move(walk);
        }
    }
    // closure under directed tight paths between cycle vertices
    auto forward = reachable_from(arcs, on_cycle);
    auto backward = reachable_from(reverse, on_cycle);

    FixedSetReport report;
    report.method = FixedMethod::tight_digraph;
    for (Vertex v = 0; v < n; ++v) {
        if (!(forward[v] && backward[v]))
            continue;
        report.fixed.push_back(v);
        TightEvidence ev;
        ev.vertex = v;
        if (on_cycle[v]) {
            ev.walk = cycle_walk[v];
            ev.closed = true;
        } else {
            std::vector<Vertex> sources;
            for (Vertex a = 0; a < n; ++a)
                if (on_cycle[a])
                    sources.push_back(a);
            auto in = bfs_path(arcs, sources, [v](Vertex x) { return x == v; }, false);
            auto out = bfs_path(arcs, {v}, [&](Vertex x) { return on_cycle[x] != 0; }, false);
            ev.walk = in;
            ev.walk.insert(ev.walk.end(), out.begin() + 1, out.end());
        }
        report.evidence.push_back(std::move(ev));
    }
    return report;
}

} // namespace detail

/// Fixed vertices of f: those whose colour is constant over f's component of
/// Col(G, G_{p,q}). The oracle method explores that component; the
/// tight-digraph method takes vertices on directed cycles of the arcs
/// u -> v with W(uv, f) = q, closed under directed tight paths between them.
inline FixedSetReport fixed_vertices(const Graph &g, const Colouring &f, FixedMethod method,
                                     long long budget = kDefaultStateBudget)
{
    if (!is_proper(g, f))
        throw InvalidInput("fixed_vertices: colouring is not proper");
    if (method == FixedMethod::tight_digraph) {
        if (!f.params.in_reconfig_range())
            throw InvalidInput("tight-digraph fixed vertices require 2 <= p/q < 4");
        return detail::fixed_by_tight_digraph(g, f);
    }
    std::vector<char> constant(static_cast<std::size_t>(g.order()), 1);
    detail::explore_component(g, f, budget, [&](const std::vector<int> &s) {
        for (Vertex v = 0; v < g.order(); ++v)
            if (s[v] != f[v])
                constant[v] = 0;
        return true;
    });
    FixedSetReport report;
    report.method = FixedMethod::oracle;
    for (Vertex v = 0; v < g.order(); ++v)
        if (constant[v])
            report.fixed.push_back(v);
    return report;
}

// ---------------------------------------------------------------------------
// Characterized reachability

struct CharacterizedReach {
    bool reachable = false;
    std::string failed; // empty when reachable; otherwise the violated condition
};

/// Reachability by fixed sets, cycle weights and fixed-endpoint path weights.
/// Cycle weights are compared on a fundamental basis and path weights along one
/// tree path per fixed vertex from the lowest fixed vertex of its component.
inline CharacterizedReach is_reachable_characterized(const Graph &g, const Colouring &f, const Colouring &h,
                                                     FixedMethod method = FixedMethod::tight_digraph,
                                                     long long budget = kDefaultStateBudget)
{
    if (!(f.params == h.params))
        throw InvalidInput("colourings use different parameters");
    if (!f.params.in_reconfig_range())
        throw InvalidInput("characterized reachability requires 2 <= p/q < 4, got " + to_string(f.params));
    if (!is_proper(g, f) || !is_proper(g, h))
        throw InvalidInput("colourings must be proper");
    const int p = f.params.p;

    auto fixed_f = fixed_vertices(g, f, method, budget).fixed;
    auto fixed_h = fixed_vertices(g, h, method, budget).fixed;
    if (fixed_f != fixed_h)
        return {false, "fixed vertex sets differ"};
    for (Vertex v : fixed_f)
        if (f[v] != h[v])
            return {false, "fixed vertex " + std::to_string(v) + " has different colours"};

    auto difference = [&](Vertex u, Vertex v) { return mod(f[v] - f[u], p) - mod(h[v] - h[u], p); };
    auto basis = fundamental_cycle_basis(g);
    for (const auto &c : basis.fundamental) {
        long long d = 0;
        for (auto [u, v] : c.edges())
            d += difference(u, v);
        if (d != 0)
            return {false, "cycle weights differ"};
    }

    int ncomp = 0;
    auto comp = components(g, &ncomp);
    std::vector<Vertex> root(static_cast<std::size_t>(ncomp), -1);
    for (Vertex v : fixed_f) {
        Vertex &r = root[comp[v]];
        if (r < 0) {
            r = v;
            continue;
        }
        auto path = shortest_path(g, r, v);
        long long d = 0;
        for (std::size_t i = 1; i < path.size(); ++i)
            d += difference(path[i - 1], path[i]);
        if (d != 0)
            return {false, "fixed-endpoint path weights differ"};
    }
    return {true, {}};
}

// ---------------------------------------------------------------------------
// Winds and witnesses

/// A colouring together with a wrapped cycle: W(C, f) != |E(C)| p / 2.
struct NonMixingWitness {
    Colouring colouring;
    Cycle cycle;
    long long weight = 0;
    std::optional<long long> required; // nullopt for odd cycles
};

namespace detail {

inline bool wrapped(const Graph &g, const Colouring &f, const Cycle &c)
{
    if (c.length() % 2)
        return true;
    return cycle_weight(g, f, c) != static_cast<long long>(c.length() / 2) * f.params.p;
}

/// Shrinks a wrapped cycle across chords until it is chordless; one side of
/// every chord split stays wrapped.
inline Cycle shrink_wrapped(const Graph &g, const Colouring &f, Cycle c)
{
    bool changed = true;
    while (changed) {
        changed = false;
        const int l = c.length();
        for (int s = 0; s < l && !changed; ++s) {
            for (int t = s + 2; t < l && !changed; ++t) {
                if (s == 0 && t == l - 1)
                    continue;
                if (!g.has_edge(c[static_cast<std::size_t>(s)], c[static_cast<std::size_t>(t)]))
                    continue;
                std::vector<Vertex> a, b;
                for (int i = s; i <= t; ++i)
                    a.push_back(c[static_cast<std::size_t>(i)]);
                for (int i = t; i <= s + l; ++i)
                    b.push_back(c.at_cyclic(i));
                Cycle ca(std::move(a)), cb(std::move(b));
                bool wa = wrapped(g, f, ca), wb = wrapped(g, f, cb);
                if (!wa && !wb)
                    throw std::logic_error("shrink_wrapped: neither side of a chord is wrapped");
                if (wa && (!wb || ca.length() <= cb.length()))
                    c = ca;
                else
                    c = cb;
                changed = true;
            }
        }
    }
    return c;
}

inline NonMixingWitness make_witness(const Graph &g, const Colouring &f, const Cycle &wrapped_cycle)
{
    NonMixingWitness w;
    w.colouring = f;
    w.cycle = shrink_wrapped(g, f, wrapped_cycle).normalized();
    w.weight = cycle_weight(g, f, w.cycle);
    if (w.cycle.length() % 2 == 0)
        w.required = static_cast<long long>(w.cycle.length() / 2) * f.params.p;
    return w;
}

/// Index of the shortest basis cycle with nonzero sum of 2W(uv) - p, or -1.
inline int unbalanced_basis_cycle(const std::vector<std::vector<Edge>> &cycles, const std::vector<int> &colours, int p)
{
    int best = -1;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        long long t = 0;
        for (auto [u, v] : cycles[i])
            t += 2 * mod(colours[v] - colours[u], p) - p;
        if (t != 0 && (best < 0 || cycles[i].size() < cycles[static_cast<std::size_t>(best)].size()))
            best = static_cast<int>(i);
    }
    return best;
}

} // namespace detail

/// A wrapped cycle under f as a witness, if one exists (checked on a
/// fundamental basis, which suffices by linearity of the antisymmetric labels).
inline std::optional<NonMixingWitness> find_wrapped_cycle(const Graph &g, const Colouring &f)
{
    auto bp = bipartition(g);
    if (!bp.valid)
        return detail::make_witness(g, f, *bp.odd_cycle);
    auto basis = fundamental_cycle_basis(g);
    std::vector<std::vector<Edge>> cycles;
    for (const auto &c : basis.fundamental)
        cycles.push_back(c.edges());
    int i = detail::unbalanced_basis_cycle(cycles, f.colours, f.params.p);
    if (i < 0)
        return std::nullopt;
    return detail::make_witness(g, f, basis.fundamental[static_cast<std::size_t>(i)]);
}

struct WindOptions {
    int threads = 1;
};

struct WindResult {
    MixingVerdict verdict = MixingVerdict::vacuous;
    std::optional<NonMixingWitness> witness;
    long long colourings_checked = 0;
};

/// Mixing decision by cycle winds: not mixing iff some colouring wraps some
/// cycle. The reported witness uses the lexicographically least such colouring
/// regardless of thread count.
inline WindResult is_mixing_wind(const Graph &g, const CircularParams &params, WindOptions options = {})
{
    if (!params.in_wind_range())
        throw InvalidInput("wind characterization requires 2 < p/q < 4, got " + to_string(params));
    WindResult r;
    auto bp = bipartition(g);
    if (!bp.valid) {
        auto f = first_colouring(g, params);
        if (!f) {
            r.verdict = MixingVerdict::vacuous;
            return r;
        }
        r.colourings_checked = 1;
        r.verdict = MixingVerdict::not_mixing;
        r.witness = detail::make_witness(g, *f, *bp.odd_cycle);
        return r;
    }
    auto basis = fundamental_cycle_basis(g);
    std::vector<std::vector<Edge>> cycles;
    for (const auto &c : basis.fundamental)
        cycles.push_back(c.edges());

    if (g.order() == 0) {
        r.verdict = MixingVerdict::mixing;
        r.colourings_checked = 1;
        return r;
    }

    // partitions by the colour of vertex 0; the smallest partition with a
    // wrapped colouring wins
    const int parts = params.p;
    std::atomic<int> best_part{parts};
    std::atomic<long long> checked{0};
    std::vector<std::optional<std::pair<std::vector<int>, int>>> found(static_cast<std::size_t>(parts));
    auto scan = [&](int part) {
        long long local = 0;
        for_each_colouring(
            g, params,
            [&](const std::vector<int> &colours) {
                ++local;
                if (best_part.load(std::memory_order_relaxed) < part)
                    return false;
                int i = detail::unbalanced_basis_cycle(cycles, colours, params.p);
                if (i < 0)
                    return true;
                found[static_cast<std::size_t>(part)] = std::make_pair(colours, i);
                int cur = best_part.load();
                while (part < cur && !best_part.compare_exchange_weak(cur, part)) {
                }
                return false;
            },
            part);
        checked += local;
    };
    int threads = std::max(1, options.threads);
    if (threads == 1) {
        for (int part = 0; part < parts && best_part.load() == parts; ++part)
            scan(part);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int part = next++; part < parts; part = next++)
                    if (part < best_part.load())
                        scan(part);
            });
        for (auto &th : pool)
            th.join();
    }
    r.colourings_checked = checked.load();
    if (best_part.load() < parts) {
        const auto &[colours, i] = *found[static_cast<std::size_t>(best_part.load())];
        r.verdict = MixingVerdict::not_mixing;
        r.witness = detail::make_witness(g, Colouring{params, colours}, basis.fundamental[static_cast<std::size_t>(i)]);
        return r;
    }
    r.verdict = r.colourings_checked == 0 ? MixingVerdict::vacuous : MixingVerdict::mixing;
    return r;
}

struct WitnessCheck {
    bool valid = false;
    std::vector<std::string> failures;
};

/// Re-verifies a witness from scratch: colour range, properness, cycle
/// membership, weight arithmetic, required value and wrapping.
inline WitnessCheck verify_witness(const Graph &g, const NonMixingWitness &w)
{
    WitnessCheck check;
    const int p = w.colouring.params.p, q = w.colouring.params.q;
    const auto &col = w.colouring.colours;
    auto fail = [&](std::string what) { check.failures.push_back(std::move(what)); };

    if (q < 1 || p < 2 * q)
        fail("parameters: need p >= 2q >= 2");
    if (static_cast<int>(col.size()) != g.order())
        fail("colouring: not total");
    if (!check.failures.empty())
        return check;
    for (int c : col)
        if (c < 0 || c >= p) {
            fail("colouring: colour out of range");
            return check;
        }
    for (auto [u, v] : g.edges()) {
        int d = std::abs(col[u] - col[v]);
        d = std::min(d, p - d);
        if (d < q || d > p - q) {
            fail("colouring: improper at edge " + std::to_string(u) + "-" + std::to_string(v));
            break;
        }
    }
    const auto &cyc = w.cycle.vertices();
    const std::size_t l = cyc.size();
    bool cycle_ok = l >= 3;
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    for (std::size_t i = 0; cycle_ok && i < l; ++i) {
        Vertex a = cyc[i], b = cyc[(i + 1) % l];
        if (a < 0 || a >= g.order() || seen[a] || !g.has_edge(a, b))
            cycle_ok = false;
        else
            seen[a] = 1;
    }
    if (!cycle_ok) {
        fail("cycle: not a simple cycle of the graph");
        return check;
    }
    long long weight = 0;
    for (std::size_t i = 0; i < l; ++i)
        weight += ((col[cyc[(i + 1) % l]] - col[cyc[i]]) % p + p) % p;
    if (weight != w.weight)
        fail("weight: stated " + std::to_string(w.weight) + ", recomputed " + std::to_string(weight));
    if (l % 2 == 0) {
        long long required = static_cast<long long>(l) / 2 * p;
        if (!w.required || *w.required != required)
            fail("required: expected " + std::to_string(required));
        else if (weight == required)
            fail("wrapped: cycle weight equals the required value");
    } else if (w.required) {
        fail("required: odd cycle has no integral required weight");
    }
    check.valid = check.failures.empty();
    return check;
}

} // namespace circmix

#endif
