#ifndef CIRCMIX_CIRCULAR_HPP
#define CIRCMIX_CIRCULAR_HPP

#include "graph.hpp"

#include <bit>
#include <cstdint>
#include <sstream>

namespace circmix {

/// (p, q) parameters of a circular clique. Never reduced by gcd.
struct CircularParams {
    int p = 0;
    int q = 0;

    CircularParams() = default;
    CircularParams(int p_, int q_) : p(p_), q(q_)
    {
        if (q_ < 1 || p_ < 1)
            throw InvalidInput("circular parameters must be positive");
        if (p_ < 2 * q_)
            throw InvalidInput("circular parameters need p >= 2q, got (" + std::to_string(p_) + "," +
                               std::to_string(q_) + ")");
    }

    double ratio() const { return static_cast<double>(p) / q; }
    /// 2 < p/q < 4
    bool in_wind_range() const { return 2 * q < p && p < 4 * q; }
    /// 2 <= p/q < 4
    bool in_reconfig_range() const { return 2 * q <= p && p < 4 * q; }
    /// 3 <= p/q < 4
    bool in_planar_range() const { return 3 * q <= p && p < 4 * q; }

    friend bool operator==(const CircularParams &, const CircularParams &) = default;
};

inline std::string to_string(const CircularParams &params)
{
    return "(" + std::to_string(params.p) + "," + std::to_string(params.q) + ")";
}

inline int circular_distance(int x, int y, int p)
{
    int d = x > y ? x - y : y - x;
    return std::min(d, p - d);
}

inline bool colours_compatible(int x, int y, const CircularParams &params)
{
    int d = circular_distance(x, y, params.p);
    return params.q <= d && d <= params.p - params.q;
}

/// The circular clique G_{p,q}.
inline Graph circular_clique(const CircularParams &params)
{
    std::vector<Edge> es;
    for (int u = 0; u < params.p; ++u)
        for (int v = u + 1; v < params.p; ++v)
            if (colours_compatible(u, v, params))
                es.emplace_back(u, v);
    return Graph(params.p, es);
}

/// Vertex -> colour in 0..p-1, with its parameters.
struct Colouring {
    CircularParams params;
    std::vector<int> colours;

    int operator[](Vertex v) const { return colours[static_cast<std::size_t>(v)]; }
    int size() const { return static_cast<int>(colours.size()); }
    friend bool operator==(const Colouring &, const Colouring &) = default;
};

struct ColouringCheck {
    bool proper = false;
    std::optional<Edge> violation;
};

inline ColouringCheck validate_colouring(const Graph &g, const Colouring &f)
{
    if (f.size() != g.order())
        throw InvalidInput("colouring is not total: " + std::to_string(f.size()) + " colours for " +
                           std::to_string(g.order()) + " vertices");
    for (int c : f.colours)
        if (c < 0 || c >= f.params.p)
            throw InvalidInput("colour " + std::to_string(c) + " out of range for p=" + std::to_string(f.params.p));
    for (auto [u, v] : g.edges())
        if (!colours_compatible(f[u], f[v], f.params))
            return {false, Edge{u, v}};
    return {true, std::nullopt};
}

inline bool is_proper(const Graph &g, const Colouring &f) { return validate_colouring(g, f).proper; }

inline int mod(long long a, int p)
{
    long long r = a % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

/// Directed weight W(uv, f) = (f(v) - f(u)) mod p.
inline int edge_weight(const Graph &g, const Colouring &f, Vertex u, Vertex v)
{
    if (!g.has_edge(u, v))
        throw InvalidInput("edge_weight: (" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
    return mod(f[v] - f[u], f.params.p);
}

/// Sum of directed edge weights along a walk x0, x1, ..., xl.
inline long long walk_weight(const Graph &g, const Colouring &f, const std::vector<Vertex> &walk)
{
    long long total = 0;
    for (std::size_t i = 1; i < walk.size(); ++i) {
        if (!g.has_edge(walk[i - 1], walk[i]))
            throw InvalidInput("walk_weight: consecutive vertices " + std::to_string(walk[i - 1]) + "," +
                               std::to_string(walk[i]) + " are not adjacent");
        total += mod(f[walk[i]] - f[walk[i - 1]], f.params.p);
    }
    return total;
}

/// Weight W(C, f) along the cycle's stored orientation.
inline long long cycle_weight(const Graph &g, const Colouring &f, const Cycle &c)
{
    std::vector<Vertex> closed = c.vertices();
    if (!closed.empty())
        closed.push_back(closed.front());
    return walk_weight(g, f, closed);
}

struct WindReport {
    Cycle cycle;
    long long weight = 0;
    long long wind = 0;
    std::optional<long long> required; // nullopt marks an odd-length cycle
    bool wrapped = false;
};

inline WindReport cycle_wind(const Graph &g, const Colouring &f, const Cycle &c)
{
    if (!is_cycle_of(g, c))
        throw InvalidInput("cycle_wind: not a cycle of the graph");
    WindReport r;
    r.cycle = c;
    r.weight = cycle_weight(g, f, c);
    if (r.weight % f.params.p != 0)
        throw std::logic_error("cycle weight not divisible by p; colouring is not proper");
    r.wind = r.weight / f.params.p;
    if (c.length() % 2 == 0) {
        r.required = static_cast<long long>(c.length() / 2) * f.params.p;
        r.wrapped = r.weight != *r.required;
    } else {
        r.wrapped = true;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Enumeration

inline constexpr int kMaxEnumerationColours = 64;

/// compat[c] has bit d set iff colours c and d are adjacent in G_{p,q}.
inline std::vector<std::uint64_t> compatibility_masks(const CircularParams &params)
{
    if (params.p > kMaxEnumerationColours)
        throw InvalidInput("colour enumeration supports p <= 64");
    std::vector<std::uint64_t> compat(static_cast<std::size_t>(params.p), 0);
    for (int c = 0; c < params.p; ++c)
        for (int d = 0; d < params.p; ++d)
            if (colours_compatible(c, d, params))
                compat[c] |= std::uint64_t{1} << d;
    return compat;
}

inline std::uint64_t all_colours_mask(int p) { return p == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p) - 1; }

/// Visits every proper colouring in lexicographic order of the colour vector,
/// by backtracking with forward checking. The visitor returns false to stop.
/// When `first_colour` is given only colourings with f(0) equal to it are
/// visited (the partitioning used for parallel consumption).
template <typename Visitor>
void for_each_colouring(const Graph &g, const CircularParams &params, Visitor &&visit,
                        std::optional<int> first_colour = std::nullopt)
{
    const int n = g.order();
    const auto compat = compatibility_masks(params);
    const std::uint64_t full = all_colours_mask(params.p);
    std::vector<int> colours(static_cast<std::size_t>(n), -1);
    if (n == 0) {
        visit(colours);
        return;
    }
    // domains[depth][v]: allowed colours of v once vertices < depth are fixed
    std::vector<std::vector<std::uint64_t>> domains(static_cast<std::size_t>(n) + 1,
                                                    std::vector<std::uint64_t>(static_cast<std::size_t>(n), full));
    if (first_colour) {
        if (*first_colour < 0 || *first_colour >= params.p)
            return;
        domains[0][0] = std::uint64_t{1} << *first_colour;
    }
    std::vector<std::uint64_t> remaining(static_cast<std::size_t>(n), 0);
    int depth = 0;
    remaining[0] = domains[0][0];
    while (depth >= 0) {
        if (remaining[depth] == 0) {
            --depth;
            continue;
        }
        int c = std::countr_zero(remaining[depth]);
        remaining[depth] &= remaining[depth] - 1;
        colours[depth] = c;
        auto &next = domains[depth + 1];
        next = domains[depth];
        bool wiped = false;
        for (Vertex w : g.neighbours(depth)) {
            if (w > depth) {
                next[w] &= compat[c];
                if (next[w] == 0) {
                    wiped = true;
                    break;
                }
            }
        }
        if (wiped)
            continue;
        if (depth + 1 == n) {
            if (!visit(static_cast<const std::vector<int> &>(colours)))
                return;
            continue;
        }
        ++depth;
        remaining[depth] = domains[depth][depth];
    }
}

inline std::vector<Colouring> enumerate_colourings(const Graph &g, const CircularParams &params)
{
    std::vector<Colouring> out;
    for_each_colouring(g, params, [&](const std::vector<int> &c) {
        out.push_back(Colouring{params, c});
        return true;
    });
    return out;
}

inline std::optional<Colouring> first_colouring(const Graph &g, const CircularParams &params)
{
    std::optional<Colouring> out;
    for_each_colouring(g, params, [&](const std::vector<int> &c) {
        out = Colouring{params, c};
        return false;
    });
    return out;
}

inline long long count_colourings(const Graph &g, const CircularParams &params)
{
    long long count = 0;
    for_each_colouring(g, params, [&](const std::vector<int> &) {
        ++count;
        return true;
    });
    return count;
}

// ---------------------------------------------------------------------------
// Colour symmetries

/// f + c mod p; every edge weight is preserved.
inline Colouring shift(const Colouring &f, int c)
{
    Colouring g = f;
    for (auto &x : g.colours)
        x = mod(static_cast<long long>(x) + c, f.params.p);
    return g;
}

/// (p - f) mod p; every edge weight w becomes p - w.
inline Colouring reflect(const Colouring &f)
{
    Colouring g = f;
    for (auto &x : g.colours)
        x = mod(f.params.p - x, f.params.p);
    return g;
}

// ---------------------------------------------------------------------------
// Text form: one `v=c` line per vertex.

inline std::string format_colouring(const Colouring &f, const std::vector<std::string> *labels = nullptr)
{
    std::ostringstream out;
    for (int v = 0; v < f.size(); ++v)
        out << (labels ? (*labels)[static_cast<std::size_t>(v)] : std::to_string(v)) << '=' << f[v] << '\n';
    return out.str();
}

} // namespace circmix

#endif
