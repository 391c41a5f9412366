#ifndef CIRCMIX_GENERATORS_HPP
#define CIRCMIX_GENERATORS_HPP

#include "planar.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace circmix {

/// A generated graph, with an embedding when the family is planar.
struct Generated {
    std::string name;
    Graph graph;
    std::optional<RotationSystem> rotation;
};

/// Counter-clockwise neighbour order at each vertex of a straight-line drawing.
inline RotationSystem rotation_from_positions(const Graph &g, const std::vector<std::pair<double, double>> &pos)
{
    RotationSystem rot;
    for (Vertex v = 0; v < g.order(); ++v) {
        auto r = g.neighbours(v);
        auto angle = [&](Vertex w) {
            return std::atan2(pos[w].second - pos[v].second, pos[w].first - pos[v].first);
        };
        std::sort(r.begin(), r.end(), [&](Vertex a, Vertex b) { return angle(a) < angle(b); });
        rot.rotation.push_back(std::move(r));
    }
    return rot;
}

namespace detail {

inline std::pair<double, double> polar(double radius, double angle)
{
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// Index of the first face whose walk visits all of `vs`.
inline int face_with(const Graph &g, const RotationSystem &rot, std::vector<Vertex> vs)
{
    auto fs = faces(g, rot);
    for (std::size_t i = 0; i < fs.faces.size(); ++i) {
        const auto &f = fs.faces[i];
        if (std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return std::find(f.begin(), f.end(), v) != f.end(); }))
            return static_cast<int>(i);
    }
    throw std::logic_error("no face visits the requested vertices");
}

} // namespace detail

inline Generated gen_cycle(int length)
{
    Graph g = cycle_graph(length);
    std::vector<std::pair<double, double>> pos;
    for (int i = 0; i < length; ++i)
        pos.push_back(detail::polar(1.0, 2 * std::numbers::pi * i / length));
    return {"cycle " + std::to_string(length), g, rotation_from_positions(g, pos)};
}

inline Generated gen_clique(const CircularParams &params)
{
    return {"clique " + std::to_string(params.p) + " " + std::to_string(params.q), circular_clique(params),
            std::nullopt};
}

/// a x b grid; vertex r * b + c sits in row r, column c.
inline Generated gen_grid(int a, int b)
{
    if (a < 1 || b < 1)
        throw InvalidInput("grid dimensions must be positive");
    std::vector<Edge> es;
    std::vector<std::pair<double, double>> pos;
    for (int r = 0; r < a; ++r)
        for (int c = 0; c < b; ++c) {
            pos.emplace_back(c, -r);
            if (c + 1 < b)
                es.emplace_back(r * b + c, r * b + c + 1);
            if (r + 1 < a)
                es.emplace_back(r * b + c, (r + 1) * b + c);
        }
    Graph g(a * b, es);
    return {"grid " + std::to_string(a) + " " + std::to_string(b), g, rotation_from_positions(g, pos)};
}

/// The 3-cube: outer square 0..3, inner square 4..7, spoke i -- i + 4.
inline Generated gen_cube()
{
    std::vector<Edge> es;
    std::vector<std::pair<double, double>> pos(8);
    for (int i = 0; i < 4; ++i) {
        es.emplace_back(i, (i + 1) % 4);
        es.emplace_back(4 + i, 4 + (i + 1) % 4);
        es.emplace_back(i, 4 + i);
        double angle = std::numbers::pi / 4 + std::numbers::pi / 2 * i;
        pos[static_cast<std::size_t>(i)] = detail::polar(2.0, angle);
        pos[static_cast<std::size_t>(4 + i)] = detail::polar(1.0, angle);
    }
    Graph g(8, es);
    return {"cube", g, rotation_from_positions(g, pos)};
}

/// Two poles 0 and 1 joined by three internally disjoint paths of the given
/// lengths, drawn in the given order from bottom to top.
inline Generated gen_theta(int a, int b, int c)
{
    std::array<int, 3> lengths{a, b, c};
    int direct = 0;
    for (int len : lengths) {
        if (len < 1)
            throw InvalidInput("theta path lengths must be positive");
        direct += len == 1;
    }
    if (direct > 1)
        throw InvalidInput("theta graph allows at most one path of length 1");
    std::vector<Edge> es;
    std::vector<std::pair<double, double>> pos{{-1.0, 0.0}, {1.0, 0.0}};
    int next = 2;
    double slot = -1.0;
    for (int j = 0; j < 3; ++j) {
        const int len = lengths[static_cast<std::size_t>(j)];
        // a direct edge is drawn straight; subdivided paths take the remaining heights
        double height = 0.0;
        if (len > 1) {
            height = slot;
            slot += direct ? 2.0 : 1.0;
        }
        Vertex prev = 0;
        for (int i = 1; i < len; ++i) {
            es.emplace_back(prev, next);
            double x = -1.0 + 2.0 * i / len;
            pos.emplace_back(x, height);
            prev = next++;
        }
        es.emplace_back(prev, 1);
    }
    Graph g(next, es);
    return {"theta " + std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(c), g,
            rotation_from_positions(g, pos)};
}

/// 4-cycle 0,1,2,3 plus x = 4 and y = 5 both adjacent to 0 and 2. By default x
/// is drawn inside the 4-cycle and y outside; `both_inside` nests both.
inline Generated gen_c4xy(bool both_inside = false)
{
    std::vector<Edge> es{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 0}, {4, 2}, {5, 0}, {5, 2}};
    Graph g(6, es);
    std::vector<std::pair<double, double>> pos{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    if (both_inside) {
        pos.emplace_back(0, 0.3);
        pos.emplace_back(0, -0.3);
    } else {
        pos.emplace_back(0, 0);
        pos.emplace_back(0, 3);
    }
    auto rot = rotation_from_positions(g, pos);
    rot.outer = both_inside ? detail::face_with(g, rot, {1, 3}) : detail::face_with(g, rot, {3, 5});
    return {both_inside ? "c4xy nested" : "c4xy", g, rot};
}

/// An 8-cycle 0..7 with bipartition (even, odd); w = 8 adjacent to every even
/// vertex; a path 0, 9, 10, 11, 12, 13, 4 of length 6 joining u = 0 and v = 4.
/// Embedded with w outside the 8-cycle and the path inside.
inline Generated gen_figure1()
{
    std::vector<Edge> es;
    std::vector<std::pair<double, double>> pos;
    for (int i = 0; i < 8; ++i) {
        es.emplace_back(i, (i + 1) % 8);
        pos.push_back(detail::polar(2.0, std::numbers::pi / 4 * i));
    }
    for (int i = 0; i < 8; i += 2)
        es.emplace_back(8, i);
    pos.emplace_back(0.0, 0.0);
    // the path is drawn around the upper half outside the circle; on the
    // sphere that side is the interior once w's side is made outer
    Vertex prev = 0;
    for (int i = 1; i <= 5; ++i) {
        es.emplace_back(prev, 8 + i);
        pos.push_back(detail::polar(3.0, std::numbers::pi / 6 * i));
        prev = 8 + i;
    }
    es.emplace_back(prev, 4);
    Graph g(14, es);
    auto rot = rotation_from_positions(g, pos);
    rot.outer = detail::face_with(g, rot, {8, 0});
    return {"figure1", g, rot};
}

} // namespace circmix

#endif
