#ifndef CIRCMIX_PLANAR_HPP
#define CIRCMIX_PLANAR_HPP

#include "reconfig.hpp"

#include <map>
#include <random>
#include <set>

namespace circmix {

/// Combinatorial embedding: the cyclic order of neighbours around each vertex.
struct RotationSystem {
    std::vector<std::vector<Vertex>> rotation;
    std::optional<int> outer; // face index; defaults to a longest face
};

struct FaceSet {
    std::vector<std::vector<Vertex>> faces; // closed walks, first vertex not repeated
    std::vector<int> lengths;
};

/// Raised when a rotation system does not describe a plane embedding.
class InvalidEmbedding : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

namespace detail {

/// Face index of every dart (u, rotation position) and the face walks.
struct DartFaces {
    std::vector<std::vector<int>> face_of; // face_of[u][i]: face of dart u -> rotation[u][i]
    FaceSet faces;
};

inline void check_rotation(const Graph &g, const RotationSystem &rot)
{
    if (static_cast<int>(rot.rotation.size()) != g.order())
        throw InvalidEmbedding("rotation system has " + std::to_string(rot.rotation.size()) + " entries for " +
                               std::to_string(g.order()) + " vertices");
    for (Vertex v = 0; v < g.order(); ++v) {
        auto sorted = rot.rotation[v];
        std::sort(sorted.begin(), sorted.end());
        if (sorted != g.neighbours(v))
            throw InvalidEmbedding("rotation at vertex " + std::to_string(v) + " is not a permutation of its neighbours");
    }
}

inline int position(const RotationSystem &rot, Vertex v, Vertex w)
{
    const auto &r = rot.rotation[v];
    return static_cast<int>(std::find(r.begin(), r.end(), w) - r.begin());
}

inline DartFaces trace_faces(const Graph &g, const RotationSystem &rot)
{
    check_rotation(g, rot);
    DartFaces out;
    out.face_of.resize(static_cast<std::size_t>(g.order()));
    for (Vertex v = 0; v < g.order(); ++v)
        out.face_of[v].assign(rot.rotation[v].size(), -1);
    for (Vertex u = 0; u < g.order(); ++u) {
        for (std::size_t i = 0; i < rot.rotation[u].size(); ++i) {
            if (out.face_of[u][i] >= 0)
                continue;
            const int id = static_cast<int>(out.faces.faces.size());
            std::vector<Vertex> walk;
            Vertex a = u;
            int ai = static_cast<int>(i);
            while (out.face_of[a][ai] < 0) {
                out.face_of[a][ai] = id;
                walk.push_back(a);
                Vertex b = rot.rotation[a][ai];
                // next dart leaves b after a in b's rotation
                int pos = position(rot, b, a);
                int deg = static_cast<int>(rot.rotation[b].size());
                ai = (pos + 1) % deg;
                a = b;
            }
            out.faces.lengths.push_back(static_cast<int>(walk.size()));
            out.faces.faces.push_back(std::move(walk));
        }
    }
    // Euler's formula on every component with an edge
    int ncomp = 0;
    auto comp = components(g, &ncomp);
    std::vector<int> nv(static_cast<std::size_t>(ncomp), 0), ne(static_cast<std::size_t>(ncomp), 0),
        nf(static_cast<std::size_t>(ncomp), 0);
    for (Vertex v = 0; v < g.order(); ++v)
        ++nv[comp[v]];
    for (auto [u, v] : g.edges())
        ++ne[comp[u]];
    for (const auto &f : out.faces.faces)
        ++nf[comp[f.front()]];
    for (int c = 0; c < ncomp; ++c) {
        if (ne[c] == 0)
            continue;
        int euler = nv[c] - ne[c] + nf[c];
        if (euler != 2)
            throw InvalidEmbedding("rotation system is not planar: V - E + F = " + std::to_string(euler) +
                                   " (V=" + std::to_string(nv[c]) + ", E=" + std::to_string(ne[c]) +
                                   ", F=" + std::to_string(nf[c]) + ")");
    }
    return out;
}

inline int default_outer(const FaceSet &fs)
{
    int best = 0;
    for (std::size_t i = 1; i < fs.lengths.size(); ++i)
        if (fs.lengths[i] > fs.lengths[static_cast<std::size_t>(best)])
            best = static_cast<int>(i);
    return best;
}

} // namespace detail

/// Faces by next-edge-in-rotation traversal; throws InvalidEmbedding when the
/// rotation system is malformed or fails Euler's formula.
inline FaceSet faces(const Graph &g, const RotationSystem &rot) { return detail::trace_faces(g, rot).faces; }

/// Every rotation reversed (the mirror embedding).
inline RotationSystem mirror(const RotationSystem &rot)
{
    RotationSystem m = rot;
    for (auto &r : m.rotation)
        std::reverse(r.begin(), r.end());
    return m;
}

/// Rotation system restricted to the subgraph induced by `keep` (result
/// vertex i is keep[i]).
inline RotationSystem restrict_rotation(const RotationSystem &rot, const std::vector<Vertex> &keep)
{
    std::map<Vertex, Vertex> pos;
    for (std::size_t i = 0; i < keep.size(); ++i)
        pos[keep[i]] = static_cast<Vertex>(i);
    RotationSystem out;
    for (Vertex v : keep) {
        std::vector<Vertex> r;
        for (Vertex w : rot.rotation[v])
            if (auto it = pos.find(w); it != pos.end())
                r.push_back(it->second);
        out.rotation.push_back(std::move(r));
    }
    return out;
}

/// An induced subgraph with its inherited embedding; vertices[i] is the
/// original id of vertex i.
struct EmbeddedPiece {
    Graph graph;
    RotationSystem rotation;
    std::vector<Vertex> vertices;
};

struct RegionSplit {
    Cycle cycle;
    std::vector<Vertex> interior;
    std::vector<Vertex> exterior;
    EmbeddedPiece inside;  // G[V(C) + Int(C)]
    EmbeddedPiece outside; // G[V(C) + Ext(C)]

    bool separating() const { return !interior.empty() && !exterior.empty(); }
};

/// Splits the faces of a connected plane graph along the cycle c by a dual
/// flood fill; the side holding the outer face is the exterior.
inline RegionSplit region_split(const Graph &g, const RotationSystem &rot, const Cycle &c)
{
    if (!is_cycle_of(g, c))
        throw InvalidInput("region_split: not a cycle of the graph");
    if (!is_connected(g))
        throw InvalidInput("region_split: graph must be connected");
    auto df = detail::trace_faces(g, rot);
    const int nfaces = static_cast<int>(df.faces.faces.size());
    const int outer = rot.outer.value_or(detail::default_outer(df.faces));
    if (outer < 0 || outer >= nfaces)
        throw InvalidEmbedding("outer face index " + std::to_string(outer) + " out of range");

    std::set<Edge> on_cycle;
    for (auto [u, v] : c.edges())
        on_cycle.emplace(std::min(u, v), std::max(u, v));

    // dual adjacency across edges not on the cycle
    std::vector<std::vector<int>> dual(static_cast<std::size_t>(nfaces));
    for (Vertex u = 0; u < g.order(); ++u)
        for (std::size_t i = 0; i < rot.rotation[u].size(); ++i) {
            Vertex w = rot.rotation[u][i];
            if (on_cycle.count({std::min(u, w), std::max(u, w)}))
                continue;
            int a = df.face_of[u][i];
            int b = df.face_of[w][static_cast<std::size_t>(detail::position(rot, w, u))];
            dual[a].push_back(b);
        }
    auto flood = [&](int start) {
        std::vector<char> seen(static_cast<std::size_t>(nfaces), 0);
        std::vector<int> stack{start};
        seen[start] = 1;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (int h : dual[f])
                if (!seen[h]) {
                    seen[h] = 1;
                    stack.push_back(h);
                }
        }
        return seen;
    };
    Vertex c0 = c[0], c1 = c[1];
    int side_a = df.face_of[c0][static_cast<std::size_t>(detail::position(rot, c0, c1))];
    int side_b = df.face_of[c1][static_cast<std::size_t>(detail::position(rot, c1, c0))];
    auto class_a = flood(side_a);
    if (class_a[side_b])
        throw InvalidEmbedding("region_split: cycle does not separate the faces");
    const bool a_is_outside = class_a[outer] != 0;

    RegionSplit split;
    split.cycle = c;
    std::vector<char> in_cycle(static_cast<std::size_t>(g.order()), 0);
    for (Vertex v : c.vertices())
        in_cycle[v] = 1;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (in_cycle[v] || rot.rotation[v].empty())
            continue;
        bool on_a = class_a[df.face_of[v][0]] != 0;
        (on_a == a_is_outside ? split.exterior : split.interior).push_back(v);
    }

    auto make_piece = [&](const std::vector<Vertex> &side) {
        EmbeddedPiece piece;
        piece.vertices = c.vertices();
        piece.vertices.insert(piece.vertices.end(), side.begin(), side.end());
        std::sort(piece.vertices.begin(), piece.vertices.end());
        piece.graph = induced_subgraph(g, piece.vertices);
        piece.rotation = restrict_rotation(rot, piece.vertices);
        return piece;
    };
    split.inside = make_piece(split.interior);
    split.outside = make_piece(split.exterior);

    // outer faces of the pieces: for the inside piece the face on the exterior
    // side of the cycle, for the outside piece the original outer face
    auto local = [](const EmbeddedPiece &piece, Vertex v) {
        return static_cast<Vertex>(std::lower_bound(piece.vertices.begin(), piece.vertices.end(), v) -
                                   piece.vertices.begin());
    };
    auto face_of_dart = [&](const EmbeddedPiece &piece, Vertex u, Vertex w) {
        auto pf = detail::trace_faces(piece.graph, piece.rotation);
        Vertex lu = local(piece, u), lw = local(piece, w);
        return pf.face_of[lu][static_cast<std::size_t>(detail::position(piece.rotation, lu, lw))];
    };
    if (a_is_outside)
        split.inside.rotation.outer = face_of_dart(split.inside, c0, c1);
    else
        split.inside.rotation.outer = face_of_dart(split.inside, c1, c0);
    const auto &outer_walk = df.faces.faces[static_cast<std::size_t>(outer)];
    split.outside.rotation.outer =
        face_of_dart(split.outside, outer_walk[0], outer_walk[outer_walk.size() > 1 ? 1 : 0]);
    return split;
}

/// Cycles of length exactly L with vertices strictly inside and outside.
inline std::vector<Cycle> separating_cycles(const Graph &g, const RotationSystem &rot, int length)
{
    std::vector<Cycle> out;
    for_each_cycle(g, length, [&](const Cycle &c) {
        if (c.length() == length && region_split(g, rot, c).separating())
            out.push_back(c);
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Minimal non-mixing even cycle

enum class CycleMixMethod { oracle, wind };

/// Whether C_L is (p, q)-mixing, by closed walks of length L in G_{p,q}: the
/// cycle is not mixing iff some closed walk has weight other than L p / 2.
inline bool cycle_mixing_by_walks(int length, const CircularParams &params)
{
    const int p = params.p;
    const int max_weight = length * p;
    // reach[c][w]: a walk 0 -> c of the current length with weight w exists
    std::vector<std::vector<char>> reach(static_cast<std::size_t>(p), std::vector<char>(static_cast<std::size_t>(max_weight) + 1, 0));
    reach[0][0] = 1;
    for (int step = 0; step < length; ++step) {
        std::vector<std::vector<char>> next(static_cast<std::size_t>(p), std::vector<char>(static_cast<std::size_t>(max_weight) + 1, 0));
        for (int c = 0; c < p; ++c)
            for (int w = 0; w <= max_weight; ++w) {
                if (!reach[c][w])
                    continue;
                for (int d = params.q; d <= p - params.q; ++d)
                    if (w + d <= max_weight)
                        next[(c + d) % p][w + d] = 1;
            }
        reach = std::move(next);
    }
    for (int w = 0; w <= max_weight; ++w)
        if (reach[0][w] && 2 * w != length * p)
            return false;
    return true;
}

/// Smallest even L with C_L not (p, q)-mixing; searched up to p (p even) or
/// 2p (p odd), where a non-mixing cycle always exists.
inline int minimal_non_mixing_even_cycle(const CircularParams &params, CycleMixMethod method = CycleMixMethod::oracle,
                                         long long budget = kDefaultStateBudget)
{
    if (!params.in_wind_range())
        throw InvalidInput("minimal non-mixing even cycle requires 2 < p/q < 4, got " + to_string(params));
    const int bound = params.p % 2 == 0 ? params.p : 2 * params.p;
    for (int len = 4; len <= bound; len += 2) {
        bool mixing = method == CycleMixMethod::oracle
                          ? is_mixing_oracle(cycle_graph(len), params, budget).verdict == MixingVerdict::mixing
                          : cycle_mixing_by_walks(len, params);
        if (!mixing)
            return len;
    }
    throw std::logic_error("no non-mixing even cycle within the proven bound");
}

struct FaceCriterion {
    int long_faces = 0;
    MixingVerdict verdict = MixingVerdict::mixing;
};

/// Mixing iff at most one face has length >= threshold.
inline FaceCriterion face_criterion(const FaceSet &fs, int threshold)
{
    FaceCriterion r;
    for (int len : fs.lengths)
        if (len >= threshold)
            ++r.long_faces;
    r.verdict = r.long_faces <= 1 ? MixingVerdict::mixing : MixingVerdict::not_mixing;
    return r;
}

/// Face-count decision for a 2-connected bipartite plane graph with no short
/// separating even cycles, valid for all 2 < p/q < 4. Throws when a hypothesis
/// fails.
inline FaceCriterion mixing_by_faces(const Graph &g, const RotationSystem &rot, const CircularParams &params,
                                     CycleMixMethod method = CycleMixMethod::wind)
{
    const int threshold = minimal_non_mixing_even_cycle(params, method);
    if (!is_bipartite(g))
        throw InvalidInput("face criterion requires a bipartite graph");
    auto bd = blocks(g);
    if (g.order() < 3 || bd.blocks.size() != 1 || static_cast<int>(bd.blocks[0].vertices.size()) != g.order())
        throw InvalidInput("face criterion requires a 2-connected graph");
    for (int len = 4; len < threshold; len += 2)
        if (!separating_cycles(g, rot, len).empty())
            throw InvalidInput("face criterion requires no separating " + std::to_string(len) + "-cycle");
    return face_criterion(faces(g, rot), threshold);
}

// ---------------------------------------------------------------------------
// Planar decider for 3 <= p/q < 4

struct ExplanationNode {
    std::string kind; // "graph", "block", "bridge", "split", "faces", "edgeless"
    std::string detail;
    std::vector<Vertex> vertices; // original vertex ids
    MixingVerdict verdict = MixingVerdict::mixing;
    std::vector<ExplanationNode> children;
};

struct DeciderOptions {
    /// When set, separating 4-cycles are chosen pseudo-randomly with this seed
    /// instead of first-in-enumeration-order.
    std::optional<unsigned> split_seed;
};

struct DeciderResult {
    MixingVerdict verdict = MixingVerdict::mixing;
    ExplanationNode explanation;
};

namespace detail {

inline std::string join(const std::vector<Vertex> &vs)
{
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i)
        s += (i ? " " : "") + std::to_string(vs[i]);
    return s;
}

inline std::vector<Vertex> to_original(const EmbeddedPiece &piece, const std::vector<Vertex> &local)
{
    std::vector<Vertex> out;
    for (Vertex v : local)
        out.push_back(piece.vertices[static_cast<std::size_t>(v)]);
    return out;
}

inline ExplanationNode decide_piece(const EmbeddedPiece &piece, int threshold, std::mt19937 *rng)
{
    ExplanationNode node;
    node.vertices = piece.vertices;
    auto separating = separating_cycles(piece.graph, piece.rotation, 4);
    if (!separating.empty()) {
        std::size_t pick = 0;
        if (rng)
            pick = std::uniform_int_distribution<std::size_t>(0, separating.size() - 1)(*rng);
        const Cycle &c = separating[pick];
        auto split = region_split(piece.graph, piece.rotation, c);
        auto lift = [&](const EmbeddedPiece &sub) {
            EmbeddedPiece out = sub;
            for (auto &v : out.vertices)
                v = piece.vertices[static_cast<std::size_t>(v)];
            return out;
        };
        node.kind = "split";
        node.detail = "separating 4-cycle " + join(to_original(piece, c.vertices()));
        node.children.push_back(decide_piece(lift(split.inside), threshold, rng));
        node.children.push_back(decide_piece(lift(split.outside), threshold, rng));
        node.children[0].detail = "interior: " + node.children[0].detail;
        node.children[1].detail = "exterior: " + node.children[1].detail;
        node.verdict = node.children[0].verdict == MixingVerdict::mixing &&
                               node.children[1].verdict == MixingVerdict::mixing
                           ? MixingVerdict::mixing
                           : MixingVerdict::not_mixing;
        return node;
    }
    auto fs = faces(piece.graph, piece.rotation);
    auto fc = face_criterion(fs, threshold);
    node.kind = "faces";
    std::string lens;
    for (int len : fs.lengths)
        lens += (lens.empty() ? "" : ",") + std::to_string(len);
    node.detail = "face lengths [" + lens + "]; " + std::to_string(fc.long_faces) + " face(s) of length >= " +
                  std::to_string(threshold);
    node.verdict = fc.verdict;
    return node;
}

} // namespace detail

/// Polynomial mixing decision for bipartite plane graphs at 3 <= p/q < 4:
/// blocks, then recursive splitting at separating 4-cycles, then the face
/// count on every 4-cycle-irreducible piece.
inline DeciderResult planar_mixing_decider(const Graph &g, const RotationSystem &rot, const CircularParams &params,
                                           DeciderOptions options = {})
{
    if (!params.in_planar_range())
        throw InvalidInput("planar decider requires 3 <= p/q < 4, got " + to_string(params));
    auto bp = bipartition(g);
    if (!bp.valid)
        throw InvalidInput("planar decider requires a bipartite graph; use the wind or oracle method");
    detail::trace_faces(g, rot); // validates the embedding
    const int threshold = minimal_non_mixing_even_cycle(params, CycleMixMethod::wind);

    std::optional<std::mt19937> rng;
    if (options.split_seed)
        rng.emplace(*options.split_seed);

    DeciderResult result;
    ExplanationNode &root = result.explanation;
    root.kind = "graph";
    for (Vertex v = 0; v < g.order(); ++v)
        root.vertices.push_back(v);
    root.detail = "non-mixing threshold: faces of length >= " + std::to_string(threshold);
    if (g.size() == 0) {
        root.kind = "edgeless";
        root.detail = "no edges";
        return result;
    }
    for (const auto &b : blocks(g).blocks) {
        if (b.edges.size() == 1) {
            ExplanationNode leaf;
            leaf.kind = "bridge";
            leaf.vertices = b.vertices;
            leaf.detail = "single edge";
            root.children.push_back(std::move(leaf));
            continue;
        }
        EmbeddedPiece piece;
        piece.vertices = b.vertices;
        piece.graph = induced_subgraph(g, b.vertices);
        piece.rotation = restrict_rotation(rot, b.vertices);
        if (static_cast<int>(b.vertices.size()) == g.order())
            piece.rotation.outer = rot.outer;
        auto node = detail::decide_piece(piece, threshold, rng ? &*rng : nullptr);
        ExplanationNode block;
        block.kind = "block";
        block.vertices = b.vertices;
        block.verdict = node.verdict;
        block.detail = std::to_string(b.vertices.size()) + " vertices";
        block.children.push_back(std::move(node));
        root.children.push_back(std::move(block));
    }
    for (const auto &c : root.children)
        if (c.verdict != MixingVerdict::mixing)
            root.verdict = MixingVerdict::not_mixing;
    result.verdict = root.verdict;
    return result;
}

inline void format_explanation(const ExplanationNode &node, std::string &out, int indent = 0)
{
    out += std::string(static_cast<std::size_t>(indent) * 2, ' ') + node.kind + " {" + detail::join(node.vertices) +
           "}: " + to_string(node.verdict);
    if (!node.detail.empty())
        out += " -- " + node.detail;
    out += '\n';
    for (const auto &c : node.children)
        format_explanation(c, out, indent + 1);
}

} // namespace circmix

#endif
