#include "support.hpp"

#include <circmix/fold.hpp>
#include <circmix/generators.hpp>
#include <circmix/planar.hpp>

#include <gtest/gtest.h>

using namespace circmix;
using namespace testing_support;

namespace {

std::multiset<int> lengths_of(const FaceSet &fs) { return {fs.lengths.begin(), fs.lengths.end()}; }

std::vector<Generated> catalogue()
{
    std::vector<Generated> out;
    for (int len = 4; len <= 12; len += 2)
        out.push_back(gen_cycle(len));
    for (int a = 1; a <= 3; ++a)
        for (int b = a; b <= 4; ++b)
            if (a * b >= 4)
                out.push_back(gen_grid(a, b));
    out.push_back(gen_cube());
    out.push_back(gen_theta(2, 2, 2));
    out.push_back(gen_theta(1, 3, 3));
    out.push_back(gen_theta(2, 4, 2));
    out.push_back(gen_theta(3, 3, 5));
    out.push_back(gen_theta(2, 2, 6));
    out.push_back(gen_c4xy());
    out.push_back(gen_c4xy(true));
    return out;
}

} // namespace

TEST(Faces, Examples)
{
    auto c6 = gen_cycle(6);
    EXPECT_EQ(lengths_of(faces(c6.graph, *c6.rotation)), (std::multiset<int>{6, 6}));
    auto cube = gen_cube();
    auto fs = faces(cube.graph, *cube.rotation);
    EXPECT_EQ(lengths_of(fs), (std::multiset<int>{4, 4, 4, 4, 4, 4}));
    auto grid = gen_grid(2, 3);
    EXPECT_EQ(lengths_of(faces(grid.graph, *grid.rotation)), (std::multiset<int>{4, 4, 6}));
}

TEST(Faces, MatchIndependentTraversal)
{
    for (const auto &gen : catalogue()) {
        auto fs = faces(gen.graph, *gen.rotation);
        std::multiset<int> ours = lengths_of(fs);
        auto theirs = face_lengths(gen.graph, gen.rotation->rotation);
        EXPECT_EQ(ours, std::multiset<int>(theirs.begin(), theirs.end())) << gen.name;
        EXPECT_EQ(std::accumulate(fs.lengths.begin(), fs.lengths.end(), 0), 2 * gen.graph.size());
        EXPECT_EQ(gen.graph.order() - gen.graph.size() + static_cast<int>(fs.faces.size()), 2);
        if (blocks(gen.graph).blocks.size() == 1 && gen.graph.size() >= 3) {
            for (const auto &f : fs.faces)
                ASSERT_TRUE(is_cycle_of(gen.graph, Cycle(f))) << gen.name;
        }
    }
}

TEST(Faces, RejectsInvalidRotations)
{
    auto cube = gen_cube();
    auto rot = *cube.rotation;
    std::swap(rot.rotation[0][0], rot.rotation[0][1]);
    try {
        faces(cube.graph, rot);
        FAIL() << "non-planar rotation accepted";
    } catch (const InvalidEmbedding &e) {
        EXPECT_NE(std::string(e.what()).find("V - E + F"), std::string::npos);
    }
    auto missing = *cube.rotation;
    missing.rotation[0].pop_back();
    EXPECT_THROW(faces(cube.graph, missing), InvalidEmbedding);
    RotationSystem shortrot;
    EXPECT_THROW(faces(cube.graph, shortrot), InvalidEmbedding);
}

TEST(Faces, EveryEnumeratedEmbeddingPassesEuler)
{
    auto grid = gen_grid(2, 3);
    auto all = all_plane_rotations(grid.graph);
    EXPECT_GT(all.size(), 1u);
    for (const auto &rot : all)
        EXPECT_EQ(lengths_of(faces(grid.graph, rot)).size(), 3u);
}

TEST(RegionSplit, WholeCycleIsNotSeparating)
{
    auto c6 = gen_cycle(6);
    auto split = region_split(c6.graph, *c6.rotation, Cycle({0, 1, 2, 3, 4, 5}));
    EXPECT_TRUE(split.interior.empty());
    EXPECT_TRUE(split.exterior.empty());
    EXPECT_FALSE(split.separating());
}

TEST(RegionSplit, Figure1EightCycle)
{
    auto fig = gen_figure1();
    auto split = region_split(fig.graph, *fig.rotation, Cycle({0, 1, 2, 3, 4, 5, 6, 7}));
    EXPECT_EQ(split.interior, (std::vector<Vertex>{9, 10, 11, 12, 13}));
    EXPECT_EQ(split.exterior, (std::vector<Vertex>{8}));
    EXPECT_EQ(split.inside.graph.order(), 13);
    EXPECT_EQ(split.outside.graph.order(), 9);
    EXPECT_EQ(lengths_of(faces(split.inside.graph, split.inside.rotation)), (std::multiset<int>{8, 10, 10}));
    EXPECT_EQ(lengths_of(faces(split.outside.graph, split.outside.rotation)), (std::multiset<int>{4, 4, 4, 4, 8}));
}

TEST(RegionSplit, FourCycleWithTwoSides)
{
    auto g = gen_c4xy();
    auto split = region_split(g.graph, *g.rotation, Cycle({0, 1, 2, 3}));
    EXPECT_EQ(split.interior, (std::vector<Vertex>{4}));
    EXPECT_EQ(split.exterior, (std::vector<Vertex>{5}));
    auto nested = gen_c4xy(true);
    auto s2 = region_split(nested.graph, *nested.rotation, Cycle({0, 1, 2, 3}));
    EXPECT_EQ(s2.interior, (std::vector<Vertex>{4, 5}));
    EXPECT_TRUE(s2.exterior.empty());
}

TEST(RegionSplit, PartitionInvariant)
{
    for (const auto &gen : catalogue())
        for (const auto &c : enumerate_cycles(gen.graph, 8)) {
            auto s = region_split(gen.graph, *gen.rotation, c);
            std::vector<Vertex> all = c.vertices();
            all.insert(all.end(), s.interior.begin(), s.interior.end());
            all.insert(all.end(), s.exterior.begin(), s.exterior.end());
            std::sort(all.begin(), all.end());
            std::vector<Vertex> expected(static_cast<std::size_t>(gen.graph.order()));
            std::iota(expected.begin(), expected.end(), 0);
            ASSERT_EQ(all, expected) << gen.name;
            // no edge joins the two sides
            for (Vertex a : s.interior)
                for (Vertex b : s.exterior)
                    ASSERT_FALSE(gen.graph.has_edge(a, b));
            // both pieces keep valid embeddings
            faces(s.inside.graph, s.inside.rotation);
            faces(s.outside.graph, s.outside.rotation);
        }
}

TEST(RegionSplit, Errors)
{
    auto c6 = gen_cycle(6);
    EXPECT_THROW(region_split(c6.graph, *c6.rotation, Cycle({0, 1, 2})), InvalidInput);
    EXPECT_THROW(region_split(c6.graph, *c6.rotation, Cycle({0, 2, 4})), InvalidInput);
}

TEST(SeparatingCycles, Examples)
{
    auto cube = gen_cube();
    EXPECT_TRUE(separating_cycles(cube.graph, *cube.rotation, 4).empty());
    auto g = gen_c4xy();
    auto sep = separating_cycles(g.graph, *g.rotation, 4);
    // the square and the cycle through both extra vertices
    ASSERT_EQ(sep.size(), 2u);
    EXPECT_NE(std::find(sep.begin(), sep.end(), Cycle({0, 1, 2, 3})), sep.end());
    EXPECT_NE(std::find(sep.begin(), sep.end(), Cycle({0, 4, 2, 5})), sep.end());
    auto c8 = gen_cycle(8);
    EXPECT_TRUE(separating_cycles(c8.graph, *c8.rotation, 4).empty());
    auto fig = gen_figure1();
    // the 8-cycle itself and the one through the inner path and w
    auto fsep = separating_cycles(fig.graph, *fig.rotation, 8);
    EXPECT_EQ(fsep.size(), 2u);
    EXPECT_NE(std::find(fsep.begin(), fsep.end(), Cycle({0, 1, 2, 3, 4, 5, 6, 7})), fsep.end());
    EXPECT_NE(std::find(fsep.begin(), fsep.end(), Cycle({0, 9, 10, 11, 12, 13, 4, 8})), fsep.end());
}

TEST(MinimalCycle, Examples)
{
    EXPECT_EQ(minimal_non_mixing_even_cycle({5, 2}), 10);
    EXPECT_EQ(minimal_non_mixing_even_cycle({7, 2}), 6);
    EXPECT_EQ(minimal_non_mixing_even_cycle({3, 1}), 6);
    EXPECT_THROW(minimal_non_mixing_even_cycle({4, 1}), InvalidInput);
    EXPECT_THROW(minimal_non_mixing_even_cycle({4, 2}), InvalidInput);
}

TEST(MinimalCycle, WalkMethodMatchesOracle)
{
    for (auto params : {CircularParams(5, 2), CircularParams(7, 2), CircularParams(3, 1), CircularParams(7, 3),
                        CircularParams(8, 3), CircularParams(10, 3), CircularParams(11, 4), CircularParams(9, 4)})
        EXPECT_EQ(minimal_non_mixing_even_cycle(params, CycleMixMethod::wind),
                  minimal_non_mixing_even_cycle(params, CycleMixMethod::oracle))
            << to_string(params);
}

TEST(MinimalCycle, WalkCriterionMatchesOracleOnEachCycle)
{
    for (auto params : {CircularParams(5, 2), CircularParams(7, 3), CircularParams(8, 3)})
        for (int len = 4; len <= 12; len += 2)
            EXPECT_EQ(cycle_mixing_by_walks(len, params),
                      is_mixing_oracle(cycle_graph(len), params).verdict == MixingVerdict::mixing)
                << to_string(params) << " C" << len;
}

TEST(FaceCriterion, Examples)
{
    auto c10 = gen_cycle(10);
    auto r = face_criterion(faces(c10.graph, *c10.rotation), 10);
    EXPECT_EQ(r.long_faces, 2);
    EXPECT_EQ(r.verdict, MixingVerdict::not_mixing);
    auto cube = gen_cube();
    auto q = face_criterion(faces(cube.graph, *cube.rotation), 6);
    EXPECT_EQ(q.long_faces, 0);
    EXPECT_EQ(q.verdict, MixingVerdict::mixing);
    EXPECT_EQ(is_mixing_oracle(cube.graph, {7, 2}).verdict, MixingVerdict::mixing);
    auto c6 = gen_cycle(6);
    EXPECT_EQ(face_criterion(faces(c6.graph, *c6.rotation), 6).long_faces, 2);
}

TEST(FaceCriterion, HypothesisCheckedFormAtFiveTwo)
{
    auto fig = gen_figure1();
    auto split = region_split(fig.graph, *fig.rotation, Cycle({0, 1, 2, 3, 4, 5, 6, 7}));
    auto r = mixing_by_faces(split.inside.graph, split.inside.rotation, {5, 2});
    EXPECT_EQ(r.long_faces, 2);
    EXPECT_EQ(r.verdict, MixingVerdict::not_mixing);
    EXPECT_EQ(is_mixing_oracle(split.inside.graph, {5, 2}).verdict, MixingVerdict::not_mixing);
    // the whole graph has a separating 8-cycle, so the hypothesis fails
    EXPECT_THROW(mixing_by_faces(fig.graph, *fig.rotation, {5, 2}), InvalidInput);
    auto path = gen_grid(1, 4);
    EXPECT_THROW(mixing_by_faces(path.graph, *path.rotation, {5, 2}), InvalidInput);
}

TEST(FaceCriterion, HypothesisCheckedFormMatchesOracle)
{
    for (const auto &gen : catalogue())
        for (auto params : {CircularParams(5, 2), CircularParams(7, 3)}) {
            if (blocks(gen.graph).blocks.size() != 1)
                continue;
            FaceCriterion r;
            try {
                r = mixing_by_faces(gen.graph, *gen.rotation, params);
            } catch (const InvalidInput &) {
                continue;
            }
            EXPECT_EQ(r.verdict, is_mixing_oracle(gen.graph, params, 30'000'000).verdict)
                << gen.name << " " << to_string(params);
        }
}

TEST(Decider, Examples)
{
    auto c6 = gen_cycle(6);
    EXPECT_EQ(planar_mixing_decider(c6.graph, *c6.rotation, {3, 1}).verdict, MixingVerdict::not_mixing);
    auto grid = gen_grid(2, 3);
    EXPECT_EQ(planar_mixing_decider(grid.graph, *grid.rotation, {3, 1}).verdict, MixingVerdict::mixing);
    EXPECT_EQ(is_mixing_oracle(grid.graph, {3, 1}).verdict, MixingVerdict::mixing);
    auto c4xy = gen_c4xy();
    auto r = planar_mixing_decider(c4xy.graph, *c4xy.rotation, {3, 1});
    EXPECT_EQ(r.verdict, MixingVerdict::mixing);
    ASSERT_EQ(r.explanation.children.size(), 1u);
    const auto &split = r.explanation.children[0].children.at(0);
    EXPECT_EQ(split.kind, "split");
    ASSERT_EQ(split.children.size(), 2u);
    for (const auto &piece : split.children) {
        EXPECT_EQ(piece.kind, "faces");
        EXPECT_EQ(piece.verdict, MixingVerdict::mixing);
    }
    EXPECT_EQ(is_mixing_oracle(c4xy.graph, {3, 1}).verdict, MixingVerdict::mixing);
}

TEST(Decider, Errors)
{
    auto c6 = gen_cycle(6);
    EXPECT_THROW(planar_mixing_decider(c6.graph, *c6.rotation, {5, 2}), InvalidInput);
    EXPECT_THROW(planar_mixing_decider(c6.graph, *c6.rotation, {4, 1}), InvalidInput);
    auto c5 = gen_cycle(5);
    EXPECT_THROW(planar_mixing_decider(c5.graph, *c5.rotation, {3, 1}), InvalidInput);
}

TEST(Decider, BlocksAndBridges)
{
    // two 6-cycles joined by a bridge: each block is non-mixing
    Graph g(12, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {6, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 11}, {11, 6},
                 {0, 6}});
    std::vector<std::pair<double, double>> pos;
    for (int i = 0; i < 6; ++i)
        pos.emplace_back(std::cos(i * 1.047) - 2, std::sin(i * 1.047));
    for (int i = 0; i < 6; ++i)
        pos.emplace_back(std::cos(i * 1.047 + 3.14159) + 2, std::sin(i * 1.047 + 3.14159));
    auto rot = rotation_from_positions(g, pos);
    auto r = planar_mixing_decider(g, rot, {3, 1});
    EXPECT_EQ(r.verdict, MixingVerdict::not_mixing);
    EXPECT_EQ(r.explanation.children.size(), 3u);
    EXPECT_EQ(is_mixing_oracle(g, {3, 1}).verdict, MixingVerdict::not_mixing);

    auto tree = gen_grid(1, 5);
    EXPECT_EQ(planar_mixing_decider(tree.graph, *tree.rotation, {3, 1}).verdict, MixingVerdict::mixing);
    Graph empty(3);
    RotationSystem none{{{}, {}, {}}, std::nullopt};
    EXPECT_EQ(planar_mixing_decider(empty, none, {3, 1}).verdict, MixingVerdict::mixing);
}

TEST(Decider, MatchesOracleOnCatalogue)
{
    for (const auto &gen : catalogue())
        for (auto params : {CircularParams(3, 1), CircularParams(7, 2)}) {
            auto d = planar_mixing_decider(gen.graph, *gen.rotation, params).verdict;
            auto o = is_mixing_oracle(gen.graph, params, 30'000'000).verdict;
            EXPECT_EQ(d, o) << gen.name << " " << to_string(params);
        }
}

TEST(Decider, IndependentOfEmbeddingAndSplitOrder)
{
    for (const auto &gen : catalogue()) {
        if (gen.graph.order() > 10)
            continue;
        auto rotations = all_plane_rotations(gen.graph, 5000);
        for (auto params : {CircularParams(3, 1), CircularParams(7, 2)}) {
            auto base = planar_mixing_decider(gen.graph, *gen.rotation, params).verdict;
            for (const auto &rot : rotations)
                ASSERT_EQ(planar_mixing_decider(gen.graph, rot, params).verdict, base) << gen.name;
            for (unsigned seed = 1; seed <= 5; ++seed) {
                DeciderOptions options;
                options.split_seed = seed;
                ASSERT_EQ(planar_mixing_decider(gen.graph, *gen.rotation, params, options).verdict, base);
            }
        }
    }
}

TEST(Decider, RandomSubgraphsOfGridsMatchOracle)
{
    std::mt19937 rng(27);
    auto grid = gen_grid(3, 4);
    for (int i = 0; i < 40; ++i) {
        std::vector<Edge> keep;
        for (auto e : grid.graph.edges())
            if (rng() % 5 != 0)
                keep.push_back(e);
        Graph g(grid.graph.order(), keep);
        RotationSystem rot;
        for (Vertex v = 0; v < g.order(); ++v) {
            std::vector<Vertex> r;
            for (Vertex w : grid.rotation->rotation[v])
                if (g.has_edge(v, w))
                    r.push_back(w);
            rot.rotation.push_back(r);
        }
        ASSERT_EQ(planar_mixing_decider(g, rot, {3, 1}).verdict, is_mixing_oracle(g, {3, 1}).verdict);
    }
}

TEST(Decomposition, EdgeCutsetsComposeMixing)
{
    // if an edge uv separates G and both sides are mixing, so is G
    std::vector<Graph> graphs;
    for (const auto &gen : catalogue())
        graphs.push_back(gen.graph);
    graphs.push_back(Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 5}, {5, 4}, {4, 3}}));
    int composed = 0;
    for (const auto &g : graphs)
        for (auto [u, v] : g.edges()) {
            std::vector<Vertex> rest;
            for (Vertex w = 0; w < g.order(); ++w)
                if (w != u && w != v)
                    rest.push_back(w);
            int count = 0;
            auto comp = components(induced_subgraph(g, rest), &count);
            if (count < 2)
                continue;
            std::vector<Vertex> one{u, v}, two{u, v};
            for (std::size_t i = 0; i < rest.size(); ++i)
                (comp[i] == 0 ? one : two).push_back(rest[i]);
            std::sort(one.begin(), one.end());
            std::sort(two.begin(), two.end());
            for (auto params : {CircularParams(3, 1), CircularParams(5, 2), CircularParams(7, 3)}) {
                bool m1 = is_mixing_oracle(induced_subgraph(g, one), params).verdict == MixingVerdict::mixing;
                bool m2 = is_mixing_oracle(induced_subgraph(g, two), params).verdict == MixingVerdict::mixing;
                if (m1 && m2) {
                    ++composed;
                    ASSERT_EQ(is_mixing_oracle(g, params, 30'000'000).verdict, MixingVerdict::mixing);
                }
            }
        }
    EXPECT_GT(composed, 0);
}

TEST(Decomposition, FoldingAcrossAFaceStaysPlane)
{
    // folding two vertices at distance 2 on a common face keeps a plane graph:
    // the folded graph of every 4-face diagonal of the cube is still planar
    auto cube = gen_cube();
    auto fs = faces(cube.graph, *cube.rotation);
    for (const auto &f : fs.faces) {
        ASSERT_EQ(distance(cube.graph, f[0], f[2]).value_or(-1), 2);
        Graph h = elementary_fold(cube.graph, f[0], f[2]).first;
        EXPECT_FALSE(all_plane_rotations(h, 100000).empty());
    }
}
