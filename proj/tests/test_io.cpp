#include "support.hpp"

#include <circmix/generators.hpp>
#include <circmix/io.hpp>

#include <gtest/gtest.h>

using namespace circmix;
using namespace testing_support;

TEST(Parse, LabelsEdgesAndComments)
{
    auto doc = parse_document("# a path\nedge a b\nedge b c   # trailing\n\nvertices: d\n");
    EXPECT_EQ(doc.labels, (std::vector<std::string>{"a", "b", "c", "d"}));
    EXPECT_EQ(doc.graph.order(), 4);
    EXPECT_EQ(doc.graph.size(), 2);
    EXPECT_TRUE(doc.graph.has_edge(0, 1));
    EXPECT_TRUE(doc.graph.has_edge(1, 2));
    EXPECT_EQ(doc.graph.degree(3), 0);
}

TEST(Parse, CountsAndColourings)
{
    auto doc = parse_document("n: 4\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 0\nparams: 5 2\n"
                              "colouring f:\n0=0\n1=2\n2=0\n3=2\ncolouring g:\n0=1\n1=3\n2=1\n3=3\n");
    ASSERT_TRUE(doc.params);
    EXPECT_EQ(*doc.params, CircularParams(5, 2));
    EXPECT_EQ(doc.colouring("f").colours, (std::vector<int>{0, 2, 0, 2}));
    EXPECT_EQ(doc.colouring("g").colours, (std::vector<int>{1, 3, 1, 3}));
    EXPECT_THROW(doc.colouring("h"), InvalidInput);
}

TEST(Parse, ErrorsCarryLineNumbers)
{
    auto line_of = [](const std::string &text) {
        try {
            parse_document(text);
        } catch (const ParseError &e) {
            return e.line();
        }
        return -1;
    };
    EXPECT_EQ(line_of("edge a b\nedge a\n"), 2);
    EXPECT_EQ(line_of("edge a a\n"), 1);
    EXPECT_EQ(line_of("n: 2\nedge 0 1\nbogus: 3\n"), 3);
    EXPECT_EQ(line_of("n: x\n"), 1);
    EXPECT_EQ(line_of("n: 2\n0=1\n"), 2);
    EXPECT_EQ(line_of("n: 2\nparams: 3 2\n"), 2);
    EXPECT_EQ(line_of("n: 2\ncycle: 0 5\n"), 2);
    EXPECT_EQ(line_of("n: 2\nparams: 5 2\ncolouring:\n0=1\n0=2\n"), 5);
    // incomplete colourings are reported without a line
    EXPECT_EQ(line_of("n: 2\nparams: 5 2\ncolouring:\n0=1\n"), 0);
    EXPECT_THROW(read_document("/nonexistent/graph.txt"), InvalidInput);
}

TEST(Parse, RotationsAreChecked)
{
    auto c4 = gen_cycle(4);
    auto text = format_document(make_document(c4.graph, c4.rotation));
    auto doc = parse_document(text);
    ASSERT_TRUE(doc.rotation);
    EXPECT_EQ(doc.rotation->rotation, c4.rotation->rotation);
    EXPECT_THROW(parse_document("n: 3\nedge 0 1\nedge 1 2\nrotation 0: 1\nrotation 1: 0\n"), ParseError);
    EXPECT_THROW(parse_document(text + "outer: 7\n"), ParseError);
}

TEST(Format, RoundTrip)
{
    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
        Graph g = random_graph(7, 0.4, rng);
        auto doc = make_document(g);
        doc.params = CircularParams(7, 2);
        auto f = first_colouring(g, *doc.params);
        if (f)
            doc.colourings.emplace_back("f", f->colours);
        auto back = parse_document(format_document(doc));
        EXPECT_EQ(back.graph.edges(), g.edges());
        EXPECT_EQ(back.graph.order(), g.order());
        EXPECT_EQ(back.colourings, doc.colourings);
    }
    for (const auto &gen : {gen_cube(), gen_figure1(), gen_theta(2, 3, 3)}) {
        auto doc = make_document(gen.graph, gen.rotation);
        auto back = parse_document(format_document(doc));
        EXPECT_EQ(back.rotation->rotation, gen.rotation->rotation);
        EXPECT_EQ(back.rotation->outer, gen.rotation->outer);
        EXPECT_EQ(format_document(back), format_document(doc));
    }
}

TEST(Format, NamedLabelsSurvive)
{
    auto doc = parse_document("edge x y\nedge y z\nparams: 5 2\ncolouring:\nx=0\ny=2\nz=4\n");
    auto text = format_document(doc);
    EXPECT_NE(text.find("vertices: x y z"), std::string::npos);
    EXPECT_EQ(parse_document(text).colourings, doc.colourings);
}

TEST(Witness, RoundTripAndVerify)
{
    Graph c10 = cycle_graph(10);
    auto r = is_mixing_wind(c10, {5, 2});
    ASSERT_EQ(r.verdict, MixingVerdict::not_mixing);
    auto text = format_witness(make_document(c10), *r.witness, "c10.txt");
    auto doc = parse_document(text);
    EXPECT_EQ(doc.graph_ref, "c10.txt");
    auto w = witness_from_document(doc);
    EXPECT_EQ(w.colouring, r.witness->colouring);
    EXPECT_EQ(w.cycle, r.witness->cycle);
    EXPECT_EQ(w.weight, r.witness->weight);
    EXPECT_TRUE(verify_witness(doc.graph, w).valid);
}

TEST(Witness, OddCycleWitness)
{
    Graph c5 = cycle_graph(5);
    auto r = is_mixing_wind(c5, {5, 2});
    ASSERT_EQ(r.verdict, MixingVerdict::not_mixing);
    auto text = format_witness(make_document(c5), *r.witness);
    EXPECT_NE(text.find("required: odd-length"), std::string::npos);
    auto w = witness_from_document(parse_document(text));
    EXPECT_FALSE(w.required);
    EXPECT_TRUE(verify_witness(c5, w).valid);
}

TEST(Witness, CorruptionIsDetected)
{
    Graph c10 = cycle_graph(10);
    auto r = is_mixing_wind(c10, {5, 2});
    auto text = format_witness(make_document(c10), *r.witness);
    auto doc = parse_document(text);
    auto w = witness_from_document(doc);

    auto bad_weight = w;
    bad_weight.weight += 5;
    EXPECT_FALSE(verify_witness(c10, bad_weight).valid);

    auto improper = w;
    improper.colouring.colours[1] = improper.colouring.colours[0];
    EXPECT_FALSE(verify_witness(c10, improper).valid);

    auto not_cycle = w;
    not_cycle.cycle = Cycle({0, 2, 1, 3, 4, 5, 6, 7, 8, 9});
    EXPECT_FALSE(verify_witness(c10, not_cycle).valid);

    EXPECT_THROW(witness_from_document(parse_document("n: 2\nedge 0 1\nparams: 5 2\n")), ParseError);
}

TEST(FoldTraceFile, RoundTripFigure1)
{
    auto fig = gen_figure1();
    auto [h, trace] = reduce_dominated(fig.graph, {5, 2});
    auto source = make_document(fig.graph);
    auto text = format_fold_trace(source, trace);
    auto doc = parse_document(text);
    EXPECT_EQ(doc.folds.size(), trace.steps.size());
    auto check = replay_fold_document(doc);
    ASSERT_TRUE(check.valid) << check.failure;
    EXPECT_TRUE(is_cycle_graph(check.trace->final, 8));
}

TEST(FoldTraceFile, RoundTripSearch)
{
    std::mt19937 rng(8);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        Graph g = random_connected_bipartite(8, 0.25, rng);
        auto trace = folds_to_cycle(g, 6);
        if (!trace)
            continue;
        auto doc = make_document(g);
        doc.labels = {"a", "b", "c", "d", "e", "f", "g", "h"};
        auto parsed = parse_document(format_fold_trace(doc, *trace));
        auto check = replay_fold_document(parsed);
        ASSERT_TRUE(check.valid) << check.failure;
        EXPECT_EQ(check.trace->final.edges(), trace->final.edges());
        ++checked;
    }
    EXPECT_GT(checked, 5);
}

TEST(FoldTraceFile, RejectsBadTraces)
{
    std::string base = "edge a b\nedge b c\nedge c d\nedge d e\nedge e f\nedge f a\nedge a g\n";
    EXPECT_TRUE(replay_fold_document(parse_document(base + "fold b g\nfinal: a-b b-c c-d d-e e-f f-a\n")).valid);
    auto far = replay_fold_document(parse_document(base + "fold a d\nfinal: a-b\n"));
    EXPECT_FALSE(far.valid);
    EXPECT_NE(far.failure.find("distance 2"), std::string::npos);
    auto twice = replay_fold_document(parse_document(base + "fold b g\nfold c g\nfinal: a-b\n"));
    EXPECT_FALSE(twice.valid);
    EXPECT_NE(twice.failure.find("already merged"), std::string::npos);
    auto wrong_final = replay_fold_document(parse_document(base + "fold b g\nfinal: a-b b-c\n"));
    EXPECT_FALSE(wrong_final.valid);
    EXPECT_FALSE(replay_fold_document(parse_document(base + "fold b g\n")).valid);
}

TEST(Dot, GraphAndStateSpace)
{
    auto doc = parse_document("edge x y\n");
    auto dot = to_dot(doc);
    EXPECT_NE(dot.find("\"x\" -- \"y\";"), std::string::npos);
    auto col = col_to_dot(cycle_graph(4), {3, 1});
    auto lines = std::count(col.begin(), col.end(), '\n');
    EXPECT_EQ(count_colourings(cycle_graph(4), {3, 1}), 18);
    EXPECT_GT(lines, 18 + 2);
    EXPECT_THROW(col_to_dot(cycle_graph(10), {7, 2}, 100), BudgetExceeded);
}

TEST(Json, ExplanationShape)
{
    auto g = gen_c4xy();
    auto r = planar_mixing_decider(g.graph, *g.rotation, {3, 1});
    auto j = explanation_to_json(r.explanation);
    EXPECT_EQ(j["kind"], "graph");
    EXPECT_EQ(j["verdict"], "MIXING");
    EXPECT_TRUE(j["children"].is_array());
    auto back = nlohmann::json::parse(j.dump());
    EXPECT_EQ(back, j);
}
