#include <circmix/fold.hpp>
#include <circmix/generators.hpp>
#include <circmix/io.hpp>
#include <circmix/planar.hpp>
#include <circmix/reconfig.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace circmix;

namespace {

enum Exit : int { ok = 0, negative = 1, vacuous = 2, usage = 3, budget = 4 };

int verdict_code(MixingVerdict v)
{
    switch (v) {
    case MixingVerdict::mixing:
        return Exit::ok;
    case MixingVerdict::not_mixing:
        return Exit::negative;
    default:
        return Exit::vacuous;
    }
}

void emit(const std::string &text, const std::string &path)
{
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file(path, text);
}

CircularParams params_from(const GraphDocument &doc, int p, int q)
{
    if (p > 0 && q > 0)
        return CircularParams(p, q);
    if (doc.params)
        return *doc.params;
    throw InvalidInput("give -p and -q (or a `params:` line in the file)");
}

struct GenArgs {
    std::string kind;
    std::vector<int> values;
    bool nested = false;
    std::string out, dot;
};

int run_gen(const GenArgs &a)
{
    auto need = [&](std::size_t k) {
        if (a.values.size() != k)
            throw InvalidInput("gen " + a.kind + " takes " + std::to_string(k) + " integer argument(s)");
    };
    Generated gen;
    if (a.kind == "cycle") {
        need(1);
        if (a.values[0] < 3)
            throw InvalidInput("cycle length must be at least 3");
        gen = gen_cycle(a.values[0]);
    } else if (a.kind == "clique") {
        need(2);
        gen = gen_clique(CircularParams(a.values[0], a.values[1]));
    } else if (a.kind == "grid") {
        need(2);
        gen = gen_grid(a.values[0], a.values[1]);
    } else if (a.kind == "cube") {
        need(0);
        gen = gen_cube();
    } else if (a.kind == "theta") {
        need(3);
        gen = gen_theta(a.values[0], a.values[1], a.values[2]);
    } else if (a.kind == "c4xy") {
        need(0);
        gen = gen_c4xy(a.nested);
    } else if (a.kind == "figure1") {
        need(0);
        gen = gen_figure1();
    } else {
        throw InvalidInput("unknown generator '" + a.kind + "' (cycle, clique, grid, cube, theta, c4xy, figure1)");
    }
    auto doc = make_document(gen.graph, gen.rotation);
    emit("# " + gen.name + "\n" + format_document(doc), a.out);
    if (!a.dot.empty())
        emit(to_dot(doc), a.dot);
    return Exit::ok;
}

struct MixArgs {
    std::string file;
    int p = 0, q = 0, k = 0;
    std::string method = "wind";
    long long budget = kDefaultStateBudget;
    std::string cert, dot, json;
    int threads = 1;
    bool deterministic = false;
    std::optional<unsigned> seed;
};

std::string default_cert(const std::string &file, const std::string &suffix)
{
    return file + suffix;
}

int run_mix(const MixArgs &a)
{
    auto doc = read_document(a.file);
    const Graph &g = doc.graph;
    if (a.method == "fold") {
        if (a.k < 1)
            throw InvalidInput("--method fold needs -k K (testing C_{2K+1}-mixing)");
        auto r = odd_mixing_by_fold(g, a.k);
        std::cout << to_string(r.verdict) << '\n';
        if (r.verdict == MixingVerdict::not_mixing && r.trace) {
            // the trace covers the folding component; write it over that component
            GraphDocument part;
            part.graph = r.trace->source;
            for (Vertex v : r.component)
                part.labels.push_back(doc.label(v));
            std::string path = a.cert.empty() ? default_cert(a.file, ".fold") : a.cert;
            emit(format_fold_trace(part, *r.trace, a.file), path);
            std::cout << "fold trace: " << path << '\n';
        }
        return verdict_code(r.verdict);
    }
    const CircularParams params = params_from(doc, a.p, a.q);
    if (a.method == "oracle") {
        auto r = is_mixing_oracle(g, params, a.budget);
        std::cout << to_string(r.verdict) << '\n';
        std::cout << "states: " << r.states << ", components: " << r.components << '\n';
        if (r.verdict == MixingVerdict::not_mixing) {
            GraphDocument cert = doc;
            cert.rotation.reset();
            cert.params = params;
            cert.colourings = {{"f", r.first->colours}, {"g", r.second->colours}};
            std::string path = a.cert.empty() ? default_cert(a.file, ".pair") : a.cert;
            emit("# two colourings in different components\n" + format_document(cert), path);
            std::cout << "colouring pair: " << path << '\n';
        }
        if (!a.dot.empty())
            emit(col_to_dot(g, params, a.budget), a.dot);
        return verdict_code(r.verdict);
    }
    if (a.method == "wind") {
        if (!params.in_wind_range())
            throw InvalidInput("--method wind requires 2 < p/q < 4, got " + to_string(params));
        WindOptions options;
        options.threads = a.deterministic ? 1 : std::max(1, a.threads);
        auto r = is_mixing_wind(g, params, options);
        std::cout << to_string(r.verdict) << '\n';
        if (r.witness) {
            std::string path = a.cert.empty() ? default_cert(a.file, ".witness") : a.cert;
            emit(format_witness(doc, *r.witness, a.file), path);
            std::cout << "witness: " << path << '\n';
        }
        return verdict_code(r.verdict);
    }
    if (a.method == "planar") {
        if (!doc.rotation)
            throw InvalidInput("--method planar needs `rotation` lines in the graph file");
        DeciderOptions options;
        options.split_seed = a.seed;
        auto r = planar_mixing_decider(g, *doc.rotation, params, options);
        std::cout << to_string(r.verdict) << '\n';
        std::string text;
        format_explanation(r.explanation, text);
        std::cout << text;
        if (!a.json.empty())
            emit(explanation_to_json(r.explanation).dump(2) + "\n", a.json);
        return verdict_code(r.verdict);
    }
    throw InvalidInput("unknown method '" + a.method + "' (oracle, wind, fold, planar)");
}

struct ReachArgs {
    std::string file, from = "f", to = "g", method = "oracle";
    int p = 0, q = 0;
    long long budget = kDefaultStateBudget;
};

int run_reach(const ReachArgs &a)
{
    auto doc = read_document(a.file);
    const CircularParams params = params_from(doc, a.p, a.q);
    if (doc.params && !(params == *doc.params))
        throw InvalidInput("colourings in the file use " + to_string(*doc.params) + ", not " + to_string(params));
    doc.params = params;
    Colouring f = doc.colouring(a.from), h = doc.colouring(a.to);
    for (const auto *c : {&f, &h}) {
        auto check = validate_colouring(doc.graph, *c);
        if (!check.proper)
            throw InvalidInput("colouring '" + (c == &f ? a.from : a.to) + "' is not proper on edge " +
                               doc.label(check.violation->first) + "-" + doc.label(check.violation->second));
    }
    if (a.method == "oracle") {
        auto r = is_reachable_oracle(doc.graph, f, h, a.budget);
        std::cout << (r.reachable ? "REACHABLE" : "UNREACHABLE") << '\n';
        if (r.reachable) {
            std::cout << "steps: " << (r.path.size() - 1) << '\n';
            for (std::size_t i = 1; i < r.path.size(); ++i)
                for (Vertex v = 0; v < doc.graph.order(); ++v)
                    if (r.path[i][v] != r.path[i - 1][v])
                        std::cout << "recolour " << doc.label(v) << ": " << r.path[i - 1][v] << " -> " << r.path[i][v]
                                  << '\n';
        }
        return r.reachable ? Exit::ok : Exit::negative;
    }
    if (a.method == "characterized") {
        auto r = is_reachable_characterized(doc.graph, f, h);
        std::cout << (r.reachable ? "REACHABLE" : "UNREACHABLE") << '\n';
        if (!r.reachable)
            std::cout << "violated: " << r.failed << '\n';
        return r.reachable ? Exit::ok : Exit::negative;
    }
    throw InvalidInput("unknown method '" + a.method + "' (oracle, characterized)");
}

bool declares_vertices(const std::string &text)
{
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        auto t = line.substr(0, line.find('#'));
        t.erase(0, t.find_first_not_of(" \t"));
        if (t.rfind("n:", 0) == 0 || t.rfind("vertices:", 0) == 0 || t.rfind("edge ", 0) == 0)
            return true;
    }
    return false;
}

std::optional<std::string> graph_reference(const std::string &text)
{
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (line.rfind("graph:", 0) == 0) {
            auto ref = line.substr(6);
            ref.erase(0, ref.find_first_not_of(" \t"));
            ref.erase(ref.find_last_not_of(" \t\r") + 1);
            return ref;
        }
    return std::nullopt;
}

int run_verify(const std::string &file)
{
    std::ifstream in(file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    if (!declares_vertices(text)) {
        // the certificate names its graph by path only
        auto ref = graph_reference(text);
        if (!ref)
            throw InvalidInput("certificate has neither a graph section nor a `graph:` reference");
        std::filesystem::path path(*ref);
        if (path.is_relative() && !std::filesystem::exists(path))
            path = std::filesystem::path(file).parent_path() / path;
        auto host = read_document(path.string());
        host.rotation.reset();
        host.params.reset();
        host.colourings.clear();
        text = format_document(host) + text;
    }
    auto doc = parse_document(text);
    if (!doc.folds.empty() || doc.final_edges) {
        auto check = replay_fold_document(doc);
        if (!check.valid) {
            std::cout << "FAIL\n" << check.failure << '\n';
            return Exit::negative;
        }
        std::cout << "PASS\nfold trace replays to a graph on " << check.trace->final.order() << " vertices and "
                  << check.trace->final.size() << " edges\n";
        return Exit::ok;
    }
    auto w = witness_from_document(doc);
    auto check = verify_witness(doc.graph, w);
    if (!check.valid) {
        std::cout << "FAIL\n";
        for (const auto &f : check.failures)
            std::cout << f << '\n';
        return Exit::negative;
    }
    std::cout << "PASS\nwrapped cycle of length " << w.cycle.length() << ": weight " << w.weight << " vs "
              << (w.required ? std::to_string(*w.required) : std::string("odd length")) << '\n';
    return Exit::ok;
}

struct FoldArgs {
    std::string file, out;
    int length = 0;
    bool reduce = false;
    int p = 0, q = 0;
    long long memo = 1'000'000;
};

int run_fold_search(const FoldArgs &a)
{
    auto doc = read_document(a.file);
    if (a.reduce) {
        auto [reduced, trace] = reduce_dominated(doc.graph, params_from(doc, a.p, a.q));
        std::cout << "reduced to " << reduced.order() << " vertices, " << reduced.size() << " edges in "
                  << trace.steps.size() << " folds\n";
        emit(format_fold_trace(doc, trace, a.file), a.out);
        return Exit::ok;
    }
    if (a.length < 3)
        throw InvalidInput("fold-search needs --length L (at least 3) or --reduce-dominated");
    FoldSearchOptions options;
    options.memo_budget = a.memo;
    auto trace = folds_to_cycle(doc.graph, a.length, options);
    if (!trace) {
        std::cout << "NOT-FOUND\n";
        return Exit::negative;
    }
    std::cout << "FOUND\n";
    emit(format_fold_trace(doc, *trace, a.file), a.out);
    return Exit::ok;
}

int run_threshold(const std::string &file, int cap)
{
    auto doc = read_document(file);
    auto r = circular_mixing_threshold(doc.graph, cap);
    std::cout << "k = " << r.k << '\n';
    if (r.bound_only)
        std::cout << "upper bound only: longest cycle not computed above " << cap << " vertices\n";
    else
        std::cout << "longest cycle: " << r.longest_cycle << "; fold search over k = " << r.searched_from << ".."
                  << r.searched_to << '\n';
    return Exit::ok;
}

int run_min_cycle(int p, int q, const std::string &method, long long budget)
{
    CircularParams params(p, q);
    CycleMixMethod m;
    if (method == "oracle")
        m = CycleMixMethod::oracle;
    else if (method == "wind")
        m = CycleMixMethod::wind;
    else
        throw InvalidInput("unknown method '" + method + "' (oracle, wind)");
    std::cout << minimal_non_mixing_even_cycle(params, m, budget) << '\n';
    return Exit::ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Circular-colouring mixing: deciders, certificates and fold traces"};
    app.require_subcommand(1);

    GenArgs gen;
    auto *cmd_gen = app.add_subcommand("gen", "Write a generated graph document");
    cmd_gen->add_option("kind", gen.kind, "cycle L | clique P Q | grid A B | cube | theta A B C | c4xy | figure1")
        ->required();
    cmd_gen->add_option("values", gen.values, "Integer parameters of the generator");
    cmd_gen->add_flag("--nested", gen.nested, "c4xy: draw both extra vertices inside the 4-cycle");
    cmd_gen->add_option("-o,--out", gen.out, "Output path (default stdout)");
    cmd_gen->add_option("--dot", gen.dot, "Also write the graph in DOT format");

    MixArgs mix;
    auto *cmd_mix = app.add_subcommand("mix", "Decide (p,q)-mixing");
    cmd_mix->add_option("file", mix.file, "Graph document")->required()->check(CLI::ExistingFile);
    cmd_mix->add_option("-p", mix.p, "Colours p");
    cmd_mix->add_option("-q", mix.q, "Separation q");
    cmd_mix->add_option("--method", mix.method, "oracle | wind | fold | planar")
        ->check(CLI::IsMember({"oracle", "wind", "fold", "planar"}));
    cmd_mix->add_option("-k", mix.k, "fold: decide C_{2k+1}-mixing");
    cmd_mix->add_option("--budget", mix.budget, "Oracle state budget");
    cmd_mix->add_option("--cert", mix.cert, "Certificate output path");
    cmd_mix->add_option("--threads", mix.threads, "wind: worker threads");
    cmd_mix->add_flag("--deterministic", mix.deterministic, "Single-threaded reproducible certificates");
    cmd_mix->add_option("--dot", mix.dot, "oracle: write Col(G, G_{p,q}) in DOT format");
    cmd_mix->add_option("--json", mix.json, "planar: write the explanation tree as JSON");
    cmd_mix->add_option("--seed", mix.seed, "planar: choose separating 4-cycles pseudo-randomly");

    ReachArgs reach;
    auto *cmd_reach = app.add_subcommand("reach", "Decide whether one colouring reconfigures to another");
    cmd_reach->add_option("file", reach.file, "Graph document with colouring sections")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_reach->add_option("-p", reach.p, "Colours p");
    cmd_reach->add_option("-q", reach.q, "Separation q");
    cmd_reach->add_option("--from", reach.from, "Name of the start colouring (default f)");
    cmd_reach->add_option("--to", reach.to, "Name of the target colouring (default g)");
    cmd_reach->add_option("--method", reach.method, "oracle | characterized")
        ->check(CLI::IsMember({"oracle", "characterized"}));
    cmd_reach->add_option("--budget", reach.budget, "Oracle state budget");

    std::string verify_file;
    auto *cmd_verify = app.add_subcommand("verify", "Re-check a witness or fold trace");
    cmd_verify->add_option("file", verify_file, "Witness or fold-trace file")->required()->check(CLI::ExistingFile);

    FoldArgs fold;
    auto *cmd_fold = app.add_subcommand("fold-search", "Search for a folding onto a cycle, or reduce dominated vertices");
    cmd_fold->add_option("file", fold.file, "Graph document")->required()->check(CLI::ExistingFile);
    cmd_fold->add_option("--length", fold.length, "Target cycle length");
    cmd_fold->add_flag("--reduce-dominated", fold.reduce, "Fold dominated vertices instead");
    cmd_fold->add_option("-p", fold.p, "Colours p (for --reduce-dominated)");
    cmd_fold->add_option("-q", fold.q, "Separation q (for --reduce-dominated)");
    cmd_fold->add_option("--memo", fold.memo, "Fold-search memo budget");
    cmd_fold->add_option("-o,--out", fold.out, "Trace output path (default stdout)");

    std::string threshold_file;
    int cap = 20;
    auto *cmd_threshold = app.add_subcommand("threshold", "Smallest k with the graph C_{2k+1}-mixing");
    cmd_threshold->add_option("file", threshold_file, "Graph document")->required()->check(CLI::ExistingFile);
    cmd_threshold->add_option("--cap", cap, "Largest order for the exhaustive longest-cycle search");

    int mp = 0, mq = 0;
    std::string mmethod = "oracle";
    long long mbudget = kDefaultStateBudget;
    auto *cmd_min = app.add_subcommand("min-cycle", "Shortest even cycle that is not (p,q)-mixing");
    cmd_min->add_option("-p", mp, "Colours p")->required();
    cmd_min->add_option("-q", mq, "Separation q")->required();
    cmd_min->add_option("--method", mmethod, "oracle | wind");
    cmd_min->add_option("--budget", mbudget, "Oracle state budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::usage;
    }

    try {
        if (*cmd_gen)
            return run_gen(gen);
        if (*cmd_mix)
            return run_mix(mix);
        if (*cmd_reach)
            return run_reach(reach);
        if (*cmd_verify)
            return run_verify(verify_file);
        if (*cmd_fold)
            return run_fold_search(fold);
        if (*cmd_threshold)
            return run_threshold(threshold_file, cap);
        if (*cmd_min)
            return run_min_cycle(mp, mq, mmethod, mbudget);
    } catch (const BudgetExceeded &e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return Exit::budget;
    } catch (const InvalidInput &e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::usage;
    }
    return Exit::usage;
}
