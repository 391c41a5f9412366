#ifndef CIRCMIX_IO_HPP
#define CIRCMIX_IO_HPP

#include "fold.hpp"
#include "planar.hpp"

#include <json.hpp>

#include <fstream>
#include <unordered_map>

namespace circmix {

class ParseError : public InvalidInput {
public:
    ParseError(int line, const std::string &what)
        : InvalidInput(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

/// Everything a graph, witness or fold-trace file can carry. Vertices are
/// dense indices; `labels` maps them back to the names used in the file.
struct GraphDocument {
    std::vector<std::string> labels;
    Graph graph;
    std::optional<RotationSystem> rotation;
    std::optional<CircularParams> params;
    std::vector<std::pair<std::string, std::vector<int>>> colourings;

    // certificate sections
    std::optional<std::string> graph_ref;
    std::optional<std::vector<Vertex>> cycle;
    std::optional<long long> weight;
    bool has_required = false;
    std::optional<long long> required; // nullopt with has_required marks "odd-length"
    std::vector<std::pair<Vertex, Vertex>> folds;
    std::optional<std::vector<Edge>> final_edges;

    std::string label(Vertex v) const
    {
        return v >= 0 && v < static_cast<int>(labels.size()) ? labels[static_cast<std::size_t>(v)] : std::to_string(v);
    }

    const std::vector<int> *find_colouring(const std::string &name) const
    {
        for (const auto &[n, c] : colourings)
            if (n == name)
                return &c;
        return nullptr;
    }

    Colouring colouring(const std::string &name) const
    {
        if (!params)
            throw InvalidInput("document has no `params:` line for colouring '" + name + "'");
        const auto *c = find_colouring(name);
        if (!c)
            throw InvalidInput("document has no colouring named '" + name + "'");
        return Colouring{*params, *c};
    }
};

namespace detail {

inline std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_words(const std::string &s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;)
        out.push_back(w);
    return out;
}

inline long long parse_integer(int line, const std::string &s)
{
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception &) {
        throw ParseError(line, "expected an integer, got '" + s + "'");
    }
}

struct RawLine {
    int number;
    std::string keyword; // text before the first ':' or space
    std::string rest;
};

class DocumentParser {
public:
    GraphDocument parse(std::istream &in)
    {
        std::vector<RawLine> lines;
        int number = 0;
        for (std::string raw; std::getline(in, raw);) {
            ++number;
            auto hash = raw.find('#');
            std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (text.empty())
                continue;
            lines.push_back(classify(number, text));
        }
        // first pass: vertex declarations, in order of appearance
        for (const auto &l : lines) {
            if (l.keyword == "n") {
                long long n = parse_integer(l.number, l.rest);
                if (n < 0)
                    throw ParseError(l.number, "negative vertex count");
                for (long long i = 0; i < n; ++i)
                    declare(std::to_string(i));
            } else if (l.keyword == "vertices") {
                for (const auto &w : split_words(l.rest))
                    declare(w);
            } else if (l.keyword == "edge") {
                auto ws = split_words(l.rest);
                if (ws.size() != 2)
                    throw ParseError(l.number, "edge needs two endpoints");
                declare(ws[0]);
                declare(ws[1]);
            }
        }
        doc_.labels = labels_;
        std::vector<Edge> edges;
        std::map<Vertex, std::vector<Vertex>> rotation;
        std::optional<int> outer;
        std::string current_colouring;
        bool in_colouring = false;
        for (const auto &l : lines) {
            const auto &k = l.keyword;
            if (k == "n" || k == "vertices") {
                in_colouring = false;
            } else if (k == "edge") {
                auto ws = split_words(l.rest);
                Vertex u = resolve(l.number, ws[0]), v = resolve(l.number, ws[1]);
                if (u == v)
                    throw ParseError(l.number, "loop edge at " + ws[0]);
                edges.emplace_back(u, v);
                in_colouring = false;
            } else if (k == "rotation") {
                auto colon = l.rest.find(':');
                if (colon == std::string::npos)
                    throw ParseError(l.number, "rotation line needs `rotation v: n1 n2 ...`");
                Vertex v = resolve(l.number, trim(l.rest.substr(0, colon)));
                std::vector<Vertex> order;
                for (const auto &w : split_words(l.rest.substr(colon + 1)))
                    order.push_back(resolve(l.number, w));
                if (rotation.count(v))
                    throw ParseError(l.number, "duplicate rotation for vertex " + doc_.label(v));
                rotation[v] = std::move(order);
                in_colouring = false;
            } else if (k == "outer") {
                outer = static_cast<int>(parse_integer(l.number, l.rest));
                in_colouring = false;
            } else if (k == "params") {
                auto ws = split_words(l.rest);
                if (ws.size() != 2)
                    throw ParseError(l.number, "params needs `params: p q`");
                try {
                    doc_.params = CircularParams(static_cast<int>(parse_integer(l.number, ws[0])),
                                                 static_cast<int>(parse_integer(l.number, ws[1])));
                } catch (const ParseError &) {
                    throw;
                } catch (const InvalidInput &e) {
                    throw ParseError(l.number, e.what());
                }
                in_colouring = false;
            } else if (k == "colouring") {
                current_colouring = l.rest;
                if (doc_.find_colouring(current_colouring))
                    throw ParseError(l.number, "duplicate colouring '" + current_colouring + "'");
                doc_.colourings.emplace_back(current_colouring,
                                             std::vector<int>(labels_.size(), -1));
                in_colouring = true;
            } else if (k == "=") {
                if (!in_colouring)
                    throw ParseError(l.number, "`v=c` line outside a colouring section");
                auto eq = l.rest.find('=');
                Vertex v = resolve(l.number, trim(l.rest.substr(0, eq)));
                long long c = parse_integer(l.number, trim(l.rest.substr(eq + 1)));
                auto &colours = doc_.colourings.back().second;
                if (colours[static_cast<std::size_t>(v)] != -1)
                    throw ParseError(l.number, "vertex " + doc_.label(v) + " coloured twice");
                if (c < 0)
                    throw ParseError(l.number, "negative colour");
                colours[static_cast<std::size_t>(v)] = static_cast<int>(c);
            } else if (k == "graph") {
                doc_.graph_ref = l.rest;
                in_colouring = false;
            } else if (k == "cycle") {
                std::vector<Vertex> cyc;
                for (const auto &w : split_words(l.rest))
                    cyc.push_back(resolve(l.number, w));
                doc_.cycle = std::move(cyc);
                in_colouring = false;
            } else if (k == "weight") {
                doc_.weight = parse_integer(l.number, l.rest);
                in_colouring = false;
            } else if (k == "required") {
                doc_.has_required = true;
                if (l.rest != "odd-length")
                    doc_.required = parse_integer(l.number, l.rest);
                in_colouring = false;
            } else if (k == "fold") {
                auto ws = split_words(l.rest);
                if (ws.size() != 2)
                    throw ParseError(l.number, "fold needs `fold kept merged`");
                doc_.folds.emplace_back(resolve(l.number, ws[0]), resolve(l.number, ws[1]));
                in_colouring = false;
            } else if (k == "final") {
                std::vector<Edge> fe;
                for (const auto &w : split_words(l.rest)) {
                    auto dash = w.find('-');
                    if (dash == std::string::npos)
                        throw ParseError(l.number, "final edges are written `a-b`");
                    fe.emplace_back(resolve(l.number, w.substr(0, dash)), resolve(l.number, w.substr(dash + 1)));
                }
                doc_.final_edges = std::move(fe);
                in_colouring = false;
            } else {
                throw ParseError(l.number, "unknown line '" + k + "'");
            }
        }
        try {
            doc_.graph = Graph(static_cast<int>(labels_.size()), edges);
        } catch (const InvalidInput &e) {
            throw ParseError(0, e.what());
        }
        for (const auto &[name, colours] : doc_.colourings)
            for (std::size_t v = 0; v < colours.size(); ++v)
                if (colours[v] < 0)
                    throw ParseError(0, "colouring '" + name + "' does not colour vertex " +
                                            doc_.label(static_cast<Vertex>(v)));
        if (!rotation.empty() || outer) {
            RotationSystem rot;
            rot.rotation.resize(labels_.size());
            for (auto &[v, order] : rotation)
                rot.rotation[static_cast<std::size_t>(v)] = std::move(order);
            rot.outer = outer;
            try {
                auto fs = faces(doc_.graph, rot);
                if (outer && (*outer < 0 || *outer >= static_cast<int>(fs.faces.size())))
                    throw InvalidEmbedding("outer face index " + std::to_string(*outer) + " out of range");
            } catch (const InvalidInput &e) {
                throw ParseError(0, e.what());
            }
            doc_.rotation = std::move(rot);
        }
        return std::move(doc_);
    }

private:
    static RawLine classify(int number, const std::string &text)
    {
        auto eq = text.find('=');
        auto colon = text.find(':');
        auto space = text.find_first_of(" \t");
        if (eq != std::string::npos && (colon == std::string::npos || eq < colon) &&
            text.compare(0, 8, "rotation") != 0)
            return {number, "=", text};
        // `colouring NAME:` and `rotation v: ...` carry an argument before the colon
        for (const char *kw : {"colouring", "rotation"}) {
            std::string k = kw;
            if (text.compare(0, k.size(), k) == 0 &&
                (text.size() == k.size() || text[k.size()] == ' ' || text[k.size()] == ':')) {
                std::string rest = trim(text.substr(k.size()));
                if (k == "colouring") {
                    if (rest.empty() || rest.back() != ':')
                        throw ParseError(number, "colouring header is `colouring NAME:`");
                    rest = trim(rest.substr(0, rest.size() - 1));
                }
                return {number, k, rest};
            }
        }
        if (colon != std::string::npos && (space == std::string::npos || colon < space))
            return {number, text.substr(0, colon), trim(text.substr(colon + 1))};
        if (space != std::string::npos)
            return {number, text.substr(0, space), trim(text.substr(space))};
        return {number, text, ""};
    }

    void declare(const std::string &label)
    {
        if (index_.emplace(label, static_cast<Vertex>(labels_.size())).second)
            labels_.push_back(label);
    }

    Vertex resolve(int line, const std::string &label) const
    {
        auto it = index_.find(label);
        if (it == index_.end())
            throw ParseError(line, "unknown vertex '" + label + "'");
        return it->second;
    }

    GraphDocument doc_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Vertex> index_;
};

} // namespace detail

inline GraphDocument parse_document(std::istream &in) { return detail::DocumentParser().parse(in); }

inline GraphDocument parse_document(const std::string &text)
{
    std::istringstream in(text);
    return parse_document(in);
}

inline GraphDocument read_document(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open " + path);
    return parse_document(in);
}

inline void write_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path);
    if (!out)
        throw InvalidInput("cannot write " + path);
    out << text;
}

inline std::vector<std::string> default_labels(int n)
{
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i)
        out.push_back(std::to_string(i));
    return out;
}

// ---------------------------------------------------------------------------
// Writers

namespace detail {

inline void write_graph_section(std::ostream &out, const GraphDocument &doc)
{
    bool plain = true;
    for (std::size_t i = 0; i < doc.labels.size(); ++i)
        plain = plain && doc.labels[i] == std::to_string(i);
    if (plain) {
        out << "n: " << doc.graph.order() << '\n';
    } else {
        out << "vertices:";
        for (const auto &l : doc.labels)
            out << ' ' << l;
        out << '\n';
    }
    for (auto [u, v] : doc.graph.edges())
        out << "edge " << doc.label(u) << ' ' << doc.label(v) << '\n';
}

} // namespace detail

inline std::string format_document(const GraphDocument &doc)
{
    std::ostringstream out;
    detail::write_graph_section(out, doc);
    if (doc.rotation) {
        for (Vertex v = 0; v < doc.graph.order(); ++v) {
            out << "rotation " << doc.label(v) << ':';
            for (Vertex w : doc.rotation->rotation[static_cast<std::size_t>(v)])
                out << ' ' << doc.label(w);
            out << '\n';
        }
        if (doc.rotation->outer)
            out << "outer: " << *doc.rotation->outer << '\n';
    }
    if (doc.params)
        out << "params: " << doc.params->p << ' ' << doc.params->q << '\n';
    for (const auto &[name, colours] : doc.colourings) {
        out << "colouring " << name << ":\n";
        for (std::size_t v = 0; v < colours.size(); ++v)
            out << doc.label(static_cast<Vertex>(v)) << '=' << colours[v] << '\n';
    }
    return out.str();
}

inline GraphDocument make_document(const Graph &g, std::optional<RotationSystem> rot = std::nullopt)
{
    GraphDocument doc;
    doc.labels = default_labels(g.order());
    doc.graph = g;
    doc.rotation = std::move(rot);
    return doc;
}

/// Witness text: the graph inline (and optionally its source path), the
/// colouring, the cycle and the two weights.
inline std::string format_witness(const GraphDocument &host, const NonMixingWitness &w,
                                  const std::optional<std::string> &graph_ref = std::nullopt)
{
    std::ostringstream out;
    out << "# non-mixing witness\n";
    if (graph_ref)
        out << "graph: " << *graph_ref << '\n';
    detail::write_graph_section(out, host);
    out << "params: " << w.colouring.params.p << ' ' << w.colouring.params.q << '\n';
    out << "colouring:\n";
    for (Vertex v = 0; v < w.colouring.size(); ++v)
        out << host.label(v) << '=' << w.colouring[v] << '\n';
    out << "cycle:";
    for (Vertex v : w.cycle.vertices())
        out << ' ' << host.label(v);
    out << '\n';
    out << "weight: " << w.weight << '\n';
    out << "required: " << (w.required ? std::to_string(*w.required) : std::string("odd-length")) << '\n';
    return out.str();
}

inline NonMixingWitness witness_from_document(const GraphDocument &doc)
{
    if (!doc.params)
        throw ParseError(0, "witness has no `params:` line");
    const auto *colours = doc.find_colouring("");
    if (!colours && doc.colourings.size() == 1)
        colours = &doc.colourings.front().second;
    if (!colours)
        throw ParseError(0, "witness has no `colouring:` section");
    if (!doc.cycle)
        throw ParseError(0, "witness has no `cycle:` line");
    if (!doc.weight)
        throw ParseError(0, "witness has no `weight:` line");
    if (!doc.has_required)
        throw ParseError(0, "witness has no `required:` line");
    NonMixingWitness w;
    w.colouring = Colouring{*doc.params, *colours};
    w.cycle = Cycle(*doc.cycle);
    w.weight = *doc.weight;
    w.required = doc.required;
    return w;
}

/// Fold-trace text: the source graph inline, one `fold kept merged` line per
/// step naming each class by its surviving source vertex, then the final
/// edges in the same naming.
inline std::string format_fold_trace(const GraphDocument &source, const FoldTrace &trace,
                                     const std::optional<std::string> &graph_ref = std::nullopt)
{
    std::ostringstream out;
    out << "# fold trace\n";
    if (graph_ref)
        out << "graph: " << *graph_ref << '\n';
    detail::write_graph_section(out, source);
    std::vector<Vertex> origin(static_cast<std::size_t>(trace.source.order()));
    for (Vertex v = 0; v < trace.source.order(); ++v)
        origin[static_cast<std::size_t>(v)] = v;
    for (const auto &step : trace.steps) {
        out << "fold " << source.label(origin[static_cast<std::size_t>(step.kept)]) << ' '
            << source.label(origin[static_cast<std::size_t>(step.merged)]) << '\n';
        std::vector<Vertex> next(origin.size() - 1);
        for (std::size_t v = 0; v < origin.size(); ++v)
            if (static_cast<Vertex>(v) != step.merged)
                next[static_cast<std::size_t>(step.relabel[v])] = origin[v];
        origin = std::move(next);
    }
    out << "final:";
    for (auto [u, v] : trace.final.edges())
        out << ' ' << source.label(origin[static_cast<std::size_t>(u)]) << '-'
            << source.label(origin[static_cast<std::size_t>(v)]);
    out << '\n';
    return out.str();
}

struct TraceCheck {
    bool valid = false;
    std::string failure;
    std::optional<FoldTrace> trace;
};

/// Replays the fold lines of a document from its source graph and compares
/// the outcome with the recorded `final:` edges.
inline TraceCheck replay_fold_document(const GraphDocument &doc)
{
    TraceCheck check;
    if (!doc.final_edges) {
        check.failure = "trace has no `final:` line";
        return check;
    }
    FoldTrace trace(doc.graph);
    // position of each source vertex's class in the current graph
    for (auto [a, b] : doc.folds) {
        Vertex ka = trace.current_index(a), kb = trace.current_index(b);
        if (ka < 0 || kb < 0 || trace.origin[static_cast<std::size_t>(kb)] != b ||
            trace.origin[static_cast<std::size_t>(ka)] != a) {
            check.failure = "fold " + doc.label(a) + " " + doc.label(b) + ": vertex already merged";
            return check;
        }
        auto d = distance(trace.final, ka, kb);
        if (!d || *d != 2) {
            check.failure = "fold " + doc.label(a) + " " + doc.label(b) + ": vertices not at distance 2";
            return check;
        }
        trace.apply(ka, kb);
    }
    std::set<Edge> expected, actual;
    for (auto [u, v] : *doc.final_edges) {
        Vertex a = trace.current_index(u), b = trace.current_index(v);
        if (a < 0 || b < 0 || trace.origin[static_cast<std::size_t>(a)] != u ||
            trace.origin[static_cast<std::size_t>(b)] != v) {
            check.failure = "final edge " + doc.label(u) + "-" + doc.label(v) + " names a merged vertex";
            return check;
        }
        expected.emplace(std::min(a, b), std::max(a, b));
    }
    for (auto e : trace.final.edges())
        actual.insert(e);
    if (expected != actual) {
        check.failure = "final edges differ from the replayed graph";
        return check;
    }
    if (!replay_fold_trace(trace)) {
        check.failure = "composite map is not a homomorphism onto the final graph";
        return check;
    }
    check.valid = true;
    check.trace = std::move(trace);
    return check;
}

// ---------------------------------------------------------------------------
// DOT export

inline std::string to_dot(const GraphDocument &doc, const std::string &name = "G")
{
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (Vertex v = 0; v < doc.graph.order(); ++v)
        out << "  \"" << doc.label(v) << "\";\n";
    for (auto [u, v] : doc.graph.edges())
        out << "  \"" << doc.label(u) << "\" -- \"" << doc.label(v) << "\";\n";
    out << "}\n";
    return out.str();
}

/// Col(G, G_{p,q}) with vertices named by their colour strings and filled by
/// component.
inline std::string col_to_dot(const Graph &g, const CircularParams &params, long long budget = 5000)
{
    auto cc = col_components(g, params, budget);
    const auto &space = *cc.space;
    auto name = [&](std::size_t i) {
        std::string s;
        for (int c : space.state(i))
            s += (s.empty() ? "" : ",") + std::to_string(c);
        return "\"" + s + "\"";
    };
    std::ostringstream out;
    out << "graph Col {\n";
    for (std::size_t i = 0; i < space.size(); ++i)
        out << "  " << name(i) << " [group=" << cc.component[i] << "];\n";
    for (std::size_t i = 0; i < space.size(); ++i) {
        auto colours = space.state(i);
        for (Vertex v = 0; v < g.order(); ++v)
            for (int c = colours[static_cast<std::size_t>(v)] + 1; c < params.p; ++c) {
                auto j = space.find_recoloured(i, colours, v, c);
                if (j)
                    out << "  " << name(i) << " -- " << name(*j) << ";\n";
            }
    }
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Explanation tree as a nested record

inline nlohmann::json explanation_to_json(const ExplanationNode &node)
{
    nlohmann::json j;
    j["kind"] = node.kind;
    j["verdict"] = to_string(node.verdict);
    j["vertices"] = node.vertices;
    j["detail"] = node.detail;
    j["children"] = nlohmann::json::array();
    for (const auto &c : node.children)
        j["children"].push_back(explanation_to_json(c));
    return j;
}

} // namespace circmix

#endif
