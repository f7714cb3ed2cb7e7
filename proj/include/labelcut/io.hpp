#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <vector>

#include "labelcut/graph.hpp"

namespace labelcut {

// Instance text format:
//
//   # comment
//   labelgraph <n> <m> <|L|>
//   denom <d>              (optional, default 1)
//   terminals <s> <t>      (optional)
//   weight <label-id> <w>  (numerator over denom; unlisted labels weigh denom)
//   edge <u> <v> <id>[,<id>...]
//
// emit() writes the canonical form: fixed section order, edges sorted by
// (u, v), label lists ascending, default weights omitted. parse(emit(g))
// reproduces g exactly.

namespace detail {

inline long long parse_int(const std::string& token, int line, const char* what) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw Error(errc::parse_error, std::string("bad ") + what + " `" + token + "`", line);
    return value;
}

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && isspace(static_cast<unsigned char>(line[i]))) ++i;
        size_t start = i;
        while (i < line.size() && !isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

} // namespace detail

inline LabeledGraph parse(const std::string& text) {
    int declared_n = 0, declared_m = 0, declared_labels = 0;
    bool header_seen = false;
    int header_line = 0;
    std::optional<Weight> denom;
    std::optional<std::pair<VertexId, VertexId>> terminals;
    std::vector<std::pair<LabelId, Weight>> weights; // validated after denom known
    std::vector<char> weight_set;
    std::vector<EdgeInput> edges;

    size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string line =
            text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        auto tokens = detail::tokenize(line);
        if (tokens.empty()) continue;

        if (!header_seen) {
            if (tokens[0] != "labelgraph" || tokens.size() != 4)
                throw Error(errc::parse_error, "expected `labelgraph <n> <m> <|L|>`", line_no);
            declared_n = static_cast<int>(detail::parse_int(tokens[1], line_no, "vertex count"));
            declared_m = static_cast<int>(detail::parse_int(tokens[2], line_no, "edge count"));
            declared_labels = static_cast<int>(detail::parse_int(tokens[3], line_no, "label count"));
            if (declared_n < 1 || declared_m < 0 || declared_labels < 0)
                throw Error(errc::parse_error, "header counts out of range", line_no);
            header_seen = true;
            header_line = line_no;
            weight_set.assign(static_cast<size_t>(declared_labels), 0);
            continue;
        }
        if (tokens[0] == "denom") {
            if (tokens.size() != 2)
                throw Error(errc::parse_error, "expected `denom <d>`", line_no);
            if (denom)
                throw Error(errc::parse_error, "duplicate denom line", line_no);
            denom = detail::parse_int(tokens[1], line_no, "denominator");
            if (*denom < 1)
                throw Error(errc::parse_error, "denominator must be positive", line_no);
        } else if (tokens[0] == "terminals") {
            if (tokens.size() != 3)
                throw Error(errc::parse_error, "expected `terminals <s> <t>`", line_no);
            if (terminals)
                throw Error(errc::parse_error, "duplicate terminals line", line_no);
            VertexId s = static_cast<int>(detail::parse_int(tokens[1], line_no, "terminal"));
            VertexId t = static_cast<int>(detail::parse_int(tokens[2], line_no, "terminal"));
            if (s < 0 || s >= declared_n || t < 0 || t >= declared_n)
                throw Error(errc::parse_error, "terminal out of range", line_no);
            terminals = {s, t};
        } else if (tokens[0] == "weight") {
            if (tokens.size() != 3)
                throw Error(errc::parse_error, "expected `weight <label-id> <w>`", line_no);
            LabelId id = static_cast<int>(detail::parse_int(tokens[1], line_no, "label id"));
            Weight w = detail::parse_int(tokens[2], line_no, "weight");
            if (id < 0 || id >= declared_labels)
                throw Error(errc::parse_error, "label id " + tokens[1] + " outside 0..|L|-1",
                            line_no);
            if (w < 1)
                throw Error(errc::parse_error, "weight must be positive", line_no);
            if (weight_set[static_cast<size_t>(id)])
                throw Error(errc::parse_error, "duplicate weight for label " + tokens[1], line_no);
            weight_set[static_cast<size_t>(id)] = 1;
            weights.push_back({id, w});
        } else if (tokens[0] == "edge") {
            if (tokens.size() != 4)
                throw Error(errc::parse_error, "expected `edge <u> <v> <ids>`", line_no);
            EdgeInput e;
            e.u = static_cast<int>(detail::parse_int(tokens[1], line_no, "vertex"));
            e.v = static_cast<int>(detail::parse_int(tokens[2], line_no, "vertex"));
            if (e.u < 0 || e.u >= declared_n || e.v < 0 || e.v >= declared_n)
                throw Error(errc::parse_error, "vertex out of range", line_no);
            size_t start = 0;
            const std::string& ids = tokens[3];
            while (start <= ids.size()) {
                size_t comma = ids.find(',', start);
                std::string piece =
                    ids.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                start = comma == std::string::npos ? ids.size() + 1 : comma + 1;
                LabelId id = static_cast<int>(detail::parse_int(piece, line_no, "label id"));
                if (id < 0 || id >= declared_labels)
                    throw Error(errc::parse_error, "label id " + piece + " outside 0..|L|-1",
                                line_no);
                e.labels.push_back(id);
            }
            edges.push_back(std::move(e));
        } else {
            throw Error(errc::parse_error, "unknown directive `" + tokens[0] + "`", line_no);
        }
    }
    if (!header_seen) throw Error(errc::parse_error, "empty instance file", 1);
    if (static_cast<int>(edges.size()) != declared_m)
        throw Error(errc::parse_error,
                    "header declares " + std::to_string(declared_m) + " edges, found " +
                        std::to_string(edges.size()),
                    header_line);

    BuildOptions opts;
    opts.weight_denom = denom.value_or(1);
    opts.terminals = terminals;
    opts.weights = std::move(weights);
    return build_graph(declared_n, std::move(edges), declared_labels, std::move(opts));
}

inline std::string emit(const LabeledGraph& g) {
    std::string out = "labelgraph " + std::to_string(g.vertex_count) + " " +
                      std::to_string(g.edge_count()) + " " + std::to_string(g.label_count()) +
                      "\n";
    if (g.weight_denom != 1) out += "denom " + std::to_string(g.weight_denom) + "\n";
    if (g.terminals)
        out += "terminals " + std::to_string(g.terminals->first) + " " +
               std::to_string(g.terminals->second) + "\n";
    for (const Label& l : g.labels)
        if (l.weight != g.weight_denom)
            out += "weight " + std::to_string(l.id) + " " + std::to_string(l.weight) + "\n";
    for (const Edge& e : g.edges) {
        out += "edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " ";
        for (size_t i = 0; i < e.labels.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(e.labels[i]);
        }
        out += '\n';
    }
    return out;
}

// Structural equality in file-format terms (display names are not serialized).
inline bool same_instance(const LabeledGraph& a, const LabeledGraph& b) {
    if (a.vertex_count != b.vertex_count || a.weight_denom != b.weight_denom ||
        a.terminals != b.terminals || a.label_count() != b.label_count() ||
        a.edge_count() != b.edge_count())
        return false;
    for (int l = 0; l < a.label_count(); ++l)
        if (a.labels[static_cast<size_t>(l)].weight != b.labels[static_cast<size_t>(l)].weight)
            return false;
    for (EdgeId e = 0; e < a.edge_count(); ++e) {
        const Edge& ea = a.edges[static_cast<size_t>(e)];
        const Edge& eb = b.edges[static_cast<size_t>(e)];
        if (ea.u != eb.u || ea.v != eb.v || ea.labels != eb.labels) return false;
    }
    return true;
}

} // namespace labelcut
