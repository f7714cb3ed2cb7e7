#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "labelcut/error.hpp"

namespace labelcut {

using VertexId = int;
using LabelId = int;
using EdgeId = int;
using Weight = long long; // numerator over LabeledGraph::weight_denom

// Which edges fall when a label set is removed. Independent removal deletes
// exactly the edges whose label set intersects the selection; cascading first
// closes the selection under "shares an edge with a selected label" and then
// removes. The two coincide on non-overlapping graphs.
enum class Semantics { independent, cascading };

inline std::string default_label_name(LabelId id) {
    if (id >= 0 && id < 26) return std::string(1, static_cast<char>('A' + id));
    return "L" + std::to_string(id);
}

struct Label {
    LabelId id = 0;
    Weight weight = 1;  // numerator; the rational weight is weight / weight_denom
    std::string name;   // empty -> derived from id (A..Z, then L26, L27, ...)
};

struct Edge {
    VertexId u = 0, v = 0;       // normalized u < v
    std::vector<LabelId> labels; // sorted, unique, nonempty
};

struct LabeledGraph {
    int vertex_count = 0;
    std::vector<Edge> edges;   // sorted by (u, v); EdgeId indexes this vector
    std::vector<Label> labels; // labels[i].id == i
    Weight weight_denom = 1;
    std::optional<std::pair<VertexId, VertexId>> terminals;
    bool non_overlapping = true; // every edge carries exactly one label

    int label_count() const { return static_cast<int>(labels.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    Weight weight_of(std::span<const LabelId> ids) const {
        Weight total = 0;
        for (LabelId id : ids) total += labels[static_cast<size_t>(id)].weight;
        return total;
    }

    std::string label_name(LabelId id) const {
        const Label& l = labels[static_cast<size_t>(id)];
        return l.name.empty() ? default_label_name(id) : l.name;
    }
};

struct EdgeInput {
    VertexId u = 0, v = 0;
    std::vector<LabelId> labels;
};

struct BuildOptions {
    // (label id, numerator) overrides; anything unlisted defaults to rational 1.
    std::vector<std::pair<LabelId, Weight>> weights;
    Weight weight_denom = 1;
    std::optional<std::pair<VertexId, VertexId>> terminals;
    bool require_connected = true;
};

namespace detail {

inline std::vector<std::vector<std::pair<VertexId, EdgeId>>> adjacency(const LabeledGraph& g) {
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> out(
        static_cast<size_t>(g.vertex_count));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        out[static_cast<size_t>(g.edges[static_cast<size_t>(e)].u)].emplace_back(
            g.edges[static_cast<size_t>(e)].v, e);
        out[static_cast<size_t>(g.edges[static_cast<size_t>(e)].v)].emplace_back(
            g.edges[static_cast<size_t>(e)].u, e);
    }
    return out;
}

// BFS over a restricted edge set; the workhorse behind every connectivity
// question in this module.
inline std::vector<char> reachable(const LabeledGraph& g, std::span<const EdgeId> surviving,
                                   VertexId start) {
    std::vector<char> edge_alive(static_cast<size_t>(g.edge_count()), 0);
    for (EdgeId e : surviving) {
        if (e < 0 || e >= g.edge_count())
            throw Error(errc::unknown_edge, "edge id " + std::to_string(e) + " out of range");
        edge_alive[static_cast<size_t>(e)] = 1;
    }
    auto adj = adjacency(g);
    std::vector<char> seen(static_cast<size_t>(g.vertex_count), 0);
    std::vector<VertexId> queue;
    seen[static_cast<size_t>(start)] = 1;
    queue.push_back(start);
    for (size_t head = 0; head < queue.size(); ++head) {
        VertexId v = queue[head];
        for (auto [w, e] : adj[static_cast<size_t>(v)]) {
            if (!edge_alive[static_cast<size_t>(e)] || seen[static_cast<size_t>(w)]) continue;
            seen[static_cast<size_t>(w)] = 1;
            queue.push_back(w);
        }
    }
    return seen;
}

inline std::vector<EdgeId> all_edge_ids(const LabeledGraph& g) {
    std::vector<EdgeId> ids(static_cast<size_t>(g.edge_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e) ids[static_cast<size_t>(e)] = e;
    return ids;
}

} // namespace detail

inline bool is_connected(const LabeledGraph& g, std::span<const EdgeId> surviving) {
    if (g.vertex_count <= 1) return true;
    auto seen = detail::reachable(g, surviving, 0);
    return std::find(seen.begin(), seen.end(), 0) == seen.end();
}

inline bool is_connected(const LabeledGraph& g) {
    auto ids = detail::all_edge_ids(g);
    return is_connected(g, ids);
}

inline bool is_st_connected(const LabeledGraph& g, VertexId s, VertexId t,
                            std::span<const EdgeId> surviving) {
    if (s < 0 || s >= g.vertex_count)
        throw Error(errc::vertex_out_of_range, "s = " + std::to_string(s));
    if (t < 0 || t >= g.vertex_count)
        throw Error(errc::vertex_out_of_range, "t = " + std::to_string(t));
    auto seen = detail::reachable(g, surviving, s);
    return seen[static_cast<size_t>(t)] != 0;
}

// Validates and canonicalizes: endpoints normalized to u < v, edges sorted by
// (u, v), label sets sorted unique. Edge ids refer to the canonical order.
inline LabeledGraph build_graph(int vertex_count, std::vector<EdgeInput> edge_list,
                                std::vector<Label> label_table, Weight weight_denom = 1,
                                std::optional<std::pair<VertexId, VertexId>> terminals = {},
                                bool require_connected = true) {
    if (vertex_count < 1)
        throw Error(errc::invalid_argument,
                    "vertex count must be >= 1, got " + std::to_string(vertex_count));
    if (weight_denom < 1)
        throw Error(errc::non_positive_weight,
                    "weight denominator " + std::to_string(weight_denom));

    LabeledGraph g;
    g.vertex_count = vertex_count;
    g.weight_denom = weight_denom;
    g.labels = std::move(label_table);
    for (size_t i = 0; i < g.labels.size(); ++i) {
        g.labels[i].id = static_cast<LabelId>(i);
        if (g.labels[i].weight <= 0)
            throw Error(errc::non_positive_weight,
                        "label " + std::to_string(i) + " has weight " +
                            std::to_string(g.labels[i].weight));
    }

    const int label_count = static_cast<int>(g.labels.size());
    std::set<std::pair<VertexId, VertexId>> seen_edges;
    g.edges.reserve(edge_list.size());
    for (size_t i = 0; i < edge_list.size(); ++i) {
        EdgeInput& in = edge_list[i];
        if (in.u < 0 || in.u >= vertex_count || in.v < 0 || in.v >= vertex_count)
            throw Error(errc::vertex_out_of_range,
                        "edge " + std::to_string(i) + " endpoints (" + std::to_string(in.u) +
                            ", " + std::to_string(in.v) + ")");
        if (in.u == in.v)
            throw Error(errc::self_loop,
                        "edge " + std::to_string(i) + " at vertex " + std::to_string(in.u));
        Edge e;
        e.u = std::min(in.u, in.v);
        e.v = std::max(in.u, in.v);
        if (!seen_edges.insert({e.u, e.v}).second)
            throw Error(errc::duplicate_edge,
                        "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
        e.labels = std::move(in.labels);
        std::sort(e.labels.begin(), e.labels.end());
        e.labels.erase(std::unique(e.labels.begin(), e.labels.end()), e.labels.end());
        if (e.labels.empty())
            throw Error(errc::empty_label_set, "edge (" + std::to_string(e.u) + ", " +
                                                   std::to_string(e.v) + ")");
        for (LabelId l : e.labels)
            if (l < 0 || l >= label_count)
                throw Error(errc::unknown_label,
                            "label " + std::to_string(l) + " on edge (" + std::to_string(e.u) +
                                ", " + std::to_string(e.v) + ")");
        g.edges.push_back(std::move(e));
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    g.non_overlapping = std::all_of(g.edges.begin(), g.edges.end(),
                                    [](const Edge& e) { return e.labels.size() == 1; });

    if (terminals) {
        auto [s, t] = *terminals;
        if (s < 0 || s >= vertex_count)
            throw Error(errc::vertex_out_of_range, "terminal s = " + std::to_string(s));
        if (t < 0 || t >= vertex_count)
            throw Error(errc::vertex_out_of_range, "terminal t = " + std::to_string(t));
        if (s == t)
            throw Error(errc::invalid_argument, "terminals coincide at " + std::to_string(s));
        g.terminals = terminals;
    }

    if (require_connected && !is_connected(g)) {
        throw Error(errc::disconnected, "graph with " + std::to_string(vertex_count) +
                                            " vertices is not connected");
    }
    return g;
}

// Convenience form: label table synthesized from a count plus weight overrides.
inline LabeledGraph build_graph(int vertex_count, std::vector<EdgeInput> edge_list,
                                int label_count, BuildOptions opts = {}) {
    if (label_count < 0)
        throw Error(errc::invalid_argument, "negative label count");
    std::vector<Label> table(static_cast<size_t>(label_count));
    for (int i = 0; i < label_count; ++i) {
        table[static_cast<size_t>(i)].id = i;
        table[static_cast<size_t>(i)].weight = opts.weight_denom; // rational 1
    }
    for (auto [id, w] : opts.weights) {
        if (id < 0 || id >= label_count)
            throw Error(errc::unknown_label, "weight for label " + std::to_string(id));
        table[static_cast<size_t>(id)].weight = w;
    }
    return build_graph(vertex_count, std::move(edge_list), std::move(table), opts.weight_denom,
                       opts.terminals, opts.require_connected);
}

// Correlated-failure propagation: grow the seed until no surviving edge couples a selected
// label with an unselected one. The result is the union of the correlation
// classes touched by the seed.
inline std::vector<LabelId> cascading_closure(const LabeledGraph& g, std::span<const LabelId> seed) {
    std::vector<char> in(static_cast<size_t>(g.label_count()), 0);
    for (LabelId l : seed) {
        if (l < 0 || l >= g.label_count())
            throw Error(errc::unknown_label, "label " + std::to_string(l));
        in[static_cast<size_t>(l)] = 1;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Edge& e : g.edges) {
            bool hit = false;
            for (LabelId l : e.labels)
                if (in[static_cast<size_t>(l)]) { hit = true; break; }
            if (!hit) continue;
            for (LabelId l : e.labels) {
                if (!in[static_cast<size_t>(l)]) {
                    in[static_cast<size_t>(l)] = 1;
                    changed = true;
                }
            }
        }
    }
    std::vector<LabelId> out;
    for (LabelId l = 0; l < g.label_count(); ++l)
        if (in[static_cast<size_t>(l)]) out.push_back(l);
    return out;
}

// Surviving edge ids (ascending) after removing label set S under the given
// semantics.
inline std::vector<EdgeId> remove_labels(const LabeledGraph& g, std::span<const LabelId> selection,
                                         Semantics semantics) {
    std::vector<LabelId> effective;
    if (semantics == Semantics::cascading) {
        effective = cascading_closure(g, selection);
    } else {
        effective.assign(selection.begin(), selection.end());
        for (LabelId l : effective)
            if (l < 0 || l >= g.label_count())
                throw Error(errc::unknown_label, "label " + std::to_string(l));
        std::sort(effective.begin(), effective.end());
        effective.erase(std::unique(effective.begin(), effective.end()), effective.end());
    }
    std::vector<char> removed(static_cast<size_t>(g.label_count()), 0);
    for (LabelId l : effective) removed[static_cast<size_t>(l)] = 1;

    std::vector<EdgeId> surviving;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        bool dead = false;
        for (LabelId l : g.edges[static_cast<size_t>(e)].labels)
            if (removed[static_cast<size_t>(l)]) { dead = true; break; }
        if (!dead) surviving.push_back(e);
    }
    return surviving;
}

struct GraphStats {
    std::vector<int> label_degree;    // D_L(v): distinct labels over incident edges
    int min_label_degree = 0;
    std::vector<int> label_frequency; // edges carrying each label
    int max_label_frequency = 0;
};

inline GraphStats compute_stats(const LabeledGraph& g) {
    GraphStats stats;
    stats.label_frequency.assign(static_cast<size_t>(g.label_count()), 0);
    std::vector<std::vector<LabelId>> incident(static_cast<size_t>(g.vertex_count));
    for (const Edge& e : g.edges) {
        for (LabelId l : e.labels) {
            ++stats.label_frequency[static_cast<size_t>(l)];
            incident[static_cast<size_t>(e.u)].push_back(l);
            incident[static_cast<size_t>(e.v)].push_back(l);
        }
    }
    stats.label_degree.resize(static_cast<size_t>(g.vertex_count));
    for (int v = 0; v < g.vertex_count; ++v) {
        auto& ls = incident[static_cast<size_t>(v)];
        std::sort(ls.begin(), ls.end());
        ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
        stats.label_degree[static_cast<size_t>(v)] = static_cast<int>(ls.size());
    }
    stats.min_label_degree =
        *std::min_element(stats.label_degree.begin(), stats.label_degree.end());
    stats.max_label_frequency =
        stats.label_frequency.empty()
            ? 0
            : *std::max_element(stats.label_frequency.begin(), stats.label_frequency.end());
    return stats;
}

} // namespace labelcut
