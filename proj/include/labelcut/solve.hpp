#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <variant>
#include <vector>

#include "labelcut/graph.hpp"
#include "labelcut/transform.hpp"

namespace labelcut {

enum class Variant { global, st };

struct SolveConfig {
    Variant variant = Variant::global;
    Semantics semantics = Semantics::cascading;
    // Exact enumeration refuses label counts above this; the problem is NP-hard
    // and the solver is meant for desk-scale instances.
    int budget = 24;
};

struct CutSolution {
    std::vector<LabelId> labels; // sorted; under cascading this is the closed set
    Weight weight_num = 0;
    Weight weight_denom = 1;
    // Component of vertex 0 after removal (global) or the separated terminals (st).
    std::variant<std::vector<VertexId>, std::pair<VertexId, VertexId>> witness;
};

namespace detail {

// a is lexicographically before b when the smallest differing label belongs to a.
inline bool lex_less(std::uint64_t a, std::uint64_t b) {
    if (a == b) return false;
    std::uint64_t low = (a ^ b) & (~(a ^ b) + 1);
    return (a & low) != 0;
}

struct SubsetItem {
    std::uint64_t label_mask = 0;
    Weight weight = 0;
};

// Enumeration units: single labels under independent semantics, whole
// correlation classes under cascading (a cascading cut is a closed set, and the
// closed sets are exactly the unions of classes).
inline std::vector<SubsetItem> subset_items(const LabeledGraph& g, Semantics semantics) {
    std::vector<SubsetItem> items;
    if (semantics == Semantics::independent) {
        items.resize(static_cast<size_t>(g.label_count()));
        for (LabelId l = 0; l < g.label_count(); ++l) {
            items[static_cast<size_t>(l)].label_mask = 1ull << l;
            items[static_cast<size_t>(l)].weight = g.labels[static_cast<size_t>(l)].weight;
        }
    } else {
        for (const auto& members : correlation_classes(g)) {
            SubsetItem item;
            for (LabelId l : members) {
                item.label_mask |= 1ull << l;
                item.weight += g.labels[static_cast<size_t>(l)].weight;
            }
            items.push_back(item);
        }
    }
    return items;
}

// Best-first enumeration of label subsets in nondecreasing weight with
// lexicographic tie-break; the first feasible pop is therefore the
// minimum-weight, lexicographically-least cut. Surviving paths (st) or
// spanning trees (global) found along the way prune subsets that cannot touch
// them.
class CutSearch {
public:
    CutSearch(const LabeledGraph& g, Variant variant, Semantics semantics)
        : graph_(g), variant_(variant), items_(subset_items(g, semantics)) {
        if (variant_ == Variant::st) {
            if (!g.terminals)
                throw Error(errc::no_terminals, "st variant requires terminals");
            source_ = g.terminals->first;
            sink_ = g.terminals->second;
        }
        edge_masks_.resize(static_cast<size_t>(g.edge_count()));
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            for (LabelId l : g.edges[static_cast<size_t>(e)].labels)
                edge_masks_[static_cast<size_t>(e)] |= 1ull << l;

        adj_offset_.assign(static_cast<size_t>(g.vertex_count) + 1, 0);
        for (const Edge& e : g.edges) {
            ++adj_offset_[static_cast<size_t>(e.u) + 1];
            ++adj_offset_[static_cast<size_t>(e.v) + 1];
        }
        for (size_t v = 1; v < adj_offset_.size(); ++v) adj_offset_[v] += adj_offset_[v - 1];
        adj_.resize(adj_offset_.back());
        std::vector<int> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Edge& edge = g.edges[static_cast<size_t>(e)];
            adj_[static_cast<size_t>(cursor[static_cast<size_t>(edge.u)]++)] = {edge.v, e};
            adj_[static_cast<size_t>(cursor[static_cast<size_t>(edge.v)]++)] = {edge.u, e};
        }
        seen_.assign(static_cast<size_t>(g.vertex_count), 0);
        parent_edge_.assign(static_cast<size_t>(g.vertex_count), -1);
        queue_.reserve(static_cast<size_t>(g.vertex_count));
    }

    struct Outcome {
        bool found = false;
        std::uint64_t label_mask = 0;
        Weight weight = 0;
    };

    // cap: stop (not found) once the frontier weight exceeds it.
    Outcome run(std::optional<Weight> cap) {
        struct Node {
            Weight weight;
            std::uint64_t label_mask;
            int last_item;
        };
        auto later = [](const Node& a, const Node& b) {
            if (a.weight != b.weight) return a.weight > b.weight;
            return lex_less(b.label_mask, a.label_mask);
        };
        std::priority_queue<Node, std::vector<Node>, decltype(later)> frontier(later);
        frontier.push({0, 0, -1});
        while (!frontier.empty()) {
            Node node = frontier.top();
            frontier.pop();
            if (cap && node.weight > *cap) return {};
            if (!pruned(node.label_mask) && disconnects(node.label_mask))
                return {true, node.label_mask, node.weight};
            for (int j = node.last_item + 1; j < static_cast<int>(items_.size()); ++j) {
                frontier.push({node.weight + items_[static_cast<size_t>(j)].weight,
                               node.label_mask | items_[static_cast<size_t>(j)].label_mask, j});
            }
        }
        return {};
    }

private:
    // A cut must pick a label from every surviving structure seen so far.
    bool pruned(std::uint64_t label_mask) const {
        for (std::uint64_t w : witnesses_)
            if (!(w & label_mask)) return true;
        return false;
    }

    bool disconnects(std::uint64_t label_mask) {
        VertexId start = variant_ == Variant::st ? source_ : 0;
        ++stamp_;
        seen_[static_cast<size_t>(start)] = stamp_;
        queue_.clear();
        queue_.push_back(start);
        int reached = 1;
        for (size_t head = 0; head < queue_.size(); ++head) {
            VertexId v = queue_[head];
            for (int i = adj_offset_[static_cast<size_t>(v)];
                 i < adj_offset_[static_cast<size_t>(v) + 1]; ++i) {
                auto [w, e] = adj_[static_cast<size_t>(i)];
                if (edge_masks_[static_cast<size_t>(e)] & label_mask) continue;
                if (seen_[static_cast<size_t>(w)] == stamp_) continue;
                seen_[static_cast<size_t>(w)] = stamp_;
                parent_edge_[static_cast<size_t>(w)] = e;
                queue_.push_back(w);
                ++reached;
            }
        }
        if (variant_ == Variant::st) {
            if (seen_[static_cast<size_t>(sink_)] != stamp_) return true;
            record_path_witness();
            return false;
        }
        if (reached < graph_.vertex_count) return true;
        record_tree_witness();
        return false;
    }

    void record_path_witness() {
        std::uint64_t labels = 0;
        VertexId v = sink_;
        while (v != source_) {
            EdgeId e = parent_edge_[static_cast<size_t>(v)];
            labels |= edge_masks_[static_cast<size_t>(e)];
            const Edge& edge = graph_.edges[static_cast<size_t>(e)];
            v = edge.u == v ? edge.v : edge.u;
        }
        push_witness(labels);
    }

    void record_tree_witness() {
        std::uint64_t labels = 0;
        for (size_t i = 1; i < queue_.size(); ++i)
            labels |= edge_masks_[static_cast<size_t>(parent_edge_[static_cast<size_t>(queue_[i])])];
        push_witness(labels);
    }

    void push_witness(std::uint64_t labels) {
        if (witnesses_.size() >= 64) return;
        if (std::find(witnesses_.begin(), witnesses_.end(), labels) == witnesses_.end())
            witnesses_.push_back(labels);
    }

    const LabeledGraph& graph_;
    Variant variant_;
    VertexId source_ = 0, sink_ = 0;
    std::vector<SubsetItem> items_;
    std::vector<std::uint64_t> edge_masks_;
    std::vector<int> adj_offset_;
    std::vector<std::pair<VertexId, EdgeId>> adj_;
    std::vector<std::uint64_t> witnesses_;
    std::vector<int> seen_;
    std::vector<EdgeId> parent_edge_;
    std::vector<VertexId> queue_;
    int stamp_ = 0;
};

inline void check_solver_preconditions(const LabeledGraph& g, const SolveConfig& cfg) {
    if (cfg.budget < 1) throw Error(errc::invalid_argument, "budget must be >= 1");
    if (g.label_count() > cfg.budget)
        throw Error(errc::budget_exceeded, std::to_string(g.label_count()) +
                                               " labels exceed budget " +
                                               std::to_string(cfg.budget));
    if (g.label_count() > 64)
        throw Error(errc::budget_exceeded, "label counts above 64 are not supported");
    if (cfg.variant == Variant::global && g.vertex_count < 2)
        throw Error(errc::infeasible, "no label cut exists for a single-vertex graph");
}

inline std::vector<LabelId> mask_to_labels(std::uint64_t mask) {
    std::vector<LabelId> out;
    for (int l = 0; l < 64; ++l)
        if (mask & (1ull << l)) out.push_back(l);
    return out;
}

} // namespace detail

// Minimum-weight label cut by weighted subset enumeration. Deterministic:
// among minimum-weight cuts it returns the lexicographically least label set.
// Under cascading semantics the returned set is closed under correlated-failure
// propagation and the weight counts the whole closed set.
inline CutSolution exact_min_label_cut(const LabeledGraph& g, const SolveConfig& cfg) {
    detail::check_solver_preconditions(g, cfg);
    detail::CutSearch search(g, cfg.variant, cfg.semantics);
    auto outcome = search.run(std::nullopt);
    if (!outcome.found)
        throw Error(errc::infeasible, "no feasible label cut"); // only n == 1 reaches this

    CutSolution solution;
    solution.labels = detail::mask_to_labels(outcome.label_mask);
    solution.weight_num = outcome.weight;
    solution.weight_denom = g.weight_denom;
    auto surviving = remove_labels(g, solution.labels, Semantics::independent);
    if (cfg.variant == Variant::st) {
        solution.witness = *g.terminals;
    } else {
        auto seen = detail::reachable(g, surviving, 0);
        std::vector<VertexId> component;
        for (VertexId v = 0; v < g.vertex_count; ++v)
            if (seen[static_cast<size_t>(v)]) component.push_back(v);
        solution.witness = std::move(component);
    }
    return solution;
}

// Decision form: is there a cut of weight <= p? Shares the enumeration but
// stops as soon as the frontier weight passes p.
inline bool decide_cut_at_most(const LabeledGraph& g, const SolveConfig& cfg, Weight p) {
    if (p < 1) throw Error(errc::invalid_argument, "p must be a positive integer");
    detail::check_solver_preconditions(g, cfg);
    detail::CutSearch search(g, cfg.variant, cfg.semantics);
    return search.run(p * g.weight_denom).found;
}

// Path-hitting heuristic for the st variant: repeatedly take a shortest
// surviving s-t path and pick the label (class, under cascading) on it that
// kills the most surviving edges per unit weight. Feasible by construction; no
// approximation ratio is claimed.
inline CutSolution greedy_st_label_cut(const LabeledGraph& g, const SolveConfig& cfg) {
    if (!g.terminals) throw Error(errc::no_terminals, "st variant requires terminals");
    auto [s, t] = *g.terminals;

    struct Unit {
        std::vector<LabelId> members;
        Weight weight = 0;
        LabelId min_label = 0;
    };
    std::vector<Unit> units;
    if (cfg.semantics == Semantics::cascading) {
        for (auto& members : correlation_classes(g)) {
            Unit u;
            u.weight = g.weight_of(members);
            u.min_label = members.front();
            u.members = std::move(members);
            units.push_back(std::move(u));
        }
    } else {
        for (LabelId l = 0; l < g.label_count(); ++l)
            units.push_back({{l}, g.labels[static_cast<size_t>(l)].weight, l});
    }
    std::vector<int> unit_of(static_cast<size_t>(g.label_count()));
    for (size_t u = 0; u < units.size(); ++u)
        for (LabelId l : units[u].members) unit_of[static_cast<size_t>(l)] = static_cast<int>(u);

    auto adj = detail::adjacency(g);
    std::vector<char> label_removed(static_cast<size_t>(g.label_count()), 0);
    auto edge_alive = [&](EdgeId e) {
        for (LabelId l : g.edges[static_cast<size_t>(e)].labels)
            if (label_removed[static_cast<size_t>(l)]) return false;
        return true;
    };

    CutSolution solution;
    solution.weight_denom = g.weight_denom;
    solution.witness = std::pair<VertexId, VertexId>{s, t};

    while (true) {
        // shortest surviving s-t path
        std::vector<EdgeId> parent(static_cast<size_t>(g.vertex_count), -1);
        std::vector<char> seen(static_cast<size_t>(g.vertex_count), 0);
        std::vector<VertexId> queue{s};
        seen[static_cast<size_t>(s)] = 1;
        for (size_t head = 0; head < queue.size() && !seen[static_cast<size_t>(t)]; ++head) {
            VertexId v = queue[head];
            for (auto [w, e] : adj[static_cast<size_t>(v)]) {
                if (seen[static_cast<size_t>(w)] || !edge_alive(e)) continue;
                seen[static_cast<size_t>(w)] = 1;
                parent[static_cast<size_t>(w)] = e;
                queue.push_back(w);
            }
        }
        if (!seen[static_cast<size_t>(t)]) break;

        std::vector<int> candidates;
        for (VertexId v = t; v != s;) {
            EdgeId e = parent[static_cast<size_t>(v)];
            for (LabelId l : g.edges[static_cast<size_t>(e)].labels) {
                int u = unit_of[static_cast<size_t>(l)];
                if (std::find(candidates.begin(), candidates.end(), u) == candidates.end())
                    candidates.push_back(u);
            }
            const Edge& edge = g.edges[static_cast<size_t>(e)];
            v = edge.u == v ? edge.v : edge.u;
        }

        int best = -1;
        long long best_removed = 0;
        for (int u : candidates) {
            long long removed = 0;
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                if (!edge_alive(e)) continue;
                for (LabelId l : g.edges[static_cast<size_t>(e)].labels) {
                    if (unit_of[static_cast<size_t>(l)] == u) {
                        ++removed;
                        break;
                    }
                }
            }
            if (best < 0) {
                best = u;
                best_removed = removed;
                continue;
            }
            // compare removed/weight as cross products; ties to the smaller label
            long long lhs = removed * units[static_cast<size_t>(best)].weight;
            long long rhs = best_removed * units[static_cast<size_t>(u)].weight;
            if (lhs > rhs || (lhs == rhs && units[static_cast<size_t>(u)].min_label <
                                                units[static_cast<size_t>(best)].min_label)) {
                best = u;
                best_removed = removed;
            }
        }
        for (LabelId l : units[static_cast<size_t>(best)].members)
            label_removed[static_cast<size_t>(l)] = 1;
        solution.weight_num += units[static_cast<size_t>(best)].weight;
    }

    for (LabelId l = 0; l < g.label_count(); ++l)
        if (label_removed[static_cast<size_t>(l)]) solution.labels.push_back(l);
    return solution;
}

struct EdgeCut {
    std::vector<EdgeId> edges;
    int value = 0;
};

// Minimum s-t edge cut ignoring labels: unit-capacity max flow by shortest
// augmenting paths; the value equals the maximum number of edge-disjoint
// s-t paths.
inline EdgeCut min_edge_cut(const LabeledGraph& g, VertexId s, VertexId t) {
    if (s < 0 || s >= g.vertex_count)
        throw Error(errc::vertex_out_of_range, "s = " + std::to_string(s));
    if (t < 0 || t >= g.vertex_count)
        throw Error(errc::vertex_out_of_range, "t = " + std::to_string(t));
    if (s == t) throw Error(errc::invalid_argument, "s and t coincide");

    // arcs 2e and 2e+1 are the two directions of undirected edge e; each has
    // capacity 1 and the other as its reverse
    const int m = g.edge_count();
    std::vector<int> flow(static_cast<size_t>(2 * m), 0);
    std::vector<std::vector<int>> out(static_cast<size_t>(g.vertex_count));
    std::vector<int> arc_to(static_cast<size_t>(2 * m));
    for (EdgeId e = 0; e < m; ++e) {
        const Edge& edge = g.edges[static_cast<size_t>(e)];
        arc_to[static_cast<size_t>(2 * e)] = edge.v;
        arc_to[static_cast<size_t>(2 * e + 1)] = edge.u;
        out[static_cast<size_t>(edge.u)].push_back(2 * e);
        out[static_cast<size_t>(edge.v)].push_back(2 * e + 1);
    }
    auto residual = [&](int arc) { return 1 - flow[static_cast<size_t>(arc)]; };

    EdgeCut cut;
    std::vector<int> parent_arc(static_cast<size_t>(g.vertex_count));
    while (true) {
        std::fill(parent_arc.begin(), parent_arc.end(), -1);
        parent_arc[static_cast<size_t>(s)] = -2;
        std::vector<VertexId> queue{s};
        for (size_t head = 0; head < queue.size() && parent_arc[static_cast<size_t>(t)] == -1;
             ++head) {
            VertexId v = queue[head];
            for (int arc : out[static_cast<size_t>(v)]) {
                VertexId w = arc_to[static_cast<size_t>(arc)];
                if (parent_arc[static_cast<size_t>(w)] != -1 || residual(arc) <= 0) continue;
                parent_arc[static_cast<size_t>(w)] = arc;
                queue.push_back(w);
            }
        }
        if (parent_arc[static_cast<size_t>(t)] == -1) {
            // residual-reachable side determines the cut
            std::vector<char> side(static_cast<size_t>(g.vertex_count), 0);
            for (VertexId v : queue) side[static_cast<size_t>(v)] = 1;
            for (EdgeId e = 0; e < m; ++e) {
                const Edge& edge = g.edges[static_cast<size_t>(e)];
                if (side[static_cast<size_t>(edge.u)] != side[static_cast<size_t>(edge.v)])
                    cut.edges.push_back(e);
            }
            return cut;
        }
        for (VertexId v = t; v != s;) {
            int arc = parent_arc[static_cast<size_t>(v)];
            ++flow[static_cast<size_t>(arc)];
            --flow[static_cast<size_t>(arc ^ 1)];
            v = arc_to[static_cast<size_t>(arc ^ 1)];
        }
        ++cut.value;
    }
}

inline EdgeCut min_edge_cut(const LabeledGraph& g) {
    if (!g.terminals) throw Error(errc::no_terminals, "min edge cut requires terminals");
    return min_edge_cut(g, g.terminals->first, g.terminals->second);
}

} // namespace labelcut
