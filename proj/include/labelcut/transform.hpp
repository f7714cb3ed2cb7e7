#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "labelcut/graph.hpp"
#include "labelcut/union_find.hpp"

namespace labelcut {

// Correlation classes: labels that co-occur on some edge, closed transitively.
// Every original label lands in exactly one class (singletons for labels that
// never overlap, including unused ones). Classes are sorted internally and
// ordered by their smallest member.
inline std::vector<std::vector<LabelId>> correlation_classes(const LabeledGraph& g) {
    UnionFind uf(g.label_count());
    for (const Edge& e : g.edges)
        for (size_t i = 1; i < e.labels.size(); ++i) uf.unite(e.labels[0], e.labels[i]);

    std::vector<std::vector<LabelId>> by_root(static_cast<size_t>(g.label_count()));
    for (LabelId l = 0; l < g.label_count(); ++l)
        by_root[static_cast<size_t>(uf.find(l))].push_back(l);

    std::vector<std::vector<LabelId>> classes;
    for (auto& members : by_root)
        if (!members.empty()) classes.push_back(std::move(members));
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return classes;
}

struct TransformReport {
    // Partition of the original label ids into correlation classes, ordered by
    // smallest member; class k is relabeled as fresh id |L| + k with weight
    // equal to the class size.
    std::vector<std::vector<LabelId>> classes;
    std::vector<LabelId> fresh_ids;
    std::vector<Weight> class_weights;
    // Same vertices and edges as the input, each edge carrying the single dense
    // label k of its class; dense label k displays as the fresh id's name.
    LabeledGraph transformed;
};

// Overlap elimination: list the multi-label edges as label sets, merge sets
// sharing an element, relabel each union with one fresh weighted label. The
// output is an equivalent weighted non-overlapping instance (weights count
// merged labels, so callers feed unweighted graphs).
inline TransformReport merge_overlaps(const LabeledGraph& g) {
    TransformReport report;
    report.classes = correlation_classes(g);

    const int original_labels = g.label_count();
    std::vector<int> class_of(static_cast<size_t>(original_labels), -1);
    for (size_t k = 0; k < report.classes.size(); ++k) {
        report.fresh_ids.push_back(original_labels + static_cast<LabelId>(k));
        report.class_weights.push_back(static_cast<Weight>(report.classes[k].size()));
        for (LabelId l : report.classes[k]) class_of[static_cast<size_t>(l)] = static_cast<int>(k);
    }

    std::vector<EdgeInput> edges;
    edges.reserve(g.edges.size());
    for (const Edge& e : g.edges)
        edges.push_back({e.u, e.v, {class_of[static_cast<size_t>(e.labels.front())]}});

    std::vector<Label> table(report.classes.size());
    for (size_t k = 0; k < report.classes.size(); ++k) {
        table[k].weight = report.class_weights[k];
        table[k].name = default_label_name(report.fresh_ids[k]);
    }
    report.transformed =
        build_graph(g.vertex_count, std::move(edges), std::move(table), 1, g.terminals,
                    /*require_connected=*/false);
    return report;
}

// The flawed alternative: replace one multi-label edge by a path of fresh
// vertices, one label per path edge. Kept precisely so its failure to preserve
// the cut value stays demonstrable.
inline LabeledGraph rainbow_path_transform(const LabeledGraph& g, EdgeId edge) {
    if (edge < 0 || edge >= g.edge_count())
        throw Error(errc::unknown_edge, "edge id " + std::to_string(edge));
    const Edge& target = g.edges[static_cast<size_t>(edge)];
    const int k = static_cast<int>(target.labels.size());
    if (k < 2)
        throw Error(errc::invalid_argument,
                    "edge " + std::to_string(edge) + " has a single label");

    std::vector<EdgeInput> edges;
    edges.reserve(g.edges.size() + static_cast<size_t>(k) - 1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (e == edge) continue;
        const Edge& src = g.edges[static_cast<size_t>(e)];
        edges.push_back({src.u, src.v, src.labels});
    }
    VertexId prev = target.u;
    for (int i = 0; i < k; ++i) {
        VertexId next = (i == k - 1) ? target.v : g.vertex_count + i;
        edges.push_back({prev, next, {target.labels[static_cast<size_t>(i)]}});
        prev = next;
    }
    return build_graph(g.vertex_count + k - 1, std::move(edges), g.labels, g.weight_denom,
                       g.terminals, /*require_connected=*/false);
}

struct MergeGuarantees {
    bool single_label_per_edge = false;
    // Every fresh weight <= max_v D_L(v) of the original, and no more classes
    // than original labels.
    bool weight_bounded = false;
    // Total fresh weight == original label count.
    bool total_weight_preserved = false;

    bool all() const { return single_label_per_edge && weight_bounded && total_weight_preserved; }
};

// Mechanical re-check of the three transform guarantees against the original
// graph. Throws if the report does not actually describe the original.
inline MergeGuarantees verify_merge_guarantees(const TransformReport& report,
                                               const LabeledGraph& original) {
    const int original_labels = original.label_count();

    std::vector<int> class_of(static_cast<size_t>(original_labels), -1);
    for (size_t k = 0; k < report.classes.size(); ++k) {
        if (report.class_weights.size() != report.classes.size() ||
            report.fresh_ids.size() != report.classes.size())
            throw Error(errc::mismatched_provenance, "report arrays disagree in length");
        if (report.class_weights[k] != static_cast<Weight>(report.classes[k].size()))
            throw Error(errc::mismatched_provenance,
                        "class " + std::to_string(k) + " weight is not its size");
        for (LabelId l : report.classes[k]) {
            if (l < 0 || l >= original_labels || class_of[static_cast<size_t>(l)] != -1)
                throw Error(errc::mismatched_provenance,
                            "label " + std::to_string(l) + " not partitioned exactly once");
            class_of[static_cast<size_t>(l)] = static_cast<int>(k);
        }
    }
    if (std::find(class_of.begin(), class_of.end(), -1) != class_of.end())
        throw Error(errc::mismatched_provenance, "classes do not cover all original labels");
    if (report.transformed.edge_count() != original.edge_count() ||
        report.transformed.vertex_count != original.vertex_count)
        throw Error(errc::mismatched_provenance, "transformed graph shape differs from original");
    for (EdgeId e = 0; e < original.edge_count(); ++e) {
        const Edge& before = original.edges[static_cast<size_t>(e)];
        const Edge& after = report.transformed.edges[static_cast<size_t>(e)];
        if (before.u != after.u || before.v != after.v || after.labels.size() != 1 ||
            after.labels.front() != class_of[static_cast<size_t>(before.labels.front())])
            throw Error(errc::mismatched_provenance,
                        "edge " + std::to_string(e) + " does not match its class");
        for (LabelId l : before.labels)
            if (class_of[static_cast<size_t>(l)] != after.labels.front())
                throw Error(errc::mismatched_provenance,
                            "edge " + std::to_string(e) + " straddles two classes");
    }

    MergeGuarantees checks;
    checks.single_label_per_edge =
        std::all_of(report.transformed.edges.begin(), report.transformed.edges.end(),
                    [](const Edge& e) { return e.labels.size() == 1; });

    GraphStats stats = compute_stats(original);
    int max_label_degree =
        *std::max_element(stats.label_degree.begin(), stats.label_degree.end());
    checks.weight_bounded =
        static_cast<int>(report.classes.size()) <= original_labels &&
        std::all_of(report.class_weights.begin(), report.class_weights.end(),
                    [&](Weight w) { return w <= static_cast<Weight>(max_label_degree); });

    Weight total = 0;
    for (Weight w : report.class_weights) total += w;
    checks.total_weight_preserved = total == static_cast<Weight>(original_labels);
    return checks;
}

} // namespace labelcut
