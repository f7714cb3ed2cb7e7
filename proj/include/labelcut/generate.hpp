#pragma once

#include <set>
#include <utility>
#include <vector>

#include "labelcut/graph.hpp"
#include "labelcut/rng.hpp"

namespace labelcut {

struct GeneratorConfig {
    int vertex_count = 8;
    int edge_count = 12;
    int label_count = 5;
    double overlap_prob = 0.0; // chance of each extra label beyond the first
    Weight weight_min = 1;
    Weight weight_max = 1;
    std::uint64_t seed = 1;
    bool add_terminals = false; // terminals (0, n-1)
};

// Random spanning tree plus extra edges; labels uniform, extra labels added
// per overlap probability. Bit-reproducible for a fixed seed.
inline LabeledGraph generate(const GeneratorConfig& cfg) {
    const int n = cfg.vertex_count;
    const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
    if (n < 1) throw Error(errc::invalid_argument, "vertex count must be >= 1");
    if (cfg.edge_count < n - 1)
        throw Error(errc::invalid_argument, "need at least n-1 edges for connectivity");
    if (cfg.edge_count > max_edges)
        throw Error(errc::invalid_argument, "more edges than a simple graph allows");
    if (cfg.edge_count > 0 && cfg.label_count < 1)
        throw Error(errc::invalid_argument, "edges need at least one label");
    if (cfg.weight_min < 1 || cfg.weight_max < cfg.weight_min)
        throw Error(errc::non_positive_weight, "weight range");
    if (cfg.overlap_prob < 0.0 || cfg.overlap_prob > 1.0)
        throw Error(errc::invalid_argument, "overlap probability outside [0, 1]");

    Rng rng(cfg.seed);
    std::set<std::pair<int, int>> used;
    std::vector<std::pair<int, int>> endpoints;
    for (int v = 1; v < n; ++v) {
        int u = rng.below(v);
        endpoints.push_back({u, v});
        used.insert({u, v});
    }
    while (static_cast<int>(endpoints.size()) < cfg.edge_count) {
        int u = rng.below(n);
        int v = rng.below(n);
        if (u == v) continue;
        auto key = std::minmax(u, v);
        if (!used.insert(key).second) continue;
        endpoints.push_back(key);
    }

    std::vector<EdgeInput> edges;
    edges.reserve(endpoints.size());
    for (auto [u, v] : endpoints) {
        std::vector<LabelId> labels{rng.below(cfg.label_count)};
        for (int extra = 1; extra < cfg.label_count; ++extra) {
            if (rng.unit() >= cfg.overlap_prob) break;
            LabelId candidate = rng.below(cfg.label_count);
            if (std::find(labels.begin(), labels.end(), candidate) == labels.end())
                labels.push_back(candidate);
        }
        edges.push_back({u, v, std::move(labels)});
    }

    BuildOptions opts;
    if (cfg.weight_max > 1) {
        for (LabelId l = 0; l < cfg.label_count; ++l) {
            Weight span = cfg.weight_max - cfg.weight_min + 1;
            opts.weights.push_back(
                {l, cfg.weight_min + static_cast<Weight>(rng.next() % static_cast<std::uint64_t>(span))});
        }
    }
    if (cfg.add_terminals && n >= 2) opts.terminals = {{0, n - 1}};
    return build_graph(n, std::move(edges), cfg.label_count, std::move(opts));
}

} // namespace labelcut
