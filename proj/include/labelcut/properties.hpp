#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "labelcut/graph.hpp"
#include "labelcut/parallel.hpp"
#include "labelcut/rng.hpp"
#include "labelcut/transform.hpp"

namespace labelcut {

// g(E') = number of distinct labels appearing on the edges of E'.
inline int eval_g(const LabeledGraph& g, std::span<const EdgeId> edge_set) {
    std::vector<char> seen(static_cast<size_t>(g.label_count()), 0);
    int count = 0;
    for (EdgeId e : edge_set) {
        if (e < 0 || e >= g.edge_count())
            throw Error(errc::unknown_edge, "edge id " + std::to_string(e));
        for (LabelId l : g.edges[static_cast<size_t>(e)].labels) {
            if (!seen[static_cast<size_t>(l)]) {
                seen[static_cast<size_t>(l)] = 1;
                ++count;
            }
        }
    }
    return count;
}

struct GSubmodularReport {
    bool ok = true;
    bool exhaustive = false;
    long long pairs_checked = 0;
    // Present only on failure (which would mean a defect: g is a coverage
    // function and coverage functions are submodular).
    std::optional<std::pair<std::vector<EdgeId>, std::vector<EdgeId>>> violation;
};

namespace detail {

// per-edge and per-subset label masks as ceil(|L|/64) words
inline std::vector<std::uint64_t> edge_label_words(const LabeledGraph& g, EdgeId e, int words) {
    std::vector<std::uint64_t> mask(static_cast<size_t>(words), 0);
    for (LabelId l : g.edges[static_cast<size_t>(e)].labels)
        mask[static_cast<size_t>(l / 64)] |= 1ull << (l % 64);
    return mask;
}

inline std::vector<EdgeId> edge_ids_from_mask(std::uint64_t mask) {
    std::vector<EdgeId> ids;
    for (int e = 0; e < 64; ++e)
        if (mask & (1ull << e)) ids.push_back(e);
    return ids;
}

} // namespace detail

// Checks g(E') + g(E'') >= g(E' u E'') + g(E' n E''): exhaustively over all
// pairs when m <= exhaustive_max_m, otherwise over sampled pairs. Worker count
// follows LABELCUT_THREADS; the reported violation (never expected) is the
// canonically first one regardless of threading.
inline GSubmodularReport check_g_submodular(const LabeledGraph& g, int exhaustive_max_m = 12,
                                            int sample_pairs = 10000,
                                            std::uint64_t seed = 0x5eed) {
    GSubmodularReport report;
    const int m = g.edge_count();
    const int words = (g.label_count() + 63) / 64;

    if (m <= exhaustive_max_m) {
        report.exhaustive = true;
        const std::uint64_t subsets = 1ull << m;
        // label words per edge subset, built by peeling the lowest edge
        std::vector<std::uint64_t> table(subsets * static_cast<std::uint64_t>(words), 0);
        std::vector<std::vector<std::uint64_t>> per_edge(static_cast<size_t>(m));
        for (EdgeId e = 0; e < m; ++e) per_edge[static_cast<size_t>(e)] = detail::edge_label_words(g, e, words);
        std::vector<int> gval(subsets, 0);
        for (std::uint64_t s = 1; s < subsets; ++s) {
            int low = std::countr_zero(s);
            std::uint64_t rest = s & (s - 1);
            int bits = 0;
            for (int w = 0; w < words; ++w) {
                std::uint64_t v = table[rest * words + static_cast<std::uint64_t>(w)] |
                                  per_edge[static_cast<size_t>(low)][static_cast<size_t>(w)];
                table[s * words + static_cast<std::uint64_t>(w)] = v;
                bits += std::popcount(v);
            }
            gval[s] = bits;
        }

        const long long rows = static_cast<long long>(subsets);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> first_violation(
            static_cast<size_t>(thread_budget() + 1), {subsets, subsets});
        std::atomic<long long> checked{0};
        parallel_chunks(rows, [&](long long begin, long long end, int worker) {
            long long local = 0;
            for (std::uint64_t a = static_cast<std::uint64_t>(begin);
                 a < static_cast<std::uint64_t>(end); ++a) {
                for (std::uint64_t b = a + 1; b < subsets; ++b) {
                    int joint = 0;
                    for (int w = 0; w < words; ++w) {
                        std::uint64_t wa = table[a * words + static_cast<std::uint64_t>(w)];
                        std::uint64_t wb = table[b * words + static_cast<std::uint64_t>(w)];
                        joint += std::popcount(wa | wb) + std::popcount(wa & wb);
                    }
                    ++local;
                    if (gval[a] + gval[b] < joint) {
                        auto& slot = first_violation[static_cast<size_t>(worker)];
                        if (std::make_pair(a, b) < slot) slot = {a, b};
                        goto next_row; // keep only the first per row range
                    }
                }
            next_row:;
            }
            checked += local;
        });
        report.pairs_checked = checked.load();
        auto best = *std::min_element(first_violation.begin(), first_violation.end());
        if (best.first < subsets) {
            report.ok = false;
            report.violation = {detail::edge_ids_from_mask(best.first),
                                detail::edge_ids_from_mask(best.second)};
        }
        return report;
    }

    // sampled pairs, reproducible per (seed, index) independent of threading
    std::vector<std::pair<long long, std::pair<std::vector<EdgeId>, std::vector<EdgeId>>>>
        found;
    std::mutex found_mutex;
    parallel_chunks(sample_pairs, [&](long long begin, long long end, int) {
        for (long long i = begin; i < end; ++i) {
            std::uint64_t state = seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(i + 1));
            std::vector<EdgeId> ea, eb;
            for (EdgeId e = 0; e < m; ++e) {
                std::uint64_t bits = splitmix64(state);
                if (bits & 1) ea.push_back(e);
                if (bits & 2) eb.push_back(e);
            }
            std::vector<EdgeId> eu, ei;
            std::set_union(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(eu));
            std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(),
                                  std::back_inserter(ei));
            if (eval_g(g, ea) + eval_g(g, eb) < eval_g(g, eu) + eval_g(g, ei)) {
                std::lock_guard<std::mutex> lock(found_mutex);
                found.push_back({i, {ea, eb}});
            }
        }
    });
    report.pairs_checked = sample_pairs;
    if (!found.empty()) {
        auto it = std::min_element(found.begin(), found.end(),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        report.ok = false;
        report.violation = it->second;
    }
    return report;
}

// Which hedge identity f counts: raw label ids, or the correlation classes the
// overlap merge would produce. They coincide on non-overlapping graphs.
enum class HedgeMode { raw_labels, merged_classes };

// f(A) = number of hedges with at least one edge crossing (A, V \ A).
inline int eval_f(const LabeledGraph& g, std::span<const VertexId> side, HedgeMode mode) {
    std::vector<char> in(static_cast<size_t>(g.vertex_count), 0);
    for (VertexId v : side) {
        if (v < 0 || v >= g.vertex_count)
            throw Error(errc::vertex_out_of_range, "vertex " + std::to_string(v));
        in[static_cast<size_t>(v)] = 1;
    }
    std::vector<int> hedge_of(static_cast<size_t>(g.label_count()));
    int hedges = g.label_count();
    if (mode == HedgeMode::merged_classes) {
        auto classes = correlation_classes(g);
        hedges = static_cast<int>(classes.size());
        for (size_t k = 0; k < classes.size(); ++k)
            for (LabelId l : classes[k]) hedge_of[static_cast<size_t>(l)] = static_cast<int>(k);
    } else {
        for (LabelId l = 0; l < g.label_count(); ++l) hedge_of[static_cast<size_t>(l)] = l;
    }
    std::vector<char> crossing(static_cast<size_t>(hedges), 0);
    int count = 0;
    for (const Edge& e : g.edges) {
        if (in[static_cast<size_t>(e.u)] == in[static_cast<size_t>(e.v)]) continue;
        for (LabelId l : e.labels) {
            int h = hedge_of[static_cast<size_t>(l)];
            if (!crossing[static_cast<size_t>(h)]) {
                crossing[static_cast<size_t>(h)] = 1;
                ++count;
            }
        }
    }
    return count;
}

// Default mode: merged classes for overlap instances, raw labels otherwise.
inline int eval_f(const LabeledGraph& g, std::span<const VertexId> side) {
    return eval_f(g, side,
                  g.non_overlapping ? HedgeMode::raw_labels : HedgeMode::merged_classes);
}

struct FSearchBounds {
    int max_vertices = 5;
    int max_labels = 4;
    int max_edges = 8;
    // Control mode: one distinct label per edge makes f the plain edge-cut
    // function, which is submodular, so the search must come up empty.
    bool injective_labels = false;
};

struct FViolation {
    LabeledGraph graph;
    std::vector<VertexId> set_a, set_b;
    int f_a = 0, f_b = 0, f_union = 0, f_intersection = 0;
};

namespace detail {

inline bool edge_subset_spans(int n, const std::vector<std::pair<int, int>>& pairs,
                              const std::vector<int>& chosen) {
    std::vector<int> parent(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) parent[static_cast<size_t>(v)] = v;
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] =
                                                        parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    };
    int components = n;
    for (int idx : chosen) {
        int a = find(pairs[static_cast<size_t>(idx)].first);
        int b = find(pairs[static_cast<size_t>(idx)].second);
        if (a != b) {
            parent[static_cast<size_t>(a)] = b;
            --components;
        }
    }
    return components == 1;
}

inline std::vector<VertexId> vertex_ids_from_mask(unsigned mask, int n) {
    std::vector<VertexId> ids;
    for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) ids.push_back(v);
    return ids;
}

} // namespace detail

// Exhaustive canonical-order search for a connected hedge graph and a vertex
// set pair violating f(A) + f(B) >= f(A u B) + f(A n B). Order: vertex count,
// edge count, edge subset, labeling (restricted growth), then (A, B) with
// A < B as masks — so the first hit is deterministic.
inline std::optional<FViolation> find_f_submodularity_violation(const FSearchBounds& bounds = {}) {
    for (int n = 2; n <= bounds.max_vertices; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
        const int pair_count = static_cast<int>(pairs.size());
        const int max_m = std::min(bounds.max_edges, pair_count);

        for (int m = n - 1; m <= max_m; ++m) { // fewer than n-1 edges cannot span n vertices
            std::vector<int> chosen(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) chosen[static_cast<size_t>(i)] = i;
            while (true) {
                if (detail::edge_subset_spans(n, pairs, chosen)) {
                    // labelings in restricted-growth order, at most max_labels
                    std::vector<int> labeling(static_cast<size_t>(m), 0);
                    if (bounds.injective_labels)
                        for (int i = 0; i < m; ++i) labeling[static_cast<size_t>(i)] = i;
                    bool labeling_ok = !bounds.injective_labels || m <= bounds.max_labels;
                    while (labeling_ok) {
                        const int label_count =
                            1 + *std::max_element(labeling.begin(), labeling.end());
                        // crossing-hedge mask per vertex-set mask
                        const unsigned masks = 1u << n;
                        std::vector<unsigned> cross(masks, 0);
                        for (int i = 0; i < m; ++i) {
                            auto [u, v] = pairs[static_cast<size_t>(chosen[static_cast<size_t>(i)])];
                            unsigned bit = 1u << labeling[static_cast<size_t>(i)];
                            for (unsigned a = 0; a < masks; ++a)
                                if (((a >> u) ^ (a >> v)) & 1u) cross[a] |= bit;
                        }
                        std::vector<int> f(masks);
                        for (unsigned a = 0; a < masks; ++a)
                            f[a] = std::popcount(cross[a]);
                        for (unsigned a = 0; a < masks; ++a) {
                            for (unsigned b = a + 1; b < masks; ++b) {
                                if (f[a] + f[b] >= f[a | b] + f[a & b]) continue;
                                std::vector<EdgeInput> edges;
                                for (int i = 0; i < m; ++i)
                                    edges.push_back(
                                        {pairs[static_cast<size_t>(chosen[static_cast<size_t>(i)])].first,
                                         pairs[static_cast<size_t>(chosen[static_cast<size_t>(i)])].second,
                                         {labeling[static_cast<size_t>(i)]}});
                                FViolation hit;
                                hit.graph = build_graph(n, std::move(edges), label_count);
                                hit.set_a = detail::vertex_ids_from_mask(a, n);
                                hit.set_b = detail::vertex_ids_from_mask(b, n);
                                hit.f_a = f[a];
                                hit.f_b = f[b];
                                hit.f_union = f[a | b];
                                hit.f_intersection = f[a & b];
                                return hit;
                            }
                        }
                        if (bounds.injective_labels) break;
                        // next restricted-growth string
                        int pos = m - 1;
                        while (pos > 0) {
                            int prefix_max = 0;
                            for (int i = 0; i < pos; ++i)
                                prefix_max = std::max(prefix_max, labeling[static_cast<size_t>(i)]);
                            if (labeling[static_cast<size_t>(pos)] <
                                    std::min(prefix_max + 1, bounds.max_labels - 1)) {
                                ++labeling[static_cast<size_t>(pos)];
                                for (int i = pos + 1; i < m; ++i) labeling[static_cast<size_t>(i)] = 0;
                                break;
                            }
                            --pos;
                        }
                        if (pos == 0) break;
                    }
                }
                // next m-combination of edge indices
                int i = m - 1;
                while (i >= 0 && chosen[static_cast<size_t>(i)] == pair_count - m + i) --i;
                if (i < 0) break;
                ++chosen[static_cast<size_t>(i)];
                for (int j = i + 1; j < m; ++j)
                    chosen[static_cast<size_t>(j)] = chosen[static_cast<size_t>(j - 1)] + 1;
            }
        }
    }
    return std::nullopt;
}

} // namespace labelcut
