#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "labelcut/graph.hpp"
#include "labelcut/solve.hpp"
#include "labelcut/transform.hpp"

namespace labelcut {

struct HittingSetInstance {
    int universe_size = 0;
    std::vector<std::vector<int>> subsets;
    std::optional<int> budget;
};

inline void validate_hitting_set(const HittingSetInstance& h) {
    if (h.universe_size < 1)
        throw Error(errc::invalid_argument, "universe must have at least one element");
    if (h.subsets.empty())
        throw Error(errc::invalid_argument, "instance needs at least one subset");
    for (size_t i = 0; i < h.subsets.size(); ++i) {
        if (h.subsets[i].empty())
            throw Error(errc::empty_subset, "subset " + std::to_string(i));
        for (int u : h.subsets[i])
            if (u < 0 || u >= h.universe_size)
                throw Error(errc::invalid_argument, "element " + std::to_string(u) +
                                                        " of subset " + std::to_string(i) +
                                                        " outside universe");
    }
}

// One internally disjoint s-t path per subset, the j-th edge labeled by the
// j-th element (instance order). s = 0, t = 1. A label set disconnects s from
// t exactly when it hits every subset, so the two optima coincide.
//
// Singleton subsets: the first uses the direct (s, t) edge; later ones take a
// subdivided 2-edge path with both edges carrying the element, since a second
// parallel (s, t) edge would break graph simplicity. Value-preserving.
inline LabeledGraph hitting_set_to_st_label_cut(const HittingSetInstance& h) {
    validate_hitting_set(h);
    std::vector<EdgeInput> edges;
    int next_vertex = 2;
    bool direct_edge_used = false;
    for (const auto& subset : h.subsets) {
        if (subset.size() == 1) {
            if (!direct_edge_used) {
                edges.push_back({0, 1, {subset[0]}});
                direct_edge_used = true;
            } else {
                int mid = next_vertex++;
                edges.push_back({0, mid, {subset[0]}});
                edges.push_back({mid, 1, {subset[0]}});
            }
            continue;
        }
        int prev = 0;
        for (size_t j = 0; j < subset.size(); ++j) {
            int next = j + 1 == subset.size() ? 1 : next_vertex++;
            edges.push_back({prev, next, {subset[j]}});
            prev = next;
        }
    }
    BuildOptions opts;
    opts.terminals = {{0, 1}};
    return build_graph(next_vertex, std::move(edges), h.universe_size, std::move(opts));
}

// Exact minimum hitting set by subset enumeration in increasing cardinality,
// lexicographic tie-break. Oracle-grade: used to cross-validate the reduction.
inline std::vector<int> brute_force_hitting_set(const HittingSetInstance& h) {
    validate_hitting_set(h);
    if (h.universe_size > 24)
        throw Error(errc::budget_exceeded,
                    "universe of " + std::to_string(h.universe_size) + " exceeds 24");
    const int n = h.universe_size;
    std::vector<std::uint32_t> subset_masks;
    for (const auto& subset : h.subsets) {
        std::uint32_t mask = 0;
        for (int u : subset) mask |= 1u << u;
        subset_masks.push_back(mask);
    }
    for (int k = 0; k <= n; ++k) {
        // k-combinations of elements in lexicographic order
        std::vector<int> pick(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = i;
        while (true) {
            std::uint32_t mask = 0;
            for (int u : pick) mask |= 1u << u;
            bool hits_all = true;
            for (std::uint32_t s : subset_masks)
                if (!(s & mask)) { hits_all = false; break; }
            if (hits_all) return pick;
            if (k == 0) break;
            int i = k - 1;
            while (i >= 0 && pick[static_cast<size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++pick[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
        }
    }
    throw Error(errc::infeasible, "no hitting set"); // unreachable: the full universe hits all
}

struct DecisionPipelineResult {
    int hitting_optimum = 0;
    Weight cut_optimum = 0;
    bool hitting_at_most = false;
    bool cut_at_most = false;
    bool agree = false;
    int edge_cut_value = 0;       // equals the number of subsets (disjoint paths)
    bool merge_is_identity = false; // the constructed graph has no overlaps
};

// Runs the whole reduction narrative on one instance: construct the graph,
// run the overlap merge (an identity here), take the minimum s-t edge cut,
// and answer the threshold question on both sides.
inline DecisionPipelineResult run_decision_pipeline(const HittingSetInstance& h, int threshold) {
    if (threshold < 1) throw Error(errc::invalid_argument, "threshold must be positive");
    LabeledGraph g = hitting_set_to_st_label_cut(h);

    DecisionPipelineResult result;
    auto report = merge_overlaps(g);
    result.merge_is_identity =
        report.classes.size() == static_cast<size_t>(g.label_count());
    result.edge_cut_value = min_edge_cut(g).value;

    result.hitting_optimum = static_cast<int>(brute_force_hitting_set(h).size());
    SolveConfig cfg;
    cfg.variant = Variant::st;
    cfg.budget = std::max(24, g.label_count());
    result.cut_optimum = exact_min_label_cut(g, cfg).weight_num;
    result.hitting_at_most = result.hitting_optimum <= threshold;
    result.cut_at_most = decide_cut_at_most(g, cfg, threshold);
    result.agree = result.hitting_at_most == result.cut_at_most;
    return result;
}

// Text form: header `hittingset <|U|> <m>` then one line per subset.
inline HittingSetInstance parse_hitting_set(const std::string& text) {
    HittingSetInstance h;
    int line_no = 0;
    bool header_seen = false;
    size_t pos = 0;
    int declared_subsets = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::vector<std::string> tokens;
        size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && isspace(static_cast<unsigned char>(line[i]))) ++i;
            size_t start = i;
            while (i < line.size() && !isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i > start) tokens.push_back(line.substr(start, i - start));
        }
        if (tokens.empty()) continue;
        if (!header_seen) {
            if (tokens.size() != 3 || tokens[0] != "hittingset")
                throw Error(errc::parse_error, "expected `hittingset <|U|> <m>`", line_no);
            try {
                h.universe_size = std::stoi(tokens[1]);
                declared_subsets = std::stoi(tokens[2]);
            } catch (const std::exception&) {
                throw Error(errc::parse_error, "bad header numbers", line_no);
            }
            header_seen = true;
            continue;
        }
        std::vector<int> subset;
        for (const auto& tok : tokens) {
            int u = 0;
            try {
                u = std::stoi(tok);
            } catch (const std::exception&) {
                throw Error(errc::parse_error, "bad element `" + tok + "`", line_no);
            }
            if (u < 0 || u >= h.universe_size)
                throw Error(errc::parse_error, "element " + tok + " outside universe", line_no);
            subset.push_back(u);
        }
        h.subsets.push_back(std::move(subset));
    }
    if (!header_seen) throw Error(errc::parse_error, "empty hitting-set file", 1);
    if (static_cast<int>(h.subsets.size()) != declared_subsets)
        throw Error(errc::parse_error,
                    "header declares " + std::to_string(declared_subsets) + " subsets, found " +
                        std::to_string(h.subsets.size()),
                    1);
    validate_hitting_set(h);
    return h;
}

inline std::string emit_hitting_set(const HittingSetInstance& h) {
    std::string out = "hittingset " + std::to_string(h.universe_size) + " " +
                      std::to_string(h.subsets.size()) + "\n";
    for (const auto& subset : h.subsets) {
        for (size_t i = 0; i < subset.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(subset[i]);
        }
        out += '\n';
    }
    return out;
}

} // namespace labelcut
