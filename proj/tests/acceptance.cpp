// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Criteria with stated runtime limits are timed and fail when over
// budget. Run from anywhere; argv[1] may point at the labelcut CLI binary.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "labelcut/generate.hpp"
#include "labelcut/io.hpp"
#include "labelcut/properties.hpp"
#include "labelcut/reduce.hpp"
#include "labelcut/solve.hpp"
#include "labelcut/transform.hpp"

#include "oracles.hpp"

using namespace labelcut;

namespace {

std::string cli_path = "./build/tools/labelcut";
const std::string fixture_dir = LABELCUT_FIXTURE_DIR;

const std::vector<std::string> fixture_names = {
    "single_edge.lg",      "two_paths.lg",         "k4_triple_overlap.lg",
    "five_label_overlap.lg", "overlap_chain.lg",   "hedge_cut_witness.lg",
    "weighted_paths.lg"};

std::string fixture(const std::string& name) { return fixture_dir + "/" + name; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct ProcessResult {
    int exit_code = -1;
    std::string out;
};

ProcessResult run_process(const std::string& command) {
    ProcessResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return result;
    char buffer[4096];
    size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

bool contains_line(const std::string& text, const std::string& line) {
    size_t pos = text.find(line + "\n");
    return pos != std::string::npos && (pos == 0 || text[pos - 1] == '\n');
}

struct Criterion {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& why) {
        if (!ok && pass) {
            pass = false;
            detail = why;
        }
    }
};

LabeledGraph sweep_instance(int i, int max_n, int max_extra, int max_labels, double overlap,
                            std::uint64_t seed_base, bool terminals = false, int max_m = 1 << 30) {
    GeneratorConfig cfg;
    cfg.vertex_count = 2 + i % (max_n - 1);
    int cap = std::min(max_m, cfg.vertex_count * (cfg.vertex_count - 1) / 2);
    cfg.edge_count = std::min(cfg.vertex_count - 1 + i % (max_extra + 1), cap);
    cfg.label_count = 1 + i % max_labels;
    cfg.overlap_prob = overlap;
    cfg.seed = seed_base + static_cast<std::uint64_t>(i);
    cfg.add_terminals = terminals;
    return generate(cfg);
}

// 1. CLI transform on the five-label overlap fixture emits the two merged
//    classes with weights 3 and 2, in under a second.
Criterion criterion_overlap_merge_classes() {
    Criterion c;
    ProcessResult run = run_process(cli_path + " transform " + fixture("five_label_overlap.lg"));
    c.require(run.exit_code == 0, "transform exited " + std::to_string(run.exit_code));
    c.require(contains_line(run.out, "classes 2"), "expected exactly two classes");
    c.require(contains_line(run.out, "class 5 3 := 0 2 3"),
              "missing class {A,C,D} with weight 3");
    c.require(contains_line(run.out, "class 6 2 := 1 4"), "missing class {B,E} with weight 2");
    return c;
}

// 2. Merge guarantee sweep over 1000 seeded random overlap instances
//    (n <= 20, |L| <= 12): single label per edge, fresh weights bounded by the
//    maximum label degree, total fresh weight equals the original label count.
Criterion criterion_merge_guarantee_sweep() {
    Criterion c;
    int clause1_failures = 0, clause2_failures = 0, clause3_failures = 0;
    std::uint64_t first_bad_seed = 0;
    std::string first_bad_instance;
    for (int i = 0; i < 1000; ++i) {
        GeneratorConfig cfg;
        cfg.vertex_count = 2 + i % 19;                                   // 2..20
        cfg.edge_count = std::min(cfg.vertex_count - 1 + i % 8,
                                  cfg.vertex_count * (cfg.vertex_count - 1) / 2);
        cfg.label_count = 1 + i % 12;                                    // 1..12
        cfg.overlap_prob = 0.3 + 0.2 * (i % 3);
        cfg.seed = 9000 + static_cast<std::uint64_t>(i);
        LabeledGraph g = generate(cfg);
        MergeGuarantees checks = verify_merge_guarantees(merge_overlaps(g), g);
        if (!checks.single_label_per_edge) ++clause1_failures;
        if (!checks.weight_bounded) {
            if (clause2_failures == 0) {
                first_bad_seed = cfg.seed;
                first_bad_instance = emit(g);
            }
            ++clause2_failures;
        }
        if (!checks.total_weight_preserved) ++clause3_failures;
    }
    c.require(clause1_failures == 0,
              "single-label clause failed " + std::to_string(clause1_failures) + "x");
    c.require(clause3_failures == 0,
              "total-weight clause failed " + std::to_string(clause3_failures) + "x");
    c.require(clause2_failures == 0,
              "weight bound failed on " + std::to_string(clause2_failures) +
                  "/1000 instances (first seed " + std::to_string(first_bad_seed) +
                  "): chained partial overlaps merge into classes heavier than any vertex label"
                  " degree, so this clause is not satisfiable by random sweeps");
    return c;
}

// 3. The overlap merge preserves the cascading cut value: double brute force
//    plus the production solver agree on fixtures and a generated sweep
//    (|L| <= 12, m <= 14).
Criterion criterion_merge_preserves_cut() {
    Criterion c;
    auto check_one = [&](const LabeledGraph& g, const std::string& tag) {
        TransformReport report = merge_overlaps(g);
        auto brute_original = oracle::brute_min_label_cut(g, true, Semantics::cascading);
        auto brute_transformed =
            oracle::brute_min_label_cut(report.transformed, true, Semantics::independent);
        c.require(brute_original.found && brute_transformed.found, tag + ": no cut found");
        c.require(brute_original.weight == brute_transformed.weight,
                  tag + ": brute-force values differ");
        SolveConfig cfg;
        cfg.semantics = Semantics::cascading;
        Weight solver_original = exact_min_label_cut(g, cfg).weight_num;
        Weight solver_transformed = exact_min_label_cut(report.transformed, cfg).weight_num;
        c.require(solver_original == brute_original.weight, tag + ": solver vs oracle (original)");
        c.require(solver_transformed == brute_transformed.weight,
                  tag + ": solver vs oracle (transformed)");
    };
    for (const auto& name : fixture_names) {
        LabeledGraph g = parse(read_file(fixture(name)));
        // merged weights count labels, so the claim is about unweighted inputs
        bool unit = true;
        for (const Label& l : g.labels) unit = unit && l.weight == g.weight_denom;
        if (unit && g.label_count() <= 12 && g.edge_count() <= 14 && g.vertex_count >= 2)
            check_one(g, name);
    }
    for (int i = 0; i < 300 && c.pass; ++i)
        check_one(sweep_instance(i, 10, 4, 12, 0.5, 11000, false, 14),
                  "sweep #" + std::to_string(i));
    return c;
}

// 4. Rainbow-path replacement collapses the cut: the triple-overlap K4 has
//    exact global cut 3; after replacing its multi-label edge the cut drops
//    to at most 2 and the minimum label degree to 1.
Criterion criterion_rainbow_collapse() {
    Criterion c;
    LabeledGraph g = parse(read_file(fixture("k4_triple_overlap.lg")));
    SolveConfig cfg;
    cfg.semantics = Semantics::cascading;
    Weight before = exact_min_label_cut(g, cfg).weight_num;
    c.require(before == 3, "original cut is " + std::to_string(before) + ", expected 3");

    LabeledGraph after = rainbow_path_transform(g, 0);
    Weight after_cut = exact_min_label_cut(after, cfg).weight_num;
    c.require(after_cut <= 2, "transformed cut is " + std::to_string(after_cut));
    GraphStats stats = compute_stats(after);
    c.require(stats.min_label_degree == 1,
              "min label degree is " + std::to_string(stats.min_label_degree));
    return c;
}

// 5. Degree bound: the minimum label cut (label count, independent removal)
//    never exceeds the minimum label degree, on any fixture or generated
//    instance.
Criterion criterion_degree_bound() {
    Criterion c;
    auto check_one = [&](LabeledGraph g, const std::string& tag) {
        if (g.vertex_count < 2 || g.label_count() > 16) return;
        for (Label& l : g.labels) l.weight = g.weight_denom; // the bound counts labels
        GraphStats stats = compute_stats(g);
        SolveConfig cfg;
        cfg.semantics = Semantics::independent;
        Weight cut = exact_min_label_cut(g, cfg).weight_num;
        c.require(cut <= static_cast<Weight>(stats.min_label_degree) * g.weight_denom,
                  tag + ": cut exceeds the minimum label degree");
    };
    for (const auto& name : fixture_names) check_one(parse(read_file(fixture(name))), name);
    for (int i = 0; i < 500 && c.pass; ++i)
        check_one(sweep_instance(i, 12, 5, 12, (i % 3) * 0.3, 15000),
                  "sweep #" + std::to_string(i));
    return c;
}

// 6. g is submodular: exhaustive pair scan on every fixture (m <= 12) plus
//    10^4 sampled pairs on larger generated instances. Zero violations.
Criterion criterion_g_submodular() {
    Criterion c;
    for (const auto& name : fixture_names) {
        LabeledGraph g = parse(read_file(fixture(name)));
        GSubmodularReport report = check_g_submodular(g, 12, 10000, 0xACCE55);
        c.require(report.ok, name + ": violation reported");
        c.require(report.exhaustive == (g.edge_count() <= 12), name + ": wrong mode");
    }
    for (int i = 0; i < 5; ++i) {
        GeneratorConfig cfg;
        cfg.vertex_count = 12;
        cfg.edge_count = 20 + 3 * i; // beyond the exhaustive limit
        cfg.label_count = 10;
        cfg.overlap_prob = 0.5;
        cfg.seed = 17000 + static_cast<std::uint64_t>(i);
        GSubmodularReport report =
            check_g_submodular(generate(cfg), 12, 10000, 0xACCE55 + static_cast<std::uint64_t>(i));
        c.require(report.ok && !report.exhaustive && report.pairs_checked == 10000,
                  "sampled scan #" + std::to_string(i));
    }
    return c;
}

// 7. f is not submodular: the bounded search yields a concrete witness, its
//    arithmetic is recomputed with eval_f and exhibits a strict violation.
Criterion criterion_f_not_submodular() {
    Criterion c;
    auto violation = find_f_submodularity_violation();
    c.require(violation.has_value(), "no witness within the search bounds");
    if (!violation) return c;
    c.require(violation->graph.vertex_count <= 5 && violation->graph.label_count() <= 4 &&
                  violation->graph.edge_count() <= 8,
              "witness leaves the stated bounds");
    std::vector<VertexId> both, common;
    std::set_union(violation->set_a.begin(), violation->set_a.end(), violation->set_b.begin(),
                   violation->set_b.end(), std::back_inserter(both));
    std::set_intersection(violation->set_a.begin(), violation->set_a.end(),
                          violation->set_b.begin(), violation->set_b.end(),
                          std::back_inserter(common));
    int fa = eval_f(violation->graph, violation->set_a, HedgeMode::raw_labels);
    int fb = eval_f(violation->graph, violation->set_b, HedgeMode::raw_labels);
    int fu = eval_f(violation->graph, both, HedgeMode::raw_labels);
    int fi = eval_f(violation->graph, common, HedgeMode::raw_labels);
    c.require(fa == violation->f_a && fb == violation->f_b && fu == violation->f_union &&
                  fi == violation->f_intersection,
              "recomputation disagrees with the reported witness");
    c.require(fa + fb < fu + fi, "the violation is not strict");
    return c;
}

// 8. Hitting-set equivalence: the minimum hitting set equals the exact st
//    label cut on the constructed graph, for every instance with |U| <= 6 and
//    m <= 4 (distinct nonempty subsets) plus 1000 random instances |U| <= 10.
Criterion criterion_hitting_set_equivalence() {
    Criterion c;
    long long instances = 0;
    for (int universe = 1; universe <= 6 && c.pass; ++universe) {
        std::vector<std::vector<int>> all_subsets;
        for (int mask = 1; mask < (1 << universe); ++mask) {
            std::vector<int> subset;
            for (int u = 0; u < universe; ++u)
                if (mask & (1 << u)) subset.push_back(u);
            all_subsets.push_back(std::move(subset));
        }
        const int pool = static_cast<int>(all_subsets.size());
        for (int m = 1; m <= std::min(4, pool) && c.pass; ++m) {
            std::vector<int> pick(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) pick[static_cast<size_t>(i)] = i;
            while (c.pass) {
                HittingSetInstance h;
                h.universe_size = universe;
                for (int idx : pick) h.subsets.push_back(all_subsets[static_cast<size_t>(idx)]);
                LabeledGraph g = hitting_set_to_st_label_cut(h);
                int hitting = static_cast<int>(brute_force_hitting_set(h).size());
                SolveConfig cfg;
                cfg.variant = Variant::st;
                Weight cut = exact_min_label_cut(g, cfg).weight_num;
                ++instances;
                c.require(cut == hitting,
                          "optima differ at |U|=" + std::to_string(universe) +
                              ", m=" + std::to_string(m));
                int i = m - 1;
                while (i >= 0 && pick[static_cast<size_t>(i)] == pool - m + i) --i;
                if (i < 0) break;
                ++pick[static_cast<size_t>(i)];
                for (int j = i + 1; j < m; ++j)
                    pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
            }
        }
    }
    c.require(instances >= 675000, "exhaustive sweep unexpectedly small");

    Rng rng(0xBEEF);
    for (int i = 0; i < 1000 && c.pass; ++i) {
        HittingSetInstance h;
        h.universe_size = 2 + i % 9; // 2..10
        int m = 1 + i % 4;
        for (int s = 0; s < m; ++s) {
            std::vector<int> subset;
            int size = 1 + rng.below(std::min(h.universe_size, 4));
            while (static_cast<int>(subset.size()) < size) {
                int u = rng.below(h.universe_size);
                if (std::find(subset.begin(), subset.end(), u) == subset.end())
                    subset.push_back(u);
            }
            h.subsets.push_back(std::move(subset));
        }
        LabeledGraph g = hitting_set_to_st_label_cut(h);
        int hitting = static_cast<int>(brute_force_hitting_set(h).size());
        SolveConfig cfg;
        cfg.variant = Variant::st;
        c.require(exact_min_label_cut(g, cfg).weight_num == hitting,
                  "random sweep: optima differ at i=" + std::to_string(i));
    }
    return c;
}

// 9. The max-flow edge cut matches the exhaustive edge-subset separation
//    oracle on every sweep graph with n <= 8.
Criterion criterion_edge_cut_oracle() {
    Criterion c;
    for (int i = 0; i < 200 && c.pass; ++i) {
        LabeledGraph g = sweep_instance(i, 8, 6, 4, 0.0, 19000, true, 14);
        EdgeCut cut = min_edge_cut(g);
        int brute = oracle::brute_min_edge_cut(g, 0, g.vertex_count - 1);
        c.require(cut.value == brute, "flow value differs from the oracle at i=" +
                                          std::to_string(i));
        c.require(static_cast<int>(cut.edges.size()) == cut.value,
                  "cut edge set size differs from the value at i=" + std::to_string(i));
    }
    return c;
}

// 10. Determinism: two identical `check` runs over all fixtures produce
//     byte-identical reports and exit 0.
Criterion criterion_deterministic_check() {
    Criterion c;
    std::string command = cli_path + " check --seed 4242 --sweep 25";
    for (const auto& name : fixture_names) command += " " + fixture(name);
    ProcessResult first = run_process(command);
    ProcessResult second = run_process(command);
    c.require(first.exit_code == 0, "check exited " + std::to_string(first.exit_code));
    c.require(!first.out.empty(), "check produced no output");
    c.require(first.out == second.out, "reports differ between runs");
    c.require(contains_line(first.out, "CHECK PASS"), "check did not pass");
    return c;
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) cli_path = argv[1];

    struct Entry {
        const char* slug;
        Criterion (*fn)();
        double limit_seconds; // 0 = untimed
    };
    const Entry entries[] = {
        {"01_overlap_merge_classes", criterion_overlap_merge_classes, 1.0},
        {"02_merge_guarantee_sweep", criterion_merge_guarantee_sweep, 30.0},
        {"03_merge_preserves_cut", criterion_merge_preserves_cut, 120.0},
        {"04_rainbow_collapse", criterion_rainbow_collapse, 0.0},
        {"05_degree_bound", criterion_degree_bound, 0.0},
        {"06_g_submodular", criterion_g_submodular, 0.0},
        {"07_f_not_submodular", criterion_f_not_submodular, 0.0},
        {"08_hitting_set_equivalence", criterion_hitting_set_equivalence, 120.0},
        {"09_edge_cut_oracle", criterion_edge_cut_oracle, 0.0},
        {"10_deterministic_check", criterion_deterministic_check, 0.0},
    };

    int failures = 0;
    for (const Entry& entry : entries) {
        auto start = std::chrono::steady_clock::now();
        Criterion result = entry.fn();
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                             .count();
        if (entry.limit_seconds > 0 && seconds > entry.limit_seconds) {
            result.pass = false;
            result.detail = "over time budget of " + std::to_string(entry.limit_seconds) + "s" +
                            (result.detail.empty() ? "" : "; " + result.detail);
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", seconds);
        std::cout << "CRITERION " << entry.slug << ' ' << (result.pass ? "PASS" : "FAIL") << " ("
                  << timing << ")";
        if (!result.pass) std::cout << ' ' << result.detail;
        std::cout << '\n';
        if (!result.pass) ++failures;
    }
    std::cout << "ACCEPTANCE " << (10 - failures) << "/10 criteria passed\n";
    return failures;
}
