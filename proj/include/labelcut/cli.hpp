#pragma once

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "labelcut/generate.hpp"
#include "labelcut/graph.hpp"
#include "labelcut/io.hpp"
#include "labelcut/properties.hpp"
#include "labelcut/reduce.hpp"
#include "labelcut/solve.hpp"
#include "labelcut/transform.hpp"

namespace labelcut {
namespace cli {

inline std::string format_weight(Weight num, Weight denom) {
    Weight g = std::gcd(num, denom);
    if (g > 0) {
        num /= g;
        denom /= g;
    }
    if (denom == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(denom);
}

inline std::string label_names(const LabeledGraph& g, std::span<const LabelId> ids) {
    std::string out;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ' ';
        out += g.label_name(ids[i]);
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::invalid_argument, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::invalid_argument, "cannot write " + path);
    out << content;
}

inline std::string file_stem(const std::string& path) {
    size_t slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    size_t dot = name.find_last_of('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline const char* yesno(bool b) { return b ? "TRUE" : "FALSE"; }

// ---------------------------------------------------------------------------
// check: the executable property suite
// ---------------------------------------------------------------------------

struct CheckRunner {
    std::ostream& out;
    bool all_pass = true;

    void report(const std::string& name, bool pass, const std::string& detail = "") {
        out << "PROPERTY " << name << ' ' << (pass ? "PASS" : "FAIL");
        if (!pass && !detail.empty()) out << ' ' << detail;
        out << '\n';
        all_pass = all_pass && pass;
    }
};

namespace detail {

inline std::vector<LabelId> labels_from_mask(std::uint64_t mask, int label_count) {
    std::vector<LabelId> ids;
    for (int l = 0; l < label_count; ++l)
        if (mask & (1ull << l)) ids.push_back(l);
    return ids;
}

inline bool subset_of(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Label subsets to probe: every subset when |L| <= 10, sampled masks otherwise.
inline std::vector<std::uint64_t> probe_masks(const LabeledGraph& g, Rng& rng, int samples) {
    std::vector<std::uint64_t> masks;
    if (g.label_count() <= 10) {
        for (std::uint64_t s = 0; s < (1ull << g.label_count()); ++s) masks.push_back(s);
    } else {
        std::uint64_t full = g.label_count() >= 64 ? ~0ull : (1ull << g.label_count()) - 1;
        for (int i = 0; i < samples; ++i) masks.push_back(rng.next() & full);
    }
    return masks;
}

inline void check_instance(CheckRunner& run, const std::string& stem, const LabeledGraph& g,
                           std::uint64_t seed) {
    Rng rng(seed);
    GraphStats stats = compute_stats(g);

    // degree/frequency consistency
    {
        std::vector<int> degree(static_cast<size_t>(g.vertex_count), 0);
        std::vector<long long> incident_label_slots(static_cast<size_t>(g.vertex_count), 0);
        long long freq_total = 0;
        for (const Edge& e : g.edges) {
            ++degree[static_cast<size_t>(e.u)];
            ++degree[static_cast<size_t>(e.v)];
            incident_label_slots[static_cast<size_t>(e.u)] += static_cast<long long>(e.labels.size());
            incident_label_slots[static_cast<size_t>(e.v)] += static_cast<long long>(e.labels.size());
        }
        for (int f : stats.label_frequency) freq_total += f;
        bool ok = freq_total >= g.edge_count();
        for (int v = 0; v < g.vertex_count && ok; ++v) {
            int dl = stats.label_degree[static_cast<size_t>(v)];
            ok = dl <= incident_label_slots[static_cast<size_t>(v)] || g.edge_count() == 0;
            if (g.non_overlapping) ok = ok && dl <= degree[static_cast<size_t>(v)];
        }
        run.report(stem + ".stats_consistent", ok);
    }

    // removal semantics
    {
        auto masks = probe_masks(g, rng, 256);
        bool subset_ok = true, agree_ok = true;
        for (std::uint64_t mask : masks) {
            auto ids = labels_from_mask(mask, g.label_count());
            auto casc = remove_labels(g, ids, Semantics::cascading);
            auto indep = remove_labels(g, ids, Semantics::independent);
            subset_ok = subset_ok && subset_of(casc, indep);
            agree_ok = agree_ok && (!g.non_overlapping || casc == indep);
        }
        run.report(stem + ".cascade_subset", subset_ok);
        if (g.non_overlapping) run.report(stem + ".semantics_agree", agree_ok);
    }

    // g: monotone + submodular
    {
        bool monotone_ok = true;
        for (int trial = 0; trial < 256 && monotone_ok; ++trial) {
            std::vector<EdgeId> big, small;
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                std::uint64_t bits = rng.next();
                if (bits & 1) {
                    big.push_back(e);
                    if (bits & 2) small.push_back(e);
                }
            }
            monotone_ok = eval_g(g, small) <= eval_g(g, big);
        }
        run.report(stem + ".g_monotone", monotone_ok);

        auto sub = check_g_submodular(g, 12, 10000, seed);
        run.report(stem + ".g_submodular", sub.ok);
    }

    // f symmetry under complement
    {
        bool ok = true;
        auto check_mask = [&](std::uint64_t mask) {
            std::vector<VertexId> side, other;
            for (VertexId v = 0; v < g.vertex_count; ++v)
                (mask & (1ull << v) ? side : other).push_back(v);
            return eval_f(g, side) == eval_f(g, other);
        };
        if (g.vertex_count <= 10) {
            for (std::uint64_t mask = 0; mask < (1ull << g.vertex_count) && ok; ++mask)
                ok = check_mask(mask);
        } else {
            for (int trial = 0; trial < 256 && ok; ++trial)
                ok = check_mask(rng.next() & ((1ull << g.vertex_count) - 1));
        }
        run.report(stem + ".f_symmetric", ok);
    }

    // overlap merge guarantees
    TransformReport merged = merge_overlaps(g);
    MergeGuarantees guarantees = verify_merge_guarantees(merged, g);
    run.report(stem + ".merge_single_label", guarantees.single_label_per_edge);
    run.report(stem + ".merge_weight_bound", guarantees.weight_bounded);
    run.report(stem + ".merge_total_weight", guarantees.total_weight_preserved);
    {
        TransformReport again = merge_overlaps(merged.transformed);
        bool identity = again.classes.size() == static_cast<size_t>(merged.transformed.label_count());
        run.report(stem + ".merge_idempotent", identity);
    }

    bool unit_weights = true;
    for (const Label& l : g.labels) unit_weights = unit_weights && l.weight == g.weight_denom;

    // merge weights count labels, so the preservation claim is about
    // unweighted inputs
    if (unit_weights && g.label_count() <= 12 && g.edge_count() <= 14 && g.vertex_count >= 2) {
        SolveConfig cascading_cfg;
        cascading_cfg.variant = Variant::global;
        cascading_cfg.semantics = Semantics::cascading;
        Weight original = exact_min_label_cut(g, cascading_cfg).weight_num * merged.transformed.weight_denom;
        Weight transformed =
            exact_min_label_cut(merged.transformed, cascading_cfg).weight_num * g.weight_denom;
        run.report(stem + ".merge_preserves_cut", original == transformed,
                   format_weight(original, 1) + " != " + format_weight(transformed, 1));
    }

    if (g.label_count() <= 16 && g.vertex_count >= 2) {
        // the bound counts labels, so compare on a unit-weight copy
        LabeledGraph unit = g;
        for (Label& l : unit.labels) l.weight = unit.weight_denom;
        SolveConfig cfg;
        cfg.variant = Variant::global;
        cfg.semantics = Semantics::independent;
        Weight cut = exact_min_label_cut(unit, cfg).weight_num;
        run.report(stem + ".degree_bound",
                   cut <= static_cast<Weight>(stats.min_label_degree) * unit.weight_denom);
    }

    if (g.terminals && g.label_count() <= 12) {
        bool ok = true;
        for (Semantics semantics : {Semantics::cascading, Semantics::independent}) {
            SolveConfig cfg;
            cfg.variant = Variant::st;
            cfg.semantics = semantics;
            CutSolution exact = exact_min_label_cut(g, cfg);
            CutSolution greedy = greedy_st_label_cut(g, cfg);
            auto surviving = remove_labels(g, greedy.labels, Semantics::independent);
            ok = ok && !is_st_connected(g, g.terminals->first, g.terminals->second, surviving) &&
                 greedy.weight_num >= exact.weight_num &&
                 static_cast<int>(greedy.labels.size()) <= g.label_count();
        }
        run.report(stem + ".greedy_sound", ok);
    }

    if (g.terminals && g.label_count() <= 12 && g.vertex_count >= 2) {
        bool bijective = g.non_overlapping;
        for (int f : stats.label_frequency) bijective = bijective && f == 1;
        bool unit = true;
        for (const Label& l : g.labels) unit = unit && l.weight == g.weight_denom;
        if (bijective && unit && g.label_count() == g.edge_count()) {
            SolveConfig cfg;
            cfg.variant = Variant::st;
            Weight label_cut = exact_min_label_cut(g, cfg).weight_num;
            int edge_cut = min_edge_cut(g).value;
            run.report(stem + ".edge_cut_matches_label_cut",
                       static_cast<Weight>(edge_cut) * g.weight_denom == label_cut);
        }
    }
}

inline void check_generated_sweep(CheckRunner& run, int count, std::uint64_t seed) {
    bool ok = true;
    std::string detail;
    for (int i = 0; i < count && ok; ++i) {
        GeneratorConfig cfg;
        cfg.vertex_count = 2 + i % 9;
        int max_edges = cfg.vertex_count * (cfg.vertex_count - 1) / 2;
        cfg.edge_count = std::min(cfg.vertex_count - 1 + i % 5, max_edges);
        cfg.label_count = 1 + i % 8;
        cfg.overlap_prob = (i % 3) * 0.25;
        cfg.seed = seed + static_cast<std::uint64_t>(i);
        LabeledGraph g = generate(cfg);

        TransformReport merged = merge_overlaps(g);
        MergeGuarantees guarantees = verify_merge_guarantees(merged, g);
        // clause 2 (weight bound) is not asserted here: transitive merge chains
        // legitimately exceed the vertex label-degree maximum
        if (!guarantees.single_label_per_edge || !guarantees.total_weight_preserved) {
            ok = false;
            detail = "merge guarantees failed at seed " + std::to_string(cfg.seed);
            break;
        }
        if (g.vertex_count >= 2 && g.label_count() <= 12) {
            SolveConfig solve_cfg;
            solve_cfg.semantics = Semantics::cascading;
            Weight original = exact_min_label_cut(g, solve_cfg).weight_num;
            Weight transformed = exact_min_label_cut(merged.transformed, solve_cfg).weight_num;
            if (original != transformed) {
                ok = false;
                detail = "cut not preserved at seed " + std::to_string(cfg.seed);
                break;
            }
            GraphStats stats = compute_stats(g);
            SolveConfig indep_cfg;
            indep_cfg.semantics = Semantics::independent;
            Weight cut = exact_min_label_cut(g, indep_cfg).weight_num;
            if (cut > static_cast<Weight>(stats.min_label_degree)) {
                ok = false;
                detail = "degree bound violated at seed " + std::to_string(cfg.seed);
                break;
            }
        }
    }
    run.report("sweep(n=" + std::to_string(count) + ")", ok, detail);
}

} // namespace detail

inline int cmd_check(const std::vector<std::string>& files, int sweep_count, std::uint64_t seed,
                     std::ostream& out) {
    CheckRunner run{out};
    for (const auto& path : files) {
        LabeledGraph g = parse(read_file(path));
        detail::check_instance(run, file_stem(path), g, seed ^ fnv1a(file_stem(path)));
    }

    auto violation = find_f_submodularity_violation();
    bool witness_ok = false;
    std::string witness_detail;
    if (violation) {
        int fa = eval_f(violation->graph, violation->set_a, HedgeMode::raw_labels);
        int fb = eval_f(violation->graph, violation->set_b, HedgeMode::raw_labels);
        std::vector<VertexId> both, common;
        std::set_union(violation->set_a.begin(), violation->set_a.end(), violation->set_b.begin(),
                       violation->set_b.end(), std::back_inserter(both));
        std::set_intersection(violation->set_a.begin(), violation->set_a.end(),
                              violation->set_b.begin(), violation->set_b.end(),
                              std::back_inserter(common));
        int fu = eval_f(violation->graph, both, HedgeMode::raw_labels);
        int fi = eval_f(violation->graph, common, HedgeMode::raw_labels);
        witness_ok = fa == violation->f_a && fb == violation->f_b && fu == violation->f_union &&
                     fi == violation->f_intersection && fa + fb < fu + fi;
    } else {
        witness_detail = "no witness within bounds";
    }
    run.report("f_not_submodular", witness_ok, witness_detail);

    FSearchBounds control;
    control.injective_labels = true;
    run.report("f_submodular_plain_cut", !find_f_submodularity_violation(control).has_value());

    if (sweep_count > 0) detail::check_generated_sweep(run, sweep_count, seed);

    out << "CHECK " << (run.all_pass ? "PASS" : "FAIL") << '\n';
    return run.all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// entry point
// ---------------------------------------------------------------------------

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"minimum label cut / hedge connectivity toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    GeneratorConfig gen_cfg;
    std::string gen_output;
    gen->add_option("-n,--vertices", gen_cfg.vertex_count, "vertex count");
    gen->add_option("-m,--edges", gen_cfg.edge_count, "edge count");
    gen->add_option("-L,--labels", gen_cfg.label_count, "label count");
    gen->add_option("-p,--overlap", gen_cfg.overlap_prob, "extra-label probability");
    gen->add_option("--wmin", gen_cfg.weight_min, "minimum label weight");
    gen->add_option("--wmax", gen_cfg.weight_max, "maximum label weight");
    gen->add_option("-s,--seed", gen_cfg.seed, "random seed");
    gen->add_flag("--st", gen_cfg.add_terminals, "attach terminals (0, n-1)");
    gen->add_option("-o,--output", gen_output, "write instance to file");

    // transform
    auto* transform = app.add_subcommand("transform", "merge overlapping labels");
    std::string transform_file, transform_output;
    int rainbow_edge = -1;
    transform->add_option("file", transform_file, "instance file")->required();
    transform->add_option("-o,--output", transform_output, "write transformed instance to file");
    transform->add_option("--rainbow", rainbow_edge,
                          "replace the given multi-label edge by a single-label path instead");

    // solve
    auto* solve = app.add_subcommand("solve", "minimum label cut");
    std::string solve_file, solve_variant = "global", solve_method = "exact",
                solve_semantics = "cascading";
    int solve_budget = 24;
    long long decide_p = 0;
    solve->add_option("file", solve_file, "instance file")->required();
    solve->add_option("--variant", solve_variant, "global|st")
        ->check(CLI::IsMember({"global", "st"}));
    solve->add_option("--method", solve_method, "exact|greedy")
        ->check(CLI::IsMember({"exact", "greedy"}));
    solve->add_option("--semantics", solve_semantics, "cascading|independent")
        ->check(CLI::IsMember({"cascading", "independent"}));
    solve->add_option("--budget", solve_budget, "exact-solver label budget");
    solve->add_option("-p,--decide", decide_p, "answer `cut weight <= p?` as well");

    // check
    auto* check = app.add_subcommand("check", "run the property suite");
    std::vector<std::string> check_files;
    int sweep_count = 25;
    std::uint64_t check_seed = 12345;
    check->add_option("files", check_files, "instance files");
    check->add_option("--sweep", sweep_count, "generated instances to sweep");
    check->add_option("--seed", check_seed, "seed for sampled checks");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "hitting set -> st label cut");
    std::string reduce_file, reduce_output;
    int reduce_threshold = 0;
    reduce->add_option("file", reduce_file, "hitting-set file")->required();
    reduce->add_option("-l,--threshold", reduce_threshold, "decision threshold");
    reduce->add_option("-o,--output", reduce_output, "write constructed instance to file");

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "label degrees and frequencies");
    std::string stats_file;
    stats_cmd->add_option("file", stats_file, "instance file")->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (app.got_subcommand(gen)) {
            std::string text = emit(generate(gen_cfg));
            if (gen_output.empty())
                out << text;
            else
                write_file(gen_output, text);
            return 0;
        }

        if (app.got_subcommand(transform)) {
            LabeledGraph g = parse(read_file(transform_file));
            if (transform->count("--rainbow")) {
                LabeledGraph after = rainbow_path_transform(g, rainbow_edge);
                out << "rainbow_edge " << rainbow_edge << '\n';
                GraphStats before_stats = compute_stats(g);
                GraphStats after_stats = compute_stats(after);
                out << "min_label_degree_before " << before_stats.min_label_degree << '\n';
                out << "min_label_degree_after " << after_stats.min_label_degree << '\n';
                if (g.label_count() <= 24 && g.vertex_count >= 2) {
                    SolveConfig cfg;
                    CutSolution before_cut = exact_min_label_cut(g, cfg);
                    CutSolution after_cut = exact_min_label_cut(after, cfg);
                    out << "cut_weight_before "
                        << format_weight(before_cut.weight_num, before_cut.weight_denom) << '\n';
                    out << "cut_weight_after "
                        << format_weight(after_cut.weight_num, after_cut.weight_denom) << '\n';
                    bool preserved =
                        before_cut.weight_num * after_cut.weight_denom ==
                        after_cut.weight_num * before_cut.weight_denom;
                    out << "connectivity_preserved " << yesno(preserved) << '\n';
                }
                if (!transform_output.empty()) write_file(transform_output, emit(after));
                return 0;
            }
            TransformReport report = merge_overlaps(g);
            out << "original_labels " << g.label_count() << '\n';
            out << "classes " << report.classes.size() << '\n';
            for (size_t k = 0; k < report.classes.size(); ++k) {
                out << "class " << report.fresh_ids[k] << ' ' << report.class_weights[k] << " :=";
                for (LabelId l : report.classes[k]) out << ' ' << l;
                out << '\n';
            }
            MergeGuarantees guarantees = verify_merge_guarantees(report, g);
            out << "merge_single_label " << (guarantees.single_label_per_edge ? "PASS" : "FAIL")
                << '\n';
            out << "merge_weight_bound " << (guarantees.weight_bounded ? "PASS" : "FAIL") << '\n';
            out << "merge_total_weight "
                << (guarantees.total_weight_preserved ? "PASS" : "FAIL") << '\n';
            if (!transform_output.empty()) write_file(transform_output, emit(report.transformed));
            return guarantees.all() ? 0 : 1;
        }

        if (app.got_subcommand(solve)) {
            if (solve_method == "greedy" && solve_variant != "st") {
                err << "error: the greedy method only handles --variant st\n";
                return 2;
            }
            LabeledGraph g = parse(read_file(solve_file));
            SolveConfig cfg;
            cfg.variant = solve_variant == "st" ? Variant::st : Variant::global;
            cfg.semantics =
                solve_semantics == "independent" ? Semantics::independent : Semantics::cascading;
            cfg.budget = solve_budget;
            out << "variant " << solve_variant << '\n';
            out << "method " << solve_method << '\n';
            out << "semantics " << solve_semantics << '\n';
            CutSolution cut = solve_method == "greedy" ? greedy_st_label_cut(g, cfg)
                                                       : exact_min_label_cut(g, cfg);
            out << "cut_weight " << format_weight(cut.weight_num, cut.weight_denom) << '\n';
            out << "cut_size " << cut.labels.size() << '\n';
            out << "labels " << label_names(g, cut.labels) << '\n';
            if (std::holds_alternative<std::pair<VertexId, VertexId>>(cut.witness)) {
                auto [s, t] = std::get<std::pair<VertexId, VertexId>>(cut.witness);
                out << "witness_terminals " << s << ' ' << t << '\n';
            } else {
                out << "witness_component";
                for (VertexId v : std::get<std::vector<VertexId>>(cut.witness)) out << ' ' << v;
                out << '\n';
            }
            if (solve->count("--decide")) {
                out << "decision_p " << decide_p << '\n';
                out << "cut_at_most " << yesno(decide_cut_at_most(g, cfg, decide_p)) << '\n';
            }
            return 0;
        }

        if (app.got_subcommand(check)) return cmd_check(check_files, sweep_count, check_seed, out);

        if (app.got_subcommand(reduce)) {
            HittingSetInstance h = parse_hitting_set(read_file(reduce_file));
            LabeledGraph g = hitting_set_to_st_label_cut(h);
            out << "universe " << h.universe_size << '\n';
            out << "subsets " << h.subsets.size() << '\n';
            out << "graph_vertices " << g.vertex_count << '\n';
            out << "graph_edges " << g.edge_count() << '\n';
            out << "graph_labels " << g.label_count() << '\n';
            int threshold = reduce->count("--threshold") ? reduce_threshold : 1;
            DecisionPipelineResult result = run_decision_pipeline(h, threshold);
            out << "edge_cut_value " << result.edge_cut_value << '\n';
            out << "hitting_optimum " << result.hitting_optimum << '\n';
            out << "cut_optimum " << format_weight(result.cut_optimum, g.weight_denom) << '\n';
            bool optima_agree =
                result.cut_optimum == static_cast<Weight>(result.hitting_optimum) * g.weight_denom;
            out << "optima_agree " << yesno(optima_agree) << '\n';
            if (reduce->count("--threshold")) {
                out << "threshold " << threshold << '\n';
                out << "hitting_at_most " << yesno(result.hitting_at_most) << '\n';
                out << "cut_at_most " << yesno(result.cut_at_most) << '\n';
                out << "decision_agree " << yesno(result.agree) << '\n';
            }
            if (!reduce_output.empty()) write_file(reduce_output, emit(g));
            return optima_agree && result.agree ? 0 : 1;
        }

        if (app.got_subcommand(stats_cmd)) {
            LabeledGraph g = parse(read_file(stats_file));
            GraphStats stats = compute_stats(g);
            out << "vertices " << g.vertex_count << '\n';
            out << "edges " << g.edge_count() << '\n';
            out << "labels " << g.label_count() << '\n';
            out << "non_overlapping " << yesno(g.non_overlapping) << '\n';
            out << "min_label_degree " << stats.min_label_degree << '\n';
            out << "max_label_frequency " << stats.max_label_frequency << '\n';
            for (int v = 0; v < g.vertex_count; ++v)
                out << "label_degree " << v << ' ' << stats.label_degree[static_cast<size_t>(v)]
                    << '\n';
            for (LabelId l = 0; l < g.label_count(); ++l)
                out << "label_frequency " << l << ' '
                    << stats.label_frequency[static_cast<size_t>(l)] << '\n';
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace cli
} // namespace labelcut
