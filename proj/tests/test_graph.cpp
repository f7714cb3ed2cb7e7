#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "labelcut/generate.hpp"
#include "labelcut/graph.hpp"
#include "labelcut/io.hpp"
#include "labelcut/rng.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace labelcut;

namespace {

std::vector<LabelId> mask_labels(std::uint64_t mask, int label_count) {
    std::vector<LabelId> out;
    for (LabelId l = 0; l < label_count; ++l)
        if (mask & (1ull << l)) out.push_back(l);
    return out;
}

} // namespace

TEST_CASE("minimal graph builds and is flagged non-overlapping") {
    LabeledGraph g = build_graph(2, {{0, 1, {0}}}, 1);
    CHECK(g.vertex_count == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.non_overlapping);
    CHECK(g.labels[0].weight == 1);
}

TEST_CASE("multi-label edges are accepted and flip the overlap flag") {
    LabeledGraph g = build_graph(4,
                                 {{0, 1, {0, 1, 2}},
                                  {0, 2, {0}},
                                  {0, 3, {0}},
                                  {1, 2, {2}},
                                  {1, 3, {2}},
                                  {2, 3, {1}}},
                                 3);
    CHECK_FALSE(g.non_overlapping);
    CHECK(g.edges[0].labels == std::vector<LabelId>{0, 1, 2});
}

TEST_CASE("build rejections name the offending element") {
    auto code_of = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return errc::invalid_argument;
    };
    CHECK(code_of([] { build_graph(3, {{0, 0, {0}}, {0, 1, {0}}, {1, 2, {0}}}, 1); }) ==
          errc::self_loop);
    CHECK(code_of([] { build_graph(3, {{0, 1, {0}}, {0, 1, {1}}, {1, 2, {0}}}, 2); }) ==
          errc::duplicate_edge);
    CHECK(code_of([] { build_graph(2, {{0, 1, {}}}, 1); }) == errc::empty_label_set);
    CHECK(code_of([] { build_graph(4, {{0, 1, {0}}, {2, 3, {0}}}, 1); }) == errc::disconnected);
    CHECK(code_of([] {
        BuildOptions opts;
        opts.weights = {{0, 0}};
        build_graph(2, {{0, 1, {0}}}, 1, std::move(opts));
    }) == errc::non_positive_weight);
    CHECK(code_of([] { build_graph(2, {{0, 5, {0}}}, 1); }) == errc::vertex_out_of_range);
    CHECK(code_of([] { build_graph(2, {{0, 1, {7}}}, 1); }) == errc::unknown_label);

    try {
        build_graph(3, {{0, 1, {0}}, {0, 1, {1}}, {1, 2, {0}}}, 2);
        FAIL("expected duplicate edge error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
    }
}

TEST_CASE("terminals are validated") {
    BuildOptions opts;
    opts.terminals = {{0, 0}};
    CHECK_THROWS_AS(build_graph(2, {{0, 1, {0}}}, 1, std::move(opts)), Error);
    BuildOptions oob;
    oob.terminals = {{0, 9}};
    CHECK_THROWS_AS(build_graph(2, {{0, 1, {0}}}, 1, std::move(oob)), Error);
}

TEST_CASE("removing nothing keeps every edge") {
    LabeledGraph g = load_fixture("five_label_overlap.lg");
    auto surviving = remove_labels(g, std::vector<LabelId>{}, Semantics::cascading);
    CHECK(static_cast<int>(surviving.size()) == g.edge_count());
}

TEST_CASE("cascading removal closes over shared edges") {
    LabeledGraph g = load_fixture("five_label_overlap.lg");
    // selecting A propagates through {A,C} and {A,D} to remove C and D too
    auto closure = cascading_closure(g, std::vector<LabelId>{0});
    CHECK(closure == std::vector<LabelId>{0, 2, 3});
    auto surviving = remove_labels(g, std::vector<LabelId>{0}, Semantics::cascading);
    CHECK(surviving == std::vector<EdgeId>{2, 3, 5}); // exactly the {B,E}-labeled edges
}

TEST_CASE("independent removal only deletes intersecting edges") {
    // edge (0,1) carries {A,C}; another edge carries C alone
    LabeledGraph g = build_graph(3, {{0, 1, {0, 2}}, {1, 2, {2}}, {0, 2, {1}}}, 3);
    auto surviving = remove_labels(g, std::vector<LabelId>{0}, Semantics::independent);
    CHECK(surviving == std::vector<EdgeId>{1, 2}); // the C-only edge stays
}

TEST_CASE("unknown labels in a removal are rejected") {
    LabeledGraph g = build_graph(2, {{0, 1, {0}}}, 1);
    CHECK_THROWS_AS(remove_labels(g, std::vector<LabelId>{3}, Semantics::independent), Error);
    CHECK_THROWS_AS(remove_labels(g, std::vector<LabelId>{3}, Semantics::cascading), Error);
}

TEST_CASE("connectivity oracles") {
    LabeledGraph g = build_graph(2, {{0, 1, {0}}}, 1);
    CHECK(is_connected(g, std::vector<EdgeId>{0}));
    CHECK_FALSE(is_connected(g, std::vector<EdgeId>{}));

    LabeledGraph path = build_graph(3, {{0, 1, {0}}, {1, 2, {1}}}, 2);
    CHECK(is_st_connected(path, 0, 2, std::vector<EdgeId>{0, 1}));
    CHECK_FALSE(is_st_connected(path, 0, 2, std::vector<EdgeId>{0}));
    CHECK_THROWS_AS(is_st_connected(path, 0, 9, std::vector<EdgeId>{0}), Error);
}

TEST_CASE("stats on the triple-overlap K4") {
    LabeledGraph g = load_fixture("k4_triple_overlap.lg");
    GraphStats stats = compute_stats(g);
    for (int v = 0; v < 4; ++v) CHECK(stats.label_degree[static_cast<size_t>(v)] == 3);
    CHECK(stats.min_label_degree == 3);
    CHECK(stats.max_label_frequency == 3);
    long long freq_total = 0;
    for (int f : stats.label_frequency) freq_total += f;
    CHECK(freq_total >= g.edge_count());
}

TEST_CASE("stats on a star") {
    LabeledGraph star = build_graph(4, {{0, 1, {0}}, {0, 2, {1}}, {0, 3, {2}}}, 3);
    GraphStats stats = compute_stats(star);
    CHECK(stats.label_degree[0] == 3);
    CHECK(stats.label_degree[1] == 1);
    CHECK(stats.min_label_degree == 1);
}

TEST_CASE("label degree can exceed vertex degree only through overlaps") {
    // pendant edge with three labels: D_L = 3 > deg = 1
    LabeledGraph g = build_graph(2, {{0, 1, {0, 1, 2}}}, 3);
    GraphStats stats = compute_stats(g);
    CHECK(stats.label_degree[0] == 3);

    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        GeneratorConfig cfg;
        cfg.vertex_count = 2 + rng.below(8);
        cfg.edge_count = std::min(cfg.vertex_count - 1 + rng.below(6),
                                  cfg.vertex_count * (cfg.vertex_count - 1) / 2);
        cfg.label_count = 1 + rng.below(8);
        cfg.overlap_prob = trial % 2 ? 0.5 : 0.0;
        cfg.seed = rng.next();
        LabeledGraph random = generate(cfg);
        GraphStats s = compute_stats(random);
        std::vector<long long> slots(static_cast<size_t>(random.vertex_count), 0);
        std::vector<int> degree(static_cast<size_t>(random.vertex_count), 0);
        for (const Edge& e : random.edges) {
            slots[static_cast<size_t>(e.u)] += static_cast<long long>(e.labels.size());
            slots[static_cast<size_t>(e.v)] += static_cast<long long>(e.labels.size());
            ++degree[static_cast<size_t>(e.u)];
            ++degree[static_cast<size_t>(e.v)];
        }
        for (int v = 0; v < random.vertex_count; ++v) {
            CHECK(s.label_degree[static_cast<size_t>(v)] <= slots[static_cast<size_t>(v)]);
            if (random.non_overlapping)
                CHECK(s.label_degree[static_cast<size_t>(v)] <= degree[static_cast<size_t>(v)]);
        }
    }
}

TEST_CASE("equality D_L(v) == deg(v) iff incident single-label edges are pairwise distinct") {
    LabeledGraph distinct = build_graph(4, {{0, 1, {0}}, {0, 2, {1}}, {0, 3, {2}}}, 3);
    GraphStats a = compute_stats(distinct);
    CHECK(a.label_degree[0] == 3);

    LabeledGraph shared = build_graph(4, {{0, 1, {0}}, {0, 2, {0}}, {0, 3, {1}}}, 2);
    GraphStats b = compute_stats(shared);
    CHECK(b.label_degree[0] == 2); // two incident edges share label 0
}

TEST_CASE("cascading survivors are a subset of independent survivors") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        GeneratorConfig cfg;
        cfg.vertex_count = 2 + rng.below(7);
        cfg.edge_count = std::min(cfg.vertex_count - 1 + rng.below(5),
                                  cfg.vertex_count * (cfg.vertex_count - 1) / 2);
        cfg.label_count = 1 + rng.below(7);
        cfg.overlap_prob = 0.4;
        cfg.seed = rng.next();
        LabeledGraph g = generate(cfg);
        std::uint64_t mask = rng.next() & ((1ull << g.label_count()) - 1);
        auto ids = mask_labels(mask, g.label_count());
        auto cascading = remove_labels(g, ids, Semantics::cascading);
        auto independent = remove_labels(g, ids, Semantics::independent);
        CHECK(std::includes(independent.begin(), independent.end(), cascading.begin(),
                            cascading.end()));
    }
}

TEST_CASE("semantics coincide on non-overlapping graphs, exhaustively") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        GeneratorConfig cfg;
        cfg.vertex_count = 2 + rng.below(6);
        cfg.edge_count = std::min(cfg.vertex_count - 1 + rng.below(4),
                                  cfg.vertex_count * (cfg.vertex_count - 1) / 2);
        cfg.label_count = 1 + rng.below(6); // <= 10 labels: scan every subset
        cfg.overlap_prob = 0.0;
        cfg.seed = rng.next();
        LabeledGraph g = generate(cfg);
        REQUIRE(g.non_overlapping);
        for (std::uint64_t mask = 0; mask < (1ull << g.label_count()); ++mask) {
            auto ids = mask_labels(mask, g.label_count());
            CHECK(remove_labels(g, ids, Semantics::cascading) ==
                  remove_labels(g, ids, Semantics::independent));
        }
    }
}

TEST_CASE("library closure agrees with the pairwise-merge oracle") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        GeneratorConfig cfg;
        cfg.vertex_count = 2 + rng.below(7);
        cfg.edge_count = std::min(cfg.vertex_count - 1 + rng.below(6),
                                  cfg.vertex_count * (cfg.vertex_count - 1) / 2);
        cfg.label_count = 1 + rng.below(9);
        cfg.overlap_prob = 0.5;
        cfg.seed = rng.next();
        LabeledGraph g = generate(cfg);
        auto classes = oracle::merge_classes(g);
        std::uint64_t seed_mask = rng.next() & ((1ull << g.label_count()) - 1);
        auto closure = cascading_closure(g, mask_labels(seed_mask, g.label_count()));
        std::uint64_t closure_bits = 0;
        for (LabelId l : closure) closure_bits |= 1ull << l;
        CHECK(closure_bits == oracle::closure_mask(classes, seed_mask));
    }
}
