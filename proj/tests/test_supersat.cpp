#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "turan/rng.hpp"
#include "turan/supersat.hpp"

using namespace turan;

namespace {

Hypergraph canonical_c34_host() {
    return new_hypergraph(8, 3, {{7, 0, 1}, {1, 2, 3}, {3, 4, 5}, {5, 6, 7}});
}

std::vector<int> iota_ids(int d) {
    std::vector<int> ids(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) ids[static_cast<std::size_t>(i)] = i + 100;
    return ids;
}

}  // namespace

TEST_SUITE_BEGIN("supersat");

TEST_CASE("codegree graphs are near-regular circulants") {
    CodegreeGraph pentagon = build_codegree_graph(iota_ids(5), 2);
    for (std::size_t i = 0; i < 5; ++i) CHECK(pentagon.degree(i) == 2);

    CodegreeGraph k4 = build_codegree_graph(iota_ids(4), 3);
    for (std::size_t i = 0; i < 4; ++i) CHECK(k4.degree(i) == 3);

    // d=6, t=3: offsets +-1 plus the antipodal matching
    CodegreeGraph c63 = build_codegree_graph(iota_ids(6), 3);
    for (std::size_t i = 0; i < 6; ++i) CHECK(c63.degree(i) == 3);
    CHECK(std::find(c63.adj[0].begin(), c63.adj[0].end(), 3) != c63.adj[0].end());

    // every (d, t) in range gives degrees t or t-1
    for (int d = 3; d <= 12; ++d)
        for (int t = 1; t < d; ++t) {
            CodegreeGraph g = build_codegree_graph(iota_ids(d), t);
            int low = 0;
            for (std::size_t i = 0; i < g.adj.size(); ++i) {
                CHECK(g.degree(i) <= t);
                CHECK(g.degree(i) >= t - 1);
                if (g.degree(i) == t - 1) ++low;
            }
            if (t % 2 == 0 || d % 2 == 0) CHECK(low == 0);
            else CHECK(low == 1);
        }
    CHECK_THROWS_WITH_AS(build_codegree_graph(iota_ids(3), 3), doctest::Contains("TooFewVertices"),
                         Error);
}

TEST_CASE("greedy expansion preconditions") {
    Hypergraph host = canonical_c34_host();
    CHECK_THROWS_WITH_AS(greedy_expand(host, 1, 2), doctest::Contains("CodegreeTooSmall"), Error);

    // codegree precondition reported when a shadow is too thin
    GreedyOptions relax;
    relax.relax_threshold = true;
    CHECK_THROWS_WITH_AS(greedy_expand(host, 3, 2, relax), doctest::Contains("CodegreeTooSmall"),
                         Error);
}

TEST_CASE("greedy expansion on complete hosts reaches every copy") {
    Hypergraph k38 = complete_hypergraph(8, 3);
    GreedyOptions opts;
    opts.relax_threshold = true;  // t = 6 < 16
    opts.cap = 10'000'000;
    CycleCollection s = greedy_expand(k38, 6, 2, opts);
    CHECK_FALSE(s.truncated);
    CHECK(s.copies.size() == 5040);  // all linear 4-cycles of K^3_8
    for (std::size_t i = 0; i < s.copies.size(); i += 97) CHECK(is_cycle_copy(k38, s.copies[i]));
    std::vector<std::uint64_t> profile = delta_profile(s, 4);
    CHECK(profile[0] == 360);  // 4 * 5040 / 56
    CHECK(profile[3] == 1);

    // the counting twin agrees exactly here
    GreedyCountStats stats = greedy_expand_count(k38, 6, 2, true, 64);
    CHECK(stats.copies == 5040);
    CHECK(stats.validation_failures == 0);
    CHECK(stats.validated > 0);
    std::uint64_t max_load = 0;
    for (std::uint64_t l : stats.edge_load) max_load = std::max(max_load, l);
    CHECK(max_load == 360);
}

TEST_CASE("greedy expansion matches its counting twin at n = 9") {
    Hypergraph host = complete_hypergraph(9, 3);
    GreedyOptions opts;
    opts.relax_threshold = true;
    CycleCollection s = greedy_expand(host, 7, 2, opts);
    CHECK(s.copies.size() == 45360);  // C(9,8) * 5040
    for (std::size_t i = 0; i < s.copies.size(); i += 503) CHECK(is_cycle_copy(host, s.copies[i]));
    CHECK(delta_profile(s, 4)[3] == 1);

    GreedyCountStats stats = greedy_expand_count(host, 7, 2, true, 997);
    CHECK(stats.copies == s.copies.size());
}

TEST_CASE("sampled expansion is reproducible and valid") {
    Hypergraph k39 = complete_hypergraph(9, 3);
    GreedyOptions opts;
    opts.mode = ExpandMode::Sampled;
    opts.sample_count = 500;
    opts.seed = 99;
    opts.relax_threshold = true;
    CycleCollection a = greedy_expand(k39, 7, 2, opts);
    CycleCollection b = greedy_expand(k39, 7, 2, opts);
    CHECK(a.copies.size() == b.copies.size());
    CHECK_FALSE(a.copies.empty());
    for (std::size_t i = 0; i < a.copies.size(); ++i) {
        CHECK(a.copies[i].edge_ids == b.copies[i].edge_ids);
        CHECK(is_cycle_copy(k39, a.copies[i]));
    }
}

TEST_CASE("dichotomy endpoints") {
    Hypergraph h = complete_hypergraph(9, 3);
    Partition p{{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}}, {0, 0, 0, 1, 1, 1, 2, 2, 2}};
    Hypergraph hp = induced_partite_subgraph(h, p);

    PartitionOutcome all = codegree_dichotomy_partition(hp, p, 0.5);
    CHECK(all.core.edge_count() == hp.edge_count());
    CHECK(all.buckets.empty());

    PartitionOutcome none = codegree_dichotomy_partition(hp, p, hp.edge_count() + 1.0);
    CHECK(none.core.edge_count() == 0);
    int bucketed = 0;
    for (const auto& [key, bucket] : none.buckets) bucketed += bucket.edge_count();
    CHECK(bucketed == hp.edge_count());
}

TEST_CASE("dichotomy soundness on the balanced complete 3-partite host") {
    Hypergraph h = complete_hypergraph(9, 3);
    Partition p{{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}}, {0, 0, 0, 1, 1, 1, 2, 2, 2}};
    Hypergraph hp = induced_partite_subgraph(h, p);
    PartitionOutcome outcome = codegree_dichotomy_partition(hp, p, 2.0);

    // re-scan the core's shadows directly
    if (outcome.core.edge_count() > 0) {
        ShadowMap sm = shadows(outcome.core, 2);
        for (const auto& [sigma, ids] : sm.entries) CHECK(ids.size() >= 2);
    }
    // removal-time codegrees match the recorded bucket scale
    for (const RemovalEvent& ev : outcome.removals) {
        CHECK((1 << ev.bucket.a) <= ev.degree_at_removal);
        CHECK(ev.degree_at_removal < (1 << (ev.bucket.a + 1)));
        CHECK(static_cast<double>(ev.degree_at_removal) < outcome.threshold);
    }
    // the core plus buckets partition the edge set
    std::multiset<Edge> together(outcome.core.edges().begin(), outcome.core.edges().end());
    for (const auto& [key, bucket] : outcome.buckets)
        for (const Edge& e : bucket.edges()) together.insert(e);
    std::multiset<Edge> original(hp.edges().begin(), hp.edges().end());
    CHECK(together == original);

    CHECK_THROWS_AS(codegree_dichotomy_partition(h, p, 2.0), Error);  // not partite
}

TEST_CASE("threshold formulas evaluate the stated expressions") {
    // r=3, l=2, t = log n: A = n^{3/8}
    double n = 20.0;
    CHECK(threshold_A(3, 2, std::log(n), n, ThresholdVariant::Linear3) ==
          doctest::Approx(std::pow(n, 3.0 / 8.0)));

    // A_4 = (t/(log n)^2)^{3/8} n^{5/8} at l = 2
    double t = 7.0, n4 = 16.0;
    CHECK(threshold_A(4, 2, t, n4, ThresholdVariant::LinearGe4) ==
          doctest::Approx(std::pow(t / std::pow(std::log(n4), 2.0), 3.0 / 8.0) *
                          std::pow(n4, 5.0 / 8.0)));

    // Berge: base collapses to 1 when t = (log n)^{r-2}
    CHECK(threshold_A(3, 2, std::log(31.0), 31.0, ThresholdVariant::Berge) == doctest::Approx(1.0));
    CHECK(threshold_A(4, 3, std::pow(std::log(31.0), 2.0), 31.0, ThresholdVariant::Berge) ==
          doctest::Approx(1.0));

    CHECK(berge_lambda(4, 2) == doctest::Approx(1.0));
    CHECK(berge_lambda(3, 2) == doctest::Approx(0.5));
    CHECK_THROWS_AS(threshold_A(3, 2, 0.0, 10.0, ThresholdVariant::Linear3), Error);
}

TEST_CASE("shadow extension: forced and blocked cases") {
    // each 2-edge of the C_4 extends through exactly one fresh vertex
    Hypergraph g(8, 2, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    Hypergraph fp(8, 3, {{0, 1, 4}, {1, 2, 5}, {2, 3, 6}, {0, 3, 7}});
    CycleCopy square = make_linear_copy(g, {0, 1, 2, 3});
    REQUIRE(is_cycle_copy(g, square));
    CycleCollection base;
    base.host_edge_count = g.edge_count();
    base.copy_length = 4;
    base.copies.push_back(square);

    CycleCollection lifted = shadow_extend(base, g, fp, true);
    CHECK(lifted.copies.size() == 1);
    CHECK(is_cycle_copy(fp, lifted.copies[0]));
    CHECK(lifted.copies[0].kind == CycleKind::Linear);

    // two shadow edges forced through the same new vertex
    Hypergraph clash(8, 3, {{0, 1, 4}, {1, 2, 4}, {2, 3, 6}, {0, 3, 7}});
    CycleCollection none = shadow_extend(base, g, clash, true);
    CHECK(none.copies.empty());
    CycleCollection berge = shadow_extend(base, g, clash, false);
    CHECK(berge.copies.size() == 1);
    CHECK(berge.copies[0].kind == CycleKind::Berge);
    CHECK(is_cycle_copy(clash, berge.copies[0]));

    // a dangling shadow edge raises
    Hypergraph missing(8, 3, {{0, 1, 4}, {1, 2, 5}, {2, 3, 6}});
    CHECK_THROWS_WITH_AS(shadow_extend(base, g, missing, true), doctest::Contains("DanglingShadow"),
                         Error);
}

TEST_CASE("shadow extension count matches the product-with-exclusion oracle") {
    // V1 = {0,1,2}, V2 = {3,4,5}, V3 = {6,7,8,9}: all transversal edges
    std::vector<Edge> edges;
    for (int a = 0; a < 3; ++a)
        for (int b = 3; b < 6; ++b)
            for (int c = 6; c < 10; ++c) edges.push_back({a, b, c});
    Hypergraph fp(10, 3, edges);
    std::vector<Edge> shadow_edges;
    for (int a = 0; a < 3; ++a)
        for (int b = 3; b < 6; ++b) shadow_edges.push_back({a, b});
    Hypergraph g(10, 2, shadow_edges);

    EnumResult squares = enumerate_cycles(g, CycleFamily::linear(2, 4));
    REQUIRE(squares.copies.size() == 9);  // 4-cycles of K_{3,3}
    CycleCollection base;
    base.host_edge_count = g.edge_count();
    base.copy_length = 4;
    base.copies = squares.copies;

    CycleCollection lifted = shadow_extend(base, g, fp, true);
    // oracle: per copy, count assignments of pairwise-distinct fresh vertices
    std::size_t expected = 0;
    ShadowMap host_shadows = shadows(fp, 2);
    for (const CycleCopy& c : base.copies) {
        std::vector<std::vector<int>> choice;
        for (int id : c.edge_ids) {
            std::vector<int> xs;
            for (int host_id : host_shadows.entries.at(g.edge(id))) {
                const Edge& he = fp.edge(host_id);
                for (int v : he)
                    if (!std::binary_search(g.edge(id).begin(), g.edge(id).end(), v)) xs.push_back(v);
            }
            choice.push_back(xs);
        }
        auto count = [&](auto&& self, std::size_t i, std::vector<int>& taken) -> std::size_t {
            if (i == choice.size()) return 1;
            std::size_t total = 0;
            for (int x : choice[i]) {
                if (std::find(taken.begin(), taken.end(), x) != taken.end()) continue;
                taken.push_back(x);
                total += self(self, i + 1, taken);
                taken.pop_back();
            }
            return total;
        };
        std::vector<int> taken;
        expected += count(count, 0, taken);
    }
    CHECK(lifted.copies.size() == expected);
    CHECK(expected == 9 * 24);  // 4 slots filled injectively from 4 fresh vertices

    // distinct=false dominates distinct=true
    CycleCollection loose = shadow_extend(base, g, fp, false);
    CHECK(loose.copies.size() >= lifted.copies.size());
}

TEST_CASE("delta profiles") {
    CycleCollection single;
    single.host_edge_count = 4;
    single.copy_length = 4;
    single.copies.push_back(CycleCopy{CycleKind::Linear, {0, 1, 2, 3}, {0, 1, 2, 3, 4, 5, 6, 7}});
    std::vector<std::uint64_t> profile = delta_profile(single, 4);
    CHECK(profile == std::vector<std::uint64_t>{1, 1, 1, 1});

    // two copies sharing exactly two edges
    CycleCollection twin;
    twin.host_edge_count = 6;
    twin.copy_length = 4;
    twin.copies.push_back(CycleCopy{CycleKind::Berge, {0, 1, 2, 3}, {}});
    twin.copies.push_back(CycleCopy{CycleKind::Berge, {0, 1, 4, 5}, {}});
    profile = delta_profile(twin, 4);
    CHECK(profile == std::vector<std::uint64_t>{2, 2, 1, 1});

    // all C_4s of K_5: each edge lies in 6 of the 15 copies
    Hypergraph k5 = complete_hypergraph(5, 2);
    CycleCollection all;
    all.host_edge_count = k5.edge_count();
    all.copy_length = 4;
    all.copies = enumerate_cycles(k5, CycleFamily::linear(2, 4)).copies;
    REQUIRE(all.copies.size() == 15);
    CHECK(delta_profile(all, 1)[0] == 6);

    // monotone in j
    std::vector<std::uint64_t> full = delta_profile(all, 4);
    for (std::size_t j = 1; j < full.size(); ++j) CHECK(full[j] <= full[j - 1]);
}

TEST_CASE("verify_balance reports ratios and the implied constant") {
    CycleCollection empty;
    empty.host_edge_count = 10;
    empty.copy_length = 4;
    BalanceBound bound{BoundVariant::Graph2, 2, 2, 16.0, 2.0, 1.0};
    BalanceReport report = verify_balance(empty, bound);
    CHECK(report.implied_c == 0.0);
    for (const auto& row : report.rows) CHECK(row.ratio == 0.0);

    CycleCollection single;
    single.host_edge_count = 4;
    single.copy_length = 4;
    single.copies.push_back(CycleCopy{CycleKind::Linear, {0, 1, 2, 3}, {0, 1, 2, 3, 4, 5, 6, 7}});
    BalanceBound b3{BoundVariant::Linear3, 3, 2, 8.0, 4.0 / 64.0, 1.0};
    BalanceReport r3 = verify_balance(single, b3);
    CHECK(r3.implied_c > 0.0);
    CHECK(std::isfinite(r3.implied_c));
}

TEST_CASE("balanced supersaturation rejects sparse hosts") {
    std::vector<Edge> star_edges;
    for (int a = 1; a < 12; ++a)
        for (int b = a + 1; b < 12; ++b) star_edges.push_back({0, a, b});
    Hypergraph star(12, 3, star_edges);
    CHECK_THROWS_WITH_AS(balanced_supersat(star, 2, SupersatVariant::Linear),
                         doctest::Contains("TooSparse"), Error);
}

TEST_CASE("balanced supersaturation on the complete 3-graph") {
    Hypergraph h = complete_hypergraph(12, 3);
    SupersatBudget budget;
    budget.seed = 4;
    SupersatResult res = balanced_supersat(h, 2, SupersatVariant::Linear, budget);
    CHECK_FALSE(res.collection.empty());
    for (const CycleCopy& c : res.collection.copies) CHECK(is_cycle_copy(h, c));
    std::vector<std::uint64_t> profile = delta_profile(res.collection, 4);
    CHECK(profile[3] == 1);
    CHECK(res.bound.c > 0.0);
    CHECK(res.trace.contains("levels"));
}

TEST_CASE("balanced supersaturation r=2 base case on K_8") {
    Hypergraph k8 = complete_hypergraph(8, 2);
    SupersatResult res = balanced_supersat(k8, 2, SupersatVariant::Linear);
    CHECK_FALSE(res.collection.empty());
    std::vector<std::uint64_t> profile = delta_profile(res.collection, 4);
    CHECK(profile[3] == 1);
    // the fitted constant reproduces the verifier's implied constant
    BalanceReport report = verify_balance(res.collection, res.bound);
    CHECK(report.implied_c == doctest::Approx(res.bound.c));
    for (const CycleCopy& c : res.collection.copies) CHECK(is_cycle_copy(k8, c));
}

TEST_CASE("balanced supersaturation Berge variant") {
    Hypergraph h = complete_hypergraph(10, 3);
    SupersatBudget budget;
    budget.seed = 11;
    SupersatResult res = balanced_supersat(h, 2, SupersatVariant::Berge, budget);
    CHECK_FALSE(res.collection.empty());
    std::set<std::vector<int>> keys;
    for (const CycleCopy& c : res.collection.copies) {
        CHECK(c.kind == CycleKind::Berge);
        CHECK(is_cycle_copy(h, c));
        std::vector<int> ids = c.edge_ids;
        std::sort(ids.begin(), ids.end());
        CHECK(keys.insert(ids).second);  // edge-set identity after collapse
    }
}

TEST_CASE("implied constant is stable across seeds") {
    Hypergraph h = complete_hypergraph(12, 3);
    std::vector<double> cs;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SupersatBudget budget;
        budget.seed = seed;
        SupersatResult res = balanced_supersat(h, 2, SupersatVariant::Linear, budget);
        REQUIRE_FALSE(res.collection.empty());
        cs.push_back(res.bound.c);
    }
    std::vector<double> sorted = cs;
    std::sort(sorted.begin(), sorted.end());
    double median = sorted[sorted.size() / 2];
    for (double c : cs) {
        CHECK(c >= 0.8 * median);
        CHECK(c <= 1.2 * median);
    }
}

TEST_CASE("linear copies convert to Berge form") {
    Hypergraph host = canonical_c34_host();
    CycleCopy linear{CycleKind::Linear, {0, 1, 2, 3}, {0, 1, 2, 3, 4, 5, 6, 7}};
    CycleCopy berge = linear_to_berge(host, linear);
    CHECK(berge.witness == std::vector<int>{1, 3, 5, 7});
    CHECK(is_cycle_copy(host, berge));
}

TEST_SUITE_END();
