#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "turan/plot.hpp"
#include "turan/rng.hpp"
#include "turan/turan_lab.hpp"

using namespace turan;

namespace {

Hypergraph canonical_c34_host() {
    return new_hypergraph(8, 3, {{7, 0, 1}, {1, 2, 3}, {3, 4, 5}, {5, 6, 7}});
}

Hypergraph star_host(int n) {
    std::vector<Edge> edges;
    for (int a = 1; a < n; ++a)
        for (int b = a + 1; b < n; ++b) edges.push_back({0, a, b});
    return Hypergraph(n, 3, edges);
}

// reference solver: scan all 2^m subsets
int brute_force_ex(const Hypergraph& h, const CycleFamily& fam) {
    const int m = h.edge_count();
    REQUIRE(m <= 20);
    EnumResult copies = enumerate_cycles(h, fam);
    int best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        bool free_set = true;
        for (const CycleCopy& c : copies.copies) {
            bool inside = true;
            for (int id : c.edge_ids)
                if (!(mask >> id & 1)) inside = false;
            if (inside) {
                free_set = false;
                break;
            }
        }
        if (free_set) best = std::max(best, __builtin_popcountll(mask));
    }
    return best;
}

}  // namespace

TEST_SUITE_BEGIN("turan_lab");

TEST_CASE("exact solver on known instances") {
    // a star is its own maximum free subgraph
    Hypergraph star = star_host(7);
    ExactResult se = exact_random_turan(star, CycleFamily::linear(3, 4));
    CHECK(se.exact);
    CHECK(se.lower == star.edge_count());

    // the linear 4-cycle host loses exactly one edge
    ExactResult ce = exact_random_turan(canonical_c34_host(), CycleFamily::linear(3, 4));
    CHECK(ce.exact);
    CHECK(ce.lower == 3);

    // ex(K_5, C_4) = 6, verified against the 2^10 scan
    Hypergraph k5 = complete_hypergraph(5, 2);
    ExactResult ke = exact_random_turan(k5, CycleFamily::linear(2, 4));
    CHECK(ke.exact);
    CHECK(ke.lower == 6);
    CHECK(brute_force_ex(k5, CycleFamily::linear(2, 4)) == 6);
}

TEST_CASE("exact solver matches the subset scan on random hosts") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        Hypergraph h = gen_with_edge_count(7, 3, 14, seed);
        ExactResult ex = exact_random_turan(h, CycleFamily::linear(3, 4));
        REQUIRE(ex.exact);
        CHECK(ex.lower == brute_force_ex(h, CycleFamily::linear(3, 4)));
    }
    // the optimum is independent of vertex labels (hence branching order)
    Hypergraph h = gen_with_edge_count(7, 3, 15, 77);
    Rng rng(5);
    std::vector<int> perm(7);
    for (int i = 0; i < 7; ++i) perm[static_cast<std::size_t>(i)] = i;
    int base = exact_random_turan(h, CycleFamily::linear(3, 4)).lower;
    for (int trial = 0; trial < 4; ++trial) {
        rng.shuffle(perm);
        std::vector<Edge> relabeled;
        for (const Edge& e : h.edges()) {
            Edge img;
            for (int v : e) img.push_back(perm[static_cast<std::size_t>(v)]);
            relabeled.push_back(img);
        }
        CHECK(exact_random_turan(Hypergraph(7, 3, relabeled), CycleFamily::linear(3, 4)).lower ==
              base);
    }
}

TEST_CASE("budget exhaustion yields a certified interval") {
    Hypergraph k7 = complete_hypergraph(7, 2);
    CycleFamily c4 = CycleFamily::linear(2, 4);
    ExactBudget tiny;
    tiny.node_budget = 40;
    tiny.greedy_restarts = 2;
    ExactResult res = exact_random_turan(k7, c4, tiny);
    CHECK_FALSE(res.exact);
    CHECK(res.lower <= res.upper);

    ExactResult full = exact_random_turan(k7, c4);
    REQUIRE(full.exact);
    CHECK(res.lower <= full.lower);
    CHECK(res.upper >= full.upper);
    // cross-check the optimum through the independent subset counter
    CHECK(count_free_subgraphs(k7, c4, full.lower) >= 1);
    CHECK(count_free_subgraphs(k7, c4, full.lower + 1) == 0);
}

TEST_CASE("greedy lower bound properties") {
    Hypergraph star = star_host(7);
    CHECK(greedy_turan_lower(star, CycleFamily::linear(3, 4), 3) == star.edge_count());

    // the cycle host always reaches 2l-1 edges
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        CHECK(greedy_turan_lower(canonical_c34_host(), CycleFamily::linear(3, 4), seed) == 3);

    // over many seeds the greedy matches ex(K_5, C_4) = 6 at least once
    Hypergraph k5 = complete_hypergraph(5, 2);
    int best = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
        best = std::max(best, greedy_turan_lower(k5, CycleFamily::linear(2, 4), seed));
    CHECK(best == 6);

    // maximality: no rejected edge can be added back
    Hypergraph h = gen_with_edge_count(8, 3, 20, 5);
    CycleFamily fam = CycleFamily::linear(3, 4);
    std::vector<int> kept = greedy_maximal_free(h, fam, 9);
    Hypergraph sub = h.subgraph(kept);
    CHECK(is_family_free(sub, fam));
    std::set<int> kept_set(kept.begin(), kept.end());
    for (int id = 0; id < h.edge_count(); ++id) {
        if (kept_set.count(id)) continue;
        std::vector<int> bigger = kept;
        bigger.push_back(id);
        CHECK_FALSE(is_family_free(h.subgraph(bigger), fam));
    }
}

TEST_CASE("sandwich: greedy <= exact <= e(H) and monotone under edge addition") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Hypergraph h = gen_with_edge_count(7, 3, 16, seed);
        CycleFamily fam = CycleFamily::linear(3, 4);
        int greedy = greedy_turan_lower(h, fam, seed);
        ExactResult ex = exact_random_turan(h, fam);
        REQUIRE(ex.exact);
        CHECK(greedy <= ex.lower);
        CHECK(ex.lower <= h.edge_count());

        Hypergraph full = complete_hypergraph(7, 3);
        for (const Edge& e : full.edges()) {
            if (h.has_edge(e)) continue;
            std::vector<Edge> edges = h.edges();
            edges.push_back(e);
            ExactResult bigger = exact_random_turan(Hypergraph(7, 3, edges), fam);
            REQUIRE(bigger.exact);
            CHECK(bigger.lower >= ex.lower);
            break;
        }
    }
}

TEST_CASE("deletion construction") {
    Hypergraph star = star_host(7);
    Hypergraph same = construction_deletion(star, CycleFamily::linear(3, 4));
    CHECK(same.edge_count() == star.edge_count());

    Hypergraph host = canonical_c34_host();
    Hypergraph pruned = construction_deletion(host, CycleFamily::linear(3, 4));
    CHECK(pruned.edge_count() == 3);
    CHECK(is_family_free(pruned, CycleFamily::linear(3, 4)));

    // random sparse host: free output, at least e(H) - copy count edges
    Hypergraph g = gen_gnrp(12, 3, std::pow(12.0, -3 + 1.3), 17);
    BigInt copies = count_cycles(g, CycleFamily::linear(3, 4));
    Hypergraph out = construction_deletion(g, CycleFamily::linear(3, 4));
    CHECK(is_family_free(out, CycleFamily::linear(3, 4)));
    CHECK(BigInt(g.edge_count() - out.edge_count()) <= copies);

    CHECK_THROWS_WITH_AS(construction_deletion(complete_hypergraph(8, 3),
                                               CycleFamily::linear(3, 4), 100),
                         doctest::Contains("TooManyCopies"), Error);
}

TEST_CASE("subsample construction") {
    Hypergraph h = complete_hypergraph(10, 3);
    CHECK(construction_subsample(h, 1.0, 3).edge_count() == h.edge_count());
    CHECK(construction_subsample(h, 0.0, 3).edge_count() == 0);

    // thinning statistics: mean within 4 sd over 200 seeds (mean 36, sd 5.02)
    double sum = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed)
        sum += construction_subsample(h, 0.3, seed).edge_count();
    double mean = sum / 200.0;
    double sd = std::sqrt(120.0 * 0.3 * 0.7);
    CHECK(std::abs(mean - 36.0) <= 4.0 * sd / std::sqrt(200.0));
}

TEST_CASE("star construction") {
    Hypergraph h = complete_hypergraph(6, 3);
    Hypergraph star0 = construction_star(h, 0);
    CHECK(star0.edge_count() == 10);  // C(5,2)
    CHECK(is_family_free(star0, CycleFamily::linear(3, 4)));

    Hypergraph empty(5, 3, {});
    CHECK(construction_star(empty, 2).edge_count() == 0);

    // star freeness on random hosts
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Hypergraph g = gen_with_edge_count(9, 3, 40, seed);
        int best_v = 0;
        for (int v = 1; v < 9; ++v)
            if (g.incident_edges(v).size() > g.incident_edges(best_v).size()) best_v = v;
        CHECK(is_family_free(construction_star(g, best_v), CycleFamily::linear(3, 4)));
    }
}

TEST_CASE("free-subgraph counting") {
    Hypergraph host = canonical_c34_host();
    CycleFamily fam = CycleFamily::linear(3, 4);
    CHECK(count_free_subgraphs(host, fam, 0) == 1);
    CHECK(count_free_subgraphs(host, fam, 3) == 4);
    CHECK(count_free_subgraphs(host, fam, 4) == 0);

    Hypergraph k4 = complete_hypergraph(4, 2);
    CycleFamily c4 = CycleFamily::linear(2, 4);
    CHECK(count_free_subgraphs(k4, c4, 4) == 12);  // C(6,4) - 3

    // total over m equals the number of free subsets: 54 by inclusion-exclusion
    BigInt total = 0;
    for (int m = 0; m <= 6; ++m) total += count_free_subgraphs(k4, c4, m);
    CHECK(total == 54);

    // the count at the optimum is positive and vanishes just above it
    ExactResult ex = exact_random_turan(k4, c4);
    REQUIRE(ex.exact);
    CHECK(count_free_subgraphs(k4, c4, ex.lower) >= 1);
    CHECK(count_free_subgraphs(k4, c4, ex.lower + 1) == 0);
}

TEST_CASE("markov harness: indicator frequency never exceeds the mean count") {
    // direct analogue of P[X_m >= 1] <= E[X_m], computed per sample
    CycleFamily fam = CycleFamily::linear(3, 4);
    int m = 6;
    double freq = 0, mean = 0;
    const int samples = 40;
    for (std::uint64_t seed = 1; seed <= samples; ++seed) {
        Hypergraph g = gen_with_edge_count(8, 3, 12, seed);
        BigInt x = count_free_subgraphs(g, fam, m);
        if (x >= 1) freq += 1;
        mean += x.convert_to<double>();
    }
    CHECK(freq / samples <= mean / samples);
}

TEST_CASE("records round-trip through jsonl and csv") {
    ExperimentRecord rec;
    rec.r = 3;
    rec.ell = 2;
    rec.n = 12;
    rec.p = 0.125;
    rec.x = 2.1;
    rec.seed = 42;
    rec.estimator = "exact";
    rec.ex_lower = 17;
    rec.ex_upper = 17;
    rec.elapsed_seconds = 1.5;
    rec.notes = "note,with comma";

    std::stringstream buf;
    write_records_jsonl({rec}, buf, false);
    std::vector<ExperimentRecord> back = read_records_jsonl(buf);
    REQUIRE(back.size() == 1);
    CHECK(back[0].n == 12);
    CHECK(back[0].ex_lower == 17);
    CHECK(back[0].elapsed_seconds == 0.0);  // timings are zeroed by default

    std::stringstream csv;
    write_records_csv({rec}, csv, false);
    CHECK(csv.str().find("\"note,with comma\"") != std::string::npos);
    CHECK(csv.str().rfind("r,ell,n,", 0) == 0);
}

TEST_CASE("one-cell sweep with the exact estimator") {
    SweepConfig cfg;
    cfg.r = 3;
    cfg.ell = 2;
    cfg.n_list = {7};
    cfg.x_list = {2.0};
    cfg.reps = 1;
    cfg.seed = 5;
    SweepOutcome out = run_sweep(cfg);
    REQUIRE(out.records.size() == 1);
    CHECK(out.records[0].estimator == "exact");
    CHECK(out.records[0].ex_lower == out.records[0].ex_upper);
    CHECK(out.failed_cells == 0);

    // identical configuration reproduces identical records
    SweepOutcome again = run_sweep(cfg);
    CHECK(again.records[0].ex_lower == out.records[0].ex_lower);
    CHECK(again.records[0].seed == out.records[0].seed);
}

TEST_CASE("sweep with threads matches the sequential order") {
    SweepConfig cfg;
    cfg.r = 3;
    cfg.ell = 2;
    cfg.n_list = {6, 7};
    cfg.x_list = {1.8, 2.4};
    cfg.reps = 2;
    cfg.seed = 9;
    SweepOutcome seq = run_sweep(cfg);
    cfg.threads = 4;
    SweepOutcome par = run_sweep(cfg);
    REQUIRE(seq.records.size() == par.records.size());
    for (std::size_t i = 0; i < seq.records.size(); ++i) {
        CHECK(seq.records[i].ex_lower == par.records[i].ex_lower);
        CHECK(seq.records[i].ex_upper == par.records[i].ex_upper);
        CHECK(seq.records[i].seed == par.records[i].seed);
    }
}

TEST_CASE("prediction curves and markers") {
    // r >= 4 envelope: x, plateau, x - 1 with the stated breakpoints
    CHECK(predicted_exponent_lower(4, 2, 0.5) == doctest::Approx(0.5));
    CHECK(predicted_exponent_lower(4, 2, 2.0) == doctest::Approx(4.0 / 3.0));
    CHECK(predicted_exponent_lower(4, 2, 3.0) == doctest::Approx(2.0));
    double b1 = 1.0 + 1.0 / 3.0, b2 = 2.0 + 1.0 / 3.0;
    CHECK(predicted_exponent_lower(4, 2, b1) == doctest::Approx(b1));
    CHECK(predicted_exponent_lower(4, 2, b2) == doctest::Approx(b2 - 1.0));

    // r = 3: the undetermined window keeps the upper envelope above the lower
    double lo = 2.0 + 1.0 / 6.0, hi = 2.0 + 3.0 / 8.0;
    CHECK(predicted_exponent_upper(3, 2, lo) == doctest::Approx(predicted_exponent_lower(3, 2, lo)));
    CHECK(predicted_exponent_upper(3, 2, hi) == doctest::Approx(predicted_exponent_lower(3, 2, hi)));
    double mid = (lo + hi) / 2;
    CHECK(predicted_exponent_upper(3, 2, mid) > predicted_exponent_lower(3, 2, mid));

    CHECK(marker_p0(2, 100.0) ==
          doctest::Approx(std::pow(100.0, -5.0 / 6.0) * std::pow(std::log(100.0), 7.0)));
    CHECK(marker_p1(2, 100.0) ==
          doctest::Approx(std::pow(100.0, -5.0 / 8.0) * std::pow(std::log(100.0), 3.25)));
}

TEST_CASE("plots are deterministic and carry one mark per record") {
    std::vector<ExperimentRecord> records;
    for (int i = 0; i < 3; ++i) {
        ExperimentRecord rec;
        rec.r = 3;
        rec.ell = 2;
        rec.n = 10 + i;
        rec.x = 1.5 + 0.4 * i;
        rec.ex_lower = 10 + 2 * i;
        rec.ex_upper = rec.ex_lower;
        records.push_back(rec);
    }
    std::stringstream a, b;
    emit_plot(records, 3, 2, a);
    emit_plot(records, 3, 2, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("<svg", 0) == 0);
    std::size_t marks = 0, pos = 0;
    while ((pos = a.str().find("<circle", pos)) != std::string::npos) {
        ++marks;
        pos += 7;
    }
    CHECK(marks == 3);
    CHECK_THROWS_WITH_AS(emit_plot({}, 3, 2, a), doctest::Contains("EmptyInput"), Error);
}

TEST_CASE("sweep config parses the declarative document") {
    nlohmann::json j = {
        {"r", 3},       {"ell", 2},       {"family", "linear"},
        {"n_list", {10, 12}}, {"x_list", {1.5, 2.0}}, {"reps", 3},
        {"seeds", 77},  {"output_dir", "out"},
        {"budgets", {{"bnb_nodes", 1000}, {"exact_max_edges", 24}, {"greedy_restarts", 8}}}};
    SweepConfig cfg = sweep_config_from_json(j);
    CHECK(cfg.r == 3);
    CHECK(cfg.n_list == std::vector<int>{10, 12});
    CHECK(cfg.reps == 3);
    CHECK(cfg.seed == 77);
    CHECK(cfg.budget.node_budget == 1000);
    CHECK(cfg.budget.max_ground == 24);
    CHECK(cfg.budget.greedy_restarts == 8);

    nlohmann::json bad = j;
    bad["family"] = "hamiltonian";
    CHECK_THROWS_AS(sweep_config_from_json(bad), Error);
}

TEST_SUITE_END();
