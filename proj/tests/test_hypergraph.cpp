#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "turan/hypergraph.hpp"
#include "turan/rng.hpp"

using namespace turan;

namespace {

// the linear 4-cycle host on 8 vertices: e_i = {v_{2(i-1)}, ..., v_{2i}}, v_0 = v_8
Hypergraph canonical_c34_host() {
    return new_hypergraph(8, 3, {{7, 0, 1}, {1, 2, 3}, {3, 4, 5}, {5, 6, 7}});
}

}  // namespace

TEST_SUITE_BEGIN("hypergraph");

TEST_CASE("construction canonicalizes and validates") {
    Hypergraph c4 = new_hypergraph(4, 2, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(c4.edge_count() == 4);
    CHECK(c4.edge(3) == Edge{0, 3});  // sorted tuple, insertion-stable id

    Hypergraph host = canonical_c34_host();
    CHECK(host.n() == 8);
    CHECK(host.edge_count() == 4);
    CHECK(host.edge(0) == Edge{0, 1, 7});

    CHECK_THROWS_AS(new_hypergraph(3, 3, {{0, 1, 1}}), Error);
    CHECK_THROWS_WITH_AS(new_hypergraph(3, 3, {{0, 1}}), doctest::Contains("BadArity"), Error);
    CHECK_THROWS_WITH_AS(new_hypergraph(3, 2, {{0, 5}}), doctest::Contains("VertexOutOfRange"), Error);
    CHECK_THROWS_WITH_AS(new_hypergraph(4, 2, {{0, 1}, {1, 0}}), doctest::Contains("DuplicateEdge"),
                         Error);
}

TEST_CASE("gen_gnrp endpoints and determinism") {
    CHECK(gen_gnrp(6, 3, 0.0, 7).edge_count() == 0);
    Hypergraph full = gen_gnrp(6, 3, 1.0, 7);
    CHECK(full.edge_count() == 20);
    // p = 1 yields exactly the complete edge set
    Hypergraph complete = complete_hypergraph(6, 3);
    CHECK(full.edges() == complete.edges());

    Hypergraph a = gen_gnrp(12, 3, 0.37, 99);
    Hypergraph b = gen_gnrp(12, 3, 0.37, 99);
    CHECK(a.edges() == b.edges());
    CHECK_THROWS_AS(gen_gnrp(6, 3, 1.5, 1), Error);
}

TEST_CASE("gen_gnrp edge counts follow binomial statistics") {
    // mean 0.5*C(20,3) = 570, sd = sqrt(1140*0.25) ~ 16.88
    const double mean = 570.0, sd = std::sqrt(1140.0 * 0.25);
    double sum = 0;
    for (int seed = 1; seed <= 100; ++seed) {
        int m = gen_gnrp(20, 3, 0.5, static_cast<std::uint64_t>(seed)).edge_count();
        CHECK(std::abs(m - mean) <= 4 * sd);
        sum += m;
    }
    CHECK(std::abs(sum / 100.0 - mean) <= 4 * sd / 10.0);
}

TEST_CASE("gen_with_edge_count exact cardinality") {
    CHECK(gen_with_edge_count(5, 2, 10, 3).edge_count() == 10);  // K_5
    CHECK(gen_with_edge_count(5, 2, 10, 3).edges() == complete_hypergraph(5, 2).edges());
    CHECK(gen_with_edge_count(5, 2, 0, 3).edge_count() == 0);
    for (std::uint64_t seed : {11ull, 12ull}) CHECK(gen_with_edge_count(10, 3, 40, seed).edge_count() == 40);
    CHECK_THROWS_WITH_AS(gen_with_edge_count(4, 2, 7, 1), doctest::Contains("TooManyEdges"), Error);
    // distinctness is structural: rebuild from the edge list must not throw
    Hypergraph h = gen_with_edge_count(10, 3, 40, 5);
    CHECK_NOTHROW(new_hypergraph(10, 3, h.edges()));
}

TEST_CASE("shadows: complete hosts and the incidence sum rule") {
    // every pair of K^3_4 lies in exactly 2 of the 4 edges
    ShadowMap pairs = shadows(complete_hypergraph(4, 3), 2);
    CHECK(pairs.entries.size() == 6);
    for (const auto& [sigma, ids] : pairs.entries) CHECK(ids.size() == 2);

    Hypergraph single = new_hypergraph(5, 3, {{0, 2, 4}});
    ShadowMap sm = shadows(single, 2);
    CHECK(sm.entries.size() == 3);
    for (const auto& [sigma, ids] : sm.entries) CHECK(ids.size() == 1);

    ShadowMap top = shadows(complete_hypergraph(7, 3), 2);
    for (const auto& [sigma, ids] : top.entries) CHECK(static_cast<int>(ids.size()) == 7 - 3 + 1);

    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Hypergraph h = gen_with_edge_count(9, 4, 30, seed);
        for (int k = 1; k < 4; ++k)
            CHECK(shadows(h, k).total_incidences() == 30u * binomial(4, k));
    }
    CHECK_THROWS_WITH_AS(shadows(single, 3), doctest::Contains("BadShadowSize"), Error);
}

TEST_CASE("max_codegree matches an exhaustive pair scan") {
    CHECK(max_codegree(complete_hypergraph(7, 3), 2) == 5);
    CHECK(max_codegree(Hypergraph(5, 3, {}), 2) == 0);

    Hypergraph h = gen_with_edge_count(8, 3, 20, 42);
    int brute = 0;
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b) {
            int deg = 0;
            for (const Edge& e : h.edges())
                if (std::binary_search(e.begin(), e.end(), a) &&
                    std::binary_search(e.begin(), e.end(), b))
                    ++deg;
            brute = std::max(brute, deg);
        }
    CHECK(max_codegree(h, 2) == brute);
}

TEST_CASE("random partitions: determinism, coverage, multinomial balance") {
    Hypergraph tiny(2, 2, {{0, 1}});
    std::set<std::vector<int>> seen;
    for (std::uint64_t seed = 0; seed < 32; ++seed)
        seen.insert(random_r_partition(tiny, seed).assignment);
    CHECK(seen.size() > 1);

    Partition p1 = random_partition(50, 3, 7);
    Partition p2 = random_partition(50, 3, 7);
    CHECK(p1.assignment == p2.assignment);

    // n = 1000, r = 3: each part within 4 sd of n/3
    const double mean = 1000.0 / 3.0, sd = std::sqrt(1000.0 * (1.0 / 3.0) * (2.0 / 3.0));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Partition p = random_partition(1000, 3, seed);
        for (const auto& part : p.parts)
            CHECK(std::abs(static_cast<double>(part.size()) - mean) <= 4 * sd);
    }
}

TEST_CASE("induced partite subgraph keeps exactly the transversal edges") {
    Hypergraph one(3, 3, {{0, 1, 2}});
    Partition split{{{0}, {1}, {2}}, {0, 1, 2}};
    CHECK(induced_partite_subgraph(one, split).edge_count() == 1);
    Partition lumped{{{0, 1}, {2}, {}}, {0, 0, 1}};
    CHECK(induced_partite_subgraph(one, lumped).edge_count() == 0);

    // balanced 3/3/3 partition of K^3_9 keeps the 27 transversals
    Partition balanced{{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}}, {0, 0, 0, 1, 1, 1, 2, 2, 2}};
    Hypergraph sub = induced_partite_subgraph(complete_hypergraph(9, 3), balanced);
    CHECK(sub.edge_count() == 27);
    for (const Edge& e : sub.edges()) {
        std::set<int> parts;
        for (int v : e) parts.insert(balanced.part_of(v));
        CHECK(parts.size() == 3);
    }
}

TEST_CASE("partite reduction retries until the expected fraction is hit") {
    Hypergraph h = complete_hypergraph(9, 3);
    PartiteReduction red = fix_partite_reduction(h, 5);
    CHECK(red.host.edge_count() * 27 >= 6 * h.edge_count());
    CHECK(red.attempts >= 1);
    // identical seed, identical outcome
    PartiteReduction red2 = fix_partite_reduction(h, 5);
    CHECK(red.host.edges() == red2.host.edges());
}

TEST_CASE("m_r density by exhaustive subgraph enumeration") {
    Hypergraph c4 = new_hypergraph(4, 2, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(m_r_density(c4) == Rational(3, 2));

    Hypergraph host = canonical_c34_host();
    Rational mr = m_r_density(host);
    CHECK(mr == Rational(3, 5));  // (2l-1)/(2l(r-1)-r) at r=3, l=2
    CHECK(-1.0 / mr.value() == doctest::Approx(-5.0 / 3.0));

    Hypergraph disjoint(6, 3, {{0, 1, 2}, {3, 4, 5}});
    CHECK(m_r_density(disjoint) == Rational(1, 3));

    CHECK_THROWS_WITH_AS(m_r_density(Hypergraph(4, 2, {{0, 1}})), doctest::Contains("Undefined"),
                         Error);
    CHECK_THROWS_WITH_AS(m_r_density(complete_hypergraph(8, 2), 128), doctest::Contains("TooLarge"),
                         Error);
}

TEST_CASE("hg text format round trip and parse errors") {
    Hypergraph h = gen_with_edge_count(9, 3, 17, 21);
    std::stringstream buf;
    write_hg(h, buf);
    Hypergraph back = read_hg(buf);
    CHECK(back.n() == h.n());
    CHECK(back.r() == h.r());
    std::set<Edge> a(h.edges().begin(), h.edges().end());
    std::set<Edge> b(back.edges().begin(), back.edges().end());
    CHECK(a == b);

    auto expect_error = [](const std::string& text, const std::string& what) {
        std::stringstream in(text);
        try {
            read_hg(in);
            FAIL_CHECK("expected a parse error for: " << text);
        } catch (const Error& err) {
            CHECK(err.code() == ErrorCode::ParseError);
            CHECK(std::string(err.what()).find(what) != std::string::npos);
        }
    };
    expect_error("", "line 1");
    expect_error("3 9 2\n0 1 2\n", "line 3");              // missing edge line
    expect_error("3 9 1\n0 1 9\n", "line 2");              // vertex out of range
    expect_error("3 9 2\n0 1 2\n2 1 0\n", "line 3");       // duplicate after sorting
    expect_error("2 4 1\n0 1 2\n", "line 2");              // arity mismatch
}

TEST_CASE("rng streams are stable across calls") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng c(5);
    for (int i = 0; i < 1000; ++i) {
        double v = c.next_double();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}

TEST_SUITE_END();
