#ifndef TURAN_SUPERSAT_HPP
#define TURAN_SUPERSAT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "turan/collection.hpp"
#include "turan/hypergraph.hpp"

namespace turan {

// Near-regular auxiliary graph on a shadow neighborhood: every vertex has
// degree t or t-1. Realized as a deterministic circulant.
struct CodegreeGraph {
    std::vector<int> vertices;          // edge ids, ascending
    std::vector<std::vector<int>> adj;  // neighbor indices into `vertices`
    int target_degree = 0;

    int degree(std::size_t idx) const { return static_cast<int>(adj[idx].size()); }
};

CodegreeGraph build_codegree_graph(const std::vector<int>& neighborhood, int t);

enum class ExpandMode { Exhaustive, Sampled };

struct GreedyOptions {
    ExpandMode mode = ExpandMode::Exhaustive;
    std::uint64_t sample_count = 0;  // runs drawn in Sampled mode
    std::uint64_t seed = 0;
    std::uint64_t cap = 10'000'000;
    bool relax_threshold = false;  // allow t below 4*ell*(r-1)
};

// Greedy expansion: grows copies of C^r_{2 ell} through the Gamma graphs,
// starting from an ordered edge, ring expansion, then per-edge rotation.
// Requires every (r-1)-shadow of `f` to have codegree >= t.
CycleCollection greedy_expand(const Hypergraph& f, int t, int ell, const GreedyOptions& opts = {});

// Counting twin of exhaustive greedy_expand for hosts too large to
// materialize. Only r = 3 admits the exactly-once path filter; exactness on
// a given host requires every copy's root-canonical path to be walkable
// (complete shadow neighborhoods), which the tests cross-check.
struct GreedyCountStats {
    std::uint64_t copies = 0;
    std::uint64_t paths = 0;
    std::vector<std::uint64_t> edge_load;  // copies through each host edge
    std::uint64_t validated = 0;
    std::uint64_t validation_failures = 0;
};

GreedyCountStats greedy_expand_count(const Hypergraph& f, int t, int ell,
                                     bool relax_threshold = false, int validate_every = 256);

struct BucketKey {
    std::vector<int> parts;  // the r-1 part indices the shadow meets
    int a = 0;               // codegree scale: 2^a <= d < 2^(a+1)

    bool operator<(const BucketKey& o) const {
        return parts != o.parts ? parts < o.parts : a < o.a;
    }
};

struct RemovalEvent {
    Edge sigma;
    BucketKey bucket;
    int degree_at_removal = 0;
    std::vector<int> edge_ids;  // host edge ids removed by this event
};

struct PartitionOutcome {
    Hypergraph core;  // F: every (r-1)-shadow has codegree >= threshold
    std::map<BucketKey, Hypergraph> buckets;
    double threshold = 0.0;
    Partition partition;
    std::vector<RemovalEvent> removals;
};

// Iteratively strips low-codegree shadow neighborhoods, always the
// lexicographically smallest qualifying shadow first.
PartitionOutcome codegree_dichotomy_partition(const Hypergraph& h_partite, const Partition& p,
                                              double threshold);

enum class ThresholdVariant { Linear3, LinearGe4, Berge };

// The dichotomy cutoff A for each supersaturation theorem.
double threshold_A(int r, int ell, double t, double n, ThresholdVariant variant);

struct ExtendOptions {
    std::uint64_t cap = 10'000'000;
};

// Extends each (r-1)-uniform copy of `shadow_copies` (living in G) through all
// choices of host edges of `host` over its shadow edges. distinct=true keeps
// only extensions with pairwise-distinct fresh vertices (linear output);
// distinct=false allows repeats (Berge output).
CycleCollection shadow_extend(const CycleCollection& shadow_copies, const Hypergraph& g,
                              const Hypergraph& host, bool distinct, const ExtendOptions& opts = {});

enum class BoundVariant { Graph2, Linear3, LinearGe4, Berge };

// One balanced-supersaturation bound: Delta_j <= c * |S| * prefactor * base^(j-1).
struct BalanceBound {
    BoundVariant variant = BoundVariant::Linear3;
    int r = 3;
    int ell = 2;
    double n = 0;
    double t = 0;
    double c = 1.0;

    double base() const;
    double prefactor() const;
    double bound_for(std::size_t collection_size, int j) const;
};

double berge_lambda(int r, int ell);  // (r-2)/(2 ell - 2)

struct BalanceReportRow {
    int j = 0;
    std::uint64_t delta = 0;
    double bound_at_c1 = 0.0;
    double ratio = 0.0;
};

struct BalanceReport {
    std::vector<BalanceReportRow> rows;
    double implied_c = 0.0;  // smallest admissible constant
};

BalanceReport verify_balance(const CycleCollection& s, const BalanceBound& bound);

enum class SupersatVariant { Linear, Berge };

struct SupersatBudget {
    double density_k = 1.0;           // precondition constant K
    std::uint64_t copy_cap = 500'000;
    std::uint64_t extend_cap = 500'000;
    int partite_attempts = 64;
    double base_prune_c = 2.0;        // r=2 collector target constant
    std::uint64_t sample_count = 0;   // 0: exhaustive expansion
    std::uint64_t seed = 1;
};

struct SupersatResult {
    CycleCollection collection;  // copies over the input host's edge ids
    BalanceBound bound;          // fitted constant included
    nlohmann::json trace;
};

// The full recursion: partite reduction, codegree dichotomy, greedy expansion
// on the dense core or shadow recursion plus extension, Morris-Saxton-style
// base collector at r = 2.
SupersatResult balanced_supersat(const Hypergraph& h, int ell, SupersatVariant variant,
                                 const SupersatBudget& budget = {});

// Converts a linear copy to its Berge form (core = the shared-vertex ring).
CycleCopy linear_to_berge(const Hypergraph& host, const CycleCopy& linear);

// Collapses a collection to edge-set identity (first witness kept).
CycleCollection collapse_to_edge_sets(const CycleCollection& s);

}  // namespace turan

#endif
