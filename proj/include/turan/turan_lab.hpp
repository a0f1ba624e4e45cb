#ifndef TURAN_TURAN_LAB_HPP
#define TURAN_TURAN_LAB_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "turan/cycles.hpp"
#include "turan/hypergraph.hpp"

namespace turan {

struct ExactBudget {
    std::uint64_t node_budget = 5'000'000;
    std::uint64_t copy_cap = 2'000'000;
    int max_ground = 256;       // beyond this only greedy bounds are produced
    int greedy_restarts = 16;   // incumbent seeds
    std::uint64_t seed = 1;
};

struct ExactResult {
    int lower = 0;          // incumbent (certified feasible)
    int upper = 0;          // certified bound
    bool exact = false;     // lower == upper by complete search
    std::uint64_t nodes = 0;
};

// Maximum size of a fam-free edge subset, branch and bound over the copy
// hypergraph. Returns a certified interval when the budget is exhausted.
ExactResult exact_random_turan(const Hypergraph& h, const CycleFamily& fam,
                               const ExactBudget& budget = {});

// Size of a maximal fam-free subgraph grown by seeded random insertion.
int greedy_turan_lower(const Hypergraph& h, const CycleFamily& fam, std::uint64_t seed);

// The maximal subgraph itself (edge ids), for covering audits.
std::vector<int> greedy_maximal_free(const Hypergraph& h, const CycleFamily& fam,
                                     std::uint64_t seed);

// Removes a greedy hitting set of copies: one edge per copy, max coverage first.
Hypergraph construction_deletion(const Hypergraph& h, const CycleFamily& fam,
                                 std::uint64_t copy_cap = 2'000'000);

// Independent thinning of the edge set.
Hypergraph construction_subsample(const Hypergraph& h, double p_prime, std::uint64_t seed);

// All edges through v.
Hypergraph construction_star(const Hypergraph& h, int v);

// Exact count of fam-free m-edge subgraphs.
BigInt count_free_subgraphs(const Hypergraph& h, const CycleFamily& fam, int m,
                            std::uint64_t subset_cap = 2'000'000'000ull,
                            std::uint64_t copy_cap = 2'000'000);

struct ExperimentRecord {
    int r = 3;
    int ell = 2;
    int n = 0;
    double p = 0.0;
    double x = 0.0;  // r + log_n p
    std::uint64_t seed = 0;
    std::string estimator;
    int ex_lower = 0;
    int ex_upper = 0;
    double elapsed_seconds = 0.0;
    std::string notes;
};

nlohmann::json record_to_json(const ExperimentRecord& rec, bool with_timings);
ExperimentRecord record_from_json(const nlohmann::json& j);
void write_records_jsonl(const std::vector<ExperimentRecord>& records, std::ostream& out,
                         bool with_timings);
std::vector<ExperimentRecord> read_records_jsonl(std::istream& in);
void write_records_csv(const std::vector<ExperimentRecord>& records, std::ostream& out,
                       bool with_timings);

struct SweepConfig {
    int r = 3;
    int ell = 2;
    FamilyKind family = FamilyKind::Linear;
    std::vector<int> n_list;
    std::vector<double> x_list;
    int reps = 1;
    std::uint64_t seed = 1;
    ExactBudget budget;
    int threads = 1;
    std::string output_dir;
};

SweepConfig sweep_config_from_json(const nlohmann::json& j);

struct SweepOutcome {
    std::vector<ExperimentRecord> records;
    bool budget_exhausted = false;  // some cell returned an interval only
    int failed_cells = 0;
};

// Runs the grid: per cell, a random host and lower/upper estimates from the
// three constructions, greedy restarts, and exact search when feasible.
SweepOutcome run_sweep(const SweepConfig& cfg);

// Piecewise limiting exponent of log_n ex versus x for this family.
double predicted_exponent_lower(int r, int ell, double x);
double predicted_exponent_upper(int r, int ell, double x);  // r = 3 has a gap window

// Threshold markers from the r = 3 theorem, as densities (constant factor 1).
double marker_p0(int ell, double n);
double marker_p1(int ell, double n);

}  // namespace turan

#endif
