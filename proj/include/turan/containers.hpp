#ifndef TURAN_CONTAINERS_HPP
#define TURAN_CONTAINERS_HPP

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "turan/collection.hpp"
#include "turan/hypergraph.hpp"
#include "turan/supersat.hpp"

namespace turan {

// Bitset over ground elements (host edge ids), any ground size.
struct GroundSet {
    std::vector<std::uint64_t> words;
    int ground = 0;

    explicit GroundSet(int ground_size = 0)
        : words(static_cast<std::size_t>((ground_size + 63) / 64), 0), ground(ground_size) {}

    void set(int i) { words[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { words[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return words[static_cast<std::size_t>(i >> 6)] >> (i & 63) & 1; }
    int count() const;
    bool contains(const GroundSet& other) const;  // other subset of this
    bool intersects(const GroundSet& other) const;
    bool operator==(const GroundSet& o) const { return words == o.words; }
    bool operator<(const GroundSet& o) const { return words < o.words; }
    std::vector<int> elements() const;
};

enum class CoverVerification { Verified, Skipped, Failed };

struct ContainerFamily {
    int ground = 0;
    std::vector<GroundSet> containers;
    double b_param = 0.0;
    double l_param = 0.0;
    double epsilon = 0.0;
    int depth = 0;

    double achieved_epsilon = 0.0;  // min over containers of omitted/L
    CoverVerification verification = CoverVerification::Skipped;
    bool budget_exceeded = false;
};

struct ContainerOptions {
    double epsilon = 0.1;
    int verify_ground_limit = 24;     // exhaustive covering check up to this many elements
    std::uint64_t node_budget = 20'000'000;
};

// One application of the container step to a copy collection S on the host's
// edges: checks the degree hypothesis, then branches on the max-degree ground
// element (include/exclude) until no copy constraint remains.
ContainerFamily container_step(const CycleCollection& s, double b_param, double l_param,
                               const ContainerOptions& opts = {});

// True when every independent set of `copies` (subset containing no copy) is
// inside some container. Exhaustive over 2^ground subsets.
bool verify_covering_exhaustive(int ground, const std::vector<GroundSet>& copy_masks,
                                const std::vector<GroundSet>& containers);

struct IterationSchedule {
    double t0 = 0.0;
    double ratio = 1.0;
    double target = 0.0;
    std::vector<double> ts;  // t_0 .. t_m
    int m = 0;
    double unit_exponent = 0.0;  // edge threshold = t_i * n^unit_exponent
};

// Geometric density schedule t_i = exp(-eps/(log n)^(r-2)) t_{i-1} down to the
// target. berge_unit switches the edge-count unit to n^{1+1/ell}.
IterationSchedule make_schedule(int n, int r, int ell, double t_target, double epsilon,
                                bool berge_unit = false);

enum class IterateVariant { Linear, Berge };

struct IterateOptions {
    double epsilon = 0.1;
    SupersatBudget supersat;
    ContainerOptions step;
    std::uint64_t max_steps = 4096;
};

struct IterateResult {
    ContainerFamily family;  // containers over K^r_n edge ids
    Hypergraph root;         // the complete host
    IterationSchedule schedule;
    nlohmann::json trace;
    bool budget_exceeded = false;
};

// Iterated container construction starting from the complete r-graph.
IterateResult iterate_containers(int n, int r, int ell, double t_target, IterateVariant variant,
                                 const IterateOptions& opts = {});

}  // namespace turan

#endif
