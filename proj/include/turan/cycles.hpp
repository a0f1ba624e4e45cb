#ifndef TURAN_CYCLES_HPP
#define TURAN_CYCLES_HPP

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "turan/hypergraph.hpp"

namespace turan {

using BigInt = boost::multiprecision::cpp_int;

enum class CycleKind { Linear, Berge };

enum class FamilyKind { Linear, Berge, BergeUpTo };

// C^r_len (linear), B^r_len (Berge), or B^r_[len] (all Berge lengths 2..len).
struct CycleFamily {
    FamilyKind kind = FamilyKind::Linear;
    int r = 3;
    int length = 4;

    static CycleFamily linear(int r, int length);
    static CycleFamily berge(int r, int length);
    static CycleFamily berge_up_to(int r, int length);
};

// One copy. Linear witness: v_1..v_{len(r-1)} listing each edge's interior
// vertices followed by the vertex it shares with the next edge, so
// e_i = {v_{(i-1)(r-1)}, ..., v_{i(r-1)}} with v_0 = v_{len(r-1)}.
// Berge witness: the core v_1..v_k with v_{i-1}, v_i in e_i, v_0 = v_k.
struct CycleCopy {
    CycleKind kind = CycleKind::Linear;
    std::vector<int> edge_ids;
    std::vector<int> witness;
};

bool is_cycle_copy(const Hypergraph& h, const CycleCopy& c);

// Builds the canonical witness for an edge-id sequence already known to be
// cyclically consistent. Throws if the sequence is not a linear cycle.
CycleCopy make_linear_copy(const Hypergraph& h, const std::vector<int>& edge_cycle);

// Canonical dedup key: sorted edge ids, then (for Berge) the core rotated and
// reflected to its lexicographically smallest form.
std::vector<int> copy_key(const CycleCopy& c);

struct EnumOptions {
    std::uint64_t cap = 10'000'000;
    bool berge_edge_set_identity = false;  // collapse Berge copies to edge sets
};

struct EnumResult {
    std::vector<CycleCopy> copies;
    bool truncated = false;
};

// Backtracking enumeration; each distinct copy reported exactly once.
// Identity: edge-id set (Linear) or edge-id set + core cyclic class (Berge).
EnumResult enumerate_cycles(const Hypergraph& h, const CycleFamily& fam, const EnumOptions& opts = {});

// Same copies as enumerate_cycles, counted without materializing witnesses.
BigInt count_cycles(const Hypergraph& h, const CycleFamily& fam);

// Ground-truth enumeration for tests: scans edge subsets (Linear) or all
// ordered vertex tuples (Berge) with naive containment checks.
EnumResult brute_force_oracle(const Hypergraph& h, const CycleFamily& fam,
                              std::uint64_t work_cap = 200'000'000ull);

bool is_family_free(const Hypergraph& h, const CycleFamily& fam);

}  // namespace turan

#endif
