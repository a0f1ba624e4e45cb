#ifndef TURAN_COLLECTION_HPP
#define TURAN_COLLECTION_HPP

#include <cstdint>
#include <vector>

#include "turan/cycles.hpp"

namespace turan {

// A collection S of cycle copies viewed as a hypergraph on the host's edges.
struct CycleCollection {
    int host_edge_count = 0;
    int copy_length = 0;  // edges per copy (uniform within a collection)
    std::vector<CycleCopy> copies;
    bool truncated = false;

    std::size_t size() const { return copies.size(); }
    bool empty() const { return copies.empty(); }
};

// Exact Delta_j for j = 1..j_max, aggregated over j-subsets of each copy's
// edge set (never over all C(e(H), j) subsets). Result[0] is Delta_1.
std::vector<std::uint64_t> delta_profile(const CycleCollection& s, int j_max);

}  // namespace turan

#endif
