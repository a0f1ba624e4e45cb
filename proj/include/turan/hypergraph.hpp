#ifndef TURAN_HYPERGRAPH_HPP
#define TURAN_HYPERGRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "turan/errors.hpp"
#include "turan/rational.hpp"

namespace turan {

// An edge is a strictly ascending tuple of vertex ids.
using Edge = std::vector<int>;

Edge canonical_edge(Edge e, int r, int n);

// r-uniform hypergraph on vertex set {0..n-1}. Immutable after construction;
// edge ids are assigned in construction order and stable.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(int n, int r, std::vector<Edge> edges);

    int n() const { return n_; }
    int r() const { return r_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const Edge& edge(int id) const;
    const std::vector<Edge>& edges() const { return edges_; }

    // -1 when absent; accepts unsorted input tuples.
    int edge_id(Edge e) const;
    bool has_edge(Edge e) const { return edge_id(std::move(e)) >= 0; }

    // Edge ids of all edges containing vertex v, ascending.
    const std::vector<int>& incident_edges(int v) const;

    // Subgraph keeping the given edges; vertex set unchanged, edge ids renumbered.
    Hypergraph subgraph(const std::vector<int>& edge_ids) const;

    int vertex_count_used() const;  // vertices covered by at least one edge

private:
    int n_ = 0;
    int r_ = 2;
    std::vector<Edge> edges_;
    std::map<Edge, int> index_;
    std::vector<std::vector<int>> incidence_;
};

// Map from k-subsets to the ids of edges containing them.
struct ShadowMap {
    int k = 1;
    std::map<Edge, std::vector<int>> entries;

    int degree(const Edge& sigma) const {
        auto it = entries.find(sigma);
        return it == entries.end() ? 0 : static_cast<int>(it->second.size());
    }
    int max_degree() const;
    std::size_t total_incidences() const;
};

struct Partition {
    std::vector<std::vector<int>> parts;  // r disjoint vertex sets covering [0, n)
    std::vector<int> assignment;          // vertex -> part index

    int part_of(int v) const { return assignment[static_cast<std::size_t>(v)]; }
};

struct PartiteReduction {
    Hypergraph host;
    Partition partition;
    int attempts = 0;
};

std::uint64_t binomial(int n, int k);  // throws TooLarge on uint64 overflow

Hypergraph new_hypergraph(int n, int r, std::vector<Edge> edges);
Hypergraph complete_hypergraph(int n, int r);

// Each potential edge kept independently with probability p.
Hypergraph gen_gnrp(int n, int r, double p, std::uint64_t seed);

// Exactly m distinct edges, uniform without replacement.
Hypergraph gen_with_edge_count(int n, int r, std::uint64_t m, std::uint64_t seed);

// Random r-partite host: vertices split by `partition`, m transversal edges.
Hypergraph gen_partite_with_edge_count(const Partition& partition, int n, int r,
                                       std::uint64_t m, std::uint64_t seed);

ShadowMap shadows(const Hypergraph& h, int k);
int max_codegree(const Hypergraph& h, int j);

Partition random_r_partition(const Hypergraph& h, std::uint64_t seed);
Partition random_partition(int n, int r, std::uint64_t seed);

// Keeps exactly the edges meeting every part once.
Hypergraph induced_partite_subgraph(const Hypergraph& h, const Partition& p);

// Resamples partitions until the induced subgraph retains at least
// (r!/r^r) * e(H) edges. Throws PartitionRetryExhausted after max_attempts.
PartiteReduction fix_partite_reduction(const Hypergraph& h, std::uint64_t seed,
                                       int max_attempts = 64);

// Exact max over subgraphs G with e(G) >= 2 and v(G) > r of (e(G)-1)/(v(G)-r),
// by edge-subset enumeration. subset_cap bounds 2^e(H).
Rational m_r_density(const Hypergraph& h, std::uint64_t subset_cap = (1ull << 20));

// ".hg" text format: "r n m" header then m edge lines.
void write_hg(const Hypergraph& h, std::ostream& out);
Hypergraph read_hg(std::istream& in);
void write_hg_file(const Hypergraph& h, const std::string& path);
Hypergraph read_hg_file(const std::string& path);

}  // namespace turan

#endif
