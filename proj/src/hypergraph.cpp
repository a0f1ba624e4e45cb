#include "turan/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "turan/rng.hpp"

namespace turan {

Edge canonical_edge(Edge e, int r, int n) {
    if (static_cast<int>(e.size()) != r)
        throw Error(ErrorCode::BadArity,
                    "edge has " + std::to_string(e.size()) + " vertices, expected " + std::to_string(r));
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0 || e[i] >= n)
            throw Error(ErrorCode::VertexOutOfRange,
                        "vertex " + std::to_string(e[i]) + " not in [0, " + std::to_string(n) + ")");
        if (i > 0 && e[i] == e[i - 1])
            throw Error(ErrorCode::BadArity, "repeated vertex " + std::to_string(e[i]) + " in edge");
    }
    return e;
}

Hypergraph::Hypergraph(int n, int r, std::vector<Edge> edges) : n_(n), r_(r) {
    if (r < 2) throw Error(ErrorCode::BadParameter, "uniformity r must be >= 2");
    if (n < r) throw Error(ErrorCode::BadParameter, "need n >= r");
    edges_.reserve(edges.size());
    incidence_.assign(static_cast<std::size_t>(n), {});
    for (auto& raw : edges) {
        Edge e = canonical_edge(std::move(raw), r, n);
        auto [it, inserted] = index_.emplace(e, static_cast<int>(edges_.size()));
        if (!inserted) throw Error(ErrorCode::DuplicateEdge, "duplicate edge");
        for (int v : e) incidence_[static_cast<std::size_t>(v)].push_back(it->second);
        edges_.push_back(std::move(e));
    }
}

const Edge& Hypergraph::edge(int id) const {
    if (id < 0 || id >= edge_count())
        throw Error(ErrorCode::UnknownEdgeId, "edge id " + std::to_string(id));
    return edges_[static_cast<std::size_t>(id)];
}

int Hypergraph::edge_id(Edge e) const {
    std::sort(e.begin(), e.end());
    auto it = index_.find(e);
    return it == index_.end() ? -1 : it->second;
}

const std::vector<int>& Hypergraph::incident_edges(int v) const {
    if (v < 0 || v >= n_) throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v));
    return incidence_[static_cast<std::size_t>(v)];
}

Hypergraph Hypergraph::subgraph(const std::vector<int>& edge_ids) const {
    std::vector<Edge> kept;
    kept.reserve(edge_ids.size());
    for (int id : edge_ids) kept.push_back(edge(id));
    return Hypergraph(n_, r_, std::move(kept));
}

int Hypergraph::vertex_count_used() const {
    int used = 0;
    for (const auto& inc : incidence_)
        if (!inc.empty()) ++used;
    return used;
}

int ShadowMap::max_degree() const {
    std::size_t best = 0;
    for (const auto& [sigma, ids] : entries) best = std::max(best, ids.size());
    return static_cast<int>(best);
}

std::size_t ShadowMap::total_incidences() const {
    std::size_t total = 0;
    for (const auto& [sigma, ids] : entries) total += ids.size();
    return total;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        // exact at each step: result * num is divisible by i
        if (result > ~std::uint64_t{0} / num)
            throw Error(ErrorCode::TooLarge, "binomial overflow");
        result = result * num / static_cast<std::uint64_t>(i);
    }
    return result;
}

Hypergraph new_hypergraph(int n, int r, std::vector<Edge> edges) {
    return Hypergraph(n, r, std::move(edges));
}

namespace {

// Enumerate all r-subsets of [0, n) in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int r, Fn&& fn) {
    Edge cur(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) cur[static_cast<std::size_t>(i)] = i;
    while (true) {
        fn(cur);
        int i = r - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - r + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// Lexicographic unranking of an r-subset of [0, n).
Edge unrank_subset(int n, int r, std::uint64_t rank) {
    Edge e;
    e.reserve(static_cast<std::size_t>(r));
    int v = 0;
    for (int slot = r; slot >= 1; --slot) {
        while (true) {
            std::uint64_t block = binomial(n - v - 1, slot - 1);
            if (rank < block) break;
            rank -= block;
            ++v;
        }
        e.push_back(v);
        ++v;
    }
    return e;
}

}  // namespace

Hypergraph complete_hypergraph(int n, int r) {
    std::vector<Edge> edges;
    edges.reserve(binomial(n, r));
    for_each_subset(n, r, [&](const Edge& e) { edges.push_back(e); });
    return Hypergraph(n, r, std::move(edges));
}

Hypergraph gen_gnrp(int n, int r, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw Error(ErrorCode::BadParameter, "p must lie in [0, 1]");
    if (p >= 1.0) return complete_hypergraph(n, r);
    Rng rng(seed);
    std::vector<Edge> edges;
    if (p > 0.0) {
        for_each_subset(n, r, [&](const Edge& e) {
            if (rng.next_bernoulli(p)) edges.push_back(e);
        });
    }
    return Hypergraph(n, r, std::move(edges));
}

Hypergraph gen_with_edge_count(int n, int r, std::uint64_t m, std::uint64_t seed) {
    std::uint64_t total = binomial(n, r);
    if (m > total)
        throw Error(ErrorCode::TooManyEdges,
                    std::to_string(m) + " > C(n, r) = " + std::to_string(total));
    Rng rng(seed);
    // sample the smaller side, complement if needed
    bool complement = m > total / 2;
    std::uint64_t want = complement ? total - m : m;
    std::set<std::uint64_t> picked;
    while (picked.size() < want) picked.insert(rng.next_below(total));
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    if (complement) {
        for (std::uint64_t rank = 0; rank < total; ++rank)
            if (!picked.count(rank)) edges.push_back(unrank_subset(n, r, rank));
    } else {
        for (std::uint64_t rank : picked) edges.push_back(unrank_subset(n, r, rank));
    }
    return Hypergraph(n, r, std::move(edges));
}

Hypergraph gen_partite_with_edge_count(const Partition& partition, int n, int r,
                                       std::uint64_t m, std::uint64_t seed) {
    std::uint64_t total = 1;
    for (const auto& part : partition.parts) {
        std::uint64_t size = part.size();
        if (size == 0) {
            total = 0;
            break;
        }
        if (total > ~std::uint64_t{0} / size) throw Error(ErrorCode::TooLarge, "transversal count");
        total *= size;
    }
    if (m > total)
        throw Error(ErrorCode::TooManyEdges, "only " + std::to_string(total) + " transversal edges exist");
    Rng rng(seed);
    std::set<std::uint64_t> picked;
    while (picked.size() < m) picked.insert(rng.next_below(total));
    std::vector<Edge> edges;
    for (std::uint64_t rank : picked) {
        Edge e;
        std::uint64_t rest = rank;
        for (const auto& part : partition.parts) {
            e.push_back(part[static_cast<std::size_t>(rest % part.size())]);
            rest /= part.size();
        }
        edges.push_back(std::move(e));
    }
    return Hypergraph(n, r, std::move(edges));
}

ShadowMap shadows(const Hypergraph& h, int k) {
    if (k < 1 || k >= h.r())
        throw Error(ErrorCode::BadShadowSize, "k = " + std::to_string(k) + " with r = " + std::to_string(h.r()));
    ShadowMap map;
    map.k = k;
    const int r = h.r();
    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int id = 0; id < h.edge_count(); ++id) {
        const Edge& e = h.edge(id);
        // all k-subsets of this edge
        for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
        while (true) {
            Edge sigma(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i)
                sigma[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
            map.entries[sigma].push_back(id);
            int i = k - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == r - k + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return map;
}

int max_codegree(const Hypergraph& h, int j) {
    if (h.edge_count() == 0) return 0;
    return shadows(h, j).max_degree();
}

Partition random_partition(int n, int r, std::uint64_t seed) {
    Rng rng(seed);
    Partition p;
    p.parts.assign(static_cast<std::size_t>(r), {});
    p.assignment.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        int part = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(r)));
        p.assignment[static_cast<std::size_t>(v)] = part;
        p.parts[static_cast<std::size_t>(part)].push_back(v);
    }
    return p;
}

Partition random_r_partition(const Hypergraph& h, std::uint64_t seed) {
    return random_partition(h.n(), h.r(), seed);
}

Hypergraph induced_partite_subgraph(const Hypergraph& h, const Partition& p) {
    if (static_cast<int>(p.assignment.size()) != h.n())
        throw Error(ErrorCode::BadParameter, "partition does not cover V(H)");
    std::vector<Edge> kept;
    std::vector<char> seen(p.parts.size());
    for (const Edge& e : h.edges()) {
        std::fill(seen.begin(), seen.end(), 0);
        bool transversal = true;
        for (int v : e) {
            int part = p.part_of(v);
            if (seen[static_cast<std::size_t>(part)]) {
                transversal = false;
                break;
            }
            seen[static_cast<std::size_t>(part)] = 1;
        }
        if (transversal) kept.push_back(e);
    }
    return Hypergraph(h.n(), h.r(), std::move(kept));
}

PartiteReduction fix_partite_reduction(const Hypergraph& h, std::uint64_t seed, int max_attempts) {
    double factorial = 1.0, power = 1.0;
    for (int i = 1; i <= h.r(); ++i) {
        factorial *= i;
        power *= h.r();
    }
    double needed = factorial / power * h.edge_count();
    // keep the densest induced subgraph seen across the retry budget
    PartiteReduction best;
    best.attempts = 0;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        Partition p = random_r_partition(h, derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        Hypergraph sub = induced_partite_subgraph(h, p);
        if (best.attempts == 0 || sub.edge_count() > best.host.edge_count()) {
            best = PartiteReduction{std::move(sub), std::move(p), attempt};
        }
    }
    if (best.attempts == 0 || static_cast<double>(best.host.edge_count()) < needed)
        throw Error(ErrorCode::PartitionRetryExhausted,
                    "no partition reached " + std::to_string(needed) + " edges in " +
                        std::to_string(max_attempts) + " attempts");
    return best;
}

Rational m_r_density(const Hypergraph& h, std::uint64_t subset_cap) {
    const int m = h.edge_count();
    if (m < 2) throw Error(ErrorCode::Undefined, "m_r needs at least 2 edges");
    if (m >= 64 || (std::uint64_t{1} << m) > subset_cap)
        throw Error(ErrorCode::TooLarge, "2^" + std::to_string(m) + " edge subsets exceed cap");
    bool found = false;
    Rational best;
    std::vector<char> hit(static_cast<std::size_t>(h.n()));
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        int e_count = __builtin_popcountll(mask);
        if (e_count < 2) continue;
        std::fill(hit.begin(), hit.end(), 0);
        int v_count = 0;
        for (int id = 0; id < m; ++id) {
            if (!(mask >> id & 1)) continue;
            for (int v : h.edge(id)) {
                if (!hit[static_cast<std::size_t>(v)]) {
                    hit[static_cast<std::size_t>(v)] = 1;
                    ++v_count;
                }
            }
        }
        if (v_count <= h.r()) continue;  // excluded by convention, see module notes
        Rational candidate(e_count - 1, v_count - h.r());
        if (!found || best < candidate) {
            best = candidate;
            found = true;
        }
    }
    if (!found) throw Error(ErrorCode::Undefined, "no subgraph with e >= 2 and v > r");
    return best;
}

void write_hg(const Hypergraph& h, std::ostream& out) {
    out << h.r() << ' ' << h.n() << ' ' << h.edge_count() << '\n';
    std::vector<Edge> sorted = h.edges();
    std::sort(sorted.begin(), sorted.end());
    for (const Edge& e : sorted) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) out << ' ';
            out << e[i];
        }
        out << '\n';
    }
}

Hypergraph read_hg(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::ParseError, "line 1: missing header");
    std::istringstream header(line);
    long long r = 0, n = 0, m = 0;
    if (!(header >> r >> n >> m))
        throw Error(ErrorCode::ParseError, "line 1: expected 'r n m'");
    std::string extra;
    if (header >> extra) throw Error(ErrorCode::ParseError, "line 1: trailing tokens");
    if (r < 2 || n < r || m < 0)
        throw Error(ErrorCode::ParseError, "line 1: invalid header values");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        std::string where = "line " + std::to_string(i + 2);
        if (!std::getline(in, line))
            throw Error(ErrorCode::ParseError, where + ": missing edge line");
        std::istringstream row(line);
        Edge e;
        long long v;
        while (row >> v) e.push_back(static_cast<int>(v));
        try {
            edges.push_back(canonical_edge(std::move(e), static_cast<int>(r), static_cast<int>(n)));
        } catch (const Error& err) {
            throw Error(ErrorCode::ParseError, where + ": " + err.what());
        }
        for (long long j = 0; j < i; ++j)
            if (edges[static_cast<std::size_t>(j)] == edges.back())
                throw Error(ErrorCode::ParseError, where + ": duplicate edge");
    }
    return Hypergraph(static_cast<int>(n), static_cast<int>(r), std::move(edges));
}

void write_hg_file(const Hypergraph& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot open " + path);
    write_hg(h, out);
}

Hypergraph read_hg_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    return read_hg(in);
}

}  // namespace turan
