#include "turan/cycles.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace turan {

CycleFamily CycleFamily::linear(int r, int length) {
    if (r < 2) throw Error(ErrorCode::BadParameter, "linear cycle needs r >= 2");
    if (length < 3) throw Error(ErrorCode::BadParameter, "linear cycle length must be >= 3");
    return CycleFamily{FamilyKind::Linear, r, length};
}

CycleFamily CycleFamily::berge(int r, int length) {
    if (r < 2) throw Error(ErrorCode::BadParameter, "Berge cycle needs r >= 2");
    if (length < 2) throw Error(ErrorCode::BadParameter, "Berge cycle length must be >= 2");
    return CycleFamily{FamilyKind::Berge, r, length};
}

CycleFamily CycleFamily::berge_up_to(int r, int length) {
    if (r < 2) throw Error(ErrorCode::BadParameter, "Berge cycle needs r >= 2");
    if (length < 2) throw Error(ErrorCode::BadParameter, "Berge cycle length must be >= 2");
    return CycleFamily{FamilyKind::BergeUpTo, r, length};
}

namespace {

bool all_distinct(std::vector<int> xs) {
    std::sort(xs.begin(), xs.end());
    return std::adjacent_find(xs.begin(), xs.end()) == xs.end();
}

std::vector<int> canonical_core(const std::vector<int>& core) {
    const std::size_t k = core.size();
    std::vector<int> best, cand(k);
    for (int dir = 0; dir < 2; ++dir) {
        for (std::size_t shift = 0; shift < k; ++shift) {
            for (std::size_t i = 0; i < k; ++i) {
                std::size_t src = dir == 0 ? (shift + i) % k : (shift + k - i) % k;
                cand[i] = core[src];
            }
            if (best.empty() || cand < best) best = cand;
        }
    }
    return best;
}

}  // namespace

bool is_cycle_copy(const Hypergraph& h, const CycleCopy& c) {
    const int r = h.r();
    for (int id : c.edge_ids) h.edge(id);  // throws UnknownEdgeId
    if (!all_distinct(c.edge_ids)) return false;
    const int len = static_cast<int>(c.edge_ids.size());

    if (c.kind == CycleKind::Linear) {
        if (len < 3) return false;
        const int L = len * (r - 1);
        if (static_cast<int>(c.witness.size()) != L) return false;
        for (int v : c.witness)
            if (v < 0 || v >= h.n()) return false;
        if (!all_distinct(c.witness)) return false;
        for (int i = 1; i <= len; ++i) {
            Edge expected;
            expected.reserve(static_cast<std::size_t>(r));
            for (int t = (i - 1) * (r - 1) - 1; t <= i * (r - 1) - 1; ++t)
                expected.push_back(c.witness[static_cast<std::size_t>((t + L) % L)]);
            std::sort(expected.begin(), expected.end());
            if (h.edge(c.edge_ids[static_cast<std::size_t>(i - 1)]) != expected) return false;
        }
        return true;
    }

    // Berge
    if (len < 2) return false;
    if (static_cast<int>(c.witness.size()) != len) return false;
    for (int v : c.witness)
        if (v < 0 || v >= h.n()) return false;
    if (!all_distinct(c.witness)) return false;
    for (int i = 0; i < len; ++i) {
        const Edge& e = h.edge(c.edge_ids[static_cast<std::size_t>(i)]);
        int prev = c.witness[static_cast<std::size_t>((i + len - 1) % len)];
        int cur = c.witness[static_cast<std::size_t>(i)];
        if (!std::binary_search(e.begin(), e.end(), prev)) return false;
        if (!std::binary_search(e.begin(), e.end(), cur)) return false;
    }
    return true;
}

CycleCopy make_linear_copy(const Hypergraph& h, const std::vector<int>& edge_cycle) {
    const int len = static_cast<int>(edge_cycle.size());
    const int r = h.r();
    std::vector<int> links(static_cast<std::size_t>(len));  // links[i] = shared(e_i, e_{i+1})
    for (int i = 0; i < len; ++i) {
        const Edge& a = h.edge(edge_cycle[static_cast<std::size_t>(i)]);
        const Edge& b = h.edge(edge_cycle[static_cast<std::size_t>((i + 1) % len)]);
        Edge common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (common.size() != 1)
            throw Error(ErrorCode::BadParameter, "edge sequence is not a linear cycle");
        links[static_cast<std::size_t>(i)] = common[0];
    }
    CycleCopy c;
    c.kind = CycleKind::Linear;
    c.edge_ids = edge_cycle;
    c.witness.reserve(static_cast<std::size_t>(len * (r - 1)));
    for (int i = 0; i < len; ++i) {
        const Edge& e = h.edge(edge_cycle[static_cast<std::size_t>(i)]);
        int entry = links[static_cast<std::size_t>((i + len - 1) % len)];
        int exit = links[static_cast<std::size_t>(i)];
        for (int v : e)
            if (v != entry && v != exit) c.witness.push_back(v);  // interior, ascending
        c.witness.push_back(exit);
    }
    if (!is_cycle_copy(h, c))
        throw Error(ErrorCode::BadParameter, "edge sequence is not a linear cycle");
    return c;
}

std::vector<int> copy_key(const CycleCopy& c) {
    std::vector<int> key = c.edge_ids;
    std::sort(key.begin(), key.end());
    if (c.kind == CycleKind::Berge) {
        key.push_back(-1);  // separator
        std::vector<int> core = canonical_core(c.witness);
        key.insert(key.end(), core.begin(), core.end());
    }
    return key;
}

namespace {

// Shared state for the linear-cycle walker. Each copy is emitted exactly once:
// the root edge carries the minimum id and the second edge's id is smaller
// than the last edge's.
struct LinearWalker {
    const Hypergraph& h;
    int len;
    std::uint64_t cap;
    bool count_only;
    std::map<Edge, std::vector<int>> pair_to_edges;  // r >= 3 closing lookup

    std::vector<CycleCopy> out;
    std::uint64_t count = 0;
    bool truncated = false;

    std::vector<int> chain;
    std::vector<char> used;
    int final_link = -1;  // vertex shared by the last edge and the root

    LinearWalker(const Hypergraph& host, int length, std::uint64_t cap_, bool count_only_)
        : h(host), len(length), cap(cap_), count_only(count_only_), used(static_cast<std::size_t>(host.n()), 0) {
        if (h.r() >= 3) {
            for (int id = 0; id < h.edge_count(); ++id) {
                const Edge& e = h.edge(id);
                for (std::size_t i = 0; i < e.size(); ++i)
                    for (std::size_t j = i + 1; j < e.size(); ++j)
                        pair_to_edges[{e[i], e[j]}].push_back(id);
            }
        }
    }

    void run() {
        for (int root = 0; root < h.edge_count() && !truncated; ++root) {
            chain.assign(1, root);
            for (int v : h.edge(root)) used[static_cast<std::size_t>(v)] = 1;
            for (int entry : h.edge(root)) {
                final_link = entry;
                extend(entry);
                if (truncated) break;
            }
            for (int v : h.edge(root)) used[static_cast<std::size_t>(v)] = 0;
        }
    }

    void emit() {
        ++count;
        if (!count_only) out.push_back(make_linear_copy(h, chain));
        if (count >= cap) truncated = true;
    }

    // prev_entry: the vertex the current last edge shares with its predecessor
    // (for the root edge this is the reserved final link).
    void extend(int prev_entry) {
        const Edge& last = h.edge(chain.back());
        const int root = chain.front();
        const bool closing = static_cast<int>(chain.size()) == len - 1;
        for (int exit : last) {
            if (exit == prev_entry) continue;
            if (closing) {
                close_cycle(exit);
            } else {
                for (int cand : h.incident_edges(exit)) {
                    if (cand <= root || used_conflict(cand, exit)) continue;
                    push_edge(cand);
                    extend(exit);
                    pop_edge(cand);
                    if (truncated) return;
                }
            }
            if (truncated) return;
        }
    }

    void close_cycle(int exit) {
        const int root = chain.front();
        auto try_close = [&](int cand) {
            if (cand <= root) return;
            if (std::find(chain.begin(), chain.end(), cand) != chain.end()) return;
            if (chain.size() >= 2 && chain[1] >= cand) return;  // direction tiebreak
            // must meet the used set in exactly {exit, final_link}
            for (int v : h.edge(cand))
                if (used[static_cast<std::size_t>(v)] && v != exit && v != final_link) return;
            chain.push_back(cand);
            emit();
            chain.pop_back();
        };
        if (exit == final_link) return;
        if (h.r() == 2) {
            int cand = h.edge_id({exit, final_link});
            if (cand >= 0) try_close(cand);
        } else {
            Edge key{std::min(exit, final_link), std::max(exit, final_link)};
            auto it = pair_to_edges.find(key);
            if (it == pair_to_edges.end()) return;
            for (int cand : it->second) {
                try_close(cand);
                if (truncated) return;
            }
        }
    }

    bool used_conflict(int cand, int link) const {
        for (int v : h.edge(cand))
            if (v != link && used[static_cast<std::size_t>(v)]) return true;
        return false;
    }

    void push_edge(int id) {
        chain.push_back(id);
        for (int v : h.edge(id)) used[static_cast<std::size_t>(v)] = 1;
    }

    void pop_edge(int id) {
        chain.pop_back();
        for (int v : h.edge(id)) used[static_cast<std::size_t>(v)] = 0;
        const Edge& prev = h.edge(chain.back());
        for (int v : prev) used[static_cast<std::size_t>(v)] = 1;  // restore shared link
    }
};

// Berge walker: cores rooted at their minimum vertex, reflection broken by
// witness[1] < witness[k-1]; edge assignments deduped through canonical keys.
struct BergeWalker {
    const Hypergraph& h;
    int len;
    std::uint64_t cap;
    bool count_only;
    bool edge_set_identity;

    std::map<Edge, std::vector<int>> pair_to_edges;
    std::set<std::vector<int>> seen;
    std::vector<CycleCopy> out;
    bool truncated = false;

    std::vector<int> core;
    std::vector<int> edges_pick;  // e_2 .. e_k while descending, e_1 appended last
    std::vector<char> vertex_used;
    std::vector<char> edge_used;

    BergeWalker(const Hypergraph& host, int length, std::uint64_t cap_, bool count_only_, bool set_identity)
        : h(host), len(length), cap(cap_), count_only(count_only_), edge_set_identity(set_identity),
          vertex_used(static_cast<std::size_t>(host.n()), 0),
          edge_used(static_cast<std::size_t>(host.edge_count()), 0) {
        for (int id = 0; id < h.edge_count(); ++id) {
            const Edge& e = h.edge(id);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::size_t j = i + 1; j < e.size(); ++j)
                    pair_to_edges[{e[i], e[j]}].push_back(id);
        }
    }

    const std::vector<int>* candidates(int a, int b) const {
        auto it = pair_to_edges.find({std::min(a, b), std::max(a, b)});
        return it == pair_to_edges.end() ? nullptr : &it->second;
    }

    void run() {
        for (int v1 = 0; v1 < h.n() && !truncated; ++v1) {
            core.assign(1, v1);
            vertex_used[static_cast<std::size_t>(v1)] = 1;
            pick_vertex();
            vertex_used[static_cast<std::size_t>(v1)] = 0;
        }
    }

    void emit(int e1) {
        CycleCopy c;
        c.kind = CycleKind::Berge;
        c.witness = core;
        c.edge_ids.assign(1, e1);
        c.edge_ids.insert(c.edge_ids.end(), edges_pick.begin(), edges_pick.end());
        std::vector<int> key;
        if (edge_set_identity) {
            key = c.edge_ids;
            std::sort(key.begin(), key.end());
        } else {
            key = copy_key(c);
        }
        if (!seen.insert(std::move(key)).second) return;
        if (!count_only) out.push_back(std::move(c));
        if (seen.size() >= cap) truncated = true;
    }

    // core holds v_1..v_i; edges_pick holds e_2..e_i.
    void pick_vertex() {
        const std::size_t depth = core.size();
        if (static_cast<int>(depth) == len) {
            // close: e_1 covers {v_k, v_1} and must differ from e_2..e_k
            const std::vector<int>* c1 = candidates(core.back(), core.front());
            if (!c1) return;
            for (int e1 : *c1) {
                if (edge_used[static_cast<std::size_t>(e1)]) continue;
                emit(e1);
                if (truncated) return;
            }
            return;
        }
        for (int v = core.front() + 1; v < h.n(); ++v) {
            if (vertex_used[static_cast<std::size_t>(v)]) continue;
            // reflection tiebreak: the last core vertex must exceed the second
            if (static_cast<int>(depth) == len - 1 && len > 2 && v <= core[1]) continue;
            core.push_back(v);
            vertex_used[static_cast<std::size_t>(v)] = 1;
            pick_edge();
            vertex_used[static_cast<std::size_t>(v)] = 0;
            core.pop_back();
            if (truncated) return;
        }
    }

    // choose e_i covering the last two core vertices (i = core.size())
    void pick_edge() {
        const std::size_t depth = core.size();
        const std::vector<int>* cands = candidates(core[depth - 2], core[depth - 1]);
        if (!cands) return;
        for (int id : *cands) {
            if (edge_used[static_cast<std::size_t>(id)]) continue;
            edge_used[static_cast<std::size_t>(id)] = 1;
            edges_pick.push_back(id);
            pick_vertex();
            edges_pick.pop_back();
            edge_used[static_cast<std::size_t>(id)] = 0;
            if (truncated) return;
        }
    }
};

void validate_family(const Hypergraph& h, const CycleFamily& fam) {
    if (fam.r != h.r())
        throw Error(ErrorCode::BadParameter, "family uniformity does not match host");
    if (fam.kind == FamilyKind::Linear && fam.length < 3)
        throw Error(ErrorCode::BadParameter, "linear cycle length must be >= 3");
    if (fam.kind != FamilyKind::Linear && fam.length < 2)
        throw Error(ErrorCode::BadParameter, "Berge cycle length must be >= 2");
}

}  // namespace

EnumResult enumerate_cycles(const Hypergraph& h, const CycleFamily& fam, const EnumOptions& opts) {
    validate_family(h, fam);
    EnumResult result;
    if (fam.kind == FamilyKind::Linear) {
        LinearWalker walker(h, fam.length, opts.cap, false);
        walker.run();
        result.copies = std::move(walker.out);
        result.truncated = walker.truncated;
        return result;
    }
    int low = fam.kind == FamilyKind::BergeUpTo ? 2 : fam.length;
    for (int k = low; k <= fam.length; ++k) {
        BergeWalker walker(h, k, opts.cap - result.copies.size(), false, opts.berge_edge_set_identity);
        walker.run();
        result.copies.insert(result.copies.end(), std::make_move_iterator(walker.out.begin()),
                             std::make_move_iterator(walker.out.end()));
        if (walker.truncated) {
            result.truncated = true;
            break;
        }
    }
    return result;
}

BigInt count_cycles(const Hypergraph& h, const CycleFamily& fam) {
    validate_family(h, fam);
    if (fam.kind == FamilyKind::Linear) {
        LinearWalker walker(h, fam.length, ~std::uint64_t{0}, true);
        walker.run();
        return BigInt(walker.count);
    }
    BigInt total = 0;
    int low = fam.kind == FamilyKind::BergeUpTo ? 2 : fam.length;
    for (int k = low; k <= fam.length; ++k) {
        BergeWalker walker(h, k, ~std::uint64_t{0}, true, false);
        walker.run();
        total += static_cast<std::uint64_t>(walker.seen.size());
    }
    return total;
}

namespace {

// Independent linear check on an edge subset: pairwise intersections must form
// a single cycle with distinct singleton links. Returns the cyclic order.
bool linear_cycle_order(const Hypergraph& h, const std::vector<int>& subset, std::vector<int>& order) {
    const int len = static_cast<int>(subset.size());
    std::vector<std::vector<int>> inter(static_cast<std::size_t>(len));
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        for (int j = i + 1; j < len; ++j) {
            const Edge& a = h.edge(subset[static_cast<std::size_t>(i)]);
            const Edge& b = h.edge(subset[static_cast<std::size_t>(j)]);
            Edge common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
            if (common.size() > 1) return false;
            if (common.size() == 1) {
                adj[static_cast<std::size_t>(i)].push_back(j);
                adj[static_cast<std::size_t>(j)].push_back(i);
                inter[static_cast<std::size_t>(i)].push_back(common[0]);
                inter[static_cast<std::size_t>(j)].push_back(common[0]);
            }
        }
    }
    for (int i = 0; i < len; ++i) {
        if (adj[static_cast<std::size_t>(i)].size() != 2) return false;
        // the two link vertices of an edge must differ
        if (inter[static_cast<std::size_t>(i)][0] == inter[static_cast<std::size_t>(i)][1]) return false;
    }
    // trace the intersection graph; it must be one cycle through all edges
    order.assign(1, 0);
    std::vector<char> visited(static_cast<std::size_t>(len), 0);
    visited[0] = 1;
    int prev = -1, cur = 0;
    for (int step = 1; step < len; ++step) {
        int nxt = adj[static_cast<std::size_t>(cur)][0] == prev ? adj[static_cast<std::size_t>(cur)][1]
                                                                : adj[static_cast<std::size_t>(cur)][0];
        if (visited[static_cast<std::size_t>(nxt)]) return false;
        visited[static_cast<std::size_t>(nxt)] = 1;
        order.push_back(nxt);
        prev = cur;
        cur = nxt;
    }
    // closing adjacency
    if (adj[static_cast<std::size_t>(cur)][0] != 0 && adj[static_cast<std::size_t>(cur)][1] != 0) return false;
    // all links distinct (covers the short-cycle cases)
    std::vector<int> links;
    for (int i = 0; i < len; ++i)
        for (int v : inter[static_cast<std::size_t>(i)]) links.push_back(v);
    std::sort(links.begin(), links.end());
    for (std::size_t i = 0; i + 1 < links.size(); i += 2)
        if (links[i] != links[i + 1]) return false;  // each link counted twice
    for (std::size_t i = 2; i < links.size(); i += 2)
        if (links[i] == links[i - 1]) return false;  // no link shared by 3 edges
    return true;
}

void oracle_linear(const Hypergraph& h, const CycleFamily& fam, std::uint64_t work_cap, EnumResult& result) {
    const int len = fam.length;
    const int m = h.edge_count();
    if (m < len) return;
    std::uint64_t subsets = binomial(m, len);
    if (subsets > work_cap)
        throw Error(ErrorCode::TooLarge, "oracle would scan " + std::to_string(subsets) + " subsets");
    std::vector<int> pick(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) pick[static_cast<std::size_t>(i)] = i;
    std::vector<int> order;
    while (true) {
        if (linear_cycle_order(h, pick, order)) {
            // canonical rotation: min id first, smaller neighbor second
            std::vector<int> ids(order.size());
            for (std::size_t i = 0; i < order.size(); ++i)
                ids[i] = pick[static_cast<std::size_t>(order[i])];
            std::size_t root = static_cast<std::size_t>(
                std::min_element(ids.begin(), ids.end()) - ids.begin());
            std::vector<int> fwd, bwd;
            for (std::size_t i = 0; i < ids.size(); ++i) {
                fwd.push_back(ids[(root + i) % ids.size()]);
                bwd.push_back(ids[(root + ids.size() - i) % ids.size()]);
            }
            result.copies.push_back(make_linear_copy(h, fwd[1] < bwd[1] ? fwd : bwd));
        }
        int i = len - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - len + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < len; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
}

void oracle_berge(const Hypergraph& h, int k, std::uint64_t work_cap, EnumResult& result,
                  std::set<std::vector<int>>& seen) {
    // All ordered tuples of k distinct vertices, naive containment tests,
    // canonicalized after the fact.
    const int n = h.n();
    std::uint64_t tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= static_cast<std::uint64_t>(std::max(1, n - i));
    if (tuples > work_cap)
        throw Error(ErrorCode::TooLarge, "oracle would scan " + std::to_string(tuples) + " tuples");

    std::vector<int> core(static_cast<std::size_t>(k));
    std::vector<int> edges(static_cast<std::size_t>(k));
    std::vector<char> vertex_used(static_cast<std::size_t>(n), 0);
    std::vector<char> edge_used(static_cast<std::size_t>(h.edge_count()), 0);

    auto contains = [&](int id, int a, int b) {
        const Edge& e = h.edge(id);
        bool fa = false, fb = false;
        for (int v : e) {
            fa |= v == a;
            fb |= v == b;
        }
        return fa && fb;
    };

    // assign e_{pos+1} covering {core[pos-1], core[pos]} (cyclic)
    auto assign_edges = [&](auto&& self, int pos) -> void {
        if (pos == k) {
            CycleCopy c;
            c.kind = CycleKind::Berge;
            c.witness = core;
            c.edge_ids = edges;
            if (seen.insert(copy_key(c)).second) result.copies.push_back(std::move(c));
            return;
        }
        int a = core[static_cast<std::size_t>((pos + k - 1) % k)];
        int b = core[static_cast<std::size_t>(pos)];
        for (int id = 0; id < h.edge_count(); ++id) {
            if (edge_used[static_cast<std::size_t>(id)] || !contains(id, a, b)) continue;
            edge_used[static_cast<std::size_t>(id)] = 1;
            edges[static_cast<std::size_t>(pos)] = id;
            self(self, pos + 1);
            edge_used[static_cast<std::size_t>(id)] = 0;
        }
    };

    auto pick_core = [&](auto&& self, int pos) -> void {
        if (pos == k) {
            assign_edges(assign_edges, 0);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (vertex_used[static_cast<std::size_t>(v)]) continue;
            vertex_used[static_cast<std::size_t>(v)] = 1;
            core[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1);
            vertex_used[static_cast<std::size_t>(v)] = 0;
        }
    };
    pick_core(pick_core, 0);
}

}  // namespace

EnumResult brute_force_oracle(const Hypergraph& h, const CycleFamily& fam, std::uint64_t work_cap) {
    validate_family(h, fam);
    EnumResult result;
    if (fam.kind == FamilyKind::Linear) {
        oracle_linear(h, fam, work_cap, result);
        return result;
    }
    int low = fam.kind == FamilyKind::BergeUpTo ? 2 : fam.length;
    for (int k = low; k <= fam.length; ++k) {
        std::set<std::vector<int>> seen;
        oracle_berge(h, k, work_cap, result, seen);
    }
    return result;
}

bool is_family_free(const Hypergraph& h, const CycleFamily& fam) {
    validate_family(h, fam);
    if (fam.kind == FamilyKind::Linear) {
        LinearWalker walker(h, fam.length, 1, true);
        walker.run();
        return walker.count == 0;
    }
    int low = fam.kind == FamilyKind::BergeUpTo ? 2 : fam.length;
    for (int k = low; k <= fam.length; ++k) {
        BergeWalker walker(h, k, 1, true, false);
        walker.run();
        if (!walker.seen.empty()) return false;
    }
    return true;
}

}  // namespace turan
