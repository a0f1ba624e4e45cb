#include "turan/supersat.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "turan/rng.hpp"

namespace turan {

CodegreeGraph build_codegree_graph(const std::vector<int>& neighborhood, int t) {
    const int d = static_cast<int>(neighborhood.size());
    if (t <= 0) throw Error(ErrorCode::BadParameter, "target degree must be positive");
    if (d <= t)
        throw Error(ErrorCode::TooFewVertices,
                    "need more than t = " + std::to_string(t) + " vertices, have " + std::to_string(d));
    CodegreeGraph g;
    g.vertices = neighborhood;
    std::sort(g.vertices.begin(), g.vertices.end());
    g.target_degree = t;
    g.adj.assign(static_cast<std::size_t>(d), {});
    auto connect = [&](int i, int j) {
        g.adj[static_cast<std::size_t>(i)].push_back(j);
        g.adj[static_cast<std::size_t>(j)].push_back(i);
    };
    // offsets 1..floor(t/2); off < d/2 holds since t < d, so no pair repeats
    const int half = t / 2;
    for (int off = 1; off <= half; ++off)
        for (int i = 0; i < d; ++i) connect(i, (i + off) % d);
    if (t % 2 == 1) {
        if (d % 2 == 0) {
            for (int i = 0; i < d / 2; ++i) connect(i, i + d / 2);  // antipodal matching
        } else {
            int m = (d - 1) / 2;  // vertex d-1 stays at degree t-1
            for (int j = 0; j < m; ++j) connect(j, j + m);
        }
    }
    for (auto& nb : g.adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return g;
}

namespace {

// Per-shadow Gamma graphs indexed for O(1) walking: for every (edge, dropped
// vertex) pair we know the shadow, the edge's slot in Gamma, and each
// neighbor's extra vertex.
struct GammaTables {
    std::vector<Edge> sigma_of;                     // dense shadow id -> sigma
    std::vector<CodegreeGraph> gamma;               // per shadow
    std::vector<std::vector<int>> extra;            // per shadow: slot -> vertex outside sigma
    std::vector<std::vector<int>> shadow_at;        // edge id x drop position -> shadow id
    std::vector<std::vector<int>> slot_at;          // edge id x drop position -> slot in gamma

    GammaTables(const Hypergraph& f, int t) {
        const int r = f.r();
        ShadowMap sm = shadows(f, r - 1);
        std::map<Edge, int> ids;
        for (auto& [sigma, edge_ids] : sm.entries) {
            int deg = static_cast<int>(edge_ids.size());
            if (deg < t)
                throw Error(ErrorCode::CodegreeTooSmall,
                            "shadow has codegree " + std::to_string(deg) + " < t = " + std::to_string(t));
            int dense = static_cast<int>(sigma_of.size());
            ids.emplace(sigma, dense);
            sigma_of.push_back(sigma);
            // degree t when possible; the complete graph (degree t-1) when the
            // neighborhood has exactly t members; edgeless when that hits zero
            if (deg > t) {
                gamma.push_back(build_codegree_graph(edge_ids, t));
            } else if (t >= 2) {
                gamma.push_back(build_codegree_graph(edge_ids, t - 1));
            } else {
                CodegreeGraph bare;
                bare.vertices = edge_ids;
                std::sort(bare.vertices.begin(), bare.vertices.end());
                bare.target_degree = t;
                bare.adj.assign(bare.vertices.size(), {});
                gamma.push_back(std::move(bare));
            }
            std::vector<int> ex;
            ex.reserve(edge_ids.size());
            for (int id : gamma.back().vertices) {
                const Edge& e = f.edge(id);
                int extra_vertex = -1;
                for (int v : e)
                    if (!std::binary_search(sigma.begin(), sigma.end(), v)) extra_vertex = v;
                ex.push_back(extra_vertex);
            }
            extra.push_back(std::move(ex));
        }
        shadow_at.assign(static_cast<std::size_t>(f.edge_count()), {});
        slot_at.assign(static_cast<std::size_t>(f.edge_count()), {});
        for (int id = 0; id < f.edge_count(); ++id) {
            const Edge& e = f.edge(id);
            for (int pos = 0; pos < r; ++pos) {
                Edge sigma;
                for (int q = 0; q < r; ++q)
                    if (q != pos) sigma.push_back(e[static_cast<std::size_t>(q)]);
                int dense = ids.at(sigma);
                shadow_at[static_cast<std::size_t>(id)].push_back(dense);
                const auto& verts = gamma[static_cast<std::size_t>(dense)].vertices;
                int slot = static_cast<int>(std::lower_bound(verts.begin(), verts.end(), id) - verts.begin());
                slot_at[static_cast<std::size_t>(id)].push_back(slot);
            }
        }
    }
};

struct OrderedWindow {
    std::vector<int> verts;  // current ordered edge
    int edge_id = -1;
};

// The expansion walker. Phase (ii) grows the shared ring through Gamma steps,
// phase (iii) rotates every ring edge to fresh interior vertices.
struct ExpandWalker {
    const Hypergraph& f;
    const GammaTables& tables;
    int ell;
    int r;
    int two_ell;

    bool count_only = false;
    bool canonical_filter = false;  // root-min + direction filter (r = 3 counting)
    std::uint64_t cap = ~std::uint64_t{0};
    int validate_every = 0;

    // sampled mode
    bool sampled = false;
    Rng* rng = nullptr;

    std::vector<char> used;
    std::vector<int> ring;                  // ring[1..2l], ring[0] aliases ring[2l]
    std::vector<OrderedWindow> fstack;      // phase (ii) windows
    std::vector<int> final_ids;             // e_1..e_{2l}
    std::vector<std::vector<int>> final_edge_cycle_buf;

    std::uint64_t copies = 0;
    std::uint64_t paths = 0;
    std::uint64_t validated = 0;
    std::uint64_t validation_failures = 0;
    std::vector<std::uint64_t> edge_load;
    std::set<std::vector<int>> seen;  // materializing dedup
    std::vector<CycleCopy> out;
    bool truncated = false;

    ExpandWalker(const Hypergraph& host, const GammaTables& tbl, int ell_)
        : f(host), tables(tbl), ell(ell_), r(host.r()), two_ell(2 * ell_),
          used(static_cast<std::size_t>(host.n()), 0),
          ring(static_cast<std::size_t>(2 * ell_ + 1), -1),
          edge_load(static_cast<std::size_t>(host.edge_count()), 0) {}

    int ring_label(int step) const {
        return step % 2 == 0 ? two_ell - 1 - step / 2 : 2 + (step - 1) / 2;
    }

    // f_i lives at this phase-(ii) stack position (f_{l+1} aliases f_l)
    int stack_pos(int i) const {
        if (i == 1) return 0;
        if (i <= ell) return 2 * (i - 1);
        if (i == ell + 1) return 2 * (ell - 1);
        return 4 * ell + 1 - 2 * i;
    }

    void run_exhaustive() {
        for (int root = 0; root < f.edge_count() && !truncated; ++root) {
            Edge perm = f.edge(root);
            do {
                start_from(root, perm);
                if (truncated) break;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }

    void run_sampled(std::uint64_t runs) {
        for (std::uint64_t i = 0; i < runs && !truncated; ++i) {
            int root = static_cast<int>(rng->next_below(static_cast<std::uint64_t>(f.edge_count())));
            Edge perm = f.edge(root);
            rng->shuffle(perm);
            start_from(root, perm);
        }
    }

    void start_from(int root, const Edge& perm) {
        fstack.clear();
        fstack.push_back(OrderedWindow{perm, root});
        for (int v : perm) used[static_cast<std::size_t>(v)] = 1;
        ring[static_cast<std::size_t>(two_ell)] = perm[static_cast<std::size_t>(r - 2)];
        ring[1] = perm[static_cast<std::size_t>(r - 1)];
        ring[0] = ring[static_cast<std::size_t>(two_ell)];
        phase_two(0);
        for (int v : perm) used[static_cast<std::size_t>(v)] = 0;
    }

    // One Gamma step from `win`: drop the front vertex, append a fresh one.
    template <typename Fn>
    void gamma_step(const OrderedWindow& win, Fn&& accept) {
        int drop = win.verts[0];
        const Edge& host_edge = f.edge(win.edge_id);
        int pos = static_cast<int>(std::lower_bound(host_edge.begin(), host_edge.end(), drop) -
                                   host_edge.begin());
        int shadow = tables.shadow_at[static_cast<std::size_t>(win.edge_id)][static_cast<std::size_t>(pos)];
        int slot = tables.slot_at[static_cast<std::size_t>(win.edge_id)][static_cast<std::size_t>(pos)];
        const CodegreeGraph& g = tables.gamma[static_cast<std::size_t>(shadow)];
        const std::vector<int>& extras = tables.extra[static_cast<std::size_t>(shadow)];
        if (!sampled) {
            for (int nb : g.adj[static_cast<std::size_t>(slot)]) {
                int x = extras[static_cast<std::size_t>(nb)];
                if (used[static_cast<std::size_t>(x)]) continue;
                accept(g.vertices[static_cast<std::size_t>(nb)], x);
                if (truncated) return;
            }
        } else {
            std::vector<int> valid;
            for (int nb : g.adj[static_cast<std::size_t>(slot)])
                if (!used[static_cast<std::size_t>(extras[static_cast<std::size_t>(nb)])]) valid.push_back(nb);
            if (valid.empty()) return;
            int nb = valid[static_cast<std::size_t>(rng->next_below(valid.size()))];
            accept(g.vertices[static_cast<std::size_t>(nb)], extras[static_cast<std::size_t>(nb)]);
        }
    }

    OrderedWindow slide(const OrderedWindow& win, int new_edge, int new_vertex) const {
        OrderedWindow next;
        next.verts.assign(win.verts.begin() + 1, win.verts.end());
        next.verts.push_back(new_vertex);
        next.edge_id = new_edge;
        return next;
    }

    void phase_two(int step) {
        if (step == two_ell - 2) {
            final_ids.assign(static_cast<std::size_t>(two_ell + 1), -1);
            final_ids[1] = fstack[0].edge_id;
            phase_three(2);
            return;
        }
        int label = ring_label(step);
        gamma_step(fstack.back(), [&](int edge_id, int x) {
            used[static_cast<std::size_t>(x)] = 1;
            ring[static_cast<std::size_t>(label)] = x;
            if (label == two_ell) ring[0] = x;
            fstack.push_back(slide(fstack.back(), edge_id, x));
            phase_two(step + 1);
            fstack.pop_back();
            used[static_cast<std::size_t>(x)] = 0;
        });
    }

    void phase_three(int i) {
        if (i > two_ell) {
            finish();
            return;
        }
        const OrderedWindow& fwin = fstack[static_cast<std::size_t>(stack_pos(i))];
        int wa = ring[static_cast<std::size_t>(i - 1)];
        int wb = ring[static_cast<std::size_t>(i)];
        std::vector<int> interior;
        for (int v : fwin.verts)
            if (v != wa && v != wb) interior.push_back(v);
        std::sort(interior.begin(), interior.end());
        if (sampled) rng->shuffle(interior);
        do {
            OrderedWindow start;
            start.verts = interior;
            start.verts.push_back(wa);
            start.verts.push_back(wb);
            start.edge_id = fwin.edge_id;
            rotate_edge(i, start, 0);
            if (truncated || sampled) break;
        } while (std::next_permutation(interior.begin(), interior.end()));
    }

    void rotate_edge(int i, const OrderedWindow& win, int step) {
        if (step == r - 2) {
            if (canonical_filter && win.edge_id <= final_ids[1]) return;  // root must be the minimum
            final_ids[static_cast<std::size_t>(i)] = win.edge_id;
            phase_three(i + 1);
            return;
        }
        gamma_step(win, [&](int edge_id, int x) {
            used[static_cast<std::size_t>(x)] = 1;
            rotate_edge(i, slide(win, edge_id, x), step + 1);
            used[static_cast<std::size_t>(x)] = 0;
        });
    }

    void finish() {
        ++paths;
        if (canonical_filter &&
            final_ids[2] > final_ids[static_cast<std::size_t>(two_ell)]) return;
        std::vector<int> cycle(final_ids.begin() + 1, final_ids.end());
        if (count_only) {
            ++copies;
            for (int id : cycle) ++edge_load[static_cast<std::size_t>(id)];
            if (validate_every > 0 && copies % static_cast<std::uint64_t>(validate_every) == 0) {
                ++validated;
                if (!is_cycle_copy(f, make_linear_copy(f, cycle))) ++validation_failures;
            }
            if (copies >= cap) truncated = true;
            return;
        }
        std::vector<int> key = cycle;
        std::sort(key.begin(), key.end());
        if (!seen.insert(std::move(key)).second) return;
        ++copies;
        for (int id : cycle) ++edge_load[static_cast<std::size_t>(id)];
        out.push_back(make_linear_copy(f, cycle));
        if (copies >= cap) truncated = true;
    }
};

void check_expand_preconditions(const Hypergraph& f, int t, int ell, bool relax) {
    if (f.r() < 3) throw Error(ErrorCode::BadParameter, "greedy expansion needs r >= 3");
    if (ell < 2) throw Error(ErrorCode::BadParameter, "need ell >= 2");
    if (t < 1) throw Error(ErrorCode::BadParameter, "need t >= 1");
    if (!relax && t < 4 * ell * (f.r() - 1))
        throw Error(ErrorCode::CodegreeTooSmall,
                    "t = " + std::to_string(t) + " below 4*ell*(r-1) = " +
                        std::to_string(4 * ell * (f.r() - 1)) + " (pass relax_threshold to override)");
}

}  // namespace

CycleCollection greedy_expand(const Hypergraph& f, int t, int ell, const GreedyOptions& opts) {
    check_expand_preconditions(f, t, ell, opts.relax_threshold);
    CycleCollection result;
    result.host_edge_count = f.edge_count();
    result.copy_length = 2 * ell;
    if (f.edge_count() == 0) return result;
    GammaTables tables(f, t);  // throws CodegreeTooSmall on thin shadows
    ExpandWalker walker(f, tables, ell);
    walker.cap = opts.cap;
    if (opts.mode == ExpandMode::Sampled) {
        Rng rng(opts.seed);
        walker.sampled = true;
        walker.rng = &rng;
        walker.run_sampled(opts.sample_count);
        result.copies = std::move(walker.out);
    } else {
        walker.run_exhaustive();
        result.copies = std::move(walker.out);
    }
    result.truncated = walker.truncated;
    return result;
}

GreedyCountStats greedy_expand_count(const Hypergraph& f, int t, int ell, bool relax_threshold,
                                     int validate_every) {
    if (f.r() != 3)
        throw Error(ErrorCode::BadParameter, "counting mode implements the r = 3 path filter only");
    check_expand_preconditions(f, t, ell, relax_threshold);
    GreedyCountStats stats;
    stats.edge_load.assign(static_cast<std::size_t>(f.edge_count()), 0);
    if (f.edge_count() == 0) return stats;
    GammaTables tables(f, t);
    ExpandWalker walker(f, tables, ell);
    walker.count_only = true;
    walker.canonical_filter = true;
    walker.validate_every = validate_every;
    walker.run_exhaustive();
    stats.copies = walker.copies;
    stats.paths = walker.paths;
    stats.edge_load = std::move(walker.edge_load);
    stats.validated = walker.validated;
    stats.validation_failures = walker.validation_failures;
    return stats;
}

PartitionOutcome codegree_dichotomy_partition(const Hypergraph& h, const Partition& p,
                                              double threshold) {
    const int r = h.r();
    for (const Edge& e : h.edges()) {
        std::set<int> parts;
        for (int v : e) parts.insert(p.part_of(v));
        if (static_cast<int>(parts.size()) != r)
            throw Error(ErrorCode::BadParameter, "host is not r-partite for the given partition");
    }
    PartitionOutcome outcome;
    outcome.threshold = threshold;
    outcome.partition = p;

    std::map<Edge, std::vector<int>> shadow_edges;
    if (h.edge_count() > 0) shadow_edges = shadows(h, r - 1).entries;
    std::vector<char> alive(static_cast<std::size_t>(h.edge_count()), 1);
    std::map<Edge, int> alive_count;
    for (auto& [sigma, ids] : shadow_edges) alive_count[sigma] = static_cast<int>(ids.size());

    std::map<BucketKey, std::vector<int>> bucket_edges;
    while (true) {
        const Edge* chosen = nullptr;
        for (auto& [sigma, cnt] : alive_count) {
            if (cnt > 0 && static_cast<double>(cnt) < threshold) {
                chosen = &sigma;
                break;  // lexicographically smallest qualifying shadow
            }
        }
        if (!chosen) break;
        const Edge sigma = *chosen;
        int degree = alive_count[sigma];
        RemovalEvent event;
        event.sigma = sigma;
        event.degree_at_removal = degree;
        std::set<int> parts;
        for (int v : sigma) parts.insert(p.part_of(v));
        event.bucket.parts.assign(parts.begin(), parts.end());
        event.bucket.a = 0;
        while ((1 << (event.bucket.a + 1)) <= degree) ++event.bucket.a;
        for (int id : shadow_edges[sigma]) {
            if (!alive[static_cast<std::size_t>(id)]) continue;
            alive[static_cast<std::size_t>(id)] = 0;
            event.edge_ids.push_back(id);
            // downdate every shadow of the removed edge
            const Edge& e = h.edge(id);
            for (int pos = 0; pos < r; ++pos) {
                Edge s;
                for (int q = 0; q < r; ++q)
                    if (q != pos) s.push_back(e[static_cast<std::size_t>(q)]);
                --alive_count[s];
            }
        }
        bucket_edges[event.bucket].insert(bucket_edges[event.bucket].end(), event.edge_ids.begin(),
                                          event.edge_ids.end());
        outcome.removals.push_back(std::move(event));
    }

    std::vector<int> core_ids;
    for (int id = 0; id < h.edge_count(); ++id)
        if (alive[static_cast<std::size_t>(id)]) core_ids.push_back(id);
    outcome.core = h.subgraph(core_ids);
    for (auto& [key, ids] : bucket_edges) outcome.buckets.emplace(key, h.subgraph(ids));
    return outcome;
}

double threshold_A(int r, int ell, double t, double n, ThresholdVariant variant) {
    if (n < 3 || t <= 0) throw Error(ErrorCode::BadParameter, "need n >= 3 and t > 0");
    if (ell < 2) throw Error(ErrorCode::BadParameter, "need ell >= 2");
    const double l = ell;
    const double logn = std::log(n);
    switch (variant) {
        case ThresholdVariant::Linear3: {
            if (r != 3) throw Error(ErrorCode::BadParameter, "Linear3 threshold needs r = 3");
            double den = 4 * l * l - 5 * l + 2;
            return std::pow(t / logn, (2 * l - 1) * l / den) *
                   std::pow(n, (2 * l - 1) * (l - 1) / den);
        }
        case ThresholdVariant::LinearGe4: {
            if (r < 4) throw Error(ErrorCode::BadParameter, "LinearGe4 threshold needs r >= 4");
            double den = (2 * l - 1) * r - 2 * l;
            return std::pow(t / std::pow(logn, r - 2), (2 * l - 1) / den) *
                   std::pow(n, ((2 * l - 1) * r - 4 * l + 1) / den);
        }
        case ThresholdVariant::Berge: {
            if (r < 3) throw Error(ErrorCode::BadParameter, "Berge threshold needs r >= 3");
            double den = 2 * (r - 1) * l * l - (r + 2) * l + 2;
            return std::pow(t / std::pow(logn, r - 2), l * (2 * l - 1) / den);
        }
    }
    throw Error(ErrorCode::BadParameter, "unknown threshold variant");
}

CycleCopy linear_to_berge(const Hypergraph& host, const CycleCopy& linear) {
    if (linear.kind != CycleKind::Linear)
        throw Error(ErrorCode::BadParameter, "expected a linear copy");
    const int len = static_cast<int>(linear.edge_ids.size());
    CycleCopy berge;
    berge.kind = CycleKind::Berge;
    berge.edge_ids = linear.edge_ids;
    const int rm1 = host.r() - 1;
    // ring vertex shared by e_i and e_{i+1} sits at the end of block i
    for (int i = 1; i <= len; ++i)
        berge.witness.push_back(linear.witness[static_cast<std::size_t>(i * rm1 - 1)]);
    return berge;
}

CycleCollection collapse_to_edge_sets(const CycleCollection& s) {
    CycleCollection result;
    result.host_edge_count = s.host_edge_count;
    result.copy_length = s.copy_length;
    result.truncated = s.truncated;
    std::set<std::vector<int>> seen;
    for (const CycleCopy& c : s.copies) {
        std::vector<int> key = c.edge_ids;
        std::sort(key.begin(), key.end());
        if (seen.insert(std::move(key)).second) result.copies.push_back(c);
    }
    return result;
}

CycleCollection shadow_extend(const CycleCollection& shadow_copies, const Hypergraph& g,
                              const Hypergraph& host, bool distinct, const ExtendOptions& opts) {
    if (host.r() != g.r() + 1)
        throw Error(ErrorCode::BadParameter, "host uniformity must exceed the shadow's by one");
    CycleCollection result;
    result.host_edge_count = host.edge_count();
    result.copy_length = shadow_copies.copy_length;
    if (shadow_copies.empty()) return result;
    ShadowMap host_shadows = shadows(host, host.r() - 1);

    std::set<std::vector<int>> seen;
    for (const CycleCopy& base : shadow_copies.copies) {
        const int len = static_cast<int>(base.edge_ids.size());
        std::vector<const std::vector<int>*> ext(static_cast<std::size_t>(len));
        for (int i = 0; i < len; ++i) {
            const Edge& ge = g.edge(base.edge_ids[static_cast<std::size_t>(i)]);
            auto it = host_shadows.entries.find(ge);
            if (it == host_shadows.entries.end() || it->second.empty())
                throw Error(ErrorCode::DanglingShadow, "shadow edge has no extension in the host");
            ext[static_cast<std::size_t>(i)] = &it->second;
        }
        std::vector<char> copy_vertex(static_cast<std::size_t>(host.n()), 0);
        if (distinct)
            for (int v : base.witness) copy_vertex[static_cast<std::size_t>(v)] = 1;
        std::vector<int> chosen(static_cast<std::size_t>(len), -1);
        std::vector<char> fresh_used(static_cast<std::size_t>(host.n()), 0);

        auto emit = [&]() {
            if (distinct) {
                std::vector<int> cycle = chosen;
                result.copies.push_back(make_linear_copy(host, cycle));
            } else {
                CycleCopy c;
                c.kind = CycleKind::Berge;
                c.edge_ids = chosen;
                c.witness = base.kind == CycleKind::Berge
                                ? base.witness
                                : linear_to_berge(g, base).witness;
                if (!seen.insert(copy_key(c)).second) return;
                result.copies.push_back(std::move(c));
            }
            if (result.copies.size() >= opts.cap) result.truncated = true;
        };

        auto dfs = [&](auto&& self, int i) -> void {
            if (result.truncated) return;
            if (i == len) {
                emit();
                return;
            }
            const Edge& ge = g.edge(base.edge_ids[static_cast<std::size_t>(i)]);
            for (int host_id : *ext[static_cast<std::size_t>(i)]) {
                bool dup = false;
                for (int q = 0; q < i; ++q)
                    if (chosen[static_cast<std::size_t>(q)] == host_id) dup = true;
                if (dup) continue;  // Berge edges must stay pairwise distinct
                int x = -1;
                for (int v : host.edge(host_id))
                    if (!std::binary_search(ge.begin(), ge.end(), v)) x = v;
                if (distinct) {
                    if (copy_vertex[static_cast<std::size_t>(x)] || fresh_used[static_cast<std::size_t>(x)])
                        continue;
                    fresh_used[static_cast<std::size_t>(x)] = 1;
                }
                chosen[static_cast<std::size_t>(i)] = host_id;
                self(self, i + 1);
                chosen[static_cast<std::size_t>(i)] = -1;
                if (distinct) fresh_used[static_cast<std::size_t>(x)] = 0;
                if (result.truncated) return;
            }
        };
        dfs(dfs, 0);
        if (result.truncated) break;
    }
    return result;
}

double berge_lambda(int r, int ell) {
    if (ell < 2) throw Error(ErrorCode::BadParameter, "need ell >= 2");
    return static_cast<double>(r - 2) / (2.0 * ell - 2.0);
}

double BalanceBound::base() const {
    const double l = ell;
    const double logn = std::log(n);
    switch (variant) {
        case BoundVariant::Graph2:
            return std::max(std::pow(t, -l / (l - 1)),
                            std::pow(t, -1.0) * std::pow(n, -(l - 1) / (l * (2 * l - 1))));
        case BoundVariant::Linear3: {
            double den = 4 * l * l - 5 * l + 2;
            return std::max(std::pow(t / logn, -l * (4 * l - 3) / den) *
                                std::pow(n, -(l - 1) * (4 * l - 3) / den),
                            std::pow(t / logn, -1.0) * std::pow(n, -(2 * l - 2) / (2 * l - 1)));
        }
        case BoundVariant::LinearGe4:
            return std::pow(t / std::pow(logn, r - 2), -1.0) *
                   std::pow(n, -static_cast<double>(r) + 2.0 + 1.0 / (2 * l - 1));
        case BoundVariant::Berge: {
            double den = 2 * (r - 1) * l * l - (r + 2) * l + 2;
            double tt = t / std::pow(logn, r - 2);
            return std::max(std::pow(tt, -(2 * (r - 1) * l * l - r * l) / den),
                            std::pow(tt, -1.0) * std::pow(n, -(l - 1) / (l * (2 * l - 1))));
        }
    }
    throw Error(ErrorCode::BadParameter, "unknown bound variant");
}

double BalanceBound::prefactor() const {
    const double l = ell;
    const double logn = std::log(n);
    switch (variant) {
        case BoundVariant::Graph2:
            return 1.0 / (t * std::pow(n, 1.0 + 1.0 / l));
        case BoundVariant::Linear3:
            return logn / (t * n * n);
        case BoundVariant::LinearGe4:
            return std::pow(logn, r - 2) / (t * std::pow(n, r - 1));
        case BoundVariant::Berge:
            return std::pow(logn, r - 2) / (t * std::pow(n, 1.0 + 1.0 / l));
    }
    throw Error(ErrorCode::BadParameter, "unknown bound variant");
}

double BalanceBound::bound_for(std::size_t collection_size, int j) const {
    return c * static_cast<double>(collection_size) * prefactor() * std::pow(base(), j - 1);
}

BalanceReport verify_balance(const CycleCollection& s, const BalanceBound& bound) {
    BalanceReport report;
    report.implied_c = 0.0;
    const int len = s.copy_length;
    std::vector<std::uint64_t> profile;
    if (!s.empty()) profile = delta_profile(s, len);
    for (int j = 1; j <= len; ++j) {
        BalanceReportRow row;
        row.j = j;
        row.delta = s.empty() ? 0 : profile[static_cast<std::size_t>(j - 1)];
        BalanceBound unit = bound;
        unit.c = 1.0;
        row.bound_at_c1 = unit.bound_for(s.size(), j);
        row.ratio = row.bound_at_c1 > 0 ? static_cast<double>(row.delta) / row.bound_at_c1 : 0.0;
        report.implied_c = std::max(report.implied_c, row.ratio);
        report.rows.push_back(row);
    }
    return report;
}

namespace {

nlohmann::json bucket_key_json(const BucketKey& key) {
    return nlohmann::json{{"parts", key.parts}, {"a", key.a}};
}

// Morris-Saxton-shaped base collector: enumerate C_{2l} copies, then greedily
// discard copies through overloaded j-subsets until the target profile holds.
CycleCollection base_collector(const Hypergraph& g, int ell, const SupersatBudget& budget,
                               nlohmann::json& trace) {
    CycleCollection s;
    s.host_edge_count = g.edge_count();
    s.copy_length = 2 * ell;
    trace["r"] = 2;
    trace["edges"] = g.edge_count();
    if (g.edge_count() == 0) return s;

    EnumOptions opts;
    opts.cap = budget.copy_cap;
    EnumResult enumerated = enumerate_cycles(g, CycleFamily::linear(2, 2 * ell), opts);
    s.copies = std::move(enumerated.copies);
    s.truncated = enumerated.truncated;
    trace["enumerated"] = s.copies.size();
    trace["truncated"] = s.truncated;
    if (s.copies.empty()) return s;

    const double t = g.edge_count() / std::pow(g.n(), 1.0 + 1.0 / ell);
    BalanceBound shape{BoundVariant::Graph2, 2, ell, static_cast<double>(g.n()), t,
                       budget.base_prune_c};
    const std::size_t initial = s.copies.size();
    std::vector<double> target(static_cast<std::size_t>(2 * ell + 1), 0.0);
    for (int j = 1; j <= 2 * ell; ++j)
        target[static_cast<std::size_t>(j)] = std::max(1.0, shape.bound_for(initial, j));

    // per-subset loads for each j
    std::vector<std::map<std::vector<int>, std::uint64_t>> loads(static_cast<std::size_t>(2 * ell + 1));
    std::vector<char> alive(s.copies.size(), 1);
    auto subsets_of = [&](const CycleCopy& c, int j, auto&& fn) {
        std::vector<int> ids = c.edge_ids;
        std::sort(ids.begin(), ids.end());
        const int len = static_cast<int>(ids.size());
        std::vector<int> pick(static_cast<std::size_t>(j));
        for (int i = 0; i < j; ++i) pick[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::vector<int> sub(static_cast<std::size_t>(j));
            for (int i = 0; i < j; ++i) sub[static_cast<std::size_t>(i)] = ids[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
            fn(sub);
            int i = j - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == len - j + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int q = i + 1; q < j; ++q)
                pick[static_cast<std::size_t>(q)] = pick[static_cast<std::size_t>(q - 1)] + 1;
        }
    };
    for (std::size_t idx = 0; idx < s.copies.size(); ++idx)
        for (int j = 1; j <= 2 * ell; ++j)
            subsets_of(s.copies[idx], j, [&](const std::vector<int>& sub) { ++loads[static_cast<std::size_t>(j)][sub]; });

    std::size_t discarded = 0;
    while (true) {
        int worst_j = 0;
        const std::vector<int>* worst_sub = nullptr;
        double worst_ratio = 1.0;
        for (int j = 1; j <= 2 * ell; ++j) {
            for (auto& [sub, load] : loads[static_cast<std::size_t>(j)]) {
                double ratio = static_cast<double>(load) / target[static_cast<std::size_t>(j)];
                if (ratio > worst_ratio) {
                    worst_ratio = ratio;
                    worst_j = j;
                    worst_sub = &sub;
                }
            }
        }
        if (!worst_sub) break;
        // drop the alive copy through the worst subset with the heaviest footprint
        std::size_t victim = s.copies.size();
        std::uint64_t victim_weight = 0;
        for (std::size_t idx = 0; idx < s.copies.size(); ++idx) {
            if (!alive[idx]) continue;
            std::vector<int> ids = s.copies[idx].edge_ids;
            std::sort(ids.begin(), ids.end());
            if (!std::includes(ids.begin(), ids.end(), worst_sub->begin(), worst_sub->end())) continue;
            std::uint64_t weight = 0;
            subsets_of(s.copies[idx], 1, [&](const std::vector<int>& sub) { weight += loads[1][sub]; });
            if (victim == s.copies.size() || weight > victim_weight) {
                victim = idx;
                victim_weight = weight;
            }
        }
        if (victim == s.copies.size()) break;
        alive[victim] = 0;
        ++discarded;
        for (int j = 1; j <= 2 * ell; ++j)
            subsets_of(s.copies[victim], j, [&](const std::vector<int>& sub) { --loads[static_cast<std::size_t>(j)][sub]; });
    }
    std::vector<CycleCopy> kept;
    for (std::size_t idx = 0; idx < s.copies.size(); ++idx)
        if (alive[idx]) kept.push_back(std::move(s.copies[idx]));
    s.copies = std::move(kept);
    trace["discarded"] = discarded;
    trace["kept"] = s.copies.size();
    return s;
}

CycleCollection remap_to_parent(const CycleCollection& s, const Hypergraph& sub,
                                const Hypergraph& parent) {
    CycleCollection out;
    out.host_edge_count = parent.edge_count();
    out.copy_length = s.copy_length;
    out.truncated = s.truncated;
    out.copies.reserve(s.copies.size());
    for (const CycleCopy& c : s.copies) {
        CycleCopy mapped = c;
        for (std::size_t i = 0; i < mapped.edge_ids.size(); ++i) {
            int parent_id = parent.edge_id(sub.edge(c.edge_ids[i]));
            if (parent_id < 0) throw Error(ErrorCode::UnknownEdgeId, "edge missing in parent host");
            mapped.edge_ids[i] = parent_id;
        }
        out.copies.push_back(std::move(mapped));
    }
    return out;
}

struct LevelOutput {
    CycleCollection collection;  // over the level host's edge ids
    nlohmann::json trace;
};

double level_density(const Hypergraph& h, int ell, SupersatVariant variant) {
    if (variant == SupersatVariant::Linear && h.r() >= 3)
        return h.edge_count() / std::pow(h.n(), h.r() - 1);
    return h.edge_count() / std::pow(h.n(), 1.0 + 1.0 / ell);
}

LevelOutput supersat_level(const Hypergraph& h, int ell, SupersatVariant variant,
                           const SupersatBudget& budget, int depth);

LevelOutput case_two(const Hypergraph& h, const PartitionOutcome& outcome, int ell,
                     SupersatVariant variant, const SupersatBudget& budget, int depth,
                     double t, nlohmann::json& trace) {
    LevelOutput out;
    out.collection.host_edge_count = h.edge_count();
    out.collection.copy_length = 2 * ell;

    const int r = h.r();
    double cutoff = 0.0;
    if (variant == SupersatVariant::Linear) {
        if (r == 3) {
            cutoff = t / 9.0;
        } else {
            double fact = 1.0, pw = 1.0;
            for (int i = 1; i <= r; ++i) {
                fact *= i;
                pw *= r;
            }
            cutoff = fact * t / (4.0 * pw);
        }
    }
    trace["cutoff"] = cutoff;

    const BucketKey* best_key = nullptr;
    const Hypergraph* best_bucket = nullptr;
    for (const auto& [key, bucket] : outcome.buckets) {
        if (std::pow(2.0, key.a) <= cutoff) continue;
        if (!best_bucket || bucket.edge_count() > best_bucket->edge_count()) {
            best_key = &key;
            best_bucket = &bucket;
        }
    }
    if (!best_bucket || best_bucket->edge_count() == 0) {
        trace["case2_exhausted"] = true;  // no bucket above the cutoff
        return out;
    }
    const Hypergraph& fprime = *best_bucket;
    double d_scale = std::pow(2.0, best_key->a);
    trace["bucket"] = bucket_key_json(*best_key);
    trace["D"] = d_scale;
    trace["e_Fprime"] = fprime.edge_count();

    // G: the (r-1)-shadows of F' inside the bucket's parts (one per edge)
    int missing_part = -1;
    for (int part = 0; part < r; ++part)
        if (std::find(best_key->parts.begin(), best_key->parts.end(), part) == best_key->parts.end())
            missing_part = part;
    std::set<Edge> g_edges;
    for (const Edge& e : fprime.edges()) {
        Edge sigma;
        for (int v : e)
            if (outcome.partition.part_of(v) != missing_part) sigma.push_back(v);
        g_edges.insert(sigma);
    }
    Hypergraph g(h.n(), r - 1, std::vector<Edge>(g_edges.begin(), g_edges.end()));
    trace["e_G"] = g.edge_count();

    LevelOutput rec = supersat_level(g, ell, variant, budget, depth + 1);
    trace["recursion"] = rec.trace;
    if (rec.collection.empty()) return out;

    ExtendOptions ext;
    ext.cap = budget.extend_cap;
    CycleCollection extended =
        shadow_extend(rec.collection, g, fprime, variant == SupersatVariant::Linear, ext);
    trace["extended"] = extended.copies.size();
    trace["extend_truncated"] = extended.truncated;
    out.collection = remap_to_parent(extended, fprime, h);
    out.collection.truncated = extended.truncated;
    return out;
}

LevelOutput supersat_level(const Hypergraph& h, int ell, SupersatVariant variant,
                           const SupersatBudget& budget, int depth) {
    LevelOutput out;
    out.collection.host_edge_count = h.edge_count();
    out.collection.copy_length = 2 * ell;
    nlohmann::json& trace = out.trace;
    trace["r"] = h.r();
    trace["n"] = h.n();
    trace["edges"] = h.edge_count();
    trace["depth"] = depth;

    if (h.r() == 2) {
        nlohmann::json base;
        out.collection = base_collector(h, ell, budget, base);
        trace["base"] = base;
        return out;
    }
    if (h.edge_count() == 0) return out;

    const double t = level_density(h, ell, variant);
    trace["t"] = t;
    double density_floor = budget.density_k;
    if (variant == SupersatVariant::Berge)
        density_floor *= std::pow(std::log(h.n()), h.r() - 2);
    if (t < density_floor) trace["below_density_threshold"] = true;

    PartiteReduction reduction =
        fix_partite_reduction(h, derive_seed(budget.seed, static_cast<std::uint64_t>(depth)),
                              budget.partite_attempts);
    trace["partite_attempts"] = reduction.attempts;
    trace["partite_edges"] = reduction.host.edge_count();

    ThresholdVariant tv = variant == SupersatVariant::Berge
                              ? ThresholdVariant::Berge
                              : (h.r() == 3 ? ThresholdVariant::Linear3 : ThresholdVariant::LinearGe4);
    const double a = threshold_A(h.r(), ell, std::max(t, 1e-9), h.n(), tv);
    trace["A"] = a;

    PartitionOutcome outcome =
        codegree_dichotomy_partition(reduction.host, reduction.partition, a);
    trace["e_F"] = outcome.core.edge_count();
    trace["removal_events"] = outcome.removals.size();
    {
        nlohmann::json buckets = nlohmann::json::array();
        for (const auto& [key, bucket] : outcome.buckets) {
            nlohmann::json row = bucket_key_json(key);
            row["edges"] = bucket.edge_count();
            buckets.push_back(row);
        }
        trace["buckets"] = buckets;
    }

    const double trigger = std::pow(std::max(std::log(h.n()), 2.0), h.r() - 2);
    trace["case1_divisor"] = trigger;
    const bool case1 = outcome.core.edge_count() >=
                       static_cast<double>(reduction.host.edge_count()) / trigger;
    trace["case"] = case1 ? 1 : 2;

    if (case1) {
        // the lemma holds for any t up to the core's minimum shadow codegree,
        // which is >= A by construction; use the measured value, since
        // floor(A) degenerates at desk scale
        int min_codegree = 0;
        if (outcome.core.edge_count() > 0) {
            min_codegree = outcome.core.edge_count();
            for (const auto& [sigma, ids] : shadows(outcome.core, h.r() - 1).entries)
                min_codegree = std::min(min_codegree, static_cast<int>(ids.size()));
        }
        int t_gamma = std::max({1, static_cast<int>(std::floor(a)), min_codegree});
        bool relaxed = t_gamma < 4 * ell * (h.r() - 1);
        trace["t_gamma"] = t_gamma;
        trace["relaxed_threshold"] = relaxed;
        GreedyOptions opts;
        opts.cap = budget.copy_cap;
        opts.relax_threshold = relaxed;
        if (budget.sample_count > 0) {
            opts.mode = ExpandMode::Sampled;
            opts.sample_count = budget.sample_count;
            opts.seed = derive_seed(budget.seed, 1000 + static_cast<std::uint64_t>(depth));
        }
        CycleCollection s = greedy_expand(outcome.core, t_gamma, ell, opts);
        trace["expanded"] = s.copies.size();
        trace["expand_truncated"] = s.truncated;
        out.collection = remap_to_parent(s, outcome.core, h);
        out.collection.truncated = s.truncated;
        if (variant == SupersatVariant::Berge) {
            for (CycleCopy& c : out.collection.copies) c = linear_to_berge(h, c);
        }
        return out;
    }
    return case_two(h, outcome, ell, variant, budget, depth, t, trace);
}

}  // namespace

SupersatResult balanced_supersat(const Hypergraph& h, int ell, SupersatVariant variant,
                                 const SupersatBudget& budget) {
    if (ell < 2) throw Error(ErrorCode::BadParameter, "need ell >= 2");
    const int r = h.r();
    const double n = h.n();
    const double t = level_density(h, ell, variant);

    // precondition: enough edges for the stated density constant
    double needed = budget.density_k;
    if (variant == SupersatVariant::Berge && r >= 3)
        needed *= std::pow(std::log(n), r - 2);
    if (t < needed)
        throw Error(ErrorCode::TooSparse, "density t = " + std::to_string(t) + " below K = " +
                                              std::to_string(needed));

    LevelOutput level = supersat_level(h, ell, variant, budget, 0);

    SupersatResult result;
    result.collection = std::move(level.collection);
    if (variant == SupersatVariant::Berge)
        result.collection = collapse_to_edge_sets(result.collection);

    BoundVariant bv;
    if (variant == SupersatVariant::Berge)
        bv = r == 2 ? BoundVariant::Graph2 : BoundVariant::Berge;
    else
        bv = r == 2 ? BoundVariant::Graph2 : (r == 3 ? BoundVariant::Linear3 : BoundVariant::LinearGe4);
    result.bound = BalanceBound{bv, r, ell, n, t, 1.0};
    BalanceReport report = verify_balance(result.collection, result.bound);
    result.bound.c = report.implied_c;

    result.trace = nlohmann::json::object();
    result.trace["variant"] = variant == SupersatVariant::Berge ? "berge" : "linear";
    result.trace["levels"] = level.trace;
    result.trace["collection_size"] = result.collection.size();
    result.trace["implied_c"] = report.implied_c;
    {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : report.rows)
            rows.push_back({{"j", row.j},
                            {"delta", row.delta},
                            {"bound_at_c1", row.bound_at_c1},
                            {"ratio", row.ratio}});
        result.trace["balance"] = rows;
    }
    return result;
}

}  // namespace turan
