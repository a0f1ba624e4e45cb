#include "turan/turan_lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "turan/containers.hpp"
#include "turan/rng.hpp"

namespace turan {

namespace {

// Existence check for a copy through a forced root edge; no canonical pruning.
struct ThroughChecker {
    const Hypergraph& h;
    const CycleFamily& fam;

    bool linear_through(int root) const {
        const int len = fam.length;
        std::vector<char> used(static_cast<std::size_t>(h.n()), 0);
        std::vector<int> chain{root};
        for (int v : h.edge(root)) used[static_cast<std::size_t>(v)] = 1;
        for (int entry : h.edge(root))
            if (extend(chain, used, entry, entry, len)) return true;
        return false;
    }

    bool extend(std::vector<int>& chain, std::vector<char>& used, int prev_entry, int final_link,
                int len) const {
        const Edge& last = h.edge(chain.back());
        const bool closing = static_cast<int>(chain.size()) == len - 1;
        for (int exit : last) {
            if (exit == prev_entry) continue;
            if (closing) {
                if (exit == final_link) continue;
                for (int cand : h.incident_edges(exit)) {
                    if (std::find(chain.begin(), chain.end(), cand) != chain.end()) continue;
                    const Edge& ce = h.edge(cand);
                    if (!std::binary_search(ce.begin(), ce.end(), final_link)) continue;
                    bool ok = true;
                    for (int v : ce)
                        if (used[static_cast<std::size_t>(v)] && v != exit && v != final_link) ok = false;
                    if (ok) return true;
                }
            } else {
                for (int cand : h.incident_edges(exit)) {
                    if (std::find(chain.begin(), chain.end(), cand) != chain.end()) continue;
                    bool ok = true;
                    for (int v : h.edge(cand))
                        if (v != exit && used[static_cast<std::size_t>(v)]) ok = false;
                    if (!ok) continue;
                    chain.push_back(cand);
                    for (int v : h.edge(cand))
                        if (v != exit) used[static_cast<std::size_t>(v)] = 1;
                    bool found = extend(chain, used, exit, final_link, len);
                    for (int v : h.edge(cand))
                        if (v != exit) used[static_cast<std::size_t>(v)] = 0;
                    chain.pop_back();
                    if (found) return true;
                }
            }
        }
        return false;
    }

    bool berge_through(int root, int k) const {
        // root plays e_1, covering {v_k, v_1}
        const Edge& re = h.edge(root);
        std::vector<char> vertex_used(static_cast<std::size_t>(h.n()), 0);
        std::vector<char> edge_used(static_cast<std::size_t>(h.edge_count()), 0);
        edge_used[static_cast<std::size_t>(root)] = 1;
        std::vector<int> core(static_cast<std::size_t>(k), -1);
        for (int v1 : re) {
            for (int vk : re) {
                if (vk == v1) continue;
                core[0] = v1;
                core[static_cast<std::size_t>(k - 1)] = vk;
                vertex_used[static_cast<std::size_t>(v1)] = 1;
                vertex_used[static_cast<std::size_t>(vk)] = 1;
                if (berge_fill(core, vertex_used, edge_used, 1, k)) return true;
                vertex_used[static_cast<std::size_t>(v1)] = 0;
                vertex_used[static_cast<std::size_t>(vk)] = 0;
            }
        }
        return false;
    }

    // choose v_{pos+1} and e_{pos+1}; v_k is already pinned
    bool berge_fill(std::vector<int>& core, std::vector<char>& vertex_used,
                    std::vector<char>& edge_used, int pos, int k) const {
        if (pos == k - 1) {
            // close with e_k covering {v_{k-1}, v_k}
            int a = core[static_cast<std::size_t>(k - 2)];
            int b = core[static_cast<std::size_t>(k - 1)];
            for (int cand : h.incident_edges(a)) {
                if (edge_used[static_cast<std::size_t>(cand)]) continue;
                const Edge& ce = h.edge(cand);
                if (std::binary_search(ce.begin(), ce.end(), b)) return true;
            }
            return false;
        }
        int prev = core[static_cast<std::size_t>(pos - 1)];
        for (int v = 0; v < h.n(); ++v) {
            if (vertex_used[static_cast<std::size_t>(v)]) continue;
            // e_{pos+1} covers {prev, v}
            bool placed = false;
            for (int cand : h.incident_edges(prev)) {
                if (edge_used[static_cast<std::size_t>(cand)]) continue;
                const Edge& ce = h.edge(cand);
                if (!std::binary_search(ce.begin(), ce.end(), v)) continue;
                core[static_cast<std::size_t>(pos)] = v;
                vertex_used[static_cast<std::size_t>(v)] = 1;
                edge_used[static_cast<std::size_t>(cand)] = 1;
                placed = berge_fill(core, vertex_used, edge_used, pos + 1, k);
                edge_used[static_cast<std::size_t>(cand)] = 0;
                vertex_used[static_cast<std::size_t>(v)] = 0;
                if (placed) return true;
            }
        }
        return false;
    }

    bool completes_copy(int root) const {
        if (fam.kind == FamilyKind::Linear) return linear_through(root);
        int low = fam.kind == FamilyKind::BergeUpTo ? 2 : fam.length;
        for (int k = low; k <= fam.length; ++k)
            if (berge_through(root, k)) return true;
        return false;
    }
};

}  // namespace

std::vector<int> greedy_maximal_free(const Hypergraph& h, const CycleFamily& fam,
                                     std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> order(static_cast<std::size_t>(h.edge_count()));
    for (int i = 0; i < h.edge_count(); ++i) order[static_cast<std::size_t>(i)] = i;
    rng.shuffle(order);
    std::vector<int> accepted;
    std::vector<Edge> tuples;
    for (int id : order) {
        tuples.push_back(h.edge(id));
        Hypergraph trial(h.n(), h.r(), tuples);
        ThroughChecker checker{trial, fam};
        if (checker.completes_copy(trial.edge_count() - 1)) {
            tuples.pop_back();
        } else {
            accepted.push_back(id);
        }
    }
    std::sort(accepted.begin(), accepted.end());
    return accepted;
}

int greedy_turan_lower(const Hypergraph& h, const CycleFamily& fam, std::uint64_t seed) {
    return static_cast<int>(greedy_maximal_free(h, fam, seed).size());
}

namespace {

struct BnB {
    int ground;
    std::vector<GroundSet> copies;
    std::vector<std::vector<int>> copies_of_element;
    std::vector<int> order;  // elements, densest first

    std::uint64_t node_budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;
    int best = 0;
    int frontier_upper = 0;  // max optimistic bound over budget-cut nodes

    std::vector<int> missing;  // per copy: elements not yet included
    std::vector<char> dead;    // copy satisfied by an exclusion
    int alive_count = 0;
    GroundSet in_mask;

    BnB(int g, std::vector<GroundSet> copy_masks, std::uint64_t budget)
        : ground(g), copies(std::move(copy_masks)), node_budget(budget), in_mask(g) {
        copies_of_element.assign(static_cast<std::size_t>(ground), {});
        missing.assign(copies.size(), 0);
        dead.assign(copies.size(), 0);
        alive_count = static_cast<int>(copies.size());
        for (std::size_t c = 0; c < copies.size(); ++c) {
            missing[c] = copies[c].count();
            for (int v : copies[c].elements())
                copies_of_element[static_cast<std::size_t>(v)].push_back(static_cast<int>(c));
        }
        order.resize(static_cast<std::size_t>(ground));
        for (int i = 0; i < ground; ++i) order[static_cast<std::size_t>(i)] = i;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return copies_of_element[static_cast<std::size_t>(a)].size() >
                   copies_of_element[static_cast<std::size_t>(b)].size();
        });
    }

    // every live copy forces an exclusion; disjoint residuals force distinct
    // ones, so undecided - packing bounds the admissible includes
    bool packing_prunes(std::size_t idx, int in_count) {
        const int undecided = static_cast<int>(order.size() - idx);
        const int slack = in_count + undecided - best;  // prune once pack >= slack
        if (slack <= 0) return true;
        GroundSet blocked(ground);
        int pack = 0;
        for (std::size_t c = 0; c < copies.size(); ++c) {
            if (dead[c]) continue;
            bool overlap = false;
            for (std::size_t w = 0; w < blocked.words.size(); ++w)
                if (copies[c].words[w] & ~in_mask.words[w] & blocked.words[w]) {
                    overlap = true;
                    break;
                }
            if (overlap) continue;
            for (std::size_t w = 0; w < blocked.words.size(); ++w)
                blocked.words[w] |= copies[c].words[w] & ~in_mask.words[w];
            if (++pack >= slack) return true;
        }
        return false;
    }

    void search(std::size_t idx, int in_count) {
        if (exhausted || nodes++ > node_budget) {
            // record the optimistic bound of every abandoned subtree
            exhausted = true;
            frontier_upper = std::max(frontier_upper,
                                      in_count + static_cast<int>(order.size() - idx));
            return;
        }
        const int undecided = static_cast<int>(order.size() - idx);
        if (alive_count == 0) {  // no constraint left: take everything
            best = std::max(best, in_count + undecided);
            return;
        }
        if (idx == order.size()) {
            best = std::max(best, in_count);
            return;
        }
        if (in_count + undecided <= best) return;
        if (packing_prunes(idx, in_count)) return;
        int v = order[idx];

        // include branch, unless it would complete a live copy
        bool completes = false;
        for (int c : copies_of_element[static_cast<std::size_t>(v)])
            if (!dead[static_cast<std::size_t>(c)] && missing[static_cast<std::size_t>(c)] == 1)
                completes = true;
        if (!completes) {
            for (int c : copies_of_element[static_cast<std::size_t>(v)])
                --missing[static_cast<std::size_t>(c)];
            in_mask.set(v);
            search(idx + 1, in_count + 1);
            in_mask.reset(v);
            for (int c : copies_of_element[static_cast<std::size_t>(v)])
                ++missing[static_cast<std::size_t>(c)];
        }

        // exclude branch: copies through v are satisfied
        std::vector<int> killed;
        for (int c : copies_of_element[static_cast<std::size_t>(v)]) {
            if (!dead[static_cast<std::size_t>(c)]) {
                dead[static_cast<std::size_t>(c)] = 1;
                killed.push_back(c);
            }
        }
        alive_count -= static_cast<int>(killed.size());
        search(idx + 1, in_count);
        alive_count += static_cast<int>(killed.size());
        for (int c : killed) dead[static_cast<std::size_t>(c)] = 0;
    }
};

}  // namespace

ExactResult exact_random_turan(const Hypergraph& h, const CycleFamily& fam,
                               const ExactBudget& budget) {
    ExactResult result;
    const int ground = h.edge_count();
    int greedy_best = 0;
    for (int i = 0; i < budget.greedy_restarts; ++i)
        greedy_best = std::max(greedy_best,
                               greedy_turan_lower(h, fam, derive_seed(budget.seed, static_cast<std::uint64_t>(i))));
    result.lower = greedy_best;
    result.upper = ground;
    if (ground == 0) {
        result.exact = true;
        return result;
    }
    if (ground > budget.max_ground) return result;  // greedy interval only

    EnumOptions opts;
    opts.cap = budget.copy_cap;
    EnumResult enumerated = enumerate_cycles(h, fam, opts);
    if (enumerated.truncated) return result;  // constraints incomplete
    if (enumerated.copies.empty()) {
        result.lower = result.upper = ground;
        result.exact = true;
        return result;
    }
    std::vector<GroundSet> masks;
    masks.reserve(enumerated.copies.size());
    for (const CycleCopy& c : enumerated.copies) {
        GroundSet m(ground);
        for (int id : c.edge_ids) m.set(id);
        masks.push_back(std::move(m));
    }
    BnB solver(ground, std::move(masks), budget.node_budget);
    solver.best = greedy_best;
    solver.search(0, 0);
    result.nodes = solver.nodes;
    result.lower = std::max(result.lower, solver.best);
    if (solver.exhausted) {
        result.upper = std::max(solver.best, solver.frontier_upper);
        result.exact = false;
    } else {
        result.lower = result.upper = solver.best;
        result.exact = true;
    }
    return result;
}

Hypergraph construction_deletion(const Hypergraph& h, const CycleFamily& fam,
                                 std::uint64_t copy_cap) {
    EnumOptions opts;
    opts.cap = copy_cap;
    EnumResult enumerated = enumerate_cycles(h, fam, opts);
    if (enumerated.truncated)
        throw Error(ErrorCode::TooManyCopies, "more than " + std::to_string(copy_cap) + " copies");
    std::vector<char> dead(enumerated.copies.size(), 0);
    std::vector<char> removed(static_cast<std::size_t>(h.edge_count()), 0);
    std::size_t alive = enumerated.copies.size();
    while (alive > 0) {
        std::vector<std::uint64_t> load(static_cast<std::size_t>(h.edge_count()), 0);
        for (std::size_t c = 0; c < enumerated.copies.size(); ++c) {
            if (dead[c]) continue;
            for (int id : enumerated.copies[c].edge_ids) ++load[static_cast<std::size_t>(id)];
        }
        int pick = -1;
        for (int id = 0; id < h.edge_count(); ++id)
            if (!removed[static_cast<std::size_t>(id)] &&
                (pick < 0 || load[static_cast<std::size_t>(id)] > load[static_cast<std::size_t>(pick)]))
                pick = id;
        removed[static_cast<std::size_t>(pick)] = 1;
        for (std::size_t c = 0; c < enumerated.copies.size(); ++c) {
            if (dead[c]) continue;
            for (int id : enumerated.copies[c].edge_ids)
                if (id == pick) {
                    dead[c] = 1;
                    --alive;
                    break;
                }
        }
    }
    std::vector<int> kept;
    for (int id = 0; id < h.edge_count(); ++id)
        if (!removed[static_cast<std::size_t>(id)]) kept.push_back(id);
    return h.subgraph(kept);
}

Hypergraph construction_subsample(const Hypergraph& h, double p_prime, std::uint64_t seed) {
    if (p_prime < 0 || p_prime > 1) throw Error(ErrorCode::BadParameter, "p' must lie in [0, 1]");
    Rng rng(seed);
    std::vector<int> kept;
    for (int id = 0; id < h.edge_count(); ++id)
        if (rng.next_bernoulli(p_prime)) kept.push_back(id);
    return h.subgraph(kept);
}

Hypergraph construction_star(const Hypergraph& h, int v) {
    if (v < 0 || v >= h.n()) throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v));
    return h.subgraph(h.incident_edges(v));
}

BigInt count_free_subgraphs(const Hypergraph& h, const CycleFamily& fam, int m,
                            std::uint64_t subset_cap, std::uint64_t copy_cap) {
    const int ground = h.edge_count();
    if (m < 0 || m > ground) return 0;
    if (m == 0) return 1;
    if (binomial(ground, m) > subset_cap)
        throw Error(ErrorCode::TooLarge, "C(e(H), m) exceeds the cap");
    EnumOptions opts;
    opts.cap = copy_cap;
    EnumResult enumerated = enumerate_cycles(h, fam, opts);
    if (enumerated.truncated)
        throw Error(ErrorCode::TooManyCopies, "copy enumeration truncated");

    std::vector<std::vector<int>> copies_of_element(static_cast<std::size_t>(ground));
    std::vector<int> missing(enumerated.copies.size());
    for (std::size_t c = 0; c < enumerated.copies.size(); ++c) {
        missing[c] = static_cast<int>(enumerated.copies[c].edge_ids.size());
        for (int id : enumerated.copies[c].edge_ids)
            copies_of_element[static_cast<std::size_t>(id)].push_back(static_cast<int>(c));
    }
    std::vector<char> dead(enumerated.copies.size(), 0);
    BigInt total = 0;

    auto dfs = [&](auto&& self, int idx, int chosen) -> void {
        if (chosen == m) {
            ++total;
            return;
        }
        if (ground - idx < m - chosen) return;
        int v = idx;
        // include v unless that completes a live copy
        bool completes = false;
        for (int c : copies_of_element[static_cast<std::size_t>(v)])
            if (!dead[static_cast<std::size_t>(c)] && missing[static_cast<std::size_t>(c)] == 1)
                completes = true;
        if (!completes) {
            for (int c : copies_of_element[static_cast<std::size_t>(v)]) --missing[static_cast<std::size_t>(c)];
            self(self, idx + 1, chosen + 1);
            for (int c : copies_of_element[static_cast<std::size_t>(v)]) ++missing[static_cast<std::size_t>(c)];
        }
        std::vector<int> killed;
        for (int c : copies_of_element[static_cast<std::size_t>(v)])
            if (!dead[static_cast<std::size_t>(c)]) {
                dead[static_cast<std::size_t>(c)] = 1;
                killed.push_back(c);
            }
        self(self, idx + 1, chosen);
        for (int c : killed) dead[static_cast<std::size_t>(c)] = 0;
    };
    dfs(dfs, 0, 0);
    return total;
}

nlohmann::json record_to_json(const ExperimentRecord& rec, bool with_timings) {
    nlohmann::json j;
    j["r"] = rec.r;
    j["ell"] = rec.ell;
    j["n"] = rec.n;
    j["p"] = rec.p;
    j["x"] = rec.x;
    j["seed"] = rec.seed;
    j["estimator"] = rec.estimator;
    j["ex_lower"] = rec.ex_lower;
    j["ex_upper"] = rec.ex_upper;
    j["elapsed_seconds"] = with_timings ? rec.elapsed_seconds : 0.0;
    j["notes"] = rec.notes;
    return j;
}

ExperimentRecord record_from_json(const nlohmann::json& j) {
    ExperimentRecord rec;
    rec.r = j.at("r").get<int>();
    rec.ell = j.at("ell").get<int>();
    rec.n = j.at("n").get<int>();
    rec.p = j.at("p").get<double>();
    rec.x = j.at("x").get<double>();
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.estimator = j.at("estimator").get<std::string>();
    rec.ex_lower = j.at("ex_lower").get<int>();
    rec.ex_upper = j.at("ex_upper").get<int>();
    rec.elapsed_seconds = j.value("elapsed_seconds", 0.0);
    rec.notes = j.value("notes", std::string());
    return rec;
}

void write_records_jsonl(const std::vector<ExperimentRecord>& records, std::ostream& out,
                         bool with_timings) {
    for (const ExperimentRecord& rec : records) out << record_to_json(rec, with_timings).dump() << '\n';
}

std::vector<ExperimentRecord> read_records_jsonl(std::istream& in) {
    std::vector<ExperimentRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            records.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& err) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + err.what());
        }
    }
    return records;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

void write_records_csv(const std::vector<ExperimentRecord>& records, std::ostream& out,
                       bool with_timings) {
    out << "r,ell,n,p,x,seed,estimator,ex_lower,ex_upper,elapsed_seconds,notes\n";
    for (const ExperimentRecord& rec : records) {
        out << rec.r << ',' << rec.ell << ',' << rec.n << ',' << fmt_double(rec.p) << ','
            << fmt_double(rec.x) << ',' << rec.seed << ',' << csv_escape(rec.estimator) << ','
            << rec.ex_lower << ',' << rec.ex_upper << ','
            << fmt_double(with_timings ? rec.elapsed_seconds : 0.0) << ',' << csv_escape(rec.notes)
            << '\n';
    }
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
    SweepConfig cfg;
    cfg.r = j.at("r").get<int>();
    cfg.ell = j.at("ell").get<int>();
    std::string family = j.value("family", std::string("linear"));
    if (family == "linear") cfg.family = FamilyKind::Linear;
    else if (family == "berge") cfg.family = FamilyKind::Berge;
    else if (family == "berge-upto") cfg.family = FamilyKind::BergeUpTo;
    else throw Error(ErrorCode::ParseError, "unknown family '" + family + "'");
    cfg.n_list = j.at("n_list").get<std::vector<int>>();
    cfg.x_list = j.at("x_list").get<std::vector<double>>();
    cfg.reps = j.value("reps", 1);
    cfg.seed = j.value("seeds", std::uint64_t{1});
    cfg.threads = j.value("threads", 1);
    cfg.output_dir = j.value("output_dir", std::string("."));
    if (j.contains("budgets")) {
        const auto& b = j.at("budgets");
        cfg.budget.node_budget = b.value("bnb_nodes", cfg.budget.node_budget);
        cfg.budget.copy_cap = b.value("copy_cap", cfg.budget.copy_cap);
        cfg.budget.max_ground = b.value("exact_max_edges", cfg.budget.max_ground);
        cfg.budget.greedy_restarts = b.value("greedy_restarts", cfg.budget.greedy_restarts);
    }
    if (cfg.n_list.empty() || cfg.x_list.empty())
        throw Error(ErrorCode::ParseError, "n_list and x_list must be nonempty");
    if (cfg.reps < 1) throw Error(ErrorCode::ParseError, "reps must be >= 1");
    return cfg;
}

namespace {

CycleFamily family_for(const SweepConfig& cfg) {
    switch (cfg.family) {
        case FamilyKind::Linear: return CycleFamily::linear(cfg.r, 2 * cfg.ell);
        case FamilyKind::Berge: return CycleFamily::berge(cfg.r, 2 * cfg.ell);
        case FamilyKind::BergeUpTo: return CycleFamily::berge_up_to(cfg.r, 2 * cfg.ell);
    }
    throw Error(ErrorCode::BadParameter, "unknown family kind");
}

ExperimentRecord run_cell(const SweepConfig& cfg, int n, double x, int rep,
                          std::uint64_t cell_seed) {
    auto start = std::chrono::steady_clock::now();
    ExperimentRecord rec;
    rec.r = cfg.r;
    rec.ell = cfg.ell;
    rec.n = n;
    rec.x = x;
    rec.seed = cell_seed;
    double p = std::min(1.0, std::pow(n, x - cfg.r));
    rec.p = p;

    CycleFamily fam = family_for(cfg);
    Hypergraph host = gen_gnrp(n, cfg.r, p, cell_seed);
    std::vector<std::string> notes;

    int lower = 0;
    // star: all edges through the best vertex (free for linear families)
    {
        int best_v = 0;
        for (int v = 1; v < n; ++v)
            if (host.incident_edges(v).size() > host.incident_edges(best_v).size()) best_v = v;
        Hypergraph star = construction_star(host, best_v);
        if (is_family_free(star, fam)) lower = std::max(lower, star.edge_count());
        else notes.push_back("star-not-free");
    }
    // deletion
    try {
        Hypergraph deleted = construction_deletion(host, fam, cfg.budget.copy_cap);
        lower = std::max(lower, deleted.edge_count());
    } catch (const Error&) {
        notes.push_back("deletion-skipped");
    }
    // subsample to the middle-range density, then delete
    {
        double p_target = std::pow(n, -cfg.r + 1.0 + 1.0 / (2.0 * cfg.ell - 1.0));
        double p_prime = p > 0 ? std::min(1.0, p_target / p) : 1.0;
        if (p_prime < 1.0) {
            Hypergraph thin = construction_subsample(host, p_prime, derive_seed(cell_seed, 7));
            try {
                Hypergraph deleted = construction_deletion(thin, fam, cfg.budget.copy_cap);
                lower = std::max(lower, deleted.edge_count());
            } catch (const Error&) {
                notes.push_back("subsample-deletion-skipped");
            }
        }
    }
    ExactBudget budget = cfg.budget;
    budget.seed = derive_seed(cell_seed, 11);
    ExactResult exact = exact_random_turan(host, fam, budget);
    rec.ex_lower = std::max(lower, exact.lower);
    rec.ex_upper = std::max(rec.ex_lower, exact.upper);
    rec.estimator = exact.exact ? "exact" : (exact.nodes > 0 ? "bnb-interval" : "greedy-interval");
    if (exact.exact) rec.ex_lower = rec.ex_upper = std::max(rec.ex_lower, exact.upper);
    (void)rep;
    std::sort(notes.begin(), notes.end());
    for (std::size_t i = 0; i < notes.size(); ++i) {
        if (i) rec.notes += ";";
        rec.notes += notes[i];
    }
    rec.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

}  // namespace

SweepOutcome run_sweep(const SweepConfig& cfg) {
    struct Cell {
        int n;
        double x;
        int rep;
        std::uint64_t index;
    };
    std::vector<Cell> cells;
    std::uint64_t index = 0;
    for (int n : cfg.n_list)
        for (double x : cfg.x_list)
            for (int rep = 0; rep < cfg.reps; ++rep) cells.push_back(Cell{n, x, rep, index++});

    SweepOutcome outcome;
    outcome.records.resize(cells.size());
    std::vector<char> failed(cells.size(), 0);

    auto work = [&](std::size_t i) {
        const Cell& cell = cells[i];
        std::uint64_t cell_seed = derive_seed(cfg.seed, cell.index);
        try {
            outcome.records[i] = run_cell(cfg, cell.n, cell.x, cell.rep, cell_seed);
        } catch (const std::exception& err) {
            ExperimentRecord rec;
            rec.r = cfg.r;
            rec.ell = cfg.ell;
            rec.n = cell.n;
            rec.x = cell.x;
            rec.seed = cell_seed;
            rec.estimator = "failed";
            rec.notes = err.what();
            outcome.records[i] = rec;
            failed[i] = 1;
        }
    };

    if (cfg.threads <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        int workers = std::min<int>(cfg.threads, static_cast<int>(cells.size()));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= cells.size()) break;
                    work(i);
                }
            });
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (failed[i]) ++outcome.failed_cells;
        else if (outcome.records[i].estimator != "exact") outcome.budget_exhausted = true;
    }
    return outcome;
}

double predicted_exponent_lower(int r, int ell, double x) {
    (void)r;
    double plateau = 1.0 + 1.0 / (2.0 * ell - 1.0);
    return std::min(x, std::max(plateau, x - 1.0));
}

double predicted_exponent_upper(int r, int ell, double x) {
    if (r != 3) return predicted_exponent_lower(r, ell, x);
    const double l = ell;
    double window_lo = 2.0 + 1.0 / (4.0 * l - 2.0);
    double window_hi = 2.0 + (2.0 * l - 1.0) / (4.0 * l * l - 5.0 * l + 2.0);
    if (x <= window_lo || x >= window_hi) return predicted_exponent_lower(r, ell, x);
    return 2.0 * (l - 1.0) / (l * (4.0 * l - 3.0)) * x +
           (4.0 * l * l - 5.0 * l + 3.0) / (l * (4.0 * l - 3.0));
}

double marker_p0(int ell, double n) {
    const double l = ell;
    return std::pow(n, -(4 * l - 3) / (4 * l - 2)) *
           std::pow(std::log(n), (4 * l * l + l - 4) / (2 * l - 2));
}

double marker_p1(int ell, double n) {
    const double l = ell;
    const double den = 4 * l * l - 5 * l + 2;
    return std::pow(n, -(l - 1) * (4 * l - 3) / den) *
           std::pow(std::log(n), 3.0 + (2 * l - 2) / den);
}

}  // namespace turan
