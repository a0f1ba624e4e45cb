#include "turan/containers.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "turan/rng.hpp"

namespace turan {

int GroundSet::count() const {
    int total = 0;
    for (std::uint64_t w : words) total += __builtin_popcountll(w);
    return total;
}

bool GroundSet::contains(const GroundSet& other) const {
    for (std::size_t i = 0; i < words.size(); ++i)
        if (other.words[i] & ~words[i]) return false;
    return true;
}

bool GroundSet::intersects(const GroundSet& other) const {
    for (std::size_t i = 0; i < words.size(); ++i)
        if (words[i] & other.words[i]) return true;
    return false;
}

std::vector<int> GroundSet::elements() const {
    std::vector<int> out;
    for (int i = 0; i < ground; ++i)
        if (test(i)) out.push_back(i);
    return out;
}

namespace {

struct StepState {
    int ground;
    std::vector<GroundSet> residuals;  // alive copy constraints
    GroundSet excluded;
    std::uint64_t nodes = 0;
    std::uint64_t node_budget = 0;
    bool budget_exceeded = false;
    std::set<GroundSet> emitted;

    explicit StepState(int g) : ground(g), excluded(g) {}

    void emit_container() {
        GroundSet c(ground);
        for (int i = 0; i < ground; ++i)
            if (!excluded.test(i)) c.set(i);
        emitted.insert(std::move(c));
    }

    void branch(std::vector<GroundSet> alive) {
        if (++nodes > node_budget) {
            budget_exceeded = true;
            emit_container();  // conservative container keeps covering sound
            return;
        }
        if (alive.empty()) {
            emit_container();
            return;
        }
        // max-degree ground element in the current trace, lowest id on ties
        std::vector<int> degree(static_cast<std::size_t>(ground), 0);
        for (const GroundSet& res : alive)
            for (int v : res.elements()) ++degree[static_cast<std::size_t>(v)];
        int pivot = -1;
        for (int v = 0; v < ground; ++v)
            if (degree[static_cast<std::size_t>(v)] > 0 &&
                (pivot < 0 || degree[static_cast<std::size_t>(v)] > degree[static_cast<std::size_t>(pivot)]))
                pivot = v;
        if (pivot < 0) {
            emit_container();
            return;
        }

        // exclude branch: constraints through the pivot die
        std::vector<GroundSet> without;
        without.reserve(alive.size());
        for (const GroundSet& res : alive)
            if (!res.test(pivot)) without.push_back(res);
        excluded.set(pivot);
        branch(std::move(without));
        excluded.reset(pivot);

        // include branch: the pivot leaves every residual; an emptied residual
        // means a copy is fully committed, so no independent set lives here
        std::vector<GroundSet> shrunk;
        shrunk.reserve(alive.size());
        for (const GroundSet& res : alive) {
            if (!res.test(pivot)) {
                shrunk.push_back(res);
                continue;
            }
            GroundSet next = res;
            next.reset(pivot);
            if (next.count() == 0) return;  // dead branch
            shrunk.push_back(std::move(next));
        }
        branch(std::move(shrunk));
    }
};

GroundSet mask_of_copy(const CycleCopy& c, int ground) {
    GroundSet m(ground);
    for (int id : c.edge_ids) m.set(id);
    return m;
}

}  // namespace

ContainerFamily container_step(const CycleCollection& s, double b_param, double l_param,
                               const ContainerOptions& opts) {
    const int ground = s.host_edge_count;
    if (s.empty())
        throw Error(ErrorCode::HypothesisViolated, "collection is empty (e(S) = 0)");
    if (l_param <= 0 || b_param <= 0)
        throw Error(ErrorCode::BadParameter, "B and L must be positive");

    std::vector<std::uint64_t> profile = delta_profile(s, s.copy_length);
    for (int j = 1; j <= s.copy_length; ++j) {
        double rhs = std::pow(b_param / ground, j - 1) * static_cast<double>(s.size()) / l_param;
        rhs *= 1.0 + 1e-9;  // fitted parameters sit exactly on the bound
        if (static_cast<double>(profile[static_cast<std::size_t>(j - 1)]) > rhs)
            throw Error(ErrorCode::HypothesisViolated,
                        "Delta_" + std::to_string(j) + " = " +
                            std::to_string(profile[static_cast<std::size_t>(j - 1)]) +
                            " exceeds (B/v)^{j-1} e(S)/L = " + std::to_string(rhs));
    }

    StepState state(ground);
    state.node_budget = opts.node_budget;
    std::vector<GroundSet> residuals;
    residuals.reserve(s.size());
    for (const CycleCopy& c : s.copies) residuals.push_back(mask_of_copy(c, ground));
    state.branch(std::move(residuals));

    ContainerFamily family;
    family.ground = ground;
    family.b_param = b_param;
    family.l_param = l_param;
    family.epsilon = opts.epsilon;
    family.depth = 1;
    family.budget_exceeded = state.budget_exceeded;
    family.containers.assign(state.emitted.begin(), state.emitted.end());

    double min_omitted = static_cast<double>(ground);
    for (const GroundSet& c : family.containers)
        min_omitted = std::min(min_omitted, static_cast<double>(ground - c.count()));
    family.achieved_epsilon = l_param > 0 ? min_omitted / l_param : 0.0;

    if (ground <= opts.verify_ground_limit) {
        std::vector<GroundSet> copy_masks;
        for (const CycleCopy& c : s.copies) copy_masks.push_back(mask_of_copy(c, ground));
        family.verification = verify_covering_exhaustive(ground, copy_masks, family.containers)
                                  ? CoverVerification::Verified
                                  : CoverVerification::Failed;
    } else {
        family.verification = CoverVerification::Skipped;
    }
    return family;
}

bool verify_covering_exhaustive(int ground, const std::vector<GroundSet>& copy_masks,
                                const std::vector<GroundSet>& containers) {
    if (ground > 30) throw Error(ErrorCode::TooLarge, "exhaustive covering check beyond 2^30");
    const std::uint64_t total = std::uint64_t{1} << ground;
    std::vector<std::uint64_t> copies64, containers64;
    for (const GroundSet& m : copy_masks) copies64.push_back(m.words.empty() ? 0 : m.words[0]);
    for (const GroundSet& m : containers) containers64.push_back(m.words.empty() ? 0 : m.words[0]);
    for (std::uint64_t sub = 0; sub < total; ++sub) {
        bool covered = false;
        for (std::uint64_t c : containers64)
            if ((sub & ~c) == 0) {
                covered = true;
                break;
            }
        if (covered) continue;
        bool independent = true;
        for (std::uint64_t m : copies64)
            if ((m & ~sub) == 0) {
                independent = false;
                break;
            }
        if (independent) return false;  // an uncovered independent set
    }
    return true;
}

IterationSchedule make_schedule(int n, int r, int ell, double t_target, double epsilon,
                                bool berge_unit) {
    if (epsilon <= 0) throw Error(ErrorCode::BadParameter, "epsilon must be positive");
    IterationSchedule sched;
    sched.unit_exponent = berge_unit ? 1.0 + 1.0 / ell : static_cast<double>(r - 1);
    sched.t0 = static_cast<double>(binomial(n, r)) / std::pow(n, sched.unit_exponent);
    sched.ratio = std::exp(-epsilon / std::pow(std::log(n), r - 2));
    sched.target = t_target;
    sched.ts.push_back(sched.t0);
    double t = sched.t0;
    while (t > t_target) {
        t *= sched.ratio;
        sched.ts.push_back(t);
        ++sched.m;
    }
    return sched;
}

namespace {

// B and L from a fitted balance bound, shaped so the container hypothesis
// holds with equality at the worst j: L = 1/(c * prefactor), B = v(S) * base.
void container_params(const BalanceBound& bound, int ground, double& b_param, double& l_param) {
    double c = std::max(bound.c, 1e-12);
    b_param = static_cast<double>(ground) * bound.base();
    l_param = 1.0 / (c * bound.prefactor());
}

}  // namespace

IterateResult iterate_containers(int n, int r, int ell, double t_target, IterateVariant variant,
                                 const IterateOptions& opts) {
    IterateResult result;
    result.root = complete_hypergraph(n, r);
    const bool berge = variant == IterateVariant::Berge;
    result.schedule = make_schedule(n, r, ell, t_target, opts.epsilon, berge);
    const double unit = std::pow(n, result.schedule.unit_exponent);

    const int ground = result.root.edge_count();
    GroundSet full(ground);
    for (int i = 0; i < ground; ++i) full.set(i);
    std::set<GroundSet> family{full};
    std::set<GroundSet> terminal;  // cannot shrink (no copies or no progress)

    nlohmann::json rounds = nlohmann::json::array();
    std::uint64_t steps = 0;

    for (int i = 0; i < result.schedule.m && !result.budget_exceeded; ++i) {
        const double target_edges = result.schedule.ts[static_cast<std::size_t>(i + 1)] * unit;
        nlohmann::json round;
        round["i"] = i + 1;
        round["target_edges"] = target_edges;
        int applications = 0;
        int terminals = 0;

        std::vector<GroundSet> queue;
        for (auto it = family.begin(); it != family.end();) {
            if (static_cast<double>(it->count()) > target_edges && !terminal.count(*it)) {
                queue.push_back(*it);
                it = family.erase(it);
            } else {
                ++it;
            }
        }

        while (!queue.empty()) {
            if (++steps > opts.max_steps) {
                result.budget_exceeded = true;
                for (const GroundSet& g : queue) family.insert(g);
                break;
            }
            GroundSet current = queue.back();
            queue.pop_back();
            std::vector<int> ids = current.elements();
            Hypergraph sub = result.root.subgraph(ids);

            SupersatResult ss;
            bool have_copies = false;
            try {
                SupersatBudget budget = opts.supersat;
                budget.seed = derive_seed(opts.supersat.seed, steps);
                ss = balanced_supersat(sub, ell,
                                       berge ? SupersatVariant::Berge : SupersatVariant::Linear,
                                       budget);
                have_copies = !ss.collection.empty();
            } catch (const Error& err) {
                if (err.code() != ErrorCode::TooSparse) throw;
            }
            if (!have_copies) {
                terminal.insert(current);
                family.insert(current);
                ++terminals;
                continue;
            }
            double b_param = 0, l_param = 0;
            container_params(ss.bound, sub.edge_count(), b_param, l_param);
            ContainerFamily step = container_step(ss.collection, b_param, l_param, opts.step);
            ++applications;
            for (const GroundSet& child_local : step.containers) {
                GroundSet child(ground);
                for (int local : child_local.elements())
                    child.set(ids[static_cast<std::size_t>(local)]);
                if (child == current) {  // no shrink (budget-cut leaf)
                    terminal.insert(child);
                    family.insert(child);
                    ++terminals;
                } else if (static_cast<double>(child.count()) > target_edges &&
                           !terminal.count(child)) {
                    queue.push_back(child);
                } else {
                    family.insert(child);
                }
            }
        }
        round["applications"] = applications;
        round["terminal_containers"] = terminals;
        round["family_size"] = family.size();
        rounds.push_back(round);
    }

    result.family.ground = ground;
    result.family.epsilon = opts.epsilon;
    result.family.depth = result.schedule.m;
    result.family.containers.assign(family.begin(), family.end());
    result.family.budget_exceeded = result.budget_exceeded;
    result.family.verification = CoverVerification::Skipped;
    result.trace = nlohmann::json::object();
    result.trace["rounds"] = rounds;
    result.trace["final_family"] = family.size();
    return result;
}

}  // namespace turan
