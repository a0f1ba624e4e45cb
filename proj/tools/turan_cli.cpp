// Command-line workbench for random Turan experiments on hypergraph cycles.
//
// Subcommands: gen, enum, supersat, containers, ex, sweep, plot.
// Exit codes: 0 success, 2 validation error, 3 budget exhausted (partial
// results were still written).

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "turan/containers.hpp"
#include "turan/json_io.hpp"
#include "turan/plot.hpp"
#include "turan/supersat.hpp"
#include "turan/turan_lab.hpp"

using namespace turan;

namespace {

constexpr int kOk = 0;
constexpr int kValidationError = 2;
constexpr int kBudgetExhausted = 3;

CycleFamily parse_family(const std::string& kind, int r, int length) {
    if (kind == "linear") return CycleFamily::linear(r, length);
    if (kind == "berge") return CycleFamily::berge(r, length);
    if (kind == "berge-upto") return CycleFamily::berge_up_to(r, length);
    throw Error(ErrorCode::BadParameter, "unknown family kind '" + kind + "'");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot open " + path);
    out << text;
}

int cmd_gen(int n, int r, double p, long long m, std::uint64_t seed, const std::string& out_path,
            bool have_p, bool have_m) {
    if (have_p == have_m) {
        std::cerr << "gen: provide exactly one of --p or --m\n";
        return kValidationError;
    }
    Hypergraph h = have_p ? gen_gnrp(n, r, p, seed)
                          : gen_with_edge_count(n, r, static_cast<std::uint64_t>(m), seed);
    write_hg_file(h, out_path);
    std::cout << "wrote " << out_path << " with " << h.edge_count() << " edges\n";
    return kOk;
}

int cmd_enum(const std::string& in_path, const std::string& kind, int length, std::uint64_t cap,
             bool count_only, const std::string& out_path) {
    Hypergraph h = read_hg_file(in_path);
    CycleFamily fam = parse_family(kind, h.r(), length);
    if (count_only) {
        std::cout << count_cycles(h, fam).str() << "\n";
        return kOk;
    }
    EnumOptions opts;
    opts.cap = cap;
    EnumResult res = enumerate_cycles(h, fam, opts);
    CycleCollection s;
    s.host_edge_count = h.edge_count();
    s.copy_length = length;
    s.copies = std::move(res.copies);
    s.truncated = res.truncated;
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error(ErrorCode::ParseError, "cannot open " + out_path);
        write_collection_jsonl(s, out);
    } else {
        write_collection_jsonl(s, std::cout);
    }
    std::cout << "copies: " << s.copies.size() << (s.truncated ? " (truncated)" : "") << "\n";
    return s.truncated ? kBudgetExhausted : kOk;
}

int cmd_supersat(const std::string& in_path, int ell, const std::string& variant,
                 std::uint64_t seed, std::uint64_t copy_cap, std::uint64_t samples,
                 const std::string& out_collection, const std::string& out_trace) {
    Hypergraph h = read_hg_file(in_path);
    SupersatBudget budget;
    budget.seed = seed;
    budget.copy_cap = copy_cap;
    budget.extend_cap = copy_cap;
    budget.sample_count = samples;
    SupersatVariant sv;
    if (variant == "linear") sv = SupersatVariant::Linear;
    else if (variant == "berge") sv = SupersatVariant::Berge;
    else throw Error(ErrorCode::BadParameter, "unknown variant '" + variant + "'");

    SupersatResult res = balanced_supersat(h, ell, sv, budget);
    if (!out_collection.empty()) {
        std::ofstream out(out_collection, std::ios::binary);
        if (!out) throw Error(ErrorCode::ParseError, "cannot open " + out_collection);
        write_collection_jsonl(res.collection, out);
    }
    if (!out_trace.empty()) write_text_file(out_trace, res.trace.dump(2) + "\n");
    std::cout << "collection size: " << res.collection.size() << ", implied c: " << res.bound.c
              << (res.collection.truncated ? " (truncated)" : "") << "\n";
    return res.collection.truncated ? kBudgetExhausted : kOk;
}

int cmd_containers(int n, int r, int ell, double t_target, const std::string& variant,
                   double epsilon, std::uint64_t seed, const std::string& out_path) {
    IterateOptions opts;
    opts.epsilon = epsilon;
    opts.supersat.seed = seed;
    IterateVariant iv;
    if (variant == "linear") iv = IterateVariant::Linear;
    else if (variant == "berge") iv = IterateVariant::Berge;
    else throw Error(ErrorCode::BadParameter, "unknown variant '" + variant + "'");

    IterateResult res = iterate_containers(n, r, ell, t_target, iv, opts);
    nlohmann::json doc = family_to_json(res.family);
    doc["schedule"] = {{"t0", res.schedule.t0},
                       {"ratio", res.schedule.ratio},
                       {"m", res.schedule.m},
                       {"unit_exponent", res.schedule.unit_exponent}};
    doc["trace"] = res.trace;
    if (!out_path.empty()) write_text_file(out_path, doc.dump(2) + "\n");
    else std::cout << doc.dump(2) << "\n";
    std::cout << "containers: " << res.family.containers.size()
              << (res.budget_exceeded ? " (budget exceeded)" : "") << "\n";
    return res.budget_exceeded ? kBudgetExhausted : kOk;
}

int cmd_ex(const std::string& in_path, const std::string& kind, int length,
           std::uint64_t node_budget, int restarts, std::uint64_t seed,
           const std::string& out_path) {
    Hypergraph h = read_hg_file(in_path);
    CycleFamily fam = parse_family(kind, h.r(), length);
    ExactBudget budget;
    budget.node_budget = node_budget;
    budget.greedy_restarts = restarts;
    budget.seed = seed;
    ExactResult res = exact_random_turan(h, fam, budget);
    nlohmann::json doc{{"edges", h.edge_count()},
                       {"ex_lower", res.lower},
                       {"ex_upper", res.upper},
                       {"exact", res.exact},
                       {"nodes", res.nodes}};
    if (!out_path.empty()) write_text_file(out_path, doc.dump(2) + "\n");
    std::cout << doc.dump() << "\n";
    return res.exact ? kOk : kBudgetExhausted;
}

int cmd_sweep(const std::string& config_path, std::string out_dir, bool with_timings) {
    std::ifstream in(config_path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + config_path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw Error(ErrorCode::ParseError, std::string("config: ") + err.what());
    }
    SweepConfig cfg = sweep_config_from_json(doc);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    std::filesystem::create_directories(cfg.output_dir);

    SweepOutcome outcome = run_sweep(cfg);
    {
        std::ofstream jsonl(cfg.output_dir + "/records.jsonl", std::ios::binary);
        write_records_jsonl(outcome.records, jsonl, with_timings);
        std::ofstream csv(cfg.output_dir + "/records.csv", std::ios::binary);
        write_records_csv(outcome.records, csv, with_timings);
    }
    emit_plot_file(outcome.records, cfg.r, cfg.ell, cfg.output_dir + "/curve.svg");
    std::cout << "cells: " << outcome.records.size() << ", failed: " << outcome.failed_cells
              << ", exact everywhere: " << (outcome.budget_exhausted ? "no" : "yes") << "\n";
    if (outcome.failed_cells > 0 || outcome.budget_exhausted) return kBudgetExhausted;
    return kOk;
}

int cmd_plot(const std::string& records_path, int r, int ell, const std::string& out_path) {
    std::ifstream in(records_path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + records_path);
    std::vector<ExperimentRecord> records = read_records_jsonl(in);
    emit_plot_file(records, r, ell, out_path);
    std::cout << "wrote " << out_path << " with " << records.size() << " records\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for random Turan experiments on hypergraph cycles"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random host and write it as .hg");
    int gen_n = 10, gen_r = 3;
    double gen_p = 0.0;
    long long gen_m = 0;
    std::uint64_t gen_seed = 1;
    std::string gen_out = "host.hg";
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--r", gen_r, "uniformity")->required();
    auto* popt = gen->add_option("--p", gen_p, "edge probability");
    auto* mopt = gen->add_option("--m", gen_m, "exact edge count");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--out", gen_out, "output path")->required();

    // enum
    auto* en = app.add_subcommand("enum", "enumerate or count cycle copies");
    std::string enum_in, enum_kind = "linear", enum_out;
    int enum_length = 4;
    std::uint64_t enum_cap = 10'000'000;
    bool enum_count_only = false;
    en->add_option("--in", enum_in, "host .hg file")->required();
    en->add_option("--kind", enum_kind, "linear | berge | berge-upto");
    en->add_option("--length", enum_length, "cycle length")->required();
    en->add_option("--cap", enum_cap, "copy cap");
    en->add_flag("--count-only", enum_count_only, "print the count only");
    en->add_option("--out", enum_out, "JSON-lines output path");

    // supersat
    auto* ss = app.add_subcommand("supersat", "run the balanced supersaturation constructor");
    std::string ss_in, ss_variant = "linear", ss_coll, ss_trace;
    int ss_ell = 2;
    std::uint64_t ss_seed = 1, ss_cap = 500'000, ss_samples = 0;
    ss->add_option("--in", ss_in, "host .hg file")->required();
    ss->add_option("--ell", ss_ell, "half cycle length");
    ss->add_option("--variant", ss_variant, "linear | berge");
    ss->add_option("--seed", ss_seed, "rng seed");
    ss->add_option("--copy-cap", ss_cap, "per-level copy cap");
    ss->add_option("--samples", ss_samples, "sampled expansion runs (0 = exhaustive)");
    ss->add_option("--out-collection", ss_coll, "collection JSON-lines path");
    ss->add_option("--out-trace", ss_trace, "trace JSON path");

    // containers
    auto* co = app.add_subcommand("containers", "iterated container construction from K^r_n");
    int co_n = 8, co_r = 2, co_ell = 2;
    double co_target = 1.0, co_eps = 0.1;
    std::string co_variant = "linear", co_out;
    std::uint64_t co_seed = 1;
    co->add_option("--n", co_n, "vertex count")->required();
    co->add_option("--r", co_r, "uniformity")->required();
    co->add_option("--ell", co_ell, "half cycle length");
    co->add_option("--t-target", co_target, "stop density")->required();
    co->add_option("--variant", co_variant, "linear | berge");
    co->add_option("--epsilon", co_eps, "schedule epsilon");
    co->add_option("--seed", co_seed, "rng seed");
    co->add_option("--out", co_out, "family JSON path");

    // ex
    auto* ex = app.add_subcommand("ex", "exact or certified-interval Turan number of a host");
    std::string ex_in, ex_kind = "linear", ex_out;
    int ex_length = 4, ex_restarts = 16;
    std::uint64_t ex_nodes = 5'000'000, ex_seed = 1;
    ex->add_option("--in", ex_in, "host .hg file")->required();
    ex->add_option("--kind", ex_kind, "linear | berge | berge-upto");
    ex->add_option("--length", ex_length, "cycle length")->required();
    ex->add_option("--nodes", ex_nodes, "branch-and-bound node budget");
    ex->add_option("--restarts", ex_restarts, "greedy incumbent restarts");
    ex->add_option("--seed", ex_seed, "rng seed");
    ex->add_option("--out", ex_out, "result JSON path");

    // sweep
    auto* sw = app.add_subcommand("sweep", "run a grid of cells from a config file");
    std::string sw_config, sw_out;
    bool sw_timings = false;
    sw->add_option("--config", sw_config, "JSON config path")->required();
    sw->add_option("--out-dir", sw_out, "output directory (overrides config)");
    sw->add_flag("--timings", sw_timings, "include wall-clock timings in outputs");

    // plot
    auto* pl = app.add_subcommand("plot", "render records as a deterministic SVG");
    std::string pl_records, pl_out = "curve.svg";
    int pl_r = 3, pl_ell = 2;
    pl->add_option("--records", pl_records, "records JSON-lines path")->required();
    pl->add_option("--r", pl_r, "uniformity");
    pl->add_option("--ell", pl_ell, "half cycle length");
    pl->add_option("--out", pl_out, "SVG output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kValidationError;
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_n, gen_r, gen_p, gen_m, gen_seed, gen_out, popt->count() > 0,
                           mopt->count() > 0);
        if (en->parsed())
            return cmd_enum(enum_in, enum_kind, enum_length, enum_cap, enum_count_only, enum_out);
        if (ss->parsed())
            return cmd_supersat(ss_in, ss_ell, ss_variant, ss_seed, ss_cap, ss_samples, ss_coll,
                                ss_trace);
        if (co->parsed())
            return cmd_containers(co_n, co_r, co_ell, co_target, co_variant, co_eps, co_seed,
                                  co_out);
        if (ex->parsed())
            return cmd_ex(ex_in, ex_kind, ex_length, ex_nodes, ex_restarts, ex_seed, ex_out);
        if (sw->parsed()) return cmd_sweep(sw_config, sw_out, sw_timings);
        if (pl->parsed()) return cmd_plot(pl_records, pl_r, pl_ell, pl_out);
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kValidationError;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kValidationError;
    }
    return kValidationError;
}
