#include "sleeproute/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sleeproute/exact.hpp"
#include "sleeproute/heuristic.hpp"
#include "sleeproute/scenario.hpp"
#include "sleeproute/sim.hpp"

namespace sleeproute {

namespace fs = std::filesystem;

namespace {

constexpr const char* kOutDirEnv = "SLEEPROUTE_OUT_DIR";

struct RunSpec {
    std::string scenario_path;
    std::vector<std::string> strategy_args;
    std::vector<std::string> seed_args;
    int horizon = 100;
    int max_horizon = 5000;
    std::string format = "text";
    std::string out_dir;
    std::string out_file;
    std::string mode = "full";
    std::size_t exact_node_cap = 16;
    std::size_t lms_k = 0;
    std::string count_sink_rx;   // "", "true", "false"
    bool sampled_losses = false;
    bool strict = false;
    // gen
    std::size_t gen_nodes = 10;
    std::size_t gen_groups = 4;
    double gen_density = 0.4;
};

std::vector<std::string> split_commas(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (const auto& a : args) {
        std::stringstream ss(a);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<Strategy> parse_strategies(const std::vector<std::string>& args, std::vector<Strategy> fallback) {
    auto names = split_commas(args);
    if (names.empty()) return fallback;
    std::vector<Strategy> out;
    for (const auto& name : names) {
        auto s = parse_strategy(name);
        if (!s)
            throw Error(Errc::InvalidArgument,
                        "unknown strategy '" + name + "' (expected exact, random, max-sp, min-sp, all-active, lms)");
        out.push_back(*s);
    }
    return out;
}

// Accepts "7", "0..29" and comma lists of either.
std::vector<std::uint64_t> parse_seeds(const std::vector<std::string>& args, const std::vector<std::uint64_t>& fallback) {
    auto items = split_commas(args);
    if (items.empty()) return fallback;
    std::vector<std::uint64_t> out;
    auto number = [](const std::string& s) -> std::uint64_t {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw Error(Errc::InvalidArgument, "bad seed '" + s + "'");
        return std::stoull(s);
    };
    for (const auto& item : items) {
        auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(number(item));
            continue;
        }
        std::uint64_t lo = number(item.substr(0, dots)), hi = number(item.substr(dots + 2));
        if (hi < lo) throw Error(Errc::InvalidArgument, "empty seed range '" + item + "'");
        for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    }
    return out;
}

Scenario load_with_overrides(const RunSpec& spec) {
    Scenario sc = load_scenario(spec.scenario_path, spec.strict);
    if (spec.lms_k > 0) {
        if (spec.lms_k >= sc.network.node_count())
            throw Error(Errc::InvalidArgument, "--lms-k cannot exceed the number of sensing nodes");
        sc.lms_k = spec.lms_k;
    }
    if (spec.count_sink_rx == "true") sc.count_sink_rx = true;
    if (spec.count_sink_rx == "false") sc.count_sink_rx = false;
    if (spec.sampled_losses) sc.sampled_losses = true;
    return sc;
}

fs::path output_dir(const RunSpec& spec) {
    fs::path dir = spec.out_dir;
    if (dir.empty()) {
        const char* env = std::getenv(kOutDirEnv);
        dir = env && *env ? env : "out";
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw Error(Errc::InvalidArgument, "output directory '" + dir.string() + "' is not writable");
    return dir;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::InvalidArgument, "cannot write '" + path.string() + "'");
    return f;
}

std::string join_nodes(const std::vector<NodeId>& nodes) {
    std::string s;
    for (NodeId v : nodes) s += (s.empty() ? "" : " ") + std::to_string(v);
    return s;
}

std::string join_links(const std::vector<Link>& links) {
    std::string s;
    for (const Link& l : links) s += (s.empty() ? "" : " ") + std::to_string(l.a) + "-" + std::to_string(l.b);
    return s;
}

std::string format_median(std::vector<int> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return std::to_string(values[n / 2]);
    const int lo = values[n / 2 - 1], hi = values[n / 2];
    if ((lo + hi) % 2 == 0) return std::to_string((lo + hi) / 2);
    return std::to_string((lo + hi) / 2) + ".5";
}

// Runs every (strategy, seed) pair concurrently and returns reports in
// strategy-major, seed-minor order.
std::vector<ExperimentReport> run_all(const Scenario& sc, const std::vector<Strategy>& strategies,
                                      const std::vector<std::uint64_t>& seeds, int horizon,
                                      const ExperimentOptions& options) {
    std::vector<std::future<ExperimentReport>> jobs;
    for (Strategy s : strategies)
        for (std::uint64_t seed : seeds)
            jobs.push_back(std::async(std::launch::async, [&sc, s, seed, horizon, options] {
                return run_experiment(sc, s, horizon, seed, options);
            }));
    std::vector<ExperimentReport> reports;
    for (auto& j : jobs) reports.push_back(j.get());
    return reports;
}

int cmd_solve(const RunSpec& spec, std::ostream& out) {
    Scenario sc = load_with_overrides(spec);
    auto strategies = parse_strategies(spec.strategy_args, {Strategy::MaxSP});
    auto seeds = parse_seeds(spec.seed_args, sc.seeds);
    if (spec.format != "text" && spec.format != "csv")
        throw Error(Errc::InvalidArgument, "--format must be text or csv");

    ProblemInstance inst = build_instance(sc.network, sc.constellations, sc.energy_model, sc.period,
                                          sc.initial_energy, sc.count_sink_rx);
    if (spec.format == "csv") out << "strategy,seed,active,tree_links,objective_mJ\n";
    for (Strategy s : strategies) {
        ActivePlan plan;
        switch (s) {
        case Strategy::Exact: plan = solve_exact(inst, {spec.exact_node_cap}); break;
        case Strategy::Random: plan = solve_heuristic(inst, {Selection::Random, seeds.front()}); break;
        case Strategy::MaxSP: plan = solve_heuristic(inst, {Selection::MaxSP, 0}); break;
        case Strategy::MinSP: plan = solve_heuristic(inst, {Selection::MinSP, 0}); break;
        case Strategy::AllActive:
        case Strategy::Lms: plan = all_active_plan(inst); break;
        }
        const std::string seed = s == Strategy::Random ? std::to_string(seeds.front()) : "";
        if (spec.format == "csv") {
            out << to_string(s) << "," << seed << "," << join_nodes(plan.active) << "," << join_links(plan.tree_links)
                << "," << format_mj(plan.objective) << "\n";
        } else {
            out << "strategy: " << to_string(s) << (seed.empty() ? "" : " (seed " + seed + ")") << "\n"
                << "  active:       " << join_nodes(plan.active) << "\n"
                << "  tree links:   " << join_links(plan.tree_links) << "\n"
                << "  objective mJ: " << format_mj(plan.objective) << "\n";
        }
    }
    return kExitOk;
}

int cmd_simulate(const RunSpec& spec, std::ostream& out) {
    Scenario sc = load_with_overrides(spec);
    auto strategies = parse_strategies(spec.strategy_args, {Strategy::Exact, Strategy::MaxSP, Strategy::MinSP,
                                                            Strategy::Random, Strategy::AllActive, Strategy::Lms});
    auto seeds = parse_seeds(spec.seed_args, sc.seeds);
    if (spec.horizon < 0) throw Error(Errc::InvalidArgument, "--horizon must be non-negative");
    const fs::path dir = output_dir(spec);

    auto reports = run_all(sc, strategies, seeds, spec.horizon, {spec.exact_node_cap});

    std::ofstream periods = open_out(dir / "periods.csv");
    periods << "period,strategy,seed,total_spend_mJ,active_count,alive_count,cumulative_mJ\n";
    std::ofstream summary = open_out(dir / "summary.csv");
    summary << "strategy,seed,periods_run,lifetime_periods,cumulative_mJ\n";
    for (const auto& r : reports) {
        for (std::size_t i = 0; i < r.periods.size(); ++i) {
            const PeriodReport& p = r.periods[i];
            periods << p.period + 1 << "," << to_string(r.strategy) << "," << r.seed << ","
                    << format_mj(p.total_spend) << "," << p.active_count << "," << p.alive_count << ","
                    << format_mj(r.cumulative[i]) << "\n";
        }
        if (spec.horizon == 0) continue;
        summary << to_string(r.strategy) << "," << r.seed << "," << r.periods.size() << ","
                << (r.lifetime ? std::to_string(*r.lifetime) : "horizon") << ","
                << format_mj(r.cumulative.empty() ? Energy{} : r.cumulative.back()) << "\n";
    }

    // Wide cumulative series for the first seed, one column per strategy.
    std::ofstream plot = open_out(dir / "plotdata.csv");
    plot << "period";
    for (Strategy s : strategies) plot << "," << to_string(s);
    plot << "\n";
    std::size_t rows = 0;
    for (std::size_t i = 0; i < strategies.size(); ++i)
        rows = std::max(rows, reports[i * seeds.size()].cumulative.size());
    for (std::size_t t = 0; t < rows; ++t) {
        plot << t + 1;
        for (std::size_t i = 0; i < strategies.size(); ++i) {
            const auto& c = reports[i * seeds.size()].cumulative;
            plot << "," << (t < c.size() ? format_mj(c[t]) : "");
        }
        plot << "\n";
    }

    out << "strategy     seed  periods  cumulative_mJ\n";
    for (const auto& r : reports)
        out << std::left << std::setw(12) << to_string(r.strategy) << " " << std::right << std::setw(4) << r.seed
            << "  " << std::setw(7) << r.periods.size() << "  "
            << format_mj(r.cumulative.empty() ? Energy{} : r.cumulative.back()) << "\n";
    out << "wrote " << (dir / "periods.csv").string() << ", " << (dir / "summary.csv").string() << ", "
        << (dir / "plotdata.csv").string() << "\n";
    return kExitOk;
}

int cmd_lifetime(const RunSpec& spec, std::ostream& out) {
    Scenario sc = load_with_overrides(spec);
    auto strategies = parse_strategies(spec.strategy_args, {Strategy::Exact, Strategy::MaxSP, Strategy::MinSP,
                                                            Strategy::Random, Strategy::AllActive, Strategy::Lms});
    auto seeds = parse_seeds(spec.seed_args, sc.seeds);
    if (spec.max_horizon < 1) throw Error(Errc::InvalidArgument, "--max-horizon must be positive");
    const fs::path dir = output_dir(spec);

    auto reports = run_all(sc, strategies, seeds, spec.max_horizon, {spec.exact_node_cap});

    std::ofstream runs = open_out(dir / "lifetime.csv");
    runs << "strategy,seed,lifetime_periods,horizon_reached\n";
    std::map<Strategy, std::vector<int>> by_strategy;
    for (const auto& r : reports) {
        const int life = r.lifetime.value_or(spec.max_horizon);
        by_strategy[r.strategy].push_back(life);
        runs << to_string(r.strategy) << "," << r.seed << "," << life << "," << (r.lifetime ? "false" : "true")
             << "\n";
    }

    std::ofstream summary = open_out(dir / "lifetime_summary.csv");
    summary << "strategy,runs,min,median,max\n";
    out << "strategy      runs    min  median    max\n";
    for (Strategy s : strategies) {
        const auto& v = by_strategy[s];
        const int lo = *std::min_element(v.begin(), v.end());
        const int hi = *std::max_element(v.begin(), v.end());
        const std::string med = format_median(v);
        summary << to_string(s) << "," << v.size() << "," << lo << "," << med << "," << hi << "\n";
        out << std::left << std::setw(12) << to_string(s) << std::right << std::setw(6) << v.size() << std::setw(7)
            << lo << std::setw(8) << med << std::setw(7) << hi << "\n";
    }
    out << "wrote " << (dir / "lifetime.csv").string() << ", " << (dir / "lifetime_summary.csv").string() << "\n";
    return kExitOk;
}

int cmd_export_ilp(const RunSpec& spec, std::ostream& out) {
    Scenario sc = load_with_overrides(spec);
    SubtourMode mode;
    if (spec.mode == "full")
        mode = SubtourMode::Full;
    else if (spec.mode == "lazy")
        mode = SubtourMode::LazyNote;
    else
        throw Error(Errc::InvalidArgument, "--mode must be full or lazy");
    ProblemInstance inst = build_instance(sc.network, sc.constellations, sc.energy_model, sc.period,
                                          sc.initial_energy, sc.count_sink_rx);
    const std::string text = export_ilp(inst, mode);
    if (spec.out_file.empty()) {
        out << text;
    } else {
        std::ofstream f = open_out(spec.out_file);
        f << text;
    }
    return kExitOk;
}

int cmd_gen(const RunSpec& spec, std::ostream& out) {
    auto seeds = parse_seeds(spec.seed_args, {0});
    Scenario sc = generate_random(spec.gen_nodes, spec.gen_groups, spec.gen_density, seeds.front());
    const std::string text = scenario_to_json(sc).dump(2) + "\n";
    if (spec.out_file.empty()) {
        out << text;
    } else {
        std::ofstream f = open_out(spec.out_file);
        f << text;
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sleep-Route: energy-aware active node selection for correlated sensor networks", "sleeproute"};
    app.require_subcommand(1);
    RunSpec spec;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("scenario", spec.scenario_path, "Scenario file")->required();
        cmd->add_option("--strategy", spec.strategy_args,
                        "exact, random, max-sp, min-sp, all-active, lms (repeatable or comma separated)")
            ->allow_extra_args(false);
        cmd->add_option("--seed,--seeds", spec.seed_args, "Seeds: N, A..B, comma lists (default: scenario seeds)")
            ->allow_extra_args(false);
        cmd->add_option("--exact-node-cap", spec.exact_node_cap, "Largest node count the exact solver accepts");
        cmd->add_option("--lms-k", spec.lms_k, "Reporters per sample for the lms baseline");
        cmd->add_option("--count-sink-rx", spec.count_sink_rx, "Charge receive energy on sink links (true/false)")
            ->check(CLI::IsMember({"true", "false"}));
        cmd->add_flag("--sampled-losses", spec.sampled_losses, "Sample retransmissions instead of expected cost");
        cmd->add_flag("--strict", spec.strict, "Reject unknown scenario keys");
    };

    auto* solve = app.add_subcommand("solve", "Compute one period's active plan");
    add_common(solve);
    solve->add_option("--format", spec.format, "text or csv");

    auto* simulate = app.add_subcommand("simulate", "Multi-period energy simulation");
    add_common(simulate);
    simulate->add_option("--horizon", spec.horizon, "Operational periods to simulate");
    simulate->add_option("--out-dir", spec.out_dir, std::string("Output directory (default $") + kOutDirEnv + " or ./out)");

    auto* life = app.add_subcommand("lifetime", "Network lifetime over seeds");
    add_common(life);
    life->add_option("--max-horizon", spec.max_horizon, "Cap on simulated periods");
    life->add_option("--out-dir", spec.out_dir, std::string("Output directory (default $") + kOutDirEnv + " or ./out)");

    auto* lp = app.add_subcommand("export-ilp", "Write the integer program in LP format");
    add_common(lp);
    lp->add_option("--mode", spec.mode, "full or lazy");
    lp->add_option("--out", spec.out_file, "Output file (default stdout)");

    auto* gen = app.add_subcommand("gen", "Generate a random scenario");
    gen->add_option("--nodes", spec.gen_nodes, "Node count including the sink");
    gen->add_option("--groups", spec.gen_groups, "Constellation count including the sink's");
    gen->add_option("--density", spec.gen_density, "Link probability per node pair");
    gen->add_option("--seed", spec.seed_args, "Generator seed");
    gen->add_option("--out", spec.out_file, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    try {
        if (*solve) return cmd_solve(spec, out);
        if (*simulate) return cmd_simulate(spec, out);
        if (*life) return cmd_lifetime(spec, out);
        if (*lp) return cmd_export_ilp(spec, out);
        if (*gen) return cmd_gen(spec, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (e.code() == Errc::InstanceTooLarge)
            err << "hint: the exact strategy enumerates every active set; pass --exact-node-cap or pick a heuristic\n";
        return is_input_error(e.code()) ? kExitInputError : kExitRunError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRunError;
    }
    return kExitInputError;
}

}  // namespace sleeproute
