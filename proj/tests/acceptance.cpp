// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sleeproute/cli.hpp"
#include "sleeproute/exact.hpp"
#include "sleeproute/heuristic.hpp"
#include "sleeproute/sim.hpp"

using namespace sleeproute;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget_s) {
        o.pass = false;
        o.detail += "; over the " + std::to_string(static_cast<int>(budget_s)) + " s budget";
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const std::vector<std::vector<int>> kTable{
    {1, 0, 0, 0, 0, 0, 0, 0, 0, 0}, {0, 1, 1, 0, 0, 0, 0, 0, 1, 0}, {0, 1, 1, 0, 0, 0, 0, 0, 1, 0},
    {0, 0, 0, 1, 0, 0, 1, 0, 0, 1}, {0, 0, 0, 0, 1, 1, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 1, 0, 1, 0, 0},
    {0, 0, 0, 1, 0, 0, 1, 0, 0, 1}, {0, 0, 0, 0, 1, 1, 0, 1, 0, 0}, {0, 1, 1, 0, 0, 0, 0, 0, 1, 0},
    {0, 0, 0, 1, 0, 0, 1, 0, 0, 1},
};

// Suite shared by the oracle, bound and gap checks.
std::vector<ProblemInstance> small_suite() {
    std::vector<ProblemInstance> out;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const std::size_t n = 3 + i % 7;
        const std::size_t m = std::min<std::size_t>(2 + i % 3, n);
        out.push_back(oracle::random_instance(n, m, 0.4, 1000 + i));
    }
    return out;
}

std::vector<ExperimentReport> simulated;

std::string conservation_problem(const ExperimentReport& r) {
    Energy spent;
    std::vector<Energy> per_node(r.initial_residual.size());
    for (const auto& p : r.periods) {
        spent += p.total_spend;
        for (std::size_t v = 0; v < per_node.size(); ++v) per_node[v] += p.per_node_spend[v];
    }
    Energy drop;
    for (std::size_t v = 0; v < per_node.size(); ++v) {
        if (r.initial_residual[v] - r.final_residual[v] != per_node[v])
            return std::string(to_string(r.strategy)) + " node " + std::to_string(v);
        drop += r.initial_residual[v] - r.final_residual[v];
    }
    if (drop != spent || (!r.cumulative.empty() && r.cumulative.back() != spent))
        return std::string(to_string(r.strategy)) + " totals";
    return {};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

double median(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2.0;
}

}  // namespace

int main() {
    const Scenario paper = load_scenario(SLEEPROUTE_DATA_DIR "/paper9.scn");
    const std::vector<ProblemInstance> suite = small_suite();

    criterion(1, "period energy constants", 1, [] {
        EnergyModel m;
        PeriodConfig c;
        const auto act = period_base_energy(m, c, Mode::Active).nanojoules();
        const auto dor = period_base_energy(m, c, Mode::Dormant).nanojoules();
        return Outcome{act == 236'654'000 && dor == 89'280'000,
                       "active " + format_mj(Energy::from_nanojoules(act)) + " mJ, dormant " +
                           format_mj(Energy::from_nanojoules(dor)) + " mJ"};
    });

    criterion(2, "coverage of reference decision vectors", 1, [] {
        auto set = ConstellationSet::from_matrix(ConstellationMatrix::from_rows(kTable));
        auto vec = [](std::vector<int> v) { return std::vector<bool>(v.begin(), v.end()); };
        const bool b = covers_all(set, vec({1, 1, 1, 0, 0, 1, 1, 0, 0, 0}));
        const bool c = covers_all(set, vec({1, 1, 1, 0, 0, 0, 1, 0, 0, 0}));
        const bool d = covers_all(set, vec({1, 0, 1, 0, 0, 0, 0, 1, 0, 1}));
        return Outcome{b && !c && d, std::string(b ? "valid" : "invalid") + "/" + (c ? "valid" : "invalid") + "/" +
                                         (d ? "valid" : "invalid")};
    });

    criterion(3, "exact solver equals double enumeration", 60, [&] {
        int mismatches = 0;
        for (const auto& p : suite) {
            auto want = oracle::exact_objective(p);
            if (!want || solve_exact(p).objective != *want) ++mismatches;
        }
        return Outcome{mismatches == 0, std::to_string(suite.size()) + " instances, " + std::to_string(mismatches) +
                                            " mismatches"};
    });

    double max_sp_active = 0, random_active = 0;
    criterion(4, "heuristic plans are feasible", 60, [&] {
        std::size_t plans = 0, bad = 0;
        for (std::uint64_t i = 0; i < 1000; ++i) {
            const std::size_t n = 3 + i % 13;
            const std::size_t m = std::min<std::size_t>(2 + i % 5, n);
            auto p = oracle::random_instance(n, m, 0.3, 5000 + i);
            auto check = [&](const ActivePlan& plan) {
                ++plans;
                if (!oracle::check_plan(p, plan).empty() || !plan_violations(p, plan).empty()) ++bad;
                return plan.active.size();
            };
            for (std::uint64_t s = 0; s < 10; ++s)
                random_active += check(solve_heuristic(p, {Selection::Random, s})) / 10.0;
            max_sp_active += check(solve_heuristic(p, {Selection::MaxSP}));
            check(solve_heuristic(p, {Selection::MinSP}));
        }
        max_sp_active /= 1000;
        random_active /= 1000;
        return Outcome{bad == 0, std::to_string(plans) + " plans, " + std::to_string(bad) + " violations"};
    });

    criterion(5, "exact bounds heuristics, max-sp gap below random gap", 60, [&] {
        int above = 0;
        double gap_max = 0, gap_rnd = 0;
        for (const auto& p : suite) {
            const Energy best = solve_exact(p).objective;
            auto gap = [&](const ActivePlan& h) {
                if (h.objective < best) ++above;
                return static_cast<double>((h.objective - best).nanojoules()) / static_cast<double>(best.nanojoules());
            };
            gap_max += gap(solve_heuristic(p, {Selection::MaxSP}));
            gap(solve_heuristic(p, {Selection::MinSP}));
            for (std::uint64_t s = 0; s < 10; ++s) gap_rnd += gap(solve_heuristic(p, {Selection::Random, s})) / 10;
        }
        gap_max /= static_cast<double>(suite.size());
        gap_rnd /= static_cast<double>(suite.size());
        return Outcome{above == 0 && gap_max < gap_rnd, std::to_string(above) + " heuristic plans below exact; mean gap max-sp " +
                                                            fmt(gap_max) + ", random " + fmt(gap_rnd)};
    });

    criterion(6, "max-sp activates no more nodes than random on average", 60, [&] {
        return Outcome{max_sp_active <= random_active,
                       "1000 instances, mean |A| max-sp " + fmt(max_sp_active) + ", random " + fmt(random_active)};
    });

    criterion(7, "100-period cumulative energy ordering", 30, [&] {
        auto total = [&](Strategy s) {
            simulated.push_back(run_experiment(paper, s, 100, 0));
            const auto& c = simulated.back().cumulative;
            return c.empty() ? Energy{} : c.back();
        };
        const Energy ex = total(Strategy::Exact), rnd = total(Strategy::Random), mx = total(Strategy::MaxSP),
                     mn = total(Strategy::MinSP), all = total(Strategy::AllActive), lms = total(Strategy::Lms);
        std::vector<std::string> broken;
        if (!(all > lms)) broken.push_back("all-active <= lms");
        for (auto [name, e] : {std::pair{"random", rnd}, {"max-sp", mx}, {"min-sp", mn}}) {
            if (!(lms > e)) broken.push_back(std::string("lms <= ") + name);
            if (e < ex) broken.push_back(std::string(name) + " < exact");
        }
        std::string detail = "all-active " + format_mj(all) + ", lms " + format_mj(lms) + ", random " + format_mj(rnd) +
                             ", max-sp " + format_mj(mx) + ", min-sp " + format_mj(mn) + ", exact " + format_mj(ex) + " mJ";
        for (const auto& b : broken) detail += "; " + b;
        return Outcome{broken.empty(), detail};
    });

    criterion(8, "median lifetime max-sp above min-sp over 30 seeds", 120, [&] {
        std::vector<int> mx, mn;
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            for (auto [s, out] : {std::pair{Strategy::MaxSP, &mx}, {Strategy::MinSP, &mn}}) {
                simulated.push_back(run_experiment(paper, s, 5000, seed));
                const auto& r = simulated.back();
                out->push_back(r.lifetime.value_or(5000));
            }
        }
        const double a = median(mx), b = median(mn);
        return Outcome{a > b, "median max-sp " + fmt(a) + ", min-sp " + fmt(b) + " periods"};
    });

    criterion(9, "energy conservation and repeatable CSVs", 60, [&] {
        for (std::uint64_t seed = 0; seed < 3; ++seed)
            for (auto s : {Strategy::Random, Strategy::Lms, Strategy::Exact})
                simulated.push_back(run_experiment(paper, s, 5000, seed));
        auto lossy = paper;
        lossy.sampled_losses = true;
        simulated.push_back(run_experiment(lossy, Strategy::MaxSP, 200, 9));
        std::string problem;
        for (const auto& r : simulated)
            if (problem.empty()) problem = conservation_problem(r);

        const fs::path root = fs::temp_directory_path() / "sleeproute_acceptance";
        std::vector<std::string> differing;
        for (int run = 0; run < 2; ++run) {
            fs::remove_all(root / std::to_string(run));
            const std::string dir = (root / std::to_string(run)).string();
            const std::string scn = SLEEPROUTE_DATA_DIR "/paper9.scn";
            const char* argv[] = {"sleeproute", "simulate", "--horizon", "100", "--strategy",
                                  "exact,random,max-sp,min-sp,all-active,lms", "--seeds", "0..4", "--out-dir",
                                  dir.c_str(), scn.c_str()};
            std::ostringstream out, err;
            if (run_cli(static_cast<int>(std::size(argv)), argv, out, err) != kExitOk)
                return Outcome{false, "simulate failed: " + err.str()};
        }
        for (auto f : {"periods.csv", "summary.csv", "plotdata.csv"}) {
            const auto a = slurp(root / "0" / f);
            if (a.empty() || a != slurp(root / "1" / f)) differing.push_back(f);
        }
        std::string detail = std::to_string(simulated.size()) + " simulations " +
                             (problem.empty() ? "balance exactly" : "imbalance at " + problem) + "; CSVs " +
                             (differing.empty() ? "identical" : "differ");
        for (const auto& d : differing) detail += " " + d;
        return Outcome{problem.empty() && differing.empty(), detail};
    });

    criterion(10, "shortest path tree equals Bellman-Ford", 10, [] {
        int mismatches = 0;
        for (std::uint64_t i = 0; i < 200; ++i) {
            const std::size_t n = 2 + i % 11;
            auto scn = generate_random(n, 2, 0.35, 300 + i);
            auto costs = link_costs(scn.network, scn.energy_model);
            auto tree = shortest_path_tree(scn.network, costs);
            auto bf = oracle::bellman_ford(scn.network, costs);
            for (NodeId v = 0; v < n; ++v)
                if (tree.path_cost[v].nanojoules() != bf[v]) ++mismatches;
        }
        return Outcome{mismatches == 0, "200 graphs, " + std::to_string(mismatches) + " distance mismatches"};
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
