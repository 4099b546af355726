// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "oracles.hpp"

#include <fdr/bench.hpp>
#include <fdr/models.hpp>
#include <fdr/search.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace fdr;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    auto fail(const std::string & why) -> void
    {
        if (pass)
            detail = why;
        pass = false;
    }
};

auto report(int number, const std::string & title, const Verdict & v, double seconds) -> bool
{
    std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << number << ": " << title << " - " << v.detail;
    std::cout << " [" << std::fixed;
    std::cout.precision(1);
    std::cout << seconds << "s]" << std::endl;
    return v.pass;
}

template <typename F>
auto timed(F && f) -> std::pair<Verdict, double>
{
    auto start = std::chrono::steady_clock::now();
    Verdict v = f();
    auto stop = std::chrono::steady_clock::now();
    return {v, std::chrono::duration<double>(stop - start).count()};
}

struct Case {
    std::string model;
    SearchMode::Kind mode;
};

const std::vector<Case> independence_corpus{
    {"queens:8", SearchMode::Kind::all_solutions},
    {"queens-s:8", SearchMode::Kind::all_solutions},
    {"magic-square:3", SearchMode::Kind::all_solutions},
    {"alpha", SearchMode::Kind::all_solutions},
    {"langford:2,4", SearchMode::Kind::all_solutions},
    {"golomb:7", SearchMode::Kind::best_solution},
};

auto all_configurations() -> std::vector<StrategyConfig>
{
    std::vector<StrategyConfig> out;
    for (auto name : {"copy", "trail", "recomp", "recomp-fixed:8", "recomp-adaptive:8"})
        out.push_back(StrategyConfig::parse(name));
    for (auto flavor : {Flavor::chunk_centered, Flavor::variable_centered})
        for (auto name : {"recollect", "recollect-fixed:8", "recollect-adaptive:8"})
            out.push_back(StrategyConfig::parse(name, std::nullopt, flavor));
    return out;
}

auto label(const StrategyConfig & c) -> std::string
{
    return c.technique == Technique::recollect ? c.name() + "/" + std::string(flavor_name(c.flavor)) : c.name();
}

auto criterion_1() -> Verdict
{
    Verdict v;
    auto configs = all_configurations();
    std::size_t runs = 0;
    for (const auto & c : independence_corpus) {
        auto m = build_model(c.model);
        auto mode = m.mode_for(c.mode);
        auto ref = dfs(m.root, configs.front(), mode);
        for (std::size_t i = 1; i < configs.size(); ++i) {
            auto r = dfs(m.root, configs[i], mode);
            ++runs;
            if (r.solutions != ref.solutions)
                v.fail(c.model + " " + label(configs[i]) + ": solutions differ from copy");
            else if (r.stats.nodes != ref.stats.nodes || r.stats.failures != ref.stats.failures ||
                r.stats.max_depth != ref.stats.max_depth)
                v.fail(c.model + " " + label(configs[i]) + ": nodes/failures/depth differ from copy");
        }
    }
    if (v.pass)
        v.detail = std::to_string(independence_corpus.size()) + " models x " + std::to_string(configs.size()) +
            " configurations agree with copying (" + std::to_string(runs) + " comparisons)";
    return v;
}

auto criterion_2() -> Verdict
{
    Verdict v;
    std::ostringstream got;
    auto expect = [&](const std::string & what, long solver, long brute, long stated) {
        got << what << "=" << solver << " ";
        if (solver != brute || brute != stated)
            v.fail(what + ": solver " + std::to_string(solver) + ", enumeration " + std::to_string(brute) + ", stated " +
                std::to_string(stated));
    };

    auto q8 = build_model("queens:8");
    expect("queens:8", static_cast<long>(dfs(q8.root, {}, SearchMode::all()).solutions.size()), oracle::queens_count(8), 92);
    auto q4 = build_model("queens:4");
    expect("queens:4", static_cast<long>(dfs(q4.root, {}, SearchMode::all()).solutions.size()), oracle::queens_count(4), 2);

    auto alpha = build_alpha();
    std::vector<oracle::WordSum> words;
    for (const auto & e : alpha_equations())
        words.push_back({e.word, e.sum});
    auto alpha_sols = dfs(alpha.root, {}, SearchMode::all()).solutions;
    auto brute_alpha = oracle::alpha_solutions(words);
    expect("alpha", static_cast<long>(alpha_sols.size()), static_cast<long>(brute_alpha.size()), 1);
    if (alpha_sols != brute_alpha)
        v.fail("alpha: solver and enumerator found different assignments");

    for (auto [marks, stated] : {std::pair{4, 6}, std::pair{7, 25}}) {
        auto g = build_golomb(marks);
        auto r = dfs(g.root, {}, g.default_mode);
        long best = r.solutions.empty() ? -1 : r.solutions.back()[g.objective->index];
        expect("golomb:" + std::to_string(marks), best, oracle::golomb_optimum(marks), stated);
    }
    if (v.pass)
        v.detail = got.str() + "(all equal to independent enumeration)";
    return v;
}

struct LockstepTotals {
    Verdict clean;
    Verdict quiet;
};

auto criteria_3_and_4() -> LockstepTotals
{
    LockstepTotals t;
    const std::vector<Case> corpus{
        {"queens:6", SearchMode::Kind::all_solutions},
        {"magic-square:3", SearchMode::Kind::all_solutions},
        {"golomb:6", SearchMode::Kind::best_solution},
    };
    std::vector<StrategyConfig> under_test{
        StrategyConfig::parse("trail"),
        StrategyConfig::parse("recomp"),
        StrategyConfig::parse("recomp-adaptive:8"),
        StrategyConfig::parse("recollect", std::nullopt, Flavor::chunk_centered),
        StrategyConfig::parse("recollect", std::nullopt, Flavor::variable_centered),
    };
    std::uint64_t restores = 0, quiet_checked = 0;
    for (const auto & c : corpus) {
        auto m = build_model(c.model);
        auto mode = m.mode_for(c.mode);
        for (const auto & b : under_test) {
            auto r = verify_lockstep(m, mode, StrategyConfig::parse("copy"), b, 0);
            if (! r.clean)
                t.clean.fail(c.model + " copy vs " + label(b) + ": " + r.summary());
            restores += r.restores;
            if (b.technique == Technique::trail || b.technique == Technique::recollect) {
                quiet_checked += r.restores;
                if (r.fix_point_violations)
                    t.quiet.fail(c.model + " " + label(b) + ": " + std::to_string(r.fix_point_violations) +
                        " restored states changed under re-propagation");
            }
        }
    }
    if (t.clean.pass)
        t.clean.detail = "3 models x 5 strategies clean against copying, " + std::to_string(restores) + " restores compared";
    if (t.quiet.pass)
        t.quiet.detail = std::to_string(quiet_checked) + " trail/recollect restores re-propagated to fix_point with 0 changes";
    return t;
}

const std::vector<std::string> benchmark_models{"queens:20", "queens-s:20", "magic-square:5", "alpha", "langford:3,9", "golomb:10"};

auto peak(const std::string & model, const std::string & strategy) -> std::size_t
{
    auto m = build_model(model);
    return dfs(m.root, StrategyConfig::parse(strategy), m.default_mode).stats.peak_payload_bytes;
}

auto criterion_5() -> Verdict
{
    Verdict v;
    std::ostringstream got;
    for (const auto & model : benchmark_models) {
        auto copy = peak(model, "copy");
        auto rec = peak(model, "recollect-fixed:8");
        auto recomp = peak(model, "recomp-fixed:8");
        got << (got.tellp() > 0 ? "; " : "") << model << " " << copy << ">=" << rec << ">=" << recomp;
        if (! (copy >= rec && rec >= recomp))
            v.fail(model + ": copy " + std::to_string(copy) + ", recollect " + std::to_string(rec) + ", recomp " +
                std::to_string(recomp));
        if (model == "queens:20" && ! (copy > rec))
            v.fail("queens:20: copy is not strictly above recollection");
    }
    if (v.pass)
        v.detail = got.str();
    return v;
}

auto criterion_6() -> Verdict
{
    Verdict v;
    std::size_t checked = 0;
    for (const auto & c : independence_corpus) {
        auto m = build_model(c.model);
        auto mode = m.mode_for(c.mode);
        auto copy = dfs(m.root, StrategyConfig::parse("copy"), mode);
        auto recomp = dfs(m.root, StrategyConfig::parse("recomp-fixed:1"), mode);
        ++checked;
        if (copy.solutions != recomp.solutions || copy.stats.nodes != recomp.stats.nodes ||
            copy.stats.failures != recomp.stats.failures || copy.stats.max_depth != recomp.stats.max_depth)
            v.fail(c.model + ": recomp-fixed:1 tree differs from copy");
        else if (copy.stats.peak_payload_bytes != recomp.stats.peak_payload_bytes)
            v.fail(c.model + ": peak bytes " + std::to_string(recomp.stats.peak_payload_bytes) + " vs copy " +
                std::to_string(copy.stats.peak_payload_bytes));
    }
    if (v.pass)
        v.detail = std::to_string(checked) + " models: recomp-fixed:1 equals copy in tree and peak bytes";
    return v;
}

auto criterion_7() -> Verdict
{
    Verdict v;
    RunConfig base;
    auto distances = default_sweep_distances();
    auto cells = sweep({"queens:20", "golomb:9"}, {"recollect-fixed", "recomp-fixed"}, distances, base);
    std::ofstream csv("acceptance_sweep.csv");
    write_csv(csv, cells);

    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (! cells[i].result) {
            v.fail(cells[i].config.model + " " + cells[i].strategy_label + ": " + cells[i].error);
            continue;
        }
        if (i % distances.size() == 0 || ! cells[i - 1].result)
            continue;
        auto before = cells[i - 1].result->stats.peak_payload_bytes;
        auto now = cells[i].result->stats.peak_payload_bytes;
        if (now > before)
            v.fail(cells[i].config.model + " " + cells[i].config.strategy.name() + ": peak bytes rose from " +
                std::to_string(before) + " to " + std::to_string(now));
    }
    if (v.pass)
        v.detail = std::to_string(cells.size()) + " sweep cells completed, peak bytes non-increasing in d (rows in acceptance_sweep.csv)";
    return v;
}

auto criterion_8() -> Verdict
{
    Verdict v;
    std::mt19937 rng(8);
    std::size_t cases = 0, attempts = 0;
    while (cases < 2000 && attempts < 20000) {
        ++attempts;
        auto p = oracle::random_problem(rng, 8, 10);
        auto & s = p.root;
        ChangeLog log(LogMode::pre_images);
        if (propagate(s, log).outcome != Outcome::fix_point)
            continue;

        // nested bursts, each undone in reverse order
        std::vector<Store> images;
        std::vector<std::vector<UndoEntry>> trail;
        std::uniform_int_distribution<std::uint32_t> var(0, static_cast<std::uint32_t>(s.num_vars() - 1));
        for (int level = 0; level < 4 && ! s.failed(); ++level) {
            images.push_back(s.store());
            log.clear();
            VarId x{var(rng)};
            std::uniform_int_distribution<int> val(p.lo[x.index], p.hi[x.index]);
            if (rng() % 2)
                s.assign(x, val(rng), log);
            else
                s.remove(x, val(rng), log);
            if (! s.failed())
                propagate(s, log);
            trail.push_back(log.take_entries());
            if (s.status() != Status::active)
                break;
        }
        while (! images.empty()) {
            undo(s, trail.back());
            if (s.store() != images.back()) {
                v.fail("case " + std::to_string(cases) + ": undo did not restore the prior store");
                break;
            }
            trail.pop_back();
            images.pop_back();
        }
        ++cases;
    }
    if (cases < 1000)
        v.fail("only " + std::to_string(cases) + " cases generated");
    if (v.pass)
        v.detail = std::to_string(cases) + " randomized burst/undo cases restored the exact prior store";
    return v;
}

} // namespace

auto main() -> int
{
    bool ok = true;
    {
        auto [v, t] = timed(criterion_1);
        ok &= report(1, "strategy independence", v, t);
    }
    {
        auto [v, t] = timed(criterion_2);
        ok &= report(2, "solution-count oracles", v, t);
    }
    {
        auto start = std::chrono::steady_clock::now();
        auto totals = criteria_3_and_4();
        double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        ok &= report(3, "lockstep restore equivalence", totals.clean, t);
        ok &= report(4, "restored states are fix points", totals.quiet, t);
    }
    {
        auto [v, t] = timed(criterion_5);
        ok &= report(5, "memory ordering at d=8", v, t);
    }
    {
        auto [v, t] = timed(criterion_6);
        ok &= report(6, "recomputation with d=1 is copying", v, t);
    }
    {
        auto [v, t] = timed(criterion_7);
        ok &= report(7, "distance sweep peak bytes", v, t);
    }
    {
        auto [v, t] = timed(criterion_8);
        ok &= report(8, "trailing round-trip", v, t);
    }
    return ok ? 0 : 1;
}
