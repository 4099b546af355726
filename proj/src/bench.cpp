#include <fdr/bench.hpp>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fdr {

namespace {

    struct Compared {
        Status status;
        Store store;
    };

    /// Restored state as seen by the next node: with the incumbent bound
    /// applied and propagated when there is one.
    auto normalise(const State & restored, const Engine & engine) -> Compared
    {
        if (! engine.incumbent())
            return {restored.status(), restored.store()};
        State s = restored;
        ChangeLog scratch;
        inject_bound(s, *engine.mode().objective, *engine.incumbent(), scratch);
        propagate(s, scratch);
        if (s.failed())
            return {Status::failed, {}};
        return {s.status(), s.store()};
    }

    auto is_quiet_fix_point(const State & restored) -> bool
    {
        State s = restored;
        s.schedule_all();
        ChangeLog log;
        auto result = propagate(s, log);
        return result.outcome == Outcome::fix_point && log.empty();
    }

    auto outcome_name(std::optional<Outcome> o) -> std::string
    {
        if (! o)
            return "finished";
        switch (*o) {
        case Outcome::solved: return "solved";
        case Outcome::inconsistency: return "inconsistency";
        case Outcome::fix_point: return "fix_point";
        }
        return "?";
    }

    auto join_params(const std::vector<int> & params) -> std::string
    {
        std::string out;
        for (std::size_t i = 0; i < params.size(); ++i)
            out += (i ? ";" : "") + std::to_string(params[i]);
        return out;
    }

    auto distance_field(const StrategyConfig & s) -> std::string
    {
        if (s.uses_distance())
            return std::to_string(s.distance);
        if (s.technique == Technique::recomp || s.technique == Technique::recollect)
            return "inf";
        return "-";
    }

    auto flavor_field(const StrategyConfig & s) -> std::string
    {
        return s.technique == Technique::recollect ? std::string(flavor_name(s.flavor)) : "-";
    }

    auto technique_field(const StrategyConfig & s) -> std::string
    {
        auto name = s.name();
        return name.substr(0, name.find(':'));
    }

} // namespace

auto LockstepReport::summary() const -> std::string
{
    std::ostringstream out;
    if (budget_exceeded)
        out << "node budget exceeded after " << nodes << " nodes";
    else if (clean)
        out << "clean: " << nodes << " nodes, " << restores << " restores compared";
    else {
        const auto & d = *divergence;
        out << "divergence at node " << d.node << ", restore " << d.restore_index << ", depth " << d.depth << ": " << d.what;
        if (d.var)
            out << " (var " << d.var->index << ": " << (d.a ? d.a->to_string() : "-") << " vs "
                << (d.b ? d.b->to_string() : "-") << ")";
    }
    if (fix_point_violations)
        out << "; " << fix_point_violations << " restored states were not fix points";
    return out.str();
}

auto verify_lockstep(const Model & model, SearchMode mode, std::unique_ptr<Strategy> a, std::unique_ptr<Strategy> b,
    std::uint64_t node_budget) -> LockstepReport
{
    LockstepReport report;
    Engine ea(model.root, mode, std::move(a));
    Engine eb(model.root, mode, std::move(b));

    std::optional<State> restored_a, restored_b;
    std::size_t depth_a = 0, depth_b = 0;
    ea.on_restore = [&](const State & s, const PathStack & st) {
        restored_a = s;
        depth_a = st.size();
        if (! is_quiet_fix_point(s))
            ++report.fix_point_violations;
    };
    eb.on_restore = [&](const State & s, const PathStack & st) {
        restored_b = s;
        depth_b = st.size();
        if (! is_quiet_fix_point(s))
            ++report.fix_point_violations;
    };

    auto diverge = [&](std::string what) {
        report.clean = false;
        report.divergence = Divergence{ea.stats().nodes, report.restores, depth_a, std::nullopt, std::nullopt, std::nullopt, std::move(what)};
    };

    while (! ea.done() || ! eb.done()) {
        if (node_budget && ea.stats().nodes >= node_budget) {
            report.budget_exceeded = true;
            report.clean = false;
            break;
        }
        restored_a.reset();
        restored_b.reset();
        auto oa = ea.step();
        auto ob = eb.step();
        if (oa != ob) {
            diverge("node outcome " + outcome_name(oa) + " vs " + outcome_name(ob));
            break;
        }
        if (restored_a.has_value() != restored_b.has_value()) {
            diverge("only one strategy restored");
            break;
        }
        if (! restored_a)
            continue;

        if (depth_a != depth_b) {
            diverge("restored depth " + std::to_string(depth_a) + " vs " + std::to_string(depth_b));
            break;
        }
        auto ca = normalise(*restored_a, ea);
        auto cb = normalise(*restored_b, eb);
        if (ca.status != cb.status) {
            diverge("restored status differs");
            break;
        }
        bool differs = false;
        for (std::uint32_t v = 0; v < ca.store.size() && ! differs; ++v)
            if (ca.store[v] != cb.store[v]) {
                diverge("restored domains differ");
                report.divergence->var = VarId{v};
                report.divergence->a = ca.store[v];
                report.divergence->b = cb.store[v];
                differs = true;
            }
        if (differs)
            break;
        ++report.restores;
    }

    report.nodes = ea.stats().nodes;
    if (report.clean) {
        auto sa = ea.stats(), sb = eb.stats();
        if (ea.solutions() != eb.solutions())
            diverge("solution lists differ");
        else if (sa.nodes != sb.nodes || sa.failures != sb.failures || sa.max_depth != sb.max_depth)
            diverge("final statistics differ");
    }
    return report;
}

auto verify_lockstep(const Model & model, SearchMode mode, const StrategyConfig & a, const StrategyConfig & b,
    std::uint64_t node_budget) -> LockstepReport
{
    return verify_lockstep(model, mode, make_strategy(a), make_strategy(b), node_budget);
}

auto RunResult::verified() const -> std::optional<bool>
{
    if (! verification)
        return std::nullopt;
    return verification->clean;
}

auto run(const RunConfig & config) -> RunResult
{
    if (config.repeats == 0)
        throw std::invalid_argument("repeats must be at least 1");

    auto model = build_model(config.model);
    RunResult result;
    result.config = config;
    result.model_name = model.name;
    result.params = model.params;
    result.mode = config.mode ? model.mode_for(*config.mode) : model.default_mode;

    std::vector<double> times;
    for (std::size_t r = 0; r < config.repeats; ++r) {
        auto strategy = make_strategy(config.strategy);
        auto start = std::chrono::steady_clock::now();
        Engine engine(model.root, result.mode, std::move(strategy), config.bytes);
        engine.run();
        auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
        if (r == 0) {
            result.stats = engine.stats();
            result.solutions = engine.solutions();
        }
    }

    double sum = 0;
    for (auto t : times)
        sum += t;
    result.time_ms_mean = sum / static_cast<double>(times.size());
    if (times.size() > 1 && result.time_ms_mean > 0) {
        double sq = 0;
        for (auto t : times)
            sq += (t - result.time_ms_mean) * (t - result.time_ms_mean);
        result.time_cv = std::sqrt(sq / static_cast<double>(times.size() - 1)) / result.time_ms_mean;
    }
    result.cv_warning = result.time_cv > cv_warning_threshold;

    if (config.verify) {
        auto report = verify_lockstep(model, result.mode, StrategyConfig::parse("copy"), config.strategy, config.verify_budget);
        if (report.budget_exceeded)
            throw std::invalid_argument("model " + config.model + " exceeds the verification budget of " +
                std::to_string(config.verify_budget) + " nodes");
        result.verification = std::move(report);
    }
    return result;
}

auto default_sweep_distances() -> std::vector<std::size_t>
{
    return {1, 3, 5, 10, 20, 40, 80, 160, 320};
}

auto sweep(const std::vector<std::string> & models, const std::vector<std::string> & strategies,
    const std::vector<std::size_t> & distances, const RunConfig & base) -> std::vector<SweepCell>
{
    std::vector<SweepCell> cells;
    for (const auto & model : models)
        for (const auto & strategy : strategies)
            for (auto d : distances) {
                SweepCell cell;
                cell.config = base;
                cell.config.model = model;
                try {
                    auto probe = StrategyConfig::parse(strategy, std::nullopt, base.strategy.flavor);
                    cell.config.strategy = probe.uses_distance() ? StrategyConfig::parse(strategy, d, base.strategy.flavor) : probe;
                    cell.result = run(cell.config);
                }
                catch (const std::exception & e) {
                    cell.error = e.what();
                }
                cell.strategy_label = strategy;
                cells.push_back(std::move(cell));
            }
    return cells;
}

auto csv_header() -> std::string
{
    return "model,params,strategy,flavor,d,mode,repeats,time_ms_mean,time_cv,nodes,failures,depth,propagations,solutions,peak_bytes,verified";
}

auto csv_row(const RunResult & r) -> std::string
{
    std::ostringstream out;
    const auto & s = r.config.strategy;
    out << r.model_name << ',' << join_params(r.params) << ',' << technique_field(s) << ',' << flavor_field(s) << ','
        << distance_field(s) << ',' << r.mode.name() << ',' << r.config.repeats << ',' << std::fixed << std::setprecision(3)
        << r.time_ms_mean << ',' << std::setprecision(4) << r.time_cv << ',' << r.stats.nodes << ',' << r.stats.failures
        << ',' << r.stats.max_depth << ',' << r.stats.propagator_executions << ',' << r.stats.solutions << ','
        << r.stats.peak_payload_bytes << ',';
    auto v = r.verified();
    out << (v ? (*v ? "true" : "false") : "-");
    return out.str();
}

auto csv_error_row(const RunConfig & config, const std::string & strategy, const std::string & error) -> std::string
{
    auto colon = config.model.find(':');
    auto name = config.model.substr(0, colon);
    auto params = colon == std::string::npos ? std::string{} : config.model.substr(colon + 1);
    for (auto & ch : params)
        if (ch == ',')
            ch = ';';
    std::string reason = error;
    for (auto & ch : reason)
        if (ch == ',' || ch == '\n')
            ch = ' ';
    std::ostringstream out;
    out << name << ',' << params << ',' << strategy << ",-,-,-," << config.repeats << ",error,,,,,,,," << "error: " << reason;
    return out.str();
}

auto write_csv(std::ostream & out, const std::vector<SweepCell> & cells) -> void
{
    out << csv_header() << '\n';
    for (const auto & cell : cells)
        out << (cell.result ? csv_row(*cell.result) : csv_error_row(cell.config, cell.strategy_label, cell.error)) << '\n';
}

} // namespace fdr
