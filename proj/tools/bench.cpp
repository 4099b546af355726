// Benchmark harness: single runs, distance sweeps and lockstep checks.
//
// Exit codes: 0 success, 1 usage error, 2 lockstep divergence.

#include <fdr/bench.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

auto parse_mode(const std::string & text) -> std::optional<fdr::SearchMode::Kind>
{
    if (text.empty())
        return std::nullopt;
    if (text == "first" || text == "one")
        return fdr::SearchMode::Kind::first_solution;
    if (text == "all")
        return fdr::SearchMode::Kind::all_solutions;
    if (text == "best")
        return fdr::SearchMode::Kind::best_solution;
    throw std::invalid_argument("unknown mode '" + text + "' (known: first, all, best)");
}

auto open_output(const std::string & path, std::ofstream & file) -> std::ostream &
{
    if (path.empty())
        return std::cout;
    file.open(path);
    if (! file)
        throw std::invalid_argument("cannot write " + path);
    return file;
}

auto note_model(const std::string & model) -> void
{
    if (model.starts_with("queens-s"))
        std::cerr << "note: queens-s counts 2n auxiliary linear links on top of its 3 alldiff propagators\n";
}

} // namespace

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Search-state restoration benchmark"};
    app.require_subcommand(1);

    std::string model = "queens:8", strategy = "copy", flavor = "chunk", mode, out;
    std::optional<std::size_t> distance;
    std::size_t repeats = 1;
    bool verify = false;
    std::uint64_t budget = fdr::default_verify_budget;

    auto * run_cmd = app.add_subcommand("run", "run one model with one strategy");
    run_cmd->add_option("--model", model, "model, e.g. queens:8, langford:2,4, alpha");
    run_cmd->add_option("--strategy", strategy, "copy, trail, recomp[-fixed|-adaptive][:d], recollect[-fixed|-adaptive][:d]");
    run_cmd->add_option("--d", distance, "copy distance");
    run_cmd->add_option("--flavor", flavor, "recollection restore order: chunk or variable");
    run_cmd->add_option("--mode", mode, "first, all or best (default: the model's own)");
    run_cmd->add_option("--repeats", repeats, "timed repetitions");
    run_cmd->add_flag("--verify", verify, "lockstep check against copying");
    run_cmd->add_option("--budget", budget, "node budget for --verify");
    run_cmd->add_option("--out", out, "CSV output file (default stdout)");

    std::vector<std::string> models{"queens:20", "golomb:9"};
    std::vector<std::string> strategies{"recomp-fixed", "recollect-fixed"};
    std::vector<std::size_t> distances = fdr::default_sweep_distances();
    auto * sweep_cmd = app.add_subcommand("sweep", "run models x strategies x distances");
    sweep_cmd->add_option("--models", models, "model list");
    sweep_cmd->add_option("--strategies", strategies, "strategy list");
    sweep_cmd->add_option("--distances", distances, "copy distances")->delimiter(',');
    sweep_cmd->add_option("--flavor", flavor, "recollection restore order: chunk or variable");
    sweep_cmd->add_option("--mode", mode, "first, all or best (default: each model's own)");
    sweep_cmd->add_option("--repeats", repeats, "timed repetitions per cell");
    sweep_cmd->add_flag("--verify", verify, "lockstep check of every cell against copying");
    sweep_cmd->add_option("--budget", budget, "node budget for --verify");
    sweep_cmd->add_option("--out", out, "CSV output file (default stdout)");

    std::string a = "copy", b = "recollect";
    auto * verify_cmd = app.add_subcommand("verify", "step two strategies in lockstep and diff every restore");
    verify_cmd->add_option("--model", model, "model");
    verify_cmd->add_option("--a", a, "reference strategy");
    verify_cmd->add_option("--b", b, "strategy under test");
    verify_cmd->add_option("--d", distance, "copy distance for both strategies");
    verify_cmd->add_option("--flavor", flavor, "recollection restore order: chunk or variable");
    verify_cmd->add_option("--mode", mode, "first, all or best (default: the model's own)");
    verify_cmd->add_option("--budget", budget, "node budget");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        fdr::RunConfig config;
        config.strategy.flavor = fdr::parse_flavor(flavor);
        config.mode = parse_mode(mode);
        config.repeats = repeats;
        config.verify = verify;
        config.verify_budget = budget;
        config.bytes = fdr::ByteModel::from_environment();

        if (run_cmd->parsed()) {
            config.model = model;
            config.strategy = fdr::StrategyConfig::parse(strategy, distance, config.strategy.flavor);
            note_model(model);
            auto result = fdr::run(config);
            std::ofstream file;
            auto & os = open_output(out, file);
            os << fdr::csv_header() << '\n' << fdr::csv_row(result) << '\n';
            if (result.cv_warning)
                std::cerr << "warning: time coefficient of variation " << result.time_cv << " exceeds 2%\n";
            if (result.verification) {
                std::cerr << "verify: " << result.verification->summary() << '\n';
                if (! result.verification->clean)
                    return 2;
            }
            return 0;
        }

        if (sweep_cmd->parsed()) {
            for (const auto & m : models)
                note_model(m);
            auto cells = fdr::sweep(models, strategies, distances, config);
            std::ofstream file;
            fdr::write_csv(open_output(out, file), cells);
            bool diverged = false;
            for (const auto & cell : cells) {
                if (! cell.result)
                    std::cerr << "error: " << cell.config.model << ' ' << cell.strategy_label << ": " << cell.error << '\n';
                else if (cell.result->cv_warning)
                    std::cerr << "warning: " << cell.config.model << ' ' << cell.config.strategy.name()
                              << " time coefficient of variation exceeds 2%\n";
                if (cell.result && cell.result->verified() == false)
                    diverged = true;
            }
            return diverged ? 2 : 0;
        }

        if (verify_cmd->parsed()) {
            auto m = fdr::build_model(model);
            auto search_mode = config.mode ? m.mode_for(*config.mode) : m.default_mode;
            auto sa = fdr::StrategyConfig::parse(a, distance, config.strategy.flavor);
            auto sb = fdr::StrategyConfig::parse(b, distance, config.strategy.flavor);
            auto report = fdr::verify_lockstep(m, search_mode, sa, sb, budget);
            std::cout << model << ": " << sa.name() << " vs " << sb.name() << " (" << fdr::flavor_name(sb.flavor)
                      << "): " << report.summary() << '\n';
            if (report.budget_exceeded)
                return 1;
            return report.clean && report.fix_point_violations == 0 ? 0 : 2;
        }
    }
    catch (const std::invalid_argument & e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
