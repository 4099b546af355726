#pragma once

#include <fdr/models.hpp>
#include <fdr/restoration.hpp>
#include <fdr/search.hpp>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fdr {

inline constexpr std::uint64_t default_verify_budget = 100'000;
inline constexpr double cv_warning_threshold = 0.02;

struct Divergence {
    std::uint64_t node = 0;          ///< node count of engine A when detected
    std::uint64_t restore_index = 0; ///< 0-based index of the restore event, if any
    std::size_t depth = 0;
    std::optional<VarId> var;
    std::optional<Domain> a, b;
    std::string what;
};

struct LockstepReport {
    bool clean = true;
    bool budget_exceeded = false;
    std::uint64_t nodes = 0;
    std::uint64_t restores = 0;
    /// Restored states that were not fix points when re-propagated with every
    /// propagator scheduled (checked for both strategies).
    std::uint64_t fix_point_violations = 0;
    std::optional<Divergence> divergence;

    [[nodiscard]] auto summary() const -> std::string;
};

/// Runs two strategies over the same tree, one node at a time, and diffs
/// the restored stores at every restore event. With a bound in play the
/// stores are compared after applying it and propagating, since strategies
/// that rebuild from older copies legitimately hold a weaker bound.
auto verify_lockstep(const Model & model, SearchMode mode, std::unique_ptr<Strategy> a, std::unique_ptr<Strategy> b,
    std::uint64_t node_budget = default_verify_budget) -> LockstepReport;

auto verify_lockstep(const Model & model, SearchMode mode, const StrategyConfig & a, const StrategyConfig & b,
    std::uint64_t node_budget = default_verify_budget) -> LockstepReport;

struct RunConfig {
    std::string model = "queens:8";
    StrategyConfig strategy;
    std::optional<SearchMode::Kind> mode; ///< model default when unset
    std::size_t repeats = 1;
    bool verify = false;
    std::uint64_t verify_budget = default_verify_budget;
    ByteModel bytes;
};

struct RunResult {
    RunConfig config;
    std::string model_name;
    std::vector<int> params;
    SearchMode mode;
    double time_ms_mean = 0;
    double time_cv = 0;
    bool cv_warning = false;
    SearchStats stats;
    std::vector<Solution> solutions;
    std::optional<LockstepReport> verification;

    [[nodiscard]] auto verified() const -> std::optional<bool>;
};

/// Throws std::invalid_argument for unknown models or strategies, zero
/// repeats, or verification over budget.
auto run(const RunConfig & config) -> RunResult;

auto default_sweep_distances() -> std::vector<std::size_t>;

struct SweepCell {
    RunConfig config;
    std::string strategy_label;
    std::optional<RunResult> result;
    std::string error;
};

/// Cross product models x strategies x distances, one cell per combination.
/// A failing cell records its error and the sweep carries on.
auto sweep(const std::vector<std::string> & models, const std::vector<std::string> & strategies,
    const std::vector<std::size_t> & distances, const RunConfig & base) -> std::vector<SweepCell>;

auto csv_header() -> std::string;
auto csv_row(const RunResult & r) -> std::string;
auto csv_error_row(const RunConfig & config, const std::string & strategy, const std::string & error) -> std::string;
auto write_csv(std::ostream & out, const std::vector<SweepCell> & cells) -> void;

} // namespace fdr
