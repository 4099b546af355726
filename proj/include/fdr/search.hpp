#pragma once

#include <fdr/branching.hpp>
#include <fdr/propagation.hpp>
#include <fdr/restoration.hpp>
#include <fdr/state.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fdr {

struct SearchMode {
    enum class Kind { first_solution, all_solutions, best_solution };

    Kind kind = Kind::first_solution;
    std::optional<VarId> objective; ///< minimized; present iff best_solution

    static auto first() -> SearchMode { return {Kind::first_solution, std::nullopt}; }
    static auto all() -> SearchMode { return {Kind::all_solutions, std::nullopt}; }
    static auto minimize(VarId objective) -> SearchMode { return {Kind::best_solution, objective}; }

    [[nodiscard]] auto name() const -> std::string_view;

    friend auto operator==(const SearchMode &, const SearchMode &) -> bool = default;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t failures = 0;
    std::uint64_t solutions = 0;
    std::uint64_t max_depth = 0;
    std::uint64_t propagator_executions = 0;
    std::size_t peak_payload_bytes = 0;
};

using Solution = std::vector<int>;

struct SearchResult {
    std::vector<Solution> solutions;
    SearchStats stats;
};

/// Posts objective <= incumbent - 1 as a bound tightening.
auto inject_bound(State & s, VarId objective, int incumbent, ChangeLog & log) -> void;

/// Depth-first search driven one node at a time.
///
/// Each step runs one propagation and reacts to its outcome: a fix point
/// is recorded and branched on, a failure or an emitted solution asks the
/// strategy to restore the nearest open choice, which then gets its second
/// alternative. In best-solution mode every restored state first receives
/// the current bound.
class Engine {
public:
    Engine(const State & root, SearchMode mode, std::unique_ptr<Strategy> strategy, ByteModel bytes = {});

    /// Explores one node. Returns the propagation outcome, or nullopt once
    /// the search is finished.
    auto step() -> std::optional<Outcome>;

    /// Steps until finished, or until `node_limit` nodes have been explored.
    auto run(std::uint64_t node_limit = 0) -> void;

    [[nodiscard]] auto done() const -> bool { return _done; }
    [[nodiscard]] auto stats() const -> SearchStats;
    [[nodiscard]] auto solutions() const -> const std::vector<Solution> & { return _solutions; }
    [[nodiscard]] auto state() const -> const State & { return _state; }
    [[nodiscard]] auto stack() const -> const PathStack & { return _stack; }
    [[nodiscard]] auto mode() const -> const SearchMode & { return _mode; }
    [[nodiscard]] auto incumbent() const -> std::optional<int> { return _incumbent; }
    [[nodiscard]] auto strategy() -> Strategy & { return *_strategy; }

    /// Called with each restored state, before the bound and the second
    /// alternative are applied.
    std::function<void(const State &, const PathStack &)> on_restore;
    /// Called with each fix point right after its chunk was pushed.
    std::function<void(const State &, const PathStack &)> on_record;

private:
    auto backtrack() -> void;
    auto account_bytes() -> void;

    SearchMode _mode;
    std::unique_ptr<Strategy> _strategy;
    State _state;
    PathStack _stack;
    ChangeLog _log;
    SearchStats _stats;
    std::vector<Solution> _solutions;
    std::optional<int> _incumbent;
    bool _done = false;
};

/// Runs a complete search from `root`.
auto dfs(const State & root, const StrategyConfig & strategy, SearchMode mode, ByteModel bytes = {}) -> SearchResult;

} // namespace fdr
