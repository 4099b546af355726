#include <fdr/search.hpp>

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace fdr {

auto SearchMode::name() const -> std::string_view
{
    switch (kind) {
    case Kind::first_solution: return "first";
    case Kind::all_solutions: return "all";
    case Kind::best_solution: return "best";
    }
    return "?";
}

auto inject_bound(State & s, VarId objective, int incumbent, ChangeLog & log) -> void
{
    if (incumbent == INT_MIN) {
        s.tighten(objective, 1, 0, log);
        return;
    }
    s.tighten(objective, INT_MIN, incumbent - 1, log);
}

Engine::Engine(const State & root, SearchMode mode, std::unique_ptr<Strategy> strategy, ByteModel bytes) :
    _mode(mode),
    _strategy(std::move(strategy)),
    _state(root),
    _stack(bytes),
    _log(_strategy->log_mode())
{
    if ((mode.kind == SearchMode::Kind::best_solution) != mode.objective.has_value())
        throw std::invalid_argument("an objective is required for, and only for, best-solution search");
    if (mode.objective && mode.objective->index >= root.num_vars())
        throw std::invalid_argument("objective variable out of range");
}

auto Engine::step() -> std::optional<Outcome>
{
    if (_done)
        return std::nullopt;

    ++_stats.nodes;
    auto result = propagate(_state, _log);
    _stats.propagator_executions += result.executions;

    switch (result.outcome) {
    case Outcome::solved:
        ++_stats.solutions;
        _solutions.push_back(_state.values());
        account_bytes();
        if (_mode.kind == SearchMode::Kind::first_solution) {
            _done = true;
            break;
        }
        if (_mode.kind == SearchMode::Kind::best_solution)
            _incumbent = _state.domain(*_mode.objective).value();
        backtrack();
        break;

    case Outcome::inconsistency:
        ++_stats.failures;
        account_bytes();
        backtrack();
        break;

    case Outcome::fix_point: {
        if (! _stack.has_root()) {
            _stack.set_root(_state.clone());
            _log.clear();
        }
        auto choice = branch(_state);
        if (! choice)
            throw std::logic_error("fix point without an unfixed variable");
        _stack.push(_strategy->record(_state, *choice, _log, _stack.size()));
        _stats.max_depth = std::max<std::uint64_t>(_stats.max_depth, _stack.size());
        if (on_record)
            on_record(_state, _stack);
        account_bytes();
        _log.clear();
        commit(_state, _stack.top().choice, Alternative::first, _log);
        break;
    }
    }
    return result.outcome;
}

auto Engine::backtrack() -> void
{
    if (! _strategy->restore(_state, _stack, _log)) {
        _done = true;
        return;
    }
    if (on_restore)
        on_restore(_state, _stack);
    account_bytes();
    _log.clear();
    if (_incumbent)
        inject_bound(_state, *_mode.objective, *_incumbent, _log);
    commit(_state, _stack.top().choice, Alternative::second, _log);
}

auto Engine::account_bytes() -> void
{
    auto total = _stack.bytes() + _state.bytes(_stack.byte_model());
    _stats.peak_payload_bytes = std::max(_stats.peak_payload_bytes, total);
}

auto Engine::run(std::uint64_t node_limit) -> void
{
    while (! _done && (node_limit == 0 || _stats.nodes < node_limit))
        step();
}

auto Engine::stats() const -> SearchStats
{
    auto result = _stats;
    result.propagator_executions += _strategy->restore_executions();
    return result;
}

auto dfs(const State & root, const StrategyConfig & strategy, SearchMode mode, ByteModel bytes) -> SearchResult
{
    Engine engine(root, mode, make_strategy(strategy), bytes);
    engine.run();
    return SearchResult{engine.solutions(), engine.stats()};
}

} // namespace fdr
