#pragma once

#include <fdr/change_log.hpp>
#include <fdr/domain.hpp>

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fdr {

class State;

using PropId = std::uint32_t;

/// Executable form of a constraint.
///
/// Propagators hold no mutable state: everything they know about the
/// search lives in the store. That lets clones share them, and it lets
/// recollection rebuild a state from domains alone.
class Propagator {
public:
    virtual ~Propagator() = default;

    /// Variables whose changes re-schedule this propagator.
    [[nodiscard]] virtual auto subscriptions() const -> std::span<const VarId> = 0;

    /// Filters the store; returns false on inconsistency.
    virtual auto propagate(State & s, ChangeLog & log) const -> bool = 0;

    [[nodiscard]] virtual auto name() const -> std::string_view = 0;
};

enum class Status { active, solved, failed };

using Store = std::vector<Domain>;

/// Logical byte model for memory accounting. BENCH_BYTE_MODEL may override
/// the first three constants as "header,range,propagator".
struct ByteModel {
    std::size_t var_header = 16;
    std::size_t per_range = 8;
    std::size_t per_propagator = 32;
    std::size_t per_choice = 16;

    [[nodiscard]] auto domain_bytes(const Domain & d) const -> std::size_t
    {
        return var_header + per_range * d.range_count();
    }

    /// Reads BENCH_BYTE_MODEL; throws std::invalid_argument on malformed input.
    static auto from_environment() -> ByteModel;
};

/// A store together with its propagators, scheduling queue and status.
class State {
public:
    State() = default;

    auto add_variable(int lo, int hi) -> VarId;
    auto add_variable(Domain d) -> VarId;

    /// Adds a propagator and schedules it for the next propagation.
    auto post(std::shared_ptr<const Propagator> p) -> PropId;

    [[nodiscard]] auto num_vars() const -> std::size_t { return _store.size(); }
    [[nodiscard]] auto num_propagators() const -> std::size_t;
    [[nodiscard]] auto propagator(PropId id) const -> const Propagator &;
    [[nodiscard]] auto domain(VarId v) const -> const Domain & { return _store[v.index]; }
    [[nodiscard]] auto store() const -> const Store & { return _store; }
    [[nodiscard]] auto status() const -> Status { return _status; }
    [[nodiscard]] auto failed() const -> bool { return _status == Status::failed; }

    /// Deep copy of an active state; throws std::logic_error for solved or
    /// failed states.
    [[nodiscard]] auto clone() const -> State;

    // Mutations. Each one logs the pre-image, schedules subscribers and
    // marks the state failed when a domain empties. They return false iff
    // the state is failed afterwards.
    auto remove(VarId v, int value, ChangeLog & log) -> bool;
    auto tighten(VarId v, int lo, int hi, ChangeLog & log) -> bool;
    auto assign(VarId v, int value, ChangeLog & log) -> bool { return tighten(v, value, value, log); }

    /// Unlogged, unscheduled overwrite used by restoration.
    auto overwrite(VarId v, const Domain & snapshot) -> void { _store[v.index].overwrite(snapshot); }

    /// Forgets pending work and marks the state active; used once a restore
    /// has put the store back at a recorded fix point.
    auto reset_to_fix_point() -> void;

    // Scheduling queue, driven by propagate().
    auto schedule_all() -> void;
    [[nodiscard]] auto has_scheduled() const -> bool { return ! _queue.empty(); }
    auto pop_scheduled() -> PropId;
    auto set_status(Status s) -> void { _status = s; }

    [[nodiscard]] auto all_fixed() const -> bool;
    [[nodiscard]] auto values() const -> std::vector<int>;

    [[nodiscard]] auto bytes(const ByteModel & model = {}) const -> std::size_t;

private:
    struct PropagatorSet {
        std::vector<std::shared_ptr<const Propagator>> propagators;
        std::vector<std::vector<PropId>> subscribers;
    };

    auto mutable_propagators() -> PropagatorSet &;
    auto apply(VarId v, Delta d) -> bool;
    auto schedule_subscribers(VarId v) -> void;

    Store _store;
    std::shared_ptr<PropagatorSet> _props;
    std::deque<PropId> _queue;
    std::vector<char> _queued;
    Status _status = Status::active;
};

/// Byte count of a state under the given model.
inline auto state_bytes(const State & s, const ByteModel & model = {}) -> std::size_t { return s.bytes(model); }

} // namespace fdr
