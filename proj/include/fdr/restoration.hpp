#pragma once

#include <fdr/branching.hpp>
#include <fdr/change_log.hpp>
#include <fdr/state.hpp>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace fdr {

/// Domains of the variables that changed while reaching one fix point,
/// sorted by VarId.
struct DomainRecord {
    std::vector<std::pair<VarId, Domain>> entries;

    [[nodiscard]] auto find(VarId var) const -> const Domain *;
};

struct CopyPayload {
    State state;
};

struct TrailPayload {
    std::vector<UndoEntry> undo;
};

struct RecompPayload {
    std::optional<State> copy;
};

/// A chunk holding a copy carries no record: restoration starts from the
/// copy and never reads the chunk's own record.
struct RecollectPayload {
    DomainRecord record;
    std::optional<State> copy;
};

using Payload = std::variant<CopyPayload, TrailPayload, RecompPayload, RecollectPayload>;

/// One node of the path: the choice made at a fix point plus whatever the
/// active strategy needs to get back there.
struct Chunk {
    Choice choice;
    Payload payload;
};

/// Full state stored in a chunk, if any.
auto stored_copy(const Chunk & chunk) -> const State *;

auto payload_bytes(const Chunk & chunk, const ByteModel & model = {}) -> std::size_t;

/// Root copy plus the stack of chunks from the root to the current node.
/// Keeps a running byte total of everything it stores.
class PathStack {
public:
    explicit PathStack(ByteModel model = {}) : _model(model) {}

    auto set_root(State root) -> void;
    [[nodiscard]] auto has_root() const -> bool { return _root.has_value(); }
    [[nodiscard]] auto root() const -> const State & { return *_root; }

    [[nodiscard]] auto size() const -> std::size_t { return _chunks.size(); }
    [[nodiscard]] auto empty() const -> bool { return _chunks.empty(); }
    [[nodiscard]] auto top() -> Chunk & { return _chunks.back(); }
    [[nodiscard]] auto top() const -> const Chunk & { return _chunks.back(); }
    [[nodiscard]] auto at(std::size_t i) -> Chunk & { return _chunks[i]; }
    [[nodiscard]] auto at(std::size_t i) const -> const Chunk & { return _chunks[i]; }

    auto push(Chunk chunk) -> void;
    auto pop() -> void;

    /// Re-accounts chunk i after its payload was edited in place.
    auto refresh(std::size_t i) -> void;

    /// Root bytes plus every chunk's payload bytes.
    [[nodiscard]] auto bytes() const -> std::size_t { return _root_bytes + _chunk_total; }
    [[nodiscard]] auto byte_model() const -> const ByteModel & { return _model; }

private:
    ByteModel _model;
    std::optional<State> _root;
    std::size_t _root_bytes = 0;
    std::vector<Chunk> _chunks;
    std::vector<std::size_t> _chunk_bytes;
    std::size_t _chunk_total = 0;
};

/// Pops chunks with closed choices. Returns false iff the stack empties.
auto expose_open_choice(PathStack & stack) -> bool;

/// Record/Restore pair. One instance serves exactly one search.
class Strategy {
public:
    virtual ~Strategy() = default;

    [[nodiscard]] virtual auto log_mode() const -> LogMode { return LogMode::changes_only; }

    /// Builds the chunk for the fix point `s` at the given depth (the
    /// number of chunks below it). `log` holds the changes since the
    /// previous fix point.
    virtual auto record(const State & s, const Choice & choice, ChangeLog & log, std::size_t depth) -> Chunk = 0;

    /// Replaces `s` with the state of the deepest fix point whose choice is
    /// still open, popping closed chunks. Returns false when none is left.
    virtual auto restore(State & s, PathStack & stack, ChangeLog & log) -> bool = 0;

    /// Propagator executions spent inside restore (recomputation).
    [[nodiscard]] auto restore_executions() const -> std::uint64_t { return _restore_executions; }

protected:
    std::uint64_t _restore_executions = 0;
};

enum class Technique { copy, trail, recomp, recollect };
enum class Placement { root_only, fixed, adaptive };
enum class Flavor { chunk_centered, variable_centered };

struct StrategyConfig {
    Technique technique = Technique::copy;
    Placement placement = Placement::root_only;
    std::size_t distance = 0; ///< copy distance for fixed and adaptive placement
    Flavor flavor = Flavor::chunk_centered;

    /// Accepts copy, trail, recomp, recomp-fixed[:d], recomp-adaptive[:d],
    /// recollect, recollect-fixed[:d], recollect-adaptive[:d]. A distance
    /// given separately overrides one embedded in the name; the default is 8.
    /// Throws std::invalid_argument for anything else.
    static auto parse(std::string_view name, std::optional<std::size_t> distance = std::nullopt,
        Flavor flavor = Flavor::chunk_centered) -> StrategyConfig;

    [[nodiscard]] auto name() const -> std::string;
    [[nodiscard]] auto uses_distance() const -> bool { return placement != Placement::root_only; }

    friend auto operator==(const StrategyConfig &, const StrategyConfig &) -> bool = default;
};

auto known_strategy_names() -> std::vector<std::string>;
auto flavor_name(Flavor f) -> std::string_view;
auto parse_flavor(std::string_view text) -> Flavor;

auto make_strategy(const StrategyConfig & config) -> std::unique_ptr<Strategy>;

class CopyStrategy final : public Strategy {
public:
    auto record(const State & s, const Choice & choice, ChangeLog & log, std::size_t depth) -> Chunk override;
    auto restore(State & s, PathStack & stack, ChangeLog & log) -> bool override;
};

class TrailStrategy final : public Strategy {
public:
    [[nodiscard]] auto log_mode() const -> LogMode override { return LogMode::pre_images; }
    auto record(const State & s, const Choice & choice, ChangeLog & log, std::size_t depth) -> Chunk override;
    auto restore(State & s, PathStack & stack, ChangeLog & log) -> bool override;
};

/// Writes pre-images back, newest first.
auto undo(State & s, std::span<const UndoEntry> entries) -> void;

class RecompStrategy final : public Strategy {
public:
    /// distance == 0 means copies only at the root.
    RecompStrategy(std::size_t distance, bool adaptive) : _distance(distance), _adaptive(adaptive) {}

    auto record(const State & s, const Choice & choice, ChangeLog & log, std::size_t depth) -> Chunk override;
    auto restore(State & s, PathStack & stack, ChangeLog & log) -> bool override;

    /// Branch commits replayed by the last restore.
    [[nodiscard]] auto last_commits() const -> std::size_t { return _last_commits; }
    /// Propagation runs performed by the last restore.
    [[nodiscard]] auto last_propagations() const -> std::size_t { return _last_propagations; }

private:
    auto replay(State & s, const PathStack & stack, std::size_t from, std::size_t to) -> void;

    std::size_t _distance;
    bool _adaptive;
    std::size_t _last_commits = 0;
    std::size_t _last_propagations = 0;
};

class RecollectStrategy final : public Strategy {
public:
    RecollectStrategy(std::size_t distance, bool adaptive, Flavor flavor) :
        _distance(distance), _adaptive(adaptive), _flavor(flavor)
    {
    }

    auto record(const State & s, const Choice & choice, ChangeLog & log, std::size_t depth) -> Chunk override;
    auto restore(State & s, PathStack & stack, ChangeLog & log) -> bool override;

    /// Chunk visits made by overlays since construction.
    [[nodiscard]] auto chunk_accesses() const -> std::uint64_t { return _chunk_accesses; }

private:
    auto overlay(State & s, const PathStack & stack, std::size_t lo, std::size_t hi) -> void;
    auto overlay_chunk_centered(State & s, const PathStack & stack, std::size_t lo, std::size_t hi) -> void;
    auto overlay_variable_centered(State & s, const PathStack & stack, std::size_t lo, std::size_t hi) -> void;

    std::size_t _distance;
    bool _adaptive;
    Flavor _flavor;
    std::vector<std::uint32_t> _reconstructed;
    std::uint32_t _generation = 0;
    std::uint64_t _chunk_accesses = 0;
};

} // namespace fdr
