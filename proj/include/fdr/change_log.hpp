#pragma once

#include <fdr/domain.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace fdr {

/// Pre-image of a variable's domain, taken just before its first change.
struct UndoEntry {
    VarId var;
    Domain pre;
};

enum class LogMode {
    changes_only, ///< track which variables changed
    pre_images    ///< additionally keep an undo entry per changed variable (trailing)
};

/// Records which variables changed since the log was last cleared.
///
/// Every domain mutation, whether from a propagator or from a branch
/// commit, reports here before it is applied. Only the first change of a
/// variable within one log lifetime is recorded: that pre-image is enough
/// to undo the whole span, and the changed set is what recollection needs.
class ChangeLog {
public:
    explicit ChangeLog(LogMode mode = LogMode::changes_only) : _mode(mode) {}

    auto note(VarId var, const Domain & pre_image) -> void;
    auto clear() -> void;

    [[nodiscard]] auto mode() const -> LogMode { return _mode; }
    [[nodiscard]] auto changed() const -> std::span<const VarId> { return _changed; }
    [[nodiscard]] auto contains(VarId var) const -> bool;
    [[nodiscard]] auto entries() const -> std::span<const UndoEntry> { return _entries; }
    [[nodiscard]] auto empty() const -> bool { return _changed.empty(); }

    /// Moves the undo entries out; the changed set is left intact.
    auto take_entries() -> std::vector<UndoEntry>;

private:
    LogMode _mode;
    std::vector<VarId> _changed;
    std::vector<UndoEntry> _entries;
    std::vector<std::uint32_t> _stamp;
    std::uint32_t _generation = 1;
};

} // namespace fdr
