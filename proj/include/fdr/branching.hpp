#pragma once

#include <fdr/change_log.hpp>
#include <fdr/state.hpp>

#include <optional>

namespace fdr {

enum class Alternative { first, second };

/// Binary choice: first is (var = pivot), second is (var != pivot).
struct Choice {
    enum class Committed { none, first, both };

    VarId var;
    int pivot = 0;
    Committed committed = Committed::none;

    [[nodiscard]] auto open() const -> bool { return committed != Committed::both; }

    /// The alternative that leads to the node currently below this choice.
    [[nodiscard]] auto taken() const -> Alternative;

    friend auto operator==(const Choice &, const Choice &) -> bool = default;
};

/// Lowest-indexed unfixed variable, split on its minimum value.
/// Returns nullopt when every variable is fixed; throws std::logic_error on
/// a failed state.
auto branch(const State & s) -> std::optional<Choice>;

/// Applies one alternative of `choice` to `s` without touching the choice.
auto apply_alternative(State & s, const Choice & choice, Alternative alt, ChangeLog & log) -> void;

/// Applies the alternative and advances choice.committed. Throws
/// std::logic_error if the alternative is not the next legal one.
auto commit(State & s, Choice & choice, Alternative alt, ChangeLog & log) -> void;

} // namespace fdr
