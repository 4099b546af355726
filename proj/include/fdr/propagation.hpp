#pragma once

#include <fdr/change_log.hpp>
#include <fdr/state.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace fdr {

enum class Outcome { solved, inconsistency, fix_point };

struct PropagationResult {
    Outcome outcome;
    std::uint64_t executions = 0;
};

/// Runs scheduled propagators (FIFO, deduplicated) until the queue drains
/// or a domain empties. All mutations are reported to `log`.
auto propagate(State & s, ChangeLog & log) -> PropagationResult;

// Constraint posting. Consistency: disequality and alldifferent fire on
// fixed variables only; linear constraints filter bounds.

/// x + cx != y + cy
auto post_neq_offset(State & s, VarId x, VarId y, int cx = 0, int cy = 0) -> void;

auto post_alldiff(State & s, std::span<const VarId> vars) -> void;

/// sum coeffs[i] * vars[i] == c
auto post_linear_eq(State & s, std::span<const int> coeffs, std::span<const VarId> vars, int c) -> void;

/// sum coeffs[i] * vars[i] <= c
auto post_linear_leq(State & s, std::span<const int> coeffs, std::span<const VarId> vars, int c) -> void;

} // namespace fdr
