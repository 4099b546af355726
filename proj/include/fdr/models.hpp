#pragma once

#include <fdr/search.hpp>
#include <fdr/state.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fdr {

/// A benchmark problem ready to search: its root state and default mode.
struct Model {
    std::string name;
    std::vector<int> params;
    State root;
    std::optional<VarId> objective;
    SearchMode default_mode;
    /// Variables that make up the answer (e.g. queen rows, the 26 letters).
    std::vector<VarId> primary;

    [[nodiscard]] auto mode_for(SearchMode::Kind kind) const -> SearchMode;
};

enum class QueensVariant { diseq, global };

/// n queens on [0, n-1]. diseq posts 3n(n-1)/2 disequalities; global posts
/// three alldiffs over x, x+i and x-i, the latter two through auxiliary
/// variables linked by linear equalities.
auto build_queens(int n, QueensVariant variant) -> Model;

auto build_magic_square(int n) -> Model;
auto magic_constant(int n) -> int;

/// Letters a..z in [1,26], all different, twenty word sums.
auto build_alpha() -> Model;

struct AlphaEquation {
    std::string_view word;
    int sum;
};
auto alpha_equations() -> std::span<const AlphaEquation>;

/// k occurrences of each value 1..n; occurrences of v sit v+1 positions
/// apart. Variables are positions, value-major: var (v-1)*k + j.
auto build_langford(int k, int n) -> Model;

/// m marks, mark 0 at 0, minimize the last mark.
auto build_golomb(int m) -> Model;

/// Registry lookup: "queens:8", "queens-s:20", "magic-square:3", "alpha",
/// "langford:2,4", "golomb:7". Throws std::invalid_argument listing the
/// registry on unknown names or bad parameters.
auto build_model(std::string_view spec) -> Model;

auto known_model_names() -> std::vector<std::string>;

} // namespace fdr
