#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fdr {

/// Dense index of a variable inside one problem instance.
struct VarId {
    std::uint32_t index = 0;

    constexpr auto operator<=>(const VarId &) const = default;
};

struct Range {
    int lo;
    int hi;

    constexpr auto operator<=>(const Range &) const = default;
};

/// Outcome of a domain mutation.
enum class Delta { none, changed, emptied };

/// Finite integer domain kept as an ordered chain of disjoint,
/// non-adjacent ranges. An empty domain only exists inside a failed state.
class Domain {
public:
    Domain() = default;
    Domain(int lo, int hi);

    /// Builds a domain from explicit ranges; throws std::invalid_argument
    /// unless the ranges are sorted, disjoint and non-adjacent.
    static auto from_ranges(std::vector<Range> ranges) -> Domain;

    [[nodiscard]] auto empty() const -> bool { return _ranges.empty(); }
    [[nodiscard]] auto size() const -> std::int64_t;
    [[nodiscard]] auto fixed() const -> bool { return _ranges.size() == 1 && _ranges.front().lo == _ranges.front().hi; }
    [[nodiscard]] auto min() const -> int { return _ranges.front().lo; }
    [[nodiscard]] auto max() const -> int { return _ranges.back().hi; }
    [[nodiscard]] auto value() const -> int;
    [[nodiscard]] auto contains(int v) const -> bool;
    [[nodiscard]] auto ranges() const -> std::span<const Range> { return _ranges; }
    [[nodiscard]] auto range_count() const -> std::size_t { return _ranges.size(); }
    [[nodiscard]] auto values() const -> std::vector<int>;

    auto remove(int v) -> Delta;
    auto tighten(int lo, int hi) -> Delta;
    auto assign(int v) -> Delta { return tighten(v, v); }

    /// Makes this domain value-equal to `snapshot`, trimming or extending the
    /// existing range chain in place instead of rebuilding it.
    auto overwrite(const Domain & snapshot) -> void;

    /// True iff the range list is in normal form.
    [[nodiscard]] auto normalized() const -> bool;

    [[nodiscard]] auto to_string() const -> std::string;

    friend auto operator==(const Domain &, const Domain &) -> bool = default;

private:
    std::vector<Range> _ranges;
};

auto operator<<(std::ostream &, const Domain &) -> std::ostream &;

} // namespace fdr
