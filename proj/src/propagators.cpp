#include <fdr/propagation.hpp>

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

namespace fdr {

namespace {

    auto floor_div(std::int64_t a, std::int64_t b) -> std::int64_t
    {
        auto q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0)))
            --q;
        return q;
    }

    auto ceil_div(std::int64_t a, std::int64_t b) -> std::int64_t
    {
        return -floor_div(-a, b);
    }

    auto clamp_int(std::int64_t v) -> int
    {
        return static_cast<int>(std::clamp<std::int64_t>(v, INT_MIN, INT_MAX));
    }

    auto remove_wide(State & s, VarId v, std::int64_t value, ChangeLog & log) -> bool
    {
        if (value < INT_MIN || value > INT_MAX)
            return true;
        return s.remove(v, static_cast<int>(value), log);
    }

    class NeqOffset final : public Propagator {
    public:
        NeqOffset(VarId x, VarId y, int cx, int cy) : _vars{x, y}, _cx(cx), _cy(cy) {}

        auto subscriptions() const -> std::span<const VarId> override { return _vars; }
        auto name() const -> std::string_view override { return "neq_offset"; }

        auto propagate(State & s, ChangeLog & log) const -> bool override
        {
            const auto & dx = s.domain(_vars[0]);
            const auto & dy = s.domain(_vars[1]);
            if (dx.fixed())
                return remove_wide(s, _vars[1], std::int64_t{dx.value()} + _cx - _cy, log);
            if (dy.fixed())
                return remove_wide(s, _vars[0], std::int64_t{dy.value()} + _cy - _cx, log);
            return true;
        }

    private:
        VarId _vars[2];
        int _cx, _cy;
    };

    class AllDiff final : public Propagator {
    public:
        explicit AllDiff(std::vector<VarId> vars) : _vars(std::move(vars)) {}

        auto subscriptions() const -> std::span<const VarId> override { return _vars; }
        auto name() const -> std::string_view override { return "alldiff"; }

        auto propagate(State & s, ChangeLog & log) const -> bool override
        {
            bool again = true;
            while (again) {
                again = false;
                for (std::size_t i = 0; i < _vars.size(); ++i) {
                    const auto & di = s.domain(_vars[i]);
                    if (! di.fixed())
                        continue;
                    int v = di.value();
                    for (std::size_t j = 0; j < _vars.size(); ++j) {
                        if (j == i)
                            continue;
                        const auto & dj = s.domain(_vars[j]);
                        if (! dj.contains(v))
                            continue;
                        if (dj.fixed())
                            return false;
                        if (! s.remove(_vars[j], v, log))
                            return false;
                        if (s.domain(_vars[j]).fixed())
                            again = true;
                    }
                }
            }
            return true;
        }

    private:
        std::vector<VarId> _vars;
    };

    /// sum coeffs[i] * vars[i] (== or <=) c, bounds filtering to an internal fix point.
    class Linear final : public Propagator {
    public:
        Linear(std::vector<int> coeffs, std::vector<VarId> vars, int c, bool equality) :
            _coeffs(std::move(coeffs)), _vars(std::move(vars)), _c(c), _equality(equality)
        {
        }

        auto subscriptions() const -> std::span<const VarId> override { return _vars; }
        auto name() const -> std::string_view override { return _equality ? "linear_eq" : "linear_leq"; }

        auto propagate(State & s, ChangeLog & log) const -> bool override
        {
            bool again = true;
            while (again) {
                again = false;
                std::int64_t sum_min = 0, sum_max = 0;
                for (std::size_t i = 0; i < _vars.size(); ++i) {
                    sum_min += term_min(s, i);
                    sum_max += term_max(s, i);
                }
                if (sum_min > _c || (_equality && sum_max < _c))
                    return false;

                for (std::size_t i = 0; i < _vars.size(); ++i) {
                    std::int64_t a = _coeffs[i];
                    std::int64_t old_min = term_min(s, i), old_max = term_max(s, i);
                    // bounds on a * x_i from the residual of the others
                    std::int64_t upper = _c - (sum_min - old_min);
                    std::int64_t lower = _equality ? _c - (sum_max - old_max) : std::int64_t{INT_MIN} * (a > 0 ? a : -a);
                    std::int64_t lo = a > 0 ? ceil_div(lower, a) : ceil_div(upper, a);
                    std::int64_t hi = a > 0 ? floor_div(upper, a) : floor_div(lower, a);

                    const auto & d = s.domain(_vars[i]);
                    if (lo <= d.min() && hi >= d.max())
                        continue;
                    if (! s.tighten(_vars[i], clamp_int(lo), clamp_int(hi), log))
                        return false;
                    sum_min += term_min(s, i) - old_min;
                    sum_max += term_max(s, i) - old_max;
                    again = true;
                }
            }
            return true;
        }

    private:
        auto term_min(const State & s, std::size_t i) const -> std::int64_t
        {
            const auto & d = s.domain(_vars[i]);
            std::int64_t a = _coeffs[i];
            return a > 0 ? a * d.min() : a * d.max();
        }

        auto term_max(const State & s, std::size_t i) const -> std::int64_t
        {
            const auto & d = s.domain(_vars[i]);
            std::int64_t a = _coeffs[i];
            return a > 0 ? a * d.max() : a * d.min();
        }

        std::vector<int> _coeffs;
        std::vector<VarId> _vars;
        int _c;
        bool _equality;
    };

    auto post_linear(State & s, std::span<const int> coeffs, std::span<const VarId> vars, int c, bool equality) -> void
    {
        if (coeffs.size() != vars.size() || vars.empty())
            throw std::invalid_argument("linear constraint needs one nonzero coefficient per variable");

        // merge repeated variables, keeping first-occurrence order
        std::map<std::uint32_t, std::size_t> slot;
        std::vector<int> merged_coeffs;
        std::vector<VarId> merged_vars;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (coeffs[i] == 0)
                throw std::invalid_argument("linear constraint coefficients must be nonzero");
            auto [it, fresh] = slot.emplace(vars[i].index, merged_vars.size());
            if (fresh) {
                merged_vars.push_back(vars[i]);
                merged_coeffs.push_back(coeffs[i]);
            }
            else
                merged_coeffs[it->second] += coeffs[i];
        }

        std::vector<int> final_coeffs;
        std::vector<VarId> final_vars;
        for (std::size_t i = 0; i < merged_vars.size(); ++i)
            if (merged_coeffs[i] != 0) {
                final_coeffs.push_back(merged_coeffs[i]);
                final_vars.push_back(merged_vars[i]);
            }
        if (final_vars.empty())
            throw std::invalid_argument("linear constraint cancels to a constant");

        s.post(std::make_shared<Linear>(std::move(final_coeffs), std::move(final_vars), c, equality));
    }

} // namespace

auto post_neq_offset(State & s, VarId x, VarId y, int cx, int cy) -> void
{
    if (x == y)
        throw std::invalid_argument("neq_offset needs two distinct variables");
    s.post(std::make_shared<NeqOffset>(x, y, cx, cy));
}

auto post_alldiff(State & s, std::span<const VarId> vars) -> void
{
    if (vars.size() < 2)
        throw std::invalid_argument("alldiff needs at least two variables");
    s.post(std::make_shared<AllDiff>(std::vector<VarId>(vars.begin(), vars.end())));
}

auto post_linear_eq(State & s, std::span<const int> coeffs, std::span<const VarId> vars, int c) -> void
{
    post_linear(s, coeffs, vars, c, true);
}

auto post_linear_leq(State & s, std::span<const int> coeffs, std::span<const VarId> vars, int c) -> void
{
    post_linear(s, coeffs, vars, c, false);
}

} // namespace fdr
