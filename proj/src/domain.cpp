#include <fdr/domain.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fdr {

Domain::Domain(int lo, int hi)
{
    if (lo > hi)
        throw std::invalid_argument("domain lower bound " + std::to_string(lo) + " exceeds upper bound " + std::to_string(hi));
    _ranges.push_back(Range{lo, hi});
}

auto Domain::from_ranges(std::vector<Range> ranges) -> Domain
{
    Domain d;
    d._ranges = std::move(ranges);
    if (! d.normalized())
        throw std::invalid_argument("range list is not sorted, disjoint and non-adjacent");
    return d;
}

auto Domain::size() const -> std::int64_t
{
    std::int64_t total = 0;
    for (const auto & r : _ranges)
        total += std::int64_t{r.hi} - r.lo + 1;
    return total;
}

auto Domain::value() const -> int
{
    if (! fixed())
        throw std::logic_error("domain " + to_string() + " is not fixed");
    return _ranges.front().lo;
}

auto Domain::contains(int v) const -> bool
{
    auto it = std::lower_bound(_ranges.begin(), _ranges.end(), v,
        [](const Range & r, int x) { return r.hi < x; });
    return it != _ranges.end() && it->lo <= v;
}

auto Domain::values() const -> std::vector<int>
{
    std::vector<int> result;
    for (const auto & r : _ranges)
        for (long long v = r.lo; v <= r.hi; ++v)
            result.push_back(static_cast<int>(v));
    return result;
}

auto Domain::remove(int v) -> Delta
{
    auto it = std::lower_bound(_ranges.begin(), _ranges.end(), v,
        [](const Range & r, int x) { return r.hi < x; });
    if (it == _ranges.end() || it->lo > v)
        return Delta::none;

    if (it->lo == it->hi)
        _ranges.erase(it);
    else if (it->lo == v)
        ++it->lo;
    else if (it->hi == v)
        --it->hi;
    else {
        Range upper{v + 1, it->hi};
        it->hi = v - 1;
        _ranges.insert(it + 1, upper);
    }
    return _ranges.empty() ? Delta::emptied : Delta::changed;
}

auto Domain::tighten(int lo, int hi) -> Delta
{
    if (_ranges.empty())
        return Delta::emptied;
    if (lo <= min() && hi >= max())
        return Delta::none;
    if (lo > hi || lo > max() || hi < min()) {
        _ranges.clear();
        return Delta::emptied;
    }

    auto first = std::lower_bound(_ranges.begin(), _ranges.end(), lo,
        [](const Range & r, int x) { return r.hi < x; });
    auto last = std::upper_bound(first, _ranges.end(), hi,
        [](int x, const Range & r) { return x < r.lo; });
    if (first == last) {
        _ranges.clear();
        return Delta::emptied;
    }
    _ranges.erase(last, _ranges.end());
    _ranges.erase(_ranges.begin(), first);
    _ranges.front().lo = std::max(_ranges.front().lo, lo);
    _ranges.back().hi = std::min(_ranges.back().hi, hi);
    return Delta::changed;
}

auto Domain::overwrite(const Domain & snapshot) -> void
{
    // resize() trims or extends the chain; surviving ranges are reused
    _ranges.resize(snapshot._ranges.size());
    std::copy(snapshot._ranges.begin(), snapshot._ranges.end(), _ranges.begin());
}

auto Domain::normalized() const -> bool
{
    for (std::size_t i = 0; i < _ranges.size(); ++i) {
        if (_ranges[i].lo > _ranges[i].hi)
            return false;
        if (i > 0 && std::int64_t{_ranges[i - 1].hi} + 1 >= _ranges[i].lo)
            return false;
    }
    return true;
}

auto Domain::to_string() const -> std::string
{
    std::ostringstream out;
    out << *this;
    return out.str();
}

auto operator<<(std::ostream & os, const Domain & d) -> std::ostream &
{
    os << '{';
    bool first = true;
    for (const auto & r : d.ranges()) {
        if (! first)
            os << ',';
        first = false;
        os << '[' << r.lo << ',' << r.hi << ']';
    }
    return os << '}';
}

} // namespace fdr
