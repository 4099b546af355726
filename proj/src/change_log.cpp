#include <fdr/change_log.hpp>

#include <algorithm>
#include <utility>

namespace fdr {

auto ChangeLog::note(VarId var, const Domain & pre_image) -> void
{
    if (var.index >= _stamp.size())
        _stamp.resize(var.index + 1, 0);
    if (_stamp[var.index] == _generation)
        return;
    _stamp[var.index] = _generation;
    _changed.push_back(var);
    if (_mode == LogMode::pre_images)
        _entries.push_back(UndoEntry{var, pre_image});
}

auto ChangeLog::clear() -> void
{
    _changed.clear();
    _entries.clear();
    if (++_generation == 0) {
        std::fill(_stamp.begin(), _stamp.end(), 0);
        _generation = 1;
    }
}

auto ChangeLog::contains(VarId var) const -> bool
{
    return var.index < _stamp.size() && _stamp[var.index] == _generation;
}

auto ChangeLog::take_entries() -> std::vector<UndoEntry>
{
    return std::exchange(_entries, {});
}

} // namespace fdr
