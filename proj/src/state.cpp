#include <fdr/state.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fdr {

auto ByteModel::from_environment() -> ByteModel
{
    ByteModel model;
    const char * text = std::getenv("BENCH_BYTE_MODEL");
    if (! text || ! *text)
        return model;

    std::istringstream in(text);
    std::string field;
    std::vector<std::size_t> values;
    while (std::getline(in, field, ',')) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(field, &used);
        }
        catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != field.size())
            throw std::invalid_argument("BENCH_BYTE_MODEL: bad field '" + field + "'");
        values.push_back(static_cast<std::size_t>(v));
    }
    if (values.size() != 3)
        throw std::invalid_argument("BENCH_BYTE_MODEL expects header,range,propagator");
    model.var_header = values[0];
    model.per_range = values[1];
    model.per_propagator = values[2];
    return model;
}

auto State::add_variable(int lo, int hi) -> VarId
{
    return add_variable(Domain{lo, hi});
}

auto State::add_variable(Domain d) -> VarId
{
    if (d.empty())
        throw std::invalid_argument("variables need a non-empty initial domain");
    VarId id{static_cast<std::uint32_t>(_store.size())};
    _store.push_back(std::move(d));
    if (_props)
        mutable_propagators().subscribers.emplace_back();
    return id;
}

auto State::mutable_propagators() -> PropagatorSet &
{
    if (! _props)
        _props = std::make_shared<PropagatorSet>();
    else if (_props.use_count() > 1)
        _props = std::make_shared<PropagatorSet>(*_props);
    _props->subscribers.resize(_store.size());
    return *_props;
}

auto State::post(std::shared_ptr<const Propagator> p) -> PropId
{
    if (! p)
        throw std::invalid_argument("null propagator");
    auto & set = mutable_propagators();
    for (auto v : p->subscriptions())
        if (v.index >= _store.size())
            throw std::invalid_argument("propagator " + std::string(p->name()) + " subscribes to unknown variable " + std::to_string(v.index));

    PropId id = static_cast<PropId>(set.propagators.size());
    for (auto v : p->subscriptions()) {
        auto & subs = set.subscribers[v.index];
        if (subs.empty() || subs.back() != id)
            subs.push_back(id);
    }
    set.propagators.push_back(std::move(p));
    _queued.push_back(1);
    _queue.push_back(id);
    return id;
}

auto State::num_propagators() const -> std::size_t
{
    return _props ? _props->propagators.size() : 0;
}

auto State::propagator(PropId id) const -> const Propagator &
{
    return *_props->propagators.at(id);
}

auto State::clone() const -> State
{
    if (_status != Status::active)
        throw std::logic_error(_status == Status::failed ? "cannot clone a failed state" : "cannot clone a solved state");
    return State{*this};
}

auto State::apply(VarId v, Delta d) -> bool
{
    switch (d) {
    case Delta::none:
        return true;
    case Delta::changed:
        schedule_subscribers(v);
        return true;
    case Delta::emptied:
        _status = Status::failed;
        return false;
    }
    return true;
}

auto State::remove(VarId v, int value, ChangeLog & log) -> bool
{
    if (_status == Status::failed)
        return false;
    auto & d = _store[v.index];
    if (! d.contains(value))
        return true;
    log.note(v, d);
    return apply(v, d.remove(value));
}

auto State::tighten(VarId v, int lo, int hi, ChangeLog & log) -> bool
{
    if (_status == Status::failed)
        return false;
    auto & d = _store[v.index];
    if (lo <= d.min() && hi >= d.max())
        return true;
    log.note(v, d);
    return apply(v, d.tighten(lo, hi));
}

auto State::reset_to_fix_point() -> void
{
    for (auto id : _queue)
        _queued[id] = 0;
    _queue.clear();
    _status = Status::active;
}

auto State::schedule_all() -> void
{
    for (PropId id = 0; id < num_propagators(); ++id)
        if (! _queued[id]) {
            _queued[id] = 1;
            _queue.push_back(id);
        }
}

auto State::schedule_subscribers(VarId v) -> void
{
    if (! _props || v.index >= _props->subscribers.size())
        return;
    for (auto id : _props->subscribers[v.index])
        if (! _queued[id]) {
            _queued[id] = 1;
            _queue.push_back(id);
        }
}

auto State::pop_scheduled() -> PropId
{
    auto id = _queue.front();
    _queue.pop_front();
    _queued[id] = 0;
    return id;
}

auto State::all_fixed() const -> bool
{
    return std::all_of(_store.begin(), _store.end(), [](const Domain & d) { return d.fixed(); });
}

auto State::values() const -> std::vector<int>
{
    std::vector<int> result;
    result.reserve(_store.size());
    for (const auto & d : _store)
        result.push_back(d.value());
    return result;
}

auto State::bytes(const ByteModel & model) const -> std::size_t
{
    std::size_t total = model.per_propagator * num_propagators();
    for (const auto & d : _store)
        total += model.domain_bytes(d);
    return total;
}

} // namespace fdr
