#include <fdr/propagation.hpp>
#include <fdr/restoration.hpp>

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace fdr {

namespace {

    template <typename... Ts>
    struct overloaded : Ts... {
        using Ts::operator()...;
    };
    template <typename... Ts>
    overloaded(Ts...) -> overloaded<Ts...>;

    auto copy_point(std::size_t distance, std::size_t depth) -> bool
    {
        return distance != 0 && depth % distance == 0;
    }

    /// Deepest chunk at or below `target` holding a full copy.
    auto deepest_copy(const PathStack & stack, std::size_t target) -> std::optional<std::size_t>
    {
        for (std::size_t i = target + 1; i-- > 0;)
            if (stored_copy(stack.at(i)))
                return i;
        return std::nullopt;
    }

    /// Clone of the nearest stored state at or above `target`, together with
    /// the chunk index it stands for (the root counts as chunk 0).
    auto base_state(const PathStack & stack, std::size_t target) -> std::pair<State, std::size_t>
    {
        if (auto j = deepest_copy(stack, target))
            return {stored_copy(stack.at(*j))->clone(), *j};
        return {stack.root().clone(), 0};
    }

} // namespace

auto DomainRecord::find(VarId var) const -> const Domain *
{
    auto it = std::lower_bound(entries.begin(), entries.end(), var,
        [](const auto & entry, VarId v) { return entry.first < v; });
    return (it != entries.end() && it->first == var) ? &it->second : nullptr;
}

auto stored_copy(const Chunk & chunk) -> const State *
{
    return std::visit(overloaded{
                          [](const CopyPayload & p) -> const State * { return &p.state; },
                          [](const TrailPayload &) -> const State * { return nullptr; },
                          [](const RecompPayload & p) -> const State * { return p.copy ? &*p.copy : nullptr; },
                          [](const RecollectPayload & p) -> const State * { return p.copy ? &*p.copy : nullptr; }},
        chunk.payload);
}

auto payload_bytes(const Chunk & chunk, const ByteModel & model) -> std::size_t
{
    auto body = std::visit(overloaded{
                               [&](const CopyPayload & p) -> std::size_t { return p.state.bytes(model); },
                               [&](const TrailPayload & p) -> std::size_t {
                                   std::size_t total = 0;
                                   for (const auto & e : p.undo)
                                       total += model.domain_bytes(e.pre);
                                   return total;
                               },
                               [&](const RecompPayload & p) -> std::size_t { return p.copy ? p.copy->bytes(model) : 0; },
                               [&](const RecollectPayload & p) -> std::size_t {
                                   std::size_t total = p.copy ? p.copy->bytes(model) : 0;
                                   for (const auto & [var, dom] : p.record.entries)
                                       total += model.domain_bytes(dom);
                                   return total;
                               }},
        chunk.payload);
    return body + model.per_choice;
}

auto PathStack::set_root(State root) -> void
{
    _root_bytes = root.bytes(_model);
    _root = std::move(root);
}

auto PathStack::push(Chunk chunk) -> void
{
    auto b = payload_bytes(chunk, _model);
    _chunks.push_back(std::move(chunk));
    _chunk_bytes.push_back(b);
    _chunk_total += b;
}

auto PathStack::pop() -> void
{
    _chunk_total -= _chunk_bytes.back();
    _chunk_bytes.pop_back();
    _chunks.pop_back();
}

auto PathStack::refresh(std::size_t i) -> void
{
    _chunk_total -= _chunk_bytes[i];
    _chunk_bytes[i] = payload_bytes(_chunks[i], _model);
    _chunk_total += _chunk_bytes[i];
}

auto expose_open_choice(PathStack & stack) -> bool
{
    while (! stack.empty() && ! stack.top().choice.open())
        stack.pop();
    return ! stack.empty();
}

// copying

auto CopyStrategy::record(const State & s, const Choice & choice, ChangeLog &, std::size_t) -> Chunk
{
    return Chunk{choice, CopyPayload{s.clone()}};
}

auto CopyStrategy::restore(State & s, PathStack & stack, ChangeLog &) -> bool
{
    if (! expose_open_choice(stack))
        return false;
    s = std::get<CopyPayload>(stack.top().payload).state.clone();
    return true;
}

// trailing

auto undo(State & s, std::span<const UndoEntry> entries) -> void
{
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
        s.overwrite(it->var, it->pre);
}

auto TrailStrategy::record(const State &, const Choice & choice, ChangeLog & log, std::size_t) -> Chunk
{
    if (log.mode() != LogMode::pre_images)
        throw std::logic_error("trailing needs a log that keeps pre-images");
    return Chunk{choice, TrailPayload{log.take_entries()}};
}

auto TrailStrategy::restore(State & s, PathStack & stack, ChangeLog & log) -> bool
{
    undo(s, log.entries());
    while (! stack.empty() && ! stack.top().choice.open()) {
        undo(s, std::get<TrailPayload>(stack.top().payload).undo);
        stack.pop();
    }
    if (stack.empty())
        return false;
    s.reset_to_fix_point();
    return true;
}

// recomputation

auto RecompStrategy::record(const State & s, const Choice & choice, ChangeLog &, std::size_t depth) -> Chunk
{
    RecompPayload payload;
    if (copy_point(_distance, depth))
        payload.copy = s.clone();
    return Chunk{choice, std::move(payload)};
}

auto RecompStrategy::replay(State & s, const PathStack & stack, std::size_t from, std::size_t to) -> void
{
    if (from == to)
        return;
    ChangeLog scratch;
    for (std::size_t i = from; i < to; ++i) {
        const auto & choice = stack.at(i).choice;
        apply_alternative(s, choice, choice.taken(), scratch);
        ++_last_commits;
    }
    auto result = propagate(s, scratch);
    ++_last_propagations;
    _restore_executions += result.executions;
    if (result.outcome != Outcome::fix_point)
        throw std::logic_error("recomputation of a recorded path did not reach a fix point");
}

auto RecompStrategy::restore(State & s, PathStack & stack, ChangeLog &) -> bool
{
    _last_commits = 0;
    _last_propagations = 0;
    if (! expose_open_choice(stack))
        return false;

    auto target = stack.size() - 1;
    auto [state, from] = base_state(stack, target);

    auto mid = (from + target) / 2;
    if (_adaptive && mid > from) {
        replay(state, stack, from, mid);
        std::get<RecompPayload>(stack.at(mid).payload).copy = state.clone();
        stack.refresh(mid);
        from = mid;
    }
    replay(state, stack, from, target);
    s = std::move(state);
    return true;
}

// recollection

auto RecollectStrategy::record(const State & s, const Choice & choice, ChangeLog & log, std::size_t depth) -> Chunk
{
    RecollectPayload payload;
    if (copy_point(_distance, depth))
        payload.copy = s.clone();
    else {
        std::vector<VarId> vars(log.changed().begin(), log.changed().end());
        std::sort(vars.begin(), vars.end());
        payload.record.entries.reserve(vars.size());
        for (auto v : vars)
            payload.record.entries.emplace_back(v, s.domain(v));
    }
    return Chunk{choice, std::move(payload)};
}

auto RecollectStrategy::overlay(State & s, const PathStack & stack, std::size_t lo, std::size_t hi) -> void
{
    if (lo > hi)
        return;
    if (_flavor == Flavor::chunk_centered)
        overlay_chunk_centered(s, stack, lo, hi);
    else
        overlay_variable_centered(s, stack, lo, hi);
}

auto RecollectStrategy::overlay_chunk_centered(State & s, const PathStack & stack, std::size_t lo, std::size_t hi) -> void
{
    if (_reconstructed.size() < s.num_vars())
        _reconstructed.resize(s.num_vars(), 0);
    if (++_generation == 0) {
        std::fill(_reconstructed.begin(), _reconstructed.end(), 0);
        _generation = 1;
    }

    for (std::size_t i = hi + 1; i-- > lo;) {
        ++_chunk_accesses;
        const auto & record = std::get<RecollectPayload>(stack.at(i).payload).record;
        for (const auto & [var, dom] : record.entries)
            if (_reconstructed[var.index] != _generation) {
                _reconstructed[var.index] = _generation;
                s.overwrite(var, dom);
            }
    }
}

auto RecollectStrategy::overlay_variable_centered(State & s, const PathStack & stack, std::size_t lo, std::size_t hi) -> void
{
    for (std::uint32_t v = 0; v < s.num_vars(); ++v) {
        VarId var{v};
        for (std::size_t i = hi + 1; i-- > lo;) {
            ++_chunk_accesses;
            if (auto dom = std::get<RecollectPayload>(stack.at(i).payload).record.find(var)) {
                s.overwrite(var, *dom);
                break;
            }
        }
    }
}

auto RecollectStrategy::restore(State & s, PathStack & stack, ChangeLog &) -> bool
{
    if (! expose_open_choice(stack))
        return false;

    auto target = stack.size() - 1;
    auto [state, from] = base_state(stack, target);

    auto mid = (from + target) / 2;
    if (_adaptive && mid > from) {
        overlay(state, stack, from + 1, mid);
        auto & payload = std::get<RecollectPayload>(stack.at(mid).payload);
        payload.copy = state.clone();
        payload.record.entries.clear();
        payload.record.entries.shrink_to_fit();
        stack.refresh(mid);
        from = mid;
    }
    overlay(state, stack, from + 1, target);
    state.reset_to_fix_point();
    s = std::move(state);
    return true;
}

// configuration

auto StrategyConfig::parse(std::string_view name, std::optional<std::size_t> distance, Flavor flavor) -> StrategyConfig
{
    StrategyConfig config;
    config.flavor = flavor;

    std::optional<std::size_t> embedded;
    if (auto colon = name.find(':'); colon != std::string_view::npos) {
        auto digits = name.substr(colon + 1);
        std::size_t d = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty())
            throw std::invalid_argument("bad copy distance in strategy '" + std::string(name) + "'");
        embedded = d;
        name = name.substr(0, colon);
    }

    if (name == "copy")
        config.technique = Technique::copy;
    else if (name == "trail")
        config.technique = Technique::trail;
    else if (name == "recomp" || name == "recomp-fixed" || name == "recomp-adaptive")
        config.technique = Technique::recomp;
    else if (name == "recollect" || name == "recollect-fixed" || name == "recollect-adaptive")
        config.technique = Technique::recollect;
    else {
        std::string known;
        for (const auto & n : known_strategy_names())
            known += (known.empty() ? "" : ", ") + n;
        throw std::invalid_argument("unknown strategy '" + std::string(name) + "' (known: " + known + ")");
    }

    if (name.ends_with("-fixed"))
        config.placement = Placement::fixed;
    else if (name.ends_with("-adaptive"))
        config.placement = Placement::adaptive;

    if (config.uses_distance()) {
        config.distance = distance.value_or(embedded.value_or(8));
        if (config.distance == 0)
            throw std::invalid_argument("copy distance must be positive");
    }
    else if (embedded)
        throw std::invalid_argument("strategy '" + std::string(name) + "' takes no copy distance");
    return config;
}

auto StrategyConfig::name() const -> std::string
{
    std::string result;
    switch (technique) {
    case Technique::copy: return "copy";
    case Technique::trail: return "trail";
    case Technique::recomp: result = "recomp"; break;
    case Technique::recollect: result = "recollect"; break;
    }
    switch (placement) {
    case Placement::root_only: break;
    case Placement::fixed: result += "-fixed:" + std::to_string(distance); break;
    case Placement::adaptive: result += "-adaptive:" + std::to_string(distance); break;
    }
    return result;
}

auto known_strategy_names() -> std::vector<std::string>
{
    return {"copy", "trail", "recomp", "recomp-fixed:d", "recomp-adaptive:d", "recollect", "recollect-fixed:d", "recollect-adaptive:d"};
}

auto flavor_name(Flavor f) -> std::string_view
{
    return f == Flavor::chunk_centered ? "chunk" : "variable";
}

auto parse_flavor(std::string_view text) -> Flavor
{
    if (text == "chunk")
        return Flavor::chunk_centered;
    if (text == "variable")
        return Flavor::variable_centered;
    throw std::invalid_argument("unknown recollection flavor '" + std::string(text) + "' (known: chunk, variable)");
}

auto make_strategy(const StrategyConfig & config) -> std::unique_ptr<Strategy>
{
    auto distance = config.uses_distance() ? config.distance : 0;
    bool adaptive = config.placement == Placement::adaptive;
    switch (config.technique) {
    case Technique::copy: return std::make_unique<CopyStrategy>();
    case Technique::trail: return std::make_unique<TrailStrategy>();
    case Technique::recomp: return std::make_unique<RecompStrategy>(distance, adaptive);
    case Technique::recollect: return std::make_unique<RecollectStrategy>(distance, adaptive, config.flavor);
    }
    throw std::logic_error("unhandled technique");
}

} // namespace fdr
