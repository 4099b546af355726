#include <fdr/branching.hpp>

#include <stdexcept>

namespace fdr {

auto Choice::taken() const -> Alternative
{
    if (committed == Committed::none)
        throw std::logic_error("choice has not been committed");
    return committed == Committed::first ? Alternative::first : Alternative::second;
}

auto branch(const State & s) -> std::optional<Choice>
{
    if (s.failed())
        throw std::logic_error("cannot branch on a failed state");
    const auto & store = s.store();
    for (std::uint32_t i = 0; i < store.size(); ++i)
        if (! store[i].fixed())
            return Choice{VarId{i}, store[i].min(), Choice::Committed::none};
    return std::nullopt;
}

auto apply_alternative(State & s, const Choice & choice, Alternative alt, ChangeLog & log) -> void
{
    if (alt == Alternative::first)
        s.assign(choice.var, choice.pivot, log);
    else
        s.remove(choice.var, choice.pivot, log);
}

auto commit(State & s, Choice & choice, Alternative alt, ChangeLog & log) -> void
{
    if (alt == Alternative::first && choice.committed != Choice::Committed::none)
        throw std::logic_error("first alternative already committed");
    if (alt == Alternative::second && choice.committed != Choice::Committed::first)
        throw std::logic_error("second alternative needs the first one committed before it");
    apply_alternative(s, choice, alt, log);
    choice.committed = alt == Alternative::first ? Choice::Committed::first : Choice::Committed::both;
}

} // namespace fdr
