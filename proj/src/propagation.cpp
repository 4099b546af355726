#include <fdr/propagation.hpp>

namespace fdr {

auto propagate(State & s, ChangeLog & log) -> PropagationResult
{
    PropagationResult result{Outcome::fix_point, 0};
    if (s.failed()) {
        s.reset_to_fix_point();
        s.set_status(Status::failed);
        result.outcome = Outcome::inconsistency;
        return result;
    }

    while (s.has_scheduled()) {
        auto id = s.pop_scheduled();
        ++result.executions;
        if (! s.propagator(id).propagate(s, log) || s.failed()) {
            s.reset_to_fix_point();
            s.set_status(Status::failed);
            result.outcome = Outcome::inconsistency;
            return result;
        }
    }

    if (s.all_fixed()) {
        s.set_status(Status::solved);
        result.outcome = Outcome::solved;
    }
    return result;
}

} // namespace fdr
