#include "pafas/sos.hpp"
#include "pafas/error.hpp"

#include <algorithm>

namespace pafas {

std::vector<Transition> action_steps_s(const Term& q) {
    std::vector<Transition> out;
    switch (q.kind()) {
    case Kind::Nil:
        return out;
    case Kind::Var:
        throw Error(ErrorKind::OpenTerm, "transitions of an open term (free variable " + q.name() + ")");
    case Kind::Prefix:
        out.push_back({q.action().lazy(), q.body()});
        return out;
    case Kind::ReadAction:
        throw Error(ErrorKind::WrongDialect, "read-action prefix in a read-set term");
    case Kind::ReadSet:
        // Reading leaves the term unchanged; a body step drops the read set.
        for (const auto& a : q.read_actions()) out.push_back({a.lazy(), q});
        for (auto& t : action_steps_s(q.body())) out.push_back(std::move(t));
        break;
    case Kind::Sum:
        out = action_steps_s(q.left());
        for (auto& t : action_steps_s(q.right())) out.push_back(std::move(t));
        break;
    case Kind::Par: {
        const NameSet& sync = q.sync();
        auto l = action_steps_s(q.left());
        auto r = action_steps_s(q.right());
        auto synced = [&](const Action& a) { return !a.is_tau() && sync.contains(a.name()); };
        for (const auto& t : l) {
            if (!synced(t.action)) {
                out.push_back({t.action, Term::par(t.target, q.right(), sync)});
                continue;
            }
            for (const auto& u : r)
                if (u.action == t.action) out.push_back({t.action, Term::par(t.target, u.target, sync)});
        }
        for (const auto& u : r)
            if (!synced(u.action)) out.push_back({u.action, Term::par(q.left(), u.target, sync)});
        break;
    }
    case Kind::Relabel: {
        const Relabelling& phi = q.relabelling();
        for (auto& t : action_steps_s(q.body())) out.push_back({phi.apply(t.action), Term::relabel(t.target, phi)});
        break;
    }
    case Kind::Rec:
        return action_steps_s(unfold(q));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<TimeStep> max_refusal_s(const Term& q) { return max_refusal(q); }

std::optional<Term> can_refuse_s(const Term& q, const RefusalSet& x) { return can_refuse(q, x); }

std::optional<Term> one_step_s(const Term& q) { return one_step(q); }

} // namespace pafas
