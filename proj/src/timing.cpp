// Refusal (time-step) semantics shared by both languages. The only rule that
// differs is the one for read prefixes: read-action prefixes age exactly one
// action, read sets age all members at once.

#include "pafas/error.hpp"
#include "pafas/predicates.hpp"
#include "pafas/sos.hpp"

namespace pafas {

namespace {

/// Names whose preimage can differ from themselves: keys and visible targets.
NameSet touched_names(const Relabelling& phi) {
    NameSet k;
    for (const auto& [from, to] : phi.mapping()) {
        k.insert(from);
        if (!to.is_tau()) k.insert(to.name());
    }
    return k;
}

/// Phi^-1(x + tau) - tau, which the body must be able to refuse.
RefusalSet relabel_requirement(const Relabelling& phi, const RefusalSet& x) {
    NameSet hidden = phi.hidden();
    NameSet pre;
    for (const auto& n : x.names()) {
        NameSet p = phi.preimage(n);
        pre.insert(p.begin(), p.end());
    }
    if (x.is_cofinite()) return RefusalSet::all_except(pre);
    pre.insert(hidden.begin(), hidden.end());
    return RefusalSet::finite(pre);
}

/// Largest X with (A n (X1 u X2)) u ((X1 n X2) - A).
RefusalSet par_refusal(const NameSet& sync, const RefusalSet& m1, const RefusalSet& m2) {
    RefusalSet a = RefusalSet::finite(sync);
    return a.intersected(m1.united(m2)).united(m1.intersected(m2).minus(a));
}

} // namespace

std::optional<TimeStep> max_refusal(const Term& q) {
    switch (q.kind()) {
    case Kind::Nil:
        return TimeStep{RefusalSet::full(), q};
    case Kind::Var:
        throw Error(ErrorKind::OpenTerm, "time step of an open term (free variable " + q.name() + ")");
    case Kind::Prefix: {
        const Action& a = q.action();
        if (!a.is_urgent()) return TimeStep{RefusalSet::full(), Term::prefix(a.urgent(), q.body())};
        if (a.is_tau()) return std::nullopt;
        return TimeStep{RefusalSet::all_except({a.name()}), q};
    }
    case Kind::ReadAction: {
        const Action& a = q.action();
        if (a.is_urgent() && a.is_tau()) return std::nullopt;
        auto inner = max_refusal(q.body());
        if (!inner) return std::nullopt;
        RefusalSet m = a.is_urgent() ? inner->max.minus(NameSet{a.name()}) : inner->max;
        return TimeStep{std::move(m), Term::read(a.urgent(), inner->target)};
    }
    case Kind::ReadSet: {
        NameSet urgent = urgent_set(q.read_actions());
        if (urgent.contains("tau")) return std::nullopt;
        auto inner = max_refusal(q.body());
        if (!inner) return std::nullopt;
        return TimeStep{inner->max.minus(urgent), Term::read_set(urgentify_read_set(q.read_actions()), inner->target)};
    }
    case Kind::Sum: {
        auto l = max_refusal(q.left());
        if (!l) return std::nullopt;
        auto r = max_refusal(q.right());
        if (!r) return std::nullopt;
        return TimeStep{l->max.intersected(r->max), Term::sum(l->target, r->target)};
    }
    case Kind::Par: {
        auto l = max_refusal(q.left());
        if (!l) return std::nullopt;
        auto r = max_refusal(q.right());
        if (!r) return std::nullopt;
        return TimeStep{par_refusal(q.sync(), l->max, r->max), Term::par(l->target, r->target, q.sync())};
    }
    case Kind::Relabel: {
        auto inner = max_refusal(q.body());
        if (!inner) return std::nullopt;
        const Relabelling& phi = q.relabelling();
        // Hidden actions must be refusable, otherwise an urgent tau blocks time.
        if (!RefusalSet::finite(phi.hidden()).subset_of(inner->max)) return std::nullopt;
        NameSet touched = touched_names(phi);
        NameSet selected;
        for (const auto& a : touched)
            if (RefusalSet::finite(phi.preimage(a)).subset_of(inner->max)) selected.insert(a);
        RefusalSet m = inner->max.minus(touched).united(RefusalSet::finite(selected));
        return TimeStep{std::move(m), Term::relabel(inner->target, phi)};
    }
    case Kind::Rec:
        return max_refusal(unfold(q));
    }
    return std::nullopt;
}

std::optional<Term> can_refuse(const Term& q, const RefusalSet& x) {
    switch (q.kind()) {
    case Kind::Nil:
        return q;
    case Kind::Var:
        throw Error(ErrorKind::OpenTerm, "time step of an open term (free variable " + q.name() + ")");
    case Kind::Prefix: {
        const Action& a = q.action();
        if (!a.is_urgent()) return Term::prefix(a.urgent(), q.body());
        if (a.is_tau() || x.contains(a.name())) return std::nullopt;
        return q;
    }
    case Kind::ReadAction: {
        const Action& a = q.action();
        if (a.is_urgent() && (a.is_tau() || x.contains(a.name()))) return std::nullopt;
        auto inner = can_refuse(q.body(), x);
        if (!inner) return std::nullopt;
        return Term::read(a.urgent(), *inner);
    }
    case Kind::ReadSet: {
        for (const auto& a : q.read_actions())
            if (a.is_urgent() && (a.is_tau() || x.contains(a.name()))) return std::nullopt;
        auto inner = can_refuse(q.body(), x);
        if (!inner) return std::nullopt;
        return Term::read_set(urgentify_read_set(q.read_actions()), *inner);
    }
    case Kind::Sum: {
        auto l = can_refuse(q.left(), x);
        if (!l) return std::nullopt;
        auto r = can_refuse(q.right(), x);
        if (!r) return std::nullopt;
        return Term::sum(*l, *r);
    }
    case Kind::Par: {
        // Unsynchronised members must be refused by both sides, synchronised
        // ones by at least one side: try every such split.
        RefusalSet a = RefusalSet::finite(q.sync());
        RefusalSet both = x.minus(a);
        std::vector<std::string> shared;
        for (const auto& n : q.sync())
            if (x.contains(n)) shared.push_back(n);
        std::vector<int> choice(shared.size(), 0);
        for (;;) {
            NameSet s1, s2;
            for (std::size_t i = 0; i < shared.size(); ++i) {
                if (choice[i] != 1) s1.insert(shared[i]);
                if (choice[i] != 0) s2.insert(shared[i]);
            }
            auto l = can_refuse(q.left(), both.united(RefusalSet::finite(s1)));
            if (l) {
                auto r = can_refuse(q.right(), both.united(RefusalSet::finite(s2)));
                if (r) return Term::par(*l, *r, q.sync());
            }
            std::size_t i = 0;
            while (i < choice.size() && ++choice[i] == 3) choice[i++] = 0;
            if (i == choice.size()) break;
        }
        return std::nullopt;
    }
    case Kind::Relabel: {
        auto inner = can_refuse(q.body(), relabel_requirement(q.relabelling(), x));
        if (!inner) return std::nullopt;
        return Term::relabel(*inner, q.relabelling());
    }
    case Kind::Rec:
        return can_refuse(unfold(q), x);
    }
    return std::nullopt;
}

std::optional<Term> one_step(const Term& q) {
    auto t = max_refusal(q);
    if (!t || !t->max.is_full()) return std::nullopt;
    return t->target;
}

} // namespace pafas
