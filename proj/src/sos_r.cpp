#include "pafas/sos.hpp"
#include "pafas/error.hpp"

#include <algorithm>

namespace pafas {

std::string StepLabel::str() const {
    switch (kind) {
    case StepKind::Ordinary: return action.str();
    case StepKind::Read: return "?" + action.str();
    case StepKind::Time: return refusal.str();
    }
    return {};
}

namespace {

struct Derivations {
    std::vector<Transition> ordinary;
    std::vector<Transition> read;
};

void normalize(std::vector<Transition>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Tables for ordinary and read behaviour computed together, so parallel
// composition can pair an ordinary step with an ordinary-or-read partner.
Derivations derive(const Term& q) {
    Derivations d;
    switch (q.kind()) {
    case Kind::Nil:
        break;
    case Kind::Var:
        throw Error(ErrorKind::OpenTerm, "transitions of an open term (free variable " + q.name() + ")");
    case Kind::Prefix:
        d.ordinary.push_back({q.action().lazy(), q.body()});
        break;
    case Kind::ReadAction: {
        Derivations inner = derive(q.body());
        d.ordinary = std::move(inner.ordinary);
        d.read.push_back({q.action().lazy(), q});
        for (auto& t : inner.read) d.read.push_back({t.action, Term::read(q.action(), t.target)});
        break;
    }
    case Kind::ReadSet:
        throw Error(ErrorKind::WrongDialect, "read-set prefix in a read-action term");
    case Kind::Sum: {
        Derivations l = derive(q.left());
        Derivations r = derive(q.right());
        d.ordinary = std::move(l.ordinary);
        d.ordinary.insert(d.ordinary.end(), r.ordinary.begin(), r.ordinary.end());
        for (auto& t : l.read) d.read.push_back({t.action, Term::sum(t.target, q.right())});
        for (auto& t : r.read) d.read.push_back({t.action, Term::sum(q.left(), t.target)});
        break;
    }
    case Kind::Par: {
        const NameSet& sync = q.sync();
        Derivations l = derive(q.left());
        Derivations r = derive(q.right());
        auto synced = [&](const Action& a) { return !a.is_tau() && sync.contains(a.name()); };
        auto par = [&](const Term& x, const Term& y) { return Term::par(x, y, sync); };

        for (const auto& t : l.ordinary) {
            if (!synced(t.action)) {
                d.ordinary.push_back({t.action, par(t.target, q.right())});
                continue;
            }
            for (const auto* partners : {&r.ordinary, &r.read})
                for (const auto& u : *partners)
                    if (u.action == t.action) d.ordinary.push_back({t.action, par(t.target, u.target)});
        }
        for (const auto& u : r.ordinary) {
            if (!synced(u.action)) {
                d.ordinary.push_back({u.action, par(q.left(), u.target)});
                continue;
            }
            for (const auto* partners : {&l.ordinary, &l.read})
                for (const auto& t : *partners)
                    if (t.action == u.action) d.ordinary.push_back({u.action, par(t.target, u.target)});
        }
        for (const auto& t : l.read) {
            if (!synced(t.action)) {
                d.read.push_back({t.action, par(t.target, q.right())});
                continue;
            }
            for (const auto& u : r.read)
                if (u.action == t.action) d.read.push_back({t.action, par(t.target, u.target)});
        }
        for (const auto& u : r.read)
            if (!synced(u.action)) d.read.push_back({u.action, par(q.left(), u.target)});
        break;
    }
    case Kind::Relabel: {
        Derivations inner = derive(q.body());
        const Relabelling& phi = q.relabelling();
        for (auto& t : inner.ordinary) d.ordinary.push_back({phi.apply(t.action), Term::relabel(t.target, phi)});
        for (auto& t : inner.read) d.read.push_back({phi.apply(t.action), Term::relabel(t.target, phi)});
        break;
    }
    case Kind::Rec:
        return derive(unfold(q));
    }
    normalize(d.ordinary);
    normalize(d.read);
    return d;
}

} // namespace

std::vector<Transition> ordinary_steps(const Term& q) { return derive(q).ordinary; }

std::vector<Transition> read_steps(const Term& q) { return derive(q).read; }

std::vector<Step> steps(const Term& q) {
    Derivations d = derive(q);
    std::vector<Step> out;
    out.reserve(d.ordinary.size() + d.read.size());
    for (auto& t : d.ordinary) out.push_back({StepLabel::ordinary(t.action), t.target});
    for (auto& t : d.read) out.push_back({StepLabel::read(t.action), t.target});
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace pafas
