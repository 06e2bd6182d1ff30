#include "pafas/transform.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "pafas/analysis.hpp"
#include "pafas/error.hpp"
#include "pafas/predicates.hpp"
#include "pafas/syntax.hpp"

namespace pafas {

namespace {

Term to_r(const Term& q) {
    switch (q.kind()) {
    case Kind::ReadSet: {
        Term body = to_r(q.body());
        const auto& acts = q.read_actions();
        for (auto it = acts.rbegin(); it != acts.rend(); ++it) body = Term::read(*it, body);
        return body;
    }
    case Kind::ReadAction:
        throw Error(ErrorKind::WrongDialect, "read-action prefix in a read-set term");
    default: {
        Term out = q;
        for (std::size_t i = 0; i < q.child_count(); ++i)
            out = out.with_child(static_cast<int>(i), to_r(q.child(static_cast<int>(i))));
        return out;
    }
    }
}

Term to_s(const Term& q) {
    switch (q.kind()) {
    case Kind::ReadAction: {
        std::vector<Action> chain;
        const Term* cur = &q;
        while (cur->is(Kind::ReadAction)) {
            chain.push_back(cur->action());
            cur = &cur->body();
        }
        return Term::read_set(merge_read_actions(chain), to_s(*cur));
    }
    case Kind::ReadSet:
        throw Error(ErrorKind::WrongDialect, "read-set prefix in a read-action term");
    default: {
        Term out = q;
        for (std::size_t i = 0; i < q.child_count(); ++i)
            out = out.with_child(static_cast<int>(i), to_s(q.child(static_cast<int>(i))));
        return out;
    }
    }
}

[[noreturn]] void no_match(LawId law, const std::string& expected) {
    throw Error(ErrorKind::NoMatch, to_string(law) + " expects " + expected);
}

[[noreturn]] void violated(LawId law, const std::string& condition) {
    throw Error(ErrorKind::SideConditionViolated, to_string(law) + ": " + condition);
}

std::string join(const NameSet& names) {
    std::string s;
    for (const auto& n : names) s += (s.empty() ? "" : ",") + n;
    return s;
}

Term det_choice(const Term& sub) {
    if (!sub.is(Kind::Sum) || !sub.right().is(Kind::Par)) no_match(LawId::DetChoice, "Q + (R1 |[A]| R2)");
    const Term& q = sub.left();
    const Term& r = sub.right();
    NameSet common;
    NameSet sq = sort_of(q);
    NameSet sr = sort_of(r);
    std::set_intersection(sq.begin(), sq.end(), sr.begin(), sr.end(), std::inserter(common, common.begin()));
    if (!common.empty()) violated(LawId::DetChoice, "sorts of the summands share {" + join(common) + "}");
    if (!is_closed(q)) violated(LawId::DetChoice, "Q must be closed to decide determinism");
    Lts lts = explore(q, dialect_of(q));
    if (lts.truncated) violated(LawId::DetChoice, "determinism of Q undecided within the exploration bounds");
    if (!is_deterministic(lts)) violated(LawId::DetChoice, "Q is not deterministic");
    return det_choice_expansion(q, r.left(), r.sync(), r.right());
}

Term rename_law(const Term& whole, const Term& sub) {
    FreshNames fresh(sort_of(whole));
    std::map<std::string, std::string> rho;
    std::map<std::string, Action> back;
    for (const auto& n : sort_of(sub)) {
        std::string f = fresh.next(n);
        rho[n] = f;
        back[f] = Action::visible(n);
    }
    return Term::relabel(rename_actions(sub, rho), Relabelling(back));
}

Term rewrite(const Term& whole, const Term& sub, LawId law) {
    switch (law) {
    case LawId::L1:
        if (!sub.is(Kind::ReadAction) || !sub.body().is(Kind::ReadAction)) no_match(law, "mu |> (nu |> Q)");
        return Term::read(sub.body().action(), Term::read(sub.action(), sub.body().body()));
    case LawId::L2: {
        if (!sub.is(Kind::ReadAction) || !sub.body().is(Kind::ReadAction)) no_match(law, "a |> (mu |> Q)");
        const Action& outer = sub.action();
        const Action& inner = sub.body().action();
        if (outer.lazy() != inner.lazy()) violated(law, "inner read action must be a copy of " + outer.lazy().str());
        if (outer.is_urgent()) return Term::read(outer, sub.body().body());
        return sub.body();
    }
    case LawId::L3:
        if (!sub.is(Kind::Sum) || !sub.left().is(Kind::ReadAction)) no_match(law, "(mu |> Q) + R");
        return Term::read(sub.left().action(), Term::sum(sub.left().body(), sub.right()));
    case LawId::L4: {
        if (!sub.is(Kind::ReadAction) || !sub.body().is(Kind::Par)) no_match(law, "a |> (Q1 |[A]| Q2)");
        const Action& a = sub.action();
        if (a.is_tau()) violated(law, "the read action must be visible");
        const Term& par = sub.body();
        if (sort_of(par).contains(a.name())) violated(law, a.name() + " occurs in the sort of the parallel composition");
        NameSet sync = par.sync();
        sync.insert(a.name());
        return Term::par(Term::read(a, par.left()), Term::read(a, par.right()), sync);
    }
    case LawId::L5: {
        if (!sub.is(Kind::Relabel) || !sub.body().is(Kind::ReadAction)) no_match(law, "(mu |> Q)[F]");
        const Relabelling& phi = sub.relabelling();
        const Term& read = sub.body();
        return Term::read(phi.apply(read.action()), Term::relabel(read.body(), phi));
    }
    case LawId::L6:
        if (!sub.is(Kind::Relabel) || !sub.body().is(Kind::Relabel)) no_match(law, "Q[F][G]");
        return Term::relabel(sub.body().body(), sub.relabelling().after(sub.body().relabelling()));
    case LawId::L7:
        if (!sub.is(Kind::Rec)) no_match(law, "rec x. Q");
        return unfold(sub);
    case LawId::DetChoice:
        return det_choice(sub);
    case LawId::Rename:
        return rename_law(whole, sub);
    }
    no_match(law, "a known law");
}

// ---- normalisation ---------------------------------------------------------

class Normalizer {
public:
    explicit Normalizer(const Term& q) : fresh_(sort_of(q)) {}

    Term norm(const Term& t, Path& path) {
        switch (t.kind()) {
        case Kind::Nil:
        case Kind::Var:
            return t;
        case Kind::Sum:
        case Kind::Rec:
            if (auto v = check_rnf(t)) {
                Path p = path;
                p.insert(p.end(), v->path.begin(), v->path.end());
                throw Error(ErrorKind::OutsideFragment,
                            std::string(t.is(Kind::Sum) ? "choice" : "recursion") + " at " + path_str(path) +
                                " is not in read normal form: " + v->condition + " (at " + path_str(p) + ")");
            }
            return t;
        case Kind::Prefix:
            return Term::prefix(t.action(), child(t, 0, path));
        case Kind::Par:
            return Term::par(child(t, 0, path), child(t, 1, path), t.sync());
        case Kind::Relabel: {
            Term body = child(t, 0, path);
            if (body.is(Kind::Relabel)) return Term::relabel(body.body(), t.relabelling().after(body.relabelling()));
            return Term::relabel(body, t.relabelling());
        }
        case Kind::ReadAction:
            return push(t.action(), child(t, 0, path));
        case Kind::ReadSet:
            throw Error(ErrorKind::WrongDialect, "normalisation applies to read-action terms");
        }
        return t;
    }

private:
    Term child(const Term& t, int i, Path& path) {
        path.push_back(i);
        Term r = norm(t.child(i), path);
        path.pop_back();
        return r;
    }

    // mu |> n for n in RNF.
    Term push(const Action& mu, const Term& n) {
        switch (n.kind()) {
        case Kind::Par: {
            std::string e = fresh_.next();
            Action ea = Action::visible(e, mu.is_urgent());
            NameSet sync = n.sync();
            sync.insert(e);
            Term par = Term::par(push(ea, n.left()), push(ea, n.right()), sync);
            return Term::relabel(par, Relabelling::single(e, mu.lazy()));
        }
        case Kind::Relabel: {
            std::string e = fresh_.next();
            Relabelling phi = n.relabelling().with(e, mu.lazy());
            Term inner = push(Action::visible(e, mu.is_urgent()), n.body());
            if (inner.is(Kind::Relabel)) return Term::relabel(inner.body(), phi.after(inner.relabelling()));
            return Term::relabel(inner, phi);
        }
        case Kind::Rec:
            if (!is_read_guarded(n)) return push(mu, unfold(n));
            return Term::read(mu, n);
        default:
            return Term::read(mu, n);
        }
    }

    FreshNames fresh_;
};

} // namespace

Term s_to_r(const Term& q) {
    if (auto v = check_proper(q)) throw Error(ErrorKind::ImproperInput, "term is not proper: " + v->str());
    return to_r(q);
}

ReadSetActions merge_read_actions(const std::vector<Action>& actions) {
    std::map<Action, bool> urgent; // keyed by lazy copy
    for (const auto& a : actions) urgent[a.lazy()] = urgent[a.lazy()] || a.is_urgent();
    ReadSetActions out;
    for (const auto& [a, u] : urgent) out.push_back(u ? a.urgent() : a);
    return out;
}

Term r_to_s(const Term& q) {
    if (auto v = check_rnf(q)) throw Error(ErrorKind::NotRnf, "term is not in read normal form: " + v->str());
    return to_s(q);
}

std::string to_string(LawId law) {
    switch (law) {
    case LawId::L1: return "L1";
    case LawId::L2: return "L2";
    case LawId::L3: return "L3";
    case LawId::L4: return "L4";
    case LawId::L5: return "L5";
    case LawId::L6: return "L6";
    case LawId::L7: return "L7";
    case LawId::DetChoice: return "DetChoice";
    case LawId::Rename: return "Rename";
    }
    return "?";
}

LawId parse_law(const std::string& text) {
    std::string s;
    for (char c : text) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    static const std::map<std::string, LawId> names = {
        {"l1", LawId::L1}, {"l2", LawId::L2}, {"l3", LawId::L3}, {"l4", LawId::L4}, {"l5", LawId::L5},
        {"l6", LawId::L6}, {"l7", LawId::L7}, {"detchoice", LawId::DetChoice}, {"rename", LawId::Rename}};
    auto it = names.find(s);
    if (it == names.end()) throw Error(ErrorKind::NoMatch, "unknown law '" + text + "'");
    return it->second;
}

Term apply_law(const Term& q, LawId law, const Path& path) {
    const Term* sub = &q;
    for (int i : path) {
        if (i < 0 || static_cast<std::size_t>(i) >= sub->child_count())
            throw Error(ErrorKind::NoMatch, "no subterm at " + path_str(path));
        sub = &sub->child(i);
    }
    return q.replace_at(path, rewrite(q, *sub, law));
}

Term det_choice_expansion(const Term& q, const Term& r1, const NameSet& sync, const Term& r2) {
    NameSet a = sync;
    NameSet sq = sort_of(q);
    a.insert(sq.begin(), sq.end());
    return Term::par(Term::sum(q, r1), Term::sum(q, r2), a);
}

Term rename_actions(const Term& t, const std::map<std::string, std::string>& renaming) {
    auto name = [&](const std::string& n) {
        auto it = renaming.find(n);
        return it == renaming.end() ? n : it->second;
    };
    auto act = [&](const Action& a) { return a.is_tau() ? a : Action::visible(name(a.name()), a.is_urgent()); };
    auto sub = [&](int i) { return rename_actions(t.child(i), renaming); };
    switch (t.kind()) {
    case Kind::Nil:
    case Kind::Var:
        return t;
    case Kind::Prefix: return Term::prefix(act(t.action()), sub(0));
    case Kind::ReadAction: return Term::read(act(t.action()), sub(0));
    case Kind::ReadSet: {
        ReadSetActions acts;
        for (const auto& a : t.read_actions()) acts.push_back(act(a));
        return Term::read_set(acts, sub(0));
    }
    case Kind::Sum: return Term::sum(sub(0), sub(1));
    case Kind::Par: {
        NameSet sync;
        for (const auto& n : t.sync()) sync.insert(name(n));
        return Term::par(sub(0), sub(1), sync);
    }
    case Kind::Relabel: {
        std::map<std::string, Action> m;
        for (const auto& [from, to] : t.relabelling().mapping()) m[name(from)] = act(to);
        return Term::relabel(sub(0), Relabelling(m));
    }
    case Kind::Rec: return Term::rec(t.name(), sub(0));
    }
    return t;
}

Term normalize_to_rnf(const Term& q) {
    Normalizer n(q);
    Path path;
    return n.norm(q, path);
}

} // namespace pafas
