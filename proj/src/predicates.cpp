#include "pafas/predicates.hpp"
#include "pafas/error.hpp"

namespace pafas {

namespace {

void collect_sort(const Term& t, NameSet& out) {
    switch (t.kind()) {
    case Kind::Prefix:
    case Kind::ReadAction:
        if (!t.action().is_tau()) out.insert(t.action().name());
        break;
    case Kind::ReadSet:
        for (const auto& a : t.read_actions())
            if (!a.is_tau()) out.insert(a.name());
        break;
    case Kind::Par:
        out.insert(t.sync().begin(), t.sync().end());
        break;
    case Kind::Relabel:
        for (const auto& [from, to] : t.relabelling().mapping()) {
            out.insert(from);
            if (!to.is_tau()) out.insert(to.name());
        }
        for (const auto& a : t.relabelling().image_base()) out.insert(a);
        break;
    default:
        break;
    }
    for (std::size_t i = 0; i < t.child_count(); ++i) collect_sort(t.child(static_cast<int>(i)), out);
}

bool guarded_below(const std::string& x, const Term& t, bool under_prefix) {
    switch (t.kind()) {
    case Kind::Var: return t.name() != x || under_prefix;
    case Kind::Rec:
        if (t.name() == x) return true;
        return guarded_below(x, t.body(), under_prefix);
    case Kind::Prefix: return guarded_below(x, t.body(), true);
    default:
        for (std::size_t i = 0; i < t.child_count(); ++i)
            if (!guarded_below(x, t.child(static_cast<int>(i)), under_prefix)) return false;
        return true;
    }
}

bool is_read_node(const Term& t) { return t.is(Kind::ReadAction) || t.is(Kind::ReadSet); }

template <typename Visit>
std::optional<Violation> walk(const Term& t, Path& path, Visit&& visit) {
    if (auto v = visit(t, path)) return v;
    for (std::size_t i = 0; i < t.child_count(); ++i) {
        path.push_back(static_cast<int>(i));
        auto v = walk(t.child(static_cast<int>(i)), path, visit);
        path.pop_back();
        if (v) return v;
    }
    return std::nullopt;
}

/// x-proper below `t`, stopping where x is rebound.
std::optional<Violation> x_proper_at(const std::string& x, const Term& t, Path& path) {
    if (t.is(Kind::Rec) && t.name() == x) return std::nullopt;
    if (t.is(Kind::Sum) || is_read_node(t) || t.is(Kind::Rec)) {
        if (!is_guarded(x, t))
            return Violation{x + "-proper: " + x + " is not guarded in this subterm", path};
    }
    for (std::size_t i = 0; i < t.child_count(); ++i) {
        path.push_back(static_cast<int>(i));
        auto v = x_proper_at(x, t.child(static_cast<int>(i)), path);
        path.pop_back();
        if (v) return v;
    }
    return std::nullopt;
}

std::optional<Violation> stratified_at(const Term& t, bool initial, Path& path) {
    switch (t.kind()) {
    case Kind::Prefix:
        if (initial && t.action().is_urgent())
            return Violation{"urgent prefix in an initial-only position", path};
        path.push_back(0);
        if (auto v = stratified_at(t.body(), true, path)) return v;
        path.pop_back();
        return std::nullopt;
    case Kind::ReadAction:
        if (initial && t.action().is_urgent())
            return Violation{"urgent read action in an initial-only position", path};
        break;
    case Kind::ReadSet:
        if (initial)
            for (const auto& a : t.read_actions())
                if (a.is_urgent()) return Violation{"urgent read-set member in an initial-only position", path};
        break;
    default:
        break;
    }
    for (std::size_t i = 0; i < t.child_count(); ++i) {
        path.push_back(static_cast<int>(i));
        auto v = stratified_at(t.child(static_cast<int>(i)), initial, path);
        path.pop_back();
        if (v) return v;
    }
    return std::nullopt;
}

} // namespace

std::string Violation::str() const { return condition + " (at " + path_str(path) + ")"; }

NameSet sort_of(const Term& t) {
    NameSet out;
    collect_sort(t, out);
    return out;
}

bool is_guarded(const std::string& x, const Term& t) { return guarded_below(x, t, false); }

bool has_guarded_recursion(const Term& t) {
    if (t.is(Kind::Rec) && !is_guarded(t.name(), t.body())) return false;
    for (std::size_t i = 0; i < t.child_count(); ++i)
        if (!has_guarded_recursion(t.child(static_cast<int>(i)))) return false;
    return true;
}

bool is_read_guarded(const Term& t) {
    switch (t.kind()) {
    case Kind::Nil:
    case Kind::Var:
    case Kind::Prefix: return true;
    case Kind::ReadAction:
    case Kind::ReadSet: return false;
    default:
        for (std::size_t i = 0; i < t.child_count(); ++i)
            if (!is_read_guarded(t.child(static_cast<int>(i)))) return false;
        return true;
    }
}

std::optional<Violation> check_read_proper(const Term& t) {
    Path path;
    return walk(t, path, [](const Term& s, const Path& p) -> std::optional<Violation> {
        if (s.is(Kind::Sum) && !is_read_guarded(s))
            return Violation{"read-proper: choice is not read-guarded", p};
        if (s.is(Kind::ReadSet) && !is_read_guarded(s.body())) {
            Path q = p;
            q.push_back(0);
            return Violation{"read-proper: body of read set is not read-guarded", q};
        }
        return std::nullopt;
    });
}

std::optional<Violation> check_x_proper(const std::string& x, const Term& t) {
    Path path;
    return x_proper_at(x, t, path);
}

std::optional<Violation> check_rec_proper(const Term& t) {
    Path path;
    return walk(t, path, [](const Term& s, const Path& p) -> std::optional<Violation> {
        if (!s.is(Kind::Rec) || is_read_guarded(s.body())) return std::nullopt;
        if (auto v = check_x_proper(s.name(), s.body())) {
            Path q = p;
            q.push_back(0);
            q.insert(q.end(), v->path.begin(), v->path.end());
            return Violation{"rec-proper: body neither read-guarded nor " + v->condition, q};
        }
        return std::nullopt;
    });
}

std::optional<Violation> check_proper(const Term& t) {
    if (auto v = check_read_proper(t)) return v;
    return check_rec_proper(t);
}

bool is_read_proper(const Term& t) { return !check_read_proper(t); }
bool is_x_proper(const std::string& x, const Term& t) { return !check_x_proper(x, t); }
bool is_rec_proper(const Term& t) { return !check_rec_proper(t); }
bool is_proper(const Term& t) { return !check_proper(t); }

std::optional<Violation> check_ra_proper(const Term& t) {
    Path path;
    return walk(t, path, [](const Term& s, const Path& p) -> std::optional<Violation> {
        if (s.is(Kind::Sum) && !is_read_guarded(s))
            return Violation{"ra-proper: choice is not read-guarded", p};
        if (s.is(Kind::ReadAction) && !is_read_guarded(s.body()) && !s.body().is(Kind::ReadAction)) {
            Path q = p;
            q.push_back(0);
            return Violation{"ra-proper: read prefix body is neither read-guarded nor a read prefix", q};
        }
        return std::nullopt;
    });
}

std::optional<Violation> check_rnf(const Term& t) {
    if (auto v = check_ra_proper(t)) return v;
    return check_rec_proper(t);
}

bool is_rnf(const Term& t) { return !check_rnf(t); }

std::optional<Violation> check_stratified(const Term& t) {
    Path path;
    return stratified_at(t, false, path);
}

bool is_initial(const Term& t) {
    Path path;
    return !stratified_at(t, true, path);
}

bool is_legal_read_set(const ReadSetActions& actions) {
    for (std::size_t i = 0; i < actions.size(); ++i)
        for (std::size_t j = i + 1; j < actions.size(); ++j)
            if (actions[i].lazy() == actions[j].lazy()) return false;
    return true;
}

ReadSetActions urgentify_read_set(const ReadSetActions& actions) {
    ReadSetActions out;
    out.reserve(actions.size());
    for (const auto& a : actions) out.push_back(a.urgent());
    return out;
}

NameSet urgent_set(const ReadSetActions& actions) {
    NameSet out;
    for (const auto& a : actions)
        if (a.is_urgent()) out.insert(a.name());
    return out;
}

Dialect dialect_of(const Term& t, Dialect fallback) {
    bool r = contains_kind(t, Kind::ReadAction);
    bool s = contains_kind(t, Kind::ReadSet);
    if (r && s) throw Error(ErrorKind::WrongDialect, "term mixes read-action and read-set prefixes");
    if (r) return Dialect::R;
    if (s) return Dialect::S;
    return fallback;
}

} // namespace pafas
