#include "pafas/term.hpp"
#include "pafas/error.hpp"
#include "pafas/predicates.hpp"

#include <algorithm>
#include <cassert>

namespace pafas {

struct Term::Node {
    Kind kind = Kind::Nil;
    Action action;
    ReadSetActions read_actions;
    std::string name;
    std::vector<Term> children;
    NameSet sync;
    Relabelling relabelling;
    std::size_t hash = 0;
    std::size_t size = 1;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::shared_ptr<Term::Node> make_node(Kind kind) {
    auto n = std::make_shared<Term::Node>();
    n->kind = kind;
    return n;
}

} // namespace

std::string path_str(const Path& path) {
    if (path.empty()) return "root";
    std::string s;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) s += ".";
        s += std::to_string(path[i]);
    }
    return s;
}

namespace {

// Hash and size are filled in once the node is complete.
void finish(Term::Node& node) {
    std::size_t h = static_cast<std::size_t>(node.kind) * 1315423911u;
    h = mix(h, node.action.hash());
    for (const auto& a : node.read_actions) h = mix(h, a.hash());
    h = mix(h, std::hash<std::string>{}(node.name));
    for (const auto& s : node.sync) h = mix(h, std::hash<std::string>{}(s));
    for (const auto& [k, v] : node.relabelling.mapping())
        h = mix(mix(h, std::hash<std::string>{}(k)), v.hash());
    for (const auto& c : node.children) {
        h = mix(h, c.hash());
        node.size += c.size();
    }
    node.hash = h;
}

} // namespace

Term Term::nil() {
    static const Term shared = [] {
        auto n = make_node(Kind::Nil);
        finish(*n);
        return Term(n);
    }();
    return shared;
}

Term Term::var(std::string name) {
    auto n = make_node(Kind::Var);
    n->name = std::move(name);
    finish(*n);
    return Term(n);
}

Term Term::prefix(Action action, Term body) {
    auto n = make_node(Kind::Prefix);
    n->action = std::move(action);
    n->children.push_back(std::move(body));
    finish(*n);
    return Term(n);
}

Term Term::read(Action action, Term body) {
    auto n = make_node(Kind::ReadAction);
    n->action = std::move(action);
    n->children.push_back(std::move(body));
    finish(*n);
    return Term(n);
}

Term Term::read_set(ReadSetActions actions, Term body) {
    std::sort(actions.begin(), actions.end());
    actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
    if (!is_legal_read_set(actions))
        throw Error(ErrorKind::IllegalReadSet,
                    "read set contains both a lazy and an urgent copy of the same action");
    auto n = make_node(Kind::ReadSet);
    n->read_actions = std::move(actions);
    n->children.push_back(std::move(body));
    finish(*n);
    return Term(n);
}

Term Term::sum(Term left, Term right) {
    auto n = make_node(Kind::Sum);
    n->children.push_back(std::move(left));
    n->children.push_back(std::move(right));
    finish(*n);
    return Term(n);
}

Term Term::par(Term left, Term right, NameSet sync) {
    auto n = make_node(Kind::Par);
    n->children.push_back(std::move(left));
    n->children.push_back(std::move(right));
    n->sync = std::move(sync);
    finish(*n);
    return Term(n);
}

Term Term::relabel(Term body, Relabelling relabelling) {
    auto n = make_node(Kind::Relabel);
    n->children.push_back(std::move(body));
    n->relabelling = std::move(relabelling);
    finish(*n);
    return Term(n);
}

Term Term::rec(std::string var, Term body) {
    auto n = make_node(Kind::Rec);
    n->name = std::move(var);
    n->children.push_back(std::move(body));
    finish(*n);
    return Term(n);
}

Kind Term::kind() const noexcept { return node_->kind; }

const Action& Term::action() const {
    assert(is(Kind::Prefix) || is(Kind::ReadAction));
    return node_->action;
}
const ReadSetActions& Term::read_actions() const {
    assert(is(Kind::ReadSet));
    return node_->read_actions;
}
const std::string& Term::name() const {
    assert(is(Kind::Var) || is(Kind::Rec));
    return node_->name;
}
const Term& Term::body() const {
    assert(!node_->children.empty());
    return node_->children[0];
}
const Term& Term::right() const {
    assert(node_->children.size() == 2);
    return node_->children[1];
}
const NameSet& Term::sync() const { return node_->sync; }
const Relabelling& Term::relabelling() const { return node_->relabelling; }

std::size_t Term::child_count() const noexcept { return node_->children.size(); }
const Term& Term::child(int index) const { return node_->children.at(static_cast<std::size_t>(index)); }

Term Term::with_child(int index, Term replacement) const {
    switch (kind()) {
    case Kind::Prefix: return prefix(action(), std::move(replacement));
    case Kind::ReadAction: return read(action(), std::move(replacement));
    case Kind::ReadSet: return read_set(read_actions(), std::move(replacement));
    case Kind::Relabel: return relabel(std::move(replacement), relabelling());
    case Kind::Rec: return rec(name(), std::move(replacement));
    case Kind::Sum:
        return index == 0 ? sum(std::move(replacement), right()) : sum(left(), std::move(replacement));
    case Kind::Par:
        return index == 0 ? par(std::move(replacement), right(), sync())
                          : par(left(), std::move(replacement), sync());
    case Kind::Nil:
    case Kind::Var: break;
    }
    throw Error(ErrorKind::NoMatch, "term has no child " + std::to_string(index));
}

const Term& Term::at(const Path& path) const {
    const Term* t = this;
    for (int i : path) {
        if (i < 0 || static_cast<std::size_t>(i) >= t->child_count())
            throw Error(ErrorKind::NoMatch, "path " + path_str(path) + " does not address a subterm");
        t = &t->child(i);
    }
    return *t;
}

Term Term::replace_at(const Path& path, Term replacement) const {
    if (path.empty()) return replacement;
    Path rest(path.begin() + 1, path.end());
    if (path[0] < 0 || static_cast<std::size_t>(path[0]) >= child_count())
        throw Error(ErrorKind::NoMatch, "path " + path_str(path) + " does not address a subterm");
    return with_child(path[0], child(path[0]).replace_at(rest, std::move(replacement)));
}

std::size_t Term::hash() const noexcept { return node_->hash; }
std::size_t Term::size() const noexcept { return node_->size; }

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash) return false;
    return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (auto c = x.kind <=> y.kind; c != 0) return c;
    if (auto c = x.action <=> y.action; c != 0) return c;
    if (auto c = x.read_actions <=> y.read_actions; c != 0) return c;
    if (auto c = x.name.compare(y.name); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = x.sync <=> y.sync; c != 0) return c;
    if (auto c = x.relabelling <=> y.relabelling; c != 0) return c;
    if (auto c = x.children.size() <=> y.children.size(); c != 0) return c;
    for (std::size_t i = 0; i < x.children.size(); ++i)
        if (auto c = x.children[i] <=> y.children[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

namespace {
void collect_free(const Term& t, NameSet& bound, NameSet& out) {
    switch (t.kind()) {
    case Kind::Var:
        if (!bound.contains(t.name())) out.insert(t.name());
        return;
    case Kind::Rec: {
        bool fresh = bound.insert(t.name()).second;
        collect_free(t.body(), bound, out);
        if (fresh) bound.erase(t.name());
        return;
    }
    default:
        for (std::size_t i = 0; i < t.child_count(); ++i) collect_free(t.child(static_cast<int>(i)), bound, out);
    }
}
} // namespace

NameSet free_vars(const Term& t) {
    NameSet bound, out;
    collect_free(t, bound, out);
    return out;
}

bool is_closed(const Term& t) { return free_vars(t).empty(); }

Term substitute(const Term& t, const std::string& x, const Term& s) {
    switch (t.kind()) {
    case Kind::Nil: return t;
    case Kind::Var: return t.name() == x ? s : t;
    case Kind::Rec:
        if (t.name() == x) return t;
        return Term::rec(t.name(), substitute(t.body(), x, s));
    default: break;
    }
    Term result = t;
    for (std::size_t i = 0; i < t.child_count(); ++i) {
        const Term& c = t.child(static_cast<int>(i));
        Term r = substitute(c, x, s);
        if (!(r.hash() == c.hash() && r == c)) result = result.with_child(static_cast<int>(i), std::move(r));
    }
    return result;
}

Term unfold(const Term& rec_term) {
    assert(rec_term.is(Kind::Rec));
    return substitute(rec_term.body(), rec_term.name(), rec_term);
}

bool contains_kind(const Term& t, Kind kind) {
    if (t.is(kind)) return true;
    for (std::size_t i = 0; i < t.child_count(); ++i)
        if (contains_kind(t.child(static_cast<int>(i)), kind)) return true;
    return false;
}

void FreshNames::avoid(const NameSet& names) { used_.insert(names.begin(), names.end()); }

std::string FreshNames::next(const std::string& base) {
    for (;;) {
        std::string candidate = base + "_" + std::to_string(++counter_);
        if (used_.insert(candidate).second) return candidate;
    }
}

} // namespace pafas
