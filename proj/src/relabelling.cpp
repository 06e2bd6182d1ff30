#include "pafas/relabelling.hpp"
#include "pafas/refusal_set.hpp"

#include <algorithm>
#include <iterator>

namespace pafas {

Relabelling::Relabelling(const std::map<std::string, Action>& mapping) {
    for (const auto& [from, to] : mapping) {
        Action target = to.lazy();
        if (!target.is_tau() && target.name() == from) continue;
        map_.emplace(from, target);
    }
}

Relabelling Relabelling::hiding(const NameSet& names) {
    std::map<std::string, Action> m;
    for (const auto& n : names) m.emplace(n, Action::tau());
    return Relabelling(m);
}

Relabelling Relabelling::single(const std::string& from, const Action& to) {
    return Relabelling({{from, to}});
}

Action Relabelling::apply(const Action& a) const {
    if (a.is_tau()) return a;
    auto it = map_.find(a.name());
    if (it == map_.end()) return a;
    return a.is_urgent() ? it->second.urgent() : it->second;
}

NameSet Relabelling::preimage(const std::string& target) const {
    NameSet pre;
    if (!map_.contains(target)) pre.insert(target);
    for (const auto& [from, to] : map_)
        if (!to.is_tau() && to.name() == target) pre.insert(from);
    return pre;
}

NameSet Relabelling::hidden() const {
    NameSet h;
    for (const auto& [from, to] : map_)
        if (to.is_tau()) h.insert(from);
    return h;
}

NameSet Relabelling::image_base() const {
    // Outside keys and targets the preimage of a is {a}; only those can differ.
    NameSet candidates;
    for (const auto& [from, to] : map_) {
        candidates.insert(from);
        if (!to.is_tau()) candidates.insert(to.name());
    }
    NameSet ib;
    for (const auto& a : candidates) {
        NameSet pre = preimage(a);
        if (!pre.empty() && pre != NameSet{a}) ib.insert(a);
    }
    return ib;
}

Relabelling Relabelling::after(const Relabelling& inner) const {
    std::map<std::string, Action> m;
    NameSet keys;
    for (const auto& [k, v] : inner.map_) keys.insert(k);
    for (const auto& [k, v] : map_) keys.insert(k);
    for (const auto& k : keys) m.emplace(k, apply(inner.apply(Action::visible(k))));
    return Relabelling(m);
}

Relabelling Relabelling::with(const std::string& from, const Action& to) const {
    std::map<std::string, Action> m = map_;
    m.insert_or_assign(from, to);
    return Relabelling(m);
}

// RefusalSet lives here too: it is the other finite/cofinite name-set algebra.

bool RefusalSet::contains(const std::string& name) const {
    return cofinite_ != names_.contains(name);
}

bool RefusalSet::subset_of(const RefusalSet& other) const {
    if (!cofinite_ && !other.cofinite_)
        return std::includes(other.names_.begin(), other.names_.end(), names_.begin(), names_.end());
    if (!cofinite_ && other.cofinite_) {
        for (const auto& n : names_)
            if (other.names_.contains(n)) return false;
        return true;
    }
    if (cofinite_ && !other.cofinite_) return false;
    // Both cofinite: complement(other) must be within complement(this).
    return std::includes(names_.begin(), names_.end(), other.names_.begin(), other.names_.end());
}

namespace {
NameSet set_union(const NameSet& a, const NameSet& b) {
    NameSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
}
NameSet set_inter(const NameSet& a, const NameSet& b) {
    NameSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
}
NameSet set_diff(const NameSet& a, const NameSet& b) {
    NameSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
}
} // namespace

RefusalSet RefusalSet::united(const RefusalSet& o) const {
    if (!cofinite_ && !o.cofinite_) return finite(set_union(names_, o.names_));
    if (cofinite_ && o.cofinite_) return all_except(set_inter(names_, o.names_));
    if (cofinite_) return all_except(set_diff(names_, o.names_));
    return all_except(set_diff(o.names_, names_));
}

RefusalSet RefusalSet::intersected(const RefusalSet& o) const {
    if (!cofinite_ && !o.cofinite_) return finite(set_inter(names_, o.names_));
    if (cofinite_ && o.cofinite_) return all_except(set_union(names_, o.names_));
    if (cofinite_) return finite(set_diff(o.names_, names_));
    return finite(set_diff(names_, o.names_));
}

RefusalSet RefusalSet::minus(const RefusalSet& o) const {
    return intersected(o.complement());
}

std::string RefusalSet::str() const {
    if (is_full()) return "1";
    std::string s = cofinite_ ? "~{" : "{";
    bool first = true;
    for (const auto& n : names_) {
        if (!first) s += ",";
        s += n;
        first = false;
    }
    return s + "}";
}

} // namespace pafas
