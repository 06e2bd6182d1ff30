// Random terms and nets for the property tests.
#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pafas/error.hpp"
#include "pafas/petri.hpp"
#include "pafas/predicates.hpp"
#include "pafas/term.hpp"

namespace gen {

using namespace pafas;

struct Options {
    std::vector<std::string> names = {"a", "b", "c"};
    bool urgency = true;
    bool tau = true;
    bool recursion = true;
    bool relabel = true;
    bool par = true;
    bool reads = true;
    bool empty_read_sets = true;
};

class Gen {
public:
    Gen(std::mt19937& rng, Dialect d, Options o) : rng_(rng), d_(d), o_(std::move(o)) {}

    Term term(int depth) {
        Ctx c;
        return go(depth, c);
    }

private:
    struct Ctx {
        bool initial = false;        // below an action prefix: no urgency
        bool no_reads = false;       // read-guarded region
        bool in_rec = false;         // keep recursion finite-state
        std::vector<std::string> guarded;
        std::vector<std::string> unguarded;
    };

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
    bool coin(int percent) { return pick(100) < percent; }

    std::string name() { return o_.names[pick(static_cast<int>(o_.names.size()))]; }

    Action action(const Ctx& c, bool allow_tau) {
        bool urgent = o_.urgency && !c.initial && coin(25);
        if (allow_tau && o_.tau && coin(10)) return Action::tau(urgent && coin(30));
        return Action::visible(name(), urgent);
    }

    Term leaf(const Ctx& c) {
        if (!c.guarded.empty() && coin(50)) return Term::var(c.guarded[pick(static_cast<int>(c.guarded.size()))]);
        if (coin(50)) return Term::nil();
        return Term::prefix(action(c, true), Term::nil());
    }

    Term go(int depth, Ctx c) {
        if (depth <= 0) return leaf(c);
        for (;;) {
            switch (pick(8)) {
            case 0: return leaf(c);
            case 1: {
                Ctx b = c;
                Action a = action(c, true);
                b.initial = true;
                b.no_reads = false;
                b.guarded.insert(b.guarded.end(), b.unguarded.begin(), b.unguarded.end());
                b.unguarded.clear();
                return Term::prefix(a, go(depth - 1, b));
            }
            case 2: {
                if (!o_.reads || c.no_reads) continue;
                if (d_ == Dialect::R) return Term::read(action(c, true), go(depth - 1, c));
                ReadSetActions ms;
                int n = pick(3) + (o_.empty_read_sets ? 0 : 1);
                std::set<std::string> used;
                for (int i = 0; i < n; ++i) {
                    Action a = action(c, true);
                    if (used.insert(a.name()).second) ms.push_back(a);
                }
                return Term::read_set(ms, go(depth - 1, c));
            }
            case 3: return Term::sum(go(depth - 1, c), go(depth - 1, c));
            case 4: {
                if (!o_.par || c.in_rec) continue;
                std::set<std::string> sync;
                for (const auto& n : o_.names)
                    if (coin(40)) sync.insert(n);
                return Term::par(go(depth - 1, c), go(depth - 1, c), sync);
            }
            case 5: {
                if (!o_.relabel || c.in_rec) continue;
                std::map<std::string, Action> m;
                int n = pick(2) + 1;
                for (int i = 0; i < n; ++i) m[name()] = (o_.tau && coin(25)) ? Action::tau() : Action::visible(name());
                return Term::relabel(go(depth - 1, c), Relabelling(m));
            }
            case 6:
            case 7: {
                if (!o_.recursion || depth < 2) continue;
                std::string x = "x" + std::to_string(binder_++);
                Ctx b = c;
                b.in_rec = true;
                b.unguarded.push_back(x);
                // The body must not be a bare variable.
                Ctx pb = b;
                pb.initial = true;
                pb.no_reads = false;
                pb.guarded.insert(pb.guarded.end(), pb.unguarded.begin(), pb.unguarded.end());
                pb.unguarded.clear();
                Term body = coin(60) ? Term::prefix(action(b, true), go(depth - 2, pb)) : go(depth - 1, b);
                if (!is_guarded(x, body)) continue;
                return Term::rec(x, body);
            }
            }
        }
    }

    std::mt19937& rng_;
    Dialect d_;
    Options o_;
    int binder_ = 0;
};

/// Closed, guarded, grammar-respecting term (not necessarily proper / RNF).
inline Term random_term(std::mt19937& rng, Dialect d, int depth, const Options& o = {}) {
    for (;;) {
        Gen g(rng, d, o);
        Term t = g.term(depth);
        if (is_closed(t) && has_guarded_recursion(t) && !check_stratified(t)) return t;
    }
}

/// Proper read-set term.
inline Term random_proper(std::mt19937& rng, int depth, Options o = {}) {
    o.empty_read_sets = false;
    for (;;) {
        Term t = random_term(rng, Dialect::S, depth, o);
        if (is_proper(t)) return t;
    }
}

/// Read-action term in read normal form.
inline Term random_rnf(std::mt19937& rng, int depth, const Options& o = {}) {
    for (;;) {
        Term t = random_term(rng, Dialect::R, depth, o);
        if (is_rnf(t)) return t;
    }
}

/// Term whose read-set mode has at least one read prefix (helps the
/// properness tests exercise reads).
inline bool has_reads(const Term& t) { return contains_kind(t, Kind::ReadSet) || contains_kind(t, Kind::ReadAction); }

/// Random 1-safe net with read arcs; places <= max_places.
inline ReadArcNet random_safe_net(std::mt19937& rng, int max_places) {
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    for (;;) {
        ReadArcNet net;
        int np = 1 + pick(max_places);
        int nt = 1 + pick(5);
        for (int i = 0; i < np; ++i) net.places.push_back({"p" + std::to_string(i), pick(2) == 0});
        const char* labels[] = {"a", "b", "c", "tau"};
        for (int i = 0; i < nt; ++i) net.transitions.push_back({"t" + std::to_string(i), labels[pick(4)]});
        for (const auto& t : net.transitions) {
            for (const auto& p : net.places) {
                int r = pick(10);
                if (r == 0) net.pre.insert({p.name, t.name});
                else if (r == 1) net.post.insert({t.name, p.name});
                else if (r == 2) {
                    net.pre.insert({p.name, t.name});
                    net.post.insert({t.name, p.name});
                } else if (r == 3) net.reads.insert({p.name, t.name});
            }
        }
        try {
            validate(net);
            marking_graph(net, 5000);
            return net;
        } catch (const Error&) {
        }
    }
}

} // namespace gen
