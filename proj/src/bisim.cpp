#include <algorithm>
#include <map>

#include "pafas/analysis.hpp"

namespace pafas {

namespace {

using Signature = std::vector<std::pair<int, int>>;

struct Refinement {
    std::vector<std::vector<int>> rounds; // block of every node after each round
    std::size_t classes = 0;
};

struct Combined {
    std::vector<std::vector<std::pair<int, int>>> out; // (label id, target)
    std::vector<StepLabel> labels;
};

Combined combine(const std::vector<const Graph*>& graphs) {
    Combined c;
    std::map<StepLabel, int> ids;
    int offset = 0;
    for (const Graph* g : graphs) {
        for (const auto& edges : g->out) {
            std::vector<std::pair<int, int>> row;
            for (const auto& [label, to] : edges) {
                auto [it, fresh] = ids.emplace(label, static_cast<int>(c.labels.size()));
                if (fresh) c.labels.push_back(label);
                row.push_back({it->second, to + offset});
            }
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
            c.out.push_back(std::move(row));
        }
        offset += static_cast<int>(g->out.size());
    }
    return c;
}

Refinement refine(const Combined& c, bool parallel) {
    const std::size_t n = c.out.size();
    Refinement r;
    r.rounds.push_back(std::vector<int>(n, 0));
    std::size_t count = n ? 1 : 0;
    for (;;) {
        const std::vector<int>& prev = r.rounds.back();
        std::vector<Signature> sig(n);
        const long total = static_cast<long>(n);
#pragma omp parallel for schedule(static) if (parallel)
        for (long i = 0; i < total; ++i) {
            Signature s;
            s.reserve(c.out[i].size());
            for (const auto& [label, to] : c.out[i]) s.push_back({label, prev[to]});
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            sig[i] = std::move(s);
        }
        std::map<std::pair<int, Signature>, int> ids;
        std::vector<int> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto [it, fresh] = ids.emplace(std::make_pair(prev[i], std::move(sig[i])), static_cast<int>(ids.size()));
            next[i] = it->second;
        }
        std::size_t now = ids.size();
        r.rounds.push_back(std::move(next));
        if (now == count) break;
        count = now;
    }
    r.classes = count;
    return r;
}

std::optional<std::pair<int, StepLabel>> time_edge(const Combined& c, int x) {
    for (const auto& [label, to] : c.out[x])
        if (c.labels[label].is_time()) return std::make_pair(to, c.labels[label]);
    return std::nullopt;
}

RefusalSet separating_refusal(const RefusalSet& mover, const std::optional<RefusalSet>& other) {
    if (!other) return RefusalSet::empty();
    RefusalSet d = mover.minus(*other);
    if (!d.is_cofinite()) return d;
    FreshNames fresh(d.names());
    return RefusalSet::finite({fresh.next("x")});
}

void extract(const Combined& c, const Refinement& r, int x, int y, int offset, BisimResult& res) {
    // x belongs to the first graph, y to the second.
    for (;;) {
        std::size_t k = 1;
        while (k < r.rounds.size() && r.rounds[k][x] == r.rounds[k][y]) ++k;
        if (k == r.rounds.size()) return;
        const std::vector<int>& prev = r.rounds[k - 1];
        auto state = [&](int node) { return node < offset ? node : node - offset; };

        auto tx = time_edge(c, x), ty = time_edge(c, y);
        if ((tx || ty) && (!tx || !ty || !(tx->second == ty->second))) {
            bool x_moves = tx && (!ty || !tx->second.refusal.subset_of(ty->second.refusal));
            const auto& mv = x_moves ? *tx : *ty;
            const auto& other = x_moves ? ty : tx;
            std::optional<RefusalSet> other_max;
            if (other) other_max = other->second.refusal;
            res.witness.push_back({x_moves ? 0 : 1, mv.second, state(x), state(y), state(mv.first), std::nullopt});
            res.distinguishing_refusal = separating_refusal(mv.second.refusal, other_max);
            return;
        }

        bool moved = false;
        for (int side = 0; side < 2 && !moved; ++side) {
            int mover = side == 0 ? x : y;
            int defender = side == 0 ? y : x;
            for (const auto& [label, to] : c.out[mover]) {
                bool matched = false;
                std::optional<int> answer;
                for (const auto& [l2, to2] : c.out[defender]) {
                    if (l2 != label) continue;
                    if (!answer) answer = to2;
                    if (prev[to2] == prev[to]) {
                        matched = true;
                        break;
                    }
                }
                if (matched) continue;
                res.witness.push_back({side, c.labels[label], state(x), state(y), state(to),
                                       answer ? std::optional<int>(state(*answer)) : std::nullopt});
                if (!answer) return;
                x = side == 0 ? to : *answer;
                y = side == 0 ? *answer : to;
                moved = true;
                break;
            }
        }
        if (!moved) return; // unreachable when the blocks really differ
    }
}

} // namespace

std::string to_string(BisimScheme scheme) {
    switch (scheme) {
    case BisimScheme::RSense: return "r";
    case BisimScheme::SSense: return "s";
    case BisimScheme::Untimed: return "untimed";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Equivalent: return "equivalent";
    case Verdict::Distinguished: return "distinguished";
    case Verdict::BoundedUnknown: return "bounded-unknown";
    }
    return "?";
}

Graph to_graph(const Lts& lts, BisimScheme scheme) {
    Graph g;
    g.initial = lts.initial;
    g.truncated = lts.truncated;
    g.out.resize(lts.states.size());
    for (const auto& e : lts.edges) {
        StepLabel l = e.label;
        if (l.is_time() && scheme == BisimScheme::Untimed) continue;
        if (l.kind == StepKind::Read && scheme != BisimScheme::RSense) l.kind = StepKind::Ordinary;
        g.out[e.from].push_back({l, e.to});
    }
    return g;
}

BisimResult bisim(const Graph& a, const Graph& b, bool parallel) {
    Combined c = combine({&a, &b});
    Refinement r = refine(c, parallel);
    BisimResult res;
    res.rounds = r.rounds.size() - 1;
    res.classes = r.classes;
    int offset = static_cast<int>(a.out.size());
    int x = a.initial, y = b.initial + offset;
    if (r.rounds.back()[x] == r.rounds.back()[y]) {
        res.verdict = (a.truncated || b.truncated) ? Verdict::BoundedUnknown : Verdict::Equivalent;
        return res;
    }
    extract(c, r, x, y, offset, res);
    res.verdict = (a.truncated || b.truncated) ? Verdict::BoundedUnknown : Verdict::Distinguished;
    return res;
}

BisimResult bisim(const Lts& a, const Lts& b, BisimScheme scheme, bool parallel) {
    return bisim(to_graph(a, scheme), to_graph(b, scheme), parallel);
}

std::vector<int> bisim_classes(const Graph& g, bool parallel) {
    Combined c = combine({&g});
    return refine(c, parallel).rounds.back();
}

} // namespace pafas
