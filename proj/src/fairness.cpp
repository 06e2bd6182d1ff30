#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "pafas/analysis.hpp"
#include "pafas/error.hpp"

namespace pafas {

namespace {

bool is_silent(const StepLabel& l) { return l.is_time() || l.action.is_tau(); }

/// Strongly connected components (iterative Tarjan).
std::vector<int> components(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int counter = 0, ncomp = 0;
    std::vector<std::pair<int, std::size_t>> call;
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i == 0 && index[v] == -1) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            if (i < adj[v].size()) {
                int w = adj[v][i++];
                if (index[w] == -1) {
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                } while (w != v);
                ++ncomp;
            }
            int done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    return comp;
}

Answer negative(const Lts& lts) { return lts.truncated ? Answer::BoundedUnknown : Answer::No; }

/// States reachable (as product positions == word.size()) after reading `word`.
std::vector<bool> after_word(const Lts& lts, const std::vector<std::string>& word) {
    const std::size_t n = lts.states.size(), m = word.size() + 1;
    std::vector<bool> seen(n * m, false);
    std::deque<std::pair<int, std::size_t>> queue;
    auto push = [&](int s, std::size_t i) {
        if (!seen[s * m + i]) {
            seen[s * m + i] = true;
            queue.push_back({s, i});
        }
    };
    push(lts.initial, 0);
    while (!queue.empty()) {
        auto [s, i] = queue.front();
        queue.pop_front();
        for (const auto& e : lts.out(s)) {
            if (is_silent(e.label)) push(e.to, i);
            else if (i < word.size() && e.label.action.name() == word[i]) push(e.to, i + 1);
        }
    }
    std::vector<bool> out(n, false);
    for (std::size_t s = 0; s < n; ++s) out[s] = seen[s * m + word.size()];
    return out;
}

using StateSet = std::vector<int>; // sorted

StateSet closure(const Lts& lts, StateSet start, bool time_is_silent) {
    std::vector<bool> in(lts.states.size(), false);
    std::deque<int> queue;
    for (int s : start)
        if (!in[s]) {
            in[s] = true;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (const auto& e : lts.out(s)) {
            bool silent = e.label.is_time() ? time_is_silent : e.label.action.is_tau();
            if (silent && !in[e.to]) {
                in[e.to] = true;
                queue.push_back(e.to);
            }
        }
    }
    StateSet out;
    for (std::size_t s = 0; s < in.size(); ++s)
        if (in[s]) out.push_back(static_cast<int>(s));
    return out;
}

StateSet visible_step(const Lts& lts, const StateSet& from, const std::string& action, bool time_is_silent) {
    StateSet next;
    for (int s : from)
        for (const auto& e : lts.out(s))
            if (!e.label.is_time() && !e.label.action.is_tau() && e.label.action.name() == action) next.push_back(e.to);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    return closure(lts, std::move(next), time_is_silent);
}

std::set<std::string> alphabet(const Lts& lts) {
    std::set<std::string> out;
    for (const auto& e : lts.edges)
        if (!is_silent(e.label)) out.insert(e.label.action.name());
    return out;
}

} // namespace

std::string to_string(Answer a) {
    switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::BoundedUnknown: return "bounded-unknown";
    }
    return "?";
}

std::vector<bool> fair_states(const Lts& lts) {
    const std::size_t n = lts.states.size();
    std::vector<std::vector<int>> adj(n), rev(n);
    for (const auto& e : lts.edges)
        if (is_silent(e.label)) {
            adj[e.from].push_back(e.to);
            rev[e.to].push_back(e.from);
        }
    std::vector<int> comp = components(adj);
    std::vector<bool> good(n, false);
    std::deque<int> queue;
    for (const auto& e : lts.edges)
        if (e.label.is_full_time() && comp[e.from] == comp[e.to] && !good[e.from]) {
            good[e.from] = true;
            queue.push_back(e.from);
        }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int p : rev[s])
            if (!good[p]) {
                good[p] = true;
                queue.push_back(p);
            }
    }
    return good;
}

Answer fair_member(const Lts& lts, const std::vector<std::string>& word) {
    std::vector<bool> reach = after_word(lts, word);
    std::vector<bool> good = fair_states(lts);
    for (std::size_t s = 0; s < reach.size(); ++s)
        if (reach[s] && good[s]) return Answer::Yes;
    return negative(lts);
}

Answer fair_lasso(const Lts& lts, const std::vector<std::string>& stem, const std::vector<std::string>& loop) {
    if (loop.empty()) return fair_member(lts, stem);
    std::vector<bool> start = after_word(lts, stem);
    const std::size_t n = lts.states.size(), m = loop.size();
    // Product of the LTS with the cyclic loop automaton.
    std::vector<std::vector<int>> adj(n * m);
    for (const auto& e : lts.edges)
        for (std::size_t j = 0; j < m; ++j) {
            if (is_silent(e.label)) adj[e.from * m + j].push_back(static_cast<int>(e.to * m + j));
            else if (e.label.action.name() == loop[j]) adj[e.from * m + j].push_back(static_cast<int>(e.to * m + (j + 1) % m));
        }
    std::vector<bool> reach(n * m, false);
    std::deque<int> queue;
    for (std::size_t s = 0; s < n; ++s)
        if (start[s]) {
            reach[s * m] = true;
            queue.push_back(static_cast<int>(s * m));
        }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj[v])
            if (!reach[w]) {
                reach[w] = true;
                queue.push_back(w);
            }
    }
    std::vector<int> comp = components(adj);
    std::map<int, std::pair<bool, bool>> flags; // component -> (visible edge, full time edge)
    for (const auto& e : lts.edges)
        for (std::size_t j = 0; j < m; ++j) {
            int v = static_cast<int>(e.from * m + j);
            if (!reach[v]) continue;
            int w;
            if (is_silent(e.label)) w = static_cast<int>(e.to * m + j);
            else if (e.label.action.name() == loop[j]) w = static_cast<int>(e.to * m + (j + 1) % m);
            else continue;
            if (comp[v] != comp[w]) continue;
            auto& f = flags[comp[v]];
            if (!is_silent(e.label)) f.first = true;
            if (e.label.is_full_time()) f.second = true;
        }
    for (const auto& [c, f] : flags)
        if (f.first && f.second) return Answer::Yes;
    return negative(lts);
}

FairWords fair_words_up_to(const Lts& lts, std::size_t max_len) {
    FairWords out;
    out.bounded = lts.truncated;
    std::vector<bool> good = fair_states(lts);
    std::set<std::string> sigma = alphabet(lts);
    struct Item {
        std::vector<std::string> word;
        StateSet states;
    };
    std::deque<Item> queue;
    queue.push_back({{}, closure(lts, {lts.initial}, true)});
    while (!queue.empty()) {
        Item it = std::move(queue.front());
        queue.pop_front();
        if (std::any_of(it.states.begin(), it.states.end(), [&](int s) { return good[s]; })) out.words.push_back(it.word);
        if (it.word.size() == max_len) continue;
        for (const auto& a : sigma) {
            StateSet next = visible_step(lts, it.states, a, true);
            if (next.empty()) continue;
            Item n{it.word, std::move(next)};
            n.word.push_back(a);
            queue.push_back(std::move(n));
        }
    }
    return out;
}

// ---- refusal traces --------------------------------------------------------

std::string TraceEvent::str() const { return is_time ? refusal.str() : action; }

std::string trace_str(const RefusalTrace& trace) {
    std::string s;
    for (const auto& e : trace) s += (s.empty() ? "" : " ") + e.str();
    return s;
}

RefusalTrace parse_trace(const std::string& text) {
    RefusalTrace out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "1") {
            out.push_back(TraceEvent::time(RefusalSet::full()));
            continue;
        }
        bool co = !tok.empty() && tok[0] == '~';
        std::string body = co ? tok.substr(1) : tok;
        if (body.size() >= 2 && body.front() == '{' && body.back() == '}') {
            NameSet names;
            std::string inner = body.substr(1, body.size() - 2), name;
            std::istringstream ns(inner);
            while (std::getline(ns, name, ','))
                if (!name.empty()) names.insert(name);
            out.push_back(TraceEvent::time(co ? RefusalSet::all_except(names) : RefusalSet::finite(names)));
            continue;
        }
        if (co || !is_valid_action_name(tok)) throw Error(ErrorKind::Syntax, "bad trace event '" + tok + "'");
        out.push_back(TraceEvent::act(tok));
    }
    return out;
}

RefusalTraces refusal_traces_up_to(const Lts& lts, std::size_t max_len) {
    RefusalTraces out;
    out.bounded = lts.truncated;
    std::set<std::string> sigma = alphabet(lts);
    std::set<RefusalTrace> found;
    struct Item {
        RefusalTrace trace;
        StateSet states;
    };
    std::deque<Item> queue;
    queue.push_back({{}, closure(lts, {lts.initial}, false)});
    while (!queue.empty()) {
        Item it = std::move(queue.front());
        queue.pop_front();
        found.insert(it.trace);
        if (it.trace.size() == max_len) continue;
        for (const auto& a : sigma) {
            StateSet next = visible_step(lts, it.states, a, false);
            if (next.empty()) continue;
            Item n{it.trace, std::move(next)};
            n.trace.push_back(TraceEvent::act(a));
            queue.push_back(std::move(n));
        }
        std::map<RefusalSet, StateSet> by_max;
        for (int s : it.states)
            for (const auto& e : lts.out(s))
                if (e.label.is_time()) by_max[e.label.refusal].push_back(e.to);
        for (auto& [m, targets] : by_max) {
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
            Item n{it.trace, closure(lts, std::move(targets), false)};
            n.trace.push_back(TraceEvent::time(m));
            queue.push_back(std::move(n));
        }
    }
    out.traces.assign(found.begin(), found.end());
    std::stable_sort(out.traces.begin(), out.traces.end(),
                     [](const RefusalTrace& a, const RefusalTrace& b) { return a.size() < b.size(); });
    return out;
}

Answer has_refusal_trace(const Lts& lts, const RefusalTrace& trace) {
    StateSet cur = closure(lts, {lts.initial}, false);
    for (const auto& ev : trace) {
        if (!ev.is_time) {
            cur = visible_step(lts, cur, ev.action, false);
        } else {
            StateSet next;
            for (int s : cur)
                for (const auto& e : lts.out(s))
                    if (e.label.is_time() && ev.refusal.subset_of(e.label.refusal)) next.push_back(e.to);
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            cur = closure(lts, std::move(next), false);
        }
        if (cur.empty()) return negative(lts);
    }
    return Answer::Yes;
}

} // namespace pafas
