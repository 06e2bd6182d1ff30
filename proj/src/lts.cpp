#include <algorithm>
#include <cstdlib>
#include <map>
#include <unordered_map>

#include <omp.h>

#include "json.hpp"
#include "pafas/analysis.hpp"
#include "pafas/error.hpp"
#include "pafas/syntax.hpp"

namespace pafas {

std::vector<LtsEdge> Lts::out(int s) const {
    if (static_cast<std::size_t>(s) + 1 >= offsets.size()) return {};
    return {edges.begin() + static_cast<std::ptrdiff_t>(offsets[s]),
            edges.begin() + static_cast<std::ptrdiff_t>(offsets[s + 1])};
}

ExploreOptions default_explore_options() {
    ExploreOptions o;
    if (const char* env = std::getenv("PAFAS_MAX_STATES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) o.max_states = static_cast<std::size_t>(v);
    }
    return o;
}

std::vector<Step> successors(const Term& t, Dialect dialect, bool timed) {
    std::vector<Step> out;
    if (dialect == Dialect::R) {
        out = steps(t);
    } else {
        for (auto& tr : action_steps_s(t)) out.push_back({StepLabel::ordinary(tr.action), std::move(tr.target)});
    }
    if (timed) {
        if (auto ts = max_refusal(t)) out.push_back({StepLabel::time(ts->max), ts->target});
    }
    return out;
}

namespace {

struct Builder {
    Lts lts;
    std::unordered_map<Term, int, TermHash> index;
    std::vector<std::vector<LtsEdge>> adjacency;
    ExploreOptions options;

    std::optional<int> intern(const Term& t, std::vector<int>& next) {
        if (auto it = index.find(t); it != index.end()) return it->second;
        if (lts.states.size() >= options.max_states) {
            lts.truncated = true;
            return std::nullopt;
        }
        int id = static_cast<int>(lts.states.size());
        lts.states.push_back(t);
        adjacency.emplace_back();
        index.emplace(t, id);
        next.push_back(id);
        return id;
    }

    void merge(int s, std::vector<Step>& succ, std::vector<int>& next) {
        std::vector<LtsEdge> edges;
        for (auto& st : succ)
            if (auto to = intern(st.target, next)) edges.push_back({s, st.label, *to});
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        adjacency[s] = std::move(edges);
    }

    Lts finish() {
        lts.offsets.assign(1, 0);
        for (auto& adj : adjacency) {
            lts.edges.insert(lts.edges.end(), adj.begin(), adj.end());
            lts.offsets.push_back(lts.edges.size());
        }
        return std::move(lts);
    }
};

Lts run(const Term& t, Dialect dialect, const ExploreOptions& options, bool parallel) {
    if (!is_closed(t)) throw Error(ErrorKind::OpenTerm, "cannot explore an open term");
    Builder b;
    b.options = options;
    b.lts.dialect = dialect;
    b.lts.timed = options.timed;
    std::vector<int> frontier;
    b.intern(t, frontier);
    std::size_t depth = 0;
    while (!frontier.empty()) {
        if (depth >= options.max_depth) {
            b.lts.truncated = true;
            break;
        }
        std::vector<std::vector<Step>> succ(frontier.size());
        if (parallel) {
            // Successor computation is pure; exceptions are collected and rethrown in order.
            std::vector<std::exception_ptr> errors(frontier.size());
            const long n = static_cast<long>(frontier.size());
#pragma omp parallel for schedule(dynamic, 4)
            for (long i = 0; i < n; ++i) {
                try {
                    succ[i] = successors(b.lts.states[frontier[i]], dialect, options.timed);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
            for (auto& e : errors)
                if (e) std::rethrow_exception(e);
        } else {
            for (std::size_t i = 0; i < frontier.size(); ++i)
                succ[i] = successors(b.lts.states[frontier[i]], dialect, options.timed);
        }
        std::vector<int> next;
        for (std::size_t i = 0; i < frontier.size(); ++i) b.merge(frontier[i], succ[i], next);
        frontier = std::move(next);
        ++depth;
    }
    return b.finish();
}

std::string label_text(const StepLabel& l) {
    switch (l.kind) {
    case StepKind::Ordinary: return l.action.str();
    case StepKind::Read: return "?" + l.action.str();
    case StepKind::Time: return l.refusal.str();
    }
    return {};
}

nlohmann::json refusal_json(const RefusalSet& x) {
    return {{"polarity", x.is_cofinite() ? "cofinite" : "finite"}, {"names", x.names()}};
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

Lts explore(const Term& t, Dialect dialect, const ExploreOptions& options) {
    return run(t, dialect, options, options.parallel);
}

Lts explore_serial(const Term& t, Dialect dialect, ExploreOptions options) {
    options.parallel = false;
    return run(t, dialect, options, false);
}

bool is_deterministic(const Lts& lts) {
    for (std::size_t s = 0; s < lts.states.size(); ++s) {
        std::map<std::string, int> seen;
        for (const auto& e : lts.out(static_cast<int>(s))) {
            if (e.label.is_time()) continue;
            if (e.label.action.is_tau()) return false;
            auto [it, fresh] = seen.emplace(e.label.action.name(), e.to);
            if (!fresh && it->second != e.to) return false;
        }
    }
    return true;
}

std::string lts_to_json(const Lts& lts) {
    nlohmann::json states = nlohmann::json::array();
    for (std::size_t i = 0; i < lts.states.size(); ++i)
        states.push_back({{"id", i}, {"term", print(lts.states[i])}});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : lts.edges) {
        nlohmann::json j = {{"from", e.from}, {"to", e.to}};
        switch (e.label.kind) {
        case StepKind::Ordinary:
            j["kind"] = "ordinary";
            j["action"] = e.label.action.str();
            break;
        case StepKind::Read:
            j["kind"] = "read";
            j["action"] = e.label.action.str();
            break;
        case StepKind::Time:
            j["kind"] = "time";
            j["refusal"] = refusal_json(e.label.refusal);
            j["full"] = e.label.refusal.is_full();
            break;
        }
        edges.push_back(std::move(j));
    }
    nlohmann::json doc = {{"language", lts.dialect == Dialect::R ? "r" : "s"},
                          {"initial", lts.initial},
                          {"truncated", lts.truncated},
                          {"states", std::move(states)},
                          {"edges", std::move(edges)}};
    return doc.dump(2);
}

std::string lts_to_dot(const Lts& lts) {
    std::string s = "digraph lts {\n  node [shape=box];\n";
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
        s += "  s" + std::to_string(i) + " [label=\"" + dot_escape(print(lts.states[i])) + "\"";
        if (static_cast<int>(i) == lts.initial) s += ", penwidth=2";
        s += "];\n";
    }
    for (const auto& e : lts.edges) {
        s += "  s" + std::to_string(e.from) + " -> s" + std::to_string(e.to) + " [label=\"" +
             dot_escape(label_text(e.label)) + "\"";
        if (e.label.is_time()) s += ", style=dashed";
        s += "];\n";
    }
    return s + "}\n";
}

} // namespace pafas
