#include "doctest.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>

#include "generators.hpp"
#include "json.hpp"
#include "pafas/analysis.hpp"
#include "pafas/sos.hpp"
#include "pafas/transform.hpp"
#include "support.hpp"

using namespace pafas;
using support::R;
using support::word;

namespace {

bool silent(const StepLabel& l) { return l.is_time() || l.action.is_tau(); }

std::vector<bool> silent_reach(const Lts& lts, std::vector<int> from) {
    std::vector<bool> seen(lts.state_count(), false);
    std::deque<int> q(from.begin(), from.end());
    for (int s : from) seen[s] = true;
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        for (const auto& e : lts.out(s))
            if (silent(e.label) && !seen[e.to]) {
                seen[e.to] = true;
                q.push_back(e.to);
            }
    }
    return seen;
}

/// Independent fair-membership check: the states reachable with projection
/// `w` (subset construction), then a search for a full time edge x -> y with
/// y silently back to x, x silently reachable from that set.
Answer fair_member_oracle(const Lts& lts, const std::vector<std::string>& w) {
    std::vector<bool> cur = silent_reach(lts, {lts.initial});
    for (const auto& letter : w) {
        std::vector<int> next;
        for (int s = 0; s < static_cast<int>(lts.state_count()); ++s) {
            if (!cur[s]) continue;
            for (const auto& e : lts.out(s))
                if (!e.label.is_time() && !e.label.action.is_tau() && e.label.action.name() == letter)
                    next.push_back(e.to);
        }
        cur = silent_reach(lts, next);
    }
    std::vector<int> start;
    for (int s = 0; s < static_cast<int>(lts.state_count()); ++s)
        if (cur[s]) start.push_back(s);
    std::vector<bool> after = silent_reach(lts, start);
    for (const auto& e : lts.edges) {
        if (!e.label.is_full_time() || !after[e.from]) continue;
        if (silent_reach(lts, {e.to})[e.from]) return Answer::Yes;
    }
    return lts.truncated ? Answer::BoundedUnknown : Answer::No;
}

/// Time edges expanded to one edge per refusal set X below the maximum.
Graph expand_time(const Lts& lts, const NameSet& names) {
    auto family = support::refusal_family(names);
    Graph g;
    g.initial = lts.initial;
    g.truncated = lts.truncated;
    g.out.resize(lts.state_count());
    for (const auto& e : lts.edges) {
        if (!e.label.is_time()) {
            g.out[e.from].push_back({e.label, e.to});
            continue;
        }
        for (const auto& x : family)
            if (x.subset_of(e.label.refusal)) g.out[e.from].push_back({StepLabel::time(x), e.to});
    }
    return g;
}

bool has_word(const FairWords& fw, const std::string& letters) {
    auto s = support::word_set(fw);
    return s.count(word(letters)) > 0;
}

int time_edges_from(const Lts& lts, int s) {
    auto out = lts.out(s);
    return static_cast<int>(std::count_if(out.begin(), out.end(), [](const LtsEdge& e) { return e.label.is_time(); }));
}

} // namespace

TEST_CASE("explore builds the expected small systems") {
    Lts nil = explore(Term::nil(), Dialect::R);
    CHECK(nil.state_count() == 1);
    REQUIRE(nil.edges.size() == 1);
    CHECK(nil.edges[0].label == StepLabel::time(RefusalSet::full()));
    CHECK(nil.edges[0].to == 0);

    Lts p = explore(R("a |> b.0"), Dialect::R);
    CHECK(p.state_count() == 3);
    CHECK_FALSE(p.truncated);
    CHECK(p.states[0] == R("a |> b.0"));
    CHECK(std::find(p.states.begin(), p.states.end(), R("!a |> !b.0")) != p.states.end());
    CHECK(std::find(p.states.begin(), p.states.end(), Term::nil()) != p.states.end());

    Lts q = explore(R("rec x. (a.x + b.0)"), Dialect::R);
    CHECK_FALSE(q.truncated);
    CHECK(q.state_count() <= 4);
}

TEST_CASE("bounds truncate") {
    ExploreOptions o;
    o.max_states = 2;
    Lts l = explore(R("a.b.c.0"), Dialect::R, o);
    CHECK(l.truncated);
    CHECK(l.state_count() == 2);
    o.max_states = 100;
    o.max_depth = 1;
    CHECK(explore(R("a.b.c.0"), Dialect::R, o).truncated);
    CHECK(bisim(l, l, BisimScheme::RSense).verdict == Verdict::BoundedUnknown);
}

TEST_CASE("time successors are unique on explored states") {
    std::mt19937 rng(3);
    for (int i = 0; i < 200; ++i) {
        Dialect d = i % 2 ? Dialect::S : Dialect::R;
        Lts l = explore(gen::random_term(rng, d, 5), d, support::small_bounds(300));
        for (int s = 0; s < static_cast<int>(l.state_count()); ++s) REQUIRE(time_edges_from(l, s) <= 1);
    }
}

TEST_CASE("determinism") {
    CHECK(is_deterministic(explore(R("a.b.0"), Dialect::R)));
    CHECK_FALSE(is_deterministic(explore(R("a.b.0 + a.c.0"), Dialect::R)));
    CHECK_FALSE(is_deterministic(explore(R("tau.0"), Dialect::R)));
    CHECK(is_deterministic(explore(R("a |> b.0"), Dialect::R)));
}

TEST_CASE("bisimulation examples") {
    CHECK(support::compare_r(R("a |> b.0"), R("rec x. (a.x + b.0)")) == Verdict::Distinguished);
    CHECK(support::compare_r(R("a |> b.0"), R("a |> b.0")) == Verdict::Equivalent);
    CHECK(support::compare_r(R("rec x. a.x"), R("a.rec x. a.x")) == Verdict::Equivalent);
    CHECK(support::compare_r(R("a |> b.0 + c.0"), R("a |> (b.0 + c.0)")) == Verdict::Equivalent);

    Lts par = explore(R("a.0 |[]| b.0"), Dialect::R);
    Lts seq = explore(R("a.b.0 + b.a.0"), Dialect::R);
    BisimResult r = bisim(par, seq, BisimScheme::RSense);
    REQUIRE(r.verdict == Verdict::Distinguished);
    REQUIRE_FALSE(r.witness.empty());
    CHECK(r.witness.back().label.is_time());
    REQUIRE(r.distinguishing_refusal);
    CHECK(*r.distinguishing_refusal == RefusalSet::finite({"b"}));
    // The play is 1, a, then the partial step.
    REQUIRE(r.witness.size() == 3);
    CHECK(r.witness[0].label.is_full_time());
    CHECK(r.witness[1].label == StepLabel::ordinary(Action::visible("a")));
}

TEST_CASE("read and ordinary steps are told apart in the read-action sense only") {
    // a |> 0 reads a; a.0 performs it ordinarily. Merged labels cannot
    // separate them before time passes, and time passes the same way.
    Lts a = explore(R("a |> 0"), Dialect::R);
    Lts b = explore(R("rec x. a.x"), Dialect::R);
    CHECK(bisim(a, b, BisimScheme::RSense).verdict == Verdict::Distinguished);
    CHECK(bisim(a, b, BisimScheme::Untimed).verdict == Verdict::Equivalent);
}

TEST_CASE("bisimulation is an equivalence") {
    std::mt19937 rng(21);
    gen::Options o;
    o.names = {"a", "b"};
    std::vector<Lts> pool;
    while (pool.size() < 40) {
        Lts l = explore(gen::random_term(rng, Dialect::R, 3, o), Dialect::R, support::small_bounds(200));
        if (!l.truncated) pool.push_back(std::move(l));
    }
    // Add bisimilar variants so that the classes are not all singletons.
    for (std::size_t i = 0; i < 10; ++i) {
        Term t = pool[i].states[pool[i].initial];
        pool.push_back(explore(Term::sum(t, t), Dialect::R, support::small_bounds(400)));
    }
    std::size_t n = pool.size();
    std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            eq[i][j] = bisim(pool[i], pool[j], BisimScheme::RSense).verdict == Verdict::Equivalent;
    int nontrivial = 0;
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(eq[i][i]);
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(eq[i][j] == eq[j][i]);
            if (i != j && eq[i][j]) ++nontrivial;
            for (std::size_t k = 0; k < n; ++k)
                if (eq[i][j] && eq[j][k]) CHECK(eq[i][k]);
        }
    }
    CHECK(nontrivial >= 10);
}

TEST_CASE("comparing maximal refusal sets equals matching every refusal set") {
    std::mt19937 rng(8);
    gen::Options o;
    o.names = {"a", "b"};
    int distinguished = 0, equivalent = 0;
    for (int i = 0; i < 150; ++i) {
        Term p = gen::random_term(rng, Dialect::R, 3, o);
        Term q = i % 3 == 0 ? apply_law(Term::sum(p, Term::nil()), LawId::Rename) : gen::random_term(rng, Dialect::R, 3, o);
        if (i % 3 == 1) q = Term::sum(p, p);
        Lts a = explore(p, Dialect::R, support::small_bounds(200));
        Lts b = explore(q, Dialect::R, support::small_bounds(200));
        if (a.truncated || b.truncated) continue;
        NameSet names = sort_of(p);
        for (const auto& n : sort_of(q)) names.insert(n);
        names.insert("fresh");
        if (names.size() > 5) continue;
        Verdict fast = bisim(a, b, BisimScheme::RSense).verdict;
        Verdict slow = bisim(expand_time(a, names), expand_time(b, names)).verdict;
        REQUIRE_MESSAGE(fast == slow, print(p) << " vs " << print(q));
        (fast == Verdict::Equivalent ? equivalent : distinguished)++;
    }
    CHECK(equivalent > 10);
    CHECK(distinguished > 10);
}

TEST_CASE("bisimilarity survives the test contexts") {
    std::vector<std::pair<const char*, const char*>> pairs = {
        {"rec x. a.x", "a.rec x. a.x"},
        {"a |> b.0 + c.0", "a |> (b.0 + c.0)"},
        {"a |> a |> b.0", "a |> b.0"},
        {"a |> b |> c.0", "b |> a |> c.0"},
        {"(a |> b.0)[a->c]", "c |> b.0[a->c]"},
    };
    std::vector<std::function<Term(const Term&)>> contexts = {
        [](const Term& t) { return Term::prefix(Action::visible("c"), t); },
        [](const Term& t) { return Term::read(Action::visible("d"), t); },
        [](const Term& t) { return Term::sum(t, R("c.0")); },
        [](const Term& t) { return Term::par(t, R("a.0 |[]| a.0"), {"a"}); },
        [](const Term& t) { return Term::relabel(t, Relabelling({{"a", Action::visible("b")}})); },
        [](const Term& t) { return Term::relabel(t, Relabelling::hiding({"b"})); },
    };
    for (const auto& [l, r] : pairs) {
        Term p = R(l), q = R(r);
        REQUIRE_MESSAGE(support::compare_r(p, q) == Verdict::Equivalent, l);
        for (const auto& c : contexts)
            CHECK_MESSAGE(support::compare_r(c(p), c(q)) == Verdict::Equivalent, print(c(p)) << " vs " << print(c(q)));
    }
}

TEST_CASE("parallel and serial exploration agree") {
    std::mt19937 rng(17);
    for (int i = 0; i < 100; ++i) {
        Dialect d = i % 2 ? Dialect::S : Dialect::R;
        Term t = gen::random_term(rng, d, 6);
        Lts a = explore(t, d, support::small_bounds(500));
        Lts b = explore_serial(t, d, support::small_bounds(500));
        REQUIRE(a.states == b.states);
        REQUIRE(a.edges == b.edges);
        CHECK(a.truncated == b.truncated);
        Graph g = to_graph(a, BisimScheme::RSense);
        CHECK(bisim_classes(g, true) == bisim_classes(g, false));
    }
}

TEST_CASE("fair traces of the read example") {
    Lts p = explore(R("a |> b.0"), Dialect::R);
    CHECK(fair_member(p, word("aab")) == Answer::Yes);
    CHECK(fair_member(p, word("aa")) == Answer::No);
    CHECK(fair_member(p, {}) == Answer::No);
    auto fw = fair_words_up_to(p, 3);
    CHECK_FALSE(fw.bounded);
    CHECK(support::word_set(fw) == std::set<std::vector<std::string>>{word("b"), word("ab"), word("aab")});

    auto ten = support::word_set(fair_words_up_to(p, 10));
    std::set<std::vector<std::string>> expected;
    for (int i = 0; i <= 9; ++i) expected.insert(word(std::string(i, 'a') + "b"));
    CHECK(ten == expected);

    CHECK(support::word_set(fair_words_up_to(explore(Term::nil(), Dialect::R), 2)) ==
          std::set<std::vector<std::string>>{{}});
}

TEST_CASE("finite-state read-free processes have a different fair language") {
    std::set<std::vector<std::string>> target;
    for (int i = 0; i <= 9; ++i) target.insert(word(std::string(i, 'a') + "b"));
    // a.b misses b; rec x. a.x + b misses ab.
    for (const char* s : {"a.b.0", "(rec x. a.x) + b.0"}) {
        auto fw = support::word_set(fair_words_up_to(explore(R(s), Dialect::R), 10));
        CHECK_MESSAGE(fw != target, s);
    }
    // rec x. (a.x + b) agrees on finite words; the difference is the infinite
    // trace of a's.
    Lts q = explore(R("rec x. (a.x + b.0)"), Dialect::R);
    CHECK(support::word_set(fair_words_up_to(q, 10)) == target);
    CHECK(fair_lasso(q, {}, word("a")) == Answer::Yes);
    CHECK(fair_lasso(explore(R("a |> b.0"), Dialect::R), {}, word("a")) == Answer::No);
    CHECK(fair_member(q, word("aaa")) == Answer::No);
    CHECK(fair_member(q, word("aaab")) == Answer::Yes);
}

TEST_CASE("fair traces with three priority levels") {
    Lts p = explore(R("a |> ((rec x. b.x) |[b]| b |> c.0)"), Dialect::R);
    auto fw = fair_words_up_to(p, 2);
    CHECK_FALSE(fw.bounded);
    CHECK(has_word(fw, "c"));
    CHECK(has_word(fw, "bc"));
    CHECK(has_word(fw, "ac"));
    CHECK_FALSE(has_word(fw, "b"));
    CHECK_FALSE(has_word(fw, "a"));
    CHECK_FALSE(has_word(fw, ""));
    CHECK(support::word_set(fw) ==
          std::set<std::vector<std::string>>{word("c"), word("ac"), word("bc")});
}

TEST_CASE("fair membership agrees with the subset-construction oracle") {
    std::mt19937 rng(99);
    int compared = 0;
    for (int i = 0; i < 300; ++i) {
        Dialect d = i % 2 ? Dialect::S : Dialect::R;
        Term t = gen::random_term(rng, d, 5);
        Lts l = explore(t, d, support::small_bounds(50));
        if (l.truncated) continue;
        for (const auto& w : {std::string(), std::string("a"), std::string("b"), std::string("ab"),
                              std::string("ba"), std::string("aa"), std::string("abc")}) {
            REQUIRE_MESSAGE(fair_member(l, word(w)) == fair_member_oracle(l, word(w)), print(t) << " / " << w);
            ++compared;
        }
    }
    CHECK(compared > 700);
}

TEST_CASE("refusal traces separate the fast reader") {
    Lts p = explore(R("a |> b.0"), Dialect::R);
    Lts q = explore(R("rec x. (a.x + b.0)"), Dialect::R);
    CHECK(has_refusal_trace(q, parse_trace("1 a 1 a")) == Answer::Yes);
    CHECK(has_refusal_trace(p, parse_trace("1 a 1 a")) == Answer::No);
    CHECK(has_refusal_trace(p, parse_trace("1 a a a")) == Answer::Yes);
    CHECK(has_refusal_trace(p, parse_trace("1 a ~{a,b}")) == Answer::Yes);

    Lts pp = explore(R("a |> b.0 |[a]| (a.0 |[]| a.0)"), Dialect::R);
    Lts qq = explore(R("(rec x. (a.x + b.0)) |[a]| (a.0 |[]| a.0)"), Dialect::R);
    CHECK(has_refusal_trace(qq, parse_trace("1 a 1 a")) == Answer::Yes);
    CHECK(has_refusal_trace(pp, parse_trace("1 a 1 a")) == Answer::No);

    auto nil = refusal_traces_up_to(explore(Term::nil(), Dialect::R), 3);
    CHECK(nil.traces.size() == 4);
    CHECK(trace_str(nil.traces.back()) == "1 1 1");
}

TEST_CASE("trace parsing and printing") {
    auto t = parse_trace("1 a {a,b} ~{c} b");
    REQUIRE(t.size() == 5);
    CHECK(t[0] == TraceEvent::time(RefusalSet::full()));
    CHECK(t[1] == TraceEvent::act("a"));
    CHECK(t[2] == TraceEvent::time(RefusalSet::finite({"a", "b"})));
    CHECK(t[3] == TraceEvent::time(RefusalSet::all_except({"c"})));
    CHECK(trace_str(t) == "1 a {a,b} ~{c} b");
    CHECK(parse_trace("").empty());
    CHECK_THROWS_AS(parse_trace("{a"), Error);
}

TEST_CASE("lts export") {
    Lts p = explore(R("a |> b.0"), Dialect::R);
    std::string json = lts_to_json(p);
    auto doc = nlohmann::json::parse(json);
    CHECK(doc["truncated"] == false);
    CHECK(doc["states"].size() == 3);
    int reads = 0, full = 0;
    for (const auto& e : doc["edges"]) {
        if (e["kind"] == "read") ++reads;
        if (e["kind"] == "time" && e["full"] == true) ++full;
    }
    CHECK(reads == 2);
    CHECK(full == 2);
    std::string dot = lts_to_dot(p);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("dashed") != std::string::npos);
    CHECK(dot.find("?a") != std::string::npos);
}
