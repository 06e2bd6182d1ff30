#include "pafas/examples.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

#include "pafas/analysis.hpp"
#include "pafas/error.hpp"
#include "pafas/petri.hpp"
#include "pafas/predicates.hpp"
#include "pafas/sos.hpp"
#include "pafas/syntax.hpp"
#include "pafas/transform.hpp"

namespace pafas {

const char* const kBooleanArrayProgram =
    "Pt <= rtt |> (r1t |> w1f.Pf) + rtf |> (r1t |> w1f.Pf)\n"
    "Pf <= rft |> (r1f |> w1t.Pt) + rff |> (r1f |> w1t.Pt)\n"
    "Qt <= rtt |> (r2t |> w2f.Qf) + rft |> (r2t |> w2f.Qf)\n"
    "Qf <= rtf |> (r2f |> w2t.Qt) + rff |> (r2f |> w2t.Qt)\n"
    "main = Pt |[rtt,rtf,rft,rff]| Qf\n";

namespace {

// A check returns nothing on success, otherwise what it saw instead.
using Check = std::function<std::optional<std::string>()>;
using Outcome = std::optional<std::string>;

Term R(const std::string& s) { return parse_term(s, Dialect::R); }
Term S(const std::string& s) { return parse_term(s, Dialect::S); }

Outcome expect(bool ok, const std::string& otherwise) {
    if (ok) return std::nullopt;
    return otherwise;
}

Outcome expect_term(const Term& got, const Term& want) {
    return expect(got == want, "got " + print(got) + ", expected " + print(want));
}

Term boolean_array(const std::string& main) {
    std::string text = kBooleanArrayProgram;
    text = text.substr(0, text.find("main ="));
    return parse_program(text + "main = " + main + "\n", Dialect::R).main;
}

bool has_transition(const std::vector<Transition>& ts, const std::string& name, const std::function<bool(const Term&)>& target) {
    return std::any_of(ts.begin(), ts.end(), [&](const Transition& t) {
        return !t.action.is_tau() && t.action.name() == name && target(t.target);
    });
}

Verdict equivalent(const Term& p, Dialect dp, const Term& q, Dialect dq, BisimScheme scheme) {
    return bisim(explore(p, dp), explore(q, dq), scheme).verdict;
}

std::set<std::vector<std::string>> fair_set(const Term& t, std::size_t n) {
    auto fw = fair_words_up_to(explore(t, dialect_of(t)), n);
    return {fw.words.begin(), fw.words.end()};
}

std::vector<std::string> letters(const std::string& s) {
    std::vector<std::string> w;
    for (char c : s) w.emplace_back(1, c);
    return w;
}

struct Example {
    const char* id;
    const char* claim;
    Check check;
};

std::vector<Example> examples() {
    return {
        // ---- terms and predicates
        {"sort/read-prefix", "the sort of a |> b.0 is {a,b}",
         [] { return expect(sort_of(R("a |> b.0")) == NameSet{"a", "b"}, "wrong sort"); }},
        {"guarded/under-read-set", "x is guarded in {a} |> b.(c.0 + x)",
         [] {
             Term t = Term::read_set({Action::visible("a")},
                                     Term::prefix(Action::visible("b"), Term::sum(R("c.0"), Term::var("x"))));
             return expect(is_guarded("x", t), "reported unguarded");
         }},
        {"substitute/unfold-reader", "unfolding rec x. a |> b.x gives a |> b.(rec x. a |> b.x)",
         [] { return expect_term(unfold(R("rec x. a |> b.x")), R("a |> b.(rec x. a |> b.x)")); }},
        {"proper/nested-read-sets", "{a} |> {b} |> c.0 is not read-proper",
         [] { return expect(!is_read_proper(S("{a} |> {b} |> c.0")) && !is_proper(S("{a} |> {b} |> c.0")), "accepted"); }},
        {"proper/choice-under-recursion", "rec x. {a} |> b.(c.0 + x) is not proper",
         [] { return expect(!is_proper(S("rec x. {a} |> b.(c.0 + x)")), "accepted"); }},
        {"proper/refined-x-proper", "rec x. {a} |> b.rec y. (c.(c.0 + y) |[]| x) is not proper",
         [] { return expect(!is_proper(S("rec x. {a} |> b.rec y. (c.(c.0 + y) |[]| x)")), "accepted"); }},
        {"rnf/choice-with-read", "(a |> b.0) + c.0 is not in read normal form",
         [] { return expect(!is_rnf(R("(a |> b.0) + c.0")), "accepted"); }},
        {"rnf/read-over-choice", "a |> (b.0 + c.0) is in read normal form",
         [] { return expect(is_rnf(R("a |> (b.0 + c.0)")), "rejected"); }},
        {"urgentify/read-set", "urgentifying {a,!b} gives {!a,!b}",
         [] {
             ReadSetActions got = urgentify_read_set({Action::visible("a"), Action::visible("b", true)});
             return expect(got == ReadSetActions{Action::visible("a", true), Action::visible("b", true)}, "wrong set");
         }},
        {"urgent-set/read-set", "the urgent part of {a,!b} is {b}",
         [] { return expect(urgent_set({Action::visible("a"), Action::visible("b", true)}) == NameSet{"b"}, "wrong set"); }},
        {"syntax/read-set", "{a,b} |> c.0 parses to a read-set prefix",
         [] {
             Term t = S("{a,b} |> c.0");
             return expect(t.is(Kind::ReadSet) && t.read_actions().size() == 2 && t.body() == R("c.0"), print(t));
         }},
        {"syntax/sync-set", "B_tf prints as Pt |[rff,rft,rtf,rtt]| Qf (sync sets print sorted)",
         [] {
             Term t = Term::par(Term::var("Pt"), Term::var("Qf"), {"rtt", "rtf", "rft", "rff"});
             return expect(print(t) == "Pt |[rff,rft,rtf,rtt]| Qf", print(t));
         }},

        // ---- boolean array
        {"boolean-array/read-self-loops", "B_tf reads rtf and r1t and stays B_tf (up to unfolding)",
         [] {
             Term b = boolean_array("Pt |[rtt,rtf,rft,rff]| Qf");
             auto reads = read_steps(b);
             auto same = [&](const Term& t) { return equivalent(t, Dialect::R, b, Dialect::R, BisimScheme::RSense) == Verdict::Equivalent; };
             bool ok = has_transition(reads, "rtf", same) && has_transition(reads, "r1t", same) &&
                       !has_transition(reads, "rtt", [](const Term&) { return true; });
             return expect(ok, "read steps of B_tf differ");
         }},
        {"boolean-array/write", "B_tf performs w1f ordinarily and becomes B_ff",
         [] {
             Term b = boolean_array("Pt |[rtt,rtf,rft,rff]| Qf");
             Term bff = boolean_array("Pf |[rtt,rtf,rft,rff]| Qf");
             bool ok = has_transition(ordinary_steps(b), "w1f", [&](const Term& t) {
                 return equivalent(t, Dialect::R, bff, Dialect::R, BisimScheme::RSense) == Verdict::Equivalent;
             });
             return expect(ok, "no w1f step to B_ff");
         }},
        {"boolean-array/write-does-not-block", "after a 1-step and w1f, r2f is still urgent",
         [] {
             Term b = boolean_array("Pt |[rtt,rtf,rft,rff]| Qf");
             auto t = one_step(b);
             if (!t) return Outcome("B_tf has no 1-step");
             auto w = ordinary_steps(*t);
             auto it = std::find_if(w.begin(), w.end(), [](const Transition& x) { return x.action.name() == "w1f"; });
             if (it == w.end()) return Outcome("no w1f after the 1-step");
             return expect(it->target.right() == t->right() && print(t->right()).find("!r2f") != std::string::npos,
                           print(it->target));
         }},

        // ---- read-action semantics
        {"sos/urgent-prefix", "!a.0 performs a and becomes 0",
         [] { return expect(ordinary_steps(R("!a.0")) == std::vector<Transition>{{Action::visible("a"), Term::nil()}}, "wrong steps"); }},
        {"sos/read-under-recursion", "rec x. a |> b.x reads a into a |> b.(rec x. a |> b.x)",
         [] {
             auto r = read_steps(R("rec x. a |> b.x"));
             return expect(r == std::vector<Transition>{{Action::visible("a"), R("a |> b.(rec x. a |> b.x)")}}, "wrong read steps");
         }},
        {"time/urgent-tau", "!tau.0 cannot let time pass at all",
         [] { return expect(!can_refuse(R("!tau.0"), RefusalSet::empty()), "time passes"); }},
        {"time/reader-1-step", "a |> b.0 becomes !a |> !b.0 with a 1-step",
         [] { return expect(one_step(R("a |> b.0")) == R("!a |> !b.0"), "wrong 1-step"); }},
        {"time/no-second-1-step", "!a |> !b.0 has no 1-step",
         [] { return expect(!one_step(R("!a |> !b.0")) && !can_refuse(R("!a |> !b.0"), RefusalSet::full()), "1-step exists"); }},
        {"time/priority-example", "a |> ((rec x. b.x) |[b]| b |> c.0) becomes !a |> (!b.(rec x. b.x) |[b]| !b |> !c.0)",
         [] {
             auto m = one_step(R("a |> ((rec x. b.x) |[b]| b |> c.0)"));
             if (!m) return Outcome("no 1-step");
             return expect(print(*m) == "!a |> (!b.(rec x. b.x) |[b]| !b |> !c.0)", print(*m));
         }},
        {"time/priority-example-moves", "the underlined priority term reads a, performs c or b, and has no 1-step",
         [] {
             Term p = R("!a |> (!b.(rec x. b.x) |[b]| !b |> !c.0)");
             auto o = ordinary_steps(p);
             bool ok = read_steps(p) == std::vector<Transition>{{Action::visible("a"), p}} &&
                       has_transition(o, "c", [](const Term& t) { return print(t) == "!b.(rec x. b.x) |[b]| 0"; }) &&
                       has_transition(o, "b", [](const Term& t) { return print(t) == "(rec x. b.x) |[b]| !b |> !c.0"; }) &&
                       !one_step(p);
             return expect(ok, "moves differ");
         }},

        // ---- read-set semantics
        {"sos-s/read-set", "{a,b} |> c.0 performs a and b to itself and c to 0",
         [] {
             Term p = S("{a,b} |> c.0");
             auto s = action_steps_s(p);
             std::vector<Transition> want = {{Action::visible("a"), p}, {Action::visible("b"), p}, {Action::visible("c"), Term::nil()}};
             std::sort(s.begin(), s.end());
             std::sort(want.begin(), want.end());
             return expect(s == want, "wrong steps");
         }},
        {"sos-s/nested-read-sets", "{a} |> {b} |> c.0 performs b into {b} |> c.0",
         [] {
             auto s = action_steps_s(S("{a} |> {b} |> c.0"));
             bool ok = has_transition(s, "b", [](const Term& t) { return t == S("{b} |> c.0"); }) &&
                       !has_transition(s, "b", [](const Term& t) { return t == S("{a} |> {b} |> c.0"); });
             return expect(ok, "wrong b steps");
         }},

        // ---- translations
        {"translate/s2r", "{a,b} |> c.0 translates to a |> b |> c.0",
         [] { return expect_term(s_to_r(S("{a,b} |> c.0")), R("a |> b |> c.0")); }},
        {"translate/merge", "merging a and !a gives {!a}",
         [] { return expect(merge_read_actions({Action::visible("a"), Action::visible("a", true)}) == ReadSetActions{Action::visible("a", true)}, "wrong merge"); }},
        {"translate/r2s", "a |> b |> c.0 translates back to {a,b} |> c.0",
         [] { return expect_term(r_to_s(R("a |> b |> c.0")), S("{a,b} |> c.0")); }},
        {"translate/r2s-bisimilar", "a reader in read normal form and its read-set translation are timed bisimilar",
         [] {
             Term q = R("(rec x. a |> b |> (c.x + d.0)) |[c]| c.0");
             return expect(equivalent(q, Dialect::R, r_to_s(q), Dialect::S, BisimScheme::SSense) == Verdict::Equivalent,
                           "distinguished");
         }},

        // ---- laws
        {"laws/L3", "(a |> b.0) + c.0 rewrites to a |> (b.0 + c.0), with the same timed behaviour",
         [] {
             Term l = R("(a |> b.0) + c.0");
             Term r = apply_law(l, LawId::L3);
             if (r != R("a |> (b.0 + c.0)")) return Outcome(print(r));
             return expect(equivalent(l, Dialect::R, r, Dialect::R, BisimScheme::RSense) == Verdict::Equivalent, "distinguished");
         }},
        {"laws/L4", "a |> (b.0 |[]| c.0) distributes to (a |> b.0) |[a]| (a |> c.0) when a is fresh",
         [] {
             Term l = R("a |> (b.0 |[]| c.0)");
             Term r = apply_law(l, LawId::L4);
             if (r != R("(a |> b.0) |[a]| (a |> c.0)")) return Outcome(print(r));
             return expect(equivalent(l, Dialect::R, r, Dialect::R, BisimScheme::RSense) == Verdict::Equivalent, "distinguished");
         }},
        {"laws/det-choice-counterexample", "a.b + a.c plus a parallel summand differs from its naive expansion",
         [] {
             Term q = R("a.b.0 + a.c.0");
             Term lhs = Term::sum(q, R("d.0 |[]| e.0"));
             Term rhs = det_choice_expansion(q, R("d.0"), {}, R("e.0"));
             Lts a = explore(lhs, Dialect::R), b = explore(rhs, Dialect::R);
             BisimResult res = bisim(a, b, BisimScheme::RSense);
             if (res.verdict != Verdict::Distinguished) return Outcome("not distinguished");
             for (const auto& st : res.witness) {
                 std::string t = print((st.side == 0 ? a : b).states[st.target]);
                 if (t == "b.0 |[a,b,c]| c.0" || t == "c.0 |[a,b,c]| b.0") return Outcome();
             }
             return Outcome("witness does not reach the deadlock");
         }},
        {"laws/partial-time-step", "a.0 |[]| b.0 and a.b.0 + b.a.0 are told apart by refusing {b} after 1a",
         [] {
             BisimResult r = bisim(explore(R("a.0 |[]| b.0"), Dialect::R), explore(R("a.b.0 + b.a.0"), Dialect::R),
                                   BisimScheme::RSense);
             return expect(r.verdict == Verdict::Distinguished && r.distinguishing_refusal &&
                               *r.distinguishing_refusal == RefusalSet::finite({"b"}),
                           "no partial step {b} in the witness");
         }},
        {"normalize/read-over-parallel", "a |> (b.0 |[]| c.0) normalises to ((e |> b.0) |[e]| (e |> c.0))[e->a]",
         [] {
             Term q = R("a |> (b.0 |[]| c.0)");
             Term n = normalize_to_rnf(q);
             bool shape = n.is(Kind::Relabel) && n.body().is(Kind::Par) && n.body().sync().size() == 1;
             if (!shape) return Outcome(print(n));
             Action e = Action::visible(*n.body().sync().begin());
             bool ok = n.body().left() == Term::read(e, R("b.0")) && n.body().right() == Term::read(e, R("c.0")) &&
                       n.relabelling().apply(e) == Action::visible("a") && is_rnf(n) &&
                       equivalent(q, Dialect::R, n, Dialect::R, BisimScheme::RSense) == Verdict::Equivalent;
             return expect(ok, print(n));
         }},
        {"normalize/outside-fragment", "a choice with a read summand over a parallel summand is refused",
         [] {
             try {
                 normalize_to_rnf(R("(a |> b.0) + (c.0 |[]| d.0)"));
             } catch (const Error& e) {
                 return expect(e.kind() == ErrorKind::OutsideFragment, e.what());
             }
             return Outcome("accepted");
         }},

        // ---- nets
        {"petri/place-equations", "a place with preset {t1,t2}, postset {t3,t4}, readers {t5,t6} gives P_0 and P_1",
         [] {
             ReadArcNet net;
             net.places = {{"P", false}};
             for (const char* t : {"t1", "t2", "t3", "t4", "t5", "t6"}) net.transitions.push_back({t, t});
             net.post = {{"t1", "P"}, {"t2", "P"}};
             net.pre = {{"P", "t3"}, {"P", "t4"}};
             net.reads = {{"P", "t5"}, {"P", "t6"}};
             Term want = parse_program("P_0 <= t1.P_1 + t2.P_1\nP_1 <= {t5,t6} |> (t3.P_0 + t4.P_0)\nmain = P_0\n",
                                       Dialect::S).main;
             return expect_term(place_process(net, "P"), want);
         }},

        // ---- analysis
        {"bisim/fast-reader", "a |> b.0 and rec x. (a.x + b.0) are not timed bisimilar",
         [] {
             return expect(equivalent(R("a |> b.0"), Dialect::R, R("rec x. (a.x + b.0)"), Dialect::R, BisimScheme::RSense) ==
                               Verdict::Distinguished,
                           "equivalent");
         }},
        {"determinism/choice", "a.b.0 + a.c.0 is not deterministic",
         [] { return expect(!is_deterministic(explore(R("a.b.0 + a.c.0"), Dialect::R)), "deterministic"); }},
        {"traces/fast-reader", "rec x. (a.x + b.0) has the refusal traces 1a(1a)*, a |> b.0 has no 1a1a",
         [] {
             Lts q = explore(R("rec x. (a.x + b.0)"), Dialect::R);
             Lts p = explore(R("a |> b.0"), Dialect::R);
             bool ok = has_refusal_trace(q, parse_trace("1 a 1 a 1 a")) == Answer::Yes &&
                       has_refusal_trace(p, parse_trace("1 a 1 a")) == Answer::No &&
                       has_refusal_trace(p, parse_trace("1 a a a")) == Answer::Yes;
             return expect(ok, "trace sets differ");
         }},
        {"traces/parallel-readers", "Q |[a]| (a.0 |[]| a.0) has the trace 1a1a, the reader version does not",
         [] {
             Lts q = explore(R("(rec x. (a.x + b.0)) |[a]| (a.0 |[]| a.0)"), Dialect::R);
             Lts p = explore(R("a |> b.0 |[a]| (a.0 |[]| a.0)"), Dialect::R);
             return expect(has_refusal_trace(q, parse_trace("1 a 1 a")) == Answer::Yes &&
                               has_refusal_trace(p, parse_trace("1 a 1 a")) == Answer::No,
                           "trace sets differ");
         }},
        {"fair/reader-member", "aab is a fair trace of a |> b.0, aa is not",
         [] {
             Lts p = explore(R("a |> b.0"), Dialect::R);
             return expect(fair_member(p, letters("aab")) == Answer::Yes && fair_member(p, letters("aa")) == Answer::No,
                           "wrong membership");
         }},
        {"fair/reader-language", "the fair traces of a |> b.0 up to length 3 are b, ab, aab",
         [] {
             return expect(fair_set(R("a |> b.0"), 3) == std::set<std::vector<std::string>>{letters("b"), letters("ab"), letters("aab")},
                           "wrong language");
         }},
        {"fair/infinite-a", "infinitely many a's are fair for rec x. (a.x + b.0) but not for a |> b.0",
         [] {
             return expect(fair_lasso(explore(R("rec x. (a.x + b.0)"), Dialect::R), {}, {"a"}) == Answer::Yes &&
                               fair_lasso(explore(R("a |> b.0"), Dialect::R), {}, {"a"}) == Answer::No,
                           "wrong lasso answers");
         }},
        {"fair/priority-example", "every fair trace of the priority example ends with c",
         [] {
             auto s = fair_set(R("a |> ((rec x. b.x) |[b]| b |> c.0)"), 2);
             bool ok = s.count(letters("c")) && s.count(letters("bc")) && !s.count(letters("b")) && !s.count({});
             for (const auto& w : s) ok = ok && !w.empty() && w.back() == "c";
             return expect(ok, "wrong language");
         }},
        {"fair/expressivity", "no read-free candidate with sort {a,b} has the fair language {a^i b}",
         [] {
             std::set<std::vector<std::string>> target;
             for (int i = 0; i <= 9; ++i) target.insert(letters(std::string(i, 'a') + "b"));
             if (fair_set(R("a |> b.0"), 10) != target) return Outcome("reader language differs");
             for (const char* c : {"a.b.0", "(rec x. a.x) + b.0"})
                 if (fair_set(R(c), 10) == target) return Outcome(std::string("no witness for ") + c);
             if (fair_lasso(explore(R("rec x. (a.x + b.0)"), Dialect::R), {}, {"a"}) != Answer::Yes)
                 return Outcome("no witness for rec x. (a.x + b.0)");
             return Outcome();
         }},
    };
}

} // namespace

std::vector<ExampleResult> run_reference_examples() {
    std::vector<ExampleResult> out;
    for (const auto& e : examples()) {
        ExampleResult r{e.id, e.claim, false, {}};
        try {
            auto failure = e.check();
            r.passed = !failure;
            if (failure) r.detail = *failure;
        } catch (const std::exception& ex) {
            r.detail = std::string("threw: ") + ex.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace pafas
