#include "doctest.h"

#include <functional>
#include <random>

#include "generators.hpp"
#include "pafas/error.hpp"
#include "pafas/transform.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace pafas;
using support::R;
using support::S;

namespace {

ErrorKind error_kind(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Syntax;
}

Action A(const char* n, bool urgent = false) { return Action::visible(n, urgent); }

} // namespace

TEST_CASE("read sets become chains of read prefixes") {
    CHECK(s_to_r(S("{a,b} |> c.0")) == R("a |> b |> c.0"));
    CHECK(s_to_r(S("{b,a} |> c.0")) == R("a |> b |> c.0"));
    CHECK(s_to_r(Term::nil()) == Term::nil());
    CHECK(s_to_r(S("{!b,tau} |> c.0 |[c]| d.0[d->c]")) == R("tau |> !b |> c.0 |[c]| d.0[d->c]"));
    CHECK(error_kind([] { s_to_r(S("{a} |> {b} |> c.0")); }) == ErrorKind::ImproperInput);
}

TEST_CASE("merging read actions lets the urgent copy win") {
    CHECK(merge_read_actions({A("a"), A("a", true)}) == ReadSetActions{A("a", true)});
    CHECK(merge_read_actions({A("a")}) == ReadSetActions{A("a")});
    CHECK(merge_read_actions({A("a"), A("b"), A("a")}) == ReadSetActions{A("a"), A("b")});
    CHECK(merge_read_actions({}).empty());
}

TEST_CASE("read chains become merged read sets") {
    CHECK(r_to_s(R("a |> b |> c.0")) == S("{a,b} |> c.0"));
    CHECK(r_to_s(R("a |> !a |> b.0")) == S("{!a} |> b.0"));
    CHECK(r_to_s(R("c.0")) == S("c.0"));
    CHECK(r_to_s(R("rec x. a |> b |> (c.x + d.0)")) == S("rec x. {a,b} |> (c.x + d.0)"));
    CHECK(error_kind([] { r_to_s(R("(a |> b.0) + c.0")); }) == ErrorKind::NotRnf);
}

TEST_CASE("the read-set translation round trip") {
    std::mt19937 rng(4);
    for (int i = 0; i < 300; ++i) {
        Term q = gen::random_proper(rng, 5);
        Term r = s_to_r(q);
        REQUIRE_MESSAGE(is_rnf(r), print(q));
        REQUIRE(r_to_s(r) == q);
    }
}

TEST_CASE("one-step diagrams commute between the two languages") {
    std::mt19937 rng(12);
    std::size_t states = 0;
    for (int i = 0; i < 120; ++i) {
        Term q = gen::random_proper(rng, 6);
        auto f = props::commuting_diagrams(q, 200, &states);
        REQUIRE_MESSAGE(!f, *f);
    }
    CHECK(states > 300);
}

TEST_CASE("properness is preserved by transitions") {
    std::mt19937 rng(13);
    std::size_t transitions = 0;
    while (transitions < 3000) {
        Term q = gen::random_proper(rng, 6);
        auto f = props::subject_reduction(q, 200, transitions);
        REQUIRE_MESSAGE(!f, *f);
    }
}

TEST_CASE("read normal form is preserved and translates to a bisimilar read-set term") {
    std::mt19937 rng(14);
    int decided = 0;
    for (int i = 0; i < 150; ++i) {
        Term q = gen::random_rnf(rng, 5);
        bool d = false;
        auto f = props::rnf_translation(q, 300, &d);
        REQUIRE_MESSAGE(!f, *f);
        decided += d;
    }
    CHECK(decided > 140);
}

TEST_CASE("law examples") {
    CHECK(apply_law(R("(a |> b.0) + c.0"), LawId::L3) == R("a |> (b.0 + c.0)"));
    CHECK(apply_law(R("a |> (b.0 |[b]| c.0)"), LawId::L4) == R("(a |> b.0) |[a,b]| (a |> c.0)"));
    CHECK(apply_law(R("rec x. a.x"), LawId::L7) == R("a.rec x. a.x"));
    CHECK(apply_law(R("a |> b |> c.0"), LawId::L1) == R("b |> a |> c.0"));
    CHECK(apply_law(R("a |> !a |> c.0"), LawId::L2) == R("!a |> c.0"));
    CHECK(apply_law(R("!a |> a |> c.0"), LawId::L2) == R("!a |> c.0"));
    CHECK(apply_law(R("(a |> b.0)[a->c]"), LawId::L5) == R("c |> (b.0)[a->c]"));
    CHECK(apply_law(R("(a.0)[a->b][b->c]"), LawId::L6) == R("(a.0)[a->c, b->c]"));
    CHECK(apply_law(R("d.((a |> b.0) + c.0)"), LawId::L3, {0}) == R("d.(a |> (b.0 + c.0))"));

    CHECK(error_kind([] { apply_law(R("a.0"), LawId::L3); }) == ErrorKind::NoMatch);
    CHECK(error_kind([] { apply_law(R("a.0"), LawId::L3, {0, 0}); }) == ErrorKind::NoMatch);
    CHECK(error_kind([] { apply_law(R("a |> (a.0 |[]| b.0)"), LawId::L4); }) == ErrorKind::SideConditionViolated);
    CHECK(error_kind([] { apply_law(R("a |> b |> c.0"), LawId::L2); }) == ErrorKind::SideConditionViolated);
    CHECK(error_kind([] { apply_law(R("a.b.0 + (a.0 |[]| c.0)"), LawId::DetChoice); }) ==
          ErrorKind::SideConditionViolated);
    CHECK(error_kind([] { apply_law(R("(a.b.0 + a.c.0) + (d.0 |[]| e.0)"), LawId::DetChoice); }) ==
          ErrorKind::SideConditionViolated);
    CHECK(parse_law("l3") == LawId::L3);
    CHECK(parse_law("DETCHOICE") == LawId::DetChoice);
    CHECK(error_kind([] { parse_law("L8"); }) == ErrorKind::NoMatch);
}

TEST_CASE("renaming gives disjoint sorts and a bisimilar term") {
    Term q = R("a.b.0 + (b.0 |[]| c.0)");
    Term r = apply_law(q, LawId::Rename, {0});
    REQUIRE(r.left().is(Kind::Relabel));
    NameSet left = sort_of(r.left().body());
    CHECK_FALSE(left.contains("a"));
    CHECK_FALSE(left.contains("b"));
    CHECK(support::compare_r(q, r) == Verdict::Equivalent);
    CHECK(rename_actions(R("a |> b.0 |[a]| a.0[a->b]"), {{"a", "x"}}) == R("x |> b.0 |[x]| x.0[x->b]"));
}

TEST_CASE("every law preserves timed bisimilarity") {
    std::mt19937 rng(15);
    props::LawInstances inst(rng);
    for (LawId law : {LawId::L1, LawId::L2, LawId::L3, LawId::L4, LawId::L5, LawId::L6, LawId::L7, LawId::DetChoice,
                      LawId::Rename}) {
        int decided = 0;
        for (int i = 0; i < 60; ++i) {
            auto [lhs, path] = inst.next(law);
            bool d = false;
            auto f = props::law_instance_holds(lhs, law, path, d);
            REQUIRE_MESSAGE(!f, *f);
            decided += d;
        }
        CHECK_MESSAGE(decided >= 55, to_string(law));
    }
}

TEST_CASE("the deterministic-choice law breaks for a nondeterministic summand") {
    Term q = R("a.b.0 + a.c.0");
    Term r1 = R("d.0"), r2 = R("e.0");
    Term lhs = Term::sum(q, Term::par(r1, r2, {}));
    Term rhs = det_choice_expansion(q, r1, {}, r2);
    Lts a = explore(lhs, Dialect::R);
    Lts b = explore(rhs, Dialect::R);
    BisimResult res = bisim(a, b, BisimScheme::RSense);
    REQUIRE(res.verdict == Verdict::Distinguished);
    // Some play lets the expansion reach the deadlock b |[a,b,c]| c.
    bool deadlock = false;
    for (const auto& st : res.witness) {
        const Lts& side = st.side == 0 ? a : b;
        std::string t = print(side.states[st.target]);
        if (t == "b.0 |[a,b,c]| c.0" || t == "c.0 |[a,b,c]| b.0") deadlock = true;
    }
    CHECK(deadlock);
}

TEST_CASE("normalisation into read normal form") {
    Term n = normalize_to_rnf(R("a |> (b.0 |[]| c.0)"));
    REQUIRE(n.is(Kind::Relabel));
    REQUIRE(n.body().is(Kind::Par));
    const Term& par = n.body();
    REQUIRE(par.sync().size() == 1);
    std::string e = *par.sync().begin();
    CHECK(par.left() == Term::read(A(e.c_str()), R("b.0")));
    CHECK(par.right() == Term::read(A(e.c_str()), R("c.0")));
    CHECK(n.relabelling().apply(A(e.c_str())) == A("a"));
    CHECK(is_rnf(n));
    CHECK(support::compare_r(n, R("a |> (b.0 |[]| c.0)")) == Verdict::Equivalent);

    CHECK(normalize_to_rnf(R("a |> b |> c.0")) == R("a |> b |> c.0"));
    CHECK(error_kind([] { normalize_to_rnf(R("(a |> b.0) + (c.0 |[]| d.0)")); }) == ErrorKind::OutsideFragment);

    Term relabelled = R("!a |> (b |> c.0)[b->d]");
    Term nr = normalize_to_rnf(relabelled);
    CHECK(is_rnf(nr));
    CHECK(support::compare_r(nr, relabelled) == Verdict::Equivalent);
}

TEST_CASE("normalisation on random terms of the fragment") {
    std::mt19937 rng(16);
    int done = 0, outside = 0;
    for (int i = 0; i < 400 && done < 150; ++i) {
        Term q = gen::random_term(rng, Dialect::R, 5);
        Term n = Term::nil();
        try {
            n = normalize_to_rnf(q);
        } catch (const Error& e) {
            REQUIRE(e.kind() == ErrorKind::OutsideFragment);
            ++outside;
            continue;
        }
        REQUIRE_MESSAGE(is_rnf(n), print(q) << " -> " << print(n));
        Verdict v = support::compare_r(q, n, 3000);
        REQUIRE_MESSAGE(v != Verdict::Distinguished, print(q) << " -> " << print(n));
        ++done;
    }
    CHECK(done >= 100);
    CHECK(outside > 0);
}
