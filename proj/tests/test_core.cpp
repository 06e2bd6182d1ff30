#include "doctest.h"

#include "pafas/error.hpp"
#include "pafas/predicates.hpp"
#include "pafas/refusal_set.hpp"
#include "pafas/syntax.hpp"

using namespace pafas;

namespace {

Term R(const char* s) { return parse_term(s, Dialect::R); }
Term S(const char* s) { return parse_term(s, Dialect::S); }

} // namespace

TEST_CASE("action ordering puts tau first and ignores urgency between names") {
    Action tau = Action::tau();
    Action a = Action::visible("a"), ua = Action::visible("a", true), b = Action::visible("b");
    CHECK(tau < a);
    CHECK(a < b);
    CHECK(ua < b);
    CHECK_FALSE(Action::name_less(a, ua));
    CHECK_FALSE(Action::name_less(ua, a));
    CHECK(ua.str() == "!a");
    CHECK(Action::tau(true).str() == "!tau");
    CHECK_THROWS_AS(Action::visible("tau"), Error);
    CHECK_THROWS_AS(Action::visible("1x"), Error);
}

TEST_CASE("relabelling drops identity entries and composes") {
    Relabelling f({{"a", Action::visible("b")}, {"c", Action::visible("c")}});
    CHECK(f.mapping().size() == 1);
    CHECK(f.apply(Action::visible("a", true)) == Action::visible("b", true));
    CHECK(f.apply(Action::tau()).is_tau());
    CHECK(f.preimage("b") == NameSet{"a", "b"});
    CHECK(f.preimage("a").empty());
    CHECK(f.image_base() == NameSet{"b"});
    Relabelling g = Relabelling::hiding({"b"});
    Relabelling gf = g.after(f);
    CHECK(gf.apply(Action::visible("a")).is_tau());
    CHECK(gf.apply(Action::visible("b")).is_tau());
    CHECK(gf.hidden() == NameSet{"a", "b"});
}

TEST_CASE("refusal sets are closed under the boolean operations") {
    RefusalSet full = RefusalSet::full();
    RefusalSet ab = RefusalSet::finite({"a", "b"});
    RefusalSet not_a = RefusalSet::all_except({"a"});
    CHECK(full.is_full());
    CHECK(ab.subset_of(full));
    CHECK_FALSE(full.subset_of(ab));
    CHECK(ab.intersected(not_a) == RefusalSet::finite({"b"}));
    CHECK(ab.united(not_a).is_full());
    CHECK(full.minus(ab) == RefusalSet::all_except({"a", "b"}));
    CHECK(not_a.minus(RefusalSet::all_except({"a", "c"})) == RefusalSet::finite({"c"}));
    CHECK(ab.minus(not_a) == RefusalSet::finite({"a"}));
    CHECK(not_a.complement() == RefusalSet::finite({"a"}));
    CHECK(full.str() == "1");
    CHECK(not_a.str() == "~{a}");
    CHECK(ab.str() == "{a,b}");
}

TEST_CASE("sort collects actions, synchronisation sets and relabelling image bases") {
    CHECK(sort_of(Term::nil()).empty());
    CHECK(sort_of(R("a |> b.0")) == NameSet{"a", "b"});
    CHECK(sort_of(R("a.0[a->c]")) == NameSet{"a", "c"});
    CHECK(sort_of(R("a.0 |[d]| tau.0")) == NameSet{"a", "d"});
    CHECK(sort_of(R("a.0[a->tau]")) == NameSet{"a"});
}

TEST_CASE("guardedness requires an action prefix") {
    Term x = Term::var("x");
    CHECK(is_guarded("x", Term::prefix(Action::visible("a"), x)));
    CHECK_FALSE(is_guarded("x", Term::sum(x, R("a.0"))));
    Term body = Term::read_set({Action::visible("a")},
                               Term::prefix(Action::visible("b"), Term::sum(R("c.0"), x)));
    CHECK(is_guarded("x", body));
    CHECK(is_guarded("x", Term::rec("x", x)));
    CHECK_FALSE(is_guarded("x", Term::read(Action::visible("a"), x)));
}

TEST_CASE("substitution and unfolding") {
    Term ax = Term::prefix(Action::visible("a"), Term::var("x"));
    CHECK(substitute(ax, "x", Term::nil()) == R("a.0"));
    Term rec = R("rec x. a.x");
    CHECK(substitute(Term::var("x"), "x", rec) == rec);
    Term p = R("rec x. a |> b.x");
    CHECK(unfold(p) == Term::read(Action::visible("a"), Term::prefix(Action::visible("b"), p)));
    CHECK(substitute(Term::rec("x", Term::var("x")), "x", Term::nil()) == Term::rec("x", Term::var("x")));
}

TEST_CASE("properness of read-set terms") {
    CHECK_FALSE(is_proper(S("{a} |> {b} |> c.0")));
    CHECK_FALSE(is_proper(S("rec x. {a} |> b.(c.0 + x)")));
    CHECK_FALSE(is_proper(S("rec x. {a} |> b.rec y. (c.(c.0 + y) |[]| x)")));
    CHECK(is_proper(S("{a,b} |> c.0")));
    CHECK(is_proper(S("rec x. {a} |> b.x")));
    CHECK(is_proper(S("a.0 + b.0")));
    CHECK_FALSE(is_proper(S("{a} |> c.0 + {b} |> c.0")));

    auto v = check_proper(S("{a} |> {b} |> c.0"));
    REQUIRE(v);
    CHECK(v->path == Path{0});
    CHECK_FALSE(is_read_proper(S("{a} |> {b} |> c.0")));
    CHECK(is_rec_proper(S("{a} |> {b} |> c.0")));
    CHECK_FALSE(is_x_proper("x", Term::sum(Term::var("x"), R("a.0"))));
}

TEST_CASE("read normal form") {
    CHECK_FALSE(is_rnf(R("(a |> b.0) + c.0")));
    CHECK(is_rnf(R("a |> (b.0 + c.0)")));
    CHECK(is_rnf(R("a |> b |> c.0")));
    CHECK_FALSE(is_rnf(R("a |> (b |> c.0 |[]| d.0)")));
    CHECK(is_rnf(R("rec x. a |> b.x")));
}

TEST_CASE("read-set helpers") {
    ReadSetActions ms = {Action::visible("a"), Action::visible("b", true)};
    ReadSetActions u = urgentify_read_set(ms);
    CHECK(u == ReadSetActions{Action::visible("a", true), Action::visible("b", true)});
    CHECK(urgentify_read_set(u) == u);
    CHECK(urgentify_read_set({}).empty());
    CHECK(urgentify_read_set({Action::tau()}) == ReadSetActions{Action::tau(true)});
    CHECK(urgent_set(ms) == NameSet{"b"});
    CHECK(urgent_set({}).empty());
    CHECK(urgent_set({Action::tau(true)}) == NameSet{"tau"});
    CHECK_FALSE(is_legal_read_set({Action::visible("a"), Action::visible("a", true)}));
    CHECK_THROWS_AS(Term::read_set({Action::visible("a"), Action::visible("a", true)}, Term::nil()), Error);
}

TEST_CASE("fresh names avoid the registered sort") {
    FreshNames f({"e_1", "a"});
    std::string n = f.next();
    CHECK(n != "e_1");
    CHECK(n != f.next());
}

TEST_CASE("dialect detection") {
    CHECK(dialect_of(R("a |> b.0")) == Dialect::R);
    CHECK(dialect_of(S("{a} |> b.0")) == Dialect::S);
    CHECK(dialect_of(R("a.0"), Dialect::S) == Dialect::S);
    Term mixed = Term::sum(R("a |> b.0"), S("{a} |> b.0"));
    CHECK_THROWS_AS(dialect_of(mixed), Error);
}
