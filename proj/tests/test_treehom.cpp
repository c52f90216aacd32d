#include "doctest.h"
#include "support.hpp"

using namespace msrec;
using namespace msrec::testing;

TEST_CASE("applying a tree homomorphism")
{
    auto h = h1();
    auto a = f2(), b = f1();
    CHECK(apply_treehom(h, a.term("iszero(succ(zero))")) == b.term("sigma(g(c), c)"));
    CHECK(apply_treehom(h, a.term("x")) == b.term("z"));

    std::vector<Term> rename{b.term("z"), b.term("x")};
    auto swap = hom_to_hyperderivor(b.sig, b.vars, b.vars, rename);
    CHECK(swap.is_linear());
    CHECK(apply_treehom(swap, b.term("sigma(x, g(z))")) == b.term("sigma(z, g(x))"));
}

TEST_CASE("plain homomorphisms expand variables")
{
    auto sig = f1_signature();
    auto xs = SortedVars::from_names(sig, {{"s", {"x"}}});
    auto ys = SortedVars::from_names(sig, {{"s", {"y"}}});
    std::vector<Term> img{parse_term("g(y)", sig, ys)};
    auto h = hom_to_hyperderivor(sig, xs, ys, img);
    CHECK(apply_treehom(h, parse_term("sigma(x, x)", sig, xs)) == parse_term("sigma(g(y), g(y))", sig, ys));
}

TEST_CASE("hyperderivors are validated")
{
    auto a = f2(), b = f1();
    std::vector<Term> pats{b.term("c"), b.term("c"), b.term("c")};
    CHECK_THROWS_AS(Hyperderivor(a.sig, a.vars, b.sig, b.vars, {0}, pats, {b.term("z")}), Error);
    CHECK_THROWS_AS(Hyperderivor(a.sig, a.vars, b.sig, b.vars, {0, 0}, {b.term("c")}, {b.term("z")}), Error);
    CHECK_THROWS_AS(Hyperderivor(a.sig, a.vars, b.sig, b.vars, {0, 0}, pats, {}), Error);
    auto vs = SortedVars::from_names(b.sig, {{"s", {"v0"}}});
    CHECK_THROWS_AS(Hyperderivor(a.sig, a.vars, b.sig, vs, {0, 0}, pats, {parse_term("v0", b.sig, vs)}), Error);
    CHECK(is_placeholder_name("v12"));
    CHECK_FALSE(is_placeholder_name("v"));
    CHECK_FALSE(is_placeholder_name("val"));
}

TEST_CASE("derived algebra of H1 on the parity algebra")
{
    auto h = h1();
    auto par = r_par();
    auto d = derived_algebra(h, par.algebra(), par.assignment());
    auto a = f2();
    CHECK(d.algebra.table(a.sig.op_id("zero")) == std::vector<Element>{0});
    CHECK(d.algebra.table(a.sig.op_id("succ")) == std::vector<Element>{1, 0});
    CHECK(d.algebra.table(a.sig.op_id("iszero")) == std::vector<Element>{0, 1});
    CHECK(d.assignment == Assignment{1});

    auto b = f1();
    std::vector<Term> same{b.term("x"), b.term("z")};
    auto id = hom_to_hyperderivor(b.sig, b.vars, b.vars, same);
    auto di = derived_algebra(id, par.algebra(), par.assignment());
    CHECK(di.algebra == par.algebra());
    CHECK(di.assignment == par.assignment());
}

TEST_CASE("evaluation commutes with the homomorphism")
{
    Rng rng(301);
    auto h = h1();
    auto a = f2();
    for (int round = 0; round < 20; ++round) {
        auto r = random_recognizer(f1(), rng);
        auto d = derived_algebra(h, r.algebra(), r.assignment());
        TermEnumerator en(a.sig, a.vars);
        for (const auto& t : all_terms(en, a.sig, 6))
            CHECK(evaluate(d.algebra, d.assignment, t) == run(r, apply_treehom(h, t)));
    }
}

TEST_CASE("inverse images")
{
    auto h = h1();
    auto a = f2();
    auto par = r_par();
    auto inv = inverse_image(h, par, a.sort("e"));
    CHECK_FALSE(accepts(inv, a.term("x")));
    CHECK_FALSE(accepts(inv, a.term("succ(zero)")));
    CHECK(accepts(inv, a.term("succ(succ(zero))")));
    TermEnumerator en(a.sig, a.vars);
    for (const auto& t : all_terms(en, a.sig, 6))
        CHECK(accepts(inv, t) == (t.sort() == a.sort("e") && accepts(par, apply_treehom(h, t))));

    auto b = f1();
    auto all = inverse_image(h, universal_language(b.sig, b.vars), a.sort("b"));
    auto none = inverse_image(h, empty_language(b.sig, b.vars), a.sort("b"));
    for (const auto& t : en.up_to(a.sort("b"), 5)) {
        CHECK(accepts(all, t));
        CHECK_FALSE(accepts(none, t));
    }
}

TEST_CASE("direct images")
{
    auto h = h1();
    auto a = f2(), b = f1();
    Term t = a.term("iszero(zero)");
    auto l = recognize_finite(a.sig, a.vars, std::span<const Term>(&t, 1));
    auto img = direct_image(h, l, a.sort("b"));
    auto rows = enumerate_language(img, 6);
    CHECK(rows[0] == std::vector<Term>{b.term("sigma(c, c)")});

    CHECK(is_empty(direct_image(h, empty_language(a.sig, a.vars), a.sort("e"))));

    auto sig = f1_signature();
    auto xs = SortedVars::from_names(sig, {{"s", {"x", "z"}}});
    std::vector<Term> ren{parse_term("z", sig, xs), parse_term("z", sig, xs)};
    auto collapse = hom_to_hyperderivor(sig, xs, xs, ren);
    auto par = r_par();
    auto image = direct_image(collapse, par, 0);
    TermEnumerator en(sig, xs);
    for (const auto& u : en.up_to(0, 5)) {
        bool want = false;
        for (const auto& p : en.up_to(0, 5))
            want = want || (accepts(par, p) && apply_treehom(collapse, p) == u);
        CHECK(accepts(image, u) == want);
    }
}

TEST_CASE("direct images refuse non-linear hyperderivors")
{
    auto b = f1();
    std::vector<Term> pats;
    ParseOptions one;
    one.placeholder_sorts = {0};
    ParseOptions two;
    two.placeholder_sorts = {0, 0};
    pats.push_back(b.term("c"));
    pats.push_back(parse_term("sigma(v0, v0)", b.sig, b.vars, one));
    pats.push_back(parse_term("sigma(v0, v1)", b.sig, b.vars, two));
    Hyperderivor h(b.sig, b.vars, b.sig, b.vars, {0}, pats, {b.term("x"), b.term("z")});
    CHECK_FALSE(h.is_linear());
    CHECK_THROWS_AS(direct_image(h, r_par(), 0), Error);
    CHECK(apply_treehom(h, b.term("g(c)")) == b.term("sigma(c, c)"));
}

TEST_CASE("direct images of random linear hyperderivors against the matching oracle")
{
    Rng rng(307);
    for (int round = 0; round < 20; ++round) {
        auto fx = random_fixture(rng);
        auto h = some_hyperderivor(fx, fx, rng, {true, round % 2 == 0});
        SortId s = uniform(rng, 0, fx.sig.sort_count() - 1);
        auto l = random_recognizer_at(fx, s, rng);
        auto img = direct_image(h, l, s);
        TermEnumerator en(fx.sig, fx.vars);
        for (const auto& t : all_terms(en, fx.sig, 5))
            CHECK(accepts(img, t) == (t.sort() == h.map_sort(s) && semantic_image_member(h, l, s, t)));
        CHECK(direct_image_bound(h, l, s).admits(minimize(img).state_counts()[h.map_sort(s)]));
    }
}
