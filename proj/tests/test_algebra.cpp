#include "doctest.h"
#include "support.hpp"

using namespace msrec;
using namespace msrec::testing;

namespace {

FiniteAlgebra par_algebra()
{
    return r_par().algebra();
}

} // namespace

TEST_CASE("evaluate on the parity algebra")
{
    auto fx = f1();
    auto alg = par_algebra();
    Assignment a{0, 1};
    CHECK(evaluate(alg, a, fx.term("g(g(c))")) == 0);
    CHECK(evaluate(alg, a, fx.term("sigma(z, z)")) == 0);
    CHECK(evaluate(alg, a, fx.term("x")) == 0);
    CHECK(evaluate(alg, a, fx.term("g(z)")) == 0);
}

TEST_CASE("tuple encoding is mixed radix with the last argument fastest")
{
    std::vector<std::size_t> radix{2, 3};
    std::vector<Element> args{1, 2};
    CHECK(tuple_index(args, radix) == 5);
    std::vector<Element> back(2);
    tuple_decode(4, radix, back);
    CHECK(back == std::vector<Element>{1, 1});
}

TEST_CASE("algebra tables are validated")
{
    auto sig = f1_signature();
    CHECK_THROWS_AS(FiniteAlgebra(sig, {2}, {{0}, {1, 0}, {0, 1, 1}}), Error);
    CHECK_THROWS_AS(FiniteAlgebra(sig, {2}, {{2}, {1, 0}, {0, 1, 1, 0}}), Error);
}

TEST_CASE("product algebra")
{
    auto fx = f1();
    auto alg = par_algebra();
    std::vector<FiniteAlgebra> two{alg, alg};
    auto p = product_algebra(two);
    CHECK(p.algebra.carrier(0) == 4);

    Rng rng(7);
    auto other = random_algebra(fx.sig, rng, 3);
    std::vector<FiniteAlgebra> mixed{alg, other};
    auto q = product_algebra(mixed);
    Assignment a0{0, 1}, a1{other.carrier(0) - 1, 0};
    std::vector<Element> pa;
    for (VarId x = 0; x < 2; ++x) {
        std::vector<Element> comp{a0[x], a1[x]};
        pa.push_back(q.encode(0, comp));
    }
    for (const auto& t : enumerate_terms(fx.sig, fx.vars, 0, 5)) {
        Element e = evaluate(q.algebra, pa, t);
        CHECK(q.projections[0][0][e] == evaluate(alg, a0, t));
        CHECK(q.projections[1][0][e] == evaluate(other, a1, t));
    }

    std::vector<FiniteAlgebra> single{alg};
    auto s = product_algebra(single);
    CHECK(s.algebra == alg);
}

TEST_CASE("generated subalgebra")
{
    auto alg = par_algebra();
    SortedSubset seed(alg.carriers());
    seed.insert(0, 0);
    auto gen = generated_subalgebra(alg, seed);
    CHECK(gen.elements(0) == std::vector<Element>{0, 1});

    auto full = SortedSubset::full(alg.carriers());
    CHECK(generated_subalgebra(alg, full) == full);

    auto sig = f2_signature();
    FiniteAlgebra b(sig, {1, 2}, {{0}, {0}, {1}});
    SortedSubset s2(b.carriers());
    s2.insert(0, 0);
    auto g2 = generated_subalgebra(b, s2);
    CHECK(g2.elements(0) == std::vector<Element>{0});
    CHECK(g2.elements(1) == std::vector<Element>{1});
}

TEST_CASE("generated subalgebra is a closure operator")
{
    Rng rng(11);
    for (int round = 0; round < 100; ++round) {
        auto fx = random_fixture(rng);
        auto alg = random_algebra(fx.sig, rng, 4);
        auto a = random_subset(alg.carriers(), rng, 0.3);
        auto b = random_subset(alg.carriers(), rng, 0.3);
        SortedSubset ab(alg.carriers());
        for (SortId s = 0; s < alg.carriers().size(); ++s)
            for (Element e = 0; e < alg.carrier(s); ++e)
                if (a.contains(s, e) || b.contains(s, e))
                    ab.insert(s, e);
        auto ga = generated_subalgebra(alg, a);
        CHECK(a.is_subset_of(ga));
        CHECK(generated_subalgebra(alg, ga) == ga);
        CHECK(ga.is_subset_of(generated_subalgebra(alg, ab)));
    }
}

TEST_CASE("quotient algebra")
{
    auto alg = par_algebra();
    auto id = SortedPartition::identity(alg.carriers());
    CHECK(quotient_algebra(alg, id).algebra == alg);
    auto all = SortedPartition::total(alg.carriers());
    CHECK(quotient_algebra(alg, all).algebra.carrier(0) == 1);

    auto sig = f1_signature();
    FiniteAlgebra bad(sig, {3}, {{0}, {0, 2, 2}, std::vector<Element>(9, 0)});
    SortedPartition phi({{0, 0, 1}});
    CHECK_THROWS_AS(quotient_algebra(bad, phi), Error);
}

TEST_CASE("subset algebra")
{
    auto fx = f1();
    auto alg = par_algebra();
    auto pw = subset_algebra(alg);
    CHECK(pw.carrier(0) == 4);
    OpId sigma = fx.sig.op_id("sigma");
    std::vector<Element> args{0b11, 0b01};
    CHECK(pw.apply(sigma, args) == 0b11);
    std::vector<Element> empty_arg{0b00, 0b11};
    CHECK(pw.apply(sigma, empty_arg) == 0);

    Rng rng(3);
    for (int round = 0; round < 20; ++round) {
        auto r = random_recognizer(fx, rng, 4);
        auto sub = subset_algebra(r.algebra());
        Assignment single;
        for (auto e : r.assignment())
            single.push_back(singleton_mask(e));
        for (const auto& t : enumerate_terms(fx.sig, fx.vars, 0, 5))
            CHECK(evaluate(sub, single, t) == singleton_mask(run(r, t)));
    }

    FiniteAlgebra huge(f1_signature(), {13}, {{0}, std::vector<Element>(13, 0), std::vector<Element>(169, 0)});
    CHECK_THROWS_AS(subset_algebra(huge), Error);
}

TEST_CASE("translation tables")
{
    auto fx = f1();
    auto alg = par_algebra();
    Assignment a{0, 1};
    CHECK(translation_table(alg, a, parse_context("g(#)", fx.sig, fx.vars)) == std::vector<Element>{1, 0});
    CHECK(translation_table(alg, a, Context::identity(0)) == std::vector<Element>{0, 1});
    CHECK(translation_table(alg, a, parse_context("sigma(#, z)", fx.sig, fx.vars)) == std::vector<Element>{1, 0});

    auto outer = parse_context("sigma(x, g(#))", fx.sig, fx.vars);
    auto inner = parse_context("sigma(#, z)", fx.sig, fx.vars);
    auto to = translation_table(alg, a, outer);
    auto ti = translation_table(alg, a, inner);
    auto tc = translation_table(alg, a, compose_contexts(outer, inner));
    for (Element q = 0; q < 2; ++q)
        CHECK(tc[q] == to[ti[q]]);
}

TEST_CASE("homomorphism law on random algebras")
{
    Rng rng(5);
    for (int round = 0; round < 30; ++round) {
        auto fx = random_fixture(rng);
        auto r = random_recognizer(fx, rng);
        TermEnumerator en(fx.sig, fx.vars);
        for (const auto& t : all_terms(en, fx.sig, 5)) {
            if (t.kind() != NodeKind::op)
                continue;
            std::vector<Element> args;
            for (const auto& c : t.children())
                args.push_back(run(r, c));
            CHECK(run(r, t) == r.algebra().apply(t.symbol(), args));
        }
    }
}
