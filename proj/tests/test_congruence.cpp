#include "doctest.h"
#include "brute.hpp"
#include "support.hpp"

using namespace msrec;
using namespace msrec::testing;

namespace {

FiniteAlgebra three_chain()
{
    // One sort, c ↦ 0, g(0)=0, g(1)=2, g(2)=2, sigma constant 0.
    return FiniteAlgebra(f1_signature(), {3}, {{0}, {0, 2, 2}, std::vector<Element>(9, 0)});
}

} // namespace

TEST_CASE("is_congruence")
{
    auto alg = r_par().algebra();
    CHECK(is_congruence(alg, SortedPartition({{0, 1}})));
    CHECK(is_congruence(alg, SortedPartition::total(alg.carriers())));

    auto chain = three_chain();
    auto res = is_congruence(chain, SortedPartition({{0, 0, 1}}));
    CHECK_FALSE(res);
    REQUIRE(res.witness);
    CHECK(res.witness->op == f1_signature().op_id("g"));
    CHECK(res.witness->lhs == std::vector<Element>{0});
    CHECK(res.witness->rhs == std::vector<Element>{1});
}

TEST_CASE("cogenerated congruence")
{
    auto alg = r_par().algebra();
    auto cong = SortedPartition({{0, 1}});
    CHECK(cogenerated_congruence(alg, cong) == cong);
    auto id = SortedPartition::identity(alg.carriers());
    auto all = SortedPartition::total(alg.carriers());
    CHECK(cogenerated_congruence(alg, id) == id);
    CHECK(cogenerated_congruence(alg, all) == all);

    auto chain = three_chain();
    CHECK(cogenerated_congruence(chain, SortedPartition({{0, 0, 1}})) == SortedPartition({{0, 1, 2}}));
}

TEST_CASE("syntactic congruence")
{
    auto alg = r_par().algebra();
    SortedSubset l(alg.carriers());
    l.insert(0, 0);
    CHECK(syntactic_congruence(alg, l) == SortedPartition({{0, 1}}));
    CHECK(syntactic_congruence(alg, SortedSubset::full(alg.carriers())) ==
          SortedPartition::total(alg.carriers()));

    Rng rng(21);
    for (int round = 0; round < 100; ++round) {
        auto fx = random_fixture(rng);
        auto b = random_algebra(fx.sig, rng, 4);
        auto m = random_subset(b.carriers(), rng);
        CHECK(syntactic_congruence(b, m) == syntactic_congruence(b, m.complement()));
    }
}

TEST_CASE("saturation and meets")
{
    std::vector<std::size_t> carriers{3};
    SortedSubset x(carriers);
    x.insert(0, 0);
    auto id = SortedPartition::identity(carriers);
    auto all = SortedPartition::total(carriers);
    CHECK(saturate(id, x) == x);
    CHECK(saturate(all, x) == SortedSubset::full(carriers));
    auto p = SortedPartition({{0, 0, 1}});
    CHECK(saturate(p, x).elements(0) == std::vector<Element>{0, 1});

    CHECK(meet_partitions(p, all) == p);
    CHECK(meet_partitions(p, p) == p);
    CHECK(meet_partitions(p, SortedPartition({{0, 1, 1}})) == id);
}

TEST_CASE("cogenerated congruence against brute force")
{
    Rng rng(31);
    for (int round = 0; round < 60; ++round) {
        auto fx = random_fixture(rng);
        auto alg = random_algebra(fx.sig, rng, 4);
        auto congs = all_congruences(alg);
        auto phi = random_partition(alg.carriers(), rng);
        auto got = cogenerated_congruence(alg, phi);
        CHECK(is_congruence(alg, got));
        CHECK(got.refines(phi));
        for (const auto& c : congs)
            if (c.refines(phi))
                CHECK(c.refines(got));
    }
}

TEST_CASE("saturation by a congruence characterizes refinement of the syntactic congruence")
{
    Rng rng(41);
    for (int round = 0; round < 40; ++round) {
        auto fx = random_fixture(rng);
        auto alg = random_algebra(fx.sig, rng, 4);
        auto l = random_subset(alg.carriers(), rng);
        auto omega = syntactic_congruence(alg, l);
        for (const auto& c : all_congruences(alg))
            CHECK((saturate(c, l) == l) == c.refines(omega));
    }
}

TEST_CASE("saturation of a meet")
{
    Rng rng(43);
    for (int round = 0; round < 100; ++round) {
        std::vector<std::size_t> carriers{uniform(rng, 1, 4), uniform(rng, 1, 4)};
        auto a = random_partition(carriers, rng);
        auto b = random_partition(carriers, rng);
        auto x = random_subset(carriers, rng, 0.3);
        auto lhs = saturate(meet_partitions(a, b), x);
        auto sa = saturate(a, x), sb = saturate(b, x);
        for (SortId s = 0; s < 2; ++s)
            for (Element e = 0; e < carriers[s]; ++e)
                if (lhs.contains(s, e))
                    CHECK((sa.contains(s, e) && sb.contains(s, e)));
    }
}

TEST_CASE("refinement is detected by saturation on every subset")
{
    Rng rng(47);
    for (int round = 0; round < 60; ++round) {
        std::vector<std::size_t> carriers{uniform(rng, 1, 4)};
        auto a = random_partition(carriers, rng);
        auto b = random_partition(carriers, rng);
        bool all_fixed = true;
        for (std::uint32_t mask = 0; mask < (1u << carriers[0]); ++mask) {
            SortedSubset x(carriers);
            for (Element e = 0; e < carriers[0]; ++e)
                if (mask >> e & 1)
                    x.insert(0, e);
            auto sb = saturate(b, x);
            all_fixed = all_fixed && saturate(a, sb) == sb;
        }
        CHECK(a.refines(b) == all_fixed);
    }
}
