#include "oracles.hpp"

#include <pcspwb/hom_solver.hpp>

#include <doctest.h>

#include <random>

using namespace pcspwb;

namespace {
Instance single(std::vector<std::size_t> scope, std::vector<std::string> vars)
{
    return Instance(Signature({{"R", 3}}), std::move(vars), {Constraint{0, std::move(scope)}});
}

RelationalStructure neq(std::size_t d)
{
    std::vector<Tuple> t;
    for (Element a = 0; a < d; ++a)
        for (Element b = 0; b < d; ++b)
            if (a != b)
                t.push_back({a, b});
    return RelationalStructure("neq", d, Signature({{"E", 2}}), {t});
}

RelationalStructure random_template(std::mt19937_64 & rng, std::size_t d)
{
    std::vector<Tuple> binary, ternary;
    for (Element a = 0; a < d; ++a)
        for (Element b = 0; b < d; ++b) {
            if (rng() % 2)
                binary.push_back({a, b});
            for (Element c = 0; c < d; ++c)
                if (rng() % 3 == 0)
                    ternary.push_back({a, b, c});
        }
    return RelationalStructure("random", d, Signature({{"E", 2}, {"T", 3}}), {binary, ternary});
}

Instance random_instance(std::mt19937_64 & rng, std::size_t vars, std::size_t constraints)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < vars; ++i)
        names.push_back("v" + std::to_string(i));
    std::vector<Constraint> cs;
    for (std::size_t i = 0; i < constraints; ++i) {
        std::size_t rel = rng() % 2;
        std::vector<std::size_t> scope(rel == 0 ? 2 : 3);
        for (auto & v : scope)
            v = rng() % vars;
        cs.push_back({rel, scope});
    }
    return Instance(Signature({{"E", 2}, {"T", 3}}), names, cs);
}
}

TEST_CASE("find_homomorphism examples")
{
    auto one = builtin_template("one-in-three");
    auto r = find_homomorphism(single({0, 1, 2}, {"x", "y", "z"}), one);
    REQUIRE(r.status == SearchStatus::found);
    const auto & a = *r.assignment;
    CHECK(a[0] + a[1] + a[2] == 1);

    CHECK(find_homomorphism(single({0, 0, 0}, {"x"}), one).status == SearchStatus::none);

    Instance triangle(Signature({{"E", 2}}), {"a", "b", "c"}, {{0, {0, 1}}, {0, {1, 2}}, {0, {2, 0}}});
    auto k3 = find_homomorphism(triangle, neq(3));
    REQUIRE(k3.status == SearchStatus::found);
    CHECK(oracle::check(triangle, *k3.assignment, neq(3)));
    CHECK(find_homomorphism(triangle, neq(2)).status == SearchStatus::none);
}

TEST_CASE("enumerate_homomorphisms examples")
{
    auto one = builtin_template("one-in-three");
    auto nae = builtin_template("nae");
    CHECK(enumerate_homomorphisms(single({0, 1, 2}, {"x", "y", "z"}), one).solutions.size() == 3);
    CHECK(enumerate_homomorphisms(single({0, 1, 2}, {"x", "y", "z"}), nae).solutions.size() == 6);
    Instance empty(Signature({{"R", 3}}), {"x", "y"}, {});
    auto e = enumerate_homomorphisms(empty, one);
    CHECK(e.complete());
    CHECK(e.solutions.size() == 4);
}

TEST_CASE("signature mismatch")
{
    Instance x(Signature({{"E", 2}}), {"a"}, {});
    CHECK_THROWS_AS((void) find_homomorphism(x, builtin_template("one-in-three")), Error);
}

TEST_CASE("config validation and limits")
{
    SolverConfig cfg;
    cfg.node_limit = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);

    SolverConfig tiny;
    tiny.solution_limit = 2;
    auto e = enumerate_homomorphisms(single({0, 1, 2}, {"x", "y", "z"}), builtin_template("nae"), tiny);
    CHECK(e.solutions.size() == 2);
    CHECK(e.stop == EnumerationStop::solution_limit);
    CHECK_FALSE(e.complete());

    SolverConfig starved;
    starved.node_limit = 1;
    Instance chain(Signature({{"E", 2}}), {"a", "b", "c", "d"}, {{0, {0, 1}}, {0, {1, 2}}, {0, {2, 3}}, {0, {3, 0}}});
    CHECK(find_homomorphism(chain, neq(3), starved).status == SearchStatus::limit_exceeded);
}

TEST_CASE("completeness against exhaustive enumeration")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 400; ++trial) {
        std::size_t d = 2 + rng() % 2;
        std::size_t vars = 1 + rng() % 8;
        auto a = random_template(rng, d);
        auto x = random_instance(rng, vars, 1 + rng() % 8);
        auto expected = oracle::all_homomorphisms(x, a);
        auto found = find_homomorphism(x, a);
        CHECK((found.status == SearchStatus::found) == ! expected.empty());
        if (found.assignment)
            CHECK(oracle::check(x, *found.assignment, a));
        if (vars <= 6) {
            auto all = enumerate_homomorphisms(x, a).solutions;
            std::sort(all.begin(), all.end());
            CHECK(all == expected);
        }
    }
}

TEST_CASE("value orders are deterministic and sound")
{
    auto nae = builtin_template("nae");
    auto x = single({0, 1, 2}, {"x", "y", "z"});
    for (auto order : {ValueOrder::ascending, ValueOrder::descending, ValueOrder::shuffled}) {
        SolverConfig cfg;
        cfg.value_order = order;
        cfg.seed = 5;
        auto r1 = find_homomorphism(x, nae, cfg), r2 = find_homomorphism(x, nae, cfg);
        REQUIRE(r1.assignment);
        CHECK(*r1.assignment == *r2.assignment);
        CHECK(oracle::check(x, *r1.assignment, nae));
    }
    SolverConfig desc;
    desc.value_order = ValueOrder::descending;
    CHECK(*find_homomorphism(x, nae, desc).assignment == Assignment{1, 1, 0});
}

TEST_CASE("structure homomorphisms")
{
    auto one = builtin_template("one-in-three");
    auto nae = builtin_template("nae");
    CHECK(find_structure_homomorphism(one, nae).status == SearchStatus::found);
    CHECK(find_structure_homomorphism(nae, one).status == SearchStatus::none);
}
