#include "oracles.hpp"

#include <pcspwb/polymorphisms.hpp>

#include <doctest.h>

#include <set>

using namespace pcspwb;

namespace {
const auto one = builtin_template("one-in-three");
const auto nae = builtin_template("nae");

OperationTable binary(std::function<Element(Element, Element)> f)
{
    return OperationTable::tabulate(2, 2, [&](const Tuple & t) { return f(t[0], t[1]); });
}

OperationTable parity(std::size_t n)
{
    return OperationTable::tabulate(n, 2, [](const Tuple & t) {
        Element v = 0;
        for (auto x : t)
            v ^= x;
        return v;
    });
}

OperationTable threshold_third(std::size_t n)
{
    return OperationTable::tabulate(n, 2, [n](const Tuple & t) {
        std::size_t sum = 0;
        for (auto x : t)
            sum += x;
        return Element{3 * sum > n ? 1u : 0u};
    });
}

OperationTable majority()
{
    return OperationTable::tabulate(3, 2, [](const Tuple & t) { return Element{t[0] + t[1] + t[2] >= 2 ? 1u : 0u}; });
}

RelationalStructure full_binary_cube()
{
    std::vector<Tuple> all;
    Tuple t(3, 0);
    do
        all.push_back(t);
    while (oracle::next_vector(t, 2));
    return RelationalStructure("full", 2, Signature({{"R", 3}}), {all});
}
}

TEST_CASE("is_polymorphism")
{
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(is_polymorphism(OperationTable::projection(n, 2, i), one));
            CHECK(is_polymorphism(OperationTable::projection(n, 2, i), nae));
            CHECK(is_polymorphism(OperationTable::projection(n, 5, i), builtin_template("c2-plus-c3")));
        }
    auto min = binary([](Element a, Element b) { return std::min(a, b); });
    CHECK_FALSE(is_polymorphism(min, nae));
    CHECK_FALSE(is_polymorphism(min, one));
    CHECK_THROWS_AS((void) is_polymorphism(OperationTable::projection(2, 3, 0), one), Error);
}

TEST_CASE("is_pcsp_polymorphism")
{
    auto orr = binary([](Element a, Element b) { return a | b; });
    auto andd = binary([](Element a, Element b) { return a & b; });
    CHECK(is_pcsp_polymorphism(orr, one, nae));
    CHECK(is_pcsp_polymorphism(OperationTable::projection(1, 2, 0), one, nae));
    CHECK_FALSE(is_pcsp_polymorphism(andd, one, nae));
    CHECK_THROWS_AS((void) is_pcsp_polymorphism(orr, one, builtin_template("c2-plus-c3")), Error);
}

TEST_CASE("is_cyclic")
{
    for (std::size_t n = 2; n <= 5; ++n)
        CHECK(is_cyclic(parity(n)));
    CHECK_FALSE(is_cyclic(OperationTable::projection(2, 2, 0)));
    CHECK(is_cyclic(majority()));
    try {
        (void) is_cyclic(OperationTable::projection(1, 2, 0));
        FAIL("expected arity-too-small");
    }
    catch (const Error & e) {
        CHECK(e.code() == ErrorCode::arity_too_small);
    }
    CHECK(least_rotation(Tuple{1, 0, 0}) == Tuple{0, 0, 1});
}

TEST_CASE("indicator_instance sizes")
{
    auto a = indicator_instance(one, 2, SymmetryConstraint::none);
    CHECK(a.instance.variable_count() == 4);
    CHECK(a.instance.constraints().size() == 9);

    auto b = indicator_instance(one, 3, SymmetryConstraint::cyclic);
    CHECK(b.instance.variable_count() == 4);
    CHECK(b.instance.variable_count() == oracle::burnside_orbits(2, 3));
    CHECK(b.instance.constraints().size() == 27);

    auto c = indicator_instance(nae, 2, SymmetryConstraint::none);
    CHECK(c.instance.variable_count() == 4);
    CHECK(c.instance.constraints().size() == 36);

    for (std::size_t n = 2; n <= 7; ++n)
        CHECK(indicator_instance(one, n, SymmetryConstraint::cyclic).instance.variable_count() == oracle::burnside_orbits(2, n));

    Limits tight;
    tight.max_cells = 16;
    CHECK_THROWS_AS((void) indicator_instance(one, 5, SymmetryConstraint::none, tight), Error);
}

TEST_CASE("find_polymorphism examples")
{
    auto orr = find_polymorphism(one, nae, 2, SymmetryConstraint::none);
    REQUIRE(orr.status == PolymorphismStatus::found);
    CHECK(is_pcsp_polymorphism(*orr.table, one, nae));
    CHECK(find_polymorphism(nae, nae, 3, SymmetryConstraint::cyclic).status == PolymorphismStatus::none);
    CHECK(find_polymorphism(one, one, 2, SymmetryConstraint::cyclic).status == PolymorphismStatus::none);
}

TEST_CASE("find_polymorphism agrees with exhaustive table enumeration")
{
    const std::vector<RelationalStructure> templates{one, nae, full_binary_cube()};
    for (std::size_t n = 1; n <= 3; ++n) {
        auto tables = oracle::all_tables(n, 2);
        for (const auto & a : templates)
            for (const auto & b : templates) {
                bool any = false, any_cyclic = false;
                for (const auto & t : tables)
                    if (oracle::naive_polymorphism(t, a, b)) {
                        any = true;
                        any_cyclic = any_cyclic || (n >= 2 && oracle::naive_cyclic(t));
                    }
                auto r = find_polymorphism(a, b, n, SymmetryConstraint::none);
                CHECK((r.status == PolymorphismStatus::found) == any);
                if (r.table)
                    CHECK(oracle::naive_polymorphism(*r.table, a, b));
                if (n >= 2) {
                    auto c = find_polymorphism(a, b, n, SymmetryConstraint::cyclic);
                    CHECK((c.status == PolymorphismStatus::found) == any_cyclic);
                    if (c.table) {
                        CHECK(oracle::naive_polymorphism(*c.table, a, b));
                        CHECK(oracle::naive_cyclic(*c.table));
                    }
                }
            }
    }
}

TEST_CASE("cyclic orbit reduction preserves the solution set")
{
    for (std::size_t n = 2; n <= 3; ++n)
        for (const auto & b : {one, nae}) {
            auto all = enumerate_polymorphisms(one, b, n, SymmetryConstraint::none);
            auto cyc = enumerate_polymorphisms(one, b, n, SymmetryConstraint::cyclic);
            REQUIRE(all.complete);
            REQUIRE(cyc.complete);
            std::set<std::vector<Element>> filtered, reduced;
            for (const auto & t : all.tables)
                if (is_cyclic(t))
                    filtered.insert(t.values());
            for (const auto & t : cyc.tables)
                reduced.insert(t.values());
            CHECK(filtered == reduced);
        }
}

TEST_CASE("threshold tables")
{
    for (std::size_t n : {2u, 4u, 5u})
        CHECK(is_pcsp_polymorphism(threshold_third(n), one, nae));
    CHECK_FALSE(is_pcsp_polymorphism(threshold_third(3), one, nae));
}

TEST_CASE("compose_sandwich")
{
    Assignment id{0, 1};
    auto proj = OperationTable::projection(3, 2, 1);
    CHECK(compose_sandwich(id, proj, id, one, one, one) == proj);

    for (const auto & s : enumerate_polymorphisms(one, one, 3, SymmetryConstraint::none).tables)
        CHECK(is_pcsp_polymorphism(compose_sandwich(id, s, id, one, one, one), one, one));

    for (std::size_t n = 2; n <= 3; ++n)
        for (const auto & s : enumerate_polymorphisms(nae, nae, n, SymmetryConstraint::none).tables)
            CHECK(is_pcsp_polymorphism(compose_sandwich(id, s, id, one, nae, nae), one, nae));

    CHECK_THROWS_AS((void) compose_sandwich({0, 0}, proj, id, one, one, one), Error);
}

TEST_CASE("pseudo_siggers_search")
{
    CHECK_FALSE(pseudo_siggers_search(one));

    RelationalStructure point("point", 1, Signature({{"R", 3}}), {{{0, 0, 0}}});
    auto w1 = pseudo_siggers_search(point);
    REQUIRE(w1);
    CHECK(satisfies_pseudo_siggers(w1->s, w1->alpha, w1->beta));

    auto full = full_binary_cube();
    auto w2 = pseudo_siggers_search(full);
    REQUIRE(w2);
    CHECK(satisfies_pseudo_siggers(w2->s, w2->alpha, w2->beta));
    CHECK(is_polymorphism(w2->s, full));
}

TEST_CASE("check_block_symmetric_on_pairs")
{
    for (std::size_t n = 2; n <= 4; ++n)
        CHECK(check_block_symmetric_on_pairs(parity(n)));
    CHECK_FALSE(check_block_symmetric_on_pairs(OperationTable::projection(2, 2, 0)));
    CHECK(check_block_symmetric_on_pairs(majority()));
}

TEST_CASE("cyclic_survey")
{
    auto survey = cyclic_survey(one, nae, 5);
    REQUIRE(survey.size() == 3);
    CHECK(survey[0].arity == 2);
    CHECK(survey[0].status == PolymorphismStatus::found);
    CHECK(survey[1].status == PolymorphismStatus::none);
    CHECK(survey[2].status == PolymorphismStatus::found);
    for (const auto & e : cyclic_survey(one, one, 5))
        CHECK(e.status == PolymorphismStatus::none);
    CHECK(is_prime(127));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
}
