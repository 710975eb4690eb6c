#include "oracles.hpp"

#include <pcspwb/ppcon.hpp>

#include <doctest.h>

#include <random>

using namespace pcspwb;

namespace {
const auto one = builtin_template("one-in-three");
const auto nae = builtin_template("nae");

RelationAtom r(std::vector<std::size_t> vars) { return {"R", std::move(vars)}; }

PpPowerSpec projection_spec()
{
    return {1, {{"S", 2, PpFormula({"x", "y"}, {"z"}, {r({0, 1, 2})})}}};
}

PpPowerSpec paired_spec()
{
    // a = (a1, a2), b = (b1, b2)
    return {2, {{"P", 2, PpFormula({"a1", "a2", "b1", "b2"}, {"z"}, {r({0, 3, 4}), r({1, 2, 4})})}}};
}

PpPowerSpec equality_spec()
{
    return {1, {{"S", 2, PpFormula({"x", "y"}, {"u"}, {r({0, 1, 2}), r({2, 0, 1})})},
                   {"E", 2, PpFormula({"x", "y"}, {}, {EqualityAtom{0, 1}})}}};
}

Instance random_instance(std::mt19937_64 & rng, const Signature & sig, std::size_t vars, std::size_t constraints)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < vars; ++i)
        names.push_back("v" + std::to_string(i));
    std::vector<Constraint> cs;
    for (std::size_t i = 0; i < constraints; ++i) {
        std::size_t rel = rng() % sig.size();
        std::vector<std::size_t> scope(sig[rel].arity);
        for (auto & v : scope)
            v = rng() % vars;
        cs.push_back({rel, scope});
    }
    return Instance(sig, names, cs);
}

PpFormula random_formula(std::mt19937_64 & rng)
{
    std::size_t free = 1 + rng() % 3, exists = rng() % (7 - free);
    std::vector<std::string> f, e;
    for (std::size_t i = 0; i < free; ++i)
        f.push_back("f" + std::to_string(i));
    for (std::size_t i = 0; i < exists; ++i)
        e.push_back("e" + std::to_string(i));
    const auto total = free + exists;
    std::vector<PpAtom> atoms;
    for (std::size_t i = 0, count = rng() % 4; i < count; ++i) {
        if (rng() % 4 == 0)
            atoms.emplace_back(EqualityAtom{rng() % total, rng() % total});
        else
            atoms.emplace_back(r({rng() % total, rng() % total, rng() % total}));
    }
    return PpFormula(f, e, atoms);
}
}

TEST_CASE("formula invariants")
{
    CHECK_THROWS_AS(PpFormula({}, {"z"}, {}), Error);
    CHECK_THROWS_AS(PpFormula({"x"}, {}, {r({0, 0, 1})}), Error);
    CHECK_THROWS_AS(PpFormula({"x"}, {"x"}, {}), Error);
}

TEST_CASE("evaluate_pp examples")
{
    CHECK(evaluate_pp(PpFormula({"x", "y"}, {"z"}, {r({0, 1, 2})}), one) == std::vector<Tuple>{{0, 0}, {0, 1}, {1, 0}});
    auto c = builtin_template("c2-plus-c3");
    CHECK(evaluate_pp(PpFormula({"x"}, {}, {EqualityAtom{0, 0}}), c).size() == 5);
    CHECK(evaluate_pp(PpFormula({"x", "y"}, {}, {r({0, 0, 1})}), one) == std::vector<Tuple>{{0, 1}});
    CHECK_THROWS_AS((void) evaluate_pp(PpFormula({"x", "y"}, {}, {RelationAtom{"Q", {0, 1}}}), one), Error);
    CHECK_THROWS_AS((void) evaluate_pp(PpFormula({"x", "y"}, {}, {RelationAtom{"R", {0, 1}}}), one), Error);
}

TEST_CASE("evaluate_pp agrees with the naive evaluator")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 300; ++trial) {
        auto phi = random_formula(rng);
        for (const auto & a : {one, nae})
            CHECK(evaluate_pp(phi, a) == oracle::naive_pp(phi, a));
    }
}

TEST_CASE("pp_power")
{
    PpPowerSpec identity{1, {{"R", 3, PpFormula({"x", "y", "z"}, {}, {r({0, 1, 2})})}}};
    auto [a1, b1] = pp_power(identity, one, nae);
    CHECK(a1.same_content(one));
    CHECK(b1.same_content(nae));

    auto [a2, b2] = pp_power(projection_spec(), one, one);
    CHECK(a2.relation(0).size() == 3);

    auto spec = paired_spec();
    auto [a3, b3] = pp_power(spec, one, nae);
    CHECK(a3.domain_size() == 4);
    for (const auto & [structure, base] : {std::pair{a3, one}, std::pair{b3, nae}}) {
        std::vector<Tuple> expected;
        for (const auto & t : oracle::naive_pp(spec.relations[0].formula, base))
            expected.push_back({static_cast<Element>(encode_tuple(std::span(t).subspan(0, 2), 2)),
                static_cast<Element>(encode_tuple(std::span(t).subspan(2, 2), 2))});
        std::sort(expected.begin(), expected.end());
        CHECK(structure.relation(0).tuples() == expected);
    }

    PpPowerSpec wrong{2, {{"S", 2, PpFormula({"x", "y"}, {}, {})}}};
    CHECK_THROWS_AS(wrong.validate(), Error);
}

TEST_CASE("check_relaxation")
{
    auto w = check_relaxation(one, nae, nae, nae);
    REQUIRE(w);
    CHECK(is_homomorphism(w->f, one, nae));
    CHECK(is_homomorphism(w->g, nae, nae));

    auto id = check_relaxation(one, one, one, one);
    REQUIRE(id);
    CHECK(id->f == Assignment{0, 1});
    CHECK(id->g == Assignment{0, 1});

    CHECK_FALSE(check_relaxation(nae, nae, one, one));
}

TEST_CASE("gadget_reduce examples")
{
    Signature s({{"S", 2}});
    Instance x(s, {"a", "b"}, {{0, {0, 1}}});
    auto g = gadget_reduce(x, projection_spec(), one.signature());
    CHECK(g.instance.variables() == std::vector<std::string>{"a", "b", "z_1"});
    REQUIRE(g.instance.constraints().size() == 1);
    CHECK(g.instance.constraints()[0] == Constraint{0, {0, 1, 2}});

    Instance empty(Signature({{"P", 2}}), {"a", "b", "c"}, {});
    auto e = gadget_reduce(empty, paired_spec(), one.signature());
    CHECK(e.instance.variable_count() == 6);
    CHECK(e.instance.constraints().empty());

    Instance eq(Signature({{"S", 2}, {"E", 2}}), {"a", "b"}, {{1, {0, 1}}});
    auto q = gadget_reduce(eq, equality_spec(), one.signature());
    CHECK(q.instance.variable_count() == 1);
    CHECK(q.variable_map[0] == q.variable_map[1]);

    Instance mismatch(Signature({{"S", 3}}), {"a"}, {});
    CHECK_THROWS_AS((void) gadget_reduce(mismatch, projection_spec(), one.signature()), Error);
}

TEST_CASE("gadget reduction equivalence on random instances")
{
    std::mt19937_64 rng(77);
    for (const auto & spec : {projection_spec(), paired_spec(), equality_spec()}) {
        auto [ap, bp] = pp_power(spec, one, nae);
        auto sig = spec.output_signature();
        for (int trial = 0; trial < 60; ++trial) {
            auto x = random_instance(rng, sig, 1 + rng() % 6, 1 + rng() % 4);
            auto g = gadget_reduce(x, spec, one.signature()).instance;
            bool x_to_ap = oracle::some_homomorphism(x, ap).has_value();
            bool g_to_a = oracle::some_homomorphism(g, one).has_value();
            CHECK(x_to_ap == g_to_a);
            if (oracle::some_homomorphism(g, nae))
                CHECK(oracle::some_homomorphism(x, bp).has_value());
        }
    }
}

TEST_CASE("pp-construction chains")
{
    PpConstruction chain(one, nae);
    chain.add_power(projection_spec());
    CHECK(chain.length() == 2);
    auto [a, b] = chain.current();
    chain.add_relaxation(RelationalStructure("a", 2, a.signature(), {a.relation(0).tuples()}),
        RelationalStructure("b", 2, b.signature(), {b.relation(0).tuples()}));
    CHECK(chain.length() == 3);

    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_instance(rng, chain.current().first.signature(), 1 + rng() % 5, 1 + rng() % 4);
        auto reduced = chain.reduce(x);
        CHECK(reduced.signature() == one.signature());
        CHECK(oracle::some_homomorphism(x, chain.current().first).has_value() == oracle::some_homomorphism(reduced, one).has_value());
    }

    CHECK_THROWS_AS(chain.add_relaxation(nae, nae), Error);
}
