#include "oracles.hpp"

#include <pcspwb/pcsp13.hpp>

#include <doctest.h>

#include <random>

using namespace pcspwb;

namespace {
TripleInstance triples(std::size_t n, std::vector<TripleInstance::Triple> t)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("x" + std::to_string(i));
    return TripleInstance(names, std::move(t));
}

TripleInstance random_triples(std::mt19937_64 & rng, std::size_t n, std::size_t m)
{
    std::vector<TripleInstance::Triple> t(m);
    for (auto & tr : t)
        for (auto & v : tr)
            v = rng() % n;
    return triples(n, t);
}

IntegerVector ints(std::initializer_list<long> v)
{
    IntegerVector out;
    for (auto x : v)
        out.emplace_back(x);
    return out;
}
}

TEST_CASE("triples_to_system")
{
    auto s = triples_to_system(triples(3, {{0, 1, 2}}));
    CHECK(s.a == IntegerMatrix{{1, 1, 1}});
    CHECK(s.b == ints({1}));
    CHECK(triples_to_system(triples(2, {{0, 0, 1}})).a == IntegerMatrix{{2, 1}});
    CHECK(triples_to_system(triples(1, {{0, 0, 0}})).a == IntegerMatrix{{3}});
}

TEST_CASE("rounding")
{
    CHECK(round_integer(ints({-2, 3, 0})) == Assignment{0, 1, 0});
    CHECK(round_integer(ints({1, 0, 0})) == Assignment{1, 0, 0});
    CHECK(round_integer(ints({-1, -7, -2})) == Assignment{0, 0, 0});

    CHECK(round_rational({Rational(0), Rational(2, 3), Rational(1, 3) - Rational(1, 1000)}) == Assignment{0, 1, 0});
    CHECK(round_rational({Rational(1), Rational(1), Rational(-1)}) == Assignment{1, 1, 0});
    try {
        (void) round_rational({Rational(0), Rational(1, 3)});
        FAIL("expected coordinate-equals-one-third");
    }
    catch (const Error & e) {
        CHECK(e.code() == ErrorCode::coordinate_equals_one_third);
    }
}

TEST_CASE("rounding soundness on random exact solutions")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = random_triples(rng, 3 + rng() % 6, 1 + rng() % 6);
        auto sys = triples_to_system(x);
        if (auto z = solve_integer_system(sys)) {
            auto phi = z->particular;
            for (const auto & b : z->basis) {
                long c = static_cast<long>(rng() % 7) - 3;
                for (std::size_t i = 0; i < phi.size(); ++i)
                    phi[i] += c * b[i];
            }
            CHECK(verify_assignment(x, round_integer(phi), TripleMode::nae));
        }
        auto q = solve_rational_avoiding(sys, Rational(1, 3));
        if (q.status == AvoidStatus::solved)
            CHECK(verify_assignment(x, round_rational(q.solution), TripleMode::nae));
    }
}

TEST_CASE("solve_pcsp examples")
{
    auto yes = solve_pcsp(triples(3, {{0, 1, 2}}));
    REQUIRE(yes.verdict == Verdict::yes);
    CHECK(verify_assignment(triples(3, {{0, 1, 2}}), *yes.assignment, TripleMode::nae));

    for (auto method : {PcspMethod::integers, PcspMethod::rationals}) {
        auto no = solve_pcsp(triples(1, {{0, 0, 0}}), method);
        CHECK(no.verdict == Verdict::no);
        CHECK_FALSE(no.assignment);
    }
}

TEST_CASE("planted instances are answered yes")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto x = gen_planted(20, 30, seed);
        CHECK(verify_assignment(x, planted_assignment(20, seed), TripleMode::one_in_three));
        auto a = solve_pcsp(x);
        REQUIRE(a.verdict == Verdict::yes);
        CHECK(verify_assignment(x, *a.assignment, TripleMode::nae));
    }
}

TEST_CASE("verify_assignment")
{
    auto x = triples(3, {{0, 1, 2}});
    CHECK(verify_assignment(x, {1, 0, 0}, TripleMode::one_in_three));
    CHECK_FALSE(verify_assignment(x, {1, 1, 0}, TripleMode::one_in_three));
    CHECK(verify_assignment(x, {1, 1, 0}, TripleMode::nae));
    CHECK_FALSE(verify_assignment(x, {1, 1, 1}, TripleMode::nae));
    CHECK_THROWS_AS((void) verify_assignment(x, {1, 0}, TripleMode::nae), Error);
}

TEST_CASE("gen_planted")
{
    auto one = gen_planted(3, 1, 0);
    CHECK(one.triples().size() == 1);
    CHECK(verify_assignment(one, planted_assignment(3, 0), TripleMode::one_in_three));

    auto big = gen_planted(50, 100, 7);
    CHECK(big.variable_count() == 50);
    CHECK(big.triples().size() == 100);
    CHECK(verify_assignment(big, planted_assignment(50, 7), TripleMode::one_in_three));

    auto again = gen_planted(50, 100, 7);
    CHECK(again.triples() == big.triples());
    CHECK(again.variables() == big.variables());

    CHECK_THROWS_AS((void) gen_planted(2, 1, 0), Error);
}

TEST_CASE("promise trichotomy against brute force")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        auto x = random_triples(rng, 1 + rng() % 10, 1 + rng() % 12);
        auto one = oracle::brute_triples(x, TripleMode::one_in_three);
        auto nae = oracle::brute_triples(x, TripleMode::nae);
        for (auto method : {PcspMethod::integers, PcspMethod::rationals}) {
            auto a = solve_pcsp(x, method);
            if (one)
                CHECK(a.verdict == Verdict::yes);
            if (a.verdict == Verdict::yes) {
                CHECK(nae.has_value());
                CHECK(verify_assignment(x, *a.assignment, TripleMode::nae));
            }
        }
    }
}
