#include "oracles.hpp"

#include <pcspwb/linear.hpp>

#include <doctest.h>

#include <random>

using namespace pcspwb;

namespace {
IntegerMatrix random_matrix(std::mt19937_64 & rng, std::size_t rows, std::size_t cols, long bound)
{
    IntegerMatrix a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            a(r, c) = static_cast<long>(rng() % (2 * bound + 1)) - bound;
    return a;
}

bool hermite_shape(const HermiteForm & f)
{
    const auto & h = f.h;
    if (f.pivot_rows.size() != f.rank)
        return false;
    for (std::size_t j = 0; j < f.rank; ++j) {
        auto pr = f.pivot_rows[j];
        if (j > 0 && pr <= f.pivot_rows[j - 1])
            return false;
        if (sgn(h(pr, j)) <= 0)
            return false;
        for (std::size_t r = 0; r < pr; ++r)
            if (sgn(h(r, j)) != 0)
                return false;
        for (std::size_t c = 0; c < j; ++c)
            if (sgn(h(pr, c)) < 0 || h(pr, c) >= h(pr, j))
                return false;
    }
    for (std::size_t c = f.rank; c < h.cols(); ++c)
        for (std::size_t r = 0; r < h.rows(); ++r)
            if (sgn(h(r, c)) != 0)
                return false;
    return true;
}

IntegerLinearSystem system(IntegerMatrix a, std::initializer_list<long> b)
{
    IntegerVector v;
    for (auto x : b)
        v.emplace_back(x);
    return {std::move(a), std::move(v)};
}

bool box_solvable(const IntegerLinearSystem & sys)
{
    const auto n = sys.a.cols();
    std::vector<Element> digits(n, 0);
    do {
        IntegerVector x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = static_cast<long>(digits[i]) - 5;
        if (sys.a * x == sys.b)
            return true;
    } while (oracle::next_vector(digits, 11));
    return false;
}
}

TEST_CASE("hermite_normal_form examples")
{
    auto f = hermite_normal_form(IntegerMatrix{{4, 6}});
    CHECK(f.h == IntegerMatrix{{2, 0}});
    CHECK(abs(oracle::bareiss_det(f.u)) == 1);
    CHECK(IntegerMatrix{{4, 6}} * f.u == f.h);

    auto id = hermite_normal_form(IntegerMatrix::identity(3));
    CHECK(id.h == IntegerMatrix::identity(3));
    CHECK(id.u == IntegerMatrix::identity(3));
    CHECK(id.rank == 3);
}

TEST_CASE("hermite_normal_form properties on random 5x7 matrices")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_matrix(rng, 5, 7, 9);
        auto f = hermite_normal_form(a);
        CHECK(a * f.u == f.h);
        CHECK(abs(oracle::bareiss_det(f.u)) == 1);
        CHECK(hermite_shape(f));
    }
}

TEST_CASE("hermite_normal_form on assorted shapes")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        auto rows = 1 + rng() % 8, cols = 1 + rng() % 8;
        auto a = random_matrix(rng, rows, cols, trial % 2 ? 3 : 100);
        if (trial % 5 == 0)
            for (std::size_t c = 0; c < cols; ++c)
                a(rows - 1, c) = a(0, c) * 2;
        auto f = hermite_normal_form(a);
        CHECK(a * f.u == f.h);
        CHECK(abs(oracle::bareiss_det(f.u)) == 1);
        CHECK(hermite_shape(f));
    }
}

TEST_CASE("bareiss oracle sanity")
{
    CHECK(oracle::bareiss_det(IntegerMatrix{{2, 1}, {1, 1}}) == 1);
    CHECK(oracle::bareiss_det(IntegerMatrix{{0, 1}, {1, 0}}) == -1);
    CHECK(oracle::bareiss_det(IntegerMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}) == -3);
}

TEST_CASE("solve_integer_system examples")
{
    CHECK_FALSE(solve_integer_system(system(IntegerMatrix{{3}}, {1})));

    auto sol = solve_integer_system(system(IntegerMatrix{{1, 1, 1}}, {1}));
    REQUIRE(sol);
    CHECK(sol->particular == IntegerVector{1, 0, 0});
    CHECK(sol->basis.size() == 2);
    for (const auto & v : sol->basis)
        CHECK(IntegerMatrix{{1, 1, 1}} * v == IntegerVector{0});

    IntegerLinearSystem bad{IntegerMatrix{{1, 2}}, {1, 2}};
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("planted integer systems")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        auto rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        auto a = random_matrix(rng, rows, cols, 9);
        IntegerVector x(cols);
        for (auto & v : x)
            v = static_cast<long>(rng() % 21) - 10;
        IntegerLinearSystem sys{a, a * x};
        auto sol = solve_integer_system(sys);
        REQUIRE(sol);
        CHECK(a * sol->particular == sys.b);
        for (const auto & v : sol->basis)
            CHECK(a * v == IntegerVector(rows));
    }
}

TEST_CASE("integer solvability agrees with a box search")
{
    std::mt19937_64 rng(17);
    int unsolvable = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto rows = 1 + rng() % 3, cols = 1 + rng() % 4;
        IntegerLinearSystem sys{random_matrix(rng, rows, cols, 4), IntegerVector(rows)};
        for (auto & v : sys.b)
            v = static_cast<long>(rng() % 7) - 3;
        auto sol = solve_integer_system(sys);
        bool in_box = box_solvable(sys);
        if (in_box)
            CHECK(sol.has_value());
        if (! sol) {
            ++unsolvable;
            CHECK_FALSE(in_box);
        }
        else
            CHECK(sys.a * sol->particular == sys.b);
    }
    CHECK(unsolvable > 0);
}

TEST_CASE("solve_rational_avoiding examples")
{
    const Rational third(1, 3);
    IntegerLinearSystem pin{IntegerMatrix{{3}}, {1}};
    auto forced = solve_rational_avoiding(pin, third);
    CHECK(forced.status == AvoidStatus::forced_coordinate);
    CHECK(forced.forced_index == 0u);

    IntegerLinearSystem sum{IntegerMatrix{{3, 3}}, {2}};
    auto r = solve_rational_avoiding(sum, third);
    REQUIRE(r.status == AvoidStatus::solved);
    CHECK(3 * (r.solution[0] + r.solution[1]) == 2);
    CHECK(r.solution[0] != third);
    CHECK(r.solution[1] != third);

    auto s = solve_rational_avoiding(system(IntegerMatrix{{1, 1, 1}}, {1}), third);
    REQUIRE(s.status == AvoidStatus::solved);
    CHECK(s.solution[0] + s.solution[1] + s.solution[2] == 1);
    for (const auto & v : s.solution)
        CHECK(v != third);
    CHECK(s.free_parameters == 2);

    auto none = solve_rational_avoiding(system(IntegerMatrix{{1}, {1}}, {0, 1}), third);
    CHECK(none.status == AvoidStatus::inconsistent);
}

TEST_CASE("rational avoidance on random consistent systems")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        auto rows = 1 + rng() % 4, cols = 1 + rng() % 6;
        auto a = random_matrix(rng, rows, cols, 3);
        IntegerVector x(cols);
        for (auto & v : x)
            v = static_cast<long>(rng() % 5) - 2;
        IntegerLinearSystem sys{a, a * x};
        Rational forbidden(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 3));
        auto r = solve_rational_avoiding(sys, forbidden);
        CHECK(r.status != AvoidStatus::inconsistent);
        if (r.status == AvoidStatus::solved) {
            RationalVector q(r.solution.begin(), r.solution.end());
            auto ax = a * q;
            for (std::size_t i = 0; i < rows; ++i)
                CHECK(ax[i] == Rational(sys.b[i]));
            for (const auto & v : r.solution)
                CHECK(v != forbidden);
        }
        else {
            REQUIRE(r.forced_index);
            auto space = solve_rational_system(sys);
            REQUIRE(space);
            CHECK(space->particular[*r.forced_index] == forbidden);
            for (const auto & b : space->basis)
                CHECK(b[*r.forced_index] == 0);
        }
    }
}
