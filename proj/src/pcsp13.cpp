#include <pcspwb/pcsp13.hpp>

#include <algorithm>
#include <random>

namespace pcspwb {

TripleInstance::TripleInstance(std::vector<std::string> variables, std::vector<Triple> triples) :
    _variables(std::move(variables)),
    _triples(std::move(triples))
{
    for (auto & t : _triples)
        for (auto v : t)
            if (v >= _variables.size())
                throw Error(ErrorCode::range, "triple refers to undeclared variable " + std::to_string(v));
}

Instance TripleInstance::as_instance() const
{
    std::vector<Constraint> constraints;
    constraints.reserve(_triples.size());
    for (auto & t : _triples)
        constraints.push_back({0, {t[0], t[1], t[2]}});
    return Instance(Signature({{"R", 3}}), _variables, std::move(constraints));
}

IntegerLinearSystem triples_to_system(const TripleInstance & x)
{
    IntegerLinearSystem sys{IntegerMatrix(x.triples().size(), x.variable_count()), IntegerVector(x.triples().size(), 1)};
    for (std::size_t r = 0; r < x.triples().size(); ++r)
        for (auto v : x.triples()[r])
            sys.a(r, v) += 1;
    return sys;
}

Assignment round_integer(const IntegerVector & phi)
{
    Assignment psi;
    psi.reserve(phi.size());
    for (auto & v : phi)
        psi.push_back(sgn(v) > 0 ? 1 : 0);
    return psi;
}

Assignment round_rational(const RationalVector & phi)
{
    const Rational third(1, 3);
    Assignment psi;
    psi.reserve(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        auto c = cmp(phi[i], third);
        if (c == 0)
            throw Error(ErrorCode::coordinate_equals_one_third, "coordinate " + std::to_string(i) + " equals 1/3");
        psi.push_back(c > 0 ? 1 : 0);
    }
    return psi;
}

namespace {
    template <typename Vec>
    std::size_t max_bits(const Vec & v)
    {
        std::size_t bits = 0;
        for (auto & x : v) {
            if constexpr (std::is_same_v<typename Vec::value_type, Rational>)
                bits = std::max({bits, mpz_sizeinbase(x.get_num_mpz_t(), 2), mpz_sizeinbase(x.get_den_mpz_t(), 2)});
            else
                bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
        }
        return bits;
    }
}

PcspAnswer solve_pcsp(const TripleInstance & x, PcspMethod method)
{
    PcspAnswer answer;
    auto sys = triples_to_system(x);
    answer.trace.method = method;
    answer.trace.rows = sys.a.rows();
    answer.trace.columns = sys.a.cols();

    if (method == PcspMethod::integers) {
        auto space = solve_integer_system(sys);
        if (! space)
            return answer;
        answer.trace.solution_dimension = space->basis.size();
        answer.trace.max_witness_bits = max_bits(space->particular);
        answer.assignment = round_integer(space->particular);
    }
    else {
        auto result = solve_rational_avoiding(sys, Rational(1, 3));
        if (result.status != AvoidStatus::solved)
            return answer;
        answer.trace.solution_dimension = result.free_parameters;
        answer.trace.max_witness_bits = max_bits(result.solution);
        answer.assignment = round_rational(result.solution);
    }
    answer.verdict = Verdict::yes;
    return answer;
}

bool verify_assignment(const TripleInstance & x, const Assignment & a, TripleMode mode)
{
    if (a.size() != x.variable_count())
        throw Error(ErrorCode::partial_assignment, "assignment covers " + std::to_string(a.size()) + " of "
                + std::to_string(x.variable_count()) + " variables");
    for (auto v : a)
        if (v > 1)
            throw Error(ErrorCode::partial_assignment, "assignment value " + std::to_string(v) + " is not Boolean");

    for (auto & t : x.triples()) {
        unsigned ones = a[t[0]] + a[t[1]] + a[t[2]];
        bool ok = mode == TripleMode::one_in_three ? ones == 1 : (ones == 1 || ones == 2);
        if (! ok)
            return false;
    }
    return true;
}

namespace {
    std::size_t draw(std::mt19937_64 & rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

    Assignment make_plant(std::size_t n, std::mt19937_64 & rng)
    {
        Assignment plant(n);
        for (auto & v : plant)
            v = draw(rng, 3) == 0 ? 1 : 0;
        if (std::count(plant.begin(), plant.end(), 1) == 0)
            plant[draw(rng, n)] = 1;
        if (std::count(plant.begin(), plant.end(), 0) == 0)
            plant[draw(rng, n)] = 0;
        return plant;
    }
}

Assignment planted_assignment(std::size_t n, std::uint64_t seed)
{
    if (n < 3)
        throw Error(ErrorCode::infeasible_parameters, "planted instances need at least 3 variables");
    std::mt19937_64 rng(seed);
    return make_plant(n, rng);
}

TripleInstance gen_planted(std::size_t n, std::size_t m, std::uint64_t seed)
{
    if (n < 3)
        throw Error(ErrorCode::infeasible_parameters, "planted instances need at least 3 variables");
    std::mt19937_64 rng(seed);
    auto plant = make_plant(n, rng);

    std::vector<std::size_t> ones, zeros;
    for (std::size_t v = 0; v < n; ++v)
        (plant[v] ? ones : zeros).push_back(v);

    std::vector<TripleInstance::Triple> triples;
    triples.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        TripleInstance::Triple t;
        auto one_position = draw(rng, 3);
        for (std::size_t p = 0; p < 3; ++p)
            t[p] = p == one_position ? ones[draw(rng, ones.size())] : zeros[draw(rng, zeros.size())];
        triples.push_back(t);
    }

    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t v = 0; v < n; ++v)
        names.push_back("x" + std::to_string(v));
    return TripleInstance(std::move(names), std::move(triples));
}

} // namespace pcspwb
