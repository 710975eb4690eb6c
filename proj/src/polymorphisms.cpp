#include <pcspwb/polymorphisms.hpp>

#include <algorithm>
#include <bit>
#include <map>

namespace pcspwb {

OperationTable::OperationTable(std::size_t arity, std::size_t domain_size, std::vector<Element> values) :
    _arity(arity),
    _domain_size(domain_size),
    _values(std::move(values))
{
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < _arity; ++i) {
        expected *= _domain_size;
        if (expected > _values.size())
            break;
    }
    if (expected != _values.size())
        throw Error(ErrorCode::range, "operation table of arity " + std::to_string(_arity) + " on " + std::to_string(_domain_size)
                + " elements has " + std::to_string(_values.size()) + " entries");
}

OperationTable OperationTable::projection(std::size_t arity, std::size_t domain_size, std::size_t coordinate)
{
    if (coordinate >= arity)
        throw Error(ErrorCode::range, "projection coordinate out of range");
    return tabulate(arity, domain_size, [&](const Tuple & t) { return t[coordinate]; });
}

namespace {
    /// Calls fn(pick) for every n-tuple of indices into a list of `size` items.
    template <typename Fn>
    void for_each_pick(std::size_t size, std::size_t n, Fn && fn)
    {
        if (size == 0 && n > 0)
            return;
        std::vector<std::size_t> pick(n, 0);
        while (true) {
            fn(pick);
            std::size_t i = n;
            while (i > 0 && ++pick[i - 1] == size)
                pick[--i] = 0;
            if (i == 0)
                return;
        }
    }
}

bool is_pcsp_polymorphism(const OperationTable & s, const RelationalStructure & a, const RelationalStructure & b)
{
    if (! a.signature().similar_to(b.signature()))
        throw Error(ErrorCode::signature_mismatch, "templates '" + a.name() + "' and '" + b.name() + "' are not similar");
    if (s.domain_size() != a.domain_size())
        throw Error(ErrorCode::domain_mismatch, "operation on " + std::to_string(s.domain_size()) + " elements, template '"
                + a.name() + "' has " + std::to_string(a.domain_size()));
    for (auto v : s.values())
        if (v >= b.domain_size())
            throw Error(ErrorCode::domain_mismatch, "operation value " + std::to_string(v) + " outside the domain of '" + b.name() + "'");

    const auto n = s.arity();
    Tuple args(n), image;
    for (std::size_t r = 0; r < a.relations().size(); ++r) {
        const auto & rel = a.relation(r);
        bool ok = true;
        for_each_pick(rel.size(), n, [&](const std::vector<std::size_t> & pick) {
            if (! ok)
                return;
            image.assign(rel.arity(), 0);
            for (std::size_t j = 0; j < rel.arity(); ++j) {
                for (std::size_t i = 0; i < n; ++i)
                    args[i] = rel.tuples()[pick[i]][j];
                image[j] = s(args);
            }
            ok = b.relation(r).contains(image);
        });
        if (! ok)
            return false;
    }
    return true;
}

bool is_polymorphism(const OperationTable & s, const RelationalStructure & c)
{
    return is_pcsp_polymorphism(s, c, c);
}

bool is_cyclic(const OperationTable & s)
{
    if (s.arity() < 2)
        throw Error(ErrorCode::arity_too_small, "cyclicity needs arity at least 2");
    const auto n = s.arity();
    const auto d = s.domain_size();
    for (std::uint64_t i = 0; i < s.values().size(); ++i) {
        auto t = decode_tuple(i, d, n);
        std::rotate(t.begin(), t.begin() + 1, t.end());
        if (s(t) != s.at_index(i))
            return false;
    }
    return true;
}

Tuple least_rotation(std::span<const Element> t)
{
    Tuple best(t.begin(), t.end()), candidate(t.begin(), t.end());
    for (std::size_t r = 1; r < t.size(); ++r) {
        std::rotate(candidate.begin(), candidate.begin() + 1, candidate.end());
        if (candidate < best)
            best = candidate;
    }
    return best;
}

namespace {
    std::string tuple_name(const Tuple & t, const RelationalStructure & a)
    {
        std::string name = "(";
        for (std::size_t i = 0; i < t.size(); ++i)
            name += (i ? "," : "") + a.element_name(t[i]);
        return name + ")";
    }
}

IndicatorInstance indicator_instance(const RelationalStructure & a, std::size_t n, SymmetryConstraint sym, const Limits & limits)
{
    if (n == 0)
        throw Error(ErrorCode::range, "indicator arity must be positive");
    const auto d = a.domain_size();
    auto cells = checked_power(d, n, limits.max_cells, "indicator variables");

    std::uint64_t constraint_count = 0;
    for (auto & rel : a.relations())
        constraint_count += checked_power(rel.size(), n, limits.max_relation_size, "indicator constraints");
    if (constraint_count > limits.max_relation_size)
        throw Error(ErrorCode::resource_limit_exceeded, "indicator constraints exceed cap");

    IndicatorInstance result;
    result.variable_of_tuple.resize(cells);
    std::vector<std::string> names;
    std::map<std::uint64_t, std::size_t> orbit_variable;
    for (std::uint64_t i = 0; i < cells; ++i) {
        auto t = decode_tuple(i, d, n);
        if (sym == SymmetryConstraint::cyclic) {
            auto rep = encode_tuple(least_rotation(t), d);
            auto [it, inserted] = orbit_variable.emplace(rep, names.size());
            if (inserted)
                names.push_back(tuple_name(t, a)); // first member met in index order is the least rotation
            result.variable_of_tuple[i] = it->second;
        }
        else {
            result.variable_of_tuple[i] = names.size();
            names.push_back(tuple_name(t, a));
        }
    }

    std::vector<Constraint> constraints;
    constraints.reserve(constraint_count);
    Tuple column(n);
    for (std::size_t r = 0; r < a.relations().size(); ++r) {
        const auto & rel = a.relation(r);
        for_each_pick(rel.size(), n, [&](const std::vector<std::size_t> & pick) {
            Constraint c{r, std::vector<std::size_t>(rel.arity())};
            for (std::size_t j = 0; j < rel.arity(); ++j) {
                for (std::size_t i = 0; i < n; ++i)
                    column[i] = rel.tuples()[pick[i]][j];
                c.scope[j] = result.variable_of_tuple[encode_tuple(column, d)];
            }
            constraints.push_back(std::move(c));
        });
    }
    result.instance = Instance(a.signature(), std::move(names), std::move(constraints));
    return result;
}

namespace {
    OperationTable expand(const IndicatorInstance & ind, const Assignment & solution, std::size_t n, std::size_t d)
    {
        std::vector<Element> values(ind.variable_of_tuple.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            values[i] = solution[ind.variable_of_tuple[i]];
        return OperationTable(n, d, std::move(values));
    }

    void require_similar(const RelationalStructure & a, const RelationalStructure & b)
    {
        if (! a.signature().similar_to(b.signature()))
            throw Error(ErrorCode::signature_mismatch, "templates '" + a.name() + "' and '" + b.name() + "' are not similar");
    }
}

PolymorphismSearch find_polymorphism(
    const RelationalStructure & a, const RelationalStructure & b, std::size_t n, SymmetryConstraint sym, const Limits & limits)
{
    require_similar(a, b);
    auto ind = indicator_instance(a, n, sym, limits);
    auto found = find_homomorphism(ind.instance, b, SolverConfig::from_limits(limits));

    PolymorphismSearch result;
    result.nodes = found.nodes;
    switch (found.status) {
    case SearchStatus::found:
        result.status = PolymorphismStatus::found;
        result.table = expand(ind, *found.assignment, n, a.domain_size());
        break;
    case SearchStatus::none: result.status = PolymorphismStatus::none; break;
    case SearchStatus::limit_exceeded: result.status = PolymorphismStatus::limit_exceeded; break;
    }
    return result;
}

PolymorphismList enumerate_polymorphisms(
    const RelationalStructure & a, const RelationalStructure & b, std::size_t n, SymmetryConstraint sym, const Limits & limits)
{
    require_similar(a, b);
    auto ind = indicator_instance(a, n, sym, limits);
    auto all = enumerate_homomorphisms(ind.instance, b, SolverConfig::from_limits(limits));

    PolymorphismList result;
    result.complete = all.complete();
    result.tables.reserve(all.solutions.size());
    for (auto & s : all.solutions)
        result.tables.push_back(expand(ind, s, n, a.domain_size()));
    return result;
}

OperationTable compose_sandwich(const Assignment & f, const OperationTable & s, const Assignment & g,
    const RelationalStructure & a, const RelationalStructure & c, const RelationalStructure & b)
{
    auto homomorphic = [](const Assignment & h, const RelationalStructure & from, const RelationalStructure & to) {
        try {
            return is_homomorphism(h, from, to);
        }
        catch (const Error &) {
            return false;
        }
    };
    if (! homomorphic(f, a, c))
        throw Error(ErrorCode::not_a_homomorphism, "inner map is not a homomorphism '" + a.name() + "' -> '" + c.name() + "'");
    if (! homomorphic(g, c, b))
        throw Error(ErrorCode::not_a_homomorphism, "outer map is not a homomorphism '" + c.name() + "' -> '" + b.name() + "'");
    if (s.domain_size() != c.domain_size())
        throw Error(ErrorCode::domain_mismatch, "operation does not act on the middle template's domain");

    Tuple inner(s.arity());
    return OperationTable::tabulate(s.arity(), a.domain_size(), [&](const Tuple & args) {
        for (std::size_t i = 0; i < args.size(); ++i)
            inner[i] = f[args[i]];
        return g[s(inner)];
    });
}

bool satisfies_pseudo_siggers(const OperationTable & s, const Assignment & alpha, const Assignment & beta)
{
    if (s.arity() != 6)
        throw Error(ErrorCode::range, "pseudo-Siggers operations are 6-ary");
    const auto d = static_cast<Element>(s.domain_size());
    for (Element x = 0; x < d; ++x)
        for (Element y = 0; y < d; ++y)
            for (Element z = 0; z < d; ++z) {
                Tuple left{x, y, x, z, y, z}, right{y, x, z, x, z, y};
                if (alpha.at(s(left)) != beta.at(s(right)))
                    return false;
            }
    return true;
}

std::optional<PseudoSiggersWitness> pseudo_siggers_search(const RelationalStructure & c, const Limits & limits)
{
    const auto d = c.domain_size();
    auto unary = enumerate_polymorphisms(c, c, 1, SymmetryConstraint::none, limits);
    if (! unary.complete)
        throw Error(ErrorCode::resource_limit_exceeded, "unary polymorphism enumeration hit the cap");

    auto base = indicator_instance(c, 6, SymmetryConstraint::none, limits);

    auto symbols = c.signature().symbols();
    symbols.push_back({"alpha=beta", 2});
    Signature extended_sig(symbols);

    std::vector<Constraint> constraints = base.instance.constraints();
    const auto link = c.signature().size();
    for (Element x = 0; x < d; ++x)
        for (Element y = 0; y < d; ++y)
            for (Element z = 0; z < d; ++z) {
                Tuple left{x, y, x, z, y, z}, right{y, x, z, x, z, y};
                constraints.push_back({link,
                    {base.variable_of_tuple[encode_tuple(left, d)], base.variable_of_tuple[encode_tuple(right, d)]}});
            }
    Instance extended(extended_sig, base.instance.variables(), std::move(constraints));

    std::vector<std::vector<Tuple>> base_relations;
    for (auto & rel : c.relations())
        base_relations.push_back(rel.tuples());

    for (auto & alpha_table : unary.tables)
        for (auto & beta_table : unary.tables) {
            const auto & alpha = alpha_table.values();
            const auto & beta = beta_table.values();
            std::vector<Tuple> linked;
            for (Element u = 0; u < d; ++u)
                for (Element v = 0; v < d; ++v)
                    if (alpha[u] == beta[v])
                        linked.push_back({u, v});
            auto relations = base_relations;
            relations.push_back(std::move(linked));
            RelationalStructure target(c.name() + "+alpha=beta", d, extended_sig, std::move(relations), c.element_names());

            auto found = find_homomorphism(extended, target, SolverConfig::from_limits(limits));
            if (found.status == SearchStatus::limit_exceeded)
                throw Error(ErrorCode::resource_limit_exceeded, "pseudo-Siggers search exceeded the node limit");
            if (found.status == SearchStatus::found)
                return PseudoSiggersWitness{expand(base, *found.assignment, 6, d), alpha, beta};
        }
    return std::nullopt;
}

bool check_block_symmetric_on_pairs(const OperationTable & s)
{
    const auto n = s.arity();
    if (n >= 63)
        throw Error(ErrorCode::range, "arity too large for pair enumeration");
    const auto d = static_cast<Element>(s.domain_size());
    Tuple args(n);
    for (Element a = 0; a < d; ++a)
        for (Element b = a + 1; b < d; ++b) {
            std::vector<std::optional<Element>> by_count(n + 1);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                for (std::size_t i = 0; i < n; ++i)
                    args[i] = (mask >> i) & 1 ? a : b;
                auto count = static_cast<std::size_t>(std::popcount(mask));
                auto value = s(args);
                if (! by_count[count])
                    by_count[count] = value;
                else if (*by_count[count] != value)
                    return false;
            }
        }
    return true;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

std::vector<SurveyEntry> cyclic_survey(
    const RelationalStructure & a, const RelationalStructure & b, std::size_t max_prime, const Limits & limits)
{
    std::vector<SurveyEntry> entries;
    for (std::size_t p = 2; p <= max_prime; ++p)
        if (is_prime(p))
            entries.push_back({p, find_polymorphism(a, b, p, SymmetryConstraint::cyclic, limits).status});
    return entries;
}

} // namespace pcspwb
