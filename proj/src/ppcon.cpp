#include <pcspwb/ppcon.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace pcspwb {

PpFormula::PpFormula(std::vector<std::string> free, std::vector<std::string> exists, std::vector<PpAtom> atoms) :
    _free_count(free.size()),
    _atoms(std::move(atoms))
{
    if (free.empty())
        throw Error(ErrorCode::range, "a pp-formula needs at least one free variable");
    _variables = std::move(free);
    _variables.insert(_variables.end(), exists.begin(), exists.end());

    std::set<std::string_view> seen;
    for (auto & v : _variables)
        if (! seen.insert(v).second)
            throw Error(ErrorCode::unknown_name, "variable '" + v + "' declared twice");

    auto check = [&](std::size_t v) {
        if (v >= _variables.size())
            throw Error(ErrorCode::range, "atom uses undeclared variable index " + std::to_string(v));
    };
    for (auto & atom : _atoms) {
        if (auto r = std::get_if<RelationAtom>(&atom))
            std::for_each(r->vars.begin(), r->vars.end(), check);
        else {
            auto & e = std::get<EqualityAtom>(atom);
            check(e.left);
            check(e.right);
        }
    }
}

namespace {
    class UnionFind {
    public:
        explicit UnionFind(std::size_t n) : _parent(n) { std::iota(_parent.begin(), _parent.end(), 0); }

        std::size_t add()
        {
            _parent.push_back(_parent.size());
            return _parent.size() - 1;
        }

        std::size_t find(std::size_t x)
        {
            while (_parent[x] != x) {
                _parent[x] = _parent[_parent[x]];
                x = _parent[x];
            }
            return x;
        }

        /// The smaller index becomes the representative.
        void unite(std::size_t a, std::size_t b)
        {
            a = find(a);
            b = find(b);
            if (a == b)
                return;
            if (b < a)
                std::swap(a, b);
            _parent[b] = a;
        }

        std::size_t size() const noexcept { return _parent.size(); }

    private:
        std::vector<std::size_t> _parent;
    };

    std::size_t resolve(const RelationAtom & atom, const Signature & sig)
    {
        auto index = sig.find(atom.relation);
        if (! index)
            throw Error(ErrorCode::signature_mismatch, "pp-formula names relation '" + atom.relation + "' missing from the template");
        if (sig[*index].arity != atom.vars.size())
            throw Error(ErrorCode::signature_mismatch, "atom on '" + atom.relation + "' has " + std::to_string(atom.vars.size())
                    + " variables, relation has arity " + std::to_string(sig[*index].arity));
        return *index;
    }

    /// Same relations as s, renamed to sig (which must be similar).
    RelationalStructure with_signature(const RelationalStructure & s, const Signature & sig)
    {
        std::vector<std::vector<Tuple>> relations;
        for (auto & rel : s.relations())
            relations.push_back(rel.tuples());
        return RelationalStructure(s.name(), s.domain_size(), sig, std::move(relations), s.element_names());
    }
}

std::vector<Tuple> evaluate_pp(const PpFormula & phi, const RelationalStructure & a, const Limits & limits)
{
    const auto count = phi.variables().size();
    UnionFind classes(count);
    for (auto & atom : phi.atoms())
        if (auto e = std::get_if<EqualityAtom>(&atom))
            classes.unite(e->left, e->right);

    std::vector<std::size_t> class_var(count, count);
    std::vector<std::string> names;
    for (std::size_t v = 0; v < count; ++v) {
        auto rep = classes.find(v);
        if (class_var[rep] == count) {
            class_var[rep] = names.size();
            names.push_back(phi.variables()[rep]);
        }
    }
    auto var_of = [&](std::size_t v) { return class_var[classes.find(v)]; };

    std::vector<Constraint> constraints;
    for (auto & atom : phi.atoms())
        if (auto r = std::get_if<RelationAtom>(&atom)) {
            Constraint c{resolve(*r, a.signature()), {}};
            for (auto v : r->vars)
                c.scope.push_back(var_of(v));
            constraints.push_back(std::move(c));
        }
    Instance instance(a.signature(), std::move(names), std::move(constraints));

    auto cfg = SolverConfig::from_limits(limits);
    auto all = enumerate_homomorphisms(instance, a, cfg);
    if (! all.complete())
        throw Error(ErrorCode::resource_limit_exceeded, "pp-evaluation enumerated more witnesses than the cap allows");

    std::set<Tuple> projected;
    for (auto & s : all.solutions) {
        Tuple t(phi.free_count());
        for (std::size_t i = 0; i < phi.free_count(); ++i)
            t[i] = s[var_of(i)];
        projected.insert(std::move(t));
    }
    return {projected.begin(), projected.end()};
}

void PpPowerSpec::validate() const
{
    if (exponent == 0)
        throw Error(ErrorCode::range, "pp-power exponent must be positive");
    for (auto & r : relations)
        if (r.formula.free_count() != r.arity * exponent)
            throw Error(ErrorCode::arity_mismatch, "formula for '" + r.name + "' has " + std::to_string(r.formula.free_count())
                    + " free variables, expected " + std::to_string(r.arity * exponent));
}

Signature PpPowerSpec::output_signature() const
{
    std::vector<RelationSymbol> symbols;
    for (auto & r : relations)
        symbols.push_back({r.name, r.arity});
    return Signature(std::move(symbols));
}

namespace {
    RelationalStructure power_side(const PpPowerSpec & spec, const RelationalStructure & base, const std::string & name,
        const Limits & limits)
    {
        const auto d = base.domain_size();
        const auto n = spec.exponent;
        auto cells = checked_power(d, n, limits.max_cells, "pp-power domain");
        std::vector<std::vector<Tuple>> relations;
        for (auto & out : spec.relations) {
            std::vector<Tuple> regrouped;
            for (auto & t : evaluate_pp(out.formula, base, limits)) {
                Tuple element_tuple(out.arity);
                for (std::size_t i = 0; i < out.arity; ++i)
                    element_tuple[i] = static_cast<Element>(encode_tuple(std::span(t).subspan(i * n, n), d));
                regrouped.push_back(std::move(element_tuple));
            }
            relations.push_back(std::move(regrouped));
        }
        return RelationalStructure(name, static_cast<std::size_t>(cells), spec.output_signature(), std::move(relations));
    }
}

std::pair<RelationalStructure, RelationalStructure> pp_power(
    const PpPowerSpec & spec, const RelationalStructure & a, const RelationalStructure & b, const Limits & limits)
{
    spec.validate();
    if (! a.signature().similar_to(b.signature()))
        throw Error(ErrorCode::signature_mismatch, "templates '" + a.name() + "' and '" + b.name() + "' are not similar");
    auto suffix = "^pp" + std::to_string(spec.exponent);
    return {power_side(spec, a, a.name() + suffix, limits),
        power_side(spec, with_signature(b, a.signature()), b.name() + suffix, limits)};
}

std::optional<RelaxationWitness> check_relaxation(const RelationalStructure & a_relaxed, const RelationalStructure & b_relaxed,
    const RelationalStructure & a, const RelationalStructure & b, const Limits & limits)
{
    if (! a_relaxed.signature().similar_to(b_relaxed.signature()) || ! a.signature().similar_to(b.signature())
        || ! a_relaxed.signature().similar_to(a.signature()))
        throw Error(ErrorCode::signature_mismatch, "relaxation templates are not similar");

    auto cfg = SolverConfig::from_limits(limits);
    auto f = find_structure_homomorphism(a_relaxed, a, cfg);
    if (f.status == SearchStatus::limit_exceeded)
        throw Error(ErrorCode::resource_limit_exceeded, "homomorphism search A' -> A exceeded the node limit");
    if (f.status == SearchStatus::none)
        return std::nullopt;
    auto g = find_structure_homomorphism(b, b_relaxed, cfg);
    if (g.status == SearchStatus::limit_exceeded)
        throw Error(ErrorCode::resource_limit_exceeded, "homomorphism search B -> B' exceeded the node limit");
    if (g.status == SearchStatus::none)
        return std::nullopt;
    return RelaxationWitness{*f.assignment, *g.assignment};
}

GadgetReduction gadget_reduce(const Instance & x, const PpPowerSpec & spec, const Signature & base)
{
    spec.validate();
    const auto & sig = x.signature();
    if (sig.size() != spec.relations.size())
        throw Error(ErrorCode::arity_mismatch, "instance has " + std::to_string(sig.size()) + " relation symbols, spec defines "
                + std::to_string(spec.relations.size()));
    for (std::size_t r = 0; r < sig.size(); ++r)
        if (sig[r].arity != spec.relations[r].arity)
            throw Error(ErrorCode::arity_mismatch, "symbol '" + sig[r].name + "' has arity " + std::to_string(sig[r].arity)
                    + " but its formula defines arity " + std::to_string(spec.relations[r].arity));

    const auto n = spec.exponent;
    std::vector<std::string> names;
    UnionFind classes(0);
    auto fresh = [&](std::string name) {
        names.push_back(std::move(name));
        return classes.add();
    };

    std::vector<std::vector<std::size_t>> coords(x.variable_count());
    for (std::size_t v = 0; v < x.variable_count(); ++v)
        for (std::size_t i = 0; i < n; ++i)
            coords[v].push_back(fresh(n == 1 ? x.variables()[v] : x.variables()[v] + "." + std::to_string(i + 1)));

    std::vector<Constraint> raw;
    for (std::size_t ci = 0; ci < x.constraints().size(); ++ci) {
        const auto & c = x.constraints()[ci];
        const auto & formula = spec.relations[c.relation].formula;
        std::vector<std::size_t> local(formula.variables().size());
        for (std::size_t j = 0; j < c.scope.size(); ++j)
            for (std::size_t i = 0; i < n; ++i)
                local[j * n + i] = coords[c.scope[j]][i];
        for (std::size_t e = formula.free_count(); e < local.size(); ++e)
            local[e] = fresh(formula.variables()[e] + "_" + std::to_string(ci + 1));

        for (auto & atom : formula.atoms()) {
            if (auto r = std::get_if<RelationAtom>(&atom)) {
                Constraint out{resolve(*r, base), {}};
                for (auto v : r->vars)
                    out.scope.push_back(local[v]);
                raw.push_back(std::move(out));
            }
            else {
                auto & e = std::get<EqualityAtom>(atom);
                classes.unite(local[e.left], local[e.right]);
            }
        }
    }

    std::vector<std::size_t> compact(classes.size(), classes.size());
    std::vector<std::string> final_names;
    for (std::size_t v = 0; v < classes.size(); ++v) {
        auto rep = classes.find(v);
        if (compact[rep] == classes.size()) {
            compact[rep] = final_names.size();
            final_names.push_back(names[rep]);
        }
    }
    auto remap = [&](std::size_t v) { return compact[classes.find(v)]; };
    for (auto & c : raw)
        for (auto & v : c.scope)
            v = remap(v);

    GadgetReduction result;
    result.variable_map = coords;
    for (auto & row : result.variable_map)
        for (auto & v : row)
            v = remap(v);
    result.instance = Instance(base, std::move(final_names), std::move(raw));
    return result;
}

PpConstruction::PpConstruction(RelationalStructure a, RelationalStructure b)
{
    if (! a.signature().similar_to(b.signature()))
        throw Error(ErrorCode::signature_mismatch, "base templates are not similar");
    _templates.emplace_back(std::move(a), std::move(b));
}

void PpConstruction::add_power(PpPowerSpec spec, const Limits & limits)
{
    auto next = pp_power(spec, current().first, current().second, limits);
    _steps.emplace_back(std::move(spec));
    _templates.push_back(std::move(next));
}

void PpConstruction::add_relaxation(RelationalStructure a, RelationalStructure b, const Limits & limits)
{
    auto witness = check_relaxation(a, b, current().first, current().second, limits);
    if (! witness)
        throw Error(ErrorCode::not_a_homomorphism, "('" + a.name() + "', '" + b.name() + "') is not a homomorphic relaxation");
    _steps.emplace_back(RelaxationStep{std::move(*witness)});
    _templates.emplace_back(std::move(a), std::move(b));
}

Instance PpConstruction::reduce(const Instance & x) const
{
    Instance current_instance = x;
    for (std::size_t i = _steps.size(); i-- > 0;) {
        if (auto spec = std::get_if<PpPowerSpec>(&_steps[i]))
            current_instance = gadget_reduce(current_instance, *spec, _templates[i].first.signature()).instance;
        else
            // a relaxation reduces by the identity; only the symbol names change
            current_instance = Instance(_templates[i].first.signature(), current_instance.variables(), current_instance.constraints());
    }
    return current_instance;
}

} // namespace pcspwb
