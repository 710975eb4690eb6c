#include <pcspwb/core.hpp>

#include <algorithm>
#include <set>

namespace pcspwb {

namespace {
    constexpr std::uint64_t max_indexed_cells = std::uint64_t{1} << 22;

    std::optional<std::uint64_t> small_power(std::uint64_t base, std::size_t exponent, std::uint64_t cap)
    {
        std::uint64_t result = 1;
        for (std::size_t i = 0; i < exponent; ++i) {
            if (base != 0 && result > cap / base)
                return std::nullopt;
            result *= base;
        }
        return result;
    }
}

Signature::Signature(std::vector<RelationSymbol> symbols) :
    _symbols(std::move(symbols))
{
    std::set<std::string_view> seen;
    for (auto & s : _symbols) {
        if (s.arity == 0)
            throw Error(ErrorCode::invalid_signature, "relation '" + s.name + "' has arity 0");
        if (! seen.insert(s.name).second)
            throw Error(ErrorCode::invalid_signature, "duplicate relation name '" + s.name + "'");
    }
}

std::optional<std::size_t> Signature::find(std::string_view name) const
{
    for (std::size_t i = 0; i < _symbols.size(); ++i)
        if (_symbols[i].name == name)
            return i;
    return std::nullopt;
}

bool Signature::similar_to(const Signature & other) const
{
    if (_symbols.size() != other._symbols.size())
        return false;
    for (std::size_t i = 0; i < _symbols.size(); ++i)
        if (_symbols[i].arity != other._symbols[i].arity)
            return false;
    return true;
}

std::uint64_t encode_tuple(std::span<const Element> tuple, std::size_t domain_size)
{
    std::uint64_t index = 0;
    for (auto e : tuple)
        index = index * domain_size + e;
    return index;
}

Tuple decode_tuple(std::uint64_t index, std::size_t domain_size, std::size_t length)
{
    Tuple t(length);
    for (std::size_t i = length; i-- > 0;) {
        t[i] = static_cast<Element>(index % domain_size);
        index /= domain_size;
    }
    return t;
}

Relation::Relation(std::size_t arity, std::vector<Tuple> tuples, std::size_t domain_size) :
    _arity(arity),
    _domain_size(domain_size),
    _tuples(std::move(tuples))
{
    std::sort(_tuples.begin(), _tuples.end());
    _tuples.erase(std::unique(_tuples.begin(), _tuples.end()), _tuples.end());

    bool well_formed = std::all_of(_tuples.begin(), _tuples.end(), [&](const Tuple & t) {
        return t.size() == _arity && std::all_of(t.begin(), t.end(), [&](Element e) { return e < _domain_size; });
    });
    auto cells = small_power(_domain_size, _arity, max_indexed_cells);
    if (well_formed && cells) {
        _index.assign(*cells, false);
        for (auto & t : _tuples)
            _index[encode_tuple(t, _domain_size)] = true;
    }
}

bool Relation::contains(std::span<const Element> tuple) const
{
    if (tuple.size() != _arity)
        return false;
    if (! _index.empty()) {
        for (auto e : tuple)
            if (e >= _domain_size)
                return false;
        return _index[encode_tuple(tuple, _domain_size)];
    }
    return std::binary_search(_tuples.begin(), _tuples.end(), tuple,
        [](const auto & a, const auto & b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); });
}

RelationalStructure::RelationalStructure(std::string name, std::size_t domain_size, Signature signature,
    std::vector<std::vector<Tuple>> relations, std::vector<std::string> element_names) :
    _name(std::move(name)),
    _domain_size(domain_size),
    _signature(std::move(signature)),
    _element_names(std::move(element_names))
{
    if (relations.size() != _signature.size())
        throw Error(ErrorCode::signature_mismatch, "structure '" + _name + "' has " + std::to_string(relations.size())
                + " relations but its signature declares " + std::to_string(_signature.size()));
    if (! _element_names.empty() && _element_names.size() != _domain_size)
        throw Error(ErrorCode::domain_mismatch, "structure '" + _name + "' names " + std::to_string(_element_names.size())
                + " elements of a domain of size " + std::to_string(_domain_size));
    _relations.reserve(relations.size());
    for (std::size_t i = 0; i < relations.size(); ++i)
        _relations.emplace_back(_signature[i].arity, std::move(relations[i]), _domain_size);
}

std::string RelationalStructure::element_name(Element e) const
{
    if (e < _element_names.size())
        return _element_names[e];
    return std::to_string(e);
}

bool RelationalStructure::same_content(const RelationalStructure & other) const
{
    return _domain_size == other._domain_size && _signature == other._signature && _relations == other._relations;
}

ValidationReport validate_structure(const RelationalStructure & s)
{
    ValidationReport report;
    for (std::size_t r = 0; r < s.relations().size(); ++r) {
        const auto & rel = s.relation(r);
        const auto & name = s.signature()[r].name;
        for (std::size_t t = 0; t < rel.tuples().size(); ++t) {
            const auto & tuple = rel.tuples()[t];
            if (tuple.size() != rel.arity()) {
                report.issues.push_back({ErrorCode::arity_mismatch, r, t,
                    "relation '" + name + "' tuple " + std::to_string(t) + " has length " + std::to_string(tuple.size())
                        + ", expected " + std::to_string(rel.arity())});
                continue;
            }
            for (auto e : tuple)
                if (e >= s.domain_size()) {
                    report.issues.push_back({ErrorCode::element_out_of_domain, r, t,
                        "relation '" + name + "' tuple " + std::to_string(t) + " contains " + std::to_string(e)
                            + " outside domain of size " + std::to_string(s.domain_size())});
                    break;
                }
        }
    }
    return report;
}

void require_valid(const RelationalStructure & s)
{
    auto report = validate_structure(s);
    if (! report.ok())
        throw Error(report.issues.front().kind, report.issues.front().message);
}

Instance::Instance(Signature signature, std::vector<std::string> variables, std::vector<Constraint> constraints) :
    _signature(std::move(signature)),
    _variables(std::move(variables)),
    _constraints(std::move(constraints))
{
    for (auto & c : _constraints) {
        if (c.relation >= _signature.size())
            throw Error(ErrorCode::range, "constraint refers to relation index " + std::to_string(c.relation));
        if (c.scope.size() != _signature[c.relation].arity)
            throw Error(ErrorCode::arity_mismatch, "constraint on '" + _signature[c.relation].name + "' has "
                    + std::to_string(c.scope.size()) + " variables, expected " + std::to_string(_signature[c.relation].arity));
        for (auto v : c.scope)
            if (v >= _variables.size())
                throw Error(ErrorCode::range, "constraint refers to undeclared variable " + std::to_string(v));
    }
}

std::size_t InstanceBuilder::variable(const std::string & name)
{
    auto it = std::find(_variables.begin(), _variables.end(), name);
    if (it != _variables.end())
        return static_cast<std::size_t>(it - _variables.begin());
    return fresh_variable(name);
}

std::size_t InstanceBuilder::fresh_variable(const std::string & name)
{
    _variables.push_back(name);
    return _variables.size() - 1;
}

void InstanceBuilder::constrain(std::size_t relation, std::vector<std::size_t> scope)
{
    _constraints.push_back({relation, std::move(scope)});
}

void InstanceBuilder::constrain(std::string_view relation, std::vector<std::size_t> scope)
{
    auto index = _signature.find(relation);
    if (! index)
        throw Error(ErrorCode::unknown_name, "no relation named '" + std::string(relation) + "'");
    constrain(*index, std::move(scope));
}

Instance InstanceBuilder::build() &&
{
    return Instance(std::move(_signature), std::move(_variables), std::move(_constraints));
}

Instance canonical_instance(const RelationalStructure & a)
{
    std::vector<std::string> names;
    names.reserve(a.domain_size());
    for (Element e = 0; e < a.domain_size(); ++e)
        names.push_back(a.element_name(e));

    std::vector<Constraint> constraints;
    for (std::size_t r = 0; r < a.relations().size(); ++r)
        for (auto & t : a.relation(r).tuples())
            constraints.push_back({r, std::vector<std::size_t>(t.begin(), t.end())});
    return Instance(a.signature(), std::move(names), std::move(constraints));
}

bool satisfies(const Instance & x, const Assignment & assignment, const RelationalStructure & a)
{
    if (assignment.size() != x.variable_count())
        return false;
    Tuple image;
    for (auto & c : x.constraints()) {
        image.clear();
        for (auto v : c.scope)
            image.push_back(assignment[v]);
        if (! a.relation(c.relation).contains(image))
            return false;
    }
    return true;
}

bool is_homomorphism(const Assignment & h, const RelationalStructure & a, const RelationalStructure & b)
{
    if (! a.signature().similar_to(b.signature()))
        throw Error(ErrorCode::signature_mismatch, "structures '" + a.name() + "' and '" + b.name() + "' are not similar");
    if (h.size() != a.domain_size())
        throw Error(ErrorCode::domain_mismatch, "map has " + std::to_string(h.size()) + " entries, source domain has "
                + std::to_string(a.domain_size()));
    for (auto e : h)
        if (e >= b.domain_size())
            throw Error(ErrorCode::domain_mismatch, "map value " + std::to_string(e) + " outside target domain");

    Tuple image;
    for (std::size_t r = 0; r < a.relations().size(); ++r)
        for (auto & t : a.relation(r).tuples()) {
            image.clear();
            for (auto e : t)
                image.push_back(h.at(e));
            if (! b.relation(r).contains(image))
                return false;
        }
    return true;
}

Assignment compose(const Assignment & first, const Assignment & second)
{
    Assignment result;
    result.reserve(first.size());
    for (auto e : first)
        result.push_back(second.at(e));
    return result;
}

RelationalStructure power_structure(const RelationalStructure & a, std::size_t n, const Limits & limits)
{
    if (n == 0)
        throw Error(ErrorCode::range, "power exponent must be positive");
    auto cells = checked_power(a.domain_size(), n, limits.max_cells, "power domain");

    std::vector<std::vector<Tuple>> relations;
    for (auto & rel : a.relations()) {
        checked_power(rel.size(), n, limits.max_relation_size, "power relation");
        std::vector<Tuple> tuples;
        std::vector<std::size_t> pick(n, 0);
        if (rel.size() != 0) {
            while (true) {
                // pick[i] chooses the tuple for coordinate i of every n-tuple element
                Tuple t(rel.arity());
                for (std::size_t j = 0; j < rel.arity(); ++j) {
                    std::uint64_t index = 0;
                    for (std::size_t i = 0; i < n; ++i)
                        index = index * a.domain_size() + rel.tuples()[pick[i]][j];
                    t[j] = static_cast<Element>(index);
                }
                tuples.push_back(std::move(t));

                std::size_t i = n;
                while (i > 0 && ++pick[i - 1] == rel.size())
                    pick[--i] = 0;
                if (i == 0)
                    break;
            }
        }
        relations.push_back(std::move(tuples));
    }

    std::vector<std::string> names;
    if (! a.element_names().empty()) {
        for (std::uint64_t e = 0; e < cells; ++e) {
            auto t = decode_tuple(e, a.domain_size(), n);
            std::string name = "(";
            for (std::size_t i = 0; i < n; ++i)
                name += (i ? "," : "") + a.element_name(t[i]);
            names.push_back(name + ")");
        }
    }
    return RelationalStructure(a.name() + "^" + std::to_string(n), cells, a.signature(), std::move(relations),
        std::move(names));
}

RelationalStructure builtin_template(std::string_view name)
{
    if (name == "one-in-three")
        return RelationalStructure("one-in-three", 2, Signature({{"R", 3}}), {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
    if (name == "nae") {
        std::vector<Tuple> tuples;
        for (Element a = 0; a < 2; ++a)
            for (Element b = 0; b < 2; ++b)
                for (Element c = 0; c < 2; ++c)
                    if (! (a == b && b == c))
                        tuples.push_back({a, b, c});
        return RelationalStructure("nae", 2, Signature({{"R", 3}}), {std::move(tuples)});
    }
    if (name == "c2-plus-c3")
        return RelationalStructure("c2-plus-c3", 5, Signature({{"E", 2}}), {{{0, 1}, {1, 0}, {2, 3}, {3, 4}, {4, 2}}});
    throw Error(ErrorCode::unknown_name, "no built-in template named '" + std::string(name) + "'");
}

std::vector<std::string> builtin_template_names()
{
    return {"one-in-three", "nae", "c2-plus-c3"};
}

} // namespace pcspwb
