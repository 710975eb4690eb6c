#pragma once

#include <pcspwb/error.hpp>
#include <pcspwb/limits.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcspwb {

/// Domain elements are canonical integers 0..d-1.
using Element = std::uint32_t;
using Tuple = std::vector<Element>;

/// A total map from variables (or the elements of a source structure) to
/// elements of a target domain, indexed by variable.
using Assignment = std::vector<Element>;

struct RelationSymbol {
    std::string name;
    std::size_t arity = 0;

    friend bool operator==(const RelationSymbol &, const RelationSymbol &) = default;
};

class Signature {
public:
    Signature() = default;

    /// Throws invalid_signature on a zero arity or a duplicate name.
    explicit Signature(std::vector<RelationSymbol> symbols);

    [[nodiscard]] std::size_t size() const noexcept { return _symbols.size(); }
    [[nodiscard]] const RelationSymbol & operator[](std::size_t i) const { return _symbols.at(i); }
    [[nodiscard]] const std::vector<RelationSymbol> & symbols() const noexcept { return _symbols; }
    [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;

    /// Same number of symbols with matching arities; names are not compared.
    [[nodiscard]] bool similar_to(const Signature & other) const;

    friend bool operator==(const Signature &, const Signature &) = default;

private:
    std::vector<RelationSymbol> _symbols;
};

/// Lexicographic index of a tuple over 0..d-1, first entry most significant.
[[nodiscard]] std::uint64_t encode_tuple(std::span<const Element> tuple, std::size_t domain_size);
[[nodiscard]] Tuple decode_tuple(std::uint64_t index, std::size_t domain_size, std::size_t length);

/// A sorted, duplicate-free tuple set. Tuples are not checked here (that is
/// validate_structure's job); a bitset membership index is built when every
/// tuple is well-formed and d^arity is small.
class Relation {
public:
    Relation(std::size_t arity, std::vector<Tuple> tuples, std::size_t domain_size);

    [[nodiscard]] std::size_t arity() const noexcept { return _arity; }
    [[nodiscard]] std::size_t size() const noexcept { return _tuples.size(); }
    [[nodiscard]] const std::vector<Tuple> & tuples() const noexcept { return _tuples; }
    [[nodiscard]] bool contains(std::span<const Element> tuple) const;

    friend bool operator==(const Relation & a, const Relation & b) { return a._arity == b._arity && a._tuples == b._tuples; }

private:
    std::size_t _arity;
    std::size_t _domain_size;
    std::vector<Tuple> _tuples;
    std::vector<bool> _index;
};

class RelationalStructure {
public:
    RelationalStructure(std::string name, std::size_t domain_size, Signature signature,
        std::vector<std::vector<Tuple>> relations, std::vector<std::string> element_names = {});

    [[nodiscard]] const std::string & name() const noexcept { return _name; }
    [[nodiscard]] std::size_t domain_size() const noexcept { return _domain_size; }
    [[nodiscard]] const Signature & signature() const noexcept { return _signature; }
    [[nodiscard]] const Relation & relation(std::size_t i) const { return _relations.at(i); }
    [[nodiscard]] const std::vector<Relation> & relations() const noexcept { return _relations; }

    /// Interned external name, or the decimal index when none was given.
    [[nodiscard]] std::string element_name(Element e) const;
    [[nodiscard]] const std::vector<std::string> & element_names() const noexcept { return _element_names; }

    /// Same domain size, signature and tuple sets; names are ignored.
    [[nodiscard]] bool same_content(const RelationalStructure & other) const;

private:
    std::string _name;
    std::size_t _domain_size;
    Signature _signature;
    std::vector<Relation> _relations;
    std::vector<std::string> _element_names;
};

struct ValidationIssue {
    ErrorCode kind;
    std::size_t relation;
    std::size_t tuple; ///< index into the relation's sorted tuple list
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    [[nodiscard]] bool ok() const noexcept { return issues.empty(); }
};

[[nodiscard]] ValidationReport validate_structure(const RelationalStructure & s);

/// Throws the first issue of validate_structure, if any.
void require_valid(const RelationalStructure & s);

struct Constraint {
    std::size_t relation;           ///< index into the instance signature
    std::vector<std::size_t> scope; ///< variable indices, length = arity

    friend bool operator==(const Constraint &, const Constraint &) = default;
};

class Instance {
public:
    Instance() = default;

    /// Throws arity_mismatch or range when a constraint violates the invariants.
    Instance(Signature signature, std::vector<std::string> variables, std::vector<Constraint> constraints);

    [[nodiscard]] const Signature & signature() const noexcept { return _signature; }
    [[nodiscard]] std::size_t variable_count() const noexcept { return _variables.size(); }
    [[nodiscard]] const std::vector<std::string> & variables() const noexcept { return _variables; }
    [[nodiscard]] const std::vector<Constraint> & constraints() const noexcept { return _constraints; }

    friend bool operator==(const Instance &, const Instance &) = default;

private:
    Signature _signature;
    std::vector<std::string> _variables;
    std::vector<Constraint> _constraints;
};

/// Incremental construction of an Instance with find-or-add variable naming.
class InstanceBuilder {
public:
    explicit InstanceBuilder(Signature signature) : _signature(std::move(signature)) {}

    std::size_t variable(const std::string & name);
    std::size_t fresh_variable(const std::string & name);
    void constrain(std::size_t relation, std::vector<std::size_t> scope);
    void constrain(std::string_view relation, std::vector<std::size_t> scope);

    [[nodiscard]] Instance build() &&;

private:
    Signature _signature;
    std::vector<std::string> _variables;
    std::vector<Constraint> _constraints;
};

/// The instance whose variables are A's elements and whose constraints are A's tuples.
[[nodiscard]] Instance canonical_instance(const RelationalStructure & a);

/// Independent re-check: every constraint of x lands in the corresponding relation of a.
[[nodiscard]] bool satisfies(const Instance & x, const Assignment & assignment, const RelationalStructure & a);

/// True iff h maps every tuple of every relation of a into the matching relation of b.
/// Throws signature_mismatch for dissimilar structures, domain_mismatch when h is not a
/// total map from a's domain into b's domain.
[[nodiscard]] bool is_homomorphism(const Assignment & h, const RelationalStructure & a, const RelationalStructure & b);

/// (second ∘ first)(x) = second[first[x]].
[[nodiscard]] Assignment compose(const Assignment & first, const Assignment & second);

/// n-th categorical power; elements are n-tuples in encode_tuple order.
[[nodiscard]] RelationalStructure power_structure(const RelationalStructure & a, std::size_t n, const Limits & limits = {});

/// one-in-three, nae, c2-plus-c3. Throws unknown_name otherwise.
[[nodiscard]] RelationalStructure builtin_template(std::string_view name);
[[nodiscard]] std::vector<std::string> builtin_template_names();

} // namespace pcspwb
