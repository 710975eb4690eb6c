#pragma once

#include <pcspwb/core.hpp>
#include <pcspwb/hom_solver.hpp>

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pcspwb {

struct RelationAtom {
    std::string relation;
    std::vector<std::size_t> vars; ///< indices into PpFormula::variables()

    friend bool operator==(const RelationAtom &, const RelationAtom &) = default;
};

struct EqualityAtom {
    std::size_t left, right;

    friend bool operator==(const EqualityAtom &, const EqualityAtom &) = default;
};

using PpAtom = std::variant<RelationAtom, EqualityAtom>;

/// ∃ exists . conjunction of atoms, with the free variables first in variables().
class PpFormula {
public:
    PpFormula() = default;

    /// Throws range when an atom uses an unknown variable or the free list is empty,
    /// unknown_name on a duplicated variable name.
    PpFormula(std::vector<std::string> free, std::vector<std::string> exists, std::vector<PpAtom> atoms);

    [[nodiscard]] std::size_t free_count() const noexcept { return _free_count; }
    [[nodiscard]] const std::vector<std::string> & variables() const noexcept { return _variables; }
    [[nodiscard]] const std::vector<PpAtom> & atoms() const noexcept { return _atoms; }

    friend bool operator==(const PpFormula &, const PpFormula &) = default;

private:
    std::size_t _free_count = 0;
    std::vector<std::string> _variables;
    std::vector<PpAtom> _atoms;
};

/// The relation defined by phi over a: sorted free-variable tuples that extend to a
/// satisfying assignment. Throws signature_mismatch when an atom names a missing
/// relation or has the wrong arity, resource_limit_exceeded past limits.
[[nodiscard]] std::vector<Tuple> evaluate_pp(const PpFormula & phi, const RelationalStructure & a, const Limits & limits = {});

struct PpOutputRelation {
    std::string name;
    std::size_t arity = 0;
    PpFormula formula; ///< arity * exponent free variables: coordinate j of element i is free variable i*n + j
};

struct PpPowerSpec {
    std::size_t exponent = 1;
    std::vector<PpOutputRelation> relations;

    /// Throws arity_mismatch when a formula's free-variable count is not arity * exponent.
    void validate() const;
    [[nodiscard]] Signature output_signature() const;
};

/// (A', B') with domains A^n, B^n (elements encoded as in encode_tuple) and each
/// output relation defined by the same formula over A and over B, symbols matched by position.
[[nodiscard]] std::pair<RelationalStructure, RelationalStructure> pp_power(
    const PpPowerSpec & spec, const RelationalStructure & a, const RelationalStructure & b, const Limits & limits = {});

struct RelaxationWitness {
    Assignment f; ///< A' -> A
    Assignment g; ///< B -> B'
};

/// Witness that (a_relaxed, b_relaxed) is a homomorphic relaxation of (a, b), or
/// nullopt when no such pair of homomorphisms exists.
[[nodiscard]] std::optional<RelaxationWitness> check_relaxation(const RelationalStructure & a_relaxed,
    const RelationalStructure & b_relaxed, const RelationalStructure & a, const RelationalStructure & b,
    const Limits & limits = {});

struct GadgetReduction {
    Instance instance;
    /// variable_map[v][i] is the reduced-instance variable carrying coordinate i of x's variable v.
    std::vector<std::vector<std::size_t>> variable_map;
};

/// Replaces every variable of x by `exponent` variables and every constraint by its
/// formula's atoms with fresh existential variables; equality atoms identify variables.
/// Throws arity_mismatch when x's signature does not match the spec's output relations.
[[nodiscard]] GadgetReduction gadget_reduce(const Instance & x, const PpPowerSpec & spec, const Signature & base);

/// A chain of pp-powers and homomorphic relaxations starting at a base template.
/// Any such chain is a relaxation of a single pp-power; this class keeps the
/// explicit chain and reduces instances of the last template back to the first.
class PpConstruction {
public:
    PpConstruction(RelationalStructure a, RelationalStructure b);

    void add_power(PpPowerSpec spec, const Limits & limits = {});

    /// Throws not_a_homomorphism when (a, b) is not a relaxation of the current template.
    void add_relaxation(RelationalStructure a, RelationalStructure b, const Limits & limits = {});

    [[nodiscard]] std::size_t length() const noexcept { return _templates.size(); }
    [[nodiscard]] const std::pair<RelationalStructure, RelationalStructure> & current() const { return _templates.back(); }
    [[nodiscard]] const std::vector<std::pair<RelationalStructure, RelationalStructure>> & templates() const noexcept
    {
        return _templates;
    }

    /// An instance over the base signature equivalent (in the promise sense) to x.
    [[nodiscard]] Instance reduce(const Instance & x) const;

private:
    struct RelaxationStep {
        RelaxationWitness witness;
    };
    using Step = std::variant<PpPowerSpec, RelaxationStep>;

    std::vector<std::pair<RelationalStructure, RelationalStructure>> _templates;
    std::vector<Step> _steps;
};

} // namespace pcspwb
