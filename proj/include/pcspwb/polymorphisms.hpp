#pragma once

#include <pcspwb/core.hpp>
#include <pcspwb/hom_solver.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pcspwb {

/// An n-ary operation stored as its value table: entry encode_tuple(args, d)
/// holds the value on args (first argument most significant).
class OperationTable {
public:
    /// Throws range when the table length is not domain_size^arity.
    OperationTable(std::size_t arity, std::size_t domain_size, std::vector<Element> values);

    /// Builds a table by evaluating fn on every argument tuple.
    template <typename Fn>
    static OperationTable tabulate(std::size_t arity, std::size_t domain_size, Fn && fn, const Limits & limits = {})
    {
        auto cells = checked_power(domain_size, arity, limits.max_cells, "operation table");
        std::vector<Element> values(cells);
        for (std::uint64_t i = 0; i < cells; ++i)
            values[i] = fn(decode_tuple(i, domain_size, arity));
        return OperationTable(arity, domain_size, std::move(values));
    }

    static OperationTable projection(std::size_t arity, std::size_t domain_size, std::size_t coordinate);

    [[nodiscard]] std::size_t arity() const noexcept { return _arity; }
    [[nodiscard]] std::size_t domain_size() const noexcept { return _domain_size; }
    [[nodiscard]] const std::vector<Element> & values() const noexcept { return _values; }
    [[nodiscard]] Element operator()(std::span<const Element> args) const { return _values[encode_tuple(args, _domain_size)]; }
    [[nodiscard]] Element at_index(std::uint64_t index) const { return _values.at(index); }

    friend bool operator==(const OperationTable &, const OperationTable &) = default;

private:
    std::size_t _arity;
    std::size_t _domain_size;
    std::vector<Element> _values;
};

enum class SymmetryConstraint { none, cyclic };

/// s preserves every relation of c. Throws domain_mismatch unless s is an operation on c's domain.
[[nodiscard]] bool is_polymorphism(const OperationTable & s, const RelationalStructure & c);

/// Coordinatewise application of s to any n-tuple of a-tuples lands in b.
/// Throws signature_mismatch, or domain_mismatch when s's arguments do not range
/// over a's domain or its values leave b's domain.
[[nodiscard]] bool is_pcsp_polymorphism(const OperationTable & s, const RelationalStructure & a, const RelationalStructure & b);

/// Throws arity_too_small for n < 2.
[[nodiscard]] bool is_cyclic(const OperationTable & s);

/// Lexicographically least rotation of t.
[[nodiscard]] Tuple least_rotation(std::span<const Element> t);

/// The indicator instance of arity-n polymorphisms of a (over a's signature):
/// one variable per argument tuple, or per rotation orbit when cyclic (named by the
/// orbit's least rotation), and one constraint R(cols) per n-tuple of R-tuples.
struct IndicatorInstance {
    Instance instance;
    std::vector<std::size_t> variable_of_tuple; ///< argument-tuple index -> instance variable
};

[[nodiscard]] IndicatorInstance indicator_instance(
    const RelationalStructure & a, std::size_t n, SymmetryConstraint sym, const Limits & limits = {});

enum class PolymorphismStatus { found, none, limit_exceeded };

struct PolymorphismSearch {
    PolymorphismStatus status = PolymorphismStatus::none;
    std::optional<OperationTable> table;
    std::uint64_t nodes = 0;
};

/// Searches an arity-n polymorphism of (a, b) through the indicator instance.
/// `none` is exhaustive absence.
[[nodiscard]] PolymorphismSearch find_polymorphism(const RelationalStructure & a, const RelationalStructure & b,
    std::size_t n, SymmetryConstraint sym, const Limits & limits = {});

struct PolymorphismList {
    std::vector<OperationTable> tables;
    bool complete = true;
};

/// Every arity-n polymorphism of (a, b), in solver order, up to limits.max_relation_size.
[[nodiscard]] PolymorphismList enumerate_polymorphisms(const RelationalStructure & a, const RelationalStructure & b,
    std::size_t n, SymmetryConstraint sym, const Limits & limits = {});

/// g ∘ s ∘ (f, ..., f) as an operation from a's domain into b's domain.
/// Throws not_a_homomorphism unless f: a → c and g: c → b.
[[nodiscard]] OperationTable compose_sandwich(const Assignment & f, const OperationTable & s, const Assignment & g,
    const RelationalStructure & a, const RelationalStructure & c, const RelationalStructure & b);

struct PseudoSiggersWitness {
    OperationTable s; ///< 6-ary polymorphism
    Assignment alpha; ///< unary polymorphisms
    Assignment beta;
};

/// Searches s, alpha, beta with alpha(s(x,y,x,z,y,z)) = beta(s(y,x,z,x,z,y)) for all x, y, z.
/// Outer loop over pairs of unary polymorphisms, inner CSP on the 6-ary indicator
/// extended by the binary relation {(u, v) : alpha(u) = beta(v)}. nullopt is exhaustive absence.
/// Throws resource_limit_exceeded when the indicator or the search exceeds limits.
[[nodiscard]] std::optional<PseudoSiggersWitness> pseudo_siggers_search(const RelationalStructure & c, const Limits & limits = {});

/// alpha(s(x,y,x,z,y,z)) = beta(s(y,x,z,x,z,y)) for all x, y, z.
[[nodiscard]] bool satisfies_pseudo_siggers(const OperationTable & s, const Assignment & alpha, const Assignment & beta);

/// For every pair a < b of domain elements, the restriction of s to {a,b}^n depends
/// only on the number of occurrences of a.
[[nodiscard]] bool check_block_symmetric_on_pairs(const OperationTable & s);

struct SurveyEntry {
    std::size_t arity;
    PolymorphismStatus status;
};

/// find_polymorphism with cyclic symmetry at every prime arity up to max_prime.
[[nodiscard]] std::vector<SurveyEntry> cyclic_survey(
    const RelationalStructure & a, const RelationalStructure & b, std::size_t max_prime, const Limits & limits = {});

[[nodiscard]] bool is_prime(std::uint64_t n);

} // namespace pcspwb
