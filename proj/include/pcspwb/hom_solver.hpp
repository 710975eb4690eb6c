#pragma once

#include <pcspwb/core.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace pcspwb {

enum class VariableOrder {
    min_remaining, ///< smallest current domain first, ties by variable index
    input          ///< variable index order
};

enum class ValueOrder {
    ascending,
    descending,
    shuffled ///< seeded permutation per decision, reproducible for a fixed seed
};

struct SolverConfig {
    VariableOrder variable_order = VariableOrder::min_remaining;
    ValueOrder value_order = ValueOrder::ascending;
    std::uint64_t node_limit = 50'000'000;
    std::uint64_t solution_limit = 1'000'000;
    std::uint64_t seed = 0;

    /// Throws invalid_config when a limit is zero.
    void validate() const;

    [[nodiscard]] static SolverConfig from_limits(const Limits & limits);
};

enum class SearchStatus { found, none, limit_exceeded };

struct SearchResult {
    SearchStatus status = SearchStatus::none;
    std::optional<Assignment> assignment;
    std::uint64_t nodes = 0;
};

enum class EnumerationStop { exhausted, solution_limit, node_limit };

struct Enumeration {
    std::vector<Assignment> solutions;
    EnumerationStop stop = EnumerationStop::exhausted;
    std::uint64_t nodes = 0;

    /// True when the list is every homomorphism.
    [[nodiscard]] bool complete() const noexcept { return stop == EnumerationStop::exhausted; }
};

/// Backtracking search with generalized arc consistency. A returned
/// assignment satisfies every constraint; `none` means none exists.
/// Throws signature_mismatch when x's signature is not similar to a's.
[[nodiscard]] SearchResult find_homomorphism(const Instance & x, const RelationalStructure & a, const SolverConfig & cfg = {});

/// Duplicate-free, in search order; stops at cfg.solution_limit or cfg.node_limit.
[[nodiscard]] Enumeration enumerate_homomorphisms(const Instance & x, const RelationalStructure & a, const SolverConfig & cfg = {});

/// Structure-to-structure search through canonical_instance(from).
[[nodiscard]] SearchResult find_structure_homomorphism(
    const RelationalStructure & from, const RelationalStructure & to, const SolverConfig & cfg = {});

} // namespace pcspwb
