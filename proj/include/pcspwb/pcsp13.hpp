#pragma once

#include <pcspwb/core.hpp>
#include <pcspwb/linear.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pcspwb {

/// A 1-in-3 / NAE instance: ordered triples of variables, repetitions allowed.
class TripleInstance {
public:
    using Triple = std::array<std::size_t, 3>;

    TripleInstance() = default;
    /// Throws range when a triple names an undeclared variable.
    TripleInstance(std::vector<std::string> variables, std::vector<Triple> triples);

    [[nodiscard]] std::size_t variable_count() const noexcept { return _variables.size(); }
    [[nodiscard]] const std::vector<std::string> & variables() const noexcept { return _variables; }
    [[nodiscard]] const std::vector<Triple> & triples() const noexcept { return _triples; }

    /// The same instance as a structure over the single ternary symbol R.
    [[nodiscard]] Instance as_instance() const;

    friend bool operator==(const TripleInstance &, const TripleInstance &) = default;

private:
    std::vector<std::string> _variables;
    std::vector<Triple> _triples;
};

enum class PcspMethod { integers, rationals };
enum class Verdict { yes, no };
enum class TripleMode { one_in_three, nae };

struct PcspTrace {
    PcspMethod method = PcspMethod::integers;
    std::size_t rows = 0;
    std::size_t columns = 0;
    std::size_t solution_dimension = 0; ///< homogeneous rank of the solution space, when solvable
    std::size_t max_witness_bits = 0;   ///< largest numerator bit length in the exact solution
};

struct PcspAnswer {
    Verdict verdict = Verdict::no;
    std::optional<Assignment> assignment; ///< present iff yes; always a valid NAE assignment
    PcspTrace trace;
};

/// One row per triple with coefficient = multiplicity of each variable, rhs 1.
[[nodiscard]] IntegerLinearSystem triples_to_system(const TripleInstance & x);

/// 0 for non-positive values, 1 for positive.
[[nodiscard]] Assignment round_integer(const IntegerVector & phi);

/// 0 below 1/3, 1 above. Throws coordinate_equals_one_third on 1/3.
[[nodiscard]] Assignment round_rational(const RationalVector & phi);

/// The polynomial algorithm for PCSP(1-in-3, NAE). `yes` is a promise answer:
/// it certifies an NAE assignment (attached), never 1-in-3 satisfiability; `no`
/// certifies that no 1-in-3 assignment exists.
[[nodiscard]] PcspAnswer solve_pcsp(const TripleInstance & x, PcspMethod method = PcspMethod::integers);

/// Positions sharing a variable share its value. Throws partial_assignment when
/// `a` does not cover every variable or holds a value outside {0,1}.
[[nodiscard]] bool verify_assignment(const TripleInstance & x, const Assignment & a, TripleMode mode);

/// Instance with n variables and m triples admitting a planted 1-in-3 assignment;
/// deterministic in seed. Throws infeasible_parameters for n < 3.
[[nodiscard]] TripleInstance gen_planted(std::size_t n, std::size_t m, std::uint64_t seed);

/// The plant used by gen_planted for the same (n, seed).
[[nodiscard]] Assignment planted_assignment(std::size_t n, std::uint64_t seed);

} // namespace pcspwb
