#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace pcspwb {

using Integer = mpz_class;
using Rational = mpq_class;
using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : _rows(rows), _cols(cols), _data(rows * cols) {}
    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntegerMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const noexcept { return _rows; }
    [[nodiscard]] std::size_t cols() const noexcept { return _cols; }

    Integer & operator()(std::size_t r, std::size_t c) { return _data[r * _cols + c]; }
    const Integer & operator()(std::size_t r, std::size_t c) const { return _data[r * _cols + c]; }

    [[nodiscard]] IntegerVector column(std::size_t c) const;

    friend bool operator==(const IntegerMatrix &, const IntegerMatrix &) = default;

private:
    std::size_t _rows = 0, _cols = 0;
    std::vector<Integer> _data;
};

[[nodiscard]] IntegerMatrix operator*(const IntegerMatrix & a, const IntegerMatrix & b);
[[nodiscard]] IntegerVector operator*(const IntegerMatrix & a, const IntegerVector & x);
[[nodiscard]] RationalVector operator*(const IntegerMatrix & a, const RationalVector & x);

/// A·U = H with U unimodular and H in column Hermite normal form: the first
/// `rank` columns carry pivots at strictly increasing rows `pivot_rows`, every
/// entry above a pivot is zero, pivots are positive, entries left of a pivot in
/// its row lie in [0, pivot), and the remaining columns are zero.
struct HermiteForm {
    IntegerMatrix h;
    IntegerMatrix u;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_rows;
};

/// Integer column operations with Euclidean pivot reduction, tracking U.
[[nodiscard]] HermiteForm hermite_normal_form(const IntegerMatrix & a);

struct IntegerLinearSystem {
    IntegerMatrix a;
    IntegerVector b;

    /// Throws dimension_mismatch when b's length differs from a's row count.
    void validate() const;
};

/// particular + lattice span of basis; every element is an integer solution.
struct IntegerAffineSpace {
    IntegerVector particular;
    std::vector<IntegerVector> basis;
};

/// nullopt certifies that the system has no integer solution.
[[nodiscard]] std::optional<IntegerAffineSpace> solve_integer_system(const IntegerLinearSystem & sys);

struct RationalAffineSpace {
    RationalVector particular;
    std::vector<RationalVector> basis;
};

/// Gauss-Jordan over Q; nullopt when inconsistent. The particular solution
/// has every free variable at zero; basis[f] sets free variable f to one.
[[nodiscard]] std::optional<RationalAffineSpace> solve_rational_system(const IntegerLinearSystem & sys);

enum class AvoidStatus {
    solved,
    inconsistent,      ///< no rational solution at all
    forced_coordinate  ///< some coordinate equals the forbidden value on every solution
};

struct AvoidingResult {
    AvoidStatus status = AvoidStatus::inconsistent;
    RationalVector solution;
    std::optional<std::size_t> forced_index;
    std::size_t free_parameters = 0; ///< dimension of the rational solution space, when consistent
};

/// A rational solution with no coordinate equal to `forbidden`. Parameters are
/// fixed in order, each to the least non-negative integer that keeps every
/// coordinate determined so far away from `forbidden`; this yields the
/// lexicographically least admissible non-negative parameter vector.
[[nodiscard]] AvoidingResult solve_rational_avoiding(const IntegerLinearSystem & sys, const Rational & forbidden);

} // namespace pcspwb
