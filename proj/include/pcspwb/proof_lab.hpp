#pragma once

#include <pcspwb/core.hpp>
#include <pcspwb/linear.hpp>
#include <pcspwb/polymorphisms.hpp>

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pcspwb {

/// A p×p argument matrix for the star-composed operation t, stored row-major.
/// The row-major flattening is the argument order of t as a p²-ary operation.
class Matrix {
public:
    /// Throws range for p < 2, dimension_mismatch when entries.size() != p*p.
    Matrix(std::size_t p, std::vector<Element> entries);

    static Matrix zeros(std::size_t p);
    static Matrix ones(std::size_t p);

    [[nodiscard]] std::size_t side() const noexcept { return _p; }
    [[nodiscard]] Element at(std::size_t row, std::size_t col) const { return _entries[row * _p + col]; }
    [[nodiscard]] const std::vector<Element> & flat() const noexcept { return _entries; }
    [[nodiscard]] std::vector<Element> column(std::size_t col) const;
    [[nodiscard]] bool is_binary() const;

    friend bool operator==(const Matrix &, const Matrix &) = default;

private:
    std::size_t _p;
    std::vector<Element> _entries;
};

/// An operation given by an evaluation procedure rather than a table, so that
/// arities like 127 are usable. The procedure must be re-entrant.
class BlackBoxOperation {
public:
    using Procedure = std::function<Element(std::span<const Element>)>;

    BlackBoxOperation(std::string name, std::size_t arity, std::size_t domain_size, Procedure procedure, bool declared_cyclic);

    static BlackBoxOperation parity(std::size_t arity);
    /// 1 iff the number of ones exceeds arity/2.
    static BlackBoxOperation threshold_at_half(std::size_t arity);
    static BlackBoxOperation projection(std::size_t arity, std::size_t domain_size, std::size_t coordinate);
    static BlackBoxOperation from_table(const OperationTable & table, std::string name = "table");

    [[nodiscard]] const std::string & name() const noexcept { return _name; }
    [[nodiscard]] std::size_t arity() const noexcept { return _arity; }
    [[nodiscard]] std::size_t domain_size() const noexcept { return _domain_size; }
    [[nodiscard]] bool declared_cyclic() const noexcept { return _declared_cyclic; }

    /// Throws dimension_mismatch on a wrong argument count.
    Element operator()(std::span<const Element> args) const;

    /// Compares s on random tuples against their one-step rotation; true when no sample differs.
    [[nodiscard]] bool spot_check_cyclic(std::size_t samples, std::uint64_t seed) const;

private:
    std::string _name;
    std::size_t _arity;
    std::size_t _domain_size;
    Procedure _procedure;
    bool _declared_cyclic;
};

/// s applied to each column, then s applied to the p column values (p+1 calls).
[[nodiscard]] Element eval_t(const BlackBoxOperation & s, const Matrix & x);

/// Fraction of ones. Throws non_binary_entry.
[[nodiscard]] Rational area(const Matrix & x);

/// Throws dimension_mismatch when the sides differ.
[[nodiscard]] bool is_cover(const Matrix & x, const Matrix & y, const Matrix & z);

/// g(t(x)) == g(t(y)).
[[nodiscard]] bool g_equivalent(const Matrix & x, const Matrix & y, const BlackBoxOperation & s, const Assignment & g);

/// Row-major matrix whose first i entries are one. Throws range unless 0 <= i <= p².
[[nodiscard]] Matrix tau(std::size_t i, std::size_t p);

/// Column c begins with heights[c] ones; p = heights.size(). Throws range unless 0 <= k <= p.
[[nodiscard]] Matrix rho(const std::vector<std::size_t> & heights);

/// Column heights when every column is a prefix of ones, else nullopt.
[[nodiscard]] std::optional<std::vector<std::size_t>> column_heights(const Matrix & x);

/// rho(k, ..., k, l, ..., l) with m leading k-columns and k >= l.
struct AlmostRectangleShape {
    std::size_t k, l, m;
    [[nodiscard]] std::size_t step() const noexcept { return k - l; }
};

/// The decomposition of x as rho(k^m, l^(p-m)) with k >= l, if it has that form.
/// A constant-height matrix reports m = p, k = l.
[[nodiscard]] std::optional<AlmostRectangleShape> almost_rectangle_shape(const Matrix & x);

/// Shape exists and its step is at most step_factor * c_size.
[[nodiscard]] bool is_almost_rectangle(const Matrix & x, std::size_t c_size, std::size_t step_factor = 5);

enum class ShiftMode {
    columns_down, ///< amounts: one per column, or one for all; values 0..p-1
    rows_left,    ///< amounts: one value 0..p-1 applied to every row
    flat_cyclic   ///< amounts: one value 0..p², right shift of the row-major flattening
};

/// Throws range for amounts outside the mode's bounds or of the wrong count.
[[nodiscard]] Matrix shift(const Matrix & x, ShiftMode mode, const std::vector<std::size_t> & amounts);

/// τ_i, τ_j shifted right by i, τ_(p²-i-j) shifted right by i+j: a cover.
struct MatrixTriple {
    Matrix x, y, z;
};
[[nodiscard]] MatrixTriple line_segment_cover(std::size_t i, std::size_t j, std::size_t p);

/// Given prefix matrices whose column heights sum to p, shifts y's columns down by x's
/// heights and z's by x's plus y's, producing a cover with unchanged t-values.
[[nodiscard]] MatrixTriple column_stack_cover(const Matrix & x, const Matrix & y, const Matrix & z);

/// For X = rho(k^m, l^(p-m)) with area at least 5/12: X, Y1, Y2 with
/// l1 + l2 + k = p = k1 + k2 + l, Yi = rho(li^m, ki^(p-m)).
[[nodiscard]] MatrixTriple heavy_rectangle_triple(std::size_t k, std::size_t l, std::size_t m, std::size_t p);

/// For X = rho(k^m, l^(p-m)) with 2k <= p: X, Y, Z where rotating Y's rows gives X
/// and rotating Z's rows gives an almost rectangle with the same step.
/// m < p/2: Y = rho(l^m, k^m, l^(p-2m)), Z = rho((p-k-l)^(2m), (p-2l)^(p-2m)).
/// m > p/2: Y = rho(l^(p-m), k^m), Z = rho((p-k-l)^(p-m), (p-2k)^(2m-p), (p-k-l)^(p-m)).
[[nodiscard]] MatrixTriple light_rectangle_triple(std::size_t k, std::size_t l, std::size_t m, std::size_t p);

enum class CoverDiagnostic {
    none,
    template_lacks_one_in_three, ///< some of (1,0,0), (0,1,0), (0,0,1) is missing from R
    s_breaks_relation,           ///< an application of s leaves R: s is not a polymorphism
    g_not_homomorphism           ///< t-values lie in R but g maps them to equal values
};

struct CoverLemmaVerdict {
    bool pass = false;
    CoverDiagnostic diagnostic = CoverDiagnostic::none;
    std::array<Element, 3> t_values{};
    std::array<Element, 3> g_values{};
    std::optional<std::size_t> failing_column; ///< set when an inner column application leaves R
    std::string detail;
};

/// Checks that g(t(X)), g(t(Y)), g(t(Z)) are not all equal; on failure names the violated
/// precondition. c's first relation is R and must be ternary. Throws not_a_cover.
[[nodiscard]] CoverLemmaVerdict check_cover_lemma(const Matrix & x, const Matrix & y, const Matrix & z,
    const BlackBoxOperation & s, const Assignment & g, const RelationalStructure & c);

enum class AreaSide { below_third, above_third };

struct TameVerdict {
    bool tame = false;
    AreaSide side = AreaSide::below_third;
};

/// x ~ 0 when its area is below 1/3, x ~ 1 when above. Throws area_equals_one_third.
[[nodiscard]] TameVerdict is_tame(const Matrix & x, const BlackBoxOperation & s, const Assignment & g);

using TernaryMembership = std::function<bool(Element, Element, Element)>;

struct RefuteOptions {
    bool override_bound = false;  ///< permit p <= bound_factor * c_size
    std::size_t bound_factor = 60;
    std::size_t step_factor = 5;
};

enum class RefutationOutcome {
    x1_not_tame,   ///< g(t(X1)) != g(t(0)): X1 has area below 1/3 but is not equivalent to 0
    x2_not_tame,   ///< g(t(X2)) != g(t(1))
    zero_equiv_one ///< g(t(0)) == g(t(1)): the all-zero and all-one matrices are equivalent
};

struct RefutationReport {
    std::size_t p = 0, c_size = 0, m = 0, k = 0, l1 = 0, l2 = 0;
    Rational interval_low, interval_high; ///< open interval (p/3 - 2|C|, p/3) scanned for l
    std::size_t interval_integers = 0;
    Element s_collision_value = 0;
    Rational area_x1, area_x2, area_x1_next_k;
    Element t_x1 = 0, t_x2 = 0, t_zero = 0, t_one = 0;
    Element g_x1 = 0, g_x2 = 0, g_zero = 0, g_one = 0;
    std::size_t step_x1 = 0, step_x2 = 0;

    bool bound_holds = false;       ///< p > bound_factor * c_size
    bool interval_positive = false; ///< p/3 - 2|C| > 0
    bool interval_has_room = false; ///< more than c_size integers in the interval
    bool pigeonhole_found = false;
    bool l_in_interval = false;
    bool t_equal = false;
    bool area_straddle = false; ///< area(X1) < 1/3 < area(X2)
    bool k_maximal = false;     ///< raising k by one pushes area(X1) above 1/3
    bool almost_rectangles = false;
    bool template_sandwiched = false;  ///< (1,0,0),(0,1,0),(0,0,1) in R and g: C -> NAE on the oracle
    bool cover_probe_in_relation = false; ///< t of the base line-segment cover lies in R
    bool cover_probe_not_all_equal = false;

    bool x1_equiv_zero = false;
    bool x2_equiv_one = false;
    bool zero_equiv_one = false;
    /// X1 ~ 0 and X2 ~ 1 hold together; with t(X1) = t(X2) that forces 0 ~ 1.
    bool tameness_contradiction_applies = false;
    RefutationOutcome outcome = RefutationOutcome::x1_not_tame;
};

/// Runs the contradiction construction against s: picks l1 < l2 in the interval with
/// equal s-values on (1^l, 0^(p-l)), the largest k keeping area(X1) below 1/3, builds
/// X_i = rho(k^m, l_i^(p-m)) with m = (p-1)/2 and reports every guarantee plus which
/// tameness property fails. Throws not_prime, bound_violation (without override) and
/// pigeonhole_failure.
[[nodiscard]] RefutationReport refute_cyclic(const BlackBoxOperation & s, std::size_t c_size, const Assignment & g,
    const TernaryMembership & in_relation, const RefuteOptions & options = {});

/// `key = value` lines.
[[nodiscard]] std::string format_report(const RefutationReport & report);

[[nodiscard]] std::string to_string(RefutationOutcome outcome);
[[nodiscard]] std::string to_string(CoverDiagnostic diagnostic);

} // namespace pcspwb
