#include <pcspwb/error.hpp>
#include <pcspwb/linear.hpp>

#include <algorithm>
#include <set>
#include <string>

namespace pcspwb {

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) :
    _rows(rows.size()),
    _cols(rows.size() ? rows.begin()->size() : 0)
{
    _data.reserve(_rows * _cols);
    for (auto & row : rows) {
        if (row.size() != _cols)
            throw Error(ErrorCode::dimension_mismatch, "ragged matrix literal");
        for (auto v : row)
            _data.emplace_back(v);
    }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n)
{
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntegerVector IntegerMatrix::column(std::size_t c) const
{
    IntegerVector v(_rows);
    for (std::size_t r = 0; r < _rows; ++r)
        v[r] = (*this)(r, c);
    return v;
}

IntegerMatrix operator*(const IntegerMatrix & a, const IntegerMatrix & b)
{
    if (a.cols() != b.rows())
        throw Error(ErrorCode::dimension_mismatch, "matrix product of incompatible shapes");
    IntegerMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (sgn(a(i, k)) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

IntegerVector operator*(const IntegerMatrix & a, const IntegerVector & x)
{
    if (a.cols() != x.size())
        throw Error(ErrorCode::dimension_mismatch, "matrix-vector product of incompatible shapes");
    IntegerVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            y[i] += a(i, k) * x[k];
    return y;
}

RationalVector operator*(const IntegerMatrix & a, const RationalVector & x)
{
    if (a.cols() != x.size())
        throw Error(ErrorCode::dimension_mismatch, "matrix-vector product of incompatible shapes");
    RationalVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            y[i] += Rational(a(i, k)) * x[k];
    return y;
}

namespace {
    // H and U stored column by column so that column operations touch contiguous memory.
    struct ColumnWork {
        std::vector<IntegerVector> h, u;

        void subtract_multiple(std::size_t target, std::size_t source, const Integer & q, std::size_t from_row)
        {
            auto & ht = h[target];
            const auto & hs = h[source];
            for (std::size_t r = from_row; r < ht.size(); ++r)
                if (sgn(hs[r]) != 0)
                    ht[r] -= q * hs[r];
            auto & ut = u[target];
            const auto & us = u[source];
            for (std::size_t r = 0; r < ut.size(); ++r)
                if (sgn(us[r]) != 0)
                    ut[r] -= q * us[r];
        }

        void swap_columns(std::size_t a, std::size_t b)
        {
            std::swap(h[a], h[b]);
            std::swap(u[a], u[b]);
        }

        void negate(std::size_t c)
        {
            for (auto & v : h[c])
                v = -v;
            for (auto & v : u[c])
                v = -v;
        }
    };
}

HermiteForm hermite_normal_form(const IntegerMatrix & a)
{
    const auto m = a.rows(), n = a.cols();
    ColumnWork w;
    w.h.assign(n, IntegerVector(m));
    w.u.assign(n, IntegerVector(n));
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < m; ++r)
            w.h[c][r] = a(r, c);
        w.u[c][c] = 1;
    }

    HermiteForm result;
    std::size_t pivot_col = 0;
    Integer q;
    for (std::size_t row = 0; row < m && pivot_col < n; ++row) {
        // columns >= pivot_col vanish above `row`
        while (true) {
            std::size_t best = n;
            for (std::size_t c = pivot_col; c < n; ++c)
                if (sgn(w.h[c][row]) != 0 && (best == n || mpz_cmpabs(w.h[c][row].get_mpz_t(), w.h[best][row].get_mpz_t()) < 0))
                    best = c;
            if (best == n)
                break;
            w.swap_columns(pivot_col, best);

            bool reduced = true;
            for (std::size_t c = pivot_col + 1; c < n; ++c) {
                if (sgn(w.h[c][row]) == 0)
                    continue;
                mpz_tdiv_q(q.get_mpz_t(), w.h[c][row].get_mpz_t(), w.h[pivot_col][row].get_mpz_t());
                w.subtract_multiple(c, pivot_col, q, row);
                if (sgn(w.h[c][row]) != 0)
                    reduced = false;
            }
            if (reduced)
                break;
        }
        if (sgn(w.h[pivot_col][row]) == 0)
            continue;

        if (sgn(w.h[pivot_col][row]) < 0)
            w.negate(pivot_col);
        for (std::size_t c = 0; c < pivot_col; ++c) {
            mpz_fdiv_q(q.get_mpz_t(), w.h[c][row].get_mpz_t(), w.h[pivot_col][row].get_mpz_t());
            if (sgn(q) != 0)
                w.subtract_multiple(c, pivot_col, q, row);
        }
        result.pivot_rows.push_back(row);
        ++pivot_col;
    }

    result.rank = pivot_col;
    result.h = IntegerMatrix(m, n);
    result.u = IntegerMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < m; ++r)
            result.h(r, c) = std::move(w.h[c][r]);
        for (std::size_t r = 0; r < n; ++r)
            result.u(r, c) = std::move(w.u[c][r]);
    }
    return result;
}

void IntegerLinearSystem::validate() const
{
    if (a.rows() != b.size())
        throw Error(ErrorCode::dimension_mismatch, "system has " + std::to_string(a.rows()) + " rows but right-hand side of length "
                + std::to_string(b.size()));
}

std::optional<IntegerAffineSpace> solve_integer_system(const IntegerLinearSystem & sys)
{
    sys.validate();
    const auto m = sys.a.rows(), n = sys.a.cols();
    auto hnf = hermite_normal_form(sys.a);

    // Solve H y = b by forward substitution down the staircase; x = U y.
    IntegerVector y(n);
    std::size_t next_pivot = 0;
    Integer residual;
    for (std::size_t r = 0; r < m; ++r) {
        residual = sys.b[r];
        std::size_t known = next_pivot;
        for (std::size_t c = 0; c < known; ++c)
            residual -= hnf.h(r, c) * y[c];
        if (next_pivot < hnf.rank && hnf.pivot_rows[next_pivot] == r) {
            const auto & pivot = hnf.h(r, next_pivot);
            if (! mpz_divisible_p(residual.get_mpz_t(), pivot.get_mpz_t()))
                return std::nullopt;
            mpz_divexact(y[next_pivot].get_mpz_t(), residual.get_mpz_t(), pivot.get_mpz_t());
            ++next_pivot;
        }
        else if (sgn(residual) != 0)
            return std::nullopt;
    }

    IntegerAffineSpace space;
    space.particular.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < hnf.rank; ++c)
            if (sgn(y[c]) != 0)
                space.particular[i] += hnf.u(i, c) * y[c];
    for (std::size_t c = hnf.rank; c < n; ++c)
        space.basis.push_back(hnf.u.column(c));
    return space;
}

namespace {
    struct ReducedEchelon {
        std::vector<RationalVector> rows; // each of length n + 1, last entry the right-hand side
        std::vector<std::size_t> pivot_cols;
        bool consistent = true;
    };

    ReducedEchelon gauss_jordan(const IntegerLinearSystem & sys)
    {
        const auto m = sys.a.rows(), n = sys.a.cols();
        ReducedEchelon e;
        e.rows.assign(m, RationalVector(n + 1));
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < n; ++c)
                e.rows[r][c] = sys.a(r, c);
            e.rows[r][n] = sys.b[r];
        }

        std::size_t rank = 0;
        for (std::size_t c = 0; c < n && rank < m; ++c) {
            std::size_t pivot = m;
            for (std::size_t r = rank; r < m; ++r)
                if (sgn(e.rows[r][c]) != 0) {
                    pivot = r;
                    break;
                }
            if (pivot == m)
                continue;
            std::swap(e.rows[rank], e.rows[pivot]);
            Rational inv = 1 / e.rows[rank][c];
            for (auto & v : e.rows[rank])
                if (sgn(v) != 0)
                    v *= inv;
            for (std::size_t r = 0; r < m; ++r) {
                if (r == rank || sgn(e.rows[r][c]) == 0)
                    continue;
                Rational factor = e.rows[r][c];
                for (std::size_t k = c; k <= n; ++k)
                    if (sgn(e.rows[rank][k]) != 0)
                        e.rows[r][k] -= factor * e.rows[rank][k];
            }
            e.pivot_cols.push_back(c);
            ++rank;
        }
        for (std::size_t r = rank; r < m; ++r)
            if (sgn(e.rows[r][n]) != 0)
                e.consistent = false;
        e.rows.resize(rank);
        return e;
    }
}

std::optional<RationalAffineSpace> solve_rational_system(const IntegerLinearSystem & sys)
{
    sys.validate();
    const auto n = sys.a.cols();
    auto e = gauss_jordan(sys);
    if (! e.consistent)
        return std::nullopt;

    std::vector<char> is_pivot(n, 0);
    for (auto c : e.pivot_cols)
        is_pivot[c] = 1;

    RationalAffineSpace space;
    space.particular.assign(n, 0);
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
        space.particular[e.pivot_cols[r]] = e.rows[r][n];
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        RationalVector v(n);
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
            v[e.pivot_cols[r]] = -e.rows[r][f];
        space.basis.push_back(std::move(v));
    }
    return space;
}

AvoidingResult solve_rational_avoiding(const IntegerLinearSystem & sys, const Rational & forbidden)
{
    AvoidingResult result;
    auto space = solve_rational_system(sys);
    if (! space) {
        result.status = AvoidStatus::inconsistent;
        return result;
    }

    const auto n = space->particular.size();
    const auto params = space->basis.size();
    result.free_parameters = params;

    // Each coordinate is particular[j] + sum_f basis[f][j] * t_f; group coordinates
    // by the last parameter they depend on.
    std::vector<std::vector<std::size_t>> decided_by(params);
    for (std::size_t j = 0; j < n; ++j) {
        std::optional<std::size_t> last;
        for (std::size_t f = 0; f < params; ++f)
            if (sgn(space->basis[f][j]) != 0)
                last = f;
        if (last)
            decided_by[*last].push_back(j);
        else if (space->particular[j] == forbidden) {
            result.status = AvoidStatus::forced_coordinate;
            result.forced_index = j;
            return result;
        }
    }

    RationalVector x = space->particular;
    for (std::size_t f = 0; f < params; ++f) {
        // Every coordinate in decided_by[f] rules out at most one value of t_f.
        std::set<Integer> excluded;
        for (auto j : decided_by[f]) {
            Rational t = (forbidden - x[j]) / space->basis[f][j];
            if (t.get_den() == 1 && sgn(t) >= 0)
                excluded.insert(t.get_num());
        }
        Integer t = 0;
        while (excluded.count(t))
            ++t;
        if (sgn(t) != 0) {
            Rational tq(t);
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(space->basis[f][j]) != 0)
                    x[j] += tq * space->basis[f][j];
        }
    }

    result.status = AvoidStatus::solved;
    result.solution = std::move(x);
    return result;
}

} // namespace pcspwb
