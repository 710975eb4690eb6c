#include <pcspwb/proof_lab.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace pcspwb {

Matrix::Matrix(std::size_t p, std::vector<Element> entries) :
    _p(p),
    _entries(std::move(entries))
{
    if (_p < 2)
        throw Error(ErrorCode::range, "matrix side must be at least 2");
    if (_entries.size() != _p * _p)
        throw Error(ErrorCode::dimension_mismatch, "a " + std::to_string(_p) + "x" + std::to_string(_p) + " matrix needs "
                + std::to_string(_p * _p) + " entries, got " + std::to_string(_entries.size()));
}

Matrix Matrix::zeros(std::size_t p) { return Matrix(p, std::vector<Element>(p * p, 0)); }

Matrix Matrix::ones(std::size_t p) { return Matrix(p, std::vector<Element>(p * p, 1)); }

std::vector<Element> Matrix::column(std::size_t col) const
{
    std::vector<Element> c(_p);
    for (std::size_t r = 0; r < _p; ++r)
        c[r] = at(r, col);
    return c;
}

bool Matrix::is_binary() const
{
    return std::all_of(_entries.begin(), _entries.end(), [](Element e) { return e <= 1; });
}

BlackBoxOperation::BlackBoxOperation(
    std::string name, std::size_t arity, std::size_t domain_size, Procedure procedure, bool declared_cyclic) :
    _name(std::move(name)),
    _arity(arity),
    _domain_size(domain_size),
    _procedure(std::move(procedure)),
    _declared_cyclic(declared_cyclic)
{
    if (_arity == 0)
        throw Error(ErrorCode::range, "black-box operation needs positive arity");
}

BlackBoxOperation BlackBoxOperation::parity(std::size_t arity)
{
    return BlackBoxOperation("parity", arity, 2, [](std::span<const Element> args) {
        Element v = 0;
        for (auto a : args)
            v ^= a & 1;
        return v;
    }, true);
}

BlackBoxOperation BlackBoxOperation::threshold_at_half(std::size_t arity)
{
    return BlackBoxOperation("threshold-at-half", arity, 2, [arity](std::span<const Element> args) {
        std::size_t ones = static_cast<std::size_t>(std::count(args.begin(), args.end(), Element{1}));
        return Element{2 * ones > arity ? 1u : 0u};
    }, true);
}

BlackBoxOperation BlackBoxOperation::projection(std::size_t arity, std::size_t domain_size, std::size_t coordinate)
{
    if (coordinate >= arity)
        throw Error(ErrorCode::range, "projection coordinate out of range");
    return BlackBoxOperation("projection-" + std::to_string(coordinate + 1), arity, domain_size,
        [coordinate](std::span<const Element> args) { return args[coordinate]; }, arity == 1);
}

BlackBoxOperation BlackBoxOperation::from_table(const OperationTable & table, std::string name)
{
    bool cyclic = table.arity() >= 2 && is_cyclic(table);
    return BlackBoxOperation(std::move(name), table.arity(), table.domain_size(),
        [table](std::span<const Element> args) { return table(args); }, cyclic);
}

Element BlackBoxOperation::operator()(std::span<const Element> args) const
{
    if (args.size() != _arity)
        throw Error(ErrorCode::dimension_mismatch, "operation '" + _name + "' has arity " + std::to_string(_arity) + ", got "
                + std::to_string(args.size()) + " arguments");
    return _procedure(args);
}

bool BlackBoxOperation::spot_check_cyclic(std::size_t samples, std::uint64_t seed) const
{
    std::mt19937_64 rng(seed);
    std::vector<Element> args(_arity);
    for (std::size_t i = 0; i < samples; ++i) {
        for (auto & a : args)
            a = static_cast<Element>(rng() % _domain_size);
        auto before = (*this)(args);
        std::rotate(args.begin(), args.begin() + 1, args.end());
        if ((*this)(args) != before)
            return false;
    }
    return true;
}

Element eval_t(const BlackBoxOperation & s, const Matrix & x)
{
    if (x.side() != s.arity())
        throw Error(ErrorCode::dimension_mismatch, "t needs a " + std::to_string(s.arity()) + "x" + std::to_string(s.arity())
                + " matrix, got side " + std::to_string(x.side()));
    const auto p = x.side();
    std::vector<Element> results(p);
    for (std::size_t c = 0; c < p; ++c)
        results[c] = s(x.column(c));
    return s(results);
}

Rational area(const Matrix & x)
{
    if (! x.is_binary())
        throw Error(ErrorCode::non_binary_entry, "area is defined for zero-one matrices only");
    auto ones = std::count(x.flat().begin(), x.flat().end(), Element{1});
    Rational a(static_cast<unsigned long>(ones), static_cast<unsigned long>(x.side() * x.side()));
    a.canonicalize();
    return a;
}

bool is_cover(const Matrix & x, const Matrix & y, const Matrix & z)
{
    if (x.side() != y.side() || x.side() != z.side())
        throw Error(ErrorCode::dimension_mismatch, "cover candidates differ in size");
    for (std::size_t i = 0; i < x.flat().size(); ++i) {
        auto a = x.flat()[i], b = y.flat()[i], c = z.flat()[i];
        if (a > 1 || b > 1 || c > 1 || a + b + c != 1)
            return false;
    }
    return true;
}

bool g_equivalent(const Matrix & x, const Matrix & y, const BlackBoxOperation & s, const Assignment & g)
{
    return g.at(eval_t(s, x)) == g.at(eval_t(s, y));
}

Matrix tau(std::size_t i, std::size_t p)
{
    if (i > p * p)
        throw Error(ErrorCode::range, "tau index " + std::to_string(i) + " exceeds p^2 = " + std::to_string(p * p));
    std::vector<Element> entries(p * p, 0);
    std::fill(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(i), 1);
    return Matrix(p, std::move(entries));
}

Matrix rho(const std::vector<std::size_t> & heights)
{
    const auto p = heights.size();
    std::vector<Element> entries(p * p, 0);
    for (std::size_t c = 0; c < p; ++c) {
        if (heights[c] > p)
            throw Error(ErrorCode::range, "column height " + std::to_string(heights[c]) + " exceeds p = " + std::to_string(p));
        for (std::size_t r = 0; r < heights[c]; ++r)
            entries[r * p + c] = 1;
    }
    return Matrix(p, std::move(entries));
}

std::optional<std::vector<std::size_t>> column_heights(const Matrix & x)
{
    const auto p = x.side();
    std::vector<std::size_t> heights(p);
    for (std::size_t c = 0; c < p; ++c) {
        std::size_t r = 0;
        while (r < p && x.at(r, c) == 1)
            ++r;
        heights[c] = r;
        for (; r < p; ++r)
            if (x.at(r, c) != 0)
                return std::nullopt;
    }
    return heights;
}

std::optional<AlmostRectangleShape> almost_rectangle_shape(const Matrix & x)
{
    auto heights = column_heights(x);
    if (! heights)
        return std::nullopt;
    const auto & h = *heights;
    const auto p = h.size();
    std::size_t m = 1;
    while (m < p && h[m] == h[0])
        ++m;
    if (m == p)
        return AlmostRectangleShape{h[0], h[0], p};
    for (std::size_t c = m; c < p; ++c)
        if (h[c] != h[m])
            return std::nullopt;
    if (h[0] < h[m])
        return std::nullopt;
    return AlmostRectangleShape{h[0], h[m], m};
}

bool is_almost_rectangle(const Matrix & x, std::size_t c_size, std::size_t step_factor)
{
    auto shape = almost_rectangle_shape(x);
    return shape && shape->step() <= step_factor * c_size;
}

Matrix shift(const Matrix & x, ShiftMode mode, const std::vector<std::size_t> & amounts)
{
    const auto p = x.side();
    std::vector<Element> out(p * p);
    switch (mode) {
    case ShiftMode::columns_down: {
        if (amounts.size() != 1 && amounts.size() != p)
            throw Error(ErrorCode::range, "columns-down needs one amount or one per column");
        for (std::size_t c = 0; c < p; ++c) {
            auto a = amounts.size() == 1 ? amounts[0] : amounts[c];
            if (a >= p)
                throw Error(ErrorCode::range, "shift amount " + std::to_string(a) + " outside 0.." + std::to_string(p - 1));
            for (std::size_t r = 0; r < p; ++r)
                out[((r + a) % p) * p + c] = x.at(r, c);
        }
        break;
    }
    case ShiftMode::rows_left: {
        if (amounts.size() != 1 || amounts[0] >= p)
            throw Error(ErrorCode::range, "rows-left needs one amount in 0.." + std::to_string(p - 1));
        auto a = amounts[0];
        for (std::size_t r = 0; r < p; ++r)
            for (std::size_t c = 0; c < p; ++c)
                out[r * p + c] = x.at(r, (c + a) % p);
        break;
    }
    case ShiftMode::flat_cyclic: {
        const auto n = p * p;
        if (amounts.size() != 1 || amounts[0] > n)
            throw Error(ErrorCode::range, "flat-cyclic needs one amount in 0.." + std::to_string(n));
        auto a = amounts[0] % n;
        for (std::size_t i = 0; i < n; ++i)
            out[(i + a) % n] = x.flat()[i];
        break;
    }
    }
    return Matrix(p, std::move(out));
}

MatrixTriple line_segment_cover(std::size_t i, std::size_t j, std::size_t p)
{
    const auto n = p * p;
    if (i + j > n)
        throw Error(ErrorCode::range, "line segments longer than p^2");
    auto k = n - i - j;
    return {tau(i, p), shift(tau(j, p), ShiftMode::flat_cyclic, {i}), shift(tau(k, p), ShiftMode::flat_cyclic, {(i + j) % n})};
}

MatrixTriple column_stack_cover(const Matrix & x, const Matrix & y, const Matrix & z)
{
    auto hx = column_heights(x), hy = column_heights(y), hz = column_heights(z);
    if (! hx || ! hy || ! hz)
        throw Error(ErrorCode::range, "column stacking needs prefix-of-ones columns");
    const auto p = x.side();
    if (y.side() != p || z.side() != p)
        throw Error(ErrorCode::dimension_mismatch, "stacked matrices differ in size");
    std::vector<std::size_t> down_y(p), down_z(p);
    for (std::size_t c = 0; c < p; ++c) {
        if ((*hx)[c] + (*hy)[c] + (*hz)[c] != p)
            throw Error(ErrorCode::not_a_cover, "column " + std::to_string(c) + " heights do not sum to p");
        down_y[c] = (*hx)[c] % p;
        down_z[c] = ((*hx)[c] + (*hy)[c]) % p;
    }
    return {x, shift(y, ShiftMode::columns_down, down_y), shift(z, ShiftMode::columns_down, down_z)};
}

namespace {
    std::vector<std::size_t> heights_of(std::initializer_list<std::pair<std::size_t, std::size_t>> runs)
    {
        std::vector<std::size_t> h;
        for (auto [count, height] : runs)
            h.insert(h.end(), count, height);
        return h;
    }

    void require_rectangle(std::size_t k, std::size_t l, std::size_t m, std::size_t p)
    {
        if (p < 2 || k > p || l > k || m > p)
            throw Error(ErrorCode::range, "rectangle parameters need l <= k <= p and m <= p");
    }
}

MatrixTriple heavy_rectangle_triple(std::size_t k, std::size_t l, std::size_t m, std::size_t p)
{
    require_rectangle(k, l, m, p);
    auto l1 = (p - k + 1) / 2, l2 = (p - k) / 2;
    auto k1 = (p - l + 1) / 2, k2 = (p - l) / 2;
    return {rho(heights_of({{m, k}, {p - m, l}})), rho(heights_of({{m, l1}, {p - m, k1}})), rho(heights_of({{m, l2}, {p - m, k2}}))};
}

MatrixTriple light_rectangle_triple(std::size_t k, std::size_t l, std::size_t m, std::size_t p)
{
    require_rectangle(k, l, m, p);
    if (2 * k > p)
        throw Error(ErrorCode::range, "light rectangles need 2k <= p");
    if (2 * m == p)
        throw Error(ErrorCode::range, "m = p/2 has no light rectangle triple");
    auto x = rho(heights_of({{m, k}, {p - m, l}}));
    if (2 * m < p)
        return {x, rho(heights_of({{m, l}, {m, k}, {p - 2 * m, l}})), rho(heights_of({{2 * m, p - k - l}, {p - 2 * m, p - 2 * l}}))};
    return {x, rho(heights_of({{p - m, l}, {m, k}})),
        rho(heights_of({{p - m, p - k - l}, {2 * m - p, p - 2 * k}, {p - m, p - k - l}}))};
}

CoverLemmaVerdict check_cover_lemma(const Matrix & x, const Matrix & y, const Matrix & z, const BlackBoxOperation & s,
    const Assignment & g, const RelationalStructure & c)
{
    if (! is_cover(x, y, z))
        throw Error(ErrorCode::not_a_cover, "matrices do not form a cover");
    if (c.relations().empty() || c.relation(0).arity() != 3)
        throw Error(ErrorCode::signature_mismatch, "cover lemma needs a template whose first relation is ternary");
    const auto & r = c.relation(0);

    CoverLemmaVerdict v;
    v.t_values = {eval_t(s, x), eval_t(s, y), eval_t(s, z)};
    for (std::size_t i = 0; i < 3; ++i)
        v.g_values[i] = g.at(v.t_values[i]);
    v.pass = ! (v.g_values[0] == v.g_values[1] && v.g_values[1] == v.g_values[2]);
    if (v.pass)
        return v;

    for (Tuple t : {Tuple{1, 0, 0}, Tuple{0, 1, 0}, Tuple{0, 0, 1}})
        if (! r.contains(t)) {
            v.diagnostic = CoverDiagnostic::template_lacks_one_in_three;
            v.detail = "R lacks (" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
            return v;
        }
    for (std::size_t col = 0; col < x.side(); ++col) {
        Tuple image{s(x.column(col)), s(y.column(col)), s(z.column(col))};
        if (! r.contains(image)) {
            v.diagnostic = CoverDiagnostic::s_breaks_relation;
            v.failing_column = col;
            v.detail = "s maps the R-tuples of column " + std::to_string(col) + " outside R";
            return v;
        }
    }
    Tuple outer{v.t_values[0], v.t_values[1], v.t_values[2]};
    if (! r.contains(outer)) {
        v.diagnostic = CoverDiagnostic::s_breaks_relation;
        v.detail = "s maps the R-tuples of column results outside R";
        return v;
    }
    v.diagnostic = CoverDiagnostic::g_not_homomorphism;
    v.detail = "g sends an R-tuple to a constant triple";
    return v;
}

TameVerdict is_tame(const Matrix & x, const BlackBoxOperation & s, const Assignment & g)
{
    auto lambda = area(x);
    auto c = cmp(lambda, Rational(1, 3));
    if (c == 0)
        throw Error(ErrorCode::area_equals_one_third, "tameness is undefined at area 1/3");
    TameVerdict v;
    v.side = c < 0 ? AreaSide::below_third : AreaSide::above_third;
    auto reference = c < 0 ? Matrix::zeros(x.side()) : Matrix::ones(x.side());
    v.tame = g_equivalent(x, reference, s, g);
    return v;
}

RefutationReport refute_cyclic(const BlackBoxOperation & s, std::size_t c_size, const Assignment & g,
    const TernaryMembership & in_relation, const RefuteOptions & options)
{
    const auto p = s.arity();
    if (! is_prime(p))
        throw Error(ErrorCode::not_prime, "arity " + std::to_string(p) + " is not prime");
    if (c_size == 0)
        throw Error(ErrorCode::range, "template size must be positive");
    if (g.size() < s.domain_size())
        throw Error(ErrorCode::domain_mismatch, "g must be defined on all " + std::to_string(s.domain_size()) + " values of s");

    RefutationReport rep;
    rep.p = p;
    rep.c_size = c_size;
    rep.bound_holds = p > options.bound_factor * c_size;
    if (! rep.bound_holds && ! options.override_bound)
        throw Error(ErrorCode::bound_violation, "p = " + std::to_string(p) + " is not above " + std::to_string(options.bound_factor)
                + " * " + std::to_string(c_size));

    rep.m = (p - 1) / 2;
    rep.interval_high = Rational(static_cast<unsigned long>(p), 3);
    rep.interval_low = rep.interval_high - Rational(static_cast<unsigned long>(2 * c_size));
    rep.interval_positive = sgn(rep.interval_low) > 0;

    // integers l with p - 6|C| < 3l < p
    std::size_t lo = p > 6 * c_size ? (p - 6 * c_size) / 3 + 1 : 0;
    std::size_t hi = (p - 1) / 3;
    rep.interval_integers = hi >= lo ? hi - lo + 1 : 0;
    rep.interval_has_room = rep.interval_integers > c_size;

    auto prefix_value = [&](std::size_t ones) {
        std::vector<Element> args(p, 0);
        std::fill(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(ones), 1);
        return s(args);
    };
    std::map<Element, std::size_t> first_seen;
    for (std::size_t l = lo; l <= hi && ! rep.pigeonhole_found; ++l) {
        auto v = prefix_value(l);
        auto [it, inserted] = first_seen.emplace(v, l);
        if (! inserted) {
            rep.l1 = it->second;
            rep.l2 = l;
            rep.s_collision_value = v;
            rep.pigeonhole_found = true;
        }
    }
    if (! rep.pigeonhole_found)
        throw Error(ErrorCode::pigeonhole_failure, "s takes " + std::to_string(first_seen.size()) + " distinct values on the "
                + std::to_string(rep.interval_integers) + " scanned prefixes; it cannot act on a " + std::to_string(c_size)
                + "-element set");
    rep.l_in_interval = rep.l1 < rep.l2 && rep.interval_low < Rational(static_cast<unsigned long>(rep.l1))
        && Rational(static_cast<unsigned long>(rep.l2)) < rep.interval_high;

    const auto m = rep.m;
    auto below_third = [&](std::size_t k, std::size_t l) { return 3 * (m * k + (p - m) * l) < p * p; };
    rep.k = 0;
    for (std::size_t k = 0; k <= p; ++k)
        if (below_third(k, rep.l1))
            rep.k = k;

    auto build = [&](std::size_t k, std::size_t l) {
        std::vector<std::size_t> h(p, l);
        std::fill(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(m), k);
        return rho(h);
    };
    auto x1 = build(rep.k, rep.l1);
    auto x2 = build(rep.k, rep.l2);
    rep.area_x1 = area(x1);
    rep.area_x2 = area(x2);
    const Rational third(1, 3);
    rep.area_straddle = rep.area_x1 < third && third < rep.area_x2;
    if (rep.k < p) {
        rep.area_x1_next_k = area(build(rep.k + 1, rep.l1));
        rep.k_maximal = rep.area_x1_next_k > third;
    }
    else {
        rep.area_x1_next_k = rep.area_x1;
        rep.k_maximal = true;
    }

    rep.t_x1 = eval_t(s, x1);
    rep.t_x2 = eval_t(s, x2);
    rep.t_equal = rep.t_x1 == rep.t_x2;
    rep.t_zero = eval_t(s, Matrix::zeros(p));
    rep.t_one = eval_t(s, Matrix::ones(p));

    if (rep.k >= rep.l2) {
        rep.step_x1 = rep.k - rep.l1;
        rep.step_x2 = rep.k - rep.l2;
        rep.almost_rectangles = is_almost_rectangle(x1, c_size, options.step_factor)
            && is_almost_rectangle(x2, c_size, options.step_factor);
    }

    bool sandwiched = in_relation(1, 0, 0) && in_relation(0, 1, 0) && in_relation(0, 0, 1);
    const auto d = static_cast<Element>(s.domain_size());
    for (Element a = 0; a < d && sandwiched; ++a)
        for (Element b = 0; b < d && sandwiched; ++b)
            for (Element c = 0; c < d && sandwiched; ++c)
                if (in_relation(a, b, c) && g[a] == g[b] && g[b] == g[c])
                    sandwiched = false;
    rep.template_sandwiched = sandwiched;

    if (p > 3) {
        auto q = (p * p - 1) / 3;
        auto probe = line_segment_cover(q, q, p);
        Element tx = eval_t(s, probe.x), ty = eval_t(s, probe.y), tz = eval_t(s, probe.z);
        rep.cover_probe_in_relation = in_relation(tx, ty, tz);
        rep.cover_probe_not_all_equal = ! (g.at(tx) == g.at(ty) && g.at(ty) == g.at(tz));
    }

    rep.g_x1 = g.at(rep.t_x1);
    rep.g_x2 = g.at(rep.t_x2);
    rep.g_zero = g.at(rep.t_zero);
    rep.g_one = g.at(rep.t_one);
    rep.x1_equiv_zero = rep.g_x1 == rep.g_zero;
    rep.x2_equiv_one = rep.g_x2 == rep.g_one;
    rep.zero_equiv_one = rep.g_zero == rep.g_one;
    rep.tameness_contradiction_applies = rep.x1_equiv_zero && rep.x2_equiv_one;
    if (rep.zero_equiv_one)
        rep.outcome = RefutationOutcome::zero_equiv_one;
    else if (! rep.x1_equiv_zero)
        rep.outcome = RefutationOutcome::x1_not_tame;
    else
        rep.outcome = RefutationOutcome::x2_not_tame;
    return rep;
}

std::string to_string(RefutationOutcome outcome)
{
    switch (outcome) {
    case RefutationOutcome::x1_not_tame: return "x1-not-tame";
    case RefutationOutcome::x2_not_tame: return "x2-not-tame";
    case RefutationOutcome::zero_equiv_one: return "zero-equiv-one";
    }
    return "unknown";
}

std::string to_string(CoverDiagnostic diagnostic)
{
    switch (diagnostic) {
    case CoverDiagnostic::none: return "none";
    case CoverDiagnostic::template_lacks_one_in_three: return "template-lacks-one-in-three";
    case CoverDiagnostic::s_breaks_relation: return "s-breaks-relation";
    case CoverDiagnostic::g_not_homomorphism: return "g-not-homomorphism";
    }
    return "unknown";
}

std::string format_report(const RefutationReport & r)
{
    std::ostringstream out;
    auto flag = [](bool b) { return b ? "true" : "false"; };
    out << "p = " << r.p << '\n'
        << "c_size = " << r.c_size << '\n'
        << "m = " << r.m << '\n'
        << "interval = (" << r.interval_low.get_str() << ", " << r.interval_high.get_str() << ")\n"
        << "interval_integers = " << r.interval_integers << '\n'
        << "l1 = " << r.l1 << '\n'
        << "l2 = " << r.l2 << '\n'
        << "s_collision_value = " << r.s_collision_value << '\n'
        << "k = " << r.k << '\n'
        << "area_x1 = " << r.area_x1.get_str() << '\n'
        << "area_x2 = " << r.area_x2.get_str() << '\n'
        << "area_x1_next_k = " << r.area_x1_next_k.get_str() << '\n'
        << "step_x1 = " << r.step_x1 << '\n'
        << "step_x2 = " << r.step_x2 << '\n'
        << "t_x1 = " << r.t_x1 << '\n'
        << "t_x2 = " << r.t_x2 << '\n'
        << "t_zero = " << r.t_zero << '\n'
        << "t_one = " << r.t_one << '\n'
        << "g_x1 = " << r.g_x1 << '\n'
        << "g_x2 = " << r.g_x2 << '\n'
        << "g_zero = " << r.g_zero << '\n'
        << "g_one = " << r.g_one << '\n'
        << "bound_holds = " << flag(r.bound_holds) << '\n'
        << "interval_positive = " << flag(r.interval_positive) << '\n'
        << "interval_has_room = " << flag(r.interval_has_room) << '\n'
        << "pigeonhole_found = " << flag(r.pigeonhole_found) << '\n'
        << "l_in_interval = " << flag(r.l_in_interval) << '\n'
        << "t_equal = " << flag(r.t_equal) << '\n'
        << "area_straddle = " << flag(r.area_straddle) << '\n'
        << "k_maximal = " << flag(r.k_maximal) << '\n'
        << "almost_rectangles = " << flag(r.almost_rectangles) << '\n'
        << "template_sandwiched = " << flag(r.template_sandwiched) << '\n'
        << "cover_probe_in_relation = " << flag(r.cover_probe_in_relation) << '\n'
        << "cover_probe_not_all_equal = " << flag(r.cover_probe_not_all_equal) << '\n'
        << "x1_equiv_zero = " << flag(r.x1_equiv_zero) << '\n'
        << "x2_equiv_one = " << flag(r.x2_equiv_one) << '\n'
        << "zero_equiv_one = " << flag(r.zero_equiv_one) << '\n'
        << "tameness_contradiction_applies = " << flag(r.tameness_contradiction_applies) << '\n'
        << "outcome = " << to_string(r.outcome) << '\n';
    return out.str();
}

} // namespace pcspwb
