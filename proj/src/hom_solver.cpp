#include <pcspwb/hom_solver.hpp>

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <numeric>
#include <random>

namespace pcspwb {

namespace {
    class DomainSet {
    public:
        DomainSet() = default;
        explicit DomainSet(std::size_t size, bool full) :
            _words((size + 63) / 64, full ? ~std::uint64_t{0} : 0),
            _size(size)
        {
            if (full && size % 64 != 0)
                _words.back() = (std::uint64_t{1} << (size % 64)) - 1;
        }

        [[nodiscard]] bool test(std::size_t v) const { return (_words[v / 64] >> (v % 64)) & 1; }
        void set(std::size_t v) { _words[v / 64] |= std::uint64_t{1} << (v % 64); }

        [[nodiscard]] std::size_t count() const
        {
            std::size_t c = 0;
            for (auto w : _words)
                c += static_cast<std::size_t>(std::popcount(w));
            return c;
        }

        /// Intersects in place; returns whether anything was removed.
        bool intersect(const DomainSet & other)
        {
            bool changed = false;
            for (std::size_t i = 0; i < _words.size(); ++i) {
                auto w = _words[i] & other._words[i];
                changed = changed || w != _words[i];
                _words[i] = w;
            }
            return changed;
        }

        void assign_single(std::size_t v)
        {
            std::fill(_words.begin(), _words.end(), 0);
            set(v);
        }

        [[nodiscard]] std::vector<Element> values() const
        {
            std::vector<Element> out;
            for (std::size_t i = 0; i < _words.size(); ++i) {
                auto w = _words[i];
                while (w) {
                    out.push_back(static_cast<Element>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
                    w &= w - 1;
                }
            }
            return out;
        }

    private:
        std::vector<std::uint64_t> _words;
        std::size_t _size = 0;
    };

    struct PreparedConstraint {
        const Relation * relation;
        std::vector<std::size_t> scope;
        std::vector<std::size_t> distinct_vars;
        std::vector<std::pair<std::size_t, std::size_t>> equal_positions;
    };

    enum class Stop { keep_going, halt };

    class Search {
    public:
        Search(const Instance & x, const RelationalStructure & a, const SolverConfig & cfg) :
            _a(a),
            _cfg(cfg),
            _rng(cfg.seed),
            _watches(x.variable_count())
        {
            cfg.validate();
            if (! x.signature().similar_to(a.signature()))
                throw Error(ErrorCode::signature_mismatch, "instance signature is not similar to template '" + a.name() + "'");

            for (std::size_t c = 0; c < x.constraints().size(); ++c) {
                const auto & con = x.constraints()[c];
                PreparedConstraint p{&a.relation(con.relation), con.scope, {}, {}};
                for (std::size_t i = 0; i < con.scope.size(); ++i) {
                    bool first = true;
                    for (std::size_t j = 0; j < i; ++j)
                        if (con.scope[j] == con.scope[i]) {
                            p.equal_positions.emplace_back(j, i);
                            first = false;
                            break;
                        }
                    if (first)
                        p.distinct_vars.push_back(con.scope[i]);
                }
                for (auto v : p.distinct_vars)
                    _watches[v].push_back(c);
                _constraints.push_back(std::move(p));
            }
        }

        std::uint64_t nodes() const noexcept { return _nodes; }
        bool hit_node_limit() const noexcept { return _node_limit_hit; }

        void run(const std::function<Stop(const Assignment &)> & on_solution)
        {
            std::vector<DomainSet> domains(_watches.size(), DomainSet(_a.domain_size(), true));
            std::vector<std::size_t> all(_constraints.size());
            std::iota(all.begin(), all.end(), 0);
            if (! propagate(domains, all))
                return;
            descend(domains, on_solution);
        }

    private:
        bool revise(std::vector<DomainSet> & domains, const PreparedConstraint & c, std::vector<std::size_t> & changed)
        {
            std::vector<DomainSet> support(c.scope.size(), DomainSet(_a.domain_size(), false));
            for (const auto & t : c.relation->tuples()) {
                bool ok = true;
                for (std::size_t i = 0; i < c.scope.size() && ok; ++i)
                    ok = domains[c.scope[i]].test(t[i]);
                for (auto [i, j] : c.equal_positions)
                    ok = ok && t[i] == t[j];
                if (! ok)
                    continue;
                for (std::size_t i = 0; i < c.scope.size(); ++i)
                    support[i].set(t[i]);
            }
            for (std::size_t i = 0; i < c.scope.size(); ++i) {
                auto v = c.scope[i];
                if (domains[v].intersect(support[i])) {
                    if (domains[v].count() == 0)
                        return false;
                    changed.push_back(v);
                }
            }
            return true;
        }

        bool propagate(std::vector<DomainSet> & domains, const std::vector<std::size_t> & initial)
        {
            std::deque<std::size_t> queue(initial.begin(), initial.end());
            std::vector<char> queued(_constraints.size(), 0);
            for (auto c : initial)
                queued[c] = 1;
            std::vector<std::size_t> changed;
            while (! queue.empty()) {
                auto c = queue.front();
                queue.pop_front();
                queued[c] = 0;
                changed.clear();
                if (! revise(domains, _constraints[c], changed))
                    return false;
                for (auto v : changed)
                    for (auto other : _watches[v])
                        if (! queued[other]) {
                            queued[other] = 1;
                            queue.push_back(other);
                        }
            }
            return true;
        }

        std::optional<std::size_t> choose_variable(const std::vector<DomainSet> & domains) const
        {
            std::optional<std::size_t> best;
            std::size_t best_size = 0;
            for (std::size_t v = 0; v < domains.size(); ++v) {
                auto size = domains[v].count();
                if (size <= 1)
                    continue;
                if (_cfg.variable_order == VariableOrder::input)
                    return v;
                if (! best || size < best_size) {
                    best = v;
                    best_size = size;
                }
            }
            return best;
        }

        Stop descend(std::vector<DomainSet> & domains, const std::function<Stop(const Assignment &)> & on_solution)
        {
            auto var = choose_variable(domains);
            if (! var) {
                Assignment solution(domains.size());
                for (std::size_t v = 0; v < domains.size(); ++v)
                    solution[v] = domains[v].values().front();
                return on_solution(solution);
            }

            auto values = domains[*var].values();
            switch (_cfg.value_order) {
            case ValueOrder::ascending: break;
            case ValueOrder::descending: std::reverse(values.begin(), values.end()); break;
            case ValueOrder::shuffled:
                for (std::size_t i = values.size(); i > 1; --i)
                    std::swap(values[i - 1], values[_rng() % i]);
                break;
            }

            for (auto value : values) {
                if (_nodes >= _cfg.node_limit) {
                    _node_limit_hit = true;
                    return Stop::halt;
                }
                ++_nodes;
                auto next = domains;
                next[*var].assign_single(value);
                if (! propagate(next, _watches[*var]))
                    continue;
                if (descend(next, on_solution) == Stop::halt)
                    return Stop::halt;
            }
            return Stop::keep_going;
        }

        const RelationalStructure & _a;
        const SolverConfig & _cfg;
        std::mt19937_64 _rng;
        std::vector<PreparedConstraint> _constraints;
        std::vector<std::vector<std::size_t>> _watches;
        std::uint64_t _nodes = 0;
        bool _node_limit_hit = false;
    };
}

void SolverConfig::validate() const
{
    if (node_limit == 0 || solution_limit == 0)
        throw Error(ErrorCode::invalid_config, "solver limits must be positive");
}

SolverConfig SolverConfig::from_limits(const Limits & limits)
{
    SolverConfig cfg;
    cfg.node_limit = limits.max_nodes;
    cfg.solution_limit = limits.max_relation_size;
    return cfg;
}

SearchResult find_homomorphism(const Instance & x, const RelationalStructure & a, const SolverConfig & cfg)
{
    SearchResult result;
    if (a.domain_size() == 0 && x.variable_count() > 0) {
        result.status = SearchStatus::none;
        return result;
    }
    Search search(x, a, cfg);
    search.run([&](const Assignment & s) {
        result.assignment = s;
        return Stop::halt;
    });
    result.nodes = search.nodes();
    if (result.assignment)
        result.status = SearchStatus::found;
    else
        result.status = search.hit_node_limit() ? SearchStatus::limit_exceeded : SearchStatus::none;
    return result;
}

Enumeration enumerate_homomorphisms(const Instance & x, const RelationalStructure & a, const SolverConfig & cfg)
{
    Enumeration result;
    if (a.domain_size() == 0 && x.variable_count() > 0)
        return result;
    Search search(x, a, cfg);
    search.run([&](const Assignment & s) {
        result.solutions.push_back(s);
        if (result.solutions.size() >= cfg.solution_limit) {
            result.stop = EnumerationStop::solution_limit;
            return Stop::halt;
        }
        return Stop::keep_going;
    });
    result.nodes = search.nodes();
    if (search.hit_node_limit())
        result.stop = EnumerationStop::node_limit;
    return result;
}

SearchResult find_structure_homomorphism(const RelationalStructure & from, const RelationalStructure & to, const SolverConfig & cfg)
{
    return find_homomorphism(canonical_instance(from), to, cfg);
}

} // namespace pcspwb
