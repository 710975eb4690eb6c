#include <pcspwb/text_io.hpp>

#include <charconv>
#include <map>
#include <sstream>

namespace pcspwb {

namespace {
    struct Token {
        std::string text;
        std::size_t column;
    };

    struct Statement {
        std::size_t line;
        std::vector<Token> tokens;

        [[nodiscard]] const std::string & keyword() const { return tokens.front().text; }
        [[nodiscard]] std::size_t column(std::size_t i) const { return i < tokens.size() ? tokens[i].column : end_column; }
        std::size_t end_column = 1;
    };

    std::vector<Statement> tokenize(std::string_view text)
    {
        std::vector<Statement> out;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto nl = text.find('\n', pos);
            auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
            ++line_no;
            Statement current{line_no, {}};
            auto flush = [&](std::size_t col) {
                if (! current.tokens.empty()) {
                    current.end_column = col;
                    out.push_back(std::move(current));
                }
                current = Statement{line_no, {}};
            };
            std::size_t i = 0;
            while (i < line.size()) {
                char ch = line[i];
                if (ch == '#')
                    break;
                if (ch == ';') {
                    flush(i + 1);
                    ++i;
                    continue;
                }
                if (ch == ' ' || ch == '\t' || ch == '\r') {
                    ++i;
                    continue;
                }
                auto start = i;
                while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#' && line[i] != ';')
                    ++i;
                current.tokens.push_back({std::string(line.substr(start, i - start)), start + 1});
            }
            flush(line.size() + 1);
            if (nl == std::string_view::npos)
                break;
            pos = nl + 1;
        }
        return out;
    }

    class Cursor {
    public:
        explicit Cursor(std::string_view text) : _statements(tokenize(text)) {}

        [[nodiscard]] bool done() const { return _next == _statements.size(); }
        [[nodiscard]] const Statement & peek() const { return _statements[_next]; }
        const Statement & take() { return _statements[_next++]; }
        [[nodiscard]] std::size_t last_line() const { return _statements.empty() ? 1 : _statements.back().line; }

        const Statement & expect(std::string_view keyword)
        {
            if (done())
                throw ParseError(last_line(), 1, "expected '" + std::string(keyword) + "' but the input ended");
            const auto & s = take();
            if (s.keyword() != keyword)
                throw ParseError(s.line, s.column(0), "expected '" + std::string(keyword) + "', found '" + s.keyword() + "'");
            return s;
        }

    private:
        std::vector<Statement> _statements;
        std::size_t _next = 0;
    };

    std::size_t to_number(const Statement & s, std::size_t i, std::string_view what)
    {
        if (i >= s.tokens.size())
            throw ParseError(s.line, s.column(i), "missing " + std::string(what));
        const auto & t = s.tokens[i].text;
        std::size_t value = 0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
        if (ec != std::errc() || p != t.data() + t.size())
            throw ParseError(s.line, s.column(i), "expected a non-negative integer for " + std::string(what) + ", found '" + t + "'");
        return value;
    }

    void expect_count(const Statement & s, std::size_t count, std::string_view usage)
    {
        if (s.tokens.size() != count)
            throw ParseError(s.line, s.column(std::min(count, s.tokens.size())), "expected '" + std::string(usage) + "'");
    }

    std::vector<std::string> names_from(const Statement & s, std::size_t first)
    {
        std::vector<std::string> names;
        for (std::size_t i = first; i < s.tokens.size(); ++i)
            names.push_back(s.tokens[i].text);
        return names;
    }

    std::string join(const std::vector<std::string> & parts)
    {
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i)
                out += ' ';
            out += parts[i];
        }
        return out;
    }

    // Reads formula statements until `end` (consumed) or end of input.
    PpFormula read_formula(Cursor & cur, bool needs_end)
    {
        std::vector<std::string> free, exists;
        struct RawAtom {
            std::size_t line;
            std::size_t column;
            std::vector<Token> tokens;
            bool equality;
        };
        std::vector<RawAtom> raw;
        std::size_t first_line = cur.done() ? cur.last_line() : cur.peek().line;
        bool closed = false;
        while (! cur.done()) {
            const auto & s = cur.take();
            const auto & kw = s.keyword();
            if (kw == "end") {
                expect_count(s, 1, "end");
                closed = true;
                break;
            }
            if (kw == "free") {
                auto n = names_from(s, 1);
                free.insert(free.end(), n.begin(), n.end());
            }
            else if (kw == "exists") {
                auto n = names_from(s, 1);
                exists.insert(exists.end(), n.begin(), n.end());
            }
            else if (kw == "atom") {
                if (s.tokens.size() < 2)
                    throw ParseError(s.line, s.column(1), "expected 'atom <relation> <variables...>'");
                raw.push_back({s.line, s.column(0), {s.tokens.begin() + 1, s.tokens.end()}, false});
            }
            else if (kw == "eq") {
                expect_count(s, 3, "eq <x> <y>");
                raw.push_back({s.line, s.column(0), {s.tokens.begin() + 1, s.tokens.end()}, true});
            }
            else
                throw ParseError(s.line, s.column(0), "unknown formula statement '" + kw + "'");
        }
        if (needs_end && ! closed)
            throw ParseError(cur.last_line(), 1, "formula is missing 'end'");
        if (free.empty())
            throw ParseError(first_line, 1, "formula has no free variables");

        std::map<std::string, std::size_t> index;
        for (const auto & v : free)
            index.emplace(v, index.size());
        for (const auto & v : exists)
            index.emplace(v, index.size());
        auto lookup = [&](const Token & t, std::size_t line) {
            auto it = index.find(t.text);
            if (it == index.end())
                throw ParseError(line, t.column, "undeclared variable '" + t.text + "'");
            return it->second;
        };
        std::vector<PpAtom> atoms;
        for (const auto & a : raw) {
            if (a.equality)
                atoms.emplace_back(EqualityAtom{lookup(a.tokens[0], a.line), lookup(a.tokens[1], a.line)});
            else {
                RelationAtom atom{a.tokens[0].text, {}};
                for (std::size_t i = 1; i < a.tokens.size(); ++i)
                    atom.vars.push_back(lookup(a.tokens[i], a.line));
                atoms.emplace_back(std::move(atom));
            }
        }
        try {
            return PpFormula(std::move(free), std::move(exists), std::move(atoms));
        }
        catch (const Error & e) {
            throw ParseError(first_line, 1, e.what());
        }
    }

    std::string formula_text(const PpFormula & phi, std::string_view indent)
    {
        std::ostringstream out;
        const auto & vars = phi.variables();
        std::vector<std::string> free(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(phi.free_count()));
        std::vector<std::string> exists(vars.begin() + static_cast<std::ptrdiff_t>(phi.free_count()), vars.end());
        out << indent << "free " << join(free) << '\n';
        if (! exists.empty())
            out << indent << "exists " << join(exists) << '\n';
        for (const auto & atom : phi.atoms()) {
            if (const auto * r = std::get_if<RelationAtom>(&atom)) {
                out << indent << "atom " << r->relation;
                for (auto v : r->vars)
                    out << ' ' << vars[v];
                out << '\n';
            }
            else {
                const auto & e = std::get<EqualityAtom>(atom);
                out << indent << "eq " << vars[e.left] << ' ' << vars[e.right] << '\n';
            }
        }
        return out.str();
    }
}

RelationalStructure parse_structure(std::string_view text)
{
    Cursor cur(text);
    if (cur.done())
        throw ParseError(1, 1, "empty structure file");
    const auto & head = cur.expect("structure");
    expect_count(head, 2, "structure <name>");
    auto name = head.tokens[1].text;

    const auto & dom = cur.expect("domain");
    auto d = to_number(dom, 1, "domain size");
    auto element_names = names_from(dom, 2);
    if (! element_names.empty() && element_names.size() != d)
        throw ParseError(dom.line, dom.column(2), "domain " + std::to_string(d) + " lists " + std::to_string(element_names.size()) + " names");
    std::map<std::string, Element> by_name;
    for (std::size_t i = 0; i < element_names.size(); ++i)
        if (! by_name.emplace(element_names[i], static_cast<Element>(i)).second)
            throw ParseError(dom.line, dom.column(2 + i), "duplicate element name '" + element_names[i] + "'");

    std::vector<RelationSymbol> symbols;
    std::vector<std::vector<Tuple>> relations;
    while (! cur.done()) {
        const auto & rel = cur.expect("relation");
        expect_count(rel, 3, "relation <name> <arity>");
        auto arity = to_number(rel, 2, "arity");
        symbols.push_back({rel.tokens[1].text, arity});
        relations.emplace_back();
        bool closed = false;
        while (! cur.done()) {
            const auto & s = cur.take();
            if (s.keyword() == "end") {
                expect_count(s, 1, "end");
                closed = true;
                break;
            }
            if (s.tokens.size() != arity)
                throw ParseError(s.line, s.column(0), "tuple has " + std::to_string(s.tokens.size()) + " entries, relation '"
                        + rel.tokens[1].text + "' has arity " + std::to_string(arity));
            Tuple t;
            for (std::size_t i = 0; i < s.tokens.size(); ++i) {
                auto it = by_name.find(s.tokens[i].text);
                std::size_t e = it != by_name.end() ? it->second : to_number(s, i, "element");
                if (e >= d)
                    throw ParseError(s.line, s.column(i), "element " + std::to_string(e) + " is outside the domain of size " + std::to_string(d));
                t.push_back(static_cast<Element>(e));
            }
            relations.back().push_back(std::move(t));
        }
        if (! closed)
            throw ParseError(cur.last_line(), 1, "relation '" + rel.tokens[1].text + "' is missing 'end'");
    }
    RelationalStructure s(std::move(name), d, Signature(std::move(symbols)), std::move(relations), std::move(element_names));
    require_valid(s);
    return s;
}

std::string print_structure(const RelationalStructure & s)
{
    std::ostringstream out;
    out << "structure " << s.name() << '\n' << "domain " << s.domain_size();
    for (const auto & n : s.element_names())
        out << ' ' << n;
    out << '\n';
    for (std::size_t r = 0; r < s.relations().size(); ++r) {
        out << "relation " << s.signature()[r].name << ' ' << s.signature()[r].arity << '\n';
        for (const auto & t : s.relation(r).tuples()) {
            for (std::size_t i = 0; i < t.size(); ++i)
                out << (i ? " " : "") << s.element_name(t[i]);
            out << '\n';
        }
        out << "end\n";
    }
    return out.str();
}

InstanceFile parse_instance(std::string_view text, const Signature * signature)
{
    Cursor cur(text);
    if (cur.done())
        throw ParseError(1, 1, "empty instance file");
    const auto & head = cur.expect("instance");
    expect_count(head, 2, "instance <name>");

    std::vector<std::string> variables;
    std::map<std::string, std::size_t> var_index;
    auto variable = [&](const std::string & v) {
        auto [it, inserted] = var_index.emplace(v, variables.size());
        if (inserted)
            variables.push_back(v);
        return it->second;
    };

    std::vector<RelationSymbol> symbols = signature ? signature->symbols() : std::vector<RelationSymbol>{};
    auto relation_index = [&](const Statement & s, const std::string & rel, std::size_t arity) {
        for (std::size_t i = 0; i < symbols.size(); ++i)
            if (symbols[i].name == rel) {
                if (symbols[i].arity != arity)
                    throw ParseError(s.line, s.column(0), "relation '" + rel + "' has arity " + std::to_string(symbols[i].arity)
                            + ", constraint lists " + std::to_string(arity) + " variables");
                return i;
            }
        if (signature)
            throw ParseError(s.line, s.column(s.keyword() == "triple" ? 0 : 1), "unknown relation '" + rel + "'");
        symbols.push_back({rel, arity});
        return symbols.size() - 1;
    };

    std::vector<Constraint> constraints;
    std::vector<TripleInstance::Triple> triples;
    bool only_triples = true;
    while (! cur.done()) {
        const auto & s = cur.take();
        const auto & kw = s.keyword();
        if (kw == "var") {
            for (std::size_t i = 1; i < s.tokens.size(); ++i)
                variable(s.tokens[i].text);
        }
        else if (kw == "triple") {
            expect_count(s, 4, "triple <x> <y> <z>");
            auto rel = relation_index(s, "R", 3);
            Constraint c{rel, {variable(s.tokens[1].text), variable(s.tokens[2].text), variable(s.tokens[3].text)}};
            triples.push_back({c.scope[0], c.scope[1], c.scope[2]});
            constraints.push_back(std::move(c));
        }
        else if (kw == "constraint") {
            if (s.tokens.size() < 2)
                throw ParseError(s.line, s.column(1), "expected 'constraint <relation> <variables...>'");
            auto rel = relation_index(s, s.tokens[1].text, s.tokens.size() - 2);
            Constraint c{rel, {}};
            for (std::size_t i = 2; i < s.tokens.size(); ++i)
                c.scope.push_back(variable(s.tokens[i].text));
            constraints.push_back(std::move(c));
            only_triples = false;
        }
        else
            throw ParseError(s.line, s.column(0), "unknown instance statement '" + kw + "'");
    }

    InstanceFile file{head.tokens[1].text, TripleInstance({}, {})};
    if (only_triples && ! signature)
        file.content = TripleInstance(std::move(variables), std::move(triples));
    else
        file.content = Instance(Signature(std::move(symbols)), std::move(variables), std::move(constraints));
    return file;
}

std::string print_instance(const Instance & x, std::string_view name)
{
    std::ostringstream out;
    out << "instance " << name << '\n';
    if (x.variable_count())
        out << "var " << join(x.variables()) << '\n';
    for (const auto & c : x.constraints()) {
        out << "constraint " << x.signature()[c.relation].name;
        for (auto v : c.scope)
            out << ' ' << x.variables()[v];
        out << '\n';
    }
    return out.str();
}

std::string print_instance(const TripleInstance & x, std::string_view name)
{
    std::ostringstream out;
    out << "instance " << name << '\n';
    if (x.variable_count())
        out << "var " << join(x.variables()) << '\n';
    for (const auto & t : x.triples())
        out << "triple " << x.variables()[t[0]] << ' ' << x.variables()[t[1]] << ' ' << x.variables()[t[2]] << '\n';
    return out.str();
}

OperationTable parse_operation_table(std::string_view text)
{
    Cursor cur(text);
    if (cur.done())
        throw ParseError(1, 1, "empty operation table");
    const auto & head = cur.expect("op");
    expect_count(head, 3, "op <arity> <domain-size>");
    auto arity = to_number(head, 1, "arity");
    auto d = to_number(head, 2, "domain size");
    if (d == 0)
        throw ParseError(head.line, head.column(2), "domain size must be positive");
    std::uint64_t cells = 0;
    try {
        cells = checked_power(d, arity, Limits{}.max_cells, "operation table");
    }
    catch (const Error & e) {
        throw ParseError(head.line, head.column(1), e.what());
    }
    std::vector<Element> values;
    while (! cur.done()) {
        const auto & s = cur.take();
        for (std::size_t i = 0; i < s.tokens.size(); ++i) {
            auto v = to_number(s, i, "table value");
            if (v >= d)
                throw ParseError(s.line, s.column(i), "value " + std::to_string(v) + " is outside the domain of size " + std::to_string(d));
            if (values.size() == cells)
                throw ParseError(s.line, s.column(i), "more than " + std::to_string(cells) + " table values");
            values.push_back(static_cast<Element>(v));
        }
    }
    if (values.size() != cells)
        throw ParseError(cur.last_line(), 1, "expected " + std::to_string(cells) + " table values, found " + std::to_string(values.size()));
    return OperationTable(arity, d, std::move(values));
}

std::string print_operation_table(const OperationTable & table)
{
    std::ostringstream out;
    out << "op " << table.arity() << ' ' << table.domain_size() << '\n';
    for (std::size_t i = 0; i < table.values().size(); ++i)
        out << (i ? " " : "") << table.values()[i];
    out << '\n';
    return out.str();
}

PpFormula parse_pp_formula(std::string_view text)
{
    Cursor cur(text);
    if (cur.done())
        throw ParseError(1, 1, "empty formula");
    auto phi = read_formula(cur, false);
    return phi;
}

std::string print_pp_formula(const PpFormula & phi) { return formula_text(phi, ""); }

PpPowerSpec parse_pp_power(std::string_view text)
{
    Cursor cur(text);
    if (cur.done())
        throw ParseError(1, 1, "empty pp-power specification");
    const auto & head = cur.expect("pppower");
    expect_count(head, 2, "pppower <exponent>");
    PpPowerSpec spec;
    spec.exponent = to_number(head, 1, "exponent");
    if (spec.exponent == 0)
        throw ParseError(head.line, head.column(1), "exponent must be positive");
    while (! cur.done()) {
        const auto & rel = cur.expect("relation");
        expect_count(rel, 3, "relation <name> <arity>");
        PpOutputRelation out{rel.tokens[1].text, to_number(rel, 2, "arity"), {}};
        out.formula = read_formula(cur, true);
        if (out.formula.free_count() != out.arity * spec.exponent)
            throw ParseError(rel.line, rel.column(2), "relation '" + out.name + "' needs " + std::to_string(out.arity * spec.exponent)
                    + " free variables, formula has " + std::to_string(out.formula.free_count()));
        spec.relations.push_back(std::move(out));
    }
    return spec;
}

std::string print_pp_power(const PpPowerSpec & spec)
{
    std::ostringstream out;
    out << "pppower " << spec.exponent << '\n';
    for (const auto & r : spec.relations)
        out << "relation " << r.name << ' ' << r.arity << '\n' << formula_text(r.formula, "  ") << "end\n";
    return out.str();
}

Matrix parse_matrix(std::string_view text)
{
    Cursor cur(text);
    if (cur.done())
        throw ParseError(1, 1, "empty matrix file");
    const auto & head = cur.take();
    expect_count(head, 1, "<p>");
    auto p = to_number(head, 0, "matrix side");
    if (p < 2)
        throw ParseError(head.line, head.column(0), "matrix side must be at least 2");
    std::vector<Element> entries;
    for (std::size_t r = 0; r < p; ++r) {
        if (cur.done())
            throw ParseError(cur.last_line(), 1, "expected " + std::to_string(p) + " rows, found " + std::to_string(r));
        const auto & s = cur.take();
        if (s.tokens.size() != p)
            throw ParseError(s.line, s.column(std::min(p, s.tokens.size())), "row has " + std::to_string(s.tokens.size()) + " entries, expected " + std::to_string(p));
        for (std::size_t i = 0; i < p; ++i) {
            auto v = to_number(s, i, "entry");
            if (v > 1)
                throw ParseError(s.line, s.column(i), "matrix entries must be 0 or 1");
            entries.push_back(static_cast<Element>(v));
        }
    }
    if (! cur.done())
        throw ParseError(cur.peek().line, cur.peek().column(0), "unexpected text after the last row");
    return Matrix(p, std::move(entries));
}

std::string print_matrix(const Matrix & x)
{
    std::ostringstream out;
    out << x.side() << '\n';
    for (std::size_t r = 0; r < x.side(); ++r) {
        for (std::size_t c = 0; c < x.side(); ++c)
            out << (c ? " " : "") << x.at(r, c);
        out << '\n';
    }
    return out.str();
}

std::string print_assignment(const std::vector<std::string> & variables, const Assignment & a)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < variables.size() && i < a.size(); ++i)
        out << variables[i] << " = " << a[i] << '\n';
    return out.str();
}

} // namespace pcspwb
