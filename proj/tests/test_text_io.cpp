#include <pcspwb/text_io.hpp>

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace pcspwb;

namespace {
std::string data(const std::string & name)
{
    std::ifstream in(std::string(PCSPWB_TEST_DIR) + "/data/" + name);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

template <typename Fn>
ParseError parse_failure(Fn && fn)
{
    try {
        fn();
    }
    catch (const ParseError & e) {
        return e;
    }
    FAIL("expected a parse error");
    return ParseError(0, 0, "");
}
}

TEST_CASE("structure files")
{
    auto s = parse_structure(data("one-in-three.structure"));
    CHECK(s.same_content(builtin_template("one-in-three")));
    CHECK(parse_structure(print_structure(s)).same_content(s));

    auto named = parse_structure(data("named.structure"));
    CHECK(named.domain_size() == 3);
    CHECK(named.relation(0).size() == 3);
    CHECK(named.element_name(2) == "blue");
    auto again = parse_structure(print_structure(named));
    CHECK(again.same_content(named));
    CHECK(again.element_names() == named.element_names());

    auto bad = parse_failure([] { (void) parse_structure(data("bad-arity.structure")); });
    CHECK(bad.line() == 5);
    CHECK(bad.column() == 1);

    auto empty = parse_failure([] { (void) parse_structure("# nothing\n"); });
    CHECK(empty.line() == 1);

    auto outside = parse_failure([] { (void) parse_structure("structure s\ndomain 2\nrelation R 1\n  2\nend\n"); });
    CHECK(outside.line() == 4);
    CHECK(outside.column() == 3);

    parse_failure([] { (void) parse_structure("structure s\ndomain 2\nrelation R 1\n0\n"); });
    parse_failure([] { (void) parse_structure("structure s\ndomain two\n"); });
}

TEST_CASE("instance files")
{
    auto t = parse_instance("instance one\ntriple x y z\n");
    REQUIRE(std::holds_alternative<TripleInstance>(t.content));
    const auto & ti = std::get<TripleInstance>(t.content);
    CHECK(ti.triples().size() == 1);
    CHECK(ti.variables() == std::vector<std::string>{"x", "y", "z"});
    CHECK(t.name == "one");

    auto printed = print_instance(ti, "one");
    CHECK(printed == "instance one\nvar x y z\ntriple x y z\n");
    CHECK(std::get<TripleInstance>(parse_instance(printed).content).triples() == ti.triples());

    Signature sig({{"E", 2}});
    auto tri = parse_instance(data("triangle.instance"), &sig);
    const auto & x = std::get<Instance>(tri.content);
    CHECK(x.variable_count() == 3);
    CHECK(x.constraints().size() == 3);
    auto round = parse_instance(print_instance(x, "triangle"), &sig);
    CHECK(std::get<Instance>(round.content) == x);

    auto unknown = parse_failure([&] { (void) parse_instance(data("unknown-relation.instance"), &sig); });
    CHECK(unknown.line() == 2);
    CHECK(unknown.column() == 12);

    parse_failure([&] { (void) parse_instance("instance a\nconstraint E x\n", &sig); });
    parse_failure([] { (void) parse_instance(""); });
    parse_failure([] { (void) parse_instance("instance a\ntriple x y\n"); });
    parse_failure([] { (void) parse_instance("instance a\nclause x y z\n"); });

    auto inferred = parse_instance("instance m\nconstraint E a b\ntriple a b c\n");
    const auto & mixed = std::get<Instance>(inferred.content);
    CHECK(mixed.signature().size() == 2);
    CHECK(mixed.signature()[1].name == "R");
}

TEST_CASE("operation tables")
{
    auto t = parse_operation_table("op 2 2\n0 1 1 1\n");
    CHECK(t.arity() == 2);
    CHECK(t.values() == std::vector<Element>{0, 1, 1, 1});
    CHECK(print_operation_table(t) == "op 2 2\n0 1 1 1\n");
    CHECK(parse_operation_table(print_operation_table(t)) == t);
    parse_failure([] { (void) parse_operation_table("op 2 2\n0 1 1\n"); });
    auto big = parse_failure([] { (void) parse_operation_table("op 1 2\n0 2\n"); });
    CHECK(big.line() == 2);
    CHECK(big.column() == 3);
}

TEST_CASE("pp-formulas")
{
    auto phi = parse_pp_formula(data("exists.pp"));
    CHECK(phi.free_count() == 2);
    CHECK(phi.variables() == std::vector<std::string>{"x", "y", "z"});
    REQUIRE(phi.atoms().size() == 1);
    CHECK(std::get<RelationAtom>(phi.atoms()[0]) == RelationAtom{"R", {0, 1, 2}});
    CHECK(print_pp_formula(phi) == "free x y\nexists z\natom R x y z\n");
    CHECK(parse_pp_formula(print_pp_formula(phi)) == phi);

    auto eq = parse_pp_formula("free x y ; eq x y\n");
    CHECK(std::get<EqualityAtom>(eq.atoms()[0]) == EqualityAtom{0, 1});

    auto undeclared = parse_failure([] { (void) parse_pp_formula("free x\natom R x y x\n"); });
    CHECK(undeclared.line() == 2);
    CHECK(undeclared.column() == 10);
    parse_failure([] { (void) parse_pp_formula("exists z\natom R z z z\n"); });
}

TEST_CASE("pp-power specifications")
{
    auto spec = parse_pp_power(data("paired.pppower"));
    CHECK(spec.exponent == 2);
    REQUIRE(spec.relations.size() == 1);
    CHECK(spec.relations[0].name == "P");
    CHECK(spec.relations[0].formula.free_count() == 4);
    auto again = parse_pp_power(print_pp_power(spec));
    CHECK(again.exponent == spec.exponent);
    CHECK(again.relations[0].formula == spec.relations[0].formula);
    parse_failure([] { (void) parse_pp_power("pppower 2\nrelation P 2\nfree x y\nend\n"); });
    parse_failure([] { (void) parse_pp_power("pppower 1\nrelation P 1\nfree x\n"); });
}

TEST_CASE("matrices")
{
    auto m = parse_matrix(data("tau1.matrix"));
    CHECK(m == tau(1, 3));
    CHECK(parse_matrix(print_matrix(m)) == m);
    auto row = parse_failure([] { (void) parse_matrix("2\n1 0\n1\n"); });
    CHECK(row.line() == 3);
    parse_failure([] { (void) parse_matrix("2\n1 0\n0 3\n"); });
    parse_failure([] { (void) parse_matrix("2\n1 0\n0 1\n1 1\n"); });
}

TEST_CASE("assignments")
{
    CHECK(print_assignment({"x", "y"}, {1, 0}) == "x = 1\ny = 0\n");
}
