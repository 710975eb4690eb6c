#include <pcspwb/cli.hpp>

#include <pcspwb/hom_solver.hpp>
#include <pcspwb/pcsp13.hpp>
#include <pcspwb/polymorphisms.hpp>
#include <pcspwb/ppcon.hpp>
#include <pcspwb/proof_lab.hpp>
#include <pcspwb/text_io.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace pcspwb {

namespace {
    std::string read_file(const std::string & path)
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw Error(ErrorCode::unknown_name, "cannot read '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    RelationalStructure load_template(const std::string & spec)
    {
        auto names = builtin_template_names();
        if (std::find(names.begin(), names.end(), spec) != names.end())
            return builtin_template(spec);
        return parse_structure(read_file(spec));
    }

    BlackBoxOperation load_operation(const std::string & spec, std::size_t arity)
    {
        if (spec == "parity")
            return BlackBoxOperation::parity(arity);
        if (spec == "threshold-at-half")
            return BlackBoxOperation::threshold_at_half(arity);
        if (spec == "projection")
            return BlackBoxOperation::projection(arity, 2, 0);
        auto table = parse_operation_table(read_file(spec));
        if (table.arity() != arity)
            throw Error(ErrorCode::arity_mismatch, "operation table has arity " + std::to_string(table.arity()) + ", expected "
                    + std::to_string(arity));
        return BlackBoxOperation::from_table(table, spec);
    }

    Assignment identity_or(const std::vector<Element> & g, std::size_t d)
    {
        if (! g.empty())
            return g;
        Assignment id(d);
        for (std::size_t i = 0; i < d; ++i)
            id[i] = static_cast<Element>(i);
        return id;
    }

    TripleInstance as_triples(const InstanceFile & file)
    {
        if (const auto * t = std::get_if<TripleInstance>(&file.content))
            return *t;
        const auto & x = std::get<Instance>(file.content);
        if (x.signature().size() != 1 || x.signature()[0].arity != 3)
            throw Error(ErrorCode::signature_mismatch, "expected a single ternary relation");
        std::vector<TripleInstance::Triple> triples;
        for (const auto & c : x.constraints())
            triples.push_back({c.scope[0], c.scope[1], c.scope[2]});
        return TripleInstance(x.variables(), std::move(triples));
    }

    std::string tuple_text(const Tuple & t, const RelationalStructure & s)
    {
        std::string out;
        for (std::size_t i = 0; i < t.size(); ++i)
            out += (i ? " " : "") + s.element_name(t[i]);
        return out;
    }

    std::string list_text(const Assignment & a)
    {
        std::string out;
        for (std::size_t i = 0; i < a.size(); ++i)
            out += (i ? " " : "") + std::to_string(a[i]);
        return out;
    }

    int status_exit(PolymorphismStatus s)
    {
        switch (s) {
        case PolymorphismStatus::found: return exit_yes;
        case PolymorphismStatus::none: return exit_no;
        case PolymorphismStatus::limit_exceeded: return exit_resource;
        }
        return exit_usage;
    }

    std::string_view status_name(PolymorphismStatus s)
    {
        switch (s) {
        case PolymorphismStatus::found: return "found";
        case PolymorphismStatus::none: return "none";
        case PolymorphismStatus::limit_exceeded: return "limit-exceeded";
        }
        return "unknown";
    }

    struct Options {
        std::string template_a, template_b, instance, file, file2, file3, method = "z", value_order = "ascending", s = "parity";
        std::size_t arity = 2, max_prime = 5, n = 10, m = 20, p = 127, c_size = 0;
        std::uint64_t seed = 0;
        bool cyclic = false, override_bound = false;
        std::vector<Element> g;
    };
}

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    Options o;
    CLI::App app{"Constraint satisfaction workbench", "pcspwb"};
    app.require_subcommand(1);

    auto add_template = [&](CLI::App * cmd, bool pair) {
        cmd->add_option("--template", o.template_a, "builtin template name or structure file")->required();
        if (pair)
            cmd->add_option("--target", o.template_b, "second template of the pair (defaults to --template)");
    };
    auto add_s = [&](CLI::App * cmd) {
        cmd->add_option("--s", o.s, "parity, threshold-at-half, projection, or an operation table file");
        cmd->add_option("--g", o.g, "g as a comma-separated list of values (default identity)")->delimiter(',');
    };

    auto * csp = app.add_subcommand("solve-csp", "find a homomorphism from an instance to a template");
    add_template(csp, false);
    csp->add_option("instance", o.instance)->required();
    csp->add_option("--value-order", o.value_order)->check(CLI::IsMember({"ascending", "descending", "shuffled"}));
    csp->add_option("--seed", o.seed);

    auto * pcsp = app.add_subcommand("solve-pcsp13nae", "decide PCSP(1-in-3, NAE) on a triple instance");
    pcsp->add_option("instance", o.instance)->required();
    pcsp->add_option("--method", o.method)->check(CLI::IsMember({"z", "q"}));

    auto * poly = app.add_subcommand("poly", "polymorphisms");
    poly->require_subcommand(1);
    auto * poly_find = poly->add_subcommand("find", "search a polymorphism of given arity");
    add_template(poly_find, true);
    poly_find->add_option("--arity", o.arity)->required();
    poly_find->add_flag("--cyclic", o.cyclic);
    auto * poly_check = poly->add_subcommand("check", "check an operation table");
    add_template(poly_check, true);
    poly_check->add_option("table", o.file)->required();
    poly_check->add_flag("--cyclic", o.cyclic);
    auto * poly_survey = poly->add_subcommand("survey", "cyclic polymorphisms at every prime arity up to a cap");
    add_template(poly_survey, true);
    poly_survey->add_option("--max-prime", o.max_prime);
    auto * poly_siggers = poly->add_subcommand("pseudo-siggers", "search a 6-ary pseudo-Siggers polymorphism");
    add_template(poly_siggers, false);

    auto * pp = app.add_subcommand("pp", "pp-definitions, pp-powers and relaxations");
    pp->require_subcommand(1);
    auto * pp_eval = pp->add_subcommand("eval", "evaluate a pp-formula");
    add_template(pp_eval, false);
    pp_eval->add_option("formula", o.file)->required();
    auto * pp_power_cmd = pp->add_subcommand("power", "pp-power of a template pair");
    add_template(pp_power_cmd, true);
    pp_power_cmd->add_option("spec", o.file)->required();
    auto * pp_relax = pp->add_subcommand("relax", "check a homomorphic relaxation");
    add_template(pp_relax, true);
    pp_relax->add_option("relaxed-a", o.file)->required();
    pp_relax->add_option("relaxed-b", o.file2)->required();
    auto * pp_gadget = pp->add_subcommand("gadget", "reduce an instance of a pp-power to the base template");
    add_template(pp_gadget, false);
    pp_gadget->add_option("spec", o.file)->required();
    pp_gadget->add_option("instance", o.instance)->required();

    auto * lab = app.add_subcommand("prooflab", "matrix machinery for cyclic operations");
    lab->require_subcommand(1);
    auto * lab_t = lab->add_subcommand("t", "evaluate t on a matrix");
    lab_t->add_option("matrix", o.file)->required();
    add_s(lab_t);
    auto * lab_area = lab->add_subcommand("area", "fraction of ones");
    lab_area->add_option("matrix", o.file)->required();
    auto * lab_cover = lab->add_subcommand("cover", "check the cover lemma on three matrices");
    lab_cover->add_option("x", o.file)->required();
    lab_cover->add_option("y", o.file2)->required();
    lab_cover->add_option("z", o.file3)->required();
    lab_cover->add_option("--template", o.template_a);
    add_s(lab_cover);
    auto * lab_tame = lab->add_subcommand("tame", "tameness of a matrix");
    lab_tame->add_option("matrix", o.file)->required();
    add_s(lab_tame);
    auto * lab_refute = lab->add_subcommand("refute", "run the contradiction construction against s");
    lab_refute->add_option("--p", o.p);
    lab_refute->add_option("--c-size", o.c_size, "template size (default: the template's)");
    lab_refute->add_option("--template", o.template_a);
    lab_refute->add_flag("--override-bound", o.override_bound);
    add_s(lab_refute);

    auto * gen = app.add_subcommand("gen", "instance generators");
    gen->require_subcommand(1);
    auto * planted_cmd = gen->add_subcommand("planted", "random triple instance with a planted 1-in-3 solution");
    planted_cmd->add_option("--n", o.n);
    planted_cmd->add_option("--m", o.m);
    planted_cmd->add_option("--seed", o.seed);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_yes;
    }
    catch (const CLI::ParseError & e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        auto limits = Limits::from_env();
        if (o.template_b.empty())
            o.template_b = o.template_a;
        if (lab_cover->parsed() || lab_refute->parsed())
            if (o.template_a.empty())
                o.template_a = "one-in-three";

        if (csp->parsed()) {
            auto a = load_template(o.template_a);
            auto file = parse_instance(read_file(o.instance), &a.signature());
            const auto & x = std::get<Instance>(file.content);
            auto cfg = SolverConfig::from_limits(limits);
            cfg.value_order = o.value_order == "descending" ? ValueOrder::descending
                : o.value_order == "shuffled"              ? ValueOrder::shuffled
                                                           : ValueOrder::ascending;
            cfg.seed = o.seed;
            auto r = find_homomorphism(x, a, cfg);
            if (r.status == SearchStatus::limit_exceeded) {
                out << "result = limit-exceeded\n";
                return exit_resource;
            }
            if (r.status == SearchStatus::none) {
                out << "result = none\n";
                return exit_no;
            }
            out << "result = found\n";
            for (std::size_t v = 0; v < x.variable_count(); ++v)
                out << x.variables()[v] << " = " << a.element_name((*r.assignment)[v]) << '\n';
            return exit_yes;
        }

        if (pcsp->parsed()) {
            auto x = as_triples(parse_instance(read_file(o.instance)));
            auto answer = solve_pcsp(x, o.method == "q" ? PcspMethod::rationals : PcspMethod::integers);
            if (answer.verdict == Verdict::no) {
                out << "verdict = no\n";
                return exit_no;
            }
            if (! verify_assignment(x, *answer.assignment, TripleMode::nae))
                throw Error(ErrorCode::not_a_homomorphism, "internal: witness fails NAE verification");
            out << "verdict = yes\n" << print_assignment(x.variables(), *answer.assignment);
            return exit_yes;
        }

        if (poly_find->parsed()) {
            auto a = load_template(o.template_a), b = load_template(o.template_b);
            auto r = find_polymorphism(a, b, o.arity, o.cyclic ? SymmetryConstraint::cyclic : SymmetryConstraint::none, limits);
            out << "result = " << status_name(r.status) << '\n';
            if (r.table)
                out << print_operation_table(*r.table);
            return status_exit(r.status);
        }

        if (poly_check->parsed()) {
            auto a = load_template(o.template_a), b = load_template(o.template_b);
            auto table = parse_operation_table(read_file(o.file));
            bool poly_ok = is_pcsp_polymorphism(table, a, b);
            out << "polymorphism = " << (poly_ok ? "true" : "false") << '\n';
            bool ok = poly_ok;
            if (o.cyclic) {
                bool cyc = is_cyclic(table);
                out << "cyclic = " << (cyc ? "true" : "false") << '\n';
                ok = ok && cyc;
            }
            return ok ? exit_yes : exit_no;
        }

        if (poly_survey->parsed()) {
            auto a = load_template(o.template_a), b = load_template(o.template_b);
            bool any = false;
            for (const auto & e : cyclic_survey(a, b, o.max_prime, limits)) {
                out << "arity " << e.arity << " = " << status_name(e.status) << '\n';
                if (e.status == PolymorphismStatus::limit_exceeded)
                    return exit_resource;
                any = any || e.status == PolymorphismStatus::found;
            }
            return any ? exit_yes : exit_no;
        }

        if (poly_siggers->parsed()) {
            auto c = load_template(o.template_a);
            auto w = pseudo_siggers_search(c, limits);
            if (! w) {
                out << "result = none\n";
                return exit_no;
            }
            out << "result = found\n"
                << "alpha = " << list_text(w->alpha) << '\n'
                << "beta = " << list_text(w->beta) << '\n'
                << print_operation_table(w->s);
            return exit_yes;
        }

        if (pp_eval->parsed()) {
            auto a = load_template(o.template_a);
            auto tuples = evaluate_pp(parse_pp_formula(read_file(o.file)), a, limits);
            out << "tuples = " << tuples.size() << '\n';
            for (const auto & t : tuples)
                out << tuple_text(t, a) << '\n';
            return tuples.empty() ? exit_no : exit_yes;
        }

        if (pp_power_cmd->parsed()) {
            auto a = load_template(o.template_a), b = load_template(o.template_b);
            auto [ap, bp] = pp_power(parse_pp_power(read_file(o.file)), a, b, limits);
            out << print_structure(ap) << print_structure(bp);
            return exit_yes;
        }

        if (pp_relax->parsed()) {
            auto a = load_template(o.template_a), b = load_template(o.template_b);
            auto ar = load_template(o.file), br = load_template(o.file2);
            auto w = check_relaxation(ar, br, a, b, limits);
            if (! w) {
                out << "relaxation = false\n";
                return exit_no;
            }
            out << "relaxation = true\n"
                << "f = " << list_text(w->f) << '\n'
                << "g = " << list_text(w->g) << '\n';
            return exit_yes;
        }

        if (pp_gadget->parsed()) {
            auto a = load_template(o.template_a);
            auto spec = parse_pp_power(read_file(o.file));
            auto sig = spec.output_signature();
            auto file = parse_instance(read_file(o.instance), &sig);
            auto reduced = gadget_reduce(std::get<Instance>(file.content), spec, a.signature());
            out << print_instance(reduced.instance, file.name + "-reduced");
            return exit_yes;
        }

        if (lab_t->parsed()) {
            auto x = parse_matrix(read_file(o.file));
            auto s = load_operation(o.s, x.side());
            out << "t = " << eval_t(s, x) << '\n';
            return exit_yes;
        }

        if (lab_area->parsed()) {
            out << "area = " << area(parse_matrix(read_file(o.file))).get_str() << '\n';
            return exit_yes;
        }

        if (lab_cover->parsed()) {
            auto x = parse_matrix(read_file(o.file)), y = parse_matrix(read_file(o.file2)), z = parse_matrix(read_file(o.file3));
            auto s = load_operation(o.s, x.side());
            auto c = load_template(o.template_a);
            auto v = check_cover_lemma(x, y, z, s, identity_or(o.g, s.domain_size()), c);
            out << "pass = " << (v.pass ? "true" : "false") << '\n'
                << "t_values = " << list_text({v.t_values.begin(), v.t_values.end()}) << '\n'
                << "g_values = " << list_text({v.g_values.begin(), v.g_values.end()}) << '\n'
                << "diagnostic = " << to_string(v.diagnostic) << '\n';
            if (v.failing_column)
                out << "failing_column = " << *v.failing_column << '\n';
            if (! v.detail.empty())
                out << "detail = " << v.detail << '\n';
            return v.pass ? exit_yes : exit_no;
        }

        if (lab_tame->parsed()) {
            auto x = parse_matrix(read_file(o.file));
            auto s = load_operation(o.s, x.side());
            auto v = is_tame(x, s, identity_or(o.g, s.domain_size()));
            out << "area = " << area(x).get_str() << '\n'
                << "side = " << (v.side == AreaSide::below_third ? "below" : "above") << '\n'
                << "tame = " << (v.tame ? "true" : "false") << '\n';
            return v.tame ? exit_yes : exit_no;
        }

        if (lab_refute->parsed()) {
            auto s = load_operation(o.s, o.p);
            auto c = load_template(o.template_a);
            if (c.relations().empty() || c.relation(0).arity() != 3)
                throw Error(ErrorCode::signature_mismatch, "refute needs a template whose first relation is ternary");
            const auto & r = c.relation(0);
            auto in_relation = [&](Element a, Element b, Element d) {
                Tuple t{a, b, d};
                return a < c.domain_size() && b < c.domain_size() && d < c.domain_size() && r.contains(t);
            };
            RefuteOptions options;
            options.override_bound = o.override_bound;
            auto c_size = o.c_size ? o.c_size : c.domain_size();
            auto report = refute_cyclic(s, c_size, identity_or(o.g, s.domain_size()), in_relation, options);
            out << format_report(report);
            return exit_yes;
        }

        if (planted_cmd->parsed()) {
            out << print_instance(gen_planted(o.n, o.m, o.seed), "planted");
            return exit_yes;
        }
    }
    catch (const Error & e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::resource_limit_exceeded ? exit_resource : exit_usage;
    }
    return exit_usage;
}

} // namespace pcspwb
