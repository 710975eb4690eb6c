#pragma once

#include <pcspwb/core.hpp>
#include <pcspwb/pcsp13.hpp>
#include <pcspwb/polymorphisms.hpp>
#include <pcspwb/ppcon.hpp>
#include <pcspwb/proof_lab.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace pcspwb {

// Line-oriented formats. `#` starts a comment, `;` separates statements on one line.
// The grammars are in docs/formats.md.

[[nodiscard]] RelationalStructure parse_structure(std::string_view text);
[[nodiscard]] std::string print_structure(const RelationalStructure & s);

struct InstanceFile {
    std::string name;
    std::variant<Instance, TripleInstance> content;
};

/// A file using only `triple` lines gives a TripleInstance; otherwise an Instance in
/// which `triple x y z` stands for `constraint R x y z`. With a signature, relation
/// names and arities are checked against it; without one the signature is collected
/// from the file in order of first use.
[[nodiscard]] InstanceFile parse_instance(std::string_view text, const Signature * signature = nullptr);
[[nodiscard]] std::string print_instance(const Instance & x, std::string_view name = "x");
[[nodiscard]] std::string print_instance(const TripleInstance & x, std::string_view name = "x");

[[nodiscard]] OperationTable parse_operation_table(std::string_view text);
[[nodiscard]] std::string print_operation_table(const OperationTable & table);

[[nodiscard]] PpFormula parse_pp_formula(std::string_view text);
[[nodiscard]] std::string print_pp_formula(const PpFormula & phi);

[[nodiscard]] PpPowerSpec parse_pp_power(std::string_view text);
[[nodiscard]] std::string print_pp_power(const PpPowerSpec & spec);

[[nodiscard]] Matrix parse_matrix(std::string_view text);
[[nodiscard]] std::string print_matrix(const Matrix & x);

/// One `name = value` line per variable.
[[nodiscard]] std::string print_assignment(const std::vector<std::string> & variables, const Assignment & a);

} // namespace pcspwb
