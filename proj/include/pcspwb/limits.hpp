#pragma once

#include <cstdint>
#include <string_view>

namespace pcspwb {

/// Resource caps shared by every module that materialises exponential objects
/// (powers, indicator instances, pp-evaluations). Exceeding a cap raises
/// ErrorCode::resource_limit_exceeded; nothing is ever silently truncated.
struct Limits {
    std::uint64_t max_cells = 10'000'000;         ///< domain size of powers, indicator variables, table lengths
    std::uint64_t max_relation_size = 10'000'000; ///< tuples in a derived relation or constraints in an instance
    std::uint64_t max_nodes = 50'000'000;         ///< default search node budget

    /// Parses `key=value[,key=value...]` with keys max_cells, max_relation, max_nodes.
    static Limits parse(std::string_view text);

    /// Defaults overridden by the PCSPWB_LIMITS environment variable, when set.
    static Limits from_env();
};

/// base^exponent, or throws resource_limit_exceeded when it exceeds cap.
std::uint64_t checked_power(std::uint64_t base, std::uint64_t exponent, std::uint64_t cap, std::string_view what);

} // namespace pcspwb
