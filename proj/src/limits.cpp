#include <pcspwb/error.hpp>
#include <pcspwb/limits.hpp>

#include <charconv>
#include <cstdlib>
#include <string>

namespace pcspwb {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::arity_mismatch: return "arity-mismatch";
    case ErrorCode::element_out_of_domain: return "element-out-of-domain";
    case ErrorCode::invalid_signature: return "invalid-signature";
    case ErrorCode::signature_mismatch: return "signature-mismatch";
    case ErrorCode::resource_limit_exceeded: return "resource-limit-exceeded";
    case ErrorCode::unknown_name: return "unknown-name";
    case ErrorCode::domain_mismatch: return "domain-mismatch";
    case ErrorCode::arity_too_small: return "arity-too-small";
    case ErrorCode::not_a_homomorphism: return "not-a-homomorphism";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::non_binary_entry: return "non-binary-entry";
    case ErrorCode::range: return "range";
    case ErrorCode::not_a_cover: return "not-a-cover";
    case ErrorCode::not_prime: return "not-prime";
    case ErrorCode::bound_violation: return "bound-violation";
    case ErrorCode::pigeonhole_failure: return "pigeonhole-failure";
    case ErrorCode::partial_assignment: return "partial-assignment";
    case ErrorCode::infeasible_parameters: return "infeasible-parameters";
    case ErrorCode::coordinate_equals_one_third: return "coordinate-equals-one-third";
    case ErrorCode::area_equals_one_third: return "area-equals-one-third";
    case ErrorCode::invalid_config: return "invalid-config";
    case ErrorCode::parse_error: return "parse-error";
    }
    return "unknown-error";
}

Limits Limits::parse(std::string_view text)
{
    Limits result;
    while (! text.empty()) {
        auto comma = text.find(',');
        auto item = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        if (item.empty())
            continue;

        auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorCode::invalid_config, "limit entry '" + std::string(item) + "' lacks '='");
        auto key = item.substr(0, eq);
        auto value_text = item.substr(eq + 1);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
        if (ec != std::errc{} || ptr != value_text.data() + value_text.size() || value == 0)
            throw Error(ErrorCode::invalid_config, "bad value for limit '" + std::string(key) + "'");

        if (key == "max_cells")
            result.max_cells = value;
        else if (key == "max_relation")
            result.max_relation_size = value;
        else if (key == "max_nodes")
            result.max_nodes = value;
        else
            throw Error(ErrorCode::invalid_config, "unknown limit '" + std::string(key) + "'");
    }
    return result;
}

Limits Limits::from_env()
{
    if (const char * env = std::getenv("PCSPWB_LIMITS"))
        return parse(env);
    return Limits{};
}

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exponent, std::uint64_t cap, std::string_view what)
{
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exponent; ++i) {
        if (base != 0 && result > cap / base)
            throw Error(ErrorCode::resource_limit_exceeded,
                std::string(what) + ": " + std::to_string(base) + "^" + std::to_string(exponent) + " exceeds cap "
                    + std::to_string(cap));
        result *= base;
    }
    if (result > cap)
        throw Error(ErrorCode::resource_limit_exceeded, std::string(what) + " exceeds cap " + std::to_string(cap));
    return result;
}

} // namespace pcspwb
