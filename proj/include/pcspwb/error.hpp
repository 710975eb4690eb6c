#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pcspwb {

enum class ErrorCode {
    arity_mismatch,
    element_out_of_domain,
    invalid_signature,
    signature_mismatch,
    resource_limit_exceeded,
    unknown_name,
    domain_mismatch,
    arity_too_small,
    not_a_homomorphism,
    dimension_mismatch,
    non_binary_entry,
    range,
    not_a_cover,
    not_prime,
    bound_violation,
    pigeonhole_failure,
    partial_assignment,
    infeasible_parameters,
    coordinate_equals_one_third,
    area_equals_one_third,
    invalid_config,
    parse_error,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string & what) :
        std::runtime_error(std::string(to_string(code)) + ": " + what),
        _code(code)
    {
    }

    [[nodiscard]] ErrorCode code() const noexcept { return _code; }

private:
    ErrorCode _code;
};

/// Text-format error; line and column are 1-based, column 0 means "whole line".
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string & message) :
        Error(ErrorCode::parse_error,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        _line(line),
        _column(column)
    {
    }

    [[nodiscard]] std::size_t line() const noexcept { return _line; }
    [[nodiscard]] std::size_t column() const noexcept { return _column; }

private:
    std::size_t _line, _column;
};

} // namespace pcspwb
