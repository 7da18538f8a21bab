/// @file error.hpp
/// @brief Error kinds raised by the library. Every failure carries a kind so
/// the CLI can map it onto an exit code.
#pragma once

#include <stdexcept>
#include <string>

namespace axicyl {

enum class ErrorKind {
    invalid_dimension,
    invalid_argument,
    missing_boundary_tag,
    grid_mismatch,
    parity_mismatch,
    empty_series,
    mismatched_mesh,
    unsupported_order,
    pole_evaluation,
    unresolvable_profile,
    infeasible_parameters,
    non_convergence,
    numerical_failure,
    config_error,
    io_error,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace axicyl
