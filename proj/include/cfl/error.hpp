#pragma once

#include <stdexcept>
#include <string>

namespace cfl {

/// Error codes for everything that can be rejected at construction or
/// evaluation time. CLI maps invalid-input codes to exit status 2.
enum class errc {
    not_half_integer,
    non_positive,
    out_of_supported_range,
    out_of_range_acceleration_index,
    invalid_dynamical_exponent,
    parameter_mismatch,
    inadmissible_ell,
    non_positive_density_domain,
    empty_positivity_domain,
    branch_collision,
    no_bounded_solution,
    no_root_in_bracket,
    ambiguous_root,
    domain_exceeded,
    depth_exceeded,
    pole_in_domain,
    invalid_argument,
    io_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_half_integer: return "NotHalfInteger";
        case errc::non_positive: return "NonPositive";
        case errc::out_of_supported_range: return "OutOfSupportedRange";
        case errc::out_of_range_acceleration_index: return "OutOfRangeAccelerationIndex";
        case errc::invalid_dynamical_exponent: return "InvalidDynamicalExponent";
        case errc::parameter_mismatch: return "ParameterMismatch";
        case errc::inadmissible_ell: return "InadmissibleEll";
        case errc::non_positive_density_domain: return "NonPositiveDensityDomain";
        case errc::empty_positivity_domain: return "EmptyPositivityDomain";
        case errc::branch_collision: return "BranchCollision";
        case errc::no_bounded_solution: return "NoBoundedSolution";
        case errc::no_root_in_bracket: return "NoRootInBracket";
        case errc::ambiguous_root: return "AmbiguousRoot";
        case errc::domain_exceeded: return "DomainExceeded";
        case errc::depth_exceeded: return "DepthExceeded";
        case errc::pole_in_domain: return "PoleInDomain";
        case errc::invalid_argument: return "InvalidArgument";
        case errc::io_error: return "IoError";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace cfl
