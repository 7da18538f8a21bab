#include "axicyl/error.hpp"

namespace axicyl {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_dimension: return "invalid-dimension";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::missing_boundary_tag: return "missing-boundary-tag";
    case ErrorKind::grid_mismatch: return "grid-mismatch";
    case ErrorKind::parity_mismatch: return "parity-mismatch";
    case ErrorKind::empty_series: return "empty-series";
    case ErrorKind::mismatched_mesh: return "mismatched-mesh";
    case ErrorKind::unsupported_order: return "unsupported-order";
    case ErrorKind::pole_evaluation: return "pole-evaluation";
    case ErrorKind::unresolvable_profile: return "unresolvable-profile";
    case ErrorKind::infeasible_parameters: return "infeasible-parameters";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::numerical_failure: return "numerical-failure";
    case ErrorKind::config_error: return "config-error";
    case ErrorKind::io_error: return "io-error";
    }
    return "unknown";
}

}  // namespace axicyl
