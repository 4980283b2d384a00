#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aparam {

enum class ErrorKind {
    invalid_argument,
    parse_error,
    degree_dropped,
    ill_conditioned_divisor,
    no_convergence,
    unbounded,
    exhausted_candidates,
    wrong_dimension,
    cannot_separate,
    hypothesis_failed,
    not_eps_rational,
    degenerate,
    quotient_degree_unexpected,
    degenerate_parametrization,
    zero_tangent,
    outside_domain,
    pole_collision,
    unbounded_bound,
    not_parallel,
    singular_footpoint,
    empty_curve,
    no_limit,
    no_fallback_works,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_argument: return "InvalidArgument";
        case ErrorKind::parse_error: return "ParseError";
        case ErrorKind::degree_dropped: return "DegreeDropped";
        case ErrorKind::ill_conditioned_divisor: return "IllConditionedDivisor";
        case ErrorKind::no_convergence: return "NoConvergence";
        case ErrorKind::unbounded: return "Unbounded";
        case ErrorKind::exhausted_candidates: return "ExhaustedCandidates";
        case ErrorKind::wrong_dimension: return "WrongDimension";
        case ErrorKind::cannot_separate: return "CannotSeparate";
        case ErrorKind::hypothesis_failed: return "HypothesisFailed";
        case ErrorKind::not_eps_rational: return "NotEpsRational";
        case ErrorKind::degenerate: return "Degenerate";
        case ErrorKind::quotient_degree_unexpected: return "QuotientDegreeUnexpected";
        case ErrorKind::degenerate_parametrization: return "DegenerateParametrization";
        case ErrorKind::zero_tangent: return "ZeroTangent";
        case ErrorKind::outside_domain: return "OutsideDomain";
        case ErrorKind::pole_collision: return "PoleCollision";
        case ErrorKind::unbounded_bound: return "UnboundedBound";
        case ErrorKind::not_parallel: return "NotParallel";
        case ErrorKind::singular_footpoint: return "SingularFootpoint";
        case ErrorKind::empty_curve: return "EmptyCurve";
        case ErrorKind::no_limit: return "NoLimit";
        case ErrorKind::no_fallback_works: return "NoFallbackWorks";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it onto a stable exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace aparam
