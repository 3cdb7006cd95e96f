#pragma once
#include <stdexcept>
#include <string>

namespace linkvol {

// Every failure mode is assigned one category; the CLI maps categories to
// distinct exit codes and prints the category string, so scripts can branch
// on machine-readable failures.
enum class ErrorCategory {
    internal,
    syntax,             // scene text could not be parsed
    validation,         // scene parsed but violates semantic constraints
    structural,         // malformed loop / frame (too few vertices, ...)
    domain,             // argument outside mathematical domain (bad spin, ...)
    general_position,   // degenerate projection (parallel overlap, endpoint
                        // hit, depth tie); caller may retry with jitter
    regularization,     // displaced copy self-intersects; shrink eps
    unstable_framing,   // crossing counts do not stabilize across the eps
                        // schedule
    degenerate_region,  // half-twist on the projected region boundary
    ambiguous_partition,// tubular neighborhoods of distinct loops overlap
    refinement,         // octree subdivision exceeded its depth limit
    precondition,       // operation preconditions unmet (region touches a
                        // matter loop, missing schedule, ...)
    tolerance,          // quadrature failed to reach the requested tolerance
    limit,              // kappa/eps limit did not converge
};

inline const char* category_name(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::internal:            return "internal";
        case ErrorCategory::syntax:              return "syntax";
        case ErrorCategory::validation:          return "validation";
        case ErrorCategory::structural:          return "structural";
        case ErrorCategory::domain:              return "domain";
        case ErrorCategory::general_position:    return "general-position";
        case ErrorCategory::regularization:      return "regularization";
        case ErrorCategory::unstable_framing:    return "unstable-framing";
        case ErrorCategory::degenerate_region:   return "degenerate-region";
        case ErrorCategory::ambiguous_partition: return "ambiguous-partition";
        case ErrorCategory::refinement:          return "refinement";
        case ErrorCategory::precondition:        return "precondition";
        case ErrorCategory::tolerance:           return "tolerance";
        case ErrorCategory::limit:               return "limit";
    }
    return "internal";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, const std::string& msg)
        : std::runtime_error(std::string(category_name(cat)) + ": " + msg),
          cat_(cat) {}
    ErrorCategory category() const { return cat_; }

private:
    ErrorCategory cat_;
};

// Exit code used by the CLI for a given category (0 is reserved for success).
inline int category_exit_code(ErrorCategory c) {
    return 1 + static_cast<int>(c);
}

} // namespace linkvol
