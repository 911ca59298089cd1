#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace gradiv {

/// Error targets for adaptive integration. Integration stops once the summed
/// error estimate is below max(abs_tol, rel_tol * |value|).
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_depth = 60;           ///< bisections allowed below each initial segment
    double endpoint_margin = 0.0; ///< trimmed from both ends of the support

    /// Throws invalid_input on non-positive tolerances, negative depth or margin.
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t cells = 0;
    bool negative_infinity = false; ///< the integrand evaluated to -inf somewhere
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration over consecutive
/// segments [edges[0], edges[1]], [edges[1], edges[2]], ...
///
/// The integrand is only sampled at interior nodes, never at a cell edge.
/// The cell with the largest error estimate is bisected until the target is
/// met; throws computation_error if that cell is already max_depth deep, if
/// the cell budget runs out, or if the integrand yields NaN or +inf.
[[nodiscard]] QuadratureResult integrate(const std::function<double(double)>& integrand,
                                         std::span<const double> edges,
                                         const QuadratureSpec& spec);

[[nodiscard]] QuadratureResult integrate(const std::function<double(double)>& integrand,
                                         double lo, double hi, const QuadratureSpec& spec);

} // namespace gradiv
