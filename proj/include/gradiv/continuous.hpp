#pragma once

#include "gradiv/discrete.hpp"
#include "gradiv/quadrature.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gradiv {

/// Parameters of the catalog families. Every family lives on a finite
/// support [a, b]; beta and power are the standard families rescaled there.
namespace family {

struct Uniform {
    friend bool operator==(const Uniform&, const Uniform&) = default;
};
struct Triangular {
    double mode = 0.0;
    friend bool operator==(const Triangular&, const Triangular&) = default;
};
struct Beta {
    double alpha = 1.0;
    double beta = 1.0;
    friend bool operator==(const Beta&, const Beta&) = default;
};
struct TruncatedNormal {
    double mu = 0.0;
    double sigma = 1.0;
    friend bool operator==(const TruncatedNormal&, const TruncatedNormal&) = default;
};
/// c.d.f. t^p on the unit interval, density p t^(p-1).
struct Power {
    double p = 1.0;
    friend bool operator==(const Power&, const Power&) = default;
};
/// Linear interpolation through (x, F(x)) knots; the only family whose
/// image need not be [0, 1].
struct PiecewiseLinearCdf {
    std::vector<std::pair<double, double>> knots;
    friend bool operator==(const PiecewiseLinearCdf&, const PiecewiseLinearCdf&) = default;
};

} // namespace family

using FamilyParams = std::variant<family::Uniform, family::Triangular, family::Beta,
                                  family::TruncatedNormal, family::Power,
                                  family::PiecewiseLinearCdf>;

/// A continuously differentiable, strictly increasing grading function on a
/// finite interval, given by its c.d.f. and density.
class ContinuousGrading {
public:
    /// Throws invalid_input when the parameters do not describe a valid member.
    ContinuousGrading(FamilyParams params, double a, double b);

    static ContinuousGrading uniform(double a, double b);
    static ContinuousGrading triangular(double a, double mode, double b);
    static ContinuousGrading beta(double alpha, double beta, double a = 0.0, double b = 1.0);
    static ContinuousGrading truncated_normal(double mu, double sigma, double a, double b);
    static ContinuousGrading power(double p, double a = 0.0, double b = 1.0);
    static ContinuousGrading piecewise_linear_cdf(std::vector<std::pair<double, double>> knots);

    [[nodiscard]] const FamilyParams& params() const noexcept { return params_; }
    [[nodiscard]] std::string family_name() const;
    [[nodiscard]] double lower() const noexcept { return a_; }
    [[nodiscard]] double upper() const noexcept { return b_; }
    /// im(F) = [cdf(a), cdf(b)]
    [[nodiscard]] std::pair<double, double> image() const;
    /// True when the image is [0, 1].
    [[nodiscard]] bool is_probability() const;

    /// Clamped to the image outside the support.
    [[nodiscard]] double cdf(double x) const;
    [[nodiscard]] double density(double x) const;
    [[nodiscard]] double log_density(double x) const;
    /// Interior points where the density is not smooth.
    [[nodiscard]] std::vector<double> breakpoints() const;

    friend bool operator==(const ContinuousGrading&, const ContinuousGrading&) = default;

private:
    FamilyParams params_;
    double a_;
    double b_;
};

/// x in [a, b] with |cdf(x) - u| <= 1e-12 * (cdf(b) - cdf(a)). Closed form where
/// the family has one, bracketed root finding otherwise.
[[nodiscard]] double invert_cdf(const ContinuousGrading& f, double u);

/// ∫_a^b f ln(g / f) dx by adaptive quadrature; error_estimate and
/// terms_used (quadrature cells) are filled in.
[[nodiscard]] DivergenceResult divergence_continuous(const ContinuousGrading& f,
                                                     const ContinuousGrading& g,
                                                     const QuadratureSpec& spec = {});

/// Σ ln(Δq / Δu) Δu over n equal cells of im(F), q(u) = G(F^-1(u)).
/// Converges to divergence_continuous as n grows; serves as an independent check.
[[nodiscard]] double riemann_divergence(const ContinuousGrading& f, const ContinuousGrading& g,
                                        int n_points);

/// Classical differential entropy -∫ f ln f dx.
[[nodiscard]] DivergenceResult classical_entropy(const ContinuousGrading& f,
                                                 const QuadratureSpec& spec = {});

/// -∫ f ln((b - a) f) dx: divergence from the uniform grading on the same
/// support, hence zero for the uniform distribution itself.
[[nodiscard]] DivergenceResult corrected_entropy(const ContinuousGrading& f,
                                                 const QuadratureSpec& spec = {});

/// D(F‖G) + D(G‖F).
[[nodiscard]] DivergenceResult symmetric_divergence(const ContinuousGrading& f,
                                                    const ContinuousGrading& g,
                                                    const QuadratureSpec& spec = {});

} // namespace gradiv
