#pragma once

#include "gradiv/ordered.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gradiv {

/// Probability masses: nonnegative, summing to 1 within kProbabilitySumTolerance.
class ProbabilityVector {
public:
    static constexpr double kProbabilitySumTolerance = 1e-9;

    explicit ProbabilityVector(std::vector<double> weights);

    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }

    friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

private:
    std::vector<double> weights_;
};

/// A divergence value in nats plus the diagnostics of how it was obtained.
struct DivergenceResult {
    double value = 0.0;          ///< -infinity exactly when negative_infinity is set
    std::size_t terms_used = 0;  ///< summed terms, or quadrature cells for integrals
    double dropped_mass = 0.0;   ///< sum of the reference increments over skipped zero-F terms
    double error_estimate = 0.0; ///< quadrature error bound; 0 for finite sums
    bool negative_infinity = false;
    bool empty = false;          ///< no term contributed

    /// Conventional Kullback-Leibler orientation, sum f ln(f/g) >= 0.
    [[nodiscard]] double kl() const noexcept { return -value; }
    [[nodiscard]] std::vector<std::string> flag_names() const;
};

/// Running sum of weighted rate terms dF * ln(dG / dF).
///
/// Terms with dF == 0 contribute nothing (0 ln 0 = 0); their dG is added to
/// dropped_mass. A term with dF > 0 and dG == 0 drives the total to -infinity.
/// Terms are added left to right in plain double arithmetic so that equal
/// term sequences give bit-identical totals.
class DivergenceAccumulator {
public:
    void add(IncrementPair pair);
    [[nodiscard]] DivergenceResult result() const;

private:
    double sum_ = 0.0;
    std::size_t terms_ = 0;
    double dropped_ = 0.0;
    bool negative_infinity_ = false;
};

/// The single weighted term dF * ln(dG / dF); zero when dF == 0.
[[nodiscard]] double divergence_term(IncrementPair pair);

/// Sum over k of ln(dG_k / dF_k) * dF_k for two gradings of the same ordered set.
[[nodiscard]] DivergenceResult divergence_discrete(const GradingSample& f, const GradingSample& g);

/// Sum f_k ln(g_k / f_k). Nonpositive for probability vectors; use kl() for
/// the nonnegative orientation.
[[nodiscard]] DivergenceResult relative_entropy(const ProbabilityVector& f,
                                                const ProbabilityVector& g);

/// -sum f_k ln f_k, the divergence of the c.d.f. of f from the position function.
[[nodiscard]] DivergenceResult shannon_entropy(const ProbabilityVector& f);

/// -sum mu_k ln mu_k over cell masses that need not be normalized.
[[nodiscard]] DivergenceResult partition_entropy(std::span<const double> masses);

/// Running-sum grading 0, f_1, f_1 + f_2, ...; throws invalid_input if a
/// weight is zero (the result would not be strictly increasing).
[[nodiscard]] GradingSample cdf_grading(const ProbabilityVector& f);

} // namespace gradiv
