#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gradiv {

/// Values of a grading function F(w_0) < F(w_1) < ... < F(w_n) over an
/// enumerated linearly ordered set. Immutable once constructed.
class GradingSample {
public:
    /// Throws invalid_input unless grades has at least two finite entries
    /// and is strictly increasing. When given, labels must match in length.
    explicit GradingSample(std::vector<double> grades,
                           std::optional<std::vector<std::string>> labels = std::nullopt);

    [[nodiscard]] std::span<const double> grades() const noexcept { return grades_; }
    [[nodiscard]] const std::optional<std::vector<std::string>>& labels() const noexcept {
        return labels_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return grades_.size(); }
    /// Number of increments, one less than the number of grades.
    [[nodiscard]] std::size_t steps() const noexcept { return grades_.size() - 1; }

    /// Grades first..last inclusive, labels sliced alongside.
    [[nodiscard]] GradingSample slice(std::size_t first, std::size_t last) const;

    friend bool operator==(const GradingSample&, const GradingSample&) = default;

private:
    std::vector<double> grades_;
    std::optional<std::vector<std::string>> labels_;
};

/// Grade changes of G and F over the same pair of elements.
struct IncrementPair {
    double delta_g = 0.0;
    double delta_f = 0.0;
};

/// Consecutive differences grades[k] - grades[k-1]; every entry is > 0.
[[nodiscard]] std::vector<double> increments(const GradingSample& sample);

/// Rate of divergence per unit change of F: ln(delta_g / delta_f).
/// Returns -infinity when delta_g == 0. Throws invalid_input when
/// delta_f == 0 or either increment is negative or not finite.
[[nodiscard]] double rate_h(IncrementPair pair);

/// The grading G(w_k) = k on n + 1 elements.
[[nodiscard]] GradingSample position_grading(std::size_t steps);

} // namespace gradiv
