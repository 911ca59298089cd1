#include "gradiv/ordered.hpp"

#include "gradiv/error.hpp"

#include <cmath>
#include <limits>

namespace gradiv {

GradingSample::GradingSample(std::vector<double> grades,
                             std::optional<std::vector<std::string>> labels)
    : grades_(std::move(grades)), labels_(std::move(labels)) {
    if (grades_.size() < 2) {
        throw invalid_input("grading sample needs at least two grades");
    }
    for (std::size_t k = 0; k < grades_.size(); ++k) {
        if (!std::isfinite(grades_[k])) {
            throw invalid_input("grade " + std::to_string(k) + " is not finite");
        }
        if (k > 0 && !(grades_[k] > grades_[k - 1])) {
            throw invalid_input("grades must be strictly increasing (index " +
                                std::to_string(k) + ")");
        }
    }
    if (labels_ && labels_->size() != grades_.size()) {
        throw invalid_input("labels and grades differ in length");
    }
}

GradingSample GradingSample::slice(std::size_t first, std::size_t last) const {
    if (first >= last || last >= grades_.size()) {
        throw invalid_input("slice bounds out of range");
    }
    std::vector<double> part(grades_.begin() + first, grades_.begin() + last + 1);
    std::optional<std::vector<std::string>> part_labels;
    if (labels_) {
        part_labels.emplace(labels_->begin() + first, labels_->begin() + last + 1);
    }
    return GradingSample(std::move(part), std::move(part_labels));
}

std::vector<double> increments(const GradingSample& sample) {
    const auto g = sample.grades();
    std::vector<double> out;
    out.reserve(g.size() - 1);
    for (std::size_t k = 1; k < g.size(); ++k) {
        out.push_back(g[k] - g[k - 1]);
    }
    return out;
}

double rate_h(IncrementPair pair) {
    if (!std::isfinite(pair.delta_g) || !std::isfinite(pair.delta_f)) {
        throw invalid_input("increments must be finite");
    }
    if (pair.delta_g < 0.0 || pair.delta_f < 0.0) {
        throw invalid_input("increments of a grading function cannot be negative");
    }
    if (pair.delta_f == 0.0) {
        throw invalid_input("rate undefined for a zero change of F");
    }
    if (pair.delta_g == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    const double ratio = pair.delta_g / pair.delta_f;
    if (ratio == 0.0 || std::isinf(ratio)) {
        // quotient under/overflowed; the logs of the operands are still finite
        return std::log(pair.delta_g) - std::log(pair.delta_f);
    }
    return std::log(ratio);
}

GradingSample position_grading(std::size_t steps) {
    std::vector<double> g(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        g[k] = static_cast<double>(k);
    }
    return GradingSample(std::move(g));
}

} // namespace gradiv
