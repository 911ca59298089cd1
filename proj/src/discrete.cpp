#include "gradiv/discrete.hpp"

#include "gradiv/error.hpp"

#include <cmath>
#include <limits>

namespace gradiv {

ProbabilityVector::ProbabilityVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw invalid_input("probability vector is empty");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
        const double w = weights_[k];
        if (!std::isfinite(w) || w < 0.0) {
            throw invalid_input("weight " + std::to_string(k) + " must be finite and >= 0");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > kProbabilitySumTolerance) {
        throw invalid_input("weights sum to " + std::to_string(total) + ", not 1");
    }
}

std::vector<std::string> DivergenceResult::flag_names() const {
    std::vector<std::string> names;
    if (negative_infinity) {
        names.emplace_back("negative_infinity");
    }
    if (empty) {
        names.emplace_back("empty");
    }
    return names;
}

double divergence_term(IncrementPair pair) {
    if (pair.delta_f == 0.0) {
        if (!std::isfinite(pair.delta_g) || pair.delta_g < 0.0) {
            throw invalid_input("increments must be finite and >= 0");
        }
        return 0.0;
    }
    return pair.delta_f * rate_h(pair);
}

void DivergenceAccumulator::add(IncrementPair pair) {
    if (pair.delta_f == 0.0) {
        (void)divergence_term(pair);
        dropped_ += pair.delta_g;
        return;
    }
    const double term = divergence_term(pair);
    ++terms_;
    if (std::isinf(term)) {
        negative_infinity_ = true;
        return;
    }
    sum_ += term;
}

DivergenceResult DivergenceAccumulator::result() const {
    DivergenceResult r;
    r.terms_used = terms_;
    r.dropped_mass = dropped_;
    r.negative_infinity = negative_infinity_;
    r.empty = terms_ == 0;
    r.value = negative_infinity_ ? -std::numeric_limits<double>::infinity() : sum_;
    return r;
}

DivergenceResult divergence_discrete(const GradingSample& f, const GradingSample& g) {
    if (f.size() != g.size()) {
        throw invalid_input("gradings are defined on ordered sets of different size (" +
                            std::to_string(f.size()) + " vs " + std::to_string(g.size()) + ")");
    }
    const auto fg = f.grades();
    const auto gg = g.grades();
    DivergenceAccumulator acc;
    for (std::size_t k = 1; k < fg.size(); ++k) {
        acc.add({gg[k] - gg[k - 1], fg[k] - fg[k - 1]});
    }
    return acc.result();
}

DivergenceResult relative_entropy(const ProbabilityVector& f, const ProbabilityVector& g) {
    if (f.size() != g.size()) {
        throw invalid_input("probability vectors differ in length");
    }
    const auto fw = f.weights();
    const auto gw = g.weights();
    DivergenceAccumulator acc;
    for (std::size_t k = 0; k < fw.size(); ++k) {
        acc.add({gw[k], fw[k]});
    }
    return acc.result();
}

DivergenceResult shannon_entropy(const ProbabilityVector& f) {
    DivergenceAccumulator acc;
    for (double w : f.weights()) {
        acc.add({1.0, w});
    }
    return acc.result();
}

DivergenceResult partition_entropy(std::span<const double> masses) {
    DivergenceAccumulator acc;
    for (std::size_t k = 0; k < masses.size(); ++k) {
        if (!std::isfinite(masses[k]) || masses[k] < 0.0) {
            throw invalid_input("mass " + std::to_string(k) + " must be finite and >= 0");
        }
        acc.add({1.0, masses[k]});
    }
    return acc.result();
}

GradingSample cdf_grading(const ProbabilityVector& f) {
    std::vector<double> grades;
    grades.reserve(f.size() + 1);
    double running = 0.0;
    grades.push_back(running);
    for (double w : f.weights()) {
        running += w;
        grades.push_back(running);
    }
    return GradingSample(std::move(grades));
}

} // namespace gradiv
