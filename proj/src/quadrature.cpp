#include "gradiv/quadrature.hpp"

#include "gradiv/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace gradiv {

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw invalid_input("quadrature tolerances must be positive");
    }
    if (max_depth < 0) {
        throw invalid_input("quadrature max_depth must be >= 0");
    }
    if (!(endpoint_margin >= 0.0) || !std::isfinite(endpoint_margin)) {
        throw invalid_input("quadrature endpoint_margin must be finite and >= 0");
    }
}

namespace {

// Kronrod abscissae; odd indices are shared with the 7-point Gauss rule.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Cell budget; a non-converging integrand is reported long before memory matters.
constexpr std::size_t kMaxCells = 1u << 20;

struct Cell {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double error = 0.0;
    int depth = 0;
};

struct ByError {
    bool operator()(const Cell& a, const Cell& b) const {
        if (a.error != b.error) {
            return a.error < b.error;
        }
        return a.lo > b.lo; // deterministic: leftmost first among equals
    }
};

struct NegativeInfinity {};

double sample(const std::function<double(double)>& integrand, double x) {
    const double y = integrand(x);
    if (std::isnan(y) || y == std::numeric_limits<double>::infinity()) {
        throw computation_error("integrand is not finite at x = " + std::to_string(x));
    }
    if (y == -std::numeric_limits<double>::infinity()) {
        throw NegativeInfinity{};
    }
    return y;
}

Cell evaluate(const std::function<double(double)>& integrand, double lo, double hi, int depth) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = sample(integrand, center);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double pair = sample(integrand, center - dx) + sample(integrand, center + dx);
        kronrod += kKronrodWeights[i] * pair;
        if (i % 2 == 1) {
            gauss += kGaussWeights[i / 2] * pair;
        }
    }
    return Cell{lo, hi, kronrod * half, std::abs((kronrod - gauss) * half), depth};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& integrand,
                           std::span<const double> edges, const QuadratureSpec& spec) {
    spec.validate();
    if (edges.size() < 2) {
        throw invalid_input("integration needs at least one segment");
    }
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (!std::isfinite(edges[i - 1]) || !std::isfinite(edges[i]) || !(edges[i] > edges[i - 1])) {
            throw invalid_input("integration segments must be finite and increasing");
        }
    }

    QuadratureResult result;
    std::priority_queue<Cell, std::vector<Cell>, ByError> open;
    std::vector<Cell> closed;
    double value = 0.0;
    double error = 0.0;

    try {
        for (std::size_t i = 1; i < edges.size(); ++i) {
            Cell c = evaluate(integrand, edges[i - 1], edges[i], 0);
            value += c.value;
            error += c.error;
            open.push(c);
        }
        while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
            const Cell worst = open.top();
            const double mid = 0.5 * (worst.lo + worst.hi);
            if (worst.depth >= spec.max_depth || !(mid > worst.lo && mid < worst.hi)) {
                throw computation_error(
                    "quadrature did not converge: cell [" + std::to_string(worst.lo) + ", " +
                    std::to_string(worst.hi) + "] still has error " + std::to_string(worst.error) +
                    " at depth " + std::to_string(worst.depth) +
                    " (divergent or endpoint-singular integrand?)");
            }
            if (open.size() + closed.size() >= kMaxCells) {
                throw computation_error("quadrature exhausted its cell budget");
            }
            open.pop();
            const Cell left = evaluate(integrand, worst.lo, mid, worst.depth + 1);
            const Cell right = evaluate(integrand, mid, worst.hi, worst.depth + 1);
            value += left.value + right.value - worst.value;
            error += left.error + right.error - worst.error;
            open.push(left);
            open.push(right);
        }
    } catch (const NegativeInfinity&) {
        result.value = -std::numeric_limits<double>::infinity();
        result.error_estimate = 0.0;
        result.negative_infinity = true;
        return result;
    }

    // re-sum left to right; the running totals above only steer refinement
    while (!open.empty()) {
        closed.push_back(open.top());
        open.pop();
    }
    std::sort(closed.begin(), closed.end(),
              [](const Cell& a, const Cell& b) { return a.lo < b.lo; });
    result.value = 0.0;
    result.error_estimate = 0.0;
    for (const Cell& c : closed) {
        result.value += c.value;
        result.error_estimate += c.error;
    }
    result.cells = closed.size();
    return result;
}

QuadratureResult integrate(const std::function<double(double)>& integrand, double lo, double hi,
                           const QuadratureSpec& spec) {
    const std::array<double, 2> edges{lo, hi};
    return integrate(integrand, edges, spec);
}

} // namespace gradiv
