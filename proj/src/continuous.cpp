#include "gradiv/continuous.hpp"

#include "gradiv/error.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gradiv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

constexpr double kInvertTolerance = 1e-12;
constexpr std::uintmax_t kInvertMaxIterations = 200;

/// Standard normal lower tail Φ(z) and upper tail Q(z) = 1 - Φ(z),
/// each evaluated without cancellation.
double normal_lower(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
double normal_upper(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

struct NormalWindow {
    double za;
    double zb;
    bool upper_tail; // both ends on the right: use Q to keep precision
    double mass;
};

NormalWindow normal_window(const family::TruncatedNormal& p, double a, double b) {
    NormalWindow w{(a - p.mu) / p.sigma, (b - p.mu) / p.sigma, false, 0.0};
    w.upper_tail = w.za > 0.0;
    w.mass = w.upper_tail ? normal_upper(w.za) - normal_upper(w.zb)
                          : normal_lower(w.zb) - normal_lower(w.za);
    return w;
}

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw invalid_input(what);
    }
}

bool finite(double x) { return std::isfinite(x); }

} // namespace

ContinuousGrading::ContinuousGrading(FamilyParams params, double a, double b)
    : params_(std::move(params)), a_(a), b_(b) {
    require(finite(a_) && finite(b_) && a_ < b_, "support must be a finite interval [a, b] with a < b");
    std::visit(
        overloaded{
            [](const family::Uniform&) {},
            [&](const family::Triangular& p) {
                require(finite(p.mode) && p.mode >= a_ && p.mode <= b_,
                        "triangular mode must lie in the support");
            },
            [](const family::Beta& p) {
                require(finite(p.alpha) && finite(p.beta) && p.alpha > 0.0 && p.beta > 0.0,
                        "beta shape parameters must be positive");
            },
            [&](const family::TruncatedNormal& p) {
                require(finite(p.mu) && finite(p.sigma) && p.sigma > 0.0,
                        "truncated normal needs finite mu and sigma > 0");
                require(normal_window(p, a_, b_).mass > 0.0,
                        "truncated normal window carries no probability mass");
            },
            [](const family::Power& p) {
                require(finite(p.p) && p.p > 0.0, "power exponent must be positive");
            },
            [&](const family::PiecewiseLinearCdf& p) {
                require(p.knots.size() >= 2, "piecewise linear cdf needs at least two knots");
                for (std::size_t i = 0; i < p.knots.size(); ++i) {
                    require(finite(p.knots[i].first) && finite(p.knots[i].second),
                            "knots must be finite");
                    if (i > 0) {
                        require(p.knots[i].first > p.knots[i - 1].first &&
                                    p.knots[i].second > p.knots[i - 1].second,
                                "knots must be strictly increasing in both coordinates");
                    }
                }
                require(p.knots.front().first == a_ && p.knots.back().first == b_,
                        "support must span the first and last knot");
            },
        },
        params_);
}

ContinuousGrading ContinuousGrading::uniform(double a, double b) {
    return ContinuousGrading(family::Uniform{}, a, b);
}

ContinuousGrading ContinuousGrading::triangular(double a, double mode, double b) {
    return ContinuousGrading(family::Triangular{mode}, a, b);
}

ContinuousGrading ContinuousGrading::beta(double alpha, double beta, double a, double b) {
    return ContinuousGrading(family::Beta{alpha, beta}, a, b);
}

ContinuousGrading ContinuousGrading::truncated_normal(double mu, double sigma, double a, double b) {
    return ContinuousGrading(family::TruncatedNormal{mu, sigma}, a, b);
}

ContinuousGrading ContinuousGrading::power(double p, double a, double b) {
    return ContinuousGrading(family::Power{p}, a, b);
}

ContinuousGrading ContinuousGrading::piecewise_linear_cdf(std::vector<std::pair<double, double>> knots) {
    require(knots.size() >= 2, "piecewise linear cdf needs at least two knots");
    const double a = knots.front().first;
    const double b = knots.back().first;
    return ContinuousGrading(family::PiecewiseLinearCdf{std::move(knots)}, a, b);
}

std::string ContinuousGrading::family_name() const {
    return std::visit(overloaded{
                          [](const family::Uniform&) { return "uniform"; },
                          [](const family::Triangular&) { return "triangular"; },
                          [](const family::Beta&) { return "beta"; },
                          [](const family::TruncatedNormal&) { return "truncated_normal"; },
                          [](const family::Power&) { return "power"; },
                          [](const family::PiecewiseLinearCdf&) { return "piecewise_linear_cdf"; },
                      },
                      params_);
}

std::pair<double, double> ContinuousGrading::image() const {
    if (const auto* p = std::get_if<family::PiecewiseLinearCdf>(&params_)) {
        return {p->knots.front().second, p->knots.back().second};
    }
    return {0.0, 1.0};
}

bool ContinuousGrading::is_probability() const {
    const auto [lo, hi] = image();
    return std::abs(lo) <= 1e-12 && std::abs(hi - 1.0) <= 1e-12;
}

double ContinuousGrading::cdf(double x) const {
    const auto [lo, hi] = image();
    if (x <= a_) {
        return lo;
    }
    if (x >= b_) {
        return hi;
    }
    const double width = b_ - a_;
    const double t = (x - a_) / width;
    return std::visit(
        overloaded{
            [&](const family::Uniform&) { return (x - a_) / width; },
            [&](const family::Triangular& p) {
                if (x < p.mode) {
                    return (x - a_) * (x - a_) / (width * (p.mode - a_));
                }
                if (p.mode == b_) {
                    return 1.0;
                }
                return 1.0 - (b_ - x) * (b_ - x) / (width * (b_ - p.mode));
            },
            [&](const family::Beta& p) { return boost::math::ibeta(p.alpha, p.beta, t); },
            [&](const family::TruncatedNormal& p) {
                const auto w = normal_window(p, a_, b_);
                const double z = (x - p.mu) / p.sigma;
                return w.upper_tail ? (normal_upper(w.za) - normal_upper(z)) / w.mass
                                    : (normal_lower(z) - normal_lower(w.za)) / w.mass;
            },
            [&](const family::Power& p) { return std::pow(t, p.p); },
            [&](const family::PiecewiseLinearCdf& p) {
                const auto& k = p.knots;
                auto it = std::upper_bound(k.begin(), k.end(), x,
                                           [](double v, const auto& knot) { return v < knot.first; });
                const auto& right = *it;
                const auto& left = *(it - 1);
                return left.second +
                       (x - left.first) * (right.second - left.second) / (right.first - left.first);
            },
        },
        params_);
}

double ContinuousGrading::density(double x) const {
    if (x < a_ || x > b_) {
        return 0.0;
    }
    const double width = b_ - a_;
    const double t = (x - a_) / width;
    return std::visit(
        overloaded{
            [&](const family::Uniform&) { return 1.0 / width; },
            [&](const family::Triangular& p) {
                if (x < p.mode || (x == p.mode && p.mode == b_)) {
                    return 2.0 * (x - a_) / (width * (p.mode - a_));
                }
                return 2.0 * (b_ - x) / (width * (b_ - p.mode));
            },
            [&](const family::Beta& p) {
                return boost::math::ibeta_derivative(p.alpha, p.beta, t) / width;
            },
            [&](const family::TruncatedNormal& p) {
                const auto w = normal_window(p, a_, b_);
                const double z = (x - p.mu) / p.sigma;
                return std::exp(-0.5 * z * z) /
                       (p.sigma * std::sqrt(2.0 * std::numbers::pi) * w.mass);
            },
            [&](const family::Power& p) { return p.p * std::pow(t, p.p - 1.0) / width; },
            [&](const family::PiecewiseLinearCdf& p) {
                const auto& k = p.knots;
                auto it = std::upper_bound(k.begin(), k.end(), x,
                                           [](double v, const auto& knot) { return v < knot.first; });
                if (it == k.end()) {
                    --it;
                }
                const auto& right = *it;
                const auto& left = *(it - 1);
                return (right.second - left.second) / (right.first - left.first);
            },
        },
        params_);
}

double ContinuousGrading::log_density(double x) const {
    if (x < a_ || x > b_) {
        return -std::numeric_limits<double>::infinity();
    }
    const double width = b_ - a_;
    const double t = (x - a_) / width;
    return std::visit(
        overloaded{
            [&](const family::Uniform&) { return -std::log(width); },
            [&](const family::Beta& p) {
                const double log_beta =
                    std::lgamma(p.alpha) + std::lgamma(p.beta) - std::lgamma(p.alpha + p.beta);
                const double left = p.alpha == 1.0 ? 0.0 : (p.alpha - 1.0) * std::log(t);
                const double right = p.beta == 1.0 ? 0.0 : (p.beta - 1.0) * std::log1p(-t);
                return left + right - log_beta - std::log(width);
            },
            [&](const family::TruncatedNormal& p) {
                const auto w = normal_window(p, a_, b_);
                const double z = (x - p.mu) / p.sigma;
                return -0.5 * z * z - std::log(p.sigma) - 0.5 * std::log(2.0 * std::numbers::pi) -
                       std::log(w.mass);
            },
            [&](const family::Power& p) {
                const double shape = p.p == 1.0 ? 0.0 : (p.p - 1.0) * std::log(t);
                return std::log(p.p) + shape - std::log(width);
            },
            [&](const auto&) { return std::log(density(x)); },
        },
        params_);
}

std::vector<double> ContinuousGrading::breakpoints() const {
    std::vector<double> out;
    if (const auto* p = std::get_if<family::Triangular>(&params_)) {
        if (p->mode > a_ && p->mode < b_) {
            out.push_back(p->mode);
        }
    } else if (const auto* p = std::get_if<family::PiecewiseLinearCdf>(&params_)) {
        for (std::size_t i = 1; i + 1 < p->knots.size(); ++i) {
            out.push_back(p->knots[i].first);
        }
    }
    return out;
}

namespace {

double bracketed_inverse(const ContinuousGrading& f, double u) {
    const auto [lo, hi] = f.image();
    const double tolerance = kInvertTolerance * (hi - lo);
    auto residual = [&](double x) { return f.cdf(x) - u; };
    double a = f.lower();
    double b = f.upper();
    const double fa = residual(a);
    const double fb = residual(b);
    std::uintmax_t iterations = kInvertMaxIterations;
    std::pair<double, double> bracket;
    try {
        bracket = boost::math::tools::toms748_solve(
            residual, a, b, fa, fb,
            boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 1),
            iterations);
    } catch (const std::exception& e) {
        throw computation_error(std::string("cdf inversion failed: ") + e.what());
    }
    const double ra = std::abs(residual(bracket.first));
    const double rb = std::abs(residual(bracket.second));
    const double x = ra <= rb ? bracket.first : bracket.second;
    if (std::min(ra, rb) > tolerance) {
        throw computation_error("cdf inversion did not reach tolerance for u = " + std::to_string(u));
    }
    return x;
}

} // namespace

double invert_cdf(const ContinuousGrading& f, double u) {
    const auto [lo, hi] = f.image();
    if (!(u >= lo && u <= hi)) {
        throw invalid_input("u = " + std::to_string(u) + " lies outside the image of the grading");
    }
    const double a = f.lower();
    const double b = f.upper();
    if (u == lo) {
        return a;
    }
    if (u == hi) {
        return b;
    }
    const double width = b - a;
    const double x = std::visit(
        overloaded{
            [&](const family::Uniform&) { return a + u * width; },
            [&](const family::Triangular& p) {
                if (u * width < p.mode - a) {
                    return a + std::sqrt(u * width * (p.mode - a));
                }
                return b - std::sqrt((1.0 - u) * width * (b - p.mode));
            },
            [&](const family::Power& p) { return a + width * std::pow(u, 1.0 / p.p); },
            [&](const family::PiecewiseLinearCdf& p) {
                const auto& k = p.knots;
                auto it = std::upper_bound(k.begin(), k.end(), u,
                                           [](double v, const auto& knot) { return v < knot.second; });
                const auto& right = *it;
                const auto& left = *(it - 1);
                return left.first +
                       (u - left.second) * (right.first - left.first) / (right.second - left.second);
            },
            [&](const auto&) { return bracketed_inverse(f, u); },
        },
        f.params());
    return std::clamp(x, a, b);
}

namespace {

void require_shared_support(const ContinuousGrading& f, const ContinuousGrading& g) {
    if (f.lower() != g.lower() || f.upper() != g.upper()) {
        throw invalid_input("gradings must share the same support interval");
    }
}

std::vector<double> integration_edges(const ContinuousGrading& f, const ContinuousGrading* g,
                                      const QuadratureSpec& spec) {
    spec.validate();
    const double lo = f.lower() + spec.endpoint_margin;
    const double hi = f.upper() - spec.endpoint_margin;
    if (!(lo < hi)) {
        throw invalid_input("endpoint margin leaves nothing to integrate");
    }
    std::vector<double> edges{lo, hi};
    auto add = [&](const ContinuousGrading& c) {
        for (double x : c.breakpoints()) {
            if (x > lo && x < hi) {
                edges.push_back(x);
            }
        }
    };
    add(f);
    if (g != nullptr) {
        add(*g);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

DivergenceResult from_quadrature(const QuadratureResult& q) {
    DivergenceResult r;
    r.value = q.value;
    r.error_estimate = q.error_estimate;
    r.terms_used = q.cells;
    r.negative_infinity = q.negative_infinity;
    return r;
}

} // namespace

DivergenceResult divergence_continuous(const ContinuousGrading& f, const ContinuousGrading& g,
                                       const QuadratureSpec& spec) {
    require_shared_support(f, g);
    const auto edges = integration_edges(f, &g, spec);
    auto integrand = [&](double x) {
        const double fx = f.density(x);
        if (fx == 0.0) {
            return 0.0;
        }
        return fx * (g.log_density(x) - f.log_density(x));
    };
    return from_quadrature(integrate(integrand, edges, spec));
}

DivergenceResult classical_entropy(const ContinuousGrading& f, const QuadratureSpec& spec) {
    const auto edges = integration_edges(f, nullptr, spec);
    auto integrand = [&](double x) {
        const double fx = f.density(x);
        if (fx == 0.0) {
            return 0.0;
        }
        return -fx * f.log_density(x);
    };
    return from_quadrature(integrate(integrand, edges, spec));
}

DivergenceResult corrected_entropy(const ContinuousGrading& f, const QuadratureSpec& spec) {
    if (!f.is_probability()) {
        throw invalid_input("corrected entropy needs a probability grading (image [0, 1])");
    }
    return divergence_continuous(f, ContinuousGrading::uniform(f.lower(), f.upper()), spec);
}

DivergenceResult symmetric_divergence(const ContinuousGrading& f, const ContinuousGrading& g,
                                      const QuadratureSpec& spec) {
    const auto forward = divergence_continuous(f, g, spec);
    const auto backward = divergence_continuous(g, f, spec);
    DivergenceResult r;
    r.negative_infinity = forward.negative_infinity || backward.negative_infinity;
    r.value = r.negative_infinity ? -std::numeric_limits<double>::infinity()
                                  : forward.value + backward.value;
    r.error_estimate = forward.error_estimate + backward.error_estimate;
    r.terms_used = forward.terms_used + backward.terms_used;
    return r;
}

double riemann_divergence(const ContinuousGrading& f, const ContinuousGrading& g, int n_points) {
    require_shared_support(f, g);
    if (n_points < 2) {
        throw invalid_input("riemann_divergence needs at least two cells");
    }
    const auto [lo, hi] = f.image();
    const double n = static_cast<double>(n_points);
    auto grid = [&](int k) { return k == n_points ? hi : lo + (hi - lo) * (k / n); };

    DivergenceAccumulator acc;
    double u_prev = grid(0);
    double q_prev = g.cdf(invert_cdf(f, u_prev));
    for (int k = 1; k <= n_points; ++k) {
        const double u = grid(k);
        const double q = g.cdf(invert_cdf(f, u));
        if (q < q_prev) {
            throw computation_error("G(F^-1(u)) lost monotonicity to rounding; use fewer cells");
        }
        acc.add({q - q_prev, u - u_prev});
        u_prev = u;
        q_prev = q;
    }
    return acc.result().value;
}

} // namespace gradiv
