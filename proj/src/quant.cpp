#include "proxim/quant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace proxim::quant {

namespace {

constexpr double kWindow = 3.0;

void require_positive(double v, const char* what) {
    if (!(std::isfinite(v) && v > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

}  // namespace

NormalErrorModel::NormalErrorModel(double value, double sigma_) : measured_value(value), sigma(sigma_) {
    if (!std::isfinite(value)) throw std::invalid_argument("measured value must be finite");
    require_positive(sigma_, "sigma");
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double laplace(double x) noexcept { return normal_cdf(x) - 0.5; }

double sigma_from_max_error(double delta_max) {
    require_positive(delta_max, "maximum error");
    return delta_max / 3.0;
}

double interval_probability(const NormalErrorModel& model, double c, double d) {
    if (c > d) throw std::invalid_argument("interval lower bound exceeds upper bound");
    if (c == d) return 0.0;
    const double lo = (c - model.measured_value) / model.sigma;
    const double hi = (d - model.measured_value) / model.sigma;
    // Evaluate on the side of the mean where the CDF difference keeps precision.
    double p = lo >= 0.0 ? normal_cdf(-lo) - normal_cdf(-hi) : normal_cdf(hi) - normal_cdf(lo);
    return std::clamp(p, 0.0, 1.0);
}

OverlapInterval overlap_interval(const NormalErrorModel& a, const NormalErrorModel& b) noexcept {
    const double c = std::max(a.measured_value - kWindow * a.sigma, b.measured_value - kWindow * b.sigma);
    const double d = std::min(a.measured_value + kWindow * a.sigma, b.measured_value + kWindow * b.sigma);
    if (c > d) return {};
    return {c, d, false};
}

double joint_overlap_probability(const NormalErrorModel& a, const NormalErrorModel& b) {
    const OverlapInterval overlap = overlap_interval(a, b);
    if (overlap.empty()) return 0.0;
    return interval_probability(a, overlap.c, overlap.d) * interval_probability(b, overlap.c, overlap.d);
}

double central_mass(double sigma, double xi) {
    require_positive(sigma, "sigma");
    require_positive(xi, "xi");
    return std::erf(xi / (sigma * std::sqrt(2.0)));
}

double confidence_coefficient(double sigma_i, double sigma_j, double xi) {
    return std::sqrt(central_mass(sigma_i, xi) * central_mass(sigma_j, xi));
}

double quantitative_proximity(const NormalErrorModel& a, const NormalErrorModel& b, std::optional<double> xi) {
    const double ps = joint_overlap_probability(a, b);
    if (!xi) return ps;
    return ps * confidence_coefficient(a.sigma, b.sigma, *xi);
}

double quantitative_distance(const NormalErrorModel& a, const NormalErrorModel& b, std::optional<double> xi) {
    return 1.0 - quantitative_proximity(a, b, xi);
}

}  // namespace proxim::quant
