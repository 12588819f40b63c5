#pragma once

// Probabilistic proximity between two quantitative values measured with
// independent, normally distributed errors.

#include <optional>

namespace proxim::quant {

struct NormalErrorModel {
    double measured_value;  // taken as the mathematical expectation
    double sigma;           // > 0

    NormalErrorModel(double value, double sigma_);
};

/// Intersection of two three-sigma windows. `empty()` when they are disjoint.
struct OverlapInterval {
    double c = 0.0;
    double d = 0.0;
    bool is_empty = true;

    bool empty() const noexcept { return is_empty; }
};

/// Standard normal distribution function.
double normal_cdf(double x) noexcept;

/// Zero-centered Laplace integral, normal_cdf(x) - 0.5.
double laplace(double x) noexcept;

/// σ ≈ Δ_max / 3.
double sigma_from_max_error(double delta_max);

/// P(c ≤ x ≤ d) for x ~ N(m, σ²). Throws std::invalid_argument if c > d.
double interval_probability(const NormalErrorModel& model, double c, double d);

OverlapInterval overlap_interval(const NormalErrorModel& a, const NormalErrorModel& b) noexcept;

/// P_S: product of both models' mass over their common three-sigma overlap.
double joint_overlap_probability(const NormalErrorModel& a, const NormalErrorModel& b);

/// P(|x - m| < ξ) for a single model.
double central_mass(double sigma, double xi);

/// P_ξ: geometric mean of the two central masses within ±ξ.
double confidence_coefficient(double sigma_i, double sigma_j, double xi);

/// ρ'_K. Without ξ this is the raw overlap probability P_S; with ξ it is P_S·P_ξ.
double quantitative_proximity(const NormalErrorModel& a, const NormalErrorModel& b,
                              std::optional<double> xi = std::nullopt);

/// ρ_K = 1 - ρ'_K.
double quantitative_distance(const NormalErrorModel& a, const NormalErrorModel& b,
                             std::optional<double> xi = std::nullopt);

}  // namespace proxim::quant
