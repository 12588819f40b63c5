#pragma once

// Possibility-based proximity between qualitative values formalized as
// fuzzy sets.

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "proxim/model.hpp"

namespace proxim::fuzzy {

struct Triangular {
    double lower;  // g_min
    double peak;   // G
    double upper;  // g_max
    bool operator==(const Triangular&) const = default;
};

struct Gaussian {
    double center;
    double spread;  // s
    bool operator==(const Gaussian&) const = default;
};

/// Nominal value: full membership at `label`, `delta` everywhere else.
struct NominalPlateau {
    std::string label;
    double delta;
    bool operator==(const NominalPlateau&) const = default;
};

enum class EvaluationDomain { Continuous, IntegerGrid, Labels };

class IncompatibleAxes : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class FuzzyMembership {
public:
    using Shape = std::variant<Triangular, Gaussian, NominalPlateau>;

    FuzzyMembership(Shape shape, double peak_height);

    const Shape& shape() const noexcept { return shape_; }
    double peak_height() const noexcept { return height_; }
    EvaluationDomain domain() const noexcept;

    /// μ(g) on a numeric axis. Throws IncompatibleAxes for nominal plateaus.
    double operator()(double g) const;
    /// μ(label) on a nominal axis. Throws IncompatibleAxes for numeric shapes.
    double at(std::string_view label) const;

    FuzzyMembership with_height(double height) const;

    bool operator==(const FuzzyMembership&) const = default;

private:
    Shape shape_;
    double height_;
};

/// Support [ROUND(G(1-k)), ROUND(G(1+k))]. Throws if the rounded bounds
/// collapse onto the peak.
FuzzyMembership triangular_from_relative_error(double peak, double k, double height = 1.0);

/// Support [G - w, G + w].
FuzzyMembership triangular_from_halfwidth(double peak, double half_width, double height = 1.0);

/// height · exp(-(g - G)² / (2s²)), evaluated on the integer grid.
FuzzyMembership gaussian_membership(double center, double spread, double height = 1.0);

FuzzyMembership nominal_membership(std::string label, double delta, double height = 1.0);

/// Scales the peak height by the certainty's numeric level.
FuzzyMembership apply_certainty(const FuzzyMembership& m, Certainty level);

/// M_S = sup min(μ₁, μ₂). Exact for piecewise-linear shapes; gaussian shapes
/// are maximized over the integer grid spanning both supports.
double possibility(const FuzzyMembership& m1, const FuzzyMembership& m2);

/// ρ'_Q for nominal values: 1 on a match, Δ otherwise.
double nominal_proximity(std::string_view v1, std::string_view v2, double delta);

/// ρ_Q = 1 - ρ'_Q.
double qualitative_distance(double proximity);

}  // namespace proxim::fuzzy
