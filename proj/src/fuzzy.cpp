#include "proxim/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace proxim::fuzzy {

namespace {

constexpr double kGaussianTail = 6.0;
constexpr double kMaxGridPoints = 1e8;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double triangular_unit(const Triangular& t, double g) {
    if (g <= t.lower || g >= t.upper) return 0.0;
    if (g == t.peak) return 1.0;
    if (g < t.peak) return (g - t.lower) / (t.peak - t.lower);
    return (t.upper - g) / (t.upper - t.peak);
}

std::pair<double, double> support(const FuzzyMembership::Shape& shape) {
    return std::visit(Overloaded{
                          [](const Triangular& t) { return std::pair{t.lower, t.upper}; },
                          [](const Gaussian& g) {
                              return std::pair{g.center - kGaussianTail * g.spread,
                                               g.center + kGaussianTail * g.spread};
                          },
                          [](const NominalPlateau&) { return std::pair{0.0, 0.0}; },
                      },
                      shape);
}

// Max-min of two continuous piecewise-linear functions: the optimum sits on
// a breakpoint of either function or where the two cross between breakpoints.
double exact_piecewise_linear(const FuzzyMembership& m1, const FuzzyMembership& m2) {
    const auto& t1 = std::get<Triangular>(m1.shape());
    const auto& t2 = std::get<Triangular>(m2.shape());
    std::vector<double> breaks{t1.lower, t1.peak, t1.upper, t2.lower, t2.peak, t2.upper};
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    double best = 0.0;
    auto consider = [&](double g) { best = std::max(best, std::min(m1(g), m2(g))); };

    for (std::size_t i = 0; i < breaks.size(); ++i) {
        consider(breaks[i]);
        if (i + 1 == breaks.size()) break;
        const double a = breaks[i];
        const double b = breaks[i + 1];
        const double da = m1(a) - m2(a);
        const double db = m1(b) - m2(b);
        if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
            const double g = a + (b - a) * (da / (da - db));
            // Both functions are linear on [a, b]; interpolate rather than
            // re-evaluate so the crossing value is symmetric in (m1, m2).
            const double t = (g - a) / (b - a);
            const double v1 = m1(a) + t * (m1(b) - m1(a));
            const double v2 = m2(a) + t * (m2(b) - m2(a));
            best = std::max(best, std::min(v1, v2));
        }
    }
    return best;
}

double integer_grid(const FuzzyMembership& m1, const FuzzyMembership& m2) {
    const auto [lo1, hi1] = support(m1.shape());
    const auto [lo2, hi2] = support(m2.shape());
    const double lo = std::floor(std::min(lo1, lo2));
    const double hi = std::ceil(std::max(hi1, hi2));
    if (hi - lo > kMaxGridPoints) throw std::invalid_argument("membership support too wide for grid evaluation");
    double best = 0.0;
    for (double g = lo; g <= hi; g += 1.0) best = std::max(best, std::min(m1(g), m2(g)));
    return best;
}

double plateau_possibility(const FuzzyMembership& m1, const FuzzyMembership& m2) {
    const auto& p1 = std::get<NominalPlateau>(m1.shape());
    const auto& p2 = std::get<NominalPlateau>(m2.shape());
    if (p1.label == p2.label) return std::min(m1.peak_height(), m2.peak_height());
    return std::max(std::min(m1.at(p2.label), m2.at(p2.label)), std::min(m1.at(p1.label), m2.at(p1.label)));
}

void require_height(double h) {
    if (!(std::isfinite(h) && h > 0.0 && h <= 1.0)) throw std::invalid_argument("peak height must lie in (0, 1]");
}

}  // namespace

FuzzyMembership::FuzzyMembership(Shape shape, double peak_height) : shape_(std::move(shape)), height_(peak_height) {
    require_height(peak_height);
    std::visit(Overloaded{
                   [](const Triangular& t) {
                       if (!(std::isfinite(t.lower) && std::isfinite(t.upper) && t.lower < t.peak &&
                             t.peak < t.upper))
                           throw std::invalid_argument("triangular support must satisfy g_min < G < g_max");
                   },
                   [](const Gaussian& g) {
                       if (!(std::isfinite(g.center) && std::isfinite(g.spread) && g.spread > 0.0))
                           throw std::invalid_argument("gaussian spread must be > 0");
                   },
                   [](const NominalPlateau& p) {
                       if (!(p.delta > 0.0 && p.delta <= kMaxNominalDelta))
                           throw std::invalid_argument("nominal delta must lie in (0, 0.5]");
                   },
               },
               shape_);
}

EvaluationDomain FuzzyMembership::domain() const noexcept {
    if (std::holds_alternative<Triangular>(shape_)) return EvaluationDomain::Continuous;
    if (std::holds_alternative<Gaussian>(shape_)) return EvaluationDomain::IntegerGrid;
    return EvaluationDomain::Labels;
}

double FuzzyMembership::operator()(double g) const {
    return std::visit(Overloaded{
                          [&](const Triangular& t) { return height_ * triangular_unit(t, g); },
                          [&](const Gaussian& s) {
                              const double z = (g - s.center) / s.spread;
                              return height_ * std::exp(-0.5 * z * z);
                          },
                          [](const NominalPlateau&) -> double {
                              throw IncompatibleAxes("nominal membership has no numeric axis");
                          },
                      },
                      shape_);
}

double FuzzyMembership::at(std::string_view label) const {
    const auto* p = std::get_if<NominalPlateau>(&shape_);
    if (!p) throw IncompatibleAxes("numeric membership evaluated on a nominal label");
    return label == p->label ? height_ : height_ * p->delta;
}

FuzzyMembership FuzzyMembership::with_height(double height) const { return FuzzyMembership(shape_, height); }

FuzzyMembership triangular_from_relative_error(double peak, double k, double height) {
    if (!(k > 0.0 && k < 1.0)) throw std::invalid_argument("relative error coefficient must lie in (0, 1)");
    const double a = std::round(peak * (1.0 - k));
    const double b = std::round(peak * (1.0 + k));
    const double lower = std::min(a, b);
    const double upper = std::max(a, b);
    if (!(lower < peak && peak < upper))
        throw std::invalid_argument("degenerate support: rounded bounds collapse onto the peak");
    return FuzzyMembership(Triangular{lower, peak, upper}, height);
}

FuzzyMembership triangular_from_halfwidth(double peak, double half_width, double height) {
    if (!(std::isfinite(half_width) && half_width > 0.0)) throw std::invalid_argument("half-width must be > 0");
    return FuzzyMembership(Triangular{peak - half_width, peak, peak + half_width}, height);
}

FuzzyMembership gaussian_membership(double center, double spread, double height) {
    return FuzzyMembership(Gaussian{center, spread}, height);
}

FuzzyMembership nominal_membership(std::string label, double delta, double height) {
    return FuzzyMembership(NominalPlateau{std::move(label), delta}, height);
}

FuzzyMembership apply_certainty(const FuzzyMembership& m, Certainty level) {
    return m.with_height(m.peak_height() * certainty_value(level));
}

double possibility(const FuzzyMembership& m1, const FuzzyMembership& m2) {
    const bool nominal1 = m1.domain() == EvaluationDomain::Labels;
    const bool nominal2 = m2.domain() == EvaluationDomain::Labels;
    if (nominal1 != nominal2) throw IncompatibleAxes("cannot intersect a nominal membership with a numeric one");
    if (nominal1) return plateau_possibility(m1, m2);
    if (m1.domain() == EvaluationDomain::Continuous && m2.domain() == EvaluationDomain::Continuous)
        return exact_piecewise_linear(m1, m2);
    return integer_grid(m1, m2);
}

double nominal_proximity(std::string_view v1, std::string_view v2, double delta) {
    if (!(delta > 0.0 && delta <= kMaxNominalDelta)) throw std::invalid_argument("nominal delta must lie in (0, 0.5]");
    return v1 == v2 ? 1.0 : delta;
}

double qualitative_distance(double proximity) {
    if (!(proximity >= 0.0 && proximity <= 1.0)) throw std::invalid_argument("proximity must lie in [0, 1]");
    return 1.0 - proximity;
}

}  // namespace proxim::fuzzy
