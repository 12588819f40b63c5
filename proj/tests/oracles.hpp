#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's numerical paths.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>

namespace test {

/// Fraction of `draws` samples of N(m, s²) that land in [c, d].
inline double monte_carlo_interval(double m, double s, double c, double d, int draws, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(m, s);
    int hits = 0;
    for (int i = 0; i < draws; ++i) {
        const double x = dist(gen);
        if (x >= c && x <= d) ++hits;
    }
    return static_cast<double>(hits) / draws;
}

/// max over a dense grid of min(f, g) on [lo, hi].
inline double brute_force_max_min(const std::function<double(double)>& f, const std::function<double(double)>& g,
                                  double lo, double hi, double step) {
    double best = 0.0;
    for (double x = lo; x <= hi + 0.5 * step; x += step) best = std::max(best, std::min(f(x), g(x)));
    return best;
}

/// Triangle with support [lo, hi], apex at `peak` with height `h`.
inline double triangle(double x, double lo, double peak, double hi, double h) {
    if (x <= lo || x >= hi) return 0.0;
    if (x <= peak) return h * (x - lo) / (peak - lo);
    return h * (hi - x) / (hi - peak);
}

}  // namespace test
