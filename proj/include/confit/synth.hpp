#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "confit/dataset.hpp"

namespace confit {

// Data-generating process calibrated to the case-study regime: 110 offices,
// optimum turnover near 6.3%, adjusted R-squared around 13%, and only a
// handful of observations below the optimum.
struct DgpParams {
    std::size_t n = 110;
    double intercept = 86560.0;
    double a_true = -86.743836;        // curvature
    double b_true = 1097.49998;        // linear term
    std::map<std::string, double> control_effects = {
        {"absenteeism", -3330.0}, {"mean_age", -831.0}, {"region", 15465.0}};
    double noise_sd = 40000.0;
    double turnover_min = 3.0;         // triangular draw, skewed right of the optimum
    double turnover_mode = 8.0;
    double turnover_max = 30.0;
    std::uint64_t seed = 0;

    double optimum() const { return -b_true / (2.0 * a_true); }
};

// performance = intercept + b*t + a*t^2 + control effects + gaussian noise.
// Pure function of params (including the seed).
Dataset generate(const DgpParams& params);

// Independent check of the main fit: solves the normal equations
// (X^T X) c = X^T y by full-pivot Gaussian elimination. Shares no solver
// code with ols::fit.
std::vector<double> normal_equations_oracle(const DesignMatrix& design,
                                            const std::vector<double>& y);

// Exact distribution of a statistic over all n^n equally likely ordered
// resamples of a tiny sample. The statistic may return nullopt for
// degenerate resamples; those are excluded and the rest renormalized,
// matching the bootstrap engine's redraw policy.
struct ExactDistribution {
    std::vector<double> values;        // ascending
    std::vector<double> probabilities; // same length, sums to 1

    double cdf(double v) const;        // P(X <= v)
    double cdf_below(double v) const;  // P(X < v)
};

using ResampleStatistic =
    std::function<std::optional<double>(std::span<const std::uint32_t>)>;

ExactDistribution exact_bootstrap(std::size_t n, const ResampleStatistic& statistic);

// Fraction of `trials` whose analytic level-L interval for the focal linear
// coefficient covers b_true. Per-trial data is drawn with streams derived
// from params.seed, so the result is deterministic.
double coverage_sim(const DgpParams& params, std::size_t trials, double level);

}  // namespace confit
