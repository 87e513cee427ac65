#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "confit/dataset.hpp"
#include "confit/ols.hpp"
#include "confit/rng.hpp"

namespace confit {

struct ResamplePlan {
    std::size_t resamples = 10000;     // B
    std::uint64_t seed = 0;
    double skip_budget = 0.01;         // tolerated fraction of singular redraws
};

enum class SignDirection { Negative, Positive };

// Output of a bootstrap run: exactly B coefficient rows (singular resamples
// are redrawn deterministically), plus the full-data fit for centering.
struct BootstrapRun {
    ResamplePlan plan;
    ModelSpec spec;
    std::vector<std::string> labels;
    std::size_t resamples = 0;                    // B
    std::vector<double> coefficient_matrix;       // B x (k+1), row-major
    std::vector<double> derived_locations;        // B, quadratic specs only (NaN if a == 0)
    std::size_t skipped = 0;                      // singular resamples redrawn
    FitResult full_fit;
    ColumnSummary summary;                        // column summaries of the source data

    std::size_t terms() const { return labels.size(); }
    double coefficient(std::size_t resample, std::size_t term) const {
        return coefficient_matrix[resample * labels.size() + term];
    }
    std::vector<double> term_column(std::size_t term) const;

    std::string to_json() const;   // plan, spec, skipped, coefficient matrix
    std::string to_csv() const;    // one row per resample
};

struct Band {
    std::vector<double> grid;     // ascending focal values
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> center;   // full-data prediction
    double level = 0.95;

    std::string to_csv() const;   // grid,lower,center,upper
};

// n draws with replacement from {0..n-1}
std::vector<std::uint32_t> draw_resample(std::size_t n, RandomStream& stream);

// Case-resampling bootstrap: refits the model on B resamples of whole
// records. Deterministic function of (ds, spec, plan); `threads` only
// changes the execution schedule, never the result.
BootstrapRun run_bootstrap(const Dataset& ds, const ModelSpec& spec,
                           const ResamplePlan& plan, unsigned threads = 1);

// Percentile interval with rank r = q(B+1), linear interpolation between
// order statistics, clamped to the extremes.
Interval percentile_interval(std::vector<double> values, double level);

// quantile by the same rule (values must be sorted ascending)
double percentile_of_sorted(const std::vector<double>& sorted, double q);

// Fraction of resample coefficients strictly on the given side of zero.
double sign_confidence(const BootstrapRun& run, std::size_t term, SignDirection direction);

// Fraction of resamples with negative curvature and a positive turning
// point. Throws NotQuadratic for linear specs.
double shape_confidence(const BootstrapRun& run);

// Pointwise percentile band of the resample prediction curves over `grid`,
// evaluated at the given reference covariates.
Band confidence_band(const BootstrapRun& run, const std::vector<double>& grid,
                     const std::map<std::string, double>& reference, double level);

}  // namespace confit
