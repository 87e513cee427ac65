#pragma once

#include <string>
#include <vector>

#include "confit/dataset.hpp"

namespace confit {

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
};

// Full inferential output of an OLS fit. Coefficients are unstandardized,
// intercept first, in design-column order.
struct FitResult {
    std::vector<std::string> labels;
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    std::vector<double> t_stats;
    std::vector<double> p_values;     // two-tailed
    std::vector<double> residuals;
    long df_resid = 0;
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double sigma2 = 0.0;              // residual variance, RSS / df

    std::size_t term_index(const std::string& label) const;
    std::string to_json() const;
};

// Least squares via Householder QR with column pivoting. A pivot below
// 1e-10 x the largest pivot raises SingularDesign naming the offending
// column; n <= k+1 raises Underdetermined.
FitResult fit(const DesignMatrix& design, const std::vector<double>& y);

// coefficients[j] -/+ t_quantile(1-(1-level)/2, df) * std_errors[j]
Interval confidence_interval(const FitResult& fit, std::size_t term, double level);

// two-tailed p for term j, recomputed from the t statistic
double p_value_of(const FitResult& fit, std::size_t term);

// Standardized coefficients b_j * sd(x_j) / sd(y) for the non-intercept
// terms, in design order. Throws ZeroVariance naming the offending column.
std::vector<double> standardize(const FitResult& fit, const DesignMatrix& design,
                                const std::vector<double>& y);

double mean_of(const std::vector<double>& v);
double sd_of(const std::vector<double>& v);  // divisor n-1

}  // namespace confit
