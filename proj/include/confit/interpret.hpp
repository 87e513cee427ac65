#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confit/dataset.hpp"
#include "confit/ols.hpp"

namespace confit {

enum class CurveShape { InvertedU, UprightU, DecliningOnly, NoCurvature };

std::string shape_name(CurveShape s);

// The "friendly" reading of a fitted model: where the optimum sits, how
// sharply the curve bends, and what one unit of each control is predicted
// to do.
struct CurveSummary {
    std::optional<double> location;        // focal value at the turning point, -b/2a
    std::optional<double> curvature;       // quadratic coefficient a
    std::optional<double> optimum_prediction;  // prediction at location, reference covariates
    std::vector<std::pair<std::string, double>> impacts;  // control -> coefficient
    double adj_r2 = 0.0;
    CurveShape shape = CurveShape::NoCurvature;
    std::map<std::string, double> reference;   // covariates used for optimum_prediction
    // how the observed focal values split around the location (extrapolation flag)
    std::size_t n_below_location = 0;
    std::size_t n_total = 0;

    std::string to_json() const;
};

// focal value maximizing (or minimizing) a + b*x + a*x^2; -b/(2a).
// Throws NoTurningPoint when a == 0.
double turning_point(double a, double b);

// predicted performance change from being d units away from the optimum: a*d^2
double delta_from_optimum(double a, double d);

// prediction at explicit covariates; the squared focal term is computed
// internally. Throws MissingCovariate.
double predict_at(const FitResult& fit, const ModelSpec& spec,
                  const std::map<std::string, double>& covariates);

// same arithmetic from a bare coefficient vector (used per bootstrap resample)
double predict_from_coefficients(const std::vector<double>& coefficients,
                                 const ModelSpec& spec, double focal_value,
                                 const std::map<std::string, double>& covariates);

// confidence that the effect has the sign of the point estimate: 1 - p/2
double p_to_confidence(double p);

CurveShape classify_shape(const CurveSummary& curve);

// Assemble the friendly parameters from a fit. Reference covariates come
// from spec.reference, column means fill the gaps.
CurveSummary summarize_curve(const FitResult& fit, const ModelSpec& spec,
                             const Dataset& ds);

// One table row: description, best estimate, optional interval. The numeric
// formatting (integers for currency impacts, one decimal for the location,
// whole percents) lives in the renderers.
struct FriendlyRow {
    std::string description;
    double estimate = 0.0;
    std::optional<Interval> interval;
    enum class Kind { Currency, Location, Percent } kind = Kind::Currency;
};

struct FriendlyTable {
    std::vector<FriendlyRow> rows;
    std::vector<std::string> footnotes;
    std::optional<double> level;  // CI level of the interval column, if any
};

// Table of best estimates from a curve summary (curvilinear layout).
FriendlyTable friendly_table(const CurveSummary& curve, const ModelSpec& spec);

// Table of impacts with analytic confidence intervals (linear layout; a
// quadratic fit additionally gets location and curvature rows). Pass
// std::nullopt for a best-estimates-only table.
FriendlyTable friendly_table(const FitResult& fit, const ModelSpec& spec,
                             std::optional<double> level);

std::string impact_description(const std::string& column, double coefficient);

std::string to_markdown(const FriendlyTable& table);
std::string to_csv(const FriendlyTable& table);

// paper-style number rendering
std::string fmt_currency(double v);   // integer, thousands separators, half-up
std::string fmt_location(double v);   // one decimal
std::string fmt_percent(double v);    // whole percent from a fraction

}  // namespace confit
