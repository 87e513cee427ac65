#include "confit/interpret.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "confit/errors.hpp"
#include "confit/json_writer.hpp"

namespace confit {

namespace {

// index of the first control coefficient within the design order
std::size_t first_control_index(const ModelSpec& spec) {
    return spec.quadratic ? 3 : 2;
}

}  // namespace

std::string shape_name(CurveShape s) {
    switch (s) {
        case CurveShape::InvertedU: return "inverted_u";
        case CurveShape::UprightU: return "upright_u";
        case CurveShape::DecliningOnly: return "declining_only";
        case CurveShape::NoCurvature: return "no_curvature";
    }
    return "no_curvature";
}

double turning_point(double a, double b) {
    if (a == 0.0) throw NoTurningPoint();
    return -b / (2.0 * a);
}

double delta_from_optimum(double a, double d) { return a * d * d; }

double predict_from_coefficients(const std::vector<double>& coefficients,
                                 const ModelSpec& spec, double focal_value,
                                 const std::map<std::string, double>& covariates) {
    std::size_t j = 0;
    double pred = coefficients[j++];
    pred += coefficients[j++] * focal_value;
    if (spec.quadratic) pred += coefficients[j++] * focal_value * focal_value;
    for (const auto& c : spec.controls) {
        auto it = covariates.find(c);
        if (it == covariates.end()) throw MissingCovariate(c);
        pred += coefficients[j++] * it->second;
    }
    return pred;
}

double predict_at(const FitResult& fit, const ModelSpec& spec,
                  const std::map<std::string, double>& covariates) {
    auto it = covariates.find(spec.focal);
    if (it == covariates.end()) throw MissingCovariate(spec.focal);
    return predict_from_coefficients(fit.coefficients, spec, it->second, covariates);
}

double p_to_confidence(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p_to_confidence: p must be in [0, 1]");
    return 1.0 - p / 2.0;
}

CurveShape classify_shape(const CurveSummary& curve) {
    if (!curve.curvature || *curve.curvature == 0.0) return CurveShape::NoCurvature;
    if (*curve.curvature > 0.0) return CurveShape::UprightU;
    if (curve.location && *curve.location > 0.0) return CurveShape::InvertedU;
    return CurveShape::DecliningOnly;
}

CurveSummary summarize_curve(const FitResult& fit, const ModelSpec& spec,
                             const Dataset& ds) {
    CurveSummary curve;
    curve.adj_r2 = fit.adj_r2;
    curve.n_total = ds.n();
    curve.reference = resolve_reference(spec, summarize(ds));

    const std::size_t base = first_control_index(spec);
    for (std::size_t i = 0; i < spec.controls.size(); ++i)
        curve.impacts.emplace_back(spec.controls[i], fit.coefficients[base + i]);

    if (spec.quadratic) {
        const double b = fit.coefficients[1];
        const double a = fit.coefficients[2];
        curve.curvature = a;
        if (a != 0.0) {
            curve.location = turning_point(a, b);
            auto covariates = curve.reference;
            covariates[spec.focal] = *curve.location;
            curve.optimum_prediction = predict_at(fit, spec, covariates);
            for (double v : ds.column(spec.focal))
                if (v < *curve.location) ++curve.n_below_location;
        }
    }
    curve.shape = classify_shape(curve);
    return curve;
}

std::string CurveSummary::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("location");
    location ? w.value(*location) : w.null_value();
    w.key("curvature");
    curvature ? w.value(*curvature) : w.null_value();
    w.key("optimum_prediction");
    optimum_prediction ? w.value(*optimum_prediction) : w.null_value();
    w.key("impacts").begin_object();
    for (const auto& [name, coef] : impacts) w.key(name).value(coef);
    w.end_object();
    w.key("adj_r2").value(adj_r2);
    w.key("shape").value(shape_name(shape));
    w.key("reference").begin_object();
    for (const auto& [name, v] : reference) w.key(name).value(v);
    w.end_object();
    w.key("n_below_location").value(static_cast<std::uint64_t>(n_below_location));
    w.key("n_total").value(static_cast<std::uint64_t>(n_total));
    w.end_object();
    return w.str();
}

std::string impact_description(const std::string& column, double coefficient) {
    if (column == "turnover") return "Predicted impact of 1% increase in staff turnover";
    if (column == "absenteeism") return "Predicted impact of 1% increase in absenteeism";
    if (column == "mean_age") return "Predicted impact of 1 year increase in average age";
    if (column == "region") {
        std::string s = "Predicted difference between neighbouring regions";
        if (coefficient > 0)
            s += " (with Region 1 having the lowest performance)";
        else if (coefficient < 0)
            s += " (with Region 1 having the highest performance)";
        return s;
    }
    return "Predicted impact of 1 unit increase in " + column;
}

std::string fmt_currency(double v) {
    // half-up to an integer, then thousands separators
    const double rounded = std::floor(v + 0.5);
    const bool neg = rounded < 0;
    long long mag = static_cast<long long>(std::fabs(rounded));
    std::string digits = std::to_string(mag);
    std::string out;
    int count = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (count && count % 3 == 0) out += ',';
        out += *it;
        ++count;
    }
    if (neg) out += '-';
    std::reverse(out.begin(), out.end());
    return out;
}

std::string fmt_location(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

std::string fmt_percent(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f%%", v * 100.0);
    return buf;
}

namespace {

std::string fmt_estimate(const FriendlyRow& row, double v) {
    switch (row.kind) {
        case FriendlyRow::Kind::Location: return fmt_location(v);
        case FriendlyRow::Kind::Percent: return fmt_percent(v);
        case FriendlyRow::Kind::Currency: return fmt_currency(v);
    }
    return fmt_currency(v);
}

void add_extrapolation_footnote(FriendlyTable& table, const CurveSummary& curve) {
    if (!curve.location || curve.n_total == 0) return;
    const double share = static_cast<double>(curve.n_below_location) /
                         static_cast<double>(curve.n_total);
    if (share < 0.10)
        table.footnotes.push_back(
            "Only " + std::to_string(curve.n_below_location) + " of " +
            std::to_string(curve.n_total) +
            " observations lie below the optimum; the rising side of the curve is "
            "largely extrapolated.");
    else if (share > 0.90)
        table.footnotes.push_back(
            "Only " + std::to_string(curve.n_total - curve.n_below_location) + " of " +
            std::to_string(curve.n_total) +
            " observations lie above the optimum; the falling side of the curve is "
            "largely extrapolated.");
}

std::string location_description(const ModelSpec& spec) {
    if (spec.focal == "turnover") return "Location of optimum (annual % staff turnover)";
    return "Location of optimum (" + spec.focal + ")";
}

std::string optimum_description(const CurveSummary& curve) {
    std::string s = "Predicted optimum performance";
    if (!curve.reference.empty()) {
        s += " (";
        bool first = true;
        for (const auto& [k, v] : curve.reference) {
            if (!first) s += ", ";
            first = false;
            char buf[48];
            std::snprintf(buf, sizeof(buf), "%s=%g", k.c_str(), v);
            s += buf;
        }
        s += ")";
    }
    return s;
}

}  // namespace

FriendlyTable friendly_table(const CurveSummary& curve, const ModelSpec& spec) {
    FriendlyTable table;
    if (curve.location)
        table.rows.push_back({location_description(spec), *curve.location, std::nullopt,
                              FriendlyRow::Kind::Location});
    if (curve.curvature)
        table.rows.push_back({"Curvature", *curve.curvature, std::nullopt,
                              FriendlyRow::Kind::Currency});
    for (const auto& [name, coef] : curve.impacts)
        table.rows.push_back({impact_description(name, coef), coef, std::nullopt,
                              FriendlyRow::Kind::Currency});
    table.rows.push_back({"Proportion of variation explained (Adjusted R²)",
                          curve.adj_r2, std::nullopt, FriendlyRow::Kind::Percent});
    if (curve.optimum_prediction)
        table.rows.push_back({optimum_description(curve), *curve.optimum_prediction,
                              std::nullopt, FriendlyRow::Kind::Currency});
    add_extrapolation_footnote(table, curve);
    return table;
}

FriendlyTable friendly_table(const FitResult& fit, const ModelSpec& spec,
                             std::optional<double> level) {
    FriendlyTable table;
    table.level = level;
    auto interval_for = [&](std::size_t j) -> std::optional<Interval> {
        if (!level) return std::nullopt;
        return confidence_interval(fit, j, *level);
    };

    std::size_t j = 1;
    if (spec.quadratic) {
        const double b = fit.coefficients[1];
        const double a = fit.coefficients[2];
        if (a != 0.0)
            table.rows.push_back({location_description(spec), turning_point(a, b),
                                  std::nullopt, FriendlyRow::Kind::Location});
        table.rows.push_back({"Curvature", a, interval_for(2), FriendlyRow::Kind::Currency});
        j = 3;
    } else {
        table.rows.push_back({impact_description(spec.focal, fit.coefficients[1]),
                              fit.coefficients[1], interval_for(1),
                              FriendlyRow::Kind::Currency});
        j = 2;
    }
    for (std::size_t i = 0; i < spec.controls.size(); ++i, ++j)
        table.rows.push_back({impact_description(spec.controls[i], fit.coefficients[j]),
                              fit.coefficients[j], interval_for(j),
                              FriendlyRow::Kind::Currency});
    table.rows.push_back({"Proportion of variation explained (Adjusted R²)",
                          fit.adj_r2, std::nullopt, FriendlyRow::Kind::Percent});
    return table;
}

std::string to_markdown(const FriendlyTable& table) {
    const bool with_ci = table.level.has_value();
    std::string out;
    if (with_ci) {
        char head[128];
        std::snprintf(head, sizeof(head),
                      "| | Best estimate | Lower limit of %.0f%% CI | Upper limit of %.0f%% CI |\n",
                      *table.level * 100.0, *table.level * 100.0);
        out += head;
        out += "|---|---|---|---|\n";
    } else {
        out += "| | Best estimate |\n";
        out += "|---|---|\n";
    }
    for (const auto& row : table.rows) {
        out += "| " + row.description + " | " + fmt_estimate(row, row.estimate) + " |";
        if (with_ci) {
            if (row.interval)
                out += " " + fmt_estimate(row, row.interval->lower) + " | " +
                       fmt_estimate(row, row.interval->upper) + " |";
            else
                out += " — | — |";
        }
        out += "\n";
    }
    for (const auto& note : table.footnotes) out += "\n*" + note + "*\n";
    return out;
}

std::string to_csv(const FriendlyTable& table) {
    // machine form: full-precision values, no thousands separators
    std::string out = "description,estimate";
    if (table.level) out += ",lower,upper,level";
    out += "\n";
    for (const auto& row : table.rows) {
        out += '"' + row.description + "\"," + json_number(row.estimate);
        if (table.level) {
            if (row.interval)
                out += "," + json_number(row.interval->lower) + "," +
                       json_number(row.interval->upper) + "," + json_number(row.interval->level);
            else
                out += ",,,";
        }
        out += "\n";
    }
    return out;
}

}  // namespace confit
