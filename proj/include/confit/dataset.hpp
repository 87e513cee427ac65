#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace confit {

// One branch office: the unit of analysis. performance is the net result
// per office per year in currency units; turnover and absenteeism are
// percentages; region is an ordinal code in {1, 2, 3}.
struct OfficeRecord {
    std::string office_id;
    double performance = 0.0;
    double turnover = 0.0;
    double absenteeism = 0.0;
    double mean_age = 0.0;
    int region = 1;
};

struct Dataset {
    std::vector<OfficeRecord> records;

    std::size_t n() const { return records.size(); }

    // Numeric column accessor; throws MissingColumn for unknown names
    // (office_id is text and not addressable as a regressor).
    std::vector<double> column(const std::string& name) const;

    static bool is_numeric_column(const std::string& name);
    static const std::vector<std::string>& numeric_columns();
};

// Declarative model: response ~ focal (+ focal^2 if quadratic) + controls.
// `reference` pins covariate values used when drawing prediction curves;
// anything not listed falls back to the column mean.
struct ModelSpec {
    std::string response = "performance";
    std::string focal = "turnover";
    bool quadratic = true;
    std::vector<std::string> controls = {"absenteeism", "mean_age", "region"};
    std::map<std::string, double> reference = {{"region", 1.0}};

    // throws DomainError on duplicate/overlapping terms
    void validate() const;

    // column labels in design order: intercept, focal, [focal^2], controls...
    std::vector<std::string> design_labels() const;
};

// Dense design matrix, row-major, first column all ones.
struct DesignMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;          // rows x cols, row-major
    std::vector<std::string> labels;     // cols names, labels[0] == "intercept"

    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    std::vector<double> column(std::size_t j) const;
};

struct ColumnStats {
    double mean = 0.0;
    double sd = 0.0;     // divisor n-1; 0 for a single observation
    double min = 0.0;
    double max = 0.0;
};

// Per-column summaries in schema order.
struct ColumnSummary {
    std::vector<std::pair<std::string, ColumnStats>> columns;

    const ColumnStats& at(const std::string& name) const;
    bool has(const std::string& name) const;
};

// Fixed CSV schema: office_id,performance,turnover,absenteeism,mean_age,region.
// Header required (columns located by name), '#' lines skipped, '.' decimal
// separator. Extra columns are ignored; their names are appended to
// `warnings` when given.
Dataset parse_csv(std::istream& in, std::vector<std::string>* warnings = nullptr);
Dataset parse_csv_string(const std::string& text, std::vector<std::string>* warnings = nullptr);
Dataset load_csv(const std::string& path, std::vector<std::string>* warnings = nullptr);

std::string write_csv(const Dataset& ds);

// Design matrix + response vector for a model spec. The focal^2 column is
// the elementwise square of the raw focal values; region enters as its raw
// ordinal code.
std::pair<DesignMatrix, std::vector<double>> build_design(const Dataset& ds,
                                                          const ModelSpec& spec);

ColumnSummary summarize(const Dataset& ds);

// Reference covariates for prediction curves: spec.reference wins, column
// means fill the rest. Keyed by control name; focal is never included.
std::map<std::string, double> resolve_reference(const ModelSpec& spec,
                                                const ColumnSummary& summary);

}  // namespace confit
