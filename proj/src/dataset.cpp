#include "confit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "confit/errors.hpp"

namespace confit {

namespace {

const std::vector<std::string> kSchema = {
    "office_id", "performance", "turnover", "absenteeism", "mean_age", "region"};

const std::vector<std::string> kNumeric = {
    "performance", "turnover", "absenteeism", "mean_age", "region"};

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& cell, std::size_t row, const std::string& col) {
    const std::string t = trim(cell);
    if (t.empty()) throw BadValue(row, col, "empty cell");
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) throw BadValue(row, col, "not a number: '" + t + "'");
    if (!std::isfinite(v)) throw BadValue(row, col, "non-finite value");
    return v;
}

// round-trips any finite double
std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

const std::vector<std::string>& Dataset::numeric_columns() { return kNumeric; }

bool Dataset::is_numeric_column(const std::string& name) {
    return std::find(kNumeric.begin(), kNumeric.end(), name) != kNumeric.end();
}

std::vector<double> Dataset::column(const std::string& name) const {
    std::vector<double> out;
    out.reserve(records.size());
    if (name == "performance") {
        for (const auto& r : records) out.push_back(r.performance);
    } else if (name == "turnover") {
        for (const auto& r : records) out.push_back(r.turnover);
    } else if (name == "absenteeism") {
        for (const auto& r : records) out.push_back(r.absenteeism);
    } else if (name == "mean_age") {
        for (const auto& r : records) out.push_back(r.mean_age);
    } else if (name == "region") {
        for (const auto& r : records) out.push_back(static_cast<double>(r.region));
    } else {
        throw MissingColumn(name);
    }
    return out;
}

void ModelSpec::validate() const {
    if (focal.empty()) throw DomainError("model spec: focal column must be named");
    std::set<std::string> seen;
    seen.insert(focal);
    for (const auto& c : controls) {
        if (c == focal) throw DomainError("model spec: focal '" + focal + "' repeated in controls");
        if (!seen.insert(c).second)
            throw DomainError("model spec: duplicate control '" + c + "'");
    }
    if (seen.count(response))
        throw DomainError("model spec: response '" + response + "' also appears as a predictor");
}

std::vector<std::string> ModelSpec::design_labels() const {
    std::vector<std::string> labels = {"intercept", focal};
    if (quadratic) labels.push_back(focal + "^2");
    labels.insert(labels.end(), controls.begin(), controls.end());
    return labels;
}

std::vector<double> DesignMatrix::column(std::size_t j) const {
    std::vector<double> out(rows);
    for (std::size_t i = 0; i < rows; ++i) out[i] = at(i, j);
    return out;
}

const ColumnStats& ColumnSummary::at(const std::string& name) const {
    for (const auto& [n, s] : columns)
        if (n == name) return s;
    throw MissingColumn(name);
}

bool ColumnSummary::has(const std::string& name) const {
    for (const auto& [n, s] : columns)
        if (n == name) return true;
    return false;
}

Dataset parse_csv(std::istream& in, std::vector<std::string>* warnings) {
    std::string line;
    // header
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        header = split_line(line);
        break;
    }
    if (header.empty()) throw EmptyData();
    for (auto& h : header) h = trim(h);

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (std::find(kSchema.begin(), kSchema.end(), header[i]) == kSchema.end()) {
            if (warnings)
                warnings->push_back("ignoring unknown column '" + header[i] + "'");
            continue;
        }
        index[header[i]] = i;
    }
    for (const auto& col : kSchema)
        if (!index.count(col)) throw MissingColumn(col);

    Dataset ds;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        ++row;
        auto cells = split_line(line);
        if (cells.size() < header.size())
            throw BadValue(row, header[cells.size()],
                           "row has " + std::to_string(cells.size()) + " cells, header has " +
                               std::to_string(header.size()));
        OfficeRecord rec;
        rec.office_id = trim(cells[index.at("office_id")]);
        rec.performance = parse_number(cells[index.at("performance")], row, "performance");
        rec.turnover = parse_number(cells[index.at("turnover")], row, "turnover");
        rec.absenteeism = parse_number(cells[index.at("absenteeism")], row, "absenteeism");
        rec.mean_age = parse_number(cells[index.at("mean_age")], row, "mean_age");
        double region = parse_number(cells[index.at("region")], row, "region");
        if (region != std::floor(region))
            throw BadValue(row, "region", "region code must be an integer");
        if (region < 1 || region > 3)
            throw BadValue(row, "region", "region code must be 1, 2 or 3");
        rec.region = static_cast<int>(region);
        if (rec.turnover < 0) throw BadValue(row, "turnover", "must be >= 0");
        if (rec.absenteeism < 0) throw BadValue(row, "absenteeism", "must be >= 0");
        if (rec.mean_age <= 0) throw BadValue(row, "mean_age", "must be > 0");
        ds.records.push_back(std::move(rec));
    }
    if (ds.records.empty()) throw EmptyData();
    return ds;
}

Dataset parse_csv_string(const std::string& text, std::vector<std::string>* warnings) {
    std::istringstream in(text);
    return parse_csv(in, warnings);
}

Dataset load_csv(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open data file: " + path);
    return parse_csv(in, warnings);
}

std::string write_csv(const Dataset& ds) {
    std::string out = "office_id,performance,turnover,absenteeism,mean_age,region\n";
    std::size_t row = 0;
    for (const auto& r : ds.records) {
        ++row;
        if (r.office_id.find_first_of(",\n\"") != std::string::npos)
            throw BadValue(row, "office_id", "office_id must not contain commas or quotes");
        out += r.office_id;
        out += ',';
        out += fmt_full(r.performance);
        out += ',';
        out += fmt_full(r.turnover);
        out += ',';
        out += fmt_full(r.absenteeism);
        out += ',';
        out += fmt_full(r.mean_age);
        out += ',';
        out += std::to_string(r.region);
        out += '\n';
    }
    return out;
}

std::pair<DesignMatrix, std::vector<double>> build_design(const Dataset& ds,
                                                          const ModelSpec& spec) {
    spec.validate();
    if (ds.n() == 0) throw EmptyData();

    const std::vector<double> y = ds.column(spec.response);
    const std::vector<double> focal = ds.column(spec.focal);
    std::vector<std::vector<double>> control_cols;
    control_cols.reserve(spec.controls.size());
    for (const auto& c : spec.controls) control_cols.push_back(ds.column(c));

    DesignMatrix X;
    X.labels = spec.design_labels();
    X.rows = ds.n();
    X.cols = X.labels.size();
    X.values.resize(X.rows * X.cols);
    for (std::size_t i = 0; i < X.rows; ++i) {
        std::size_t j = 0;
        X.at(i, j++) = 1.0;
        X.at(i, j++) = focal[i];
        if (spec.quadratic) X.at(i, j++) = focal[i] * focal[i];
        for (const auto& col : control_cols) X.at(i, j++) = col[i];
    }
    return {std::move(X), y};
}

ColumnSummary summarize(const Dataset& ds) {
    if (ds.n() == 0) throw EmptyData();
    ColumnSummary summary;
    for (const auto& name : kNumeric) {
        const auto values = ds.column(name);
        ColumnStats st;
        st.min = values[0];
        st.max = values[0];
        // Welford's online mean/variance
        double mean = 0.0, m2 = 0.0;
        std::size_t count = 0;
        for (double v : values) {
            ++count;
            double delta = v - mean;
            mean += delta / static_cast<double>(count);
            m2 += delta * (v - mean);
            st.min = std::min(st.min, v);
            st.max = std::max(st.max, v);
        }
        st.mean = mean;
        st.sd = count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1)) : 0.0;
        summary.columns.emplace_back(name, st);
    }
    return summary;
}

std::map<std::string, double> resolve_reference(const ModelSpec& spec,
                                                const ColumnSummary& summary) {
    std::map<std::string, double> ref;
    for (const auto& c : spec.controls) {
        auto it = spec.reference.find(c);
        ref[c] = it != spec.reference.end() ? it->second : summary.at(c).mean;
    }
    return ref;
}

}  // namespace confit
