#include "confit/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "confit/errors.hpp"
#include "confit/interpret.hpp"
#include "confit/json_writer.hpp"

namespace confit {

std::vector<std::uint32_t> draw_resample(std::size_t n, RandomStream& stream) {
    if (n == 0) throw DomainError("draw_resample: n must be >= 1");
    std::vector<std::uint32_t> idx(n);
    for (auto& i : idx) i = static_cast<std::uint32_t>(stream.next_below(n));
    return idx;
}

std::vector<double> BootstrapRun::term_column(std::size_t term) const {
    std::vector<double> out(resamples);
    for (std::size_t r = 0; r < resamples; ++r) out[r] = coefficient(r, term);
    return out;
}

namespace {

// refit on a row subset of the prebuilt design; row i of the design depends
// only on record i, so resampling design rows equals resampling records
FitResult fit_rows(const DesignMatrix& X, const std::vector<double>& y,
                   const std::vector<std::uint32_t>& rows) {
    DesignMatrix Xb;
    Xb.rows = rows.size();
    Xb.cols = X.cols;
    Xb.labels = X.labels;
    Xb.values.resize(Xb.rows * Xb.cols);
    std::vector<double> yb(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::uint32_t src = rows[i];
        std::copy(X.values.begin() + src * X.cols, X.values.begin() + (src + 1) * X.cols,
                  Xb.values.begin() + i * X.cols);
        yb[i] = y[src];
    }
    return fit(Xb, yb);
}

}  // namespace

BootstrapRun run_bootstrap(const Dataset& ds, const ModelSpec& spec,
                           const ResamplePlan& plan, unsigned threads) {
    if (plan.resamples < 1) throw DomainError("run_bootstrap: B must be >= 1");
    if (!(plan.skip_budget >= 0.0 && plan.skip_budget < 1.0))
        throw DomainError("run_bootstrap: skip_budget must be in [0, 1)");

    auto [X, y] = build_design(ds, spec);

    BootstrapRun run;
    run.plan = plan;
    run.spec = spec;
    run.labels = X.labels;
    run.resamples = plan.resamples;
    run.full_fit = fit(X, y);   // propagate full-data fit errors before resampling
    run.summary = summarize(ds);

    const std::size_t B = plan.resamples;
    const std::size_t k1 = X.cols;
    const std::size_t n = X.rows;
    run.coefficient_matrix.assign(B * k1, 0.0);
    if (spec.quadratic)
        run.derived_locations.assign(B, std::numeric_limits<double>::quiet_NaN());

    const std::size_t max_skips =
        static_cast<std::size_t>(plan.skip_budget * static_cast<double>(B));

    std::vector<std::size_t> skips_per_thread;
    std::exception_ptr first_error;
    std::size_t first_error_resample = std::numeric_limits<std::size_t>::max();
    std::mutex error_mutex;

    auto worker = [&](std::size_t begin, std::size_t end, std::size_t* skips) {
        try {
            for (std::size_t r = begin; r < end; ++r) {
                for (std::uint64_t attempt = 0;; ++attempt) {
                    // each (resample, attempt) owns an independent stream, so
                    // the outcome is the same under any thread partition
                    if (attempt > max_skips + 1)
                        throw TooManySingular(*skips + static_cast<std::size_t>(attempt),
                                              max_skips);
                    RandomStream stream = derive_stream(plan.seed, r, attempt);
                    auto rows = draw_resample(n, stream);
                    try {
                        FitResult f = fit_rows(X, y, rows);
                        for (std::size_t j = 0; j < k1; ++j)
                            run.coefficient_matrix[r * k1 + j] = f.coefficients[j];
                        if (spec.quadratic && f.coefficients[2] != 0.0)
                            run.derived_locations[r] =
                                turning_point(f.coefficients[2], f.coefficients[1]);
                        break;
                    } catch (const SingularDesign&) {
                        ++*skips;
                    }
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (begin < first_error_resample) {
                first_error_resample = begin;
                first_error = std::current_exception();
            }
        }
    };

    if (threads <= 1) {
        std::size_t skips = 0;
        worker(0, B, &skips);
        if (first_error) std::rethrow_exception(first_error);
        run.skipped = skips;
    } else {
        const std::size_t T = std::min<std::size_t>(threads, B);
        skips_per_thread.assign(T, 0);
        std::vector<std::thread> pool;
        pool.reserve(T);
        for (std::size_t t = 0; t < T; ++t) {
            const std::size_t begin = B * t / T;
            const std::size_t end = B * (t + 1) / T;
            pool.emplace_back(worker, begin, end, &skips_per_thread[t]);
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
        for (std::size_t s : skips_per_thread) run.skipped += s;
    }

    if (run.skipped > max_skips) throw TooManySingular(run.skipped, max_skips);
    return run;
}

double percentile_of_sorted(const std::vector<double>& sorted, double q) {
    const std::size_t B = sorted.size();
    const double r = q * static_cast<double>(B + 1);
    if (r <= 1.0) return sorted.front();
    if (r >= static_cast<double>(B)) return sorted.back();
    const auto i = static_cast<std::size_t>(r);   // 1-based lower order statistic
    const double frac = r - static_cast<double>(i);
    return sorted[i - 1] + frac * (sorted[i] - sorted[i - 1]);
}

Interval percentile_interval(std::vector<double> values, double level) {
    if (values.size() < 2) throw DomainError("percentile_interval: need at least 2 values");
    if (!(level > 0.0 && level < 1.0))
        throw DomainError("percentile_interval: level must be in (0, 1)");
    std::sort(values.begin(), values.end());
    const double alpha = (1.0 - level) / 2.0;
    return {percentile_of_sorted(values, alpha), percentile_of_sorted(values, 1.0 - alpha),
            level};
}

double sign_confidence(const BootstrapRun& run, std::size_t term, SignDirection direction) {
    if (term >= run.terms()) throw DomainError("sign_confidence: term index out of range");
    std::size_t count = 0;
    for (std::size_t r = 0; r < run.resamples; ++r) {
        const double c = run.coefficient(r, term);
        if (direction == SignDirection::Negative ? c < 0.0 : c > 0.0) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(run.resamples);
}

double shape_confidence(const BootstrapRun& run) {
    if (!run.spec.quadratic) throw NotQuadratic();
    std::size_t count = 0;
    for (std::size_t r = 0; r < run.resamples; ++r) {
        const double a = run.coefficient(r, 2);
        const double loc = run.derived_locations[r];
        if (a < 0.0 && loc > 0.0) ++count;   // NaN location never counts
    }
    return static_cast<double>(count) / static_cast<double>(run.resamples);
}

Band confidence_band(const BootstrapRun& run, const std::vector<double>& grid,
                     const std::map<std::string, double>& reference, double level) {
    if (grid.empty()) throw DomainError("confidence_band: grid must be non-empty");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw DomainError("confidence_band: grid must be ascending");
    if (!(level > 0.0 && level < 1.0))
        throw DomainError("confidence_band: level must be in (0, 1)");

    Band band;
    band.grid = grid;
    band.level = level;
    band.lower.resize(grid.size());
    band.upper.resize(grid.size());
    band.center.resize(grid.size());

    const std::size_t k1 = run.terms();
    std::vector<double> row(k1);
    std::vector<double> predictions(run.resamples);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        band.center[g] =
            predict_from_coefficients(run.full_fit.coefficients, run.spec, grid[g], reference);
        for (std::size_t r = 0; r < run.resamples; ++r) {
            row.assign(run.coefficient_matrix.begin() + r * k1,
                       run.coefficient_matrix.begin() + (r + 1) * k1);
            predictions[r] = predict_from_coefficients(row, run.spec, grid[g], reference);
        }
        if (run.resamples == 1) {
            band.lower[g] = band.upper[g] = predictions[0];
        } else {
            Interval iv = percentile_interval(predictions, level);
            band.lower[g] = iv.lower;
            band.upper[g] = iv.upper;
        }
    }
    return band;
}

std::string BootstrapRun::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("plan").begin_object();
    w.key("resamples").value(static_cast<std::uint64_t>(plan.resamples));
    w.key("seed").value(plan.seed);
    w.key("skip_budget").value(plan.skip_budget);
    w.end_object();
    w.key("spec").begin_object();
    w.key("response").value(spec.response);
    w.key("focal").value(spec.focal);
    w.key("quadratic").value(spec.quadratic);
    w.key("controls").value(spec.controls);
    w.key("reference").begin_object();
    for (const auto& [k, v] : spec.reference) w.key(k).value(v);
    w.end_object();
    w.end_object();
    w.key("skipped").value(static_cast<std::uint64_t>(skipped));
    w.key("labels").value(labels);
    w.key("coefficients").begin_array();
    for (std::size_t r = 0; r < resamples; ++r) {
        w.begin_array();
        for (std::size_t j = 0; j < labels.size(); ++j) w.value(coefficient(r, j));
        w.end_array();
    }
    w.end_array();
    if (spec.quadratic) {
        w.key("locations").begin_array();
        for (double loc : derived_locations) w.value(loc);   // NaN -> null
        w.end_array();
    }
    w.end_object();
    return w.str();
}

std::string BootstrapRun::to_csv() const {
    std::string out;
    for (std::size_t j = 0; j < labels.size(); ++j) {
        if (j) out += ',';
        out += labels[j];
    }
    if (spec.quadratic) out += ",location";
    out += '\n';
    for (std::size_t r = 0; r < resamples; ++r) {
        for (std::size_t j = 0; j < labels.size(); ++j) {
            if (j) out += ',';
            out += json_number(coefficient(r, j));
        }
        if (spec.quadratic) {
            out += ',';
            if (std::isfinite(derived_locations[r])) out += json_number(derived_locations[r]);
        }
        out += '\n';
    }
    return out;
}

std::string Band::to_csv() const {
    std::string out = "grid,lower,center,upper\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out += json_number(grid[i]);
        out += ',';
        out += json_number(lower[i]);
        out += ',';
        out += json_number(center[i]);
        out += ',';
        out += json_number(upper[i]);
        out += '\n';
    }
    return out;
}

}  // namespace confit
