#include "confit/ols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "confit/errors.hpp"
#include "confit/json_writer.hpp"
#include "confit/tdist.hpp"

namespace confit {

namespace {

constexpr double kPivotRatio = 1e-10;  // pivot below this x largest => collinear

}  // namespace

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

std::size_t FitResult::term_index(const std::string& label) const {
    for (std::size_t j = 0; j < labels.size(); ++j)
        if (labels[j] == label) return j;
    throw MissingColumn(label);
}

std::string FitResult::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("labels").value(labels);
    w.key("coef").value(coefficients);
    w.key("se").value(std_errors);
    w.key("t").value(t_stats);
    w.key("p").value(p_values);
    w.key("r2").value(r2);
    w.key("adj_r2").value(adj_r2);
    w.key("df").value(static_cast<int>(df_resid));
    w.end_object();
    return w.str();
}

FitResult fit(const DesignMatrix& design, const std::vector<double>& y) {
    const std::size_t n = design.rows;
    const std::size_t m = design.cols;
    if (y.size() != n) throw DomainError("fit: response length does not match design rows");
    if (n <= m) throw Underdetermined(n, m);

    // working copies; A is factored in place, qty carries Q^T y
    std::vector<double> a(design.values);
    std::vector<double> qty(y);
    std::vector<std::size_t> piv(m);
    for (std::size_t j = 0; j < m; ++j) piv[j] = j;
    auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * m + j]; };

    std::vector<double> rdiag(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        // column pivoting on remaining column norms
        std::size_t best = j;
        double best_norm = -1.0;
        for (std::size_t c = j; c < m; ++c) {
            double nrm = 0.0;
            for (std::size_t i = j; i < n; ++i) nrm += A(i, c) * A(i, c);
            if (nrm > best_norm) {
                best_norm = nrm;
                best = c;
            }
        }
        if (best != j) {
            for (std::size_t i = 0; i < n; ++i) std::swap(A(i, j), A(i, best));
            std::swap(piv[j], piv[best]);
        }

        // Householder reflection annihilating column j below the diagonal
        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) norm += A(i, j) * A(i, j);
        norm = std::sqrt(norm);
        if (A(j, j) > 0) norm = -norm;
        rdiag[j] = norm;

        if (norm != 0.0) {
            for (std::size_t i = j; i < n; ++i) A(i, j) /= norm;
            A(j, j) += 1.0;
            const double head = A(j, j);
            for (std::size_t c = j + 1; c < m; ++c) {
                double s = 0.0;
                for (std::size_t i = j; i < n; ++i) s += A(i, j) * A(i, c);
                s = -s / head;
                for (std::size_t i = j; i < n; ++i) A(i, c) += s * A(i, j);
            }
            double s = 0.0;
            for (std::size_t i = j; i < n; ++i) s += A(i, j) * qty[i];
            s = -s / head;
            for (std::size_t i = j; i < n; ++i) qty[i] += s * A(i, j);
        }
    }

    // rank check against the largest pivot (pivoting makes rdiag decreasing)
    const double largest = std::fabs(rdiag[0]);
    for (std::size_t j = 0; j < m; ++j) {
        if (std::fabs(rdiag[j]) <= kPivotRatio * largest || rdiag[j] == 0.0)
            throw SingularDesign(design.labels[piv[j]]);
    }

    // back-substitute R beta_perm = (Q^T y)[0..m)
    std::vector<double> beta_perm(m, 0.0);
    for (std::size_t jj = m; jj-- > 0;) {
        double s = qty[jj];
        for (std::size_t c = jj + 1; c < m; ++c) s -= A(jj, c) * beta_perm[c];
        beta_perm[jj] = s / rdiag[jj];
    }

    // R^{-1}: row norms give the diagonal of (X^T X)^{-1} in permuted order
    std::vector<double> rinv(m * m, 0.0);
    for (std::size_t jj = m; jj-- > 0;) {
        rinv[jj * m + jj] = 1.0 / rdiag[jj];
        for (std::size_t c = jj + 1; c < m; ++c) {
            double s = 0.0;
            for (std::size_t l = jj + 1; l <= c; ++l)
                s += A(jj, l) * rinv[l * m + c];
            rinv[jj * m + c] = -s / rdiag[jj];
        }
    }

    FitResult out;
    out.labels = design.labels;
    out.coefficients.resize(m);
    std::vector<double> xtx_inv_diag(m, 0.0);
    for (std::size_t jj = 0; jj < m; ++jj) {
        double s = 0.0;
        for (std::size_t c = jj; c < m; ++c) s += rinv[jj * m + c] * rinv[jj * m + c];
        out.coefficients[piv[jj]] = beta_perm[jj];
        xtx_inv_diag[piv[jj]] = s;
    }

    // residuals from the original design
    out.residuals.resize(n);
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double pred = 0.0;
        for (std::size_t j = 0; j < m; ++j) pred += design.at(i, j) * out.coefficients[j];
        out.residuals[i] = y[i] - pred;
        rss += out.residuals[i] * out.residuals[i];
    }

    const double ybar = mean_of(y);
    double tss = 0.0;
    for (double v : y) tss += (v - ybar) * (v - ybar);

    out.df_resid = static_cast<long>(n - m);
    out.sigma2 = rss / static_cast<double>(out.df_resid);
    out.r2 = tss > 0.0 ? 1.0 - rss / tss : 0.0;
    if (out.r2 < 0.0) out.r2 = 0.0;
    if (out.r2 > 1.0) out.r2 = 1.0;
    out.adj_r2 = 1.0 - (1.0 - out.r2) * static_cast<double>(n - 1) /
                           static_cast<double>(out.df_resid);

    out.std_errors.resize(m);
    out.t_stats.resize(m);
    out.p_values.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        out.std_errors[j] = std::sqrt(out.sigma2 * xtx_inv_diag[j]);
        if (out.std_errors[j] > 0.0) {
            out.t_stats[j] = out.coefficients[j] / out.std_errors[j];
            out.p_values[j] =
                2.0 * (1.0 - t_cdf(std::fabs(out.t_stats[j]), static_cast<int>(out.df_resid)));
        } else {
            // exact fit: zero residual variance
            out.t_stats[j] = out.coefficients[j] == 0.0
                                 ? 0.0
                                 : std::numeric_limits<double>::infinity() *
                                       (out.coefficients[j] > 0 ? 1.0 : -1.0);
            out.p_values[j] = out.coefficients[j] == 0.0 ? 1.0 : 0.0;
        }
    }
    return out;
}

Interval confidence_interval(const FitResult& fit, std::size_t term, double level) {
    if (!(level > 0.0 && level < 1.0))
        throw DomainError("confidence_interval: level must be in (0, 1)");
    if (term >= fit.coefficients.size())
        throw DomainError("confidence_interval: term index out of range");
    const double q = t_quantile(1.0 - (1.0 - level) / 2.0, static_cast<int>(fit.df_resid));
    const double half = q * fit.std_errors[term];
    return {fit.coefficients[term] - half, fit.coefficients[term] + half, level};
}

double p_value_of(const FitResult& fit, std::size_t term) {
    if (term >= fit.coefficients.size())
        throw DomainError("p_value_of: term index out of range");
    if (!std::isfinite(fit.t_stats[term]))
        return 0.0;
    return 2.0 * (1.0 - t_cdf(std::fabs(fit.t_stats[term]), static_cast<int>(fit.df_resid)));
}

std::vector<double> standardize(const FitResult& fit, const DesignMatrix& design,
                                const std::vector<double>& y) {
    const double sy = sd_of(y);
    if (sy <= 0.0) throw ZeroVariance(fit.labels.empty() ? "response" : "response");
    std::vector<double> out;
    out.reserve(design.cols - 1);
    for (std::size_t j = 1; j < design.cols; ++j) {
        const double sx = sd_of(design.column(j));
        if (sx <= 0.0) throw ZeroVariance(design.labels[j]);
        out.push_back(fit.coefficients[j] * sx / sy);
    }
    return out;
}

}  // namespace confit
