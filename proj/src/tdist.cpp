#include "confit/tdist.hpp"

#include <cmath>

#include "confit/errors.hpp"

namespace confit {

namespace {

// continued fraction for the incomplete beta, modified Lentz
double beta_cf(double a, double b, double x) {
    constexpr double eps = 1e-14;
    constexpr double fpmin = 1e-300;
    constexpr int max_iter = 300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(ln_front) * beta_cf(a, b, x) / a;
    }
    return 1.0 - std::exp(ln_front) * beta_cf(b, a, 1.0 - x) / b;
}

double t_cdf(double x, int df) {
    if (df < 1) throw DomainError("t_cdf: df must be >= 1");
    if (x == 0.0) return 0.5;
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    const double z = df / (df + x * x);
    const double tail = 0.5 * incomplete_beta(0.5 * df, 0.5, z);
    return x > 0 ? 1.0 - tail : tail;
}

double t_pdf(double x, int df) {
    if (df < 1) throw DomainError("t_pdf: df must be >= 1");
    const double half = 0.5 * (df + 1.0);
    const double ln = std::lgamma(half) - std::lgamma(0.5 * df) -
                      0.5 * std::log(df * M_PI) - half * std::log1p(x * x / df);
    return std::exp(ln);
}

double t_quantile(double p, int df) {
    if (df < 1) throw DomainError("t_quantile: df must be >= 1");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("t_quantile: p must be in (0, 1)");
    if (p == 0.5) return 0.0;
    if (p < 0.5) return -t_quantile(1.0 - p, df);

    // bracket the root of t_cdf(t) = p on [lo, hi]
    double lo = 0.0;
    double hi = 1.0;
    while (t_cdf(hi, df) < p) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) break;
    }
    // bisection until the bracket is small enough for Newton to be safe
    for (int i = 0; i < 80 && hi - lo > 1e-12 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (t_cdf(mid, df) < p)
            lo = mid;
        else
            hi = mid;
    }
    double t = 0.5 * (lo + hi);
    // Newton polish
    for (int i = 0; i < 8; ++i) {
        const double f = t_cdf(t, df) - p;
        const double d = t_pdf(t, df);
        if (d <= 0.0) break;
        const double step = f / d;
        const double next = t - step;
        if (next <= lo || next >= hi) break;
        t = next;
        if (std::fabs(step) < 1e-13 * (1.0 + std::fabs(t))) break;
    }
    return t;
}

}  // namespace confit
