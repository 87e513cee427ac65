#pragma once

namespace confit {

// Regularized incomplete beta function I_x(a, b), evaluated by the Lentz
// continued fraction with the symmetry switch at x = (a+1)/(a+b+2).
// Converges to 1e-14; at most 300 iterations.
double incomplete_beta(double a, double b, double x);

// P(T <= x) for Student's t with df degrees of freedom. Absolute error
// below 1e-10 over the whole domain. df >= 1.
double t_cdf(double x, int df);

// Density of Student's t.
double t_pdf(double x, int df);

// Inverse of t_cdf in its first argument: bracketing plus bisection, then
// Newton polish. Throws DomainError unless 0 < p < 1.
double t_quantile(double p, int df);

}  // namespace confit
