#pragma once

namespace hdrm {

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Chi-square CDF with real degrees of freedom f > 0. Returns 0 for x <= 0.
double chisq_cdf(double x, double f);

/// Chi-square density, used for quantile refinement.
double chisq_pdf(double x, double f);

/// Inverse chi-square CDF for p in (0,1), f > 0.
double chisq_quantile(double p, double f);

/// Standard normal quantile (Acklam's approximation plus one Halley step).
double normal_quantile(double p);

/// (1-alpha) quantile of the standardized chi-square K_f = (X_f - f)/sqrt(2f).
double pearson_quantile(double alpha, double f);

/// Upper-tail p-value of w against K_f: P(K_f > w).
double pearson_pvalue(double w, double f);

}  // namespace hdrm
