#include "hdrm/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hdrm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// Series expansion of P(a,x), effective for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < 10000; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x) = 1 - P(a,x) (modified Lentz), for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0) throw std::domain_error("gamma_p: shape must be positive");
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_contfrac(a, x);
}

// Upper tail Q(a,x); evaluated directly in the tail so small probabilities
// keep full relative precision.
double gamma_q(double a, double x) {
  if (a <= 0.0) throw std::domain_error("gamma_q: shape must be positive");
  if (x <= 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_contfrac(a, x);
}

double chisq_cdf(double x, double f) {
  if (f <= 0.0) throw std::domain_error("chisq_cdf: degrees of freedom must be positive");
  if (x <= 0.0) return 0.0;
  return gamma_p(0.5 * f, 0.5 * x);
}

double chisq_pdf(double x, double f) {
  if (f <= 0.0) throw std::domain_error("chisq_pdf: degrees of freedom must be positive");
  if (x <= 0.0) return 0.0;
  double half = 0.5 * f;
  return std::exp((half - 1.0) * std::log(x) - 0.5 * x - half * std::numbers::ln2 -
                  std::lgamma(half));
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile: p must be in (0,1)");
  }
  // Acklam's rational approximation
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    double q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // one Halley refinement against erfc brings the result to full precision
  double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double chisq_quantile(double p, double f) {
  if (f <= 0.0) {
    throw std::domain_error("chisq_quantile: degrees of freedom must be positive");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("chisq_quantile: p must be in (0,1)");
  }
  // Wilson-Hilferty starting point
  double z = normal_quantile(p);
  double t = 1.0 - 2.0 / (9.0 * f) + z * std::sqrt(2.0 / (9.0 * f));
  double x = f * t * t * t;
  if (!(x > 0.0) || !std::isfinite(x)) x = f;

  // establish a bracket around the root
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i) {
    double cdf = chisq_cdf(x, f);
    if (cdf > p) {
      hi = x;
      break;
    }
    lo = x;
    x = (std::isfinite(hi)) ? 0.5 * (x + hi) : std::max(2.0 * x, f);
  }
  if (!std::isfinite(hi)) hi = std::max(x, 2.0 * std::max(lo, 1.0));

  // Newton with bisection fallback
  x = 0.5 * (lo + (std::isfinite(hi) ? hi : 2.0 * lo + 1.0));
  for (int i = 0; i < 200; ++i) {
    double err = chisq_cdf(x, f) - p;
    if (err > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    double pdf = chisq_pdf(x, f);
    double step = (pdf > 0.0) ? err / pdf : 0.0;
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 1e-12 * std::max(1.0, std::fabs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

double pearson_quantile(double alpha, double f) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("pearson_quantile: alpha must be in (0,1)");
  }
  return (chisq_quantile(1.0 - alpha, f) - f) / std::sqrt(2.0 * f);
}

double pearson_pvalue(double w, double f) {
  if (f <= 0.0) {
    throw std::domain_error("pearson_pvalue: degrees of freedom must be positive");
  }
  double x = f + w * std::sqrt(2.0 * f);
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * f, 0.5 * x);
}

}  // namespace hdrm
