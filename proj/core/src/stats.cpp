#include "baum/stats.hpp"

#include <algorithm>
#include <stdexcept>

namespace baum {

double normal_logpdf(double x, double mean, double var) {
  if (!std::isfinite(x) || !std::isfinite(mean) || !(var > 0))
    throw std::domain_error("normal_logpdf: non-finite argument or var <= 0");
  const double d = x - mean;
  return -0.5 * std::log(2.0 * M_PI * var) - d * d / (2.0 * var);
}

namespace {

// Acklam's rational approximation, refined below with one Halley step.
double quantile_seed(double p) {
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
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5, r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  double x = quantile_seed(p);
  // Halley refinement against erfc.
  for (int it = 0; it < 2; ++it) {
    double e = 0.5 * std::erfc(-x / M_SQRT2) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
  }
  return x;
}

double log_sum_exp(std::span<const double> logw) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : logw) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0;
  for (double v : logw) s += std::exp(v - m);
  return m + std::log(s);
}

int sample_categorical_log(std::span<const double> logw, Rng& rng) {
  if (logw.empty()) throw std::domain_error("sample_categorical_log: empty weights");
  double m = -std::numeric_limits<double>::infinity();
  for (double v : logw) m = std::max(m, v);
  double total = 0;
  std::vector<double> w(logw.size());
  for (size_t i = 0; i < logw.size(); ++i) {
    w[i] = std::isfinite(logw[i]) ? std::exp(logw[i] - m) : 0.0;
    total += w[i];
  }
  if (!(total > 0)) throw std::domain_error("sample_categorical_log: all weights vanish");
  std::uniform_real_distribution<double> unif(0.0, total);
  double u = unif(rng), acc = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (u <= acc) return static_cast<int>(i);
  }
  return static_cast<int>(w.size()) - 1;
}

int sample_categorical(std::span<const double> w, Rng& rng) {
  double total = 0;
  for (double v : w) {
    if (v < 0) throw std::domain_error("sample_categorical: negative weight");
    total += v;
  }
  if (!(total > 0)) throw std::domain_error("sample_categorical: zero mass");
  std::uniform_real_distribution<double> unif(0.0, total);
  double u = unif(rng), acc = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (u <= acc) return static_cast<int>(i);
  }
  return static_cast<int>(w.size()) - 1;
}

double sample_normal(double mean, double var, Rng& rng) {
  std::normal_distribution<double> n(mean, std::sqrt(var));
  return n(rng);
}

double sample_gamma(double shape, double rate, Rng& rng) {
  std::gamma_distribution<double> g(shape, 1.0 / rate);
  return g(rng);
}

double sample_inverse_gamma(double shape, double rate, Rng& rng) {
  return 1.0 / sample_gamma(shape, rate, rng);
}

double sample_beta(double a, double b, Rng& rng) {
  double x = sample_gamma(a, 1.0, rng);
  double y = sample_gamma(b, 1.0, rng);
  return x / (x + y);
}

}  // namespace baum
