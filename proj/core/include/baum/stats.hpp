#ifndef BAUM_STATS_HPP
#define BAUM_STATS_HPP

#include <cmath>
#include <random>
#include <span>
#include <vector>

namespace baum {

using Rng = std::mt19937_64;

// log N(x; mean, var)
double normal_logpdf(double x, double mean, double var);

// Inverse standard normal CDF, |error| < 1e-13 over (0, 1).
double normal_quantile(double p);

double log_sum_exp(std::span<const double> logw);

// Index draw proportional to exp(logw - max).
int sample_categorical_log(std::span<const double> logw, Rng& rng);

// Index draw proportional to w (nonnegative, not necessarily normalized).
int sample_categorical(std::span<const double> w, Rng& rng);

double sample_normal(double mean, double var, Rng& rng);
double sample_gamma(double shape, double rate, Rng& rng);
// shape/rate parameterization: X ~ IG(a, b) iff 1/X ~ Gamma(a, b).
double sample_inverse_gamma(double shape, double rate, Rng& rng);
double sample_beta(double a, double b, Rng& rng);

struct RunningMoments {
  double n = 0, mean = 0, m2 = 0;
  void push(double x) {
    n += 1;
    double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  double variance() const { return n > 1 ? m2 / (n - 1) : 0.0; }
};

}  // namespace baum

#endif
