#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "baum/stats.hpp"

using namespace baum;

TEST_CASE("normal_logpdf closed forms") {
  CHECK(normal_logpdf(0, 0, 1) == doctest::Approx(-0.9189385332).epsilon(1e-9));
  CHECK(normal_logpdf(3, 0, 1) == doctest::Approx(-0.9189385332 - 4.5).epsilon(1e-9));
  CHECK(normal_logpdf(2.5, 2.5, 0.7) ==
        doctest::Approx(-0.5 * std::log(2 * M_PI * 0.7)).epsilon(1e-12));
  CHECK_THROWS_AS(normal_logpdf(0, 0, 0), std::domain_error);
  CHECK_THROWS_AS(normal_logpdf(NAN, 0, 1), std::domain_error);
}

TEST_CASE("normal_logpdf integrates to 1") {
  // trapezoid quadrature over +-12 sd
  double mean = 1.3, var = 2.1, sd = std::sqrt(var);
  double lo = mean - 12 * sd, hi = mean + 12 * sd;
  int n = 200000;
  double h = (hi - lo) / n, sum = 0;
  for (int i = 0; i <= n; ++i) {
    double x = lo + i * h;
    double w = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += w * std::exp(normal_logpdf(x, mean, var));
  }
  CHECK(sum * h == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("normal_quantile matches known values") {
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(normal_quantile(0.97724986805182079) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-8));
  CHECK(normal_quantile(1e-10) == doctest::Approx(-6.361340902).epsilon(1e-6));
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
}

TEST_CASE("normal_quantile round-trips the CDF") {
  for (double p : {1e-10, 1e-6, 0.01, 0.3, 0.5, 0.8, 0.999, 1 - 1e-10}) {
    double x = normal_quantile(p);
    double back = 0.5 * std::erfc(-x / M_SQRT2);
    CHECK(back == doctest::Approx(p).epsilon(1e-9));
  }
}

TEST_CASE("categorical sampling hits expected frequencies") {
  Rng rng(11);
  std::vector<double> w = {1.0, 3.0};
  int hits = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) hits += sample_categorical(w, rng);
  CHECK(static_cast<double>(hits) / n == doctest::Approx(0.75).epsilon(0.02));

  std::vector<double> logw = {std::log(0.2), std::log(0.8)};
  hits = 0;
  for (int i = 0; i < n; ++i) hits += sample_categorical_log(logw, rng);
  CHECK(static_cast<double>(hits) / n == doctest::Approx(0.8).epsilon(0.02));
}

TEST_CASE("inverse gamma moments") {
  Rng rng(5);
  RunningMoments mom;
  for (int i = 0; i < 100000; ++i) mom.push(sample_inverse_gamma(4.0, 6.0, rng));
  CHECK(mom.mean == doctest::Approx(2.0).epsilon(0.02));  // rate/(shape-1)
}
