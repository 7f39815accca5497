#pragma once

// Small statistics helpers for trial reports and distribution tests.

#include <cmath>
#include <span>
#include <utility>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "hslab/error.hpp"

namespace hslab::stats {

struct Interval {
  double lo = 0, hi = 1;
};

// Exact (Clopper-Pearson) two-sided confidence interval for a binomial rate.
inline Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double alpha = 0.05) {
  if (successes > trials) throw UsageError("clopper_pearson: successes > trials");
  if (trials == 0) return {0, 1};
  const double k = static_cast<double>(successes), n = static_cast<double>(trials);
  Interval ci;
  ci.lo = successes == 0 ? 0.0 : boost::math::ibeta_inv(k, n - k + 1, alpha / 2);
  ci.hi = successes == trials ? 1.0 : boost::math::ibeta_inv(k + 1, n - k, 1 - alpha / 2);
  return ci;
}

// Upper tail P[X >= x] of the chi-square distribution with `df` degrees of freedom.
inline double chi_square_sf(double x, double df) {
  if (x <= 0) return 1.0;
  return boost::math::gamma_q(df / 2, x / 2);
}

// Pearson goodness-of-fit p-value for observed counts against expected counts.
inline double chi_square_pvalue(std::span<const double> observed, std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.size() < 2) throw UsageError("chi_square_pvalue: bad sizes");
  double chi = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - expected[i];
    chi += d * d / expected[i];
  }
  return chi_square_sf(chi, static_cast<double>(observed.size() - 1));
}

struct LineFit {
  double intercept = 0, slope = 0, rss = 0;
};

// y = slope * x, least squares without intercept.
inline LineFit fit_through_origin(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw UsageError("fit_through_origin: bad sizes");
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
  }
  LineFit f;
  f.slope = sxy / sxx;
  for (std::size_t i = 0; i < x.size(); ++i) f.rss += std::pow(y[i] - f.slope * x[i], 2);
  return f;
}

// y = intercept + slope * x, ordinary least squares.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw UsageError("fit_line: bad sizes");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) f.rss += std::pow(y[i] - f.intercept - f.slope * x[i], 2);
  return f;
}

}  // namespace hslab::stats
