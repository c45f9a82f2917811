/*
   Copyright 2026 the airfunc authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "airfunc/errors.hpp"
#include "airfunc/rng.hpp"

namespace airfunc {

enum class DistFamily {
  Gaussian,
  UniformBounded,
  Rademacher,
  Exponential,
  Constant,
  Custom,
};

// A samplable scalar distribution with its declared first two moments and,
// when known, a sub-gaussian bound tau. Custom distributions may carry a
// centered MGF evaluator and/or an absolute-moment evaluator; the norm
// routines require whichever one they need.
struct DistributionSpec {
  DistFamily family = DistFamily::Constant;
  std::string label;

  double mean = 0.0;
  double second_moment = 0.0;
  // Declared sub-gaussian bound; nullopt means unknown / not sub-gaussian.
  std::optional<double> subgauss_tau;

  // Family parameters.
  double mu = 0.0, sigma = 1.0;  // gaussian
  double lo = 0.0, hi = 0.0;     // uniform-bounded
  double rate = 1.0;             // exponential
  double value = 0.0;            // constant

  // Custom hooks. centered_mgf(lambda) = E exp(lambda (X - EX)), may return
  // +inf when the MGF diverges. abs_moment(k) = E |X|^k.
  std::function<double(double)> centered_mgf;
  std::function<double(int)> abs_moment;
  std::function<double(Rng&)> custom_sampler;

  double variance() const { return second_moment - mean * mean; }

  double sample(Rng& rng) const {
    switch (family) {
      case DistFamily::Gaussian:
        return mu + sigma * sample_gaussian(rng);
      case DistFamily::UniformBounded:
        return lo + (hi - lo) * uniform01(rng);
      case DistFamily::Rademacher:
        return sample_sign(rng);
      case DistFamily::Exponential:
        return -std::log(uniform01_open(rng)) / rate;
      case DistFamily::Constant:
        return value;
      case DistFamily::Custom:
        if (!custom_sampler) throw UnsupportedDistribution("custom distribution '" + label + "' has no sampler");
        return custom_sampler(rng);
    }
    throw UnsupportedDistribution("unknown distribution family");
  }
};

inline DistributionSpec gaussian_dist(double mu, double sigma) {
  if (sigma < 0) throw InvalidArgument("gaussian sigma must be >= 0");
  DistributionSpec d;
  d.family = DistFamily::Gaussian;
  d.label = "gaussian(" + std::to_string(mu) + "," + std::to_string(sigma) + ")";
  d.mu = mu;
  d.sigma = sigma;
  d.mean = mu;
  d.second_moment = mu * mu + sigma * sigma;
  d.subgauss_tau = sigma;
  return d;
}

inline DistributionSpec uniform_dist(double lo, double hi) {
  if (!(lo < hi)) throw InvalidArgument("uniform bounds must satisfy lo < hi");
  DistributionSpec d;
  d.family = DistFamily::UniformBounded;
  d.label = "uniform[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
  d.lo = lo;
  d.hi = hi;
  d.mean = 0.5 * (lo + hi);
  d.second_moment = (hi * hi + hi * lo + lo * lo) / 3.0;
  // Hoeffding bound for a variable supported on [lo, hi].
  d.subgauss_tau = 0.5 * (hi - lo);
  return d;
}

inline DistributionSpec rademacher_dist() {
  DistributionSpec d;
  d.family = DistFamily::Rademacher;
  d.label = "rademacher";
  d.mean = 0.0;
  d.second_moment = 1.0;
  d.subgauss_tau = 1.0;
  return d;
}

inline DistributionSpec exponential_dist(double rate) {
  if (!(rate > 0)) throw InvalidArgument("exponential rate must be > 0");
  DistributionSpec d;
  d.family = DistFamily::Exponential;
  d.label = "exponential(" + std::to_string(rate) + ")";
  d.rate = rate;
  d.mean = 1.0 / rate;
  d.second_moment = 2.0 / (rate * rate);
  d.subgauss_tau = std::nullopt;  // not sub-gaussian
  return d;
}

inline DistributionSpec constant_dist(double c) {
  DistributionSpec d;
  d.family = DistFamily::Constant;
  d.label = "constant(" + std::to_string(c) + ")";
  d.value = c;
  d.mean = c;
  d.second_moment = c * c;
  d.subgauss_tau = 0.0;
  return d;
}

inline DistributionSpec custom_dist(std::string label, double mean, double second_moment,
                                    std::optional<double> subgauss_tau = std::nullopt) {
  if (second_moment < mean * mean) throw InvalidArgument("second_moment must be >= mean^2");
  DistributionSpec d;
  d.family = DistFamily::Custom;
  d.label = std::move(label);
  d.mean = mean;
  d.second_moment = second_moment;
  d.subgauss_tau = subgauss_tau;
  return d;
}

// log E exp(lambda (X - EX)) for families with a closed form, +inf where the
// MGF diverges. Custom specs fall back to their centered_mgf hook.
inline double log_centered_mgf(const DistributionSpec& d, double lambda) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (d.family) {
    case DistFamily::Gaussian:
      return 0.5 * lambda * lambda * d.sigma * d.sigma;
    case DistFamily::UniformBounded: {
      const double x = std::abs(lambda) * 0.5 * (d.hi - d.lo);
      if (x == 0.0) return 0.0;
      // log(sinh x / x), stable for large x.
      return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0 * x);
    }
    case DistFamily::Rademacher: {
      const double x = std::abs(lambda);
      // log cosh x
      return x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
    }
    case DistFamily::Exponential: {
      if (lambda >= d.rate) return inf;
      return -lambda / d.rate - std::log1p(-lambda / d.rate);
    }
    case DistFamily::Constant:
      return 0.0;
    case DistFamily::Custom: {
      if (!d.centered_mgf)
        throw UnsupportedDistribution("custom distribution '" + d.label + "' has no MGF evaluator");
      const double m = d.centered_mgf(lambda);
      if (!(m > 0.0)) return inf;
      return std::log(m);
    }
  }
  throw UnsupportedDistribution("unknown distribution family");
}

inline bool has_closed_form_mgf(const DistributionSpec& d) {
  return d.family != DistFamily::Custom || static_cast<bool>(d.centered_mgf);
}

// E |X|^k. Closed forms per family; custom specs use their abs_moment hook.
inline double absolute_moment(const DistributionSpec& d, int k) {
  if (k < 1) throw InvalidArgument("absolute_moment requires k >= 1");
  switch (d.family) {
    case DistFamily::Gaussian: {
      if (d.mu == 0.0) {
        // E|X|^k = sigma^k 2^{k/2} Gamma((k+1)/2) / sqrt(pi)
        const double lg = k * std::log(d.sigma) + 0.5 * k * std::log(2.0) +
                          std::lgamma(0.5 * (k + 1)) - 0.5 * std::log(M_PI);
        return std::exp(lg);
      }
      // Log-space Simpson quadrature over mu +- (12 + 2 sqrt(k)) sigma.
      const double half_width = (12.0 + 2.0 * std::sqrt(static_cast<double>(k))) * d.sigma;
      const int n = 20000;  // even
      const double a = d.mu - half_width, b = d.mu + half_width;
      const double h = (b - a) / n;
      auto f = [&](double x) {
        const double ax = std::abs(x);
        if (ax == 0.0) return 0.0;
        const double t = (x - d.mu) / d.sigma;
        return std::exp(k * std::log(ax) - 0.5 * t * t);
      };
      double acc = f(a) + f(b);
      for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
      return acc * h / 3.0 / (d.sigma * std::sqrt(2.0 * M_PI));
    }
    case DistFamily::UniformBounded: {
      auto g = [k](double x) {
        return std::copysign(std::pow(std::abs(x), k + 1), x) / (k + 1);
      };
      return (g(d.hi) - g(d.lo)) / (d.hi - d.lo);
    }
    case DistFamily::Rademacher:
      return 1.0;
    case DistFamily::Exponential:
      // E X^k = k! / rate^k
      return std::exp(std::lgamma(k + 1.0) - k * std::log(d.rate));
    case DistFamily::Constant:
      return std::pow(std::abs(d.value), k);
    case DistFamily::Custom:
      if (!d.abs_moment)
        throw UnsupportedDistribution("custom distribution '" + d.label + "' has no moment evaluator");
      return d.abs_moment(k);
  }
  throw UnsupportedDistribution("unknown distribution family");
}

}  // namespace airfunc
