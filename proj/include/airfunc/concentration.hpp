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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "airfunc/distribution.hpp"
#include "airfunc/errors.hpp"

namespace airfunc {

// Direction of a reported norm value relative to the exact semi-norm.
// Downstream bounds need upper bounds on sigma_F / sigma_N, so mixing
// directions silently would invalidate them; every result is labeled.
enum class BoundDirection { Exact, FromAbove, FromBelow };

struct NormBound {
  double value = 0.0;
  BoundDirection direction = BoundDirection::Exact;
  bool grid_approximate = false;
  int k_max = 0;  // set by subexponential_norm
};

// Default lambda grid for MGF domination checks: +-100 log-spaced
// magnitudes covering [1e-3, 1] * 10/tau, zero excluded.
inline std::vector<double> mgf_lambda_grid(double tau) {
  if (!(tau > 0)) throw InvalidArgument("mgf_lambda_grid requires tau > 0");
  const double hi = 10.0 / tau;
  const double lo = 1e-3 * hi;
  const int half = 100;
  std::vector<double> grid;
  grid.reserve(2 * half);
  for (int i = 0; i < half; ++i) {
    const double mag = lo * std::pow(hi / lo, static_cast<double>(i) / (half - 1));
    grid.push_back(-mag);
    grid.push_back(mag);
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

// Smallest t such that E exp(l (X-EX)) <= exp(l^2 t^2 / 2) for all l.
// Known families use closed forms; custom MGFs are evaluated on a lambda
// grid, which bounds the supremum from below.
inline NormBound subgaussian_norm(const DistributionSpec& d) {
  switch (d.family) {
    case DistFamily::Gaussian:
      return {d.sigma, BoundDirection::Exact, false, 0};
    case DistFamily::Constant:
      return {0.0, BoundDirection::Exact, false, 0};
    case DistFamily::Rademacher:
      return {1.0, BoundDirection::Exact, false, 0};
    case DistFamily::UniformBounded:
      // Hoeffding's lemma for support [lo, hi].
      return {0.5 * (d.hi - d.lo), BoundDirection::FromAbove, false, 0};
    case DistFamily::Exponential:
      throw UnsupportedDistribution("exponential distributions are not sub-gaussian");
    case DistFamily::Custom: {
      if (!d.centered_mgf)
        throw UnsupportedDistribution("custom distribution '" + d.label +
                                      "' has neither a known family nor an MGF evaluator");
      // sup over the grid of sqrt(2 log m(l)) / |l|; E exp(l(X-EX)) >= 1 by
      // Jensen, so the log is nonnegative.
      double sup = 0.0;
      for (double l : mgf_lambda_grid(1.0)) {
        const double lm = log_centered_mgf(d, l);
        if (std::isinf(lm)) return {std::numeric_limits<double>::infinity(), BoundDirection::Exact, true, 0};
        sup = std::max(sup, std::sqrt(2.0 * std::max(lm, 0.0)) / std::abs(l));
      }
      return {sup, BoundDirection::FromBelow, true, 0};
    }
  }
  throw UnsupportedDistribution("unknown distribution family");
}

// max over 1 <= k <= k_max of (E|X|^k / k!)^{1/k}; a lower approximation of
// the sup over all k.
inline NormBound subexponential_norm(const DistributionSpec& d, int k_max = 50) {
  if (k_max < 1) throw InvalidArgument("subexponential_norm requires k_max >= 1");
  double best = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    const double m = absolute_moment(d, k);
    if (!(m >= 0) || std::isinf(m)) return {std::numeric_limits<double>::infinity(), BoundDirection::FromBelow, false, k_max};
    if (m == 0.0) continue;
    const double term = std::exp((std::log(m) - std::lgamma(k + 1.0)) / k);
    best = std::max(best, term);
  }
  return {best, BoundDirection::FromBelow, false, k_max};
}

struct MgfReport {
  bool pass = true;
  double worst_lambda = 0.0;
  // max over the grid of E exp(l(X-EX)) / exp(l^2 tau^2 / 2), in log space
  // re-exponentiated; > 1 means domination failed at worst_lambda.
  double worst_ratio = 0.0;
  bool empirical = false;
};

// Checks E exp(l(X-EX)) <= exp(l^2 tau^2 / 2) at every grid point. Closed
// forms are compared in log space; distributions without one are checked
// against an empirical MGF with a 99% CLT allowance on the sample mean.
inline MgfReport mgf_domination_check(const DistributionSpec& d, double tau,
                                      std::span<const double> lambda_grid,
                                      std::int64_t empirical_samples = 1'000'000,
                                      std::uint64_t seed = 0x6d676663u) {
  if (lambda_grid.empty()) throw InvalidArgument("mgf_domination_check requires a non-empty grid");
  if (tau < 0) throw InvalidArgument("tau must be >= 0");
  MgfReport rep;
  rep.worst_ratio = -std::numeric_limits<double>::infinity();

  if (has_closed_form_mgf(d)) {
    for (double l : lambda_grid) {
      const double log_ratio = log_centered_mgf(d, l) - 0.5 * l * l * tau * tau;
      if (log_ratio > rep.worst_ratio) {
        rep.worst_ratio = log_ratio;
        rep.worst_lambda = l;
      }
    }
    rep.worst_ratio = std::exp(rep.worst_ratio);
    rep.pass = rep.worst_ratio <= 1.0 + 1e-12;
    return rep;
  }

  if (!d.custom_sampler)
    throw UnsupportedDistribution("distribution '" + d.label + "' has neither MGF nor sampler");
  rep.empirical = true;
  if (empirical_samples < 1'000'000)
    throw InvalidArgument("empirical MGF checks require at least 1e6 samples");
  Rng rng = substream(seed, 0);
  std::vector<double> centered(static_cast<std::size_t>(empirical_samples));
  for (auto& x : centered) x = d.sample(rng) - d.mean;

  constexpr double z99 = 2.5758293035489004;  // two-sided 99% normal quantile
  for (double l : lambda_grid) {
    // Shifted to avoid overflow: Z_i = exp(l x_i - m), m = max l x_i.
    double m = -std::numeric_limits<double>::infinity();
    for (double x : centered) m = std::max(m, l * x);
    double sum = 0.0, sumsq = 0.0;
    for (double x : centered) {
      const double z = std::exp(l * x - m);
      sum += z;
      sumsq += z * z;
    }
    const double n = static_cast<double>(empirical_samples);
    const double mean = sum / n;
    const double var = std::max(0.0, sumsq / n - mean * mean);
    const double widened = mean - z99 * std::sqrt(var / n);
    const double bound_log = 0.5 * l * l * tau * tau;
    // log of the CLT-widened empirical mean minus the bound's log.
    const double log_ratio = widened <= 0.0
                                 ? -std::numeric_limits<double>::infinity()
                                 : m + std::log(widened) - bound_log;
    if (log_ratio > rep.worst_ratio) {
      rep.worst_ratio = log_ratio;
      rep.worst_lambda = l;
    }
  }
  rep.worst_ratio = std::exp(rep.worst_ratio);
  rep.pass = rep.worst_ratio <= 1.0 + 1e-9;
  return rep;
}

// Bernstein tail for a sum of M independent centered summands whose
// sub-exponential norms are at most L, with the optimizing split constant.
struct TailBound {
  double t = 0.0;
  double L = 0.0;
  std::int64_t M = 0;
  double raw_value = 0.0;
  double clamped_value = 0.0;
  double c_star = 0.0;
};

inline TailBound bernstein_tail(double t, double L, std::int64_t M) {
  if (t < 0) throw InvalidArgument("bernstein_tail requires t >= 0");
  if (L < 0) throw InvalidArgument("bernstein_tail requires L >= 0");
  if (M < 1) throw InvalidArgument("bernstein_tail requires M >= 1");
  TailBound b;
  b.t = t;
  b.L = L;
  b.M = M;
  if (L == 0.0) {
    // All summands are a.s. zero; only t = 0 can be exceeded.
    b.raw_value = t > 0 ? 0.0 : 2.0;
    b.clamped_value = std::min(b.raw_value, 1.0);
    b.c_star = t > 0 ? 1.0 : 0.0;
    return b;
  }
  const long double tl = t, Ll = L, Ml = static_cast<long double>(M);
  const long double denom = 2.0L * (Ll * tl + 2.0L * Ml * Ll * Ll);
  b.raw_value = static_cast<double>(2.0L * std::exp(-(tl * tl) / denom));
  b.clamped_value = std::min(b.raw_value, 1.0);
  b.c_star = static_cast<double>(Ll * tl / (Ll * tl + 2.0L * Ml * Ll * Ll));
  return b;
}

enum class NormOp { Rotation, Product, Centering, BoundedFactor };

// Norm calculus on nonnegative norm bounds:
//   Rotation       sqrt(sum tau_i^2) for independent centered sub-gaussians
//   Product        ||XY||_subexp <= 2 tau_X tau_Y
//   Centering      ||X - EX|| <= ||X|| for nonnegative sub-exponential X
//   BoundedFactor  ||X Y|| <= ||Y|| when |X| <= 1 and X, Y independent
inline double norm_calculus(NormOp op, std::span<const double> inputs) {
  if (inputs.empty()) throw InvalidArgument("norm_calculus requires at least one input");
  for (double v : inputs)
    if (!(v >= 0)) throw InvalidArgument("norm_calculus inputs must be nonnegative");
  switch (op) {
    case NormOp::Rotation: {
      double acc = 0.0;
      for (double v : inputs) acc += v * v;
      return std::sqrt(acc);
    }
    case NormOp::Product:
      if (inputs.size() != 2) throw InvalidArgument("product op takes exactly two norms");
      return 2.0 * inputs[0] * inputs[1];
    case NormOp::Centering:
      if (inputs.size() != 1) throw InvalidArgument("centering op takes exactly one norm");
      return inputs[0];
    case NormOp::BoundedFactor:
      if (inputs.size() != 1) throw InvalidArgument("bounded_factor op takes exactly one norm");
      return inputs[0];
  }
  throw InvalidArgument("unknown norm op");
}

}  // namespace airfunc
