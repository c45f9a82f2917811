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
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "airfunc/bounds.hpp"
#include "airfunc/concentration.hpp"
#include "airfunc/errors.hpp"
#include "airfunc/fmon.hpp"
#include "airfunc/scheme.hpp"
#include "airfunc/stats.hpp"

namespace airfunc {

// Exact one-sided upper binomial confidence limit (Clopper-Pearson):
// the Beta(count+1, n-count) quantile at the requested level.
inline double clopper_upper(std::int64_t count, std::int64_t n, double level) {
  if (n < 1 || count < 0 || count > n) throw InvalidArgument("clopper_upper requires 0 <= count <= n");
  if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("clopper_upper requires level in (0,1)");
  if (count == n) return 1.0;
  return inverse_regularized_incomplete_beta(level, static_cast<double>(count) + 1.0,
                                             static_cast<double>(n - count));
}

// Exact one-sided lower limit via the mirrored upper limit.
inline double clopper_lower(std::int64_t count, std::int64_t n, double level) {
  return 1.0 - clopper_upper(n - count, n, level);
}

enum class InputStrategy { AllMin, AllMax, Random, Explicit };

inline InputStrategy parse_strategy(const std::string& name) {
  if (name == "all-min") return InputStrategy::AllMin;
  if (name == "all-max") return InputStrategy::AllMax;
  if (name == "random") return InputStrategy::Random;
  if (name == "explicit") return InputStrategy::Explicit;
  throw InvalidArgument("unknown input strategy '" + name +
                        "'; supported: all-min, all-max, random, explicit");
}

inline std::string strategy_name(InputStrategy s) {
  switch (s) {
    case InputStrategy::AllMin: return "all-min";
    case InputStrategy::AllMax: return "all-max";
    case InputStrategy::Random: return "random";
    case InputStrategy::Explicit: return "explicit";
  }
  return "?";
}

// A single Monte Carlo experiment: estimate the exceed probability
// P(|f_bar - f(s)| >= eps) at a fixed input point over independent trials.
struct TrialPlan {
  std::string function_label = "sum";
  ChannelConfig config;
  InputStrategy strategy = InputStrategy::AllMax;
  std::vector<double> s_explicit;
  double eps = 0.5;
  std::int64_t trials = 1;
  std::uint64_t master_seed = 1;
  double confidence_level = 0.95;
  int threads = 1;
  // Harness self-test: replace the pipeline with a Bernoulli(p) exceed
  // indicator so the counting/confidence machinery can be checked against a
  // known probability.
  std::optional<double> synthetic_exceed_probability;
};

struct EmpiricalTail {
  std::int64_t exceed_count = 0;
  std::int64_t trials = 0;
  double point_estimate = 0.0;
  double upper_confidence = 0.0;
  double theory_bound_raw = 0.0;
  double theory_bound_clamped = 0.0;
  std::vector<double> s;  // resolved input point
};

namespace detail {

// Stream index reserved for resolving random input points, outside the
// trial-index range.
constexpr std::uint64_t kInputPointStream = 0x8000000000000000ull;

// Runs fn(i) for i in [0, n) over `threads` static chunks. Each index does
// its own seeding, so the partition cannot affect any result.
template <class Fn>
inline void for_each_trial(std::int64_t n, int threads, Fn&& fn) {
  const int t = std::max(1, threads);
  if (t == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t));
  for (int w = 0; w < t; ++w) {
    const std::int64_t lo = n * w / t, hi = n * (w + 1) / t;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

inline std::vector<double> resolve_input_point(const TrialPlan& plan, const FmonSpec& spec) {
  std::vector<double> s(static_cast<std::size_t>(spec.K()));
  switch (plan.strategy) {
    case InputStrategy::AllMin:
      for (int k = 0; k < spec.K(); ++k) s[static_cast<std::size_t>(k)] = spec.inners[static_cast<std::size_t>(k)].arg_min;
      break;
    case InputStrategy::AllMax:
      for (int k = 0; k < spec.K(); ++k) s[static_cast<std::size_t>(k)] = spec.inners[static_cast<std::size_t>(k)].arg_max;
      break;
    case InputStrategy::Random: {
      Rng rng = substream(plan.master_seed, detail::kInputPointStream);
      for (int k = 0; k < spec.K(); ++k) {
        const Interval dom = spec.inners[static_cast<std::size_t>(k)].domain;
        s[static_cast<std::size_t>(k)] = dom.lo + (dom.hi - dom.lo) * uniform01(rng);
      }
      break;
    }
    case InputStrategy::Explicit:
      if (static_cast<int>(plan.s_explicit.size()) != spec.K())
        throw InvalidArgument("explicit input point must have K components");
      s = plan.s_explicit;
      break;
  }
  return s;
}

// Runs the plan and reports the empirical tail next to the closed-form
// bound. Trial i always consumes substream(master_seed, i); results are
// invariant to the thread count.
inline EmpiricalTail estimate_tail(const TrialPlan& plan, const FmonSpec& spec) {
  if (plan.trials < 1) throw InvalidArgument("estimate_tail requires trials >= 1");
  plan.config.validate();
  EmpiricalTail tail;
  tail.trials = plan.trials;
  tail.s = resolve_input_point(plan, spec);
  const double f_true = evaluate(spec, tail.s);
  const BoundReport bound = error_bound(spec, plan.config, plan.eps);
  tail.theory_bound_raw = bound.total_raw;
  tail.theory_bound_clamped = bound.total_clamped;

  std::vector<std::uint8_t> exceed(static_cast<std::size_t>(plan.trials));
  if (plan.synthetic_exceed_probability) {
    const double p = *plan.synthetic_exceed_probability;
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("synthetic exceed probability must be in [0,1]");
    detail::for_each_trial(plan.trials, plan.threads, [&](std::int64_t i) {
      Rng rng = substream(plan.master_seed, static_cast<std::uint64_t>(i));
      exceed[static_cast<std::size_t>(i)] = uniform01(rng) < p ? 1 : 0;
    });
  } else {
    const int t = std::max(1, plan.threads);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(t));
    auto run_range = [&](std::int64_t lo, std::int64_t hi) {
      TrialWorkspace ws;
      for (std::int64_t i = lo; i < hi; ++i) {
        Rng rng = substream(plan.master_seed, static_cast<std::uint64_t>(i));
        const TrialOutput out = run_trial(spec, plan.config, tail.s, rng, ws);
        exceed[static_cast<std::size_t>(i)] =
            std::abs(out.decoded.estimate - f_true) >= plan.eps ? 1 : 0;
      }
    };
    if (t == 1) {
      run_range(0, plan.trials);
    } else {
      for (int w = 0; w < t; ++w)
        pool.emplace_back(run_range, plan.trials * w / t, plan.trials * (w + 1) / t);
      for (auto& th : pool) th.join();
    }
  }
  tail.exceed_count = 0;
  for (std::uint8_t e : exceed) tail.exceed_count += e;
  tail.point_estimate = static_cast<double>(tail.exceed_count) / static_cast<double>(plan.trials);
  tail.upper_confidence = clopper_upper(tail.exceed_count, tail.trials, plan.confidence_level);
  return tail;
}

// Empirical mean of the corrected linear estimate h~ across trials; used by
// the unbiasedness checks.
struct InnerMeanReport {
  double inner_true = 0.0;  // sum_k f_k(s_k)
  double mean = 0.0;
  double stddev = 0.0;
  double stderr_mean = 0.0;
  std::int64_t trials = 0;
  std::vector<double> s;
};

inline InnerMeanReport mean_inner_estimate(const TrialPlan& plan, const FmonSpec& spec) {
  if (plan.trials < 1) throw InvalidArgument("mean_inner_estimate requires trials >= 1");
  plan.config.validate();
  InnerMeanReport rep;
  rep.trials = plan.trials;
  rep.s = resolve_input_point(plan, spec);
  double inner = 0.0;
  for (int k = 0; k < spec.K(); ++k)
    inner += spec.inners[static_cast<std::size_t>(k)].eval(rep.s[static_cast<std::size_t>(k)]);
  rep.inner_true = inner;

  std::vector<double> h(static_cast<std::size_t>(plan.trials));
  const int t = std::max(1, plan.threads);
  auto run_range = [&](std::int64_t lo, std::int64_t hi) {
    TrialWorkspace ws;
    for (std::int64_t i = lo; i < hi; ++i) {
      Rng rng = substream(plan.master_seed, static_cast<std::uint64_t>(i));
      h[static_cast<std::size_t>(i)] = run_trial(spec, plan.config, rep.s, rng, ws).decoded.h_corrected;
    }
  };
  if (t == 1) {
    run_range(0, plan.trials);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < t; ++w)
      pool.emplace_back(run_range, plan.trials * w / t, plan.trials * (w + 1) / t);
    for (auto& th : pool) th.join();
  }
  double sum = 0.0;
  for (double v : h) sum += v;
  rep.mean = sum / static_cast<double>(plan.trials);
  double ss = 0.0;
  for (double v : h) ss += (v - rep.mean) * (v - rep.mean);
  rep.stddev = plan.trials > 1 ? std::sqrt(ss / static_cast<double>(plan.trials - 1)) : 0.0;
  rep.stderr_mean = rep.stddev / std::sqrt(static_cast<double>(plan.trials));
  return rep;
}

// Parameter grid for sweeps; empty dimensions fall back to the base plan.
struct SweepGrid {
  std::vector<std::int64_t> Ms;
  std::vector<int> Ks;
  std::vector<double> epss;
  std::vector<InputStrategy> strategies;
};

struct SweepRow {
  std::int64_t row_index = 0;
  int K = 0;
  std::int64_t M = 0;
  double eps = 0.0;
  InputStrategy strategy = InputStrategy::AllMax;
  std::uint64_t row_seed = 0;
  EmpiricalTail tail;
  BoundReport bound;
};

// Deterministic grid order: K (outer), M, eps, strategy (inner). Each cell
// runs under its own master seed derived from (plan seed, row index).
inline std::vector<SweepRow> sweep(const TrialPlan& base, const SweepGrid& grid,
                                   const std::function<FmonSpec(int)>& spec_factory) {
  std::vector<std::int64_t> Ms = grid.Ms.empty() ? std::vector<std::int64_t>{base.config.M} : grid.Ms;
  std::vector<int> Ks = grid.Ks.empty() ? std::vector<int>{base.config.K} : grid.Ks;
  std::vector<double> epss = grid.epss.empty() ? std::vector<double>{base.eps} : grid.epss;
  std::vector<InputStrategy> strategies =
      grid.strategies.empty() ? std::vector<InputStrategy>{base.strategy} : grid.strategies;
  if (Ms.empty() || Ks.empty() || epss.empty())
    throw InvalidArgument("sweep requires a non-empty grid");

  std::vector<SweepRow> rows;
  std::int64_t index = 0;
  for (int K : Ks)
    for (std::int64_t M : Ms)
      for (double eps : epss)
        for (InputStrategy strategy : strategies) {
          SweepRow row;
          row.row_index = index;
          row.K = K;
          row.M = M;
          row.eps = eps;
          row.strategy = strategy;
          row.row_seed = splitmix64(base.master_seed ^ splitmix64(0xa5a5a5a5a5a5a5a5ull +
                                                                  static_cast<std::uint64_t>(index)));
          TrialPlan plan = base;
          plan.config.K = K;
          plan.config.M = M;
          plan.eps = eps;
          plan.strategy = strategy;
          plan.master_seed = row.row_seed;
          const FmonSpec spec = spec_factory(K);
          row.tail = estimate_tail(plan, spec);
          row.bound = error_bound(spec, plan.config, eps);
          rows.push_back(std::move(row));
          ++index;
        }
  return rows;
}

struct BernsteinRow {
  double t = 0.0;
  double bound_raw = 0.0;
  double bound_clamped = 0.0;
  std::int64_t exceed_count = 0;
  std::int64_t samples = 0;
  double point_estimate = 0.0;
  double lower_confidence = 0.0;  // one-sided exact lower limit at 99%
  bool pass = false;
};

// Empirical check of the Bernstein bound: draws `samples` sums of M
// independent centered copies of dist and compares the tail frequency at
// each t against the closed form. The norm bound L is the moment-growth
// norm of dist, carried through centering. A row passes when the exact
// one-sided binomial test at 99% does not place the true tail above the
// bound.
inline std::vector<BernsteinRow> bernstein_selfcheck(const DistributionSpec& dist, std::int64_t M,
                                                     std::span<const double> t_grid,
                                                     std::int64_t samples, std::uint64_t seed,
                                                     int threads = 1) {
  if (M < 1) throw InvalidArgument("bernstein_selfcheck requires M >= 1");
  if (samples < 1) throw InvalidArgument("bernstein_selfcheck requires samples >= 1");
  const double L = norm_calculus(NormOp::Centering,
                                 std::array<double, 1>{subexponential_norm(dist).value});
  std::vector<double> abs_sum(static_cast<std::size_t>(samples));
  detail::for_each_trial(samples, threads, [&](std::int64_t i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    double acc = 0.0;
    for (std::int64_t j = 0; j < M; ++j) acc += dist.sample(rng) - dist.mean;
    abs_sum[static_cast<std::size_t>(i)] = std::abs(acc);
  });
  std::vector<BernsteinRow> rows;
  rows.reserve(t_grid.size());
  for (double t : t_grid) {
    BernsteinRow row;
    row.t = t;
    const TailBound b = bernstein_tail(t, L, M);
    row.bound_raw = b.raw_value;
    row.bound_clamped = b.clamped_value;
    row.samples = samples;
    for (double v : abs_sum) row.exceed_count += v >= t ? 1 : 0;
    row.point_estimate = static_cast<double>(row.exceed_count) / static_cast<double>(samples);
    row.lower_confidence = clopper_lower(row.exceed_count, samples, 0.99);
    row.pass = row.lower_confidence <= row.bound_clamped + 1e-15;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace airfunc
