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
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "airfunc/bounds.hpp"
#include "airfunc/errors.hpp"
#include "airfunc/fmon.hpp"

namespace airfunc {

enum class KernelFamily { Gaussian, Linear, Polynomial };

// Scalar kernel on one input component.
//   gaussian:<w>     k(a,b) = exp(-(a-b)^2 / (2 w^2))
//   linear           k(a,b) = a b
//   polynomial:<d>   k(a,b) = (1 + a b)^d
struct Kernel {
  KernelFamily family = KernelFamily::Linear;
  double width = 1.0;
  int degree = 2;

  double operator()(double a, double b) const {
    switch (family) {
      case KernelFamily::Gaussian: {
        const double d = a - b;
        return std::exp(-d * d / (2.0 * width * width));
      }
      case KernelFamily::Linear:
        return a * b;
      case KernelFamily::Polynomial:
        return std::pow(1.0 + a * b, degree);
    }
    throw InvalidArgument("unknown kernel family");
  }

  // Bound on |d/da k(a, b)| over a in [-R, R] for a fixed support point b.
  double lipschitz_bound(double R, double b) const {
    switch (family) {
      case KernelFamily::Gaussian:
        // sup_u |u| exp(-u^2 / 2w^2) / w^2 = exp(-1/2) / w
        return std::exp(-0.5) / width;
      case KernelFamily::Linear:
        return std::abs(b);
      case KernelFamily::Polynomial:
        return degree * std::abs(b) * std::pow(1.0 + R * std::abs(b), degree - 1);
    }
    throw InvalidArgument("unknown kernel family");
  }
};

inline Kernel parse_kernel(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  const std::string name = descriptor.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  Kernel k;
  if (name == "gaussian") {
    k.family = KernelFamily::Gaussian;
    k.width = arg.empty() ? 1.0 : std::stod(arg);
    if (!(k.width > 0)) throw InvalidArgument("gaussian kernel width must be > 0");
  } else if (name == "linear") {
    k.family = KernelFamily::Linear;
  } else if (name == "polynomial") {
    k.family = KernelFamily::Polynomial;
    k.degree = arg.empty() ? 2 : std::stoi(arg);
    if (k.degree < 1) throw InvalidArgument("polynomial kernel degree must be >= 1");
  } else {
    throw InvalidArgument("unknown kernel '" + descriptor +
                          "'; supported: gaussian:<width>, linear, polynomial:<degree>");
  }
  return k;
}

inline std::string kernel_name(const Kernel& k) {
  switch (k.family) {
    case KernelFamily::Gaussian: return "gaussian:" + std::to_string(k.width);
    case KernelFamily::Linear: return "linear";
    case KernelFamily::Polynomial: return "polynomial:" + std::to_string(k.degree);
  }
  return "?";
}

// Trained additive-kernel predictor: f(x) = sum_k f_k(x_k) with
// f_k(x_k) = sum_n alpha_n kappa_k(x_k, x^n_k). Training happens elsewhere;
// this consumes the coefficients and support points.
struct AdditiveKernelModel {
  std::vector<Kernel> kernels;                 // one per component
  std::vector<std::vector<double>> supports;   // N rows of K entries
  std::vector<double> coefficients;            // N
  std::vector<Interval> domains;               // K compact component domains

  int K() const { return static_cast<int>(kernels.size()); }
  int N() const { return static_cast<int>(coefficients.size()); }

  void validate() const {
    if (kernels.empty()) throw InvalidSpec("model has no kernels");
    if (coefficients.empty()) throw InvalidSpec("model needs at least one support point");
    if (supports.size() != coefficients.size())
      throw InvalidSpec("support point and coefficient counts must match");
    if (domains.size() != kernels.size())
      throw InvalidSpec("one domain per component is required");
    for (const auto& row : supports)
      if (row.size() != kernels.size())
        throw InvalidSpec("every support point needs K components");
    for (const auto& d : domains)
      if (!(d.lo < d.hi)) throw InvalidSpec("component domains must satisfy lo < hi");
  }
};

inline double component_predict(const AdditiveKernelModel& model, int k, double xk) {
  double acc = 0.0;
  for (int n = 0; n < model.N(); ++n)
    acc += model.coefficients[static_cast<std::size_t>(n)] *
           model.kernels[static_cast<std::size_t>(k)](xk, model.supports[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
  return acc;
}

inline double additive_predict(const AdditiveKernelModel& model, std::span<const double> x) {
  model.validate();
  if (static_cast<int>(x.size()) != model.K())
    throw InvalidArgument("additive_predict: expected K components");
  double acc = 0.0;
  for (int k = 0; k < model.K(); ++k) {
    if (!model.domains[static_cast<std::size_t>(k)].contains(x[static_cast<std::size_t>(k)]))
      throw DomainViolation(k, x[static_cast<std::size_t>(k)],
                            "component " + std::to_string(k) + " outside its declared domain");
    acc += component_predict(model, k, x[static_cast<std::size_t>(k)]);
  }
  return acc;
}

// Converts the predictor into a nomographic spec with F = Phi = identity.
// Per-component extrema come from a dense grid search padded outward by the
// grid-cell Lipschitz slack, so the declared extrema stay conservative and
// the power map stays within the peak constraint.
inline FmonSpec model_to_fmon(const AdditiveKernelModel& model, int grid_points = 10000) {
  model.validate();
  if (grid_points < 2) throw InvalidArgument("model_to_fmon requires grid_points >= 2");
  FmonSpec spec;
  spec.label = "additive-model";
  double sum_min = 0.0, sum_max = 0.0, max_range = 0.0;
  for (int k = 0; k < model.K(); ++k) {
    const Interval dom = model.domains[static_cast<std::size_t>(k)];
    const double cell = dom.width() / (grid_points - 1);
    double lipschitz = 0.0;
    const double R = std::max(std::abs(dom.lo), std::abs(dom.hi));
    for (int n = 0; n < model.N(); ++n)
      lipschitz += std::abs(model.coefficients[static_cast<std::size_t>(n)]) *
                   model.kernels[static_cast<std::size_t>(k)].lipschitz_bound(
                       R, model.supports[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
    // Self-contained evaluator so the spec outlives the model object.
    const Kernel kern = model.kernels[static_cast<std::size_t>(k)];
    std::vector<double> support_col(static_cast<std::size_t>(model.N()));
    for (int n = 0; n < model.N(); ++n)
      support_col[static_cast<std::size_t>(n)] =
          model.supports[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    const std::vector<double> coef = model.coefficients;
    auto eval = [kern, support_col, coef](double x) {
      double acc = 0.0;
      for (std::size_t n = 0; n < coef.size(); ++n) acc += coef[n] * kern(x, support_col[n]);
      return acc;
    };
    double lo_val = std::numeric_limits<double>::infinity();
    double hi_val = -std::numeric_limits<double>::infinity();
    double arg_lo = dom.lo, arg_hi = dom.lo;
    for (int i = 0; i < grid_points; ++i) {
      const double x = i + 1 == grid_points ? dom.hi : dom.lo + cell * i;
      const double v = eval(x);
      if (v < lo_val) { lo_val = v; arg_lo = x; }
      if (v > hi_val) { hi_val = v; arg_hi = x; }
    }
    const double pad = 0.5 * lipschitz * cell;
    InnerFunction inner;
    inner.eval = eval;
    inner.domain = dom;
    inner.phi_min = lo_val - pad;
    inner.phi_max = hi_val + pad;
    inner.arg_min = arg_lo;
    inner.arg_max = arg_hi;
    spec.inners.push_back(std::move(inner));
    sum_min += lo_val - pad;
    sum_max += hi_val + pad;
    max_range = std::max(max_range, (hi_val + pad) - (lo_val - pad));
  }
  if (max_range == 0.0)
    throw DegenerateFunction("additive model is constant (all coefficients zero?)");
  spec.outer = [](double x) { return x; };
  spec.outer_domain = {sum_min, sum_max};
  spec.majorant = [](double x) { return x; };
  spec.majorant_inverse = [](double e) { return e; };
  return spec;
}

// A loss B-Lipschitz in its estimate argument, uniformly over (x, y).
struct LipschitzLoss {
  std::function<double(double, double, double)> eval;  // (x_summary, y, t)
  double lipschitz_B = 1.0;
};

struct LossDeviationReport {
  std::int64_t M_required = 1;
  double loss_threshold = 0.0;     // B * eps
  double probability_bound = 0.0;  // delta
};

// Corollary chain for the additive model: with M >= M_required channel uses,
// P(|L(x,y,f_bar) - L(x,y,f(x))| >= B eps) <= P(|f_bar - f(x)| >= eps) <= delta.
inline LossDeviationReport loss_deviation_probability(const AdditiveKernelModel& model,
                                                      const LipschitzLoss& loss,
                                                      const ChannelConfig& cfg, double eps,
                                                      double delta) {
  if (!(loss.lipschitz_B > 0)) throw InvalidArgument("loss must have a positive Lipschitz constant");
  const FmonSpec spec = model_to_fmon(model);
  ChannelConfig model_cfg = cfg;
  model_cfg.K = spec.K();
  const CostReport cost = comm_cost(spec, model_cfg, eps, delta);
  LossDeviationReport rep;
  rep.M_required = cost.M_required;
  rep.loss_threshold = loss.lipschitz_B * eps;
  rep.probability_bound = delta;
  return rep;
}

// Parameters of the max-consensus corollary: slack m (even), maximum
// description length d, and M channel uses per multiple-access step.
struct MaxConsensusParams {
  int m = 2;
  int d = 0;
  std::int64_t M = 1;
};

struct MaxConsensusReport {
  double eps = 0.0;    // m / 4
  double gamma = 0.0;  // clamped sum-function error bound at eps
  double success_probability_bound = 0.0;  // (1 - gamma)^{3(d+1)}
  std::int64_t mac_channel_uses = 0;       // 3 M (d+1)
  std::int64_t multicast_count = 0;        // M (d+1)
};

// Weak m-max-consensus over the fading channel: each of the d+1 protocol
// steps replaces its three idealized channel accesses with M uses of the
// fading channel computing the K-agent sum.
inline MaxConsensusReport maxconsensus_report(const MaxConsensusParams& params,
                                              const ChannelConfig& cfg) {
  if (params.m < 2 || params.m % 2 != 0)
    throw InvalidArgument("max-consensus slack m must be a positive even integer");
  if (params.d < 0) throw InvalidArgument("maximum description length d must be >= 0");
  if (params.M < 1) throw InvalidArgument("channel uses per step must be >= 1");
  ChannelConfig sum_cfg = cfg;
  sum_cfg.M = params.M;
  const FmonSpec sum_spec = make_builtin(BuiltinKind::Sum, cfg.K);
  MaxConsensusReport rep;
  rep.eps = static_cast<double>(params.m) / 4.0;
  rep.gamma = error_bound(sum_spec, sum_cfg, rep.eps).total_clamped;
  const double steps = 3.0 * (params.d + 1);
  rep.success_probability_bound = std::pow(1.0 - rep.gamma, steps);
  rep.mac_channel_uses = 3 * params.M * (params.d + 1);
  rep.multicast_count = params.M * (params.d + 1);
  return rep;
}

}  // namespace airfunc
