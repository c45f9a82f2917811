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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "airfunc/errors.hpp"
#include "airfunc/rng.hpp"

namespace airfunc {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x, double tol = 1e-12) const {
    const double slack = tol * std::max({1.0, std::abs(lo), std::abs(hi)});
    return x >= lo - slack && x <= hi + slack;
  }
  double clamp(double x) const { return std::min(std::max(x, lo), hi); }
};

// One per-transmitter inner function with its declared extrema over the
// domain. Extrema are declared, not computed; audit_inner fuzz-checks them.
struct InnerFunction {
  std::function<double(double)> eval;
  Interval domain;
  double phi_min = 0.0;
  double phi_max = 0.0;
  // Domain points attaining (approximately) the declared extrema; used by
  // the all-min / all-max input strategies.
  double arg_min = 0.0;
  double arg_max = 0.0;
};

// A nomographic function F(sum_k f_k(s_k)) together with a strictly
// increasing increment majorant Phi bounding |F(x) - F(y)| by Phi(|x - y|).
struct FmonSpec {
  std::string label;
  std::vector<InnerFunction> inners;
  std::function<double(double)> outer;
  Interval outer_domain;  // D
  std::function<double(double)> majorant;          // Phi, on [0, inf)
  std::function<double(double)> majorant_inverse;  // Phi^{-1}, on (0, sup Phi)

  int K() const { return static_cast<int>(inners.size()); }
};

struct SpreadSummary {
  double total = 0.0;     // sum of inner ranges
  double max = 0.0;       // largest inner range
  double relative = 0.0;  // P * total / max
};

inline SpreadSummary spreads(const FmonSpec& spec, double P) {
  if (!(P > 0)) throw InvalidArgument("spreads requires P > 0");
  if (spec.inners.empty()) throw InvalidSpec("function spec has no inner functions");
  SpreadSummary s;
  for (const auto& f : spec.inners) {
    if (!std::isfinite(f.phi_min) || !std::isfinite(f.phi_max))
      throw InvalidSpec("inner extrema must be finite");
    const double range = f.phi_max - f.phi_min;
    if (range < 0) throw InvalidSpec("inner extrema must satisfy phi_min <= phi_max");
    s.total += range;
    s.max = std::max(s.max, range);
  }
  if (s.max == 0.0)
    throw DegenerateFunction("all inner functions are constant; the scheme is undefined for '" +
                             spec.label + "'");
  s.relative = P * s.total / s.max;
  return s;
}

// Interval of values reachable by sum_k f_k(s_k).
inline Interval inner_sum_interval(const FmonSpec& spec) {
  Interval r{0.0, 0.0};
  for (const auto& f : spec.inners) {
    r.lo += f.phi_min;
    r.hi += f.phi_max;
  }
  return r;
}

struct PhiInverseResult {
  double value = 0.0;
  // eps was at or beyond the majorant's range over achievable increments;
  // value is the largest achievable increment and the implied error event
  // can only be rarer.
  bool saturated = false;
};

inline PhiInverseResult phi_inverse(const FmonSpec& spec, double eps) {
  if (!(eps > 0)) throw InvalidArgument("phi_inverse requires eps > 0");
  if (!spec.majorant || !spec.majorant_inverse)
    throw InvalidSpec("spec '" + spec.label + "' has no invertible majorant");
  const double max_increment = inner_sum_interval(spec).width();
  const double sup_phi = spec.majorant(max_increment);
  if (eps >= sup_phi) return {max_increment, true};
  return {spec.majorant_inverse(eps), false};
}

inline double evaluate(const FmonSpec& spec, std::span<const double> s) {
  if (static_cast<int>(s.size()) != spec.K())
    throw InvalidArgument("evaluate: expected " + std::to_string(spec.K()) + " components, got " +
                          std::to_string(s.size()));
  double acc = 0.0;
  for (int k = 0; k < spec.K(); ++k) {
    const auto& f = spec.inners[static_cast<std::size_t>(k)];
    if (!f.domain.contains(s[static_cast<std::size_t>(k)]))
      throw DomainViolation(k, s[static_cast<std::size_t>(k)],
                            "component " + std::to_string(k) + " value " +
                                std::to_string(s[static_cast<std::size_t>(k)]) +
                                " outside domain [" + std::to_string(f.domain.lo) + ", " +
                                std::to_string(f.domain.hi) + "]");
    acc += f.eval(s[static_cast<std::size_t>(k)]);
  }
  return spec.outer(acc);
}

enum class BuiltinKind { Sum, Average, PNorm, LipschitzLinear };

struct BuiltinParams {
  double p = 2.0;        // pnorm exponent
  double B = 1.0;        // Lipschitz constant of the outer function
  Interval inner_domain{0.0, 1.0};  // lipschitz_linear inner domain
};

inline FmonSpec make_builtin(BuiltinKind kind, int K, BuiltinParams params = {}) {
  if (K < 1) throw InvalidArgument("make_builtin requires K >= 1");
  FmonSpec spec;
  const double Kd = static_cast<double>(K);
  switch (kind) {
    case BuiltinKind::Sum: {
      spec.label = "sum";
      spec.inners.assign(static_cast<std::size_t>(K),
                         InnerFunction{[](double s) { return s; }, {0.0, 1.0}, 0.0, 1.0, 0.0, 1.0});
      spec.outer = [](double x) { return x; };
      spec.outer_domain = {0.0, Kd};
      spec.majorant = [](double x) { return x; };
      spec.majorant_inverse = [](double e) { return e; };
      break;
    }
    case BuiltinKind::Average: {
      spec.label = "average";
      spec.inners.assign(static_cast<std::size_t>(K),
                         InnerFunction{[](double s) { return s; }, {0.0, 1.0}, 0.0, 1.0, 0.0, 1.0});
      spec.outer = [Kd](double x) { return x / Kd; };
      spec.outer_domain = {0.0, Kd};
      spec.majorant = [Kd](double x) { return x / Kd; };
      spec.majorant_inverse = [Kd](double e) { return Kd * e; };
      break;
    }
    case BuiltinKind::PNorm: {
      const double p = params.p;
      if (!(p >= 1.0)) throw InvalidArgument("pnorm requires p >= 1");
      spec.label = "pnorm:" + std::to_string(p);
      spec.inners.assign(
          static_cast<std::size_t>(K),
          InnerFunction{[p](double s) { return std::pow(std::abs(s), p); }, {-1.0, 1.0}, 0.0, 1.0,
                        0.0, 1.0});
      spec.outer = [p](double x) { return std::pow(x, 1.0 / p); };
      spec.outer_domain = {0.0, Kd};
      spec.majorant = [p](double x) { return std::pow(x, 1.0 / p); };
      spec.majorant_inverse = [p](double e) { return std::pow(e, p); };
      break;
    }
    case BuiltinKind::LipschitzLinear: {
      const double B = params.B;
      if (!(B > 0)) throw InvalidArgument("lipschitz_linear requires B > 0");
      const Interval dom = params.inner_domain;
      if (!(dom.lo < dom.hi)) throw InvalidArgument("lipschitz_linear requires lo < hi inner bounds");
      spec.label = "lipschitz_linear:" + std::to_string(B);
      spec.inners.assign(static_cast<std::size_t>(K),
                         InnerFunction{[](double s) { return s; }, dom, dom.lo, dom.hi, dom.lo, dom.hi});
      spec.outer = [B](double x) { return B * x; };
      spec.outer_domain = {Kd * dom.lo, Kd * dom.hi};
      spec.majorant = [B](double x) { return B * x; };
      spec.majorant_inverse = [B](double e) { return e / B; };
      break;
    }
  }
  return spec;
}

// Builtin descriptors addressable from configuration files:
// "sum", "average", "pnorm:<p>", "lipschitz_linear:<B>".
inline FmonSpec make_builtin(const std::string& descriptor, int K) {
  const auto colon = descriptor.find(':');
  const std::string name = descriptor.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  auto numeric_arg = [&](const char* what) {
    try {
      std::size_t used = 0;
      const double v = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return v;
    } catch (const std::exception&) {
      throw InvalidArgument(std::string(what) + " requires a numeric parameter, got '" + arg + "'");
    }
  };
  if (name == "sum") return make_builtin(BuiltinKind::Sum, K);
  if (name == "average") return make_builtin(BuiltinKind::Average, K);
  if (name == "pnorm") {
    BuiltinParams params;
    params.p = numeric_arg("pnorm");
    return make_builtin(BuiltinKind::PNorm, K, params);
  }
  if (name == "lipschitz_linear") {
    BuiltinParams params;
    params.B = numeric_arg("lipschitz_linear");
    return make_builtin(BuiltinKind::LipschitzLinear, K, params);
  }
  throw InvalidArgument("unknown builtin function '" + descriptor +
                        "'; supported: sum, average, pnorm:<p>, lipschitz_linear:<B>");
}

// Fuzz audit of a declared inner function: samples points of the domain and
// verifies the declared extrema bracket every evaluation.
inline bool audit_inner(const InnerFunction& f, int samples, Rng& rng, double tol = 1e-9) {
  for (int i = 0; i < samples; ++i) {
    const double s = f.domain.lo + (f.domain.hi - f.domain.lo) * uniform01(rng);
    const double v = f.eval(s);
    if (v < f.phi_min - tol || v > f.phi_max + tol) return false;
  }
  return true;
}

}  // namespace airfunc
