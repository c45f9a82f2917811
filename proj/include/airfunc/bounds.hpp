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

#include "airfunc/channel.hpp"
#include "airfunc/errors.hpp"
#include "airfunc/fmon.hpp"

namespace airfunc {

// 2 exp(-e) with the exponent carried in extended precision; underflows
// below the double denormal range flush to zero.
inline double two_exp_neg(long double e) {
  return static_cast<double>(2.0L * std::exp(-e));
}

struct BoundReport {
  double eta = 0.0;      // Phi^{-1}(eps) / 2
  double L_const = 0.0;  // sub-exponential norm bound of the effective noise
  double gamma1 = 0.0;   // fading-energy deviation term
  double gamma2 = 0.0;   // effective-noise deviation term
  double total_raw = 0.0;
  double total_clamped = 0.0;
  bool saturated = false;  // eps exceeded the majorant's achievable range
};

// Closed-form error bound: P(|f_bar - f| >= eps) <= gamma1 + gamma2 with
//   gamma1 = 2 exp(-M eta^2 / (2 Delta sF^2 eta + 8 Delta^2 K sF^4))
//   L      = 3 sF^2 Dbar + 4 sN sF sqrt(Delta Dbar) / sqrt(P) + 2 sN^2 Delta / P
//   gamma2 = 2 exp(-M eta^2 / (2 L eta + 4 L^2))
inline BoundReport error_bound(const FmonSpec& spec, const ChannelConfig& cfg, double eps) {
  if (!(eps > 0)) throw InvalidArgument("error_bound requires eps > 0");
  const SpreadSummary sp = spreads(spec, cfg.P);
  const PhiInverseResult pi = phi_inverse(spec, eps);
  const long double eta = static_cast<long double>(pi.value) / 2.0L;
  const long double delta_f = sp.max, dbar = sp.total;
  const long double sF = cfg.sigma_F, sN = cfg.sigma_N, P = cfg.P;
  const long double K = static_cast<long double>(cfg.K);
  const long double M = static_cast<long double>(cfg.M);

  BoundReport rep;
  rep.saturated = pi.saturated;
  rep.eta = static_cast<double>(eta);
  const long double L =
      3.0L * sF * sF * dbar + 4.0L * sN * sF * std::sqrt(delta_f * dbar) / std::sqrt(P) +
      2.0L * sN * sN * delta_f / P;
  rep.L_const = static_cast<double>(L);
  rep.gamma1 = two_exp_neg(M * eta * eta /
                           (2.0L * delta_f * sF * sF * eta + 8.0L * delta_f * delta_f * K * sF * sF * sF * sF));
  rep.gamma2 = two_exp_neg(M * eta * eta / (2.0L * L * eta + 4.0L * L * L));
  rep.total_raw = rep.gamma1 + rep.gamma2;
  rep.total_clamped = std::min(rep.total_raw, 1.0);
  return rep;
}

struct CostReport {
  double gamma1_cost = 0.0;  // 4 Delta sF^2 Phi^{-1}(eps) + 32 Delta^2 K sF^4
  double gamma2_cost = 0.0;  // 4 L Phi^{-1}(eps) + 16 L^2
  std::int64_t M_required = 1;
};

// Channel uses sufficient for P(|f_bar - f| >= eps) <= delta:
//   M = ceil( (log 4 - log delta) / Phi^{-1}(eps)^2 * max(gamma1_cost, gamma2_cost) ).
inline CostReport comm_cost(const FmonSpec& spec, const ChannelConfig& cfg, double eps,
                            double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("comm_cost requires delta in (0,1)");
  if (!(eps > 0)) throw InvalidArgument("comm_cost requires eps > 0");
  const SpreadSummary sp = spreads(spec, cfg.P);
  const PhiInverseResult pi = phi_inverse(spec, eps);
  const long double phinv = pi.value;
  const long double delta_f = sp.max, dbar = sp.total;
  const long double sF = cfg.sigma_F, sN = cfg.sigma_N, P = cfg.P;
  const long double K = static_cast<long double>(cfg.K);
  const long double L =
      3.0L * sF * sF * dbar + 4.0L * sN * sF * std::sqrt(delta_f * dbar) / std::sqrt(P) +
      2.0L * sN * sN * delta_f / P;
  CostReport rep;
  rep.gamma1_cost = static_cast<double>(4.0L * delta_f * sF * sF * phinv +
                                        32.0L * delta_f * delta_f * K * sF * sF * sF * sF);
  rep.gamma2_cost = static_cast<double>(4.0L * L * phinv + 16.0L * L * L);
  const long double m_real = (std::log(4.0L) - std::log(static_cast<long double>(delta))) /
                             (phinv * phinv) *
                             std::max<long double>(rep.gamma1_cost, rep.gamma2_cost);
  rep.M_required = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(m_real)));
  return rep;
}

enum class SpecializedKind { Sum, Average, PNorm2 };

// Verbatim closed forms of the three worked specializations (sum, average,
// 2-norm on hypercubes). For the average the reported L is the specialized
// one, i.e. 1/K times the generic constant; the probabilities coincide.
inline BoundReport specialized_bound(SpecializedKind kind, int K, const ChannelConfig& cfg,
                                     double eps, std::int64_t M) {
  if (K < 1) throw InvalidArgument("specialized_bound requires K >= 1");
  if (M < 1) throw InvalidArgument("specialized_bound requires M >= 1");
  if (!(eps > 0)) throw InvalidArgument("specialized_bound requires eps > 0");
  const long double sF = cfg.sigma_F, sN = cfg.sigma_N, P = cfg.P;
  const long double Kl = static_cast<long double>(K);
  const long double Ml = static_cast<long double>(M);
  const long double e = eps;
  BoundReport rep;
  switch (kind) {
    case SpecializedKind::Sum: {
      const long double L = 3.0L * sF * sF * Kl + 4.0L * sN * sF * std::sqrt(Kl) / std::sqrt(P) +
                            2.0L * sN * sN / P;
      rep.eta = static_cast<double>(e / 2.0L);
      rep.L_const = static_cast<double>(L);
      rep.gamma1 = two_exp_neg(Ml * e * e / (4.0L * sF * sF * e + 32.0L * Kl * sF * sF * sF * sF));
      rep.gamma2 = two_exp_neg(Ml * e * e / (4.0L * L * e + 16.0L * L * L));
      break;
    }
    case SpecializedKind::Average: {
      const long double L = 3.0L * sF * sF + 4.0L * sN * sF / std::sqrt(P * Kl) +
                            2.0L * sN * sN / (P * Kl);
      rep.eta = static_cast<double>(Kl * e / 2.0L);
      rep.L_const = static_cast<double>(L);
      rep.gamma1 =
          two_exp_neg(Ml * Kl * e * e / (4.0L * sF * sF * e + 32.0L * sF * sF * sF * sF));
      rep.gamma2 = two_exp_neg(Ml * e * e / (4.0L * L * e + 16.0L * L * L));
      break;
    }
    case SpecializedKind::PNorm2: {
      const long double L = 3.0L * sF * sF * Kl + 4.0L * sN * sF * std::sqrt(Kl) / std::sqrt(P) +
                            2.0L * sN * sN / P;
      rep.eta = static_cast<double>(e * e / 2.0L);
      rep.L_const = static_cast<double>(L);
      rep.gamma1 = two_exp_neg(Ml * e * e * e * e /
                               (4.0L * sF * sF * e * e + 32.0L * Kl * sF * sF * sF * sF));
      rep.gamma2 = two_exp_neg(Ml * e * e * e * e / (4.0L * L * e * e + 16.0L * L * L));
      break;
    }
  }
  rep.total_raw = rep.gamma1 + rep.gamma2;
  rep.total_clamped = std::min(rep.total_raw, 1.0);
  return rep;
}

}  // namespace airfunc
