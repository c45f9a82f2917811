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

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>

#include "airfunc/distribution.hpp"
#include "airfunc/errors.hpp"
#include "airfunc/rng.hpp"

namespace airfunc {

// Fast-fading multiple-access channel: K transmitters, M channel uses,
// peak power P. Fading and noise are described per real/imaginary
// component; sigma_F and sigma_N are the declared sub-gaussian bounds.
struct ChannelConfig {
  int K = 1;
  std::int64_t M = 1;
  double P = 1.0;
  DistributionSpec fading_component;  // mean 0, second moment 1
  DistributionSpec noise_component;   // mean 0
  double sigma_F = 1.0;
  double sigma_N = 1.0;

  void validate() const {
    if (K < 1) throw InvalidArgument("channel.K must be >= 1");
    if (M < 1) throw InvalidArgument("channel.M must be >= 1");
    if (!(P > 0)) throw InvalidArgument("channel.P must be > 0");
    if (fading_component.mean != 0.0)
      throw InvalidArgument("fading components must have mean 0");
    if (std::abs(fading_component.second_moment - 1.0) > 1e-12)
      throw InvalidArgument("fading components must have second moment 1");
    if (noise_component.mean != 0.0)
      throw InvalidArgument("noise components must have mean 0");
    if (sigma_F < 0 || sigma_N < 0)
      throw InvalidArgument("sigma_F and sigma_N must be >= 0");
    if (fading_component.subgauss_tau && sigma_F < *fading_component.subgauss_tau - 1e-12)
      throw InvalidArgument("sigma_F must dominate the fading component's sub-gaussian bound");
    if (noise_component.subgauss_tau && sigma_N < *noise_component.subgauss_tau - 1e-12)
      throw InvalidArgument("sigma_N must dominate the noise component's sub-gaussian bound");
  }
};

struct FadingRealization {
  Eigen::ArrayXXcd H;  // K x M
};

struct NoiseRealization {
  Eigen::ArrayXcd N;  // M
};

// One complex value with i.i.d. real/imaginary parts from the component
// spec. Gaussian components consume one polar pair per value (real part
// first); everything else consumes two scalar draws.
inline std::complex<double> sample_complex_component(const DistributionSpec& d, Rng& rng) {
  if (d.family == DistFamily::Gaussian) {
    double z0, z1;
    gaussian_pair(rng, z0, z1);
    return {d.mu + d.sigma * z0, d.mu + d.sigma * z1};
  }
  const double re = d.sample(rng);
  const double im = d.sample(rng);
  return {re, im};
}

// Draw order is fixed: H row by row (k major, m minor), then N in m order.
inline std::pair<FadingRealization, NoiseRealization> sample_realization(const ChannelConfig& cfg,
                                                                         Rng& rng) {
  cfg.validate();
  FadingRealization fading;
  NoiseRealization noise;
  fading.H.resize(cfg.K, cfg.M);
  noise.N.resize(cfg.M);
  for (int k = 0; k < cfg.K; ++k)
    for (std::int64_t m = 0; m < cfg.M; ++m)
      fading.H(k, m) = sample_complex_component(cfg.fading_component, rng);
  for (std::int64_t m = 0; m < cfg.M; ++m)
    noise.N(m) = sample_complex_component(cfg.noise_component, rng);
  return {std::move(fading), std::move(noise)};
}

// Y(m) = sum_k H_k(m) x_k(m) + N(m), after checking the peak power
// constraint |x_k(m)|^2 <= P (with 1e-12 relative slack).
inline Eigen::ArrayXcd apply_channel(const ChannelConfig& cfg, const Eigen::ArrayXXcd& x,
                                     const FadingRealization& fading,
                                     const NoiseRealization& noise) {
  if (x.rows() != cfg.K || x.cols() != cfg.M || fading.H.rows() != cfg.K ||
      fading.H.cols() != cfg.M || noise.N.size() != cfg.M)
    throw InvalidArgument("apply_channel: shape mismatch with channel config");
  const double limit = cfg.P * (1.0 + 1e-12);
  for (int k = 0; k < cfg.K; ++k)
    for (std::int64_t m = 0; m < cfg.M; ++m) {
      const double pw = std::norm(x(k, m));
      if (pw > limit)
        throw PeakPowerViolation(k, static_cast<int>(m), pw,
                                 "peak power violated at (k=" + std::to_string(k) +
                                     ", m=" + std::to_string(m) + "): |x|^2 = " +
                                     std::to_string(pw) + " > P = " + std::to_string(cfg.P));
    }
  Eigen::ArrayXcd y(cfg.M);
  for (std::int64_t m = 0; m < cfg.M; ++m) {
    std::complex<double> acc{0.0, 0.0};
    for (int k = 0; k < cfg.K; ++k) acc += fading.H(k, m) * x(k, m);
    y(m) = acc + noise.N(m);
  }
  return y;
}

// Channel component families addressable from configuration files:
// "gaussian", "rademacher", "uniform:<a>", "circular-gaussian:<sigma>".
inline DistributionSpec parse_component_family(const std::string& descriptor) {
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
  if (name == "gaussian") return gaussian_dist(0.0, 1.0);
  if (name == "rademacher") return rademacher_dist();
  if (name == "uniform") {
    const double a = numeric_arg("uniform");
    if (!(a > 0)) throw InvalidArgument("uniform:<a> requires a > 0");
    return uniform_dist(-a, a);
  }
  if (name == "circular-gaussian") {
    const double s = numeric_arg("circular-gaussian");
    if (!(s >= 0)) throw InvalidArgument("circular-gaussian:<sigma> requires sigma >= 0");
    return gaussian_dist(0.0, s);
  }
  throw InvalidArgument("unknown component family '" + descriptor +
                        "'; supported: gaussian, rademacher, uniform:<a>, circular-gaussian:<sigma>");
}

}  // namespace airfunc
