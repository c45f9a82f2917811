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
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "airfunc/channel.hpp"
#include "airfunc/errors.hpp"
#include "airfunc/fmon.hpp"
#include "airfunc/rng.hpp"

namespace airfunc {

// Phase dither: i.i.d. uniform +-1, independent of fading and noise.
struct Dither {
  Eigen::ArrayXXd U;  // K x M
};

inline Dither sample_dither(int K, std::int64_t M, Rng& rng) {
  Dither d;
  d.U.resize(K, M);
  for (int k = 0; k < K; ++k)
    for (std::int64_t m = 0; m < M; ++m) d.U(k, m) = sample_sign(rng);
  return d;
}

// Transmit amplitudes sqrt(g_k(f_k(s_k))) with g_k(t) = P (t - phi_min_k) / Delta(f).
// Shared by the materialized and the streaming pipeline so both produce
// bit-identical symbols.
inline std::vector<double> preprocess_amplitudes(const FmonSpec& spec, const ChannelConfig& cfg,
                                                 std::span<const double> s) {
  if (static_cast<int>(s.size()) != spec.K() || spec.K() != cfg.K)
    throw InvalidArgument("preprocess: input size, spec and config must agree on K");
  const SpreadSummary sp = spreads(spec, cfg.P);
  std::vector<double> amp(static_cast<std::size_t>(cfg.K));
  for (int k = 0; k < cfg.K; ++k) {
    const auto& f = spec.inners[static_cast<std::size_t>(k)];
    if (!f.domain.contains(s[static_cast<std::size_t>(k)]))
      throw DomainViolation(k, s[static_cast<std::size_t>(k)],
                            "component " + std::to_string(k) + " outside inner domain");
    const double t = f.eval(s[static_cast<std::size_t>(k)]);
    if (t < f.phi_min - 1e-9 * std::max(1.0, std::abs(f.phi_min)))
      throw InvalidSpec("inner function value below its declared phi_min");
    const double g = cfg.P / sp.max * std::max(t - f.phi_min, 0.0);
    amp[static_cast<std::size_t>(k)] = std::sqrt(g);
  }
  return amp;
}

// X_k(m) = sqrt(g_k(f_k(s_k))) U_k(m); real-valued, |X_k(m)|^2 <= P.
inline Eigen::ArrayXXcd preprocess(const FmonSpec& spec, const ChannelConfig& cfg,
                                   std::span<const double> s, const Dither& dither) {
  if (dither.U.rows() != cfg.K || dither.U.cols() != cfg.M)
    throw InvalidArgument("preprocess: dither shape mismatch");
  const std::vector<double> amp = preprocess_amplitudes(spec, cfg, s);
  Eigen::ArrayXXcd x(cfg.K, cfg.M);
  for (int k = 0; k < cfg.K; ++k)
    for (std::int64_t m = 0; m < cfg.M; ++m)
      x(k, m) = std::complex<double>(amp[static_cast<std::size_t>(k)] * dither.U(k, m), 0.0);
  return x;
}

// Receive energy sum_m |Y(m)|^2, accumulated in index order.
inline double receive_energy(const Eigen::ArrayXcd& y) {
  double acc = 0.0;
  for (std::int64_t m = 0; m < y.size(); ++m) acc += std::norm(y(m));
  return acc;
}

struct DecodeResult {
  double h_linear = 0.0;     // after the affine inverse of the power map
  double h_corrected = 0.0;  // after subtracting the known noise energy mean
  double estimate = 0.0;     // F applied to the (possibly clamped) h_corrected
  double alpha = 0.0;        // Delta(f) / (2P)
  double noise_mean_correction = 0.0;
  bool domain_clamped = false;
};

// Recovery chain: h_linear = Delta(f)/(2 M P) * energy + sum_k phi_min_k;
// subtract alpha * (E (N^r)^2 + E (N^i)^2); clamp into D if noise pushed the
// linear estimate outside; apply F.
inline DecodeResult decode(const FmonSpec& spec, const ChannelConfig& cfg, double energy) {
  const SpreadSummary sp = spreads(spec, cfg.P);
  double sum_phi_min = 0.0;
  for (const auto& f : spec.inners) sum_phi_min += f.phi_min;
  DecodeResult r;
  r.alpha = sp.max / (2.0 * cfg.P);
  r.h_linear = sp.max / (2.0 * static_cast<double>(cfg.M) * cfg.P) * energy + sum_phi_min;
  const double noise_energy_mean = 2.0 * cfg.noise_component.second_moment;
  r.noise_mean_correction = r.alpha * noise_energy_mean;
  r.h_corrected = r.h_linear - r.noise_mean_correction;
  const double h_applied = spec.outer_domain.clamp(r.h_corrected);
  r.domain_clamped = h_applied != r.h_corrected;
  r.estimate = spec.outer(h_applied);
  return r;
}

// Effective noise of the energy statistic, computed term by term: pairwise
// cross terms, the noise-signal beat term, and the noise energy. This is an
// independent path from receive_energy and exists for test support.
inline Eigen::ArrayXd effective_noise(const FmonSpec& spec, const ChannelConfig& cfg,
                                      std::span<const double> s, const Dither& dither,
                                      const FadingRealization& fading,
                                      const NoiseRealization& noise) {
  if (dither.U.rows() != cfg.K || dither.U.cols() != cfg.M || fading.H.rows() != cfg.K ||
      fading.H.cols() != cfg.M || noise.N.size() != cfg.M)
    throw InvalidArgument("effective_noise: shape mismatch");
  const std::vector<double> amp = preprocess_amplitudes(spec, cfg, s);
  Eigen::ArrayXd nbar(cfg.M);
  for (std::int64_t m = 0; m < cfg.M; ++m) {
    std::complex<double> cross{0.0, 0.0};
    for (int k = 0; k < cfg.K; ++k)
      for (int l = 0; l < cfg.K; ++l) {
        if (k == l) continue;
        cross += amp[static_cast<std::size_t>(k)] * amp[static_cast<std::size_t>(l)] *
                 fading.H(k, m) * std::conj(fading.H(l, m)) * dither.U(k, m) * dither.U(l, m);
      }
    std::complex<double> signal{0.0, 0.0};
    for (int k = 0; k < cfg.K; ++k)
      signal += amp[static_cast<std::size_t>(k)] * fading.H(k, m) * dither.U(k, m);
    const double beat = 2.0 * (std::conj(noise.N(m)) * signal).real();
    nbar(m) = cross.real() + beat + std::norm(noise.N(m));
  }
  return nbar;
}

// One full pipeline run with every intermediate retained.
struct EstimateTrace {
  std::vector<double> s;
  Eigen::ArrayXXcd X;
  Eigen::ArrayXcd Y;
  double energy = 0.0;
  double h_linear = 0.0;
  double h_corrected = 0.0;
  double estimate = 0.0;
  double alpha = 0.0;
  double noise_mean_correction = 0.0;
  bool domain_clamped = false;
};

inline EstimateTrace estimate_once(const FmonSpec& spec, const ChannelConfig& cfg,
                                   std::span<const double> s, Rng& rng) {
  cfg.validate();
  EstimateTrace trace;
  trace.s.assign(s.begin(), s.end());
  const Dither dither = sample_dither(cfg.K, cfg.M, rng);
  const auto [fading, noise] = sample_realization(cfg, rng);
  trace.X = preprocess(spec, cfg, s, dither);
  trace.Y = apply_channel(cfg, trace.X, fading, noise);
  trace.energy = receive_energy(trace.Y);
  const DecodeResult dec = decode(spec, cfg, trace.energy);
  trace.h_linear = dec.h_linear;
  trace.h_corrected = dec.h_corrected;
  trace.estimate = dec.estimate;
  trace.alpha = dec.alpha;
  trace.noise_mean_correction = dec.noise_mean_correction;
  trace.domain_clamped = dec.domain_clamped;
  return trace;
}

// Reusable buffers for the streaming pipeline below.
struct TrialWorkspace {
  Eigen::ArrayXXd U;
  Eigen::ArrayXcd S;
};

struct TrialOutput {
  double energy = 0.0;
  DecodeResult decoded;
};

// Streaming variant of estimate_once: identical draw order and arithmetic,
// but fading and noise are consumed on the fly and nothing is materialized
// beyond the dither and the running superposition. Used by the Monte Carlo
// harness; bit-equality with estimate_once is pinned by tests.
inline TrialOutput run_trial(const FmonSpec& spec, const ChannelConfig& cfg,
                             std::span<const double> s, Rng& rng, TrialWorkspace& ws) {
  const std::vector<double> amp = preprocess_amplitudes(spec, cfg, s);
  if (ws.U.rows() != cfg.K || ws.U.cols() != cfg.M) ws.U.resize(cfg.K, cfg.M);
  if (ws.S.size() != cfg.M) ws.S.resize(cfg.M);
  for (int k = 0; k < cfg.K; ++k)
    for (std::int64_t m = 0; m < cfg.M; ++m) ws.U(k, m) = sample_sign(rng);
  ws.S.setZero();
  for (int k = 0; k < cfg.K; ++k) {
    const double a = amp[static_cast<std::size_t>(k)];
    for (std::int64_t m = 0; m < cfg.M; ++m) {
      const std::complex<double> h = sample_complex_component(cfg.fading_component, rng);
      ws.S(m) += h * std::complex<double>(a * ws.U(k, m), 0.0);
    }
  }
  double energy = 0.0;
  for (std::int64_t m = 0; m < cfg.M; ++m) {
    const std::complex<double> n = sample_complex_component(cfg.noise_component, rng);
    energy += std::norm(ws.S(m) + n);
  }
  TrialOutput out;
  out.energy = energy;
  out.decoded = decode(spec, cfg, energy);
  return out;
}

}  // namespace airfunc
