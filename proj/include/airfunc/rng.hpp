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
#include <random>

namespace airfunc {

using Rng = std::mt19937_64;

// SplitMix64 finalizer (Steele et al.). Used only to derive seeds, never as
// the working generator.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based substream construction: substream(master, i) is an
// mt19937_64 seeded with splitmix64(master ^ splitmix64(i)), so any
// (master_seed, index) pair maps to the same stream regardless of which
// thread or process asks for it.
inline Rng substream(std::uint64_t master_seed, std::uint64_t index) {
  return Rng(splitmix64(master_seed ^ splitmix64(index)));
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on (0, 1]; safe as a log() argument.
inline double uniform01_open(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

inline double sample_sign(Rng& rng) {
  return (rng() >> 63) ? 1.0 : -1.0;
}

// Marsaglia polar method; emits an i.i.d. standard normal pair. Stateless
// across calls so that substreams stay reproducible.
inline void gaussian_pair(Rng& rng, double& z0, double& z1) {
  double u, v, s;
  do {
    u = 2.0 * uniform01(rng) - 1.0;
    v = 2.0 * uniform01(rng) - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  z0 = u * f;
  z1 = v * f;
}

inline double sample_gaussian(Rng& rng) {
  double z0, z1;
  gaussian_pair(rng, z0, z1);
  return z0;
}

}  // namespace airfunc
