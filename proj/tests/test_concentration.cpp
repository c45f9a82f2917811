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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "airfunc/concentration.hpp"
#include "airfunc/distribution.hpp"

using namespace airfunc;

TEST_CASE("subgaussian norm of known families") {
  CHECK(subgaussian_norm(gaussian_dist(3.0, 2.0)).value == 2.0);
  CHECK(subgaussian_norm(gaussian_dist(3.0, 2.0)).direction == BoundDirection::Exact);
  CHECK(subgaussian_norm(constant_dist(5.0)).value == 0.0);
  CHECK(subgaussian_norm(rademacher_dist()).value == 1.0);
  const NormBound u = subgaussian_norm(uniform_dist(-2.0, 5.0));
  CHECK(u.value == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(u.direction == BoundDirection::FromAbove);
  CHECK_THROWS_AS(subgaussian_norm(exponential_dist(1.0)), UnsupportedDistribution);
  CHECK_THROWS_AS(subgaussian_norm(custom_dist("opaque", 0.0, 1.0)), UnsupportedDistribution);
}

TEST_CASE("rademacher norm via numeric sup over the MGF grid") {
  // Independent route: sup over lambda in (0, 10] of sqrt(2 log cosh l)/l
  // approaches 1 from below.
  double sup = 0.0;
  for (int i = 1; i <= 2000; ++i) {
    const double l = 10.0 * i / 2000.0;
    sup = std::max(sup, std::sqrt(2.0 * std::log(std::cosh(l))) / l);
  }
  CHECK(sup <= 1.0 + 1e-9);
  CHECK(sup > 0.999);

  // The grid path on a custom spec with the same MGF agrees.
  DistributionSpec d = custom_dist("rademacher-like", 0.0, 1.0);
  d.centered_mgf = [](double l) { return std::cosh(l); };
  const NormBound n = subgaussian_norm(d);
  CHECK(n.grid_approximate);
  CHECK(n.direction == BoundDirection::FromBelow);
  CHECK(n.value <= 1.0 + 1e-9);
  CHECK(n.value > 0.99);
}

TEST_CASE("subexponential norm") {
  // exponential(1): E X^k = k!, so every term of the k-sup equals 1.
  CHECK(subexponential_norm(exponential_dist(1.0), 50).value == doctest::Approx(1.0).epsilon(1e-12));
  // constant 3: (3^k / k!)^{1/k} is maximized at k = 1.
  CHECK(subexponential_norm(constant_dist(3.0), 25).value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(subexponential_norm(constant_dist(3.0), 1).value == doctest::Approx(3.0).epsilon(1e-12));

  // Square of a standard gaussian: moments (2k-1)!!. The k-sup up to 60 is
  // 1.9144942815318706 (arbitrary-precision evaluation of ((2k-1)!!/k!)^{1/k},
  // maximized at k = 60); it must also respect the product-rule cap of 2.
  DistributionSpec chi2 = custom_dist("gaussian-squared", 1.0, 3.0);
  chi2.abs_moment = [](int k) {
    return std::exp(std::lgamma(2.0 * k + 1.0) - k * std::log(2.0) - 2.0 * std::lgamma(k + 1.0));
  };
  const NormBound n = subexponential_norm(chi2, 60);
  CHECK(n.value == doctest::Approx(1.9144942815318706).epsilon(1e-12));
  CHECK(n.value > 1.9);
  CHECK(n.value <= 2.0);
  CHECK(n.value <= norm_calculus(NormOp::Product, std::array<double, 2>{1.0, 1.0}));

  CHECK_THROWS_AS(subexponential_norm(exponential_dist(1.0), 0), InvalidArgument);
}

TEST_CASE("subexponential norm is monotone in k_max") {
  const DistributionSpec dists[] = {gaussian_dist(0.0, 1.0), uniform_dist(-1.0, 1.0),
                                    exponential_dist(2.0), rademacher_dist()};
  for (const auto& d : dists) {
    double prev = 0.0;
    for (int k_max : {1, 2, 5, 10, 25, 50}) {
      const double v = subexponential_norm(d, k_max).value;
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
  }
  // uniform[-1,1]: E|X|^k = 1/(k+1), maximized term at k = 1 gives 1/2.
  CHECK(subexponential_norm(uniform_dist(-1.0, 1.0), 50).value == doctest::Approx(0.5).epsilon(1e-12));
  // gaussian(0,1): term k=1 is E|X| = sqrt(2/pi), and it is the max.
  CHECK(subexponential_norm(gaussian_dist(0.0, 1.0), 50).value ==
        doctest::Approx(0.7978845608028654).epsilon(1e-10));
}

TEST_CASE("mgf domination checks") {
  const auto grid = mgf_lambda_grid(1.0);
  CHECK(grid.size() == 200);
  for (double l : grid) CHECK(l != 0.0);

  SUBCASE("gaussian at its own tau passes with equality") {
    const auto rep = mgf_domination_check(gaussian_dist(0.0, 1.5), 1.5, mgf_lambda_grid(1.5));
    CHECK(rep.pass);
    CHECK(rep.worst_ratio == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("gaussian at tau = sigma/2 fails") {
    const auto rep = mgf_domination_check(gaussian_dist(0.0, 1.0), 0.5, mgf_lambda_grid(0.5));
    CHECK_FALSE(rep.pass);
    CHECK(rep.worst_ratio > 1.0);
  }
  SUBCASE("rademacher at tau = 1 passes across the grid") {
    std::vector<double> lin;
    for (double l = -5.0; l <= 5.0 + 1e-12; l += 0.1)
      if (std::abs(l) > 1e-9) lin.push_back(l);
    const auto rep = mgf_domination_check(rademacher_dist(), 1.0, lin);
    CHECK(rep.pass);
  }
  SUBCASE("every built-in with a declared tau passes at it") {
    const DistributionSpec dists[] = {gaussian_dist(0.0, 1.0), gaussian_dist(0.0, 0.3),
                                      rademacher_dist(), uniform_dist(-1.0, 1.0),
                                      uniform_dist(-0.5, 2.0), constant_dist(4.0)};
    for (const auto& d : dists) {
      const double tau = d.subgauss_tau.value();
      const auto g = tau > 0 ? mgf_lambda_grid(tau) : mgf_lambda_grid(1.0);
      CHECK(mgf_domination_check(d, tau, g).pass);
    }
  }
  SUBCASE("empty grid is rejected") {
    CHECK_THROWS_AS(mgf_domination_check(rademacher_dist(), 1.0, std::span<const double>{}),
                    InvalidArgument);
  }
  SUBCASE("empirical path on a sampled rademacher") {
    DistributionSpec d = custom_dist("sampled-rademacher", 0.0, 1.0);
    d.custom_sampler = [](Rng& rng) { return sample_sign(rng); };
    std::vector<double> lin{-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
    const auto rep = mgf_domination_check(d, 1.0, lin);
    CHECK(rep.empirical);
    CHECK(rep.pass);
    // tau far too small must still fail despite the CLT allowance
    const auto bad = mgf_domination_check(d, 0.25, lin);
    CHECK_FALSE(bad.pass);
  }
}

TEST_CASE("bernstein tail closed form") {
  SUBCASE("zero deviation") {
    const TailBound b = bernstein_tail(0.0, 1.0, 10);
    CHECK(b.raw_value == 2.0);
    CHECK(b.clamped_value == 1.0);
    CHECK(b.c_star == 0.0);
  }
  SUBCASE("frozen closed-form values") {
    // 2 exp(-1/2) and 2 exp(-5), arbitrary-precision evaluation.
    CHECK(bernstein_tail(2.0, 1.0, 1).raw_value ==
          doctest::Approx(1.2130613194252668).epsilon(1e-14));
    CHECK(bernstein_tail(2.0, 1.0, 1).clamped_value == 1.0);
    CHECK(bernstein_tail(50.0, 1.0, 100).raw_value ==
          doctest::Approx(0.013475893998170934).epsilon(1e-14));
  }
  SUBCASE("degenerate L = 0") {
    CHECK(bernstein_tail(1.0, 0.0, 5).raw_value == 0.0);
    CHECK(bernstein_tail(0.0, 0.0, 5).clamped_value == 1.0);
  }
  SUBCASE("optimal split constant") {
    const TailBound b = bernstein_tail(3.0, 2.0, 7);
    // c* = L t / (L t + 2 M L^2)
    CHECK(b.c_star == doctest::Approx(6.0 / (6.0 + 56.0)).epsilon(1e-15));
    CHECK(b.c_star > 0.0);
    CHECK(b.c_star < 1.0);
  }
  SUBCASE("monotone decreasing in t, increasing in L") {
    double prev = 2.0;
    for (double t : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
      const double v = bernstein_tail(t, 1.0, 20).raw_value;
      CHECK(v < prev);
      prev = v;
    }
    prev = 0.0;
    for (double L : {0.5, 1.0, 2.0, 4.0}) {
      const double v = bernstein_tail(5.0, L, 20).raw_value;
      CHECK(v > prev);
      prev = v;
    }
  }
  SUBCASE("argument validation") {
    CHECK_THROWS_AS(bernstein_tail(-1.0, 1.0, 1), InvalidArgument);
    CHECK_THROWS_AS(bernstein_tail(1.0, 1.0, 0), InvalidArgument);
  }
}

TEST_CASE("norm calculus") {
  CHECK(norm_calculus(NormOp::Rotation, std::array<double, 2>{3.0, 4.0}) == doctest::Approx(5.0));
  CHECK(norm_calculus(NormOp::Product, std::array<double, 2>{1.0, 1.0}) == 2.0);
  CHECK(norm_calculus(NormOp::Centering, std::array<double, 1>{7.0}) == 7.0);
  CHECK(norm_calculus(NormOp::BoundedFactor, std::array<double, 1>{2.5}) == 2.5);
  CHECK_THROWS_AS(norm_calculus(NormOp::Product, std::array<double, 1>{1.0}), InvalidArgument);
  CHECK_THROWS_AS(norm_calculus(NormOp::Centering, std::array<double, 2>{1.0, 2.0}),
                  InvalidArgument);
  CHECK_THROWS_AS(norm_calculus(NormOp::Rotation, std::span<const double>{}), InvalidArgument);

  // rotation over M identical entries tau gives tau sqrt(M)
  for (int M : {1, 4, 9, 100}) {
    std::vector<double> taus(static_cast<std::size_t>(M), 0.7);
    CHECK(norm_calculus(NormOp::Rotation, taus) ==
          doctest::Approx(0.7 * std::sqrt(static_cast<double>(M))).epsilon(1e-12));
  }
}

TEST_CASE("empirical bernstein validity at unit norm") {
  // S = sum of M centered exponential(1) draws (norm 1); the tail frequency
  // must stay below the closed-form bound at every t on the grid. Smaller
  // than the acceptance-scale run; the acceptance suite repeats it at 1e6.
  const DistributionSpec expo = exponential_dist(1.0);
  const int M = 50;
  const std::int64_t samples = 100000;
  std::vector<double> abs_sums(samples);
  for (std::int64_t i = 0; i < samples; ++i) {
    Rng rng = substream(0xbe57, static_cast<std::uint64_t>(i));
    double acc = 0.0;
    for (int j = 0; j < M; ++j) acc += expo.sample(rng) - 1.0;
    abs_sums[static_cast<std::size_t>(i)] = std::abs(acc);
  }
  for (double t : {5.0, 10.0, 20.0, 40.0}) {
    std::int64_t count = 0;
    for (double v : abs_sums) count += v >= t ? 1 : 0;
    const double freq = static_cast<double>(count) / static_cast<double>(samples);
    const double bound = bernstein_tail(t, 1.0, M).clamped_value;
    // one-sided binomial allowance at 99%
    const double allowance = 2.33 * std::sqrt(bound * (1.0 - bound) / static_cast<double>(samples)) + 1e-6;
    CHECK(freq <= bound + allowance);
  }
}
