// Copyright 2026 The hiddencluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hiddencluster/error.hpp"
#include "hiddencluster/ssd.hpp"

using namespace hiddencluster;

namespace {

// Ulp distance between two doubles of the same sign.
double ulps(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::numeric_limits<double>::epsilon() / std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("bin size rejects non-positive and non-finite values") {
  CHECK_THROWS_AS(BinSize{0.0}, DomainError);
  CHECK_THROWS_AS(BinSize{-1.0}, DomainError);
  CHECK_THROWS_AS(BinSize{std::nan("")}, DomainError);
  CHECK_THROWS_AS(BinSize{INFINITY}, DomainError);
  CHECK(BinSize::sqrt_pi().value() == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-15));
}

TEST_CASE("decompose_position examples") {
  const BinSize one(1.0);
  CHECK(decompose_position(0.0, one) == QuantumNumbers{0, 0, 0.0});

  // Comb point alpha (2m + j) with j = 1, m = 0.
  const BinSize sp = BinSize::sqrt_pi();
  const QuantumNumbers comb = decompose_position(sp.value(), sp);
  CHECK(comb.ell == 1);
  CHECK(comb.m == 0);
  CHECK(comb.u == 0.0);

  const QuantumNumbers q = decompose_position(2.49, one);
  CHECK(q.ell == 0);
  CHECK(q.m == 1);
  CHECK(q.u == doctest::Approx(0.49).epsilon(1e-12));
  CHECK(recompose(q, one) == 2.49);

  // u = +alpha/2 is excluded and rolls into the next bin.
  CHECK(decompose_position(0.5, one) == QuantumNumbers{1, 0, -0.5});
  CHECK(decompose_position(-0.5, one) == QuantumNumbers{0, 0, -0.5});
}

TEST_CASE("decompose_position rejects non-finite input") {
  CHECK_THROWS_AS(decompose_position(std::nan(""), BinSize(1.0)), DomainError);
  CHECK_THROWS_AS(decompose_position(INFINITY, BinSize(1.0)), DomainError);
}

TEST_CASE("recompose examples") {
  CHECK(recompose({0, 0, 0.0}, BinSize::sqrt_pi()) == 0.0);
  CHECK(recompose({1, 1, -0.5}, BinSize(1.0)) == 2.5);
  CHECK(recompose({0, -2, 0.25}, BinSize(1.0)) == -3.75);
  CHECK(decompose_position(-3.75, BinSize(1.0)) == QuantumNumbers{0, -2, 0.25});
}

TEST_CASE("recompose rejects invalid quantum numbers") {
  CHECK_THROWS_AS(recompose({2, 0, 0.0}, BinSize(1.0)), DomainError);
  CHECK_THROWS_AS(recompose({0, 0, 0.5}, BinSize(1.0)), DomainError);
  CHECK_THROWS_AS(recompose({0, 0, -0.51}, BinSize(1.0)), DomainError);
}

TEST_CASE("gauge_position examples") {
  CHECK(gauge_position({1, 0, 0.0}, BinSize(1.0)) == 0.0);
  CHECK(gauge_position({0, 3, 0.1}, BinSize(1.0)) == doctest::Approx(3.1).epsilon(1e-15));
  CHECK(gauge_position({1, -1, -0.4}, BinSize(2.0)) == doctest::Approx(-2.4).epsilon(1e-15));

  // x_G = x - alpha ell - alpha m for the decomposed value.
  const BinSize a(1.0);
  const double x = 6.1;
  const QuantumNumbers q = decompose_position(x, a);
  CHECK(gauge_position(q, a) == doctest::Approx(x - q.ell - static_cast<double>(q.m)).epsilon(1e-14));
}

TEST_CASE("round trip, periodicity and alpha shift on random positions") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> xs(-1e4, 1e4);
  for (double alpha : {1.0, std::sqrt(M_PI), 2.0, 0.3}) {
    const BinSize a(alpha);
    for (int k = 0; k < 5000; ++k) {
      const double x = xs(rng);
      const QuantumNumbers q = decompose_position(x, a);
      REQUIRE((q.ell == 0 || q.ell == 1));
      REQUIRE(q.u >= -alpha / 2);
      REQUIRE(q.u < alpha / 2);
      REQUIRE(ulps(recompose(q, a), x) <= 4.0);

      // Small magnitudes keep x + 2 alpha and x + alpha away from bin edges
      // only when u is interior; check the bin arithmetic there.
      if (std::abs(q.u) < 0.49 * alpha) {
        const QuantumNumbers p = decompose_position(x + 2 * alpha, a);
        CHECK(p.ell == q.ell);
        CHECK(p.m == q.m + 1);
        CHECK(p.u == doctest::Approx(q.u).epsilon(1e-9).scale(alpha));
        const QuantumNumbers s = decompose_position(x + alpha, a);
        CHECK(s.ell == 1 - q.ell);
        CHECK(s.m == q.m + q.ell);
        CHECK(s.u == doctest::Approx(q.u).epsilon(1e-9).scale(alpha));
      }
    }
  }
}

TEST_CASE("u stays in the half-open range at bin edges") {
  for (double alpha : {1.0, std::sqrt(M_PI), 2.0}) {
    const BinSize a(alpha);
    for (int k = -50; k <= 50; ++k) {
      const double edge = (k + 0.5) * alpha;
      for (double x : {edge, std::nextafter(edge, -INFINITY), std::nextafter(edge, INFINITY)}) {
        const QuantumNumbers q = decompose_position(x, a);
        CHECK(q.u >= -alpha / 2);
        CHECK(q.u < alpha / 2);
        CHECK(ulps(recompose(q, a), x) <= 4.0);
      }
    }
  }
}
