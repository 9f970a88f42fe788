#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "cqed/states.hpp"
#include "oracles.hpp"

using namespace cqed;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double pi = std::numbers::pi;
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

TEST_CASE("binomial_state endpoints are number states", "[states]") {
  for (double theta : {0.0, 0.7, -2.1}) {
    const auto vac = binomial_state({2, 0.0, theta}, 3);
    CHECK(vac[0] == Complex(1.0));
    CHECK(vac[1] == Complex(0.0));
    CHECK(vac[2] == Complex(0.0));

    const auto full = binomial_state({2, 1.0, theta}, 3);
    CHECK(full[0] == Complex(0.0));
    CHECK(full[1] == Complex(0.0));
    CHECK(std::abs(full[2] - std::polar(1.0, 2.0 * theta)) < 1e-15);
  }
}

TEST_CASE("binomial_state N=1 at the symmetric point", "[states]") {
  const auto s = binomial_state({1, 0.5, 0.0}, 3);
  CHECK_THAT(s[0].real(), WithinAbs(inv_sqrt2, 1e-15));
  CHECK_THAT(s[1].real(), WithinAbs(inv_sqrt2, 1e-15));
  CHECK(s[2] == Complex(0.0));
  CHECK(s[3] == Complex(0.0));
}

TEST_CASE("binomial_state matches the defining amplitudes", "[states]") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double p = unit(rng), theta = 6.0 * unit(rng) - 3.0;
    const auto one = binomial_state({1, p, theta}, 3);
    const auto one_ref = oracle::one_photon(p, theta);
    const auto two = binomial_state({2, p, theta}, 3);
    const auto two_ref = oracle::two_photon(p, theta);
    for (int n = 0; n < 2; ++n) REQUIRE(std::abs(one[n] - one_ref[n]) < 1e-14);
    for (int n = 0; n < 3; ++n) REQUIRE(std::abs(two[n] - two_ref[n]) < 1e-14);
  }
}

TEST_CASE("binomial_state is normalized for every N up to the cutoff", "[states][property]") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t cutoff = 8;
  for (std::size_t n = 0; n <= cutoff; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = binomial_state({n, unit(rng), 10.0 * unit(rng)}, cutoff);
      REQUIRE_THAT(s.squared_norm(), WithinAbs(1.0, 1e-12));
    }
  }
}

TEST_CASE("binomial_state contract violations", "[states]") {
  CHECK_THROWS_AS(binomial_state({4, 0.5, 0.0}, 3), Error);
  CHECK_THROWS_AS(binomial_state({1, 1.5, 0.0}, 3), Error);
  CHECK_THROWS_AS(binomial_state({1, -0.1, 0.0}, 3), Error);
}

TEST_CASE("binomial orthogonality for N=1 and N=2", "[states][property]") {
  for (std::size_t n : {1u, 2u}) {
    for (int k = 1; k <= 9; ++k) {
      const double p = 0.1 * k;
      for (double theta : {0.0, pi / 3.0, 1.7}) {
        const auto a = binomial_state({n, p, theta}, 3);
        const auto b = binomial_state({n, 1.0 - p, pi + theta}, 3);
        REQUIRE(std::abs(inner(a, b)) < 1e-12);
      }
    }
  }
}

TEST_CASE("gamma_state values", "[states]") {
  const auto mid = gamma_state(0.5, 0.0, 3);
  CHECK_THAT(mid[0].real(), WithinAbs(inv_sqrt2, 1e-15));
  CHECK(std::abs(mid[1]) < 1e-15);
  CHECK_THAT(mid[2].real(), WithinAbs(-inv_sqrt2, 1e-15));
  CHECK(mid[3] == Complex(0.0));

  const double theta = 0.9;
  const auto low = gamma_state(0.0, theta, 3);
  CHECK(low[0] == Complex(0.0));
  CHECK(std::abs(low[1] + std::polar(1.0, theta)) < 1e-15);
  CHECK(std::abs(low[2]) == 0.0);
}

TEST_CASE("gamma_state is normalized", "[states][property]") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double p = unit(rng);
    // 2p(1-p) + (1-2p)^2 + 2p(1-p) = 1
    const double algebraic = 4.0 * p * (1.0 - p) + (1.0 - 2.0 * p) * (1.0 - 2.0 * p);
    REQUIRE_THAT(gamma_state(p, 7.0 * unit(rng), 4).squared_norm(), WithinAbs(algebraic, 1e-12));
  }
  CHECK_THROWS_AS(gamma_state(0.5, 0.0, 1), Error);
}

TEST_CASE("psi1_initial with eta = 0 is a product state", "[states]") {
  const EntangledInitSpec spec{0.3, 0.6, 0.2, -0.4, 0.0};
  const auto psi = psi1_initial(spec, 3);
  const auto expected = tensor(binomial_state({1, 0.3, 0.2}, 3, kCavity1),
                               binomial_state({1, 0.4, pi - 0.4}, 3, kCavity2));
  CHECK(max_abs_diff(psi, expected) < 1e-15);
}

TEST_CASE("psi1_initial hand expansion at eta = 1, p = 1/2", "[states]") {
  // (1/sqrt2)[ (|0>+|1>)(|0>-|1>)/2 + (|0>-|1>)(|0>+|1>)/2 ] = (|00> - |11>)/sqrt2
  const auto psi = psi1_initial({0.5, 0.5, 0.0, 0.0, 1.0}, 3);
  CHECK_THAT(psi.at({0, 0}).real(), WithinAbs(inv_sqrt2, 1e-15));
  CHECK(std::abs(psi.at({0, 1})) < 1e-15);
  CHECK(std::abs(psi.at({1, 0})) < 1e-15);
  CHECK_THAT(psi.at({1, 1}).real(), WithinAbs(-inv_sqrt2, 1e-15));
}

TEST_CASE("psi1_initial is normalized", "[states][property]") {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const EntangledInitSpec spec{unit(rng), unit(rng), 6.0 * unit(rng), 6.0 * unit(rng), 8.0 * unit(rng) - 4.0};
    REQUIRE_THAT(psi1_initial(spec, 3).squared_norm(), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("atom_pair_initial", "[states]") {
  const auto product = atom_pair_initial(0.0);
  CHECK(product.at({kExcited, kGround}) == Complex(1.0));
  CHECK(product.squared_norm() == 1.0);

  // basis order (up up, up down, down up, down down)
  const auto singlet = atom_pair_initial(1.0);
  CHECK(singlet[0] == Complex(0.0));
  CHECK_THAT(singlet[1].real(), WithinAbs(inv_sqrt2, 1e-15));
  CHECK_THAT(singlet[2].real(), WithinAbs(-inv_sqrt2, 1e-15));
  CHECK(singlet[3] == Complex(0.0));

  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> wide(-50.0, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    REQUIRE_THAT(atom_pair_initial(wide(rng)).squared_norm(), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("full_initial_state layout, norm and support", "[states]") {
  std::mt19937_64 rng(36);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const EntangledInitSpec spec{unit(rng), unit(rng), 3.0 * unit(rng), 3.0 * unit(rng), 3.0 * unit(rng)};
    const auto s = full_initial_state(spec, 3);
    REQUIRE(s.layout() == SpaceLayout::canonical(3));
    REQUIRE_THAT(s.squared_norm(), WithinAbs(1.0, 1e-12));
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
      const auto idx = s.layout().unflatten(flat);
      if (idx[2] > 1 || idx[3] > 1) REQUIRE(s[flat] == Complex(0.0));
    }
  }
}

TEST_CASE("full_initial_state hand expansion at eta = 0, p1 = 1, p2 = 0", "[states]") {
  // |up,down> (x) e^{i th1}|1> (x) e^{i(pi + th2)}|1>
  const double th1 = 0.3, th2 = 1.1;
  const auto s = full_initial_state({1.0, 0.0, th1, th2, 0.0}, 3);
  const Complex expected = -std::polar(1.0, th1 + th2);
  CHECK(std::abs(s.at({kExcited, kGround, 1, 1}) - expected) < 1e-15);
  CHECK_THAT(std::norm(s.at({kExcited, kGround, 1, 1})), WithinAbs(1.0, 1e-15));
}
