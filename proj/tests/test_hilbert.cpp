#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "cqed/hilbert.hpp"
#include "oracles.hpp"

using namespace cqed;
using Catch::Matchers::WithinAbs;

namespace {

SpaceLayout qubit(const std::string& label) { return SpaceLayout({{label, 2}}); }

StateVector random_state(const SpaceLayout& layout, std::mt19937_64& rng, bool normalize = true) {
  return StateVector(layout, oracle::random_amplitudes(layout.total_dim(), rng, normalize));
}

}  // namespace

TEST_CASE("SpaceLayout computes dimensions and row-major strides", "[hilbert]") {
  const auto layout = SpaceLayout::canonical(3);
  REQUIRE(layout.total_dim() == 64);
  REQUIRE(layout.num_factors() == 4);
  CHECK(layout.stride(0) == 32);
  CHECK(layout.stride(1) == 16);
  CHECK(layout.stride(2) == 4);
  CHECK(layout.stride(3) == 1);
  CHECK(layout.position(kCavity1) == 2);
  CHECK(layout.flatten(std::array<std::size_t, 4>{1, 0, 2, 3}) == 32 + 8 + 3);
}

TEST_CASE("SpaceLayout index round-trip over every flat index", "[hilbert][property]") {
  for (std::size_t cutoff : {1u, 2u, 3u, 5u}) {
    const auto layout = SpaceLayout::canonical(cutoff);
    for (std::size_t i = 0; i < layout.total_dim(); ++i) {
      REQUIRE(layout.flatten(layout.unflatten(i)) == i);
    }
  }
}

TEST_CASE("SpaceLayout rejects invalid factor lists", "[hilbert]") {
  CHECK_THROWS_AS(SpaceLayout({{"atom1", 3}}), Error);
  CHECK_THROWS_AS(SpaceLayout({{"cav1", 0}}), Error);
  CHECK_THROWS_AS(SpaceLayout({{"cav1", 2}, {"cav1", 2}}), Error);
  CHECK_THROWS_AS(SpaceLayout::canonical(3).position("nope"), Error);
  CHECK_THROWS_AS(SpaceLayout::canonical(3).unflatten(64), Error);
}

TEST_CASE("tensor of basis states", "[hilbert]") {
  const auto zero_a = StateVector::basis(qubit("a"), {0});
  const auto zero_b = StateVector::basis(qubit("b"), {0});
  const auto prod = tensor(zero_a, zero_b);
  REQUIRE(prod.size() == 4);
  CHECK(prod[0] == Complex(1.0));
  CHECK(prod.squared_norm() == 1.0);
}

TEST_CASE("tensor places amplitudes in row-major order", "[hilbert]") {
  const Complex alpha(0.6, 0.0), beta(0.0, 0.8);
  Amplitudes a(2);
  a << alpha, beta;
  const auto prod = tensor(StateVector(qubit("a"), a), StateVector::basis(qubit("b"), {0}));
  CHECK(prod[0] == alpha);
  CHECK(prod[1] == Complex(0.0));
  CHECK(prod[2] == beta);
  CHECK(prod[3] == Complex(0.0));
}

TEST_CASE("tensor rejects label collisions", "[hilbert]") {
  const auto a = StateVector::basis(qubit("a"), {0});
  CHECK_THROWS_AS(tensor(a, a), Error);
}

TEST_CASE("tensor norm is the product of norms", "[hilbert][property]") {
  std::mt19937_64 rng(11);
  const SpaceLayout la({{"x", 3}, {"y", 2}});
  const SpaceLayout lb({{"z", 4}});
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_state(la, rng, false);
    const auto b = random_state(lb, rng, false);
    const double expected = std::sqrt(oracle::squared_norm_loop(a.amplitudes())) *
                            std::sqrt(oracle::squared_norm_loop(b.amplitudes()));
    REQUIRE_THAT(std::sqrt(tensor(a, b).squared_norm()), WithinAbs(expected, 1e-12 * expected));
  }
}

TEST_CASE("tensor is associative", "[hilbert][property]") {
  std::mt19937_64 rng(12);
  // Dyadic amplitudes k/8 multiply without rounding, so equality is exact.
  std::uniform_int_distribution<int> small(-8, 8);
  const auto dyadic = [&](const std::string& label, std::size_t dim) {
    Amplitudes v(static_cast<Eigen::Index>(dim));
    for (auto& c : v) c = Complex(small(rng) / 8.0, small(rng) / 8.0);
    return StateVector(SpaceLayout({{label, dim}}), v);
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = dyadic("a", 2), b = dyadic("b", 3), c = dyadic("c", 4);
    const auto left = tensor(tensor(a, b), c);
    const auto right = tensor(a, tensor(b, c));
    REQUIRE(left.layout() == right.layout());
    REQUIRE(left.amplitudes() == right.amplitudes());
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_state(SpaceLayout({{"a", 2}}), rng);
    const auto b = random_state(SpaceLayout({{"b", 3}}), rng);
    const auto c = random_state(SpaceLayout({{"c", 4}}), rng);
    REQUIRE(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) < 1e-15);
  }
}

TEST_CASE("inner on basis vectors", "[hilbert]") {
  const auto layout = SpaceLayout::canonical(2);
  for (std::size_t k = 0; k < layout.total_dim(); k += 7) {
    const auto ek = StateVector::basis(layout, layout.unflatten(k));
    CHECK(inner(ek, ek) == Complex(1.0));
    for (std::size_t j = 0; j < layout.total_dim(); j += 5) {
      if (j == k) continue;
      CHECK(inner(ek, StateVector::basis(layout, layout.unflatten(j))) == Complex(0.0));
    }
  }
}

TEST_CASE("inner is conjugate symmetric and gives the squared norm", "[hilbert][property]") {
  std::mt19937_64 rng(13);
  const auto layout = SpaceLayout::canonical(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_state(layout, rng, false);
    const auto b = random_state(layout, rng, false);
    const Complex ab = inner(a, b), ba = inner(b, a);
    REQUIRE_THAT(std::abs(ab - std::conj(ba)), WithinAbs(0.0, 1e-12));
    const Complex aa = inner(a, a);
    REQUIRE(aa.imag() == 0.0);
    REQUIRE_THAT(aa.real(), WithinAbs(oracle::squared_norm_loop(a.amplitudes()), 1e-12));
  }
}

TEST_CASE("inner rejects mismatched layouts", "[hilbert]") {
  CHECK_THROWS_AS(inner(StateVector::basis(qubit("a"), {0}), StateVector::basis(qubit("b"), {0})), Error);
}

TEST_CASE("project on a definite outcome", "[hilbert]") {
  std::mt19937_64 rng(14);
  const auto psi = random_state(SpaceLayout({{"cav", 3}}), rng);
  const auto down = StateVector::basis(SpaceLayout({{"atom", 2}}), {kGround});
  const auto up = StateVector::basis(SpaceLayout({{"atom", 2}}), {kExcited});
  const std::array proj{Projector{"atom", kGround}};

  const auto state = tensor(down, psi);
  const auto result = project(state, proj);
  CHECK_THAT(result.probability, WithinAbs(1.0, 1e-12));
  CHECK(max_abs_diff(result.collapsed, state) < 1e-12);

  CHECK_THROWS_AS(project(tensor(up, psi), proj), ZeroProbabilityError);
}

TEST_CASE("project an equal superposition", "[hilbert]") {
  std::mt19937_64 rng(15);
  const auto psi = random_state(SpaceLayout({{"cav", 3}}), rng);
  Amplitudes plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto state = tensor(StateVector(SpaceLayout({{"atom", 2}}), plus), psi);
  const std::array proj{Projector{"atom", kGround}};
  const auto result = project(state, proj);
  CHECK_THAT(result.probability, WithinAbs(0.5, 1e-12));
  const auto expected = tensor(StateVector::basis(SpaceLayout({{"atom", 2}}), {kGround}), psi);
  CHECK(max_abs_diff(result.collapsed, expected) < 1e-12);
}

TEST_CASE("project contract violations", "[hilbert]") {
  const auto layout = SpaceLayout::canonical(1);
  const auto state = StateVector::basis(layout, {0, 0, 0, 0});
  const std::array out_of_range{Projector{"atom1", 2}};
  const std::array twice{Projector{"atom1", 0}, Projector{"atom1", 0}};
  CHECK_THROWS_AS(project(state, out_of_range), Error);
  CHECK_THROWS_AS(project(state, twice), Error);
  CHECK_THROWS_AS(project(Complex(2.0) * state, std::array{Projector{"atom1", 0}}), Error);
}

TEST_CASE("project is idempotent and outcome probabilities sum to one", "[hilbert][property]") {
  std::mt19937_64 rng(16);
  const auto layout = SpaceLayout::canonical(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto state = random_state(layout, rng);
    for (const auto& factor : layout.factors()) {
      double total = 0.0;
      for (std::size_t k = 0; k < factor.dim; ++k) {
        const std::array proj{Projector{factor.label, k}};
        const auto first = project(state, proj);
        total += first.probability;
        const auto second = project(first.collapsed, proj);
        REQUIRE_THAT(second.probability, WithinAbs(1.0, 1e-12));
      }
      REQUIRE_THAT(total, WithinAbs(1.0, 1e-12));
    }
  }
}

TEST_CASE("slice removes measured factors", "[hilbert]") {
  std::mt19937_64 rng(17);
  const auto layout = SpaceLayout::canonical(2);
  const auto state = random_state(layout, rng);
  const std::array proj{Projector{"atom1", 1}, Projector{"atom2", 0}};
  const auto part = slice(state, proj);
  REQUIRE(part.layout() == SpaceLayout({{"cav1", 3}, {"cav2", 3}}));
  for (std::size_t n1 = 0; n1 < 3; ++n1)
    for (std::size_t n2 = 0; n2 < 3; ++n2) CHECK(part.at({n1, n2}) == state.at({1, 0, n1, n2}));
  CHECK_THAT(part.squared_norm(), WithinAbs(project(state, proj).probability, 1e-12));
}

TEST_CASE("permuted reorders factors without changing amplitudes", "[hilbert]") {
  std::mt19937_64 rng(18);
  const auto a = random_state(SpaceLayout({{"a", 2}}), rng);
  const auto b = random_state(SpaceLayout({{"b", 3}}), rng);
  const std::vector<std::string> order{"b", "a"};
  const auto swapped = tensor(a, b).permuted(order);
  CHECK(max_abs_diff(swapped, tensor(b, a)) == 0.0);
}

TEST_CASE("apply_on_factors with the identity", "[hilbert]") {
  std::mt19937_64 rng(19);
  const auto state = random_state(SpaceLayout::canonical(3), rng);
  const auto out = apply_on_factors(state, {kAtom2, kCavity1}, Matrix::Identity(8, 8));
  CHECK(max_abs_diff(out, state) == 0.0);
}

TEST_CASE("apply_on_factors: U then U^dagger restores the state", "[hilbert][property]") {
  std::mt19937_64 rng(20);
  const auto layout = SpaceLayout::canonical(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto state = random_state(layout, rng);
    const Matrix u = oracle::random_unitary(8, rng);
    const auto there = apply_on_factors(state, {kCavity2, kAtom1}, u);
    REQUIRE_THAT(there.squared_norm(), WithinAbs(1.0, 1e-12));
    const auto back = apply_on_factors(there, {kCavity2, kAtom1}, u.adjoint());
    REQUIRE(max_abs_diff(back, state) < 1e-12);
  }
}

TEST_CASE("apply_on_factors acts only on the named factors", "[hilbert]") {
  std::mt19937_64 rng(21);
  const auto a = random_state(SpaceLayout({{"a", 2}}), rng);
  const auto b = random_state(SpaceLayout({{"b", 3}}), rng);
  const auto c = random_state(SpaceLayout({{"c", 2}}), rng);
  const Matrix u = oracle::random_unitary(3, rng);
  const auto direct = tensor(tensor(a, StateVector(b.layout(), u * b.amplitudes())), c);
  const auto applied = apply_on_factors(tensor(tensor(a, b), c), {"b"}, u);
  CHECK(max_abs_diff(direct, applied) < 1e-14);
}

TEST_CASE("apply_on_factors contract violations", "[hilbert]") {
  const auto state = StateVector::basis(SpaceLayout::canonical(3), {0, 0, 0, 0});
  CHECK_THROWS_AS(apply_on_factors(state, {kAtom1}, Matrix::Identity(3, 3)), Error);
  Matrix not_unitary = Matrix::Identity(2, 2);
  not_unitary(0, 1) = 0.1;
  CHECK_THROWS_AS(apply_on_factors(state, {kAtom1}, not_unitary), Error);
  CHECK_THROWS_AS(apply_on_factors(state, {kAtom1, kAtom1}, Matrix::Identity(4, 4)), Error);
}
