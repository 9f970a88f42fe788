#include "cqed/states.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace cqed {

namespace {

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(std::string(name) + " must lie in [0, 1]");
  }
}

SpaceLayout single_mode(std::string_view label, std::size_t cutoff) {
  return SpaceLayout({{std::string(label), cutoff + 1}});
}

double binomial_coefficient(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return c;
}

}  // namespace

double EntangledInitSpec::norm_constant() const { return 1.0 / std::sqrt(1.0 + eta * eta); }

void EntangledInitSpec::validate() const {
  require_probability(p1, "p1");
  require_probability(p2, "p2");
  if (!std::isfinite(theta1) || !std::isfinite(theta2)) throw Error("mean phases must be finite");
  if (!std::isfinite(eta)) throw Error("eta must be finite");
}

StateVector binomial_state(const BinomialSpec& spec, std::size_t cutoff, std::string_view label) {
  if (spec.max_photons > cutoff) throw Error("binomial state exceeds Fock cutoff");
  require_probability(spec.p, "p");
  if (!std::isfinite(spec.theta)) throw Error("mean phase must be finite");

  const std::size_t n_max = spec.max_photons;
  Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(cutoff + 1));
  for (std::size_t n = 0; n <= n_max; ++n) {
    // std::pow(0, 0) == 1 keeps the endpoints p = 0, 1 exact.
    const double weight = binomial_coefficient(n_max, n) *
                          std::pow(spec.p, static_cast<double>(n)) *
                          std::pow(1.0 - spec.p, static_cast<double>(n_max - n));
    amps[static_cast<Eigen::Index>(n)] =
        std::sqrt(weight) * std::polar(1.0, static_cast<double>(n) * spec.theta);
  }
  return StateVector(single_mode(label, cutoff), std::move(amps));
}

StateVector gamma_state(double p, double theta, std::size_t cutoff, std::string_view label) {
  if (cutoff < 2) throw Error("gamma state needs a cutoff of at least 2");
  require_probability(p, "p");
  const double side = std::sqrt(2.0 * p * (1.0 - p));
  Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(cutoff + 1));
  amps[0] = side;
  amps[1] = -(1.0 - 2.0 * p) * std::polar(1.0, theta);
  amps[2] = -side * std::polar(1.0, 2.0 * theta);
  return StateVector(single_mode(label, cutoff), std::move(amps));
}

StateVector psi1_initial(const EntangledInitSpec& spec, std::size_t cutoff) {
  spec.validate();
  constexpr double pi = std::numbers::pi;
  const auto first = tensor(binomial_state({1, spec.p1, spec.theta1}, cutoff, kCavity1),
                            binomial_state({1, 1.0 - spec.p2, pi + spec.theta2}, cutoff, kCavity2));
  const auto second = tensor(binomial_state({1, 1.0 - spec.p1, pi + spec.theta1}, cutoff, kCavity1),
                             binomial_state({1, spec.p2, spec.theta2}, cutoff, kCavity2));
  return Complex(spec.norm_constant()) * (first + Complex(spec.eta) * second);
}

StateVector atom_pair_initial(double eta) {
  if (!std::isfinite(eta)) throw Error("eta must be finite");
  const double n_eta = 1.0 / std::sqrt(1.0 + eta * eta);
  SpaceLayout layout({{std::string(kAtom1), 2}, {std::string(kAtom2), 2}});
  Amplitudes amps = Amplitudes::Zero(4);
  amps[static_cast<Eigen::Index>(layout.flatten(std::array{kExcited, kGround}))] = n_eta;
  amps[static_cast<Eigen::Index>(layout.flatten(std::array{kGround, kExcited}))] = -eta * n_eta;
  return StateVector(std::move(layout), std::move(amps));
}

StateVector full_initial_state(const EntangledInitSpec& spec, std::size_t cutoff) {
  return tensor(atom_pair_initial(spec.eta), psi1_initial(spec, cutoff));
}

}  // namespace cqed
