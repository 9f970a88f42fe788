#include "cqed/measurement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace cqed {

namespace {

constexpr double kPhaseMatchTolerance = 1e-12;

std::array<Projector, 2> atom_outcome(std::size_t atom1, std::size_t atom2) {
  return {Projector{std::string(kAtom1), atom1}, Projector{std::string(kAtom2), atom2}};
}

void require_canonical(const StateVector& state, std::size_t cutoff) {
  if (!(state.layout() == SpaceLayout::canonical(cutoff))) {
    throw Error("state is not in the canonical layout for this cutoff");
  }
}

}  // namespace

double fidelity(const StateVector& a, const StateVector& b) {
  return std::clamp(std::norm(inner(a, b)), 0.0, 1.0);
}

double success_probability_closed_form(double eta) {
  const double e2 = eta * eta;
  return (1.0 + e2 * e2) / ((1.0 + e2) * (1.0 + e2));
}

StateVector psi2_target(const EntangledInitSpec& spec, std::size_t cutoff) {
  spec.validate();
  if (std::abs(spec.theta1 - spec.theta2) > kPhaseMatchTolerance) {
    throw Error("psi2 target needs equal mean phases in both cavities");
  }
  constexpr double pi = std::numbers::pi;
  const double th = spec.theta1;
  const double e2 = spec.eta * spec.eta;
  const double n2 = 1.0 / std::sqrt(1.0 + e2 * e2);
  const auto first = tensor(binomial_state({2, spec.p1, th}, cutoff, kCavity1),
                            binomial_state({2, 1.0 - spec.p2, pi + th}, cutoff, kCavity2));
  const auto second = tensor(binomial_state({2, 1.0 - spec.p1, pi + th}, cutoff, kCavity1),
                             binomial_state({2, spec.p2, th}, cutoff, kCavity2));
  return Complex(n2) * (first - Complex(e2) * second);
}

ConditionResult condition_on_ground_ground(const StateVector& final_state, const EntangledInitSpec& spec,
                                           std::size_t cutoff) {
  require_canonical(final_state, cutoff);
  const auto outcome = atom_outcome(kGround, kGround);
  const auto projected = project(final_state, outcome);
  auto conditioned = slice(final_state, outcome).normalized();
  const double f = fidelity(psi2_target(spec, cutoff), conditioned);
  return {projected.probability, std::move(conditioned), f};
}

EntanglementReport entanglement_report(double eta) {
  const double a = std::abs(eta);
  // Folding onto [0, 1] keeps |eta| -> 1/|eta| exact and avoids overflow.
  const double u = a > 1.0 ? 1.0 / a : a;
  const double u2 = u * u;
  const double g_e = 2.0 * u2 / (1.0 + u2 * u2);
  return {a, g_e, 1.0 / (1.0 + g_e)};
}

BranchReport residual_branch_check(const StateVector& final_state, const EntangledInitSpec& spec,
                                   std::size_t cutoff) {
  require_canonical(final_state, cutoff);
  spec.validate();
  BranchReport report;

  const auto branch = [&](std::size_t a1, std::size_t a2) {
    const auto outcome = atom_outcome(a1, a2);
    return slice(final_state, outcome);
  };
  const auto uu = branch(kExcited, kExcited);
  const auto ud = branch(kExcited, kGround);
  const auto du = branch(kGround, kExcited);
  const auto dd = branch(kGround, kGround);
  report.up_up = uu.squared_norm();
  report.up_down = ud.squared_norm();
  report.down_up = du.squared_norm();
  report.down_down = dd.squared_norm();

  const double e2 = spec.eta * spec.eta;
  report.mixed_expected = e2 / ((1.0 + e2) * (1.0 + e2));

  const double th = spec.theta1;
  const auto vacuum1 = binomial_state({0, 0.0, 0.0}, cutoff, kCavity1);
  const auto vacuum2 = binomial_state({0, 0.0, 0.0}, cutoff, kCavity2);
  if (report.up_down >= kProtocolTolerance) {
    const auto ideal = tensor(vacuum1, gamma_state(spec.p2, th, cutoff, kCavity2));
    report.up_down_overlap = fidelity(ideal, ud.normalized());
  }
  if (report.down_up >= kProtocolTolerance) {
    const auto ideal = tensor(gamma_state(spec.p1, th, cutoff, kCavity1), vacuum2);
    report.down_up_overlap = fidelity(ideal, du.normalized());
  }

  const auto overlap_ok = [](const std::optional<double>& f) {
    return !f || *f >= 1.0 - kProtocolTolerance;
  };
  report.passed = report.up_up < kProtocolTolerance && overlap_ok(report.up_down_overlap) &&
                  overlap_ok(report.down_up_overlap);
  return report;
}

}  // namespace cqed
