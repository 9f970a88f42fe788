#pragma once

#include <cstddef>
#include <optional>

#include "cqed/hilbert.hpp"
#include "cqed/states.hpp"

namespace cqed {

/// Tolerance for checks against the ideal protocol output. The timing
/// residual delta ~ 9.2e-5 at m = 5 is the dominant error source.
inline constexpr double kProtocolTolerance = 1e-3;

struct ConditionResult {
  double success_prob = 0.0;
  StateVector conditioned;  // (cav1, cav2), normalized
  double fidelity = 0.0;    // |<target|conditioned>|^2
};

struct EntanglementReport {
  double eta_abs = 0.0;
  double g_e = 0.0;              // 2|eta|^2 / (1 + |eta|^4)
  double p_succ_analytic = 1.0;  // 1 / (1 + g_e)
};

/// Probabilities of the four atomic outcomes after the cavities, and how well
/// the two mixed branches match their ideal cavity states.
struct BranchReport {
  double up_up = 0.0;
  double up_down = 0.0;
  double down_up = 0.0;
  double down_down = 0.0;
  /// Ideal probability of each mixed branch, |eta|^2 / (1 + |eta|^2)^2.
  double mixed_expected = 0.0;
  /// Unset when the branch is too weak (< kProtocolTolerance) to condition on.
  std::optional<double> up_down_overlap;
  std::optional<double> down_up_overlap;
  bool passed = false;
};

/// Squared overlap |<a|b>|^2 of two states; global-phase invariant.
double fidelity(const StateVector& a, const StateVector& b);

/// Closed-form success probability (1 + |eta|^4) / (1 + |eta|^2)^2.
double success_probability_closed_form(double eta);

/// N2 [ |2,p1,th>|2,1-p2,pi+th> - eta^2 |2,1-p1,pi+th>|2,p2,th> ] on (cav1, cav2).
/// Requires theta1 == theta2.
StateVector psi2_target(const EntangledInitSpec& spec, std::size_t cutoff);

/// Post-select both atoms in the ground state and compare with psi2_target.
ConditionResult condition_on_ground_ground(const StateVector& final_state, const EntangledInitSpec& spec,
                                           std::size_t cutoff);

EntanglementReport entanglement_report(double eta);

BranchReport residual_branch_check(const StateVector& final_state, const EntangledInitSpec& spec,
                                   std::size_t cutoff);

}  // namespace cqed
