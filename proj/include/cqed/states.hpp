#pragma once

#include <cstddef>
#include <string_view>

#include "cqed/hilbert.hpp"

namespace cqed {

/// Generalized binomial state |N, p, theta>: photon-number distribution
/// Binomial(N, p) with phase e^{i n theta} on the n-photon component.
struct BinomialSpec {
  std::size_t max_photons = 1;
  double p = 0.5;
  double theta = 0.0;
};

/// Parameters of the entangled one-photon cavity state and the matching
/// entangled atom pair. Both share the same eta.
struct EntangledInitSpec {
  double p1 = 0.5;
  double p2 = 0.5;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double eta = 1.0;

  /// 1 / sqrt(1 + |eta|^2)
  double norm_constant() const;
  void validate() const;
};

StateVector binomial_state(const BinomialSpec& spec, std::size_t cutoff,
                           std::string_view label = kCavity1);

/// Residual three-level state left in a cavity when its atom exits excited:
/// sqrt(2p(1-p))|0> - (1-2p) e^{i theta}|1> - sqrt(2p(1-p)) e^{2 i theta}|2>.
StateVector gamma_state(double p, double theta, std::size_t cutoff,
                        std::string_view label = kCavity1);

/// N_eta [ |p1,th1>|1-p2,pi+th2> + eta |1-p1,pi+th1>|p2,th2> ] on (cav1, cav2).
StateVector psi1_initial(const EntangledInitSpec& spec, std::size_t cutoff);

/// N_eta ( |up,down> - eta |down,up> ) on (atom1, atom2).
StateVector atom_pair_initial(double eta);

/// Atom pair (before the Ramsey zones) times psi1, in canonical layout.
StateVector full_initial_state(const EntangledInitSpec& spec, std::size_t cutoff);

}  // namespace cqed
