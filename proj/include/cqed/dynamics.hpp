#pragma once

#include <cstddef>
#include <vector>

#include "cqed/hilbert.hpp"

namespace cqed {

/// Resonant atom-field interaction. Only the angle g*t enters the propagator.
struct JCParams {
  double coupling = 1.0;  // g, rad/s
  double time = 0.0;      // t, s

  double angle() const { return coupling * time; }
};

/// Classical-field rotation of one atom:
///   |up>   -> cos(a/2)|up> - e^{i phase} sin(a/2)|down>
///   |down> -> e^{-i phase} sin(a/2)|up> + cos(a/2)|down>
struct RamseyParams {
  double pulse = 0.0;  // a
  double phase = 0.0;

  /// Binding that maps |up> onto the rotated state matching a one-photon
  /// binomial state: cos(a/2) = sqrt(p), sin(a/2) = sqrt(1-p), phase = -theta.
  static RamseyParams for_binomial(double p, double mean_phase);
};

/// Discrete solution of sin(gT) + cos(gT) = sqrt(2): gT = pi/4 + 2 m pi.
/// `delta` measures how far sin(sqrt(2) gT) = 1 is missed.
struct TimingSolution {
  int m = 0;
  double gT = 0.0;
  double delta = 0.0;
};

/// Range of m accepted by solve_timing unless explicitly widened.
inline constexpr int kMaxExperimentalM = 16;

/// Unitary on atom (x) cavity, basis index = atom * (cutoff + 1) + n.
/// Within each doublet {|up,n>, |down,n+1>}, n + 1 <= cutoff, the rotation
/// angle is g sqrt(n+1) t. |down,0> and the unpartnered |up,cutoff> are
/// left unchanged.
Matrix jc_propagator(const JCParams& params, std::size_t cutoff);

Matrix ramsey_unitary(const RamseyParams& params);

/// One TimingSolution per m in [m_min, m_max], sorted by delta ascending
/// (ties by m). Throws on an empty range, or on m outside [0, 16] unless
/// `allow_wide` is set.
std::vector<TimingSolution> solve_timing(int m_min, int m_max, bool allow_wide = false);

/// Interaction of atom j with cavity j (j = 1 or 2) for time T on a
/// canonical-layout state.
StateVector evolve_protocol_step(const StateVector& state, double coupling, double time, int cavity);

/// Population above `max_photons` in either cavity of a canonical-layout state.
double leakage(const StateVector& state, std::size_t max_photons = 2);

}  // namespace cqed
