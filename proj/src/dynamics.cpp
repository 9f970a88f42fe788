#include "cqed/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cqed {

RamseyParams RamseyParams::for_binomial(double p, double mean_phase) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("Ramsey binding needs p in [0, 1]");
  return {2.0 * std::acos(std::sqrt(p)), -mean_phase};
}

Matrix jc_propagator(const JCParams& params, std::size_t cutoff) {
  if (cutoff < 1) throw Error("jc_propagator needs a cutoff of at least 1");
  const auto levels = static_cast<Eigen::Index>(cutoff + 1);
  const auto up = [&](std::size_t n) { return static_cast<Eigen::Index>(n); };
  const auto down = [&](std::size_t n) { return levels + static_cast<Eigen::Index>(n); };

  Matrix u = Matrix::Identity(2 * levels, 2 * levels);
  const double gt = params.angle();
  for (std::size_t n = 0; n + 1 <= cutoff; ++n) {
    const double angle = gt * std::sqrt(static_cast<double>(n + 1));
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    // Columns are images of basis vectors.
    u(up(n), up(n)) = c;
    u(down(n + 1), up(n)) = -s;
    u(up(n), down(n + 1)) = s;
    u(down(n + 1), down(n + 1)) = c;
  }
  return u;
}

Matrix ramsey_unitary(const RamseyParams& params) {
  const double c = std::cos(params.pulse / 2.0);
  const double s = std::sin(params.pulse / 2.0);
  Matrix r(2, 2);
  r(kExcited, kExcited) = c;
  r(kGround, kExcited) = -std::polar(s, params.phase);
  r(kExcited, kGround) = std::polar(s, -params.phase);
  r(kGround, kGround) = c;
  return r;
}

std::vector<TimingSolution> solve_timing(int m_min, int m_max, bool allow_wide) {
  if (m_min > m_max) throw Error("empty timing range");
  if (m_min < 0) throw Error("timing index m must be non-negative");
  if (!allow_wide && m_max > kMaxExperimentalM) {
    throw Error("timing index m above 16 needs the widened-range flag");
  }
  constexpr double pi = std::numbers::pi;
  std::vector<TimingSolution> out;
  for (int m = m_min; m <= m_max; ++m) {
    const double gT = pi / 4.0 + 2.0 * pi * static_cast<double>(m);
    out.push_back({m, gT, 1.0 - std::sin(std::numbers::sqrt2 * gT)});
  }
  std::stable_sort(out.begin(), out.end(), [](const TimingSolution& a, const TimingSolution& b) {
    return a.delta < b.delta;
  });
  return out;
}

StateVector evolve_protocol_step(const StateVector& state, double coupling, double time, int cavity) {
  if (!(time >= 0.0)) throw Error("interaction time must be non-negative");
  if (cavity != 1 && cavity != 2) throw Error("cavity must be 1 or 2");
  const auto& layout = state.layout();
  const std::string_view atom = cavity == 1 ? kAtom1 : kAtom2;
  const std::string_view field = cavity == 1 ? kCavity1 : kCavity2;
  const std::size_t cutoff = layout.dim(layout.position(field)) - 1;
  return apply_on_factors(state, {atom, field}, jc_propagator({coupling, time}, cutoff));
}

double leakage(const StateVector& state, std::size_t max_photons) {
  const auto& layout = state.layout();
  const std::size_t c1 = layout.position(kCavity1);
  const std::size_t c2 = layout.position(kCavity2);
  double pop = 0.0;
  for (std::size_t flat = 0; flat < layout.total_dim(); ++flat) {
    if (layout.digit(flat, c1) > max_photons || layout.digit(flat, c2) > max_photons) {
      pop += std::norm(state[flat]);
    }
  }
  return pop;
}

}  // namespace cqed
