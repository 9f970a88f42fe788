#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cqed/dynamics.hpp"
#include "cqed/measurement.hpp"
#include "cqed/states.hpp"

namespace cqed {

/// Populations above this on Fock levels >= 3 mean a propagator or indexing bug.
inline constexpr double kLeakageTolerance = 1e-12;

struct ProtocolConfig {
  double p1 = 0.3;
  double p2 = 0.7;
  double theta = 0.4;  // shared mean phase of both cavities
  double eta = 1.0;
  int m = 5;
  double g = 1.0;
  std::size_t cutoff = 3;
  std::uint64_t seed = 0;

  void validate() const;
  /// gT = pi/4 + 2 m pi
  double interaction_angle() const;
  /// T = gT / g
  double interaction_time() const;
  EntangledInitSpec init_spec() const;
};

struct Diagnostics {
  double leakage = 0.0;
  BranchReport branches;
  double time1 = 0.0;
  double time2 = 0.0;
};

struct RunResult {
  ConditionResult condition;
  EntanglementReport entanglement;
  Diagnostics diagnostics;
};

/// Atoms -> Ramsey zones -> both cavities for the configured time ->
/// post-selection on ground/ground.
RunResult run_protocol(const ProtocolConfig& config);
/// Same pipeline with explicit interaction times per cavity.
RunResult run_protocol(const ProtocolConfig& config, double time1, double time2);

/// Canonical-layout state right before the atoms enter the cavities.
StateVector prepared_state(const ProtocolConfig& config);

struct SweepRow {
  double eta = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double theta = 0.0;
  int m = 0;
  double g = 0.0;
  double gT1 = 0.0;
  double gT2 = 0.0;
  double eps1 = 0.0;  // relative timing error applied to cavity 1
  double eps2 = 0.0;
  double success_prob_sim = 0.0;
  double success_prob_analytic = 0.0;
  double fidelity = 0.0;
  double g_e = 0.0;
  double leakage = 0.0;
  double p_up_up = 0.0;
  double p_up_down = 0.0;
  double p_down_up = 0.0;
  double p_down_down = 0.0;
  double fidelity_loss = 0.0;
  /// 1 - fidelity of the same configuration without timing error.
  double baseline_fidelity_loss = 0.0;

  bool operator==(const SweepRow&) const = default;
};

/// Flatten one run into a sweep row. A negative baseline_loss means "use
/// this run's own fidelity loss".
SweepRow sweep_row(const ProtocolConfig& config, const RunResult& run, double eps1 = 0.0,
                   double eps2 = 0.0, double baseline_loss = -1.0);

struct SweepResult {
  std::vector<SweepRow> rows;

  bool operator==(const SweepResult&) const = default;
};

/// Evaluate the protocol at every eta of the grid. Row order follows the
/// grid. `threads` = 0 picks the hardware concurrency.
SweepResult sweep_eta(const ProtocolConfig& config, std::span<const double> eta_grid,
                      unsigned threads = 0);

enum class JitterDistribution { uniform, gaussian };
enum class JitterMode { shared, independent };

struct JitterOptions {
  double rel_sigma = 1e-2;
  std::size_t n_samples = 100;
  JitterDistribution distribution = JitterDistribution::uniform;
  JitterMode mode = JitterMode::shared;
};

/// Per-sample runs with T' = T (1 + eps). Uniform draws eps from
/// [-rel_sigma, rel_sigma]; gaussian uses rel_sigma as standard deviation.
/// Sample i is seeded with config.seed + i.
SweepResult sweep_timing_jitter(const ProtocolConfig& config, const JitterOptions& options,
                                unsigned threads = 0);

struct SweepSummary {
  std::size_t rows = 0;
  double mean_fidelity = 0.0;
  double min_fidelity = 0.0;
  double mean_success = 0.0;
  double min_success = 0.0;
  double mean_fidelity_loss = 0.0;
  double baseline_fidelity_loss = 0.0;
};

SweepSummary summarize(const SweepResult& result);

std::vector<TimingSolution> find_timing(int m_min, int m_max, bool allow_wide = false);

/// Aligned text table of m, gT, delta and the first-condition residual.
std::string format_timing_table(std::span<const TimingSolution> solutions);

}  // namespace cqed
