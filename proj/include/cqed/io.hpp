#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cqed/protocol.hpp"

namespace cqed {

/// Everything a CLI invocation can configure.
struct RunSettings {
  ProtocolConfig protocol;
  std::vector<double> eta_grid{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0};
  JitterOptions jitter;
  int m_min = 0;
  int m_max = kMaxExperimentalM;
  bool allow_wide = false;
};

/// Flat key = value text. '#' starts a comment; blank lines are skipped.
/// Keys: p1 p2 theta eta m g cutoff seed eta_grid rel_sigma samples
/// jitter_dist (uniform|gaussian) jitter_mode (shared|independent)
/// m_min m_max allow_wide.
void parse_settings(std::istream& in, RunSettings& settings, std::string_view source = "<config>");
void load_settings(const std::filesystem::path& path, RunSettings& settings);
void apply_setting(RunSettings& settings, std::string_view key, std::string_view value);

std::vector<double> parse_double_list(std::string_view text);

/// Column names of the sweep CSV, in output order.
std::span<const std::string_view> csv_columns();

void write_csv(const SweepResult& result, std::ostream& out);
SweepResult read_csv(std::istream& in);

void emit_csv(const SweepResult& result, const std::filesystem::path& path);
SweepResult load_csv(const std::filesystem::path& path);

void emit_timing_csv(std::span<const TimingSolution> solutions, const std::filesystem::path& path);

}  // namespace cqed
