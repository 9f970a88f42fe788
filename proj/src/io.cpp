#include "cqed/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cqed {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("invalid value '" + std::string(text) + "' for " + std::string(what));
  }
  return value;
}

bool parse_bool(std::string_view text, std::string_view what) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error("invalid boolean '" + std::string(text) + "' for " + std::string(what));
}

struct Column {
  std::string_view name;
  double SweepRow::*real = nullptr;
  int SweepRow::*integer = nullptr;
};

constexpr std::array kColumns{
    Column{"eta", &SweepRow::eta},
    Column{"p1", &SweepRow::p1},
    Column{"p2", &SweepRow::p2},
    Column{"theta", &SweepRow::theta},
    Column{"m", nullptr, &SweepRow::m},
    Column{"g", &SweepRow::g},
    Column{"gT1", &SweepRow::gT1},
    Column{"gT2", &SweepRow::gT2},
    Column{"eps1", &SweepRow::eps1},
    Column{"eps2", &SweepRow::eps2},
    Column{"success_prob_sim", &SweepRow::success_prob_sim},
    Column{"success_prob_analytic", &SweepRow::success_prob_analytic},
    Column{"fidelity", &SweepRow::fidelity},
    Column{"g_e", &SweepRow::g_e},
    Column{"leakage", &SweepRow::leakage},
    Column{"p_up_up", &SweepRow::p_up_up},
    Column{"p_up_down", &SweepRow::p_up_down},
    Column{"p_down_up", &SweepRow::p_down_up},
    Column{"p_down_down", &SweepRow::p_down_down},
    Column{"fidelity_loss", &SweepRow::fidelity_loss},
    Column{"baseline_fidelity_loss", &SweepRow::baseline_fidelity_loss},
};

constexpr auto kColumnNames = [] {
  std::array<std::string_view, kColumns.size()> names{};
  for (std::size_t i = 0; i < kColumns.size(); ++i) names[i] = kColumns[i].name;
  return names;
}();

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> values;
  for (auto item : split(text, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    values.push_back(parse_number<double>(item, "list entry"));
  }
  return values;
}

void apply_setting(RunSettings& s, std::string_view key, std::string_view value) {
  auto& p = s.protocol;
  value = trim(value);
  if (key == "p1") p.p1 = parse_number<double>(value, key);
  else if (key == "p2") p.p2 = parse_number<double>(value, key);
  else if (key == "theta") p.theta = parse_number<double>(value, key);
  else if (key == "eta") p.eta = parse_number<double>(value, key);
  else if (key == "m") p.m = parse_number<int>(value, key);
  else if (key == "g") p.g = parse_number<double>(value, key);
  else if (key == "cutoff") p.cutoff = parse_number<std::size_t>(value, key);
  else if (key == "seed") p.seed = parse_number<std::uint64_t>(value, key);
  else if (key == "eta_grid") s.eta_grid = parse_double_list(value);
  else if (key == "rel_sigma") s.jitter.rel_sigma = parse_number<double>(value, key);
  else if (key == "samples") s.jitter.n_samples = parse_number<std::size_t>(value, key);
  else if (key == "jitter_dist") {
    if (value == "uniform") s.jitter.distribution = JitterDistribution::uniform;
    else if (value == "gaussian") s.jitter.distribution = JitterDistribution::gaussian;
    else throw Error("jitter_dist must be 'uniform' or 'gaussian'");
  } else if (key == "jitter_mode") {
    if (value == "shared") s.jitter.mode = JitterMode::shared;
    else if (value == "independent") s.jitter.mode = JitterMode::independent;
    else throw Error("jitter_mode must be 'shared' or 'independent'");
  } else if (key == "m_min") s.m_min = parse_number<int>(value, key);
  else if (key == "m_max") s.m_max = parse_number<int>(value, key);
  else if (key == "allow_wide") s.allow_wide = parse_bool(value, key);
  else throw Error("unknown setting '" + std::string(key) + "'");
}

void parse_settings(std::istream& in, RunSettings& settings, std::string_view source) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    const auto where = std::string(source) + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string_view::npos) throw Error(where + "expected 'key = value'");
    try {
      apply_setting(settings, trim(view.substr(0, eq)), view.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
  }
}

void load_settings(const std::filesystem::path& path, RunSettings& settings) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  parse_settings(in, settings, path.string());
}

std::span<const std::string_view> csv_columns() { return kColumnNames; }

void write_csv(const SweepResult& result, std::ostream& out) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i].name;
  out << "\r\n";
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
      if (i) out << ',';
      const auto& c = kColumns[i];
      if (c.integer) out << row.*c.integer;
      else out << format_real(row.*c.real);
    }
    out << "\r\n";
  }
}

SweepResult read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("CSV is missing its header");
  const auto header = split(trim(line), ',');
  if (header.size() != kColumns.size() ||
      !std::equal(header.begin(), header.end(), kColumnNames.begin())) {
    throw Error("CSV header does not match the sweep schema");
  }
  SweepResult result;
  while (std::getline(in, line)) {
    const auto view = trim(line);
    if (view.empty()) continue;
    const auto fields = split(view, ',');
    if (fields.size() != kColumns.size()) throw Error("CSV row has the wrong number of fields");
    SweepRow row;
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
      const auto& c = kColumns[i];
      if (c.integer) row.*c.integer = parse_number<int>(fields[i], c.name);
      else row.*c.real = parse_number<double>(fields[i], c.name);
    }
    result.rows.push_back(row);
  }
  return result;
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_csv(result, out);
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

SweepResult load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_csv(in);
}

void emit_timing_csv(std::span<const TimingSolution> solutions, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "m,gT,delta,first_condition_residual\r\n";
  for (const auto& s : solutions) {
    const double residual = std::sin(s.gT) + std::cos(s.gT) - std::sqrt(2.0);
    out << s.m << ',' << format_real(s.gT) << ',' << format_real(s.delta) << ',' << format_real(residual)
        << "\r\n";
  }
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace cqed
