#pragma once

// Scenario configuration, descriptor parsing and the demo / sweep /
// check-tame commands behind the command-line tool.

#include <iosfwd>
#include <string>
#include <vector>

#include "tamelab/counterexample.hpp"

namespace tamelab {

enum class OutputFormat { Csv, Json };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUnexpectedOutcome = 2;
inline constexpr int kConfig = 64;
inline constexpr int kPrecisionBudget = 65;
inline constexpr int kUnwritable = 66;
}  // namespace exit_code

struct ScenarioConfig {
  MapVariant variant = MapVariant::Ex2;
  /// Empty selects "sin" for ex2 and "t_plus_exp" for ex4.
  std::string phi;
  int n = 1;
  std::string x = "0";
  int k = 3;
  int l = 8;
  std::vector<int> m_list = default_m_list();
  double grid_factor = GridSpec{}.factor;
  PNormSpec rho1;
  PNormSpec rho2;
  OutputFormat format = OutputFormat::Csv;
  /// Empty writes to stdout.
  std::string output;

  GridSpec grid() const { return {grid_factor, GridSpec{}.min_points}; }
  std::string phi_or_default() const;
  /// Every check that does not need numerics. Throws UsageError.
  void validate() const;
  MapSpec map() const;
  SmoothFunction base_point() const;
};

/// Outer function registry: sin, cos (of 2 pi t), constant:c, affine:a,b,
/// poly:c0,...,cd, t_plus_exp.
SmoothFunction parse_phi(const std::string& descriptor);

/// Elements of E: 0, constant:c, sin:amp,freq[,shift], cos:amp,freq[,shift],
/// probe:m,k[,s0], and on [0, 1] also identity and affine:a,b.
/// Several descriptors joined with '+' are summed.
SmoothFunction parse_function(const std::string& descriptor, Domain d);

MapVariant parse_variant(const std::string& name);
OutputFormat parse_format(const std::string& name);
std::vector<int> parse_m_list(const std::string& text);

/// {"truncation": int, "transform": "bounded"|"linear", "weights": [..]}.
/// The JSON text is parsed here so callers need no JSON dependency.
PNormSpec parse_pnorm(const std::string& json_text);
std::string pnorm_to_json(const PNormSpec& spec);

/// Fills fields present in a JSON config object; absent keys keep their value.
void apply_config_json(ScenarioConfig& config, const std::string& json_text);
std::string config_to_json(const ScenarioConfig& config);

extern const char* const kCsvHeader;
std::string records_to_csv(const std::vector<GrowthRecord>& records);
/// Throws UsageError on a malformed table.
std::vector<GrowthRecord> records_from_csv(const std::string& text);
std::string sweep_to_json(const ScenarioConfig& config, const SweepResult& sweep);

/// Probe file: a JSON array (or {"probes": [...]}) whose entries are either
/// {"m": int, "k": int} or {"z": descriptor, "u": descriptor}. (m, k) entries
/// use the driver's s0 and u = 1/l. Throws UsageError when malformed or empty.
std::vector<TameProbe> parse_probe_file(const ScenarioConfig& config, const std::string& json_text);

/// The commands return process exit codes and never throw.
int run_demo(const ScenarioConfig& config, std::ostream& out, std::ostream& err);
int run_sweep(const ScenarioConfig& config, std::ostream& out, std::ostream& err);
int run_check_tame(const ScenarioConfig& config, const std::string& probe_path, std::ostream& out,
                   std::ostream& err);

}  // namespace tamelab
