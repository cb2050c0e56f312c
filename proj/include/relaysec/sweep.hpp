#pragma once

#include "relaysec/common.hpp"
#include "relaysec/hw_profile.hpp"
#include "relaysec/secrecy_metrics.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace relaysec {

struct NamedProfile {
  std::string name;
  EvmProfile profile;
};

struct SnrRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> points() const;
};

enum class SweepMetric { esr, sop };

struct SweepSpec {
  std::string name;
  SweepMetric metric = SweepMetric::esr;
  std::vector<LinkMode> modes{LinkMode::downlink};
  int n_antennas = 16;
  double mu_sr = 10.0;
  double mu_rd = 10.0;
  std::vector<NamedProfile> profiles;
  SnrRange snr_db;
  std::vector<AllocationMethod> methods{AllocationMethod::numeric};
  std::vector<std::string> paths{"closed", "integral", "monte_carlo"};
  std::vector<double> target_rates;
  std::uint64_t n_trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string output_path;

  void validate() const;
};

// JSON schema documented in README.md.
SweepSpec parse_sweep_spec(std::string_view json_text);
SweepSpec load_sweep_spec(const std::string& path);

inline constexpr std::string_view sweep_csv_header =
    "snr_db,mode,method,path,value,ci_halfwidth,lambda_star_mean,profile,target_rate";

// Writes the header and one row per (profile, mode, snr, method, path[, target rate]).
std::size_t run_sweep(const SweepSpec& spec, std::ostream& out);

// Locale-independent shortest round-trip formatting.
std::string format_number(double x);

}  // namespace relaysec
