#pragma once

#include <array>
#include <string>
#include <vector>

namespace relaysec {

// EVMs per transceiver chain. The source never receives, so it has no k_S_r.
struct EvmProfile {
  double k_S_t = 0.0;
  double k_R_t = 0.0;
  double k_R_r = 0.0;
  double k_D_t = 0.0;
  double k_D_r = 0.0;

  static EvmProfile uniform(double k);
  // iv = [k_R_t, k_R_r, k_D_t, k_D_r]
  static EvmProfile from_iv(double k_S_t, const std::array<double, 4>& iv);

  void validate() const;
  std::vector<std::string> warnings() const;

  bool operator==(const EvmProfile&) const = default;
};

inline constexpr double evm_range_low = 0.08;
inline constexpr double evm_range_high = 0.175;

struct DerivedConstants {
  EvmProfile profile;
  double k_R_sq = 0.0;
  double k_D_sq = 0.0;
  double tau1 = 1.0;
  double tau2 = 0.0;
  double tau3 = 0.0;
  double tau4 = 2.0;
  double xi1 = 1.0;
  double xi2 = 2.0;
};

DerivedConstants derive_constants(const EvmProfile& profile);

}  // namespace relaysec
