#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace relaysec {

// downlink: multi-antenna source; uplink: multi-antenna destination
enum class LinkMode { downlink, uplink };

std::string_view to_string(LinkMode mode);
LinkMode parse_mode(std::string_view text);

// High-SNR quantities need tau2 > 0.
struct AsymptoticUndefined : std::domain_error {
  using std::domain_error::domain_error;
};

// a_L and b_L divide by xi1 - 1.
struct DlCoefficientsUndefined : std::domain_error {
  using std::domain_error::domain_error;
};

inline constexpr double lambda_floor = 1e-9;

}  // namespace relaysec
