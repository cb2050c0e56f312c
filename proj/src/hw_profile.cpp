#include "relaysec/hw_profile.hpp"

#include "relaysec/common.hpp"

#include <cmath>
#include <sstream>

namespace relaysec {

std::string_view to_string(LinkMode mode) {
  return mode == LinkMode::downlink ? "dl" : "ul";
}

LinkMode parse_mode(std::string_view text) {
  if (text == "dl" || text == "DL") return LinkMode::downlink;
  if (text == "ul" || text == "UL") return LinkMode::uplink;
  throw std::invalid_argument("unknown link mode '" + std::string(text) + "' (expected dl or ul)");
}

EvmProfile EvmProfile::uniform(double k) { return {k, k, k, k, k}; }

EvmProfile EvmProfile::from_iv(double k_S_t, const std::array<double, 4>& iv) {
  return {k_S_t, iv[0], iv[1], iv[2], iv[3]};
}

namespace {

struct NamedField {
  const char* name;
  double value;
};

std::array<NamedField, 5> fields(const EvmProfile& p) {
  return {{{"k_S_t", p.k_S_t}, {"k_R_t", p.k_R_t}, {"k_R_r", p.k_R_r}, {"k_D_t", p.k_D_t}, {"k_D_r", p.k_D_r}}};
}

}  // namespace

void EvmProfile::validate() const {
  for (const auto& f : fields(*this)) {
    if (!std::isfinite(f.value) || f.value < 0.0)
      throw std::invalid_argument(std::string("EVM ") + f.name + " must be finite and >= 0");
  }
}

std::vector<std::string> EvmProfile::warnings() const {
  std::vector<std::string> out;
  for (const auto& f : fields(*this)) {
    if (f.value != 0.0 && (f.value < evm_range_low || f.value > evm_range_high)) {
      std::ostringstream os;
      os << f.name << "=" << f.value << " outside typical range [" << evm_range_low << ", "
         << evm_range_high << "]";
      out.push_back(os.str());
    }
  }
  return out;
}

DerivedConstants derive_constants(const EvmProfile& p) {
  p.validate();
  const double rt = p.k_R_t * p.k_R_t;
  const double rr = p.k_R_r * p.k_R_r;
  const double dt = p.k_D_t * p.k_D_t;
  const double dr = p.k_D_r * p.k_D_r;

  DerivedConstants c;
  c.profile = p;
  c.k_R_sq = rt + rr;
  c.k_D_sq = dt + dr;
  c.tau1 = 1.0 + rr + dt;
  c.tau2 = dr * rr + rr * rt + c.k_R_sq + dr;
  c.tau3 = c.tau2 + dt * dr + rt * dt + dt;
  c.tau4 = 2.0 + c.k_R_sq + c.k_D_sq;
  c.xi1 = 1.0 + rr;
  c.xi2 = 2.0 + c.k_R_sq + dr;
  return c;
}

}  // namespace relaysec
