#pragma once

#include "relaysec/channel.hpp"
#include "relaysec/common.hpp"
#include "relaysec/hw_profile.hpp"
#include "relaysec/secrecy_metrics.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace relaysec {

struct DesignBudget {
  double k_R_tot = 0.0;
  double k_D_tot = 0.0;
  LinkMode mode = LinkMode::downlink;
};

// IV = [k_R_t, k_R_r, k_D_t, k_D_r]
struct DesignVector {
  double k_R_t = 0.0;
  double k_R_r = 0.0;
  double k_D_t = 0.0;
  double k_D_r = 0.0;

  std::array<double, 4> iv() const { return {k_R_t, k_R_r, k_D_t, k_D_r}; }
};

double ceiling_phi(const DerivedConstants& c, LinkMode mode);
// ln(phi_inf) / (2 ln 2)
double ceiling_esr(const DerivedConstants& c, LinkMode mode);

std::pair<double, double> relay_split_opt(const DesignBudget& budget);
std::pair<double, double> dest_split_opt(const DesignBudget& budget, double k_R_sq);
DesignVector optimal_design(const DesignBudget& budget);

enum class DesignVariable { relay_t, dest_t, relay_r };
// chain_rule: component partials of the ceiling assembled through tau1..tau3, xi1.
// compact: the simplified closed forms for d/dk_R_t and d/dk_D_t (downlink only).
enum class GradientForm { chain_rule, compact };

// Derivative of phi_inf along the budget line (the complementary chain takes total - value).
double ceiling_gradient(const EvmProfile& profile, const DesignBudget& budget, DesignVariable which,
                        GradientForm form = GradientForm::chain_rule);

// Designs 1-4: unbalanced/balanced relay crossed with equal/optimal destination split.
std::array<DesignVector, 4> reference_designs(const DesignBudget& budget);

void check_budget(const DesignVector& design, const DesignBudget& budget);

struct DesignRow {
  std::size_t design = 0;
  double snr_db = 0.0;
  AllocationMethod method = AllocationMethod::numeric;
  EsrResult esr;
};

std::vector<DesignRow> design_compare(const DesignBudget& budget, const ScenarioConfig& scenario,
                                      const std::vector<DesignVector>& designs, const std::vector<double>& snr_db,
                                      const McOptions& options, double k_S_t = 0.1,
                                      AllocationMethod method = AllocationMethod::numeric);

}  // namespace relaysec
