#include "relaysec/hw_design.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace relaysec {

double ceiling_phi(const DerivedConstants& c, LinkMode mode) {
  const double t1 = c.tau1, t2 = c.tau2, t3 = c.tau3, x1 = c.xi1;
  if (!(t2 > 0.0)) throw AsymptoticUndefined("no secrecy ceiling for perfect hardware (tau2 = 0)");
  if (mode == LinkMode::downlink) {
    const double th = theta(c, mode);
    return ((1.0 + t2) * th + t3) * ((x1 - 1.0) * th + t1) / ((x1 * th + t1) * (t2 * th + t3));
  }
  const double sx = std::sqrt(x1), st = std::sqrt(t2 + 1.0);
  return sx * (t2 + 1.0) * (t2 + sx * st) / (t2 * (sx + st) * (sx * st + 1.0));
}

double ceiling_esr(const DerivedConstants& c, LinkMode mode) {
  return std::log(ceiling_phi(c, mode)) / (2.0 * std::numbers::ln2);
}

std::pair<double, double> relay_split_opt(const DesignBudget& budget) {
  if (budget.k_R_tot < 0.0) throw std::invalid_argument("relay budget must be >= 0");
  return {budget.k_R_tot / 2.0, budget.k_R_tot / 2.0};
}

std::pair<double, double> dest_split_opt(const DesignBudget& budget, double k_R_sq) {
  const double kd = budget.k_D_tot;
  if (kd < 0.0) throw std::invalid_argument("destination budget must be >= 0");
  if (kd == 0.0) return {0.0, 0.0};
  if (budget.mode == LinkMode::uplink) return {kd, 0.0};
  const double r2 = k_R_sq, d2 = kd * kd;
  const double root = std::sqrt(4.0 * r2 * r2 + 8.0 * r2 * d2 + 4.0 * d2 * d2 + 12.0 * r2 - 4.0 * d2 + 9.0);
  const double kt = (2.0 * r2 + 2.0 * d2 + 3.0 - root) / (4.0 * kd);
  return {kt, kd - kt};
}

DesignVector optimal_design(const DesignBudget& budget) {
  const auto [rt, rr] = relay_split_opt(budget);
  const auto [dt, dr] = dest_split_opt(budget, rt * rt + rr * rr);
  return {rt, rr, dt, dr};
}

namespace {

// d(tau1, tau2, tau3, xi1) along one design direction
struct TauRates {
  double tau1 = 0.0, tau2 = 0.0, tau3 = 0.0, xi1 = 0.0;

  TauRates operator-(const TauRates& o) const {
    return {tau1 - o.tau1, tau2 - o.tau2, tau3 - o.tau3, xi1 - o.xi1};
  }
};

TauRates d_k_R_t(const EvmProfile& p) {
  const double rr = p.k_R_r * p.k_R_r, dt = p.k_D_t * p.k_D_t;
  const double d2 = 2.0 * p.k_R_t * rr + 2.0 * p.k_R_t;
  return {0.0, d2, d2 + 2.0 * p.k_R_t * dt, 0.0};
}

TauRates d_k_R_r(const EvmProfile& p) {
  const double rt = p.k_R_t * p.k_R_t, dr = p.k_D_r * p.k_D_r;
  const double d2 = 2.0 * p.k_R_r * dr + 2.0 * p.k_R_r * rt + 2.0 * p.k_R_r;
  return {2.0 * p.k_R_r, d2, d2, 2.0 * p.k_R_r};
}

TauRates d_k_D_t(const EvmProfile& p) {
  const double rt = p.k_R_t * p.k_R_t, dr = p.k_D_r * p.k_D_r;
  return {2.0 * p.k_D_t, 0.0, 2.0 * p.k_D_t * (dr + rt + 1.0), 0.0};
}

TauRates d_k_D_r(const EvmProfile& p) {
  const double rr = p.k_R_r * p.k_R_r, dt = p.k_D_t * p.k_D_t;
  const double d2 = 2.0 * p.k_D_r * rr + 2.0 * p.k_D_r;
  return {0.0, d2, d2 + 2.0 * p.k_D_r * dt, 0.0};
}

TauRates direction(const EvmProfile& p, DesignVariable which) {
  switch (which) {
    case DesignVariable::relay_t: return d_k_R_t(p) - d_k_R_r(p);
    case DesignVariable::relay_r: return d_k_R_r(p) - d_k_R_t(p);
    case DesignVariable::dest_t: return d_k_D_t(p) - d_k_D_r(p);
  }
  return {};
}

double dl_chain(const DerivedConstants& c, const TauRates& d) {
  const double t1 = c.tau1, t2 = c.tau2, t3 = c.tau3, x1 = c.xi1;
  const double th = theta(c, LinkMode::downlink);
  const double k1 = -t1 * t2 * (t2 + 1.0) + t3 * x1 * (x1 - 1.0);
  const double k2 = -2.0 * t1 * t3 * (t2 - x1 + 1.0);
  const double k3 = t1 * t3 * (t1 - t3);
  const double pa = th * x1 + t1;
  const double pb = t2 * th + t3;
  const double dphi_dth = (k1 * th * th + k2 * th + k3) / (pa * pa * pb * pb);

  const double root = std::sqrt(t2 * t3 * (t1 - t3));
  const double dth_dt1 = t3 / (2.0 * root);
  const double dth_dt2 = -std::sqrt(t3 * (t1 - t3)) / (2.0 * t2 * std::sqrt(t2)) - t3 * (x1 - 1.0) / (t2 * t2);
  const double dth_dt3 = (t1 - 2.0 * t3) / (2.0 * root) + (x1 - 1.0) / t2 - 1.0;
  const double dth_dx1 = t3 / t2;

  const double dphi_dt1 = th * (t2 * th + t3 + th) / (pa * pa * pb);
  const double dphi_dt2 = -th * th * (x1 * th + t1 - th) / (pb * pb * pa);
  const double dphi_dt3 = -th * (x1 * th + t1 - th) / (pb * pb * pa);
  const double dphi_dx1 = th * th * (t2 * th + t3 + th) / (pa * pa * pb);

  const double dth = dth_dt1 * d.tau1 + dth_dt2 * d.tau2 + dth_dt3 * d.tau3 + dth_dx1 * d.xi1;
  return dphi_dth * dth + dphi_dt1 * d.tau1 + dphi_dt2 * d.tau2 + dphi_dt3 * d.tau3 + dphi_dx1 * d.xi1;
}

double ul_chain(const DerivedConstants& c, const TauRates& d) {
  const double t2 = c.tau2, x1 = c.xi1;
  const double s = std::sqrt(x1 * (1.0 + t2));
  const double p1 = s + 1.0;
  const double p2 = x1 + s;
  const double den = p1 * p1 * p2 * p2;
  const double dphi_dt2 =
      -x1 * ((2.0 * (t2 + 2.0) * x1 - t2 * t2) * s + 2.0 * x1 * (t2 * (x1 + 1.0 - t2) + x1 + 1.0)) /
      (2.0 * t2 * t2 * den);
  const double dphi_dx1 = (1.0 + t2) * ((t2 + 2.0 * x1) * s + 2.0 * (1.0 + t2) * x1) / (2.0 * t2 * den);
  return dphi_dt2 * d.tau2 + dphi_dx1 * d.xi1;
}

double compact_relay_t(const EvmProfile& p, double k_R_tot) {
  const double rt = p.k_R_t, dr2 = p.k_D_r * p.k_D_r, dt2 = p.k_D_t * p.k_D_t;
  const double den = 4.0 * rt * rt - 4.0 * rt * k_R_tot + 2.0 * k_R_tot * k_R_tot + 2.0 * dr2 + dt2;
  return 4.0 * (1.0 - dr2) * (k_R_tot - 2.0 * rt) / (den * den);
}

double compact_dest_t(const EvmProfile& p, double k_R_sq, double k_D_tot) {
  const double dt = p.k_D_t, kd = k_D_tot;
  const double num = 2.0 * k_R_sq * dt - 2.0 * dt * dt * kd + 2.0 * dt * kd * kd + 3.0 * dt - 2.0 * kd;
  const double den = 2.0 * k_R_sq + 3.0 * dt * dt - 4.0 * dt * kd + 2.0 * kd * kd;
  return -2.0 * num / (den * den);
}

}  // namespace

double ceiling_gradient(const EvmProfile& profile, const DesignBudget& budget, DesignVariable which,
                        GradientForm form) {
  const auto c = derive_constants(profile);
  if (form == GradientForm::compact && budget.mode == LinkMode::downlink) {
    switch (which) {
      case DesignVariable::relay_t: return compact_relay_t(profile, budget.k_R_tot);
      case DesignVariable::relay_r: return -compact_relay_t(profile, budget.k_R_tot);
      case DesignVariable::dest_t: return compact_dest_t(profile, c.k_R_sq, budget.k_D_tot);
    }
  }
  const auto d = direction(profile, which);
  return budget.mode == LinkMode::downlink ? dl_chain(c, d) : ul_chain(c, d);
}

std::array<DesignVector, 4> reference_designs(const DesignBudget& budget) {
  const double r = budget.k_R_tot, d = budget.k_D_tot;
  const auto opt = optimal_design(budget);
  const DesignVector d1{0.75 * r, 0.25 * r, 0.5 * d, 0.5 * d};
  const DesignVector d2{opt.k_R_t, opt.k_R_r, 0.5 * d, 0.5 * d};
  const DesignVector d3{0.75 * r, 0.25 * r, opt.k_D_t, opt.k_D_r};
  return {d1, d2, d3, opt};
}

void check_budget(const DesignVector& v, const DesignBudget& budget) {
  constexpr double tol = 1e-9;
  for (double x : v.iv())
    if (x < 0.0) throw std::invalid_argument("design EVMs must be >= 0");
  if (std::abs(v.k_R_t + v.k_R_r - budget.k_R_tot) > tol || std::abs(v.k_D_t + v.k_D_r - budget.k_D_tot) > tol)
    throw std::invalid_argument("design violates the EVM budget");
}

std::vector<DesignRow> design_compare(const DesignBudget& budget, const ScenarioConfig& scenario,
                                      const std::vector<DesignVector>& designs, const std::vector<double>& snr_db,
                                      const McOptions& options, double k_S_t, AllocationMethod method) {
  for (const auto& d : designs) check_budget(d, budget);
  std::vector<DesignRow> rows;
  for (std::size_t i = 0; i < designs.size(); ++i) {
    const auto profile = EvmProfile::from_iv(k_S_t, designs[i].iv());
    for (double db : snr_db) {
      ScenarioConfig cfg = scenario;
      cfg.mode = budget.mode;
      cfg.rho = std::pow(10.0, db / 10.0);
      rows.push_back({i, db, method, esr_monte_carlo(cfg, profile, method, options)});
    }
  }
  return rows;
}

}  // namespace relaysec
