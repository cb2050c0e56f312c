#include "relaysec/sweep.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace relaysec {

std::vector<double> SnrRange::points() const {
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double x = start + i * step;
    if (x > stop + 1e-9 * std::max(1.0, std::abs(stop))) break;
    out.push_back(x);
  }
  return out;
}

void SweepSpec::validate() const {
  if (!(snr_db.step > 0.0)) throw std::invalid_argument("snr_db.step must be > 0");
  if (snr_db.stop < snr_db.start) throw std::invalid_argument("snr_db.stop must be >= snr_db.start");
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  if (n_antennas < 1) throw std::invalid_argument("n_antennas must be >= 1");
  if (!(mu_sr > 0.0) || !(mu_rd > 0.0)) throw std::invalid_argument("mu_sr and mu_rd must be > 0");
  if (profiles.empty()) throw std::invalid_argument("at least one profile is required");
  if (modes.empty()) throw std::invalid_argument("at least one mode is required");
  if (metric == SweepMetric::sop && target_rates.empty()) throw std::invalid_argument("sop sweeps need target_rates");
  for (const auto& p : paths)
    if (p != "closed" && p != "integral" && p != "monte_carlo") throw std::invalid_argument("unknown path '" + p + "'");
  for (const auto& p : profiles) p.profile.validate();
}

namespace {

using nlohmann::json;

NamedProfile parse_profile(const json& j, std::size_t index) {
  NamedProfile p;
  p.name = j.value("name", "profile" + std::to_string(index));
  if (j.contains("evm")) {
    p.profile = EvmProfile::uniform(j.at("evm").get<double>());
  } else if (j.contains("iv")) {
    const auto iv = j.at("iv").get<std::vector<double>>();
    if (iv.size() != 4) throw std::invalid_argument("iv must have four entries");
    p.profile = EvmProfile::from_iv(j.value("k_S_t", 0.1), {iv[0], iv[1], iv[2], iv[3]});
  } else {
    p.profile = {j.value("k_S_t", 0.0), j.value("k_R_t", 0.0), j.value("k_R_r", 0.0), j.value("k_D_t", 0.0),
                 j.value("k_D_r", 0.0)};
  }
  return p;
}

}  // namespace

SweepSpec parse_sweep_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  SweepSpec s;
  try {
    s.name = j.value("name", "");
    const std::string metric = j.value("metric", "esr");
    if (metric == "esr")
      s.metric = SweepMetric::esr;
    else if (metric == "sop")
      s.metric = SweepMetric::sop;
    else
      throw std::invalid_argument("metric must be esr or sop");
    if (j.contains("modes")) {
      s.modes.clear();
      for (const auto& m : j.at("modes")) s.modes.push_back(parse_mode(m.get<std::string>()));
    }
    s.n_antennas = j.value("n_antennas", s.n_antennas);
    s.mu_sr = j.value("mu_sr", s.mu_sr);
    s.mu_rd = j.value("mu_rd", s.mu_rd);
    if (j.contains("profiles")) {
      std::size_t i = 0;
      for (const auto& p : j.at("profiles")) s.profiles.push_back(parse_profile(p, i++));
    }
    if (j.contains("snr_db")) {
      const auto& r = j.at("snr_db");
      s.snr_db.start = r.value("start", 0.0);
      s.snr_db.stop = r.value("stop", s.snr_db.start);
      s.snr_db.step = r.value("step", 1.0);
    }
    if (j.contains("methods")) {
      s.methods.clear();
      for (const auto& m : j.at("methods")) s.methods.push_back(parse_allocation(m.get<std::string>()));
    }
    if (j.contains("paths")) s.paths = j.at("paths").get<std::vector<std::string>>();
    if (j.contains("target_rates")) s.target_rates = j.at("target_rates").get<std::vector<double>>();
    s.n_trials = j.value("n_trials", s.n_trials);
    s.seed = j.value("seed", s.seed);
    s.threads = j.value("threads", s.threads);
    s.output_path = j.value("output", "");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad config field: ") + e.what());
  }
  s.validate();
  return s;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sweep_spec(buf.str());
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

struct RowWriter {
  std::ostream& out;
  std::size_t count = 0;

  void write(double snr_db, LinkMode mode, std::string_view method, std::string_view path, double value,
             double ci, const std::string& lambda_mean, const std::string& profile, const std::string& rate) {
    out << format_number(snr_db) << ',' << to_string(mode) << ',' << method << ',' << path << ','
        << format_number(value) << ',' << format_number(ci) << ',' << lambda_mean << ',' << profile << ','
        << rate << '\n';
    ++count;
  }
};

bool has_path(const SweepSpec& s, std::string_view p) {
  for (const auto& x : s.paths)
    if (x == p) return true;
  return false;
}

}  // namespace

std::size_t run_sweep(const SweepSpec& spec, std::ostream& out) {
  spec.validate();
  out << sweep_csv_header << '\n';
  RowWriter w{out};
  const McOptions base{spec.n_trials, spec.seed, spec.threads};
  // closed forms come from the high-SNR allocation
  const std::string_view analytic = "high_snr";

  for (const auto& np : spec.profiles) {
    const auto c = derive_constants(np.profile);
    const bool asymptotic = c.tau2 > 0.0;
    for (const LinkMode mode : spec.modes) {
      for (const double db : spec.snr_db.points()) {
        const double rho = std::pow(10.0, db / 10.0);
        const ScenarioConfig cfg{mode, spec.n_antennas, rho, spec.mu_sr, spec.mu_rd};
        const double mean = rho * (mode == LinkMode::downlink ? spec.mu_rd : spec.mu_sr);

        if (spec.metric == SweepMetric::esr) {
          if (asymptotic && has_path(spec, "closed"))
            w.write(db, mode, analytic, "closed", esr_closed(c, mode, mean).esr, 0.0, "", np.name, "");
          if (asymptotic && has_path(spec, "integral"))
            w.write(db, mode, analytic, "integral", esr_general(c, mode, FadingCdf::exponential(mean)).esr, 0.0, "",
                    np.name, "");
          if (has_path(spec, "monte_carlo")) {
            for (const auto m : spec.methods) {
              const auto r = esr_monte_carlo(cfg, np.profile, m, base);
              w.write(db, mode, to_string(m), "monte_carlo", r.esr, r.ci_halfwidth, format_number(r.lambda_mean),
                      np.name, "");
            }
          }
        } else {
          for (const double rt : spec.target_rates) {
            if (asymptotic && has_path(spec, "closed"))
              w.write(db, mode, analytic, "closed", sop_rayleigh(c, mode, mean, rt).probability, 0.0, "", np.name,
                      format_number(rt));
            if (asymptotic && has_path(spec, "integral"))
              w.write(db, mode, analytic, "integral", sop(c, mode, FadingCdf::exponential(mean), rt).probability, 0.0,
                      "", np.name, format_number(rt));
          }
          if (has_path(spec, "monte_carlo")) {
            for (const auto m : spec.methods) {
              const auto rs = sop_monte_carlo(cfg, np.profile, m, spec.target_rates, base);
              for (std::size_t k = 0; k < rs.size(); ++k)
                w.write(db, mode, to_string(m), "monte_carlo", rs[k].probability, rs[k].ci_halfwidth,
                        format_number(rs[k].lambda_mean), np.name, format_number(spec.target_rates[k]));
            }
          }
        }
      }
    }
  }
  if (!out) throw std::runtime_error("failed writing sweep output");
  return w.count;
}

}  // namespace relaysec
