#include "relaysec/hw_design.hpp"
#include "relaysec/link_math.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace relaysec;

namespace {

ChannelRealization dl_realization(double gamma_sr, double gamma_rd, int n) {
  return make_realization(gamma_sr, gamma_rd, 2.0 * gamma_sr / (n + 1), gamma_rd);
}

ChannelRealization ul_realization(double gamma_sr, double gamma_rd, int n) {
  return make_realization(gamma_sr, gamma_rd, gamma_sr, 2.0 * gamma_rd / (n + 1));
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("link_math") {
  TEST_CASE("amplification gain") {
    const auto zero = derive_constants(EvmProfile{});
    const auto r = make_realization(100.0, 50.0, 40.0, 50.0);
    CHECK(amplification_gain(r, zero, 0.3, 1e3) ==
          doctest::Approx(std::sqrt(1e3 / (0.3 * 100.0 + 0.7 * 50.0 + 1.0))).epsilon(1e-14));

    const auto c = derive_constants(EvmProfile::uniform(0.1));
    const auto flat = make_realization(80.0, 80.0, 80.0, 80.0);
    const double b_g = 80.0 * (1.01 + 0.01) + 1.0;
    for (double l : {0.1, 0.5, 1.0}) CHECK(amplification_gain(flat, c, l, 2.0) == doctest::Approx(std::sqrt(2.0 / b_g)));
    CHECK(amplification_gain(r, c, 1e-12, 1.0) ==
          doctest::Approx(std::sqrt(1.0 / (50.0 * 1.01 + 0.01 * 50.0 + 1.0))).epsilon(1e-9));
    CHECK_THROWS_AS(amplification_gain(r, c, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(amplification_gain(make_realization(-10.0, 1.0, 0.0, 1.0), c, 1.0, 1.0), std::domain_error);
  }

  TEST_CASE("perfect-hardware SNDR") {
    const auto r = make_realization(100.0, 50.0, 100.0, 50.0);
    const auto s = sndr_perfect(r, 0.5);
    CHECK(s.gamma_R == doctest::Approx(50.0 / 26.0).epsilon(1e-14));
    CHECK(s.gamma_D == doctest::Approx(2500.0 / 126.0).epsilon(1e-14));
    const auto z = sndr_perfect(r, 1e-15);
    CHECK(z.gamma_R < 1e-12);
    CHECK(z.gamma_D < 1e-12);
    const auto one = sndr_perfect(r, 1.0);
    CHECK(one.gamma_R == doctest::Approx(100.0));
  }

  TEST_CASE("zero EVMs reduce to the perfect-hardware SNDR") {
    const auto zero = derive_constants(EvmProfile{});
    std::mt19937_64 g(1);
    for (int i = 0; i < 300; ++i) {
      const double sr = oracle::log_uniform(g, 1e-2, 1e6);
      const double rd = oracle::log_uniform(g, 1e-2, 1e6);
      const auto r = make_realization(sr, rd, sr * 0.3, rd * 0.7);
      for (double l : {1e-6, 0.01, 0.3, 0.77, 1.0}) {
        const auto a = sndr_pair(r, zero, l);
        const auto b = sndr_perfect(r, l);
        CHECK(rel(a.gamma_R, b.gamma_R) < 1e-13);
        CHECK(rel(a.gamma_D, b.gamma_D) < 1e-13);
      }
    }
  }

  TEST_CASE("SNDR agrees with independent power accounting") {
    std::mt19937_64 g(2);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
      const auto p = oracle::random_profile(g, 0.0, 0.175);
      const auto c = derive_constants(p);
      const double sr = oracle::log_uniform(g, 1e-1, 1e7);
      const double rd = oracle::log_uniform(g, 1e-1, 1e7);
      const auto r = make_realization(sr, rd, sr * frac(g), rd * frac(g));
      const double l = std::max(1e-6, frac(g));
      const auto a = sndr_pair(r, c, l);
      const auto o = oracle::power_accounting(r, p, l);
      CHECK(rel(a.gamma_R, o.relay) < 1e-12);
      CHECK(rel(a.gamma_D, o.destination) < 1e-12);
    }
  }

  TEST_CASE("printed jamming-distortion sign is measurably different") {
    const auto p = EvmProfile::uniform(0.175);
    const auto c = derive_constants(p);
    const auto r = dl_realization(1e4, 1e2, 16);
    const double printed = oracle::a_d_as_printed(r, p);
    const double used = destination_terms(r, c).a_d;
    CHECK(rel(printed, used) > 1e-4);
    const auto o = oracle::power_accounting(r, p, 0.2);
    const double with_printed = r.gamma_sr * 0.2 / (printed * 0.2 + destination_terms(r, c).b_d);
    CHECK(rel(sndr_pair(r, c, 0.2).gamma_D, o.destination) < 1e-12);
    CHECK(rel(with_printed, o.destination) > 1e-6);
  }

  TEST_CASE("destination terms") {
    const auto c = derive_constants(EvmProfile::uniform(0.1));
    const auto r = make_realization(1e3, 1e2, 1e2, 1e2);
    const auto t = destination_terms(r, c);
    CHECK(t.shared == doctest::Approx(c.tau2).epsilon(1e-14));
    CHECK(t.src_distortion == doctest::Approx(1e2 * 0.01 * 1.02));
    CHECK(t.jam_distortion == doctest::Approx(1e2 * 0.01 * 1.02));
    const auto e = exact_forms(r, c);
    CHECK(e.relay.gain == doctest::Approx(r.nu));
    CHECK(e.destination.gain == doctest::Approx(r.gamma_sr));
    CHECK(e.destination.slope == doctest::Approx(t.a_d));
    CHECK(e.destination.offset == doctest::Approx(t.b_d));
    for (double l : {0.1, 0.6}) {
      const auto s = sndr_pair(r, c, l);
      CHECK(s.gamma_R == doctest::Approx(e.relay(l)).epsilon(1e-14));
      CHECK(s.gamma_D == doctest::Approx(e.destination(l)).epsilon(1e-14));
    }
  }

  TEST_CASE("theta and coefficient examples") {
    const auto c = derive_constants(EvmProfile::uniform(0.1));
    CHECK(theta(c, LinkMode::downlink) == doctest::Approx(1.1177).epsilon(1e-4));
    CHECK(theta(c, LinkMode::uplink) == doctest::Approx(1.0100).epsilon(1e-4));
    const auto k = link_coefficients(dl_realization(1e10, 1e8, 16), c, LinkMode::downlink);
    CHECK(k.a == doctest::Approx(100.0));
    CHECK(k.c == doctest::Approx(1.0 / c.tau2).epsilon(1e-6));
    CHECK(1.0 / c.tau2 == doctest::Approx(33.11).epsilon(1e-3));
    REQUIRE(k.theta.has_value());

    const auto h = high_snr_coefficients(c, LinkMode::downlink, 100.0);
    CHECK(h.c == doctest::Approx(1.0 / c.tau2));
    CHECK(h.b == doctest::Approx(c.tau1 / (0.01 * 100.0)));

    const auto zero = derive_constants(EvmProfile{});
    CHECK_THROWS_AS(theta(zero, LinkMode::downlink), AsymptoticUndefined);
    CHECK_THROWS_AS(theta(zero, LinkMode::uplink), AsymptoticUndefined);
    CHECK_THROWS_AS(link_coefficients(dl_realization(10.0, 10.0, 2), zero, LinkMode::downlink),
                    DlCoefficientsUndefined);
    const auto ul = link_coefficients(ul_realization(10.0, 10.0, 2), zero, LinkMode::uplink);
    CHECK_FALSE(ul.theta.has_value());
    const EvmProfile tx_only{0.1, 0.1, 0.0, 0.1, 0.1};
    CHECK_THROWS_AS(link_coefficients(dl_realization(10.0, 10.0, 2), derive_constants(tx_only), LinkMode::downlink),
                    DlCoefficientsUndefined);
  }

  TEST_CASE("theta radicand stays positive over the practical range") {
    std::mt19937_64 g(3);
    for (int i = 0; i < 2000; ++i) {
      const auto c = derive_constants(oracle::random_profile(g, 0.0, 0.175));
      if (!(c.tau2 > 0.0)) continue;
      CHECK(c.tau1 > c.tau3);
      CHECK(std::isfinite(theta(c, LinkMode::downlink)));
    }
  }

  TEST_CASE("coefficient forms converge to the exact forms") {
    const auto c = derive_constants(EvmProfile::uniform(0.1));
    double prev_dl = 1.0, prev_ul = 1.0;
    // DL needs nu and gamma_rd large, UL needs nu small and gamma_sr large
    for (double scale : {1e2, 1e4, 1e6}) {
      const auto rd = dl_realization(scale * scale, scale, 1000000);
      const auto ru = ul_realization(scale, scale * scale, 1000000);
      const auto kd = link_coefficients(rd, c, LinkMode::downlink);
      const auto ku = link_coefficients(ru, c, LinkMode::uplink);
      double err_dl = 0.0, err_ul = 0.0;
      for (double l : {0.005, 0.05, 0.5, 0.95}) {
        const auto ed = sndr_pair(rd, c, l);
        const auto eu = sndr_pair(ru, c, l);
        err_dl = std::max({err_dl, rel(kd.relay()(l), ed.gamma_R), rel(kd.destination()(l), ed.gamma_D)});
        err_ul = std::max({err_ul, rel(ku.relay()(l), eu.gamma_R), rel(ku.destination()(l), eu.gamma_D)});
      }
      CHECK(err_dl < prev_dl);
      CHECK(err_ul < prev_ul);
      prev_dl = err_dl;
      prev_ul = err_ul;
    }
    CHECK(prev_dl < 1e-4);
    CHECK(prev_ul < 1e-4);
  }

  TEST_CASE("rational SNDRs increase with lambda") {
    std::mt19937_64 g(4);
    for (int i = 0; i < 200; ++i) {
      const LinkCoefficients dl{LinkMode::downlink, oracle::log_uniform(g, 1e-2, 1e3), oracle::log_uniform(g, 1e-3, 1e2),
                                oracle::log_uniform(g, 1e-2, 1e3), oracle::log_uniform(g, 1e-3, 1e2), {}};
      const LinkCoefficients ul{LinkMode::uplink, oracle::log_uniform(g, 1e-3, 1e2), oracle::log_uniform(g, 1e-2, 1e3),
                                oracle::log_uniform(g, 1e-3, 1e2), 0.0, {}};
      for (double l = 0.01; l < 0.98; l += 0.01) {
        CHECK(dl.relay()(l + 1e-3) > dl.relay()(l));
        CHECK(dl.destination()(l + 1e-3) > dl.destination()(l));
        CHECK(ul.relay()(l + 1e-3) > ul.relay()(l));
        CHECK(ul.destination()(l + 1e-3) > ul.destination()(l));
      }
    }
  }

  TEST_CASE("phi is quasi-concave in lambda") {
    std::mt19937_64 g(5);
    std::uniform_int_distribution<int> ant(1, 32);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
      const auto c = derive_constants(oracle::random_profile(g, 0.0, 0.175));
      const ScenarioConfig cfg{i % 2 ? LinkMode::uplink : LinkMode::downlink, ant(g), oracle::log_uniform(g, 1.0, 1e6),
                               1.0, 1.0};
      const auto r = sample_channel(cfg, 6, static_cast<std::uint64_t>(i));
      std::vector<double> f;
      for (int j = 1; j <= 2000; ++j) f.push_back(secrecy_outcome(r, c, j / 2000.0).phi);
      // a quasi-concave sequence rises then falls: at most one sign change from + to -
      int changes = 0;
      int last = 0;
      for (std::size_t j = 1; j < f.size(); ++j) {
        const double d = f[j] - f[j - 1];
        if (std::abs(d) <= 1e-13 * std::abs(f[j])) continue;
        const int s = d > 0 ? 1 : -1;
        if (last == -1 && s == 1) ++changes;
        last = s;
      }
      CHECK(changes == 0);
      ++checked;
    }
    CHECK(checked == 200);
  }

  TEST_CASE("secrecy outcome invariants") {
    const auto c = derive_constants(EvmProfile::uniform(0.1));
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> u(0.001, 1.0);
    for (int i = 0; i < 200; ++i) {
      const auto r = dl_realization(oracle::log_uniform(g, 1.0, 1e6), oracle::log_uniform(g, 1.0, 1e6), 8);
      const auto o = secrecy_outcome(r, c, u(g));
      CHECK(o.phi == doctest::Approx((1.0 + o.gamma_D) / (1.0 + o.gamma_R)).epsilon(1e-14));
      CHECK(o.rate_raw == doctest::Approx(0.5 * std::log2(o.phi)).epsilon(1e-12));
      CHECK(o.rate == std::max(o.rate_raw, 0.0));
      CHECK(o.gamma_R >= 0.0);
      CHECK(o.gamma_D >= 0.0);
    }
    const auto eq = make_outcome(0.4, {3.0, 3.0});
    CHECK(eq.phi == 1.0);
    CHECK(eq.rate_raw == 0.0);
    const auto neg = make_outcome(0.4, {5.0, 1.0});
    CHECK(neg.rate_raw < 0.0);
    CHECK(neg.rate == 0.0);
    const auto r = dl_realization(1e4, 1e3, 4);
    CHECK(secrecy_outcome(r, c, 1e-12).rate_raw == doctest::Approx(0.0).epsilon(1e-6));
  }

  TEST_CASE("phi at the high-SNR allocation approaches the ceiling") {
    const auto c = derive_constants(EvmProfile::uniform(0.1));
    const double ceiling = ceiling_phi(c, LinkMode::downlink);
    CHECK(ceiling == doctest::Approx(7.71).epsilon(1e-3));
    const auto r = dl_realization(1e9, 1e7, 1000000);
    const auto o = secrecy_outcome(r, c, theta(c, LinkMode::downlink) / r.nu);
    CHECK(o.phi == doctest::Approx(ceiling).epsilon(0.05));
  }

  TEST_CASE("domain errors") {
    const auto c = derive_constants(EvmProfile::uniform(0.1));
    const auto r = dl_realization(100.0, 10.0, 2);
    CHECK_THROWS_AS(sndr_pair(r, c, 0.0), std::domain_error);
    CHECK_THROWS_AS(sndr_pair(r, c, 1.01), std::domain_error);
    CHECK_THROWS_AS(sndr_pair(make_realization(1.0, 0.0, 1.0, 0.0), c, 0.5), std::domain_error);
  }
}
