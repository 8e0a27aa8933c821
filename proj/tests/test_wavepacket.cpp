#include <doctest.h>

#include <cmath>

#include "sgi/wavepacket.hpp"

using namespace sgi;
using constants::gauss;
using constants::hbar;
using constants::pi;

namespace {

NDParams test_nd() { return NDParams::make(25e-9, 3510.0, 1e-9, pi / 4.0); }

}  // namespace

TEST_CASE("ground-state width is a fixed point of the width equation") {
  const NDParams nd = test_nd();
  NVParams nv;
  const double omega = std::sqrt(nv.mu * 10.0 * gauss / nd.inertia);
  const AngularWavepacket gs = AngularWavepacket::ground_state(omega, nd);
  CHECK(gs.sigma_theta == doctest::Approx(std::sqrt(hbar / (2.0 * nd.inertia * omega))));

  // ten periods in the confining potential: the width stays put
  const AngularSchedule hold{{SpinLabel::minus, 10.0 * constants::two_pi / omega, omega}};
  const auto hist = evolve_sigma_theta(gs, hold, nd, 40000);
  for (const auto& s : hist) {
    CHECK(std::abs(s.packet.sigma_theta / gs.sigma_theta - 1.0) < 1e-8);
  }
}

TEST_CASE("free expansion matches the Gaussian spreading law") {
  const NDParams nd = test_nd();
  NVParams nv;
  const double omega = std::sqrt(nv.mu * 10.0 * gauss / nd.inertia);
  const AngularWavepacket gs = AngularWavepacket::ground_state(omega, nd);
  const double t_total = 3.0 / omega;
  const AngularSchedule free_seg{{SpinLabel::zero, t_total, 0.0}};
  const auto hist = evolve_sigma_theta(gs, free_seg, nd, 20000);

  const double s0 = gs.sigma_theta;
  for (std::size_t i = 0; i < hist.size(); i += 1000) {
    const double t = hist[i].t;
    const double expect =
        s0 * std::sqrt(1.0 + std::pow(hbar * t / (2.0 * nd.inertia * s0 * s0), 2));
    CHECK(hist[i].packet.sigma_theta == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("overlap coherence closed form") {
  const NDParams nd = test_nd();
  const AngularWavepacket w1{7e-3, 0.0};

  // identical packets: full coherence
  CHECK(overlap_coherence(w1, w1, nd).c_theta == doctest::Approx(1.0).epsilon(1e-14));

  // sigma2 = 2 sigma1, equal chirps: (5/4)^(-1/2)
  const AngularWavepacket w2{14e-3, 0.0};
  CHECK(overlap_coherence(w1, w2, nd).c_theta ==
        doctest::Approx(1.0 / std::sqrt(1.25)).epsilon(1e-12));

  // symmetry and bounds
  std::vector<AngularWavepacket> packets = {
      {5e-3, 0.0}, {9e-3, 1.0}, {12e-3, -40.0}, {7e-3, 250.0}};
  for (const auto& a : packets) {
    for (const auto& b : packets) {
      const double cab = overlap_coherence(a, b, nd).c_theta;
      const double cba = overlap_coherence(b, a, nd).c_theta;
      CHECK(cab == doctest::Approx(cba).epsilon(1e-14));
      CHECK(cab > 0.0);
      CHECK(cab <= 1.0 + 1e-14);
    }
  }

  // width out of the small-angle domain is rejected
  CHECK_THROWS_AS(overlap_coherence({0.5, 0.0}, w1, nd), std::domain_error);
  CHECK_THROWS_AS(overlap_coherence({0.0, 0.0}, w1, nd), std::invalid_argument);
}

TEST_CASE("SGI width coherence depends only on omega T") {
  const NDParams nd = test_nd();
  const double omega = 1.8e4;
  const double t = 0.6 / omega;
  const double c1 = sgi_width_coherence(omega, t, nd, 3000).c_theta;
  // rescale T -> 2T, omega -> omega/2 with the same steps per segment
  const double c2 = sgi_width_coherence(omega / 2.0, 2.0 * t, nd, 3000).c_theta;
  CHECK(c1 == doctest::Approx(c2).epsilon(1e-6));
  CHECK(c1 > 0.0);
  CHECK(c1 <= 1.0);
}

TEST_CASE("SGI width coherence peaks at omega T = n pi") {
  const NDParams nd = test_nd();
  const double omega = 1.8e4;
  // at omega T = pi both arms return to the initial packet: C = 1
  const double c_pi = sgi_width_coherence(omega, pi / omega, nd, 4000).c_theta;
  CHECK(c_pi == doctest::Approx(1.0).epsilon(1e-6));
  // away from the resonance the overlap drops
  const double c_mid = sgi_width_coherence(omega, 0.6 * pi / omega, nd, 4000).c_theta;
  CHECK(c_mid < c_pi - 1e-3);
}

TEST_CASE("width collapse is reported") {
  const NDParams nd = test_nd();
  // far-from-stationary narrow packet in a strong trap with a crude grid
  AngularWavepacket w{1e-5, -10.0};
  const AngularSchedule seg{{SpinLabel::minus, 1.0, 2e5}};
  CHECK_THROWS_AS(evolve_sigma_theta(w, seg, nd, 10), std::runtime_error);
}

TEST_CASE("CoM width evolution") {
  const NDParams nd = test_nd();
  NVParams nv;
  FieldConfig cfg;
  cfg.b0 = 10.0 * gauss;
  cfg.b_grad = 0.2 * constants::gauss_per_nm;

  const double omega = std::sqrt(nv.mu * cfg.b0 / nd.inertia);
  const double t_total = 25e-6;
  const AngularWavepacket gs = AngularWavepacket::ground_state(omega, nd);
  const AngularSchedule hold{{SpinLabel::minus, t_total, omega}};
  const auto sigma_theta_hist = evolve_sigma_theta(gs, hold, nd, 4000);

  CoMWavepacket w0;
  w0.sigma_x = w0.sigma_y = 1e-10;

  SUBCASE("B' = 0 decouples into free spreading") {
    FieldConfig nograd = cfg;
    nograd.b_grad = 0.0;
    const auto hist = evolve_sigma_cm(w0, cfg.theta0, sigma_theta_hist, nd, nv, nograd,
                                      t_total, t_total / 4000);
    const double s0 = w0.sigma_x;
    const double expect =
        s0 * std::sqrt(1.0 + std::pow(hbar * t_total / (2.0 * nd.mass * s0 * s0), 2));
    CHECK(hist.back().packet.sigma_x == doctest::Approx(expect).epsilon(1e-7));
    CHECK(hist.back().packet.sigma_y == doctest::Approx(expect).epsilon(1e-7));
  }

  SUBCASE("coupled case: widths nondecreasing for theta' in the first quadrant") {
    const double theta_prime = pi / 8.0;
    const auto hist = evolve_sigma_cm(w0, theta_prime, sigma_theta_hist, nd, nv, cfg,
                                      t_total, t_total / 4000);
    for (std::size_t i = 1; i < hist.size(); ++i) {
      CHECK(hist[i].packet.sigma_x >= hist[i - 1].packet.sigma_x);
      CHECK(hist[i].packet.sigma_y >= hist[i - 1].packet.sigma_y);
    }
    // the coupling adds spread beyond free expansion
    FieldConfig nograd = cfg;
    nograd.b_grad = 0.0;
    const auto free_hist = evolve_sigma_cm(w0, theta_prime, sigma_theta_hist, nd, nv,
                                           nograd, t_total, t_total / 4000);
    CHECK(hist.back().packet.sigma_x > free_hist.back().packet.sigma_x);
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(evolve_sigma_cm({0.0, 1e-10, 0.0, 0.0}, 0.0, sigma_theta_hist, nd, nv,
                                    cfg, t_total, t_total / 100),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve_sigma_cm(w0, 0.0, {}, nd, nv, cfg, t_total, t_total / 100),
                    std::invalid_argument);
  }
}
