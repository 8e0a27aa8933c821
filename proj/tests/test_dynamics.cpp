#include <doctest.h>

#include <cmath>

#include "sgi/dynamics.hpp"

using namespace sgi;
using constants::gauss;
using constants::gauss_per_nm;
using constants::gauss_per_um;
using constants::hbar;
using constants::pi;

namespace {

NDParams test_nd(double d = 1e-9, double alpha = pi / 4.0) {
  return NDParams::make(25e-9, 3510.0, d, alpha);
}

FieldConfig ideal_field(const NDParams& nd, double b_grad = 0.2 * gauss_per_nm) {
  FieldConfig cfg;
  cfg.b0 = 10.0 * gauss;
  cfg.theta0 = preparation_bias_angle(nd.nv_angle);
  cfg.b_grad = b_grad;
  return cfg;
}

PhaseState aligned_start(const NDParams& nd, const FieldConfig& cfg, double dtheta = 0.0) {
  PhaseState s;
  s.theta = cfg.theta0 - nd.nv_angle + dtheta;
  return s;
}

}  // namespace

TEST_CASE("accelerations: magnetically insensitive state") {
  const NDParams nd = test_nd();
  const FieldConfig cfg = ideal_field(nd);
  const Accelerations a = accelerations({1e-9, -2e-9, 0.3, 0.0, 0.0, 0.0},
                                        SpinLabel::zero, nd, NVParams{}, cfg);
  CHECK(a.ax == 0.0);
  CHECK(a.ay == 0.0);
  CHECK(a.atheta == 0.0);
}

TEST_CASE("accelerations: test-case magnitude 1.6 m/s^2 at 198 G/um") {
  const NDParams nd = test_nd(0.0, 0.0);
  NVParams nv;
  FieldConfig cfg;
  cfg.b0 = 10.0 * gauss;
  cfg.theta0 = 0.0;
  cfg.b_grad = 198.0 * gauss_per_um;
  const Accelerations a =
      accelerations(aligned_start(nd, cfg), SpinLabel::minus, nd, nv, cfg);
  CHECK(std::hypot(a.ax, a.ay) == doctest::Approx(1.6).epsilon(0.02));
  // |-> is pulled along the axial-field gradient, +xi here
  CHECK(a.ax > 0.0);
}

TEST_CASE("accelerations: diamagnetic term ~0.01 m/s^2 per gauss") {
  NDParams nd = test_nd(0.0, 0.0);
  nd.diamagnetic_enabled = true;
  FieldConfig cfg;
  cfg.b0 = 1.0 * gauss;
  cfg.theta0 = 0.0;
  cfg.b_grad = 198.0 * gauss_per_um;
  const Accelerations with_dia =
      accelerations(aligned_start(nd, cfg), SpinLabel::zero, nd, NVParams{}, cfg);
  // spin-0 leaves only the diamagnetic part; field at the origin is 1 G
  CHECK(std::hypot(with_dia.ax, with_dia.ay) == doctest::Approx(0.01).epsilon(0.10));
}

TEST_CASE("integrate: harmonic libration against the closed form") {
  const NDParams nd = test_nd(0.0, 0.0);
  NVParams nv;
  FieldConfig cfg;
  cfg.b0 = 10.0 * gauss;
  cfg.theta0 = 0.0;
  cfg.b_grad = 0.0;
  const double omega = std::sqrt(nv.mu * cfg.b0 / nd.inertia);
  const double amp = 1e-4;  // small angle: harmonic to ~amp^2

  PhaseState s0 = aligned_start(nd, cfg, amp);
  const double period = constants::two_pi / omega;
  const Trajectory tr = integrate(s0, SpinLabel::minus, period, nd, nv, cfg,
                                  period / 40000, {}, 0.0, 0);
  // theta(t) = theta0 + amp cos(omega t); after one period back to start
  CHECK(tr.final_state.theta == doctest::Approx(s0.theta).epsilon(1e-8));
  CHECK(std::abs(tr.final_state.theta_dot) < 1e-4 * amp * omega);

  // quarter period: theta crosses the trap center
  const Trajectory quarter = integrate(s0, SpinLabel::minus, period / 4.0, nd, nv, cfg,
                                       period / 40000, {}, 0.0, 0);
  CHECK(quarter.final_state.theta - (cfg.theta0 - nd.nv_angle) ==
        doctest::Approx(0.0).epsilon(1e-8));
  CHECK(quarter.final_state.theta_dot == doctest::Approx(-amp * omega).epsilon(1e-6));
}

TEST_CASE("integrate: free state moves in a straight line") {
  const NDParams nd = test_nd();
  FieldConfig cfg;
  cfg.b0 = 0.0;
  cfg.b_grad = 0.0;
  PhaseState s0;
  s0.vx = 1e-3;
  s0.vy = -2e-3;
  s0.theta_dot = 50.0;
  const Trajectory tr =
      integrate(s0, SpinLabel::zero, 1e-4, nd, NVParams{}, cfg, 1e-6, {}, 0.0, 0);
  CHECK(tr.final_state.x == doctest::Approx(1e-3 * 1e-4).epsilon(1e-12));
  CHECK(tr.final_state.y == doctest::Approx(-2e-3 * 1e-4).epsilon(1e-12));
  CHECK(tr.final_state.theta == doctest::Approx(50.0 * 1e-4).epsilon(1e-12));
  CHECK(tr.final_state.theta_dot == doctest::Approx(50.0));
}

TEST_CASE("integrate: RK4 convergence order") {
  // a full libration period accumulates enough truncation error to sit well
  // above the rounding floor at these step counts
  const NDParams nd = test_nd(0.0, 0.0);
  NVParams nv;
  FieldConfig cfg;
  cfg.b0 = 10.0 * gauss;
  cfg.theta0 = 0.0;
  cfg.b_grad = 0.0;
  const double omega = std::sqrt(nv.mu * cfg.b0 / nd.inertia);
  // non-integer period count; at full periods the phase error superconverges
  const double duration = 1.37 * constants::two_pi / omega;
  PhaseState s0 = aligned_start(nd, cfg, 0.05);

  const auto final_theta = [&](double dt) {
    return integrate(s0, SpinLabel::minus, duration, nd, nv, cfg, dt, {}, 0.0, 0)
        .final_state.theta;
  };
  const double ref = final_theta(duration / 16384);
  const double e1 = std::abs(final_theta(duration / 512) - ref);
  const double e2 = std::abs(final_theta(duration / 1024) - ref);
  // halving dt should shrink the error by ~2^4
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 22.0);
}

TEST_CASE("integrate: step-size precondition") {
  const NDParams nd = test_nd();
  const FieldConfig cfg = ideal_field(nd);
  const PhaseState s0 = aligned_start(nd, cfg);
  // omega ~ 1.8e4 rad/s: the bound is ~2us, so 10us steps must be rejected
  CHECK_THROWS_AS(integrate(s0, SpinLabel::minus, 100e-6, nd, NVParams{}, cfg, 10e-6),
                  std::invalid_argument);
}

TEST_CASE("integrate: libration energy conservation over the sequence span") {
  const NDParams nd = test_nd(0.0, 0.0);
  NVParams nv;
  FieldConfig cfg;
  cfg.b0 = 10.0 * gauss;
  cfg.theta0 = 0.0;
  cfg.b_grad = 0.0;
  PhaseState s0 = aligned_start(nd, cfg, 0.02);
  const double t_total = 100e-6;  // 4T
  const Trajectory tr = integrate(s0, SpinLabel::minus, t_total, nd, nv, cfg,
                                  t_total / 80000, {}, 0.0, 400);

  const auto energy = [&](const PhaseState& s) {
    const double tp = s.theta + nd.nv_angle;
    return 0.5 * nd.inertia * s.theta_dot * s.theta_dot +
           nv.mu * cfg.b0 * (1.0 - std::cos(tp - cfg.theta0));
  };
  const double e0 = energy(s0);
  for (const auto& sample : tr.samples)
    CHECK(energy(sample.state) == doctest::Approx(e0).epsilon(1e-8));
}

TEST_CASE("run_sgi: ideal preparation is collinear and d-independent") {
  const double alpha = pi / 4.0;
  SgiResult ref;
  bool have_ref = false;
  for (double d : {0.0, 1e-9, 2e-9, 3e-9}) {
    const NDParams nd = test_nd(d, alpha);
    const FieldConfig cfg = ideal_field(nd);
    const SequenceConfig seq = SequenceConfig::standard(25e-6);
    const SgiResult res =
        run_sgi(aligned_start(nd, cfg), seq, nd, NVParams{}, cfg, {}, 2000, 10);
    const AxisExtents e1 = xi_zeta_extents(res.arm1, cfg.theta0);
    const AxisExtents e2 = xi_zeta_extents(res.arm2, cfg.theta0);
    CHECK(e1.zeta_max < 1e-3 * e1.xi_max);
    CHECK(e2.zeta_max < 1e-3 * e2.xi_max);
    if (!have_ref) {
      ref = res;
      have_ref = true;
    } else {
      CHECK(res.arm1.final_state.x == doctest::Approx(ref.arm1.final_state.x).epsilon(1e-10));
      CHECK(res.arm2.final_state.y == doctest::Approx(ref.arm2.final_state.y).epsilon(1e-10));
      CHECK(res.delta_phi == doctest::Approx(ref.delta_phi).epsilon(1e-7));
    }
  }
}

TEST_CASE("run_sgi: phase matches the 1D closed form") {
  const NDParams nd = test_nd();
  NVParams nv;
  for (double g : {0.0, 2.0}) {
    FieldConfig cfg = ideal_field(nd);
    cfg.g_xi = g;
    const SequenceConfig seq = SequenceConfig::standard(25e-6);
    const SgiResult res = run_sgi(aligned_start(nd, cfg), seq, nd, nv, cfg, {}, 2000, 0);
    const double a = nv.mu * cfg.b_grad / nd.mass;
    const double expected = phase_1d(a, a / 2.0, g, nd.mass, seq.t_pulse);
    CHECK(res.delta_phi == doctest::Approx(expected).epsilon(1e-8));
    // ideal recombination: the separation phase vanishes
    CHECK(std::abs(res.phi_separation) < 1e-6 * std::abs(expected));
  }
}

TEST_CASE("run_sgi: quadratic ramp cancels the phase") {
  const NDParams nd = test_nd(2e-9);
  NVParams nv;
  FieldConfig cfg = ideal_field(nd);
  cfg.g_xi = 2.0;
  cfg.ramp = RampPolicy{nv.mu * cfg.b_grad / (2.0 * nd.mass), cfg.g_xi};
  const SequenceConfig seq = SequenceConfig::standard(25e-6);
  const SgiResult res = run_sgi(aligned_start(nd, cfg), seq, nd, nv, cfg, {}, 2000, 0);
  CHECK(std::abs(res.delta_phi) < 1e-6);
}

TEST_CASE("run_sgi: identical spin sequences give exactly zero") {
  const NDParams nd = test_nd();
  const FieldConfig cfg = ideal_field(nd);
  SequenceConfig seq = SequenceConfig::standard(25e-6);
  seq.arm2 = seq.arm1;
  const SgiResult res =
      run_sgi(aligned_start(nd, cfg, 3e-3), seq, nd, NVParams{}, cfg, {}, 1000, 0);
  CHECK(res.delta_phi == 0.0);
  CHECK(res.arm1.final_state.x == res.arm2.final_state.x);
  CHECK(res.arm1.final_state.theta == res.arm2.final_state.theta);
}

TEST_CASE("run_sgi: swapping the arms negates the phase") {
  const NDParams nd = test_nd();
  FieldConfig cfg = ideal_field(nd);
  cfg.g_xi = 1.0;
  SequenceConfig seq = SequenceConfig::standard(25e-6);
  const PhaseState s0 = aligned_start(nd, cfg, 2e-3);
  const SgiResult fwd = run_sgi(s0, seq, nd, NVParams{}, cfg, {}, 1500, 0);
  std::swap(seq.arm1, seq.arm2);
  const SgiResult rev = run_sgi(s0, seq, nd, NVParams{}, cfg, {}, 1500, 0);
  CHECK(fwd.delta_phi == doctest::Approx(-rev.delta_phi).epsilon(1e-10));
}

TEST_CASE("run_sgi: non-optimal bias angle breaks the 1D motion") {
  const double alpha = pi / 4.0;
  const NDParams nd = test_nd(1e-9, alpha);

  FieldConfig good = ideal_field(nd);
  FieldConfig bad = good;
  bad.theta0 = 0.0;

  // NV aligned exactly with the bias: the theta0 = alpha/2 preparation stays
  // one-dimensional, theta0 = 0 does not (the offset torque never vanishes)
  const SgiResult res_good = run_sgi(aligned_start(nd, good),
                                     SequenceConfig::standard(25e-6), nd, NVParams{},
                                     good, {}, 2000, 10);
  const SgiResult res_bad = run_sgi(aligned_start(nd, bad),
                                    SequenceConfig::standard(25e-6), nd, NVParams{},
                                    bad, {}, 2000, 10);
  const AxisExtents eg = xi_zeta_extents(res_good.arm1, good.theta0);
  const AxisExtents eb = xi_zeta_extents(res_bad.arm1, bad.theta0);
  CHECK(eg.zeta_max / eg.xi_max < 1e-6);
  CHECK(eb.zeta_max / eb.xi_max > 1e-3);

  // with a 10 mrad offset the angular excursion also grows
  const SgiResult off_good =
      run_sgi(aligned_start(nd, good, 10e-3), SequenceConfig::standard(25e-6), nd,
              NVParams{}, good, {}, 2000, 10);
  const SgiResult off_bad =
      run_sgi(aligned_start(nd, bad, 10e-3), SequenceConfig::standard(25e-6), nd,
              NVParams{}, bad, {}, 2000, 10);
  const auto theta_range = [](const Trajectory& tr) {
    double lo = 1e9, hi = -1e9;
    for (const auto& s : tr.samples) {
      lo = std::min(lo, s.state.theta);
      hi = std::max(hi, s.state.theta);
    }
    return hi - lo;
  };
  CHECK(theta_range(off_bad.arm1) > theta_range(off_good.arm1));
}

TEST_CASE("phase_1d") {
  const NDParams nd = test_nd();
  NVParams nv;
  // zero net acceleration: no phase
  CHECK(phase_1d(1.0, -2.0, 2.0, nd.mass, 25e-6) == 0.0);

  // symmetric configuration: a_av = 0, the phase is pure gravity
  const double bp = 0.37 * gauss_per_nm;
  const double da = 2.0 * nv.mu * bp / nd.mass;
  const double val = phase_1d(da, 0.0, constants::g_earth, nd.mass, 25e-6);
  CHECK(val ==
        doctest::Approx(4.0 * nv.mu * bp * std::pow(25e-6, 3) * constants::g_earth / hbar));
  // the gravitational phase scale of the symmetric test case is ~4e3 rad
  CHECK(val == doctest::Approx(4.0e3).epsilon(0.05));
}

TEST_CASE("sequence validation") {
  SequenceConfig seq = SequenceConfig::standard(25e-6);
  CHECK_NOTHROW(seq.validate());
  CHECK(seq.total_duration() == doctest::Approx(100e-6));

  seq.arm1.push_back({SpinLabel::zero, 10e-6});
  CHECK_THROWS_AS(seq.validate(), std::invalid_argument);

  SequenceConfig bad;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  const SequenceConfig sym = SequenceConfig::standard(25e-6, true);
  CHECK(sym.arm1[1].spin == SpinLabel::plus);
  CHECK(sym.arm2[0].spin == SpinLabel::plus);

  const SequenceConfig delayed = SequenceConfig::standard(25e-6, false, 5e-6);
  CHECK(delayed.arm1.size() == 5);
  CHECK(delayed.total_duration() == doctest::Approx(110e-6));
  CHECK_NOTHROW(delayed.validate());
}

TEST_CASE("trajectory samples have strictly increasing timestamps") {
  const NDParams nd = test_nd();
  const FieldConfig cfg = ideal_field(nd);
  const SgiResult res = run_sgi(aligned_start(nd, cfg), SequenceConfig::standard(25e-6),
                                nd, NVParams{}, cfg, {}, 200, 7);
  REQUIRE(res.arm1.samples.size() > 10);
  for (std::size_t i = 1; i < res.arm1.samples.size(); ++i)
    CHECK(res.arm1.samples[i].t > res.arm1.samples[i - 1].t);
  CHECK(res.arm1.final_time == doctest::Approx(100e-6));
}
