#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "restframe/dynamics.hpp"
#include "restframe/errors.hpp"

using namespace restframe;

namespace {

using State6 = std::array<double, 6>;

/// Reference solution from an adaptive Dormand-Prince 5(4) integrator.
State6 reference_flow(const RelativeState& s0, const Potential& V, double m1, double m2, double c, double tau) {
  namespace ode = boost::numeric::odeint;
  State6 y{s0.rho.x, s0.rho.y, s0.rho.z, s0.pi.x, s0.pi.y, s0.pi.z};
  auto rhs = [&](const State6& x, State6& dxdt, double) { dxdt = relative_vector_field(x, V, m1, m2, c); };
  auto stepper = ode::make_controlled(1e-14, 1e-14, ode::runge_kutta_dopri5<State6>());
  ode::integrate_adaptive(stepper, rhs, y, 0.0, tau, 1e-3);
  return y;
}

double distance(const RelativeState& s, const State6& y) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i) {
    d = std::max(d, std::abs(s.rho[i] - y[i]));
    d = std::max(d, std::abs(s.pi[i] - y[3 + i]));
  }
  return d;
}

EvolveConfig steps_of(double step, std::size_t n, std::size_t record = 1) {
  EvolveConfig cfg;
  cfg.step = step;
  cfg.steps = n;
  cfg.record_every = record;
  return cfg;
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("invariant mass") {
    const Potential V0 = Potential::free();
    CHECK(invariant_mass({{1, 2, 3}, {0, 0, 0}, 0}, V0, 1.2, 0.8, 3.0) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(invariant_mass({{0, 0, 0}, {1, 1, 1}, 0}, V0, 1, 1, 1) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(invariant_mass({{1, 0, 0}, {0, 0, 0}, 0}, Potential::oscillator(1.0), 1, 1, 1) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(invariant_mass({{0.1, 0, 0}, {}, 0}, Potential::coulomb(5.0), 1, 1, 1), DomainError);
  }

  TEST_CASE("free flow is a straight line") {
    const RelativeState s0{{1, 0, 0}, {0.3, 0.4, 0}, 0.0};
    const Trajectory t = evolve(s0, Potential::free(), 1.0, 2.0, 1.0, steps_of(1e-2, 500, 50));
    const double w1 = std::sqrt(1.0 + 0.25);
    const double w2 = std::sqrt(4.0 + 0.25);
    const Vec3 v = s0.pi * (1.0 / w1 + 1.0 / w2);
    for (const auto& s : t.samples) {
      CHECK(norm(s.pi - s0.pi) < 1e-15);
      CHECK(norm(s.rho - (s0.rho + v * s.tau)) < 1e-12);
    }
  }

  TEST_CASE("agrees with an adaptive Runge-Kutta reference") {
    const Potential V = Potential::polynomial({0.0, 1.0, 0.3});
    const RelativeState s0{{1.0, 0.2, -0.1}, {0.1, 0.8, 0.3}, 0.0};
    const State6 ref = reference_flow(s0, V, 1.0, 2.0, 1.0, 5.0);
    const double e1 = distance(evolve(s0, V, 1.0, 2.0, 1.0, steps_of(1e-2, 500, 500)).samples.back(), ref);
    const double e2 = distance(evolve(s0, V, 1.0, 2.0, 1.0, steps_of(5e-3, 1000, 1000)).samples.back(), ref);
    const double e3 = distance(evolve(s0, V, 1.0, 2.0, 1.0, steps_of(1e-3, 5000, 5000)).samples.back(), ref);
    CHECK(e3 < 1e-5);
    // second-order convergence
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
  }

  TEST_CASE("circular oscillator orbit keeps its radius over ten periods") {
    const RelativeState s0{{1, 0, 0}, {0, 1, 0}, 0.0};
    const double F = 2.0 / std::sqrt(3.0);  // 1/w1 + 1/w2 at H = 2
    const double period = 2.0 * std::numbers::pi / F;
    const auto steps = static_cast<std::size_t>(std::ceil(10.0 * period / 1e-3));
    const Trajectory t = evolve(s0, Potential::oscillator(1.0), 1.0, 1.0, 1.0, steps_of(1e-3, steps, 10));
    double worst = 0.0;
    for (const auto& s : t.samples) worst = std::max(worst, std::abs(norm(s.rho) - 1.0));
    CHECK(worst < 1e-6);
    const State6 ref = reference_flow(s0, Potential::oscillator(1.0), 1.0, 1.0, 1.0, t.samples.back().tau);
    CHECK(distance(t.samples.back(), ref) < 1e-4);
  }

  TEST_CASE("conservation and time reversal for the oscillator") {
    const Potential V = Potential::oscillator(1.0);
    const RelativeState s0{{1.0, 0.3, 0.0}, {0.2, 0.9, 0.4}, 0.0};
    const Trajectory t = evolve(s0, V, 1.0, 1.5, 1.0, steps_of(1e-3, 10000, 100));
    CHECK(t.max_mass_drift() < 1e-9);
    CHECK(t.max_spin_drift() < 1e-9);
    CHECK(t.samples.size() == 101);
    CHECK(t.samples.back().tau == doctest::Approx(10.0));

    RelativeState back = t.samples.back();
    back.pi = back.pi * -1.0;
    const RelativeState end = evolve(back, V, 1.0, 1.5, 1.0, steps_of(1e-3, 10000, 10000)).samples.back();
    CHECK(norm(end.rho - s0.rho) < 1e-9);
    CHECK(norm(end.pi + s0.pi) < 1e-9);
  }

  TEST_CASE("Newton failure and radicand guard") {
    const Potential V = Potential::oscillator(1.0);
    EvolveConfig cfg = steps_of(1e-1, 10);
    cfg.max_newton_iterations = 1;
    cfg.newton_tolerance = 1e-300;
    try {
      evolve({{1, 0, 0}, {0, 1, 0}, 0}, V, 1, 1, 1, cfg);
      FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
      CHECK(std::string(e.what()).find("step 0") != std::string::npos);
    }
    CHECK_THROWS_AS(evolve({{0.2, 0, 0}, {0, 0.1, 0}, 0}, Potential::coulomb(1.0), 1, 1, 1, steps_of(1e-3, 10)),
                    DomainError);
  }

  TEST_CASE("world-lines") {
    const Potential V = Potential::oscillator(1.0);
    const Trajectory t = evolve({{1, 0, 0}, {0, 0.7, 0}, 0}, V, 1.0, 1.0, 1.0, steps_of(1e-3, 3000, 30));
    CollectiveState cs;
    cs.z = {0.2, 0.1, -0.3};
    const WorldLinePair wl = worldlines(t, cs, V, 1.0, 1.0);
    REQUIRE(wl.tau.size() == t.samples.size());
    for (std::size_t i = 0; i < wl.tau.size(); ++i) {
      CHECK(wl.x1[i].t == doctest::Approx(wl.tau[i]).epsilon(1e-15));
      CHECK(wl.x2[i].t == doctest::Approx(wl.tau[i]).epsilon(1e-15));
      const FourVector Y = fokker_pryce(CollectiveState{cs.z, cs.h, t.Mc[i], t.S[i], 1.0}, wl.tau[i]);
      CHECK(norm((wl.x1[i] - Y).s + (wl.x2[i] - Y).s) < 1e-14);
      const FourVector d = wl.x1[i] - wl.x2[i];
      CHECK(minkowski_dot(d, d) == doctest::Approx(-norm2(t.samples[i].rho)).epsilon(1e-13));
    }
    CHECK(mass_shell_residual(wl, t, V, 1.0, 1.0) < 1e-10);
    CHECK(equal_time_check(wl, cs.h).max_time_gap == 0.0);

    CollectiveState boosted = cs;
    boosted.h = {0.6, 0, 0};
    CHECK(equal_time_check(worldlines(t, boosted, V, 1.0, 1.0), boosted.h).max_time_gap > 1e-3);
    boosted.h = {0, 0, 0.6};  // orthogonal to the orbit plane
    CHECK(equal_time_check(worldlines(t, boosted, V, 1.0, 1.0), boosted.h).max_time_gap < 1e-15);

    CollectiveState wrong_c = cs;
    wrong_c.c = 2.0;
    CHECK_THROWS_AS(worldlines(t, wrong_c, V, 1.0, 1.0), ValidationError);
  }

  TEST_CASE("mass shell with unequal masses and a boost") {
    const Potential V = Potential::polynomial({0.1, 0.8});
    const Trajectory t = evolve({{0.5, 0.5, 0}, {0, 0.4, 0.2}, 0}, V, 1.0, 3.0, 2.0, steps_of(1e-3, 2000, 20));
    CollectiveState cs;
    cs.h = {0.3, -0.4, 1.2};
    cs.c = 2.0;
    CHECK(mass_shell_residual(worldlines(t, cs, V, 1.0, 3.0), t, V, 1.0, 3.0) < 1e-10);
  }

  TEST_CASE("non-relativistic limit") {
    const std::array<double, 4> cs{10.0, 100.0, 1000.0, 10000.0};
    const NonrelTable still = nonrel_limit_check(Potential::free(), {{1, 0, 0}, {0, 0, 0}, 0}, 1, 1, cs);
    for (const auto& r : still.rows) CHECK(r.excess == 0.0);
    CHECK(std::isnan(still.decay_exponent));

    const NonrelTable t = nonrel_limit_check(Potential::free(), {{0, 0, 0}, {1, 0, 0}, 0}, 1, 1, cs);
    CHECK(t.rows.back().excess == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(t.decay_exponent == doctest::Approx(2.0).epsilon(0.05));

    const NonrelTable osc = nonrel_limit_check(Potential::oscillator(1.0), {{1, 0, 0}, {0, 1, 0}, 0}, 1, 2, cs);
    CHECK(std::abs(osc.decay_exponent - 2.0) < 0.1);
    CHECK_THROWS_AS(nonrel_limit_check(Potential::free(), {}, 1, 1, std::array<double, 0>{}), ValidationError);
  }

  TEST_CASE("rest energy excess avoids cancellation") {
    // H/(2μ) - H²/(8c²) Σ 1/m³ + ...
    const double H = 0.5;
    const double c = 1e6;
    const double expected = H / 1.0 - H * H / (8.0 * c * c) * 2.0;
    CHECK(rest_energy_excess(H, 1.0, 1.0, c) == doctest::Approx(expected).epsilon(1e-15));
  }

  TEST_CASE("CSV headers") {
    const Potential V = Potential::oscillator(1.0);
    const Trajectory t = evolve({{1, 0, 0}, {0, 1, 0}, 0}, V, 1, 1, 1, steps_of(1e-3, 10, 5));
    std::ostringstream a;
    write_trajectory_csv(a, t);
    CHECK(a.str().rfind("tau,rho_x,rho_y,rho_z,pi_x,pi_y,pi_z,Mc,Sx,Sy,Sz\n", 0) == 0);
    std::ostringstream b;
    write_worldlines_csv(b, worldlines(t, CollectiveState{}, V, 1, 1));
    CHECK(b.str().rfind("tau,x1_0,", 0) == 0);
  }
}
