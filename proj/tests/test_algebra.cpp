#include <doctest.h>

#include <cmath>
#include <limits>

#include <json.hpp>

#include "generators.hpp"
#include "restframe/algebra.hpp"

using namespace restframe;

namespace {

PhaseFunction component(const PhaseVectorFunction& f, std::size_t i) {
  return [f, i](std::span<const Dual> q, std::span<const Dual> p) { return f(q, p)[i]; };
}

PhaseFunction coordinate(std::size_t i) {
  return [i](std::span<const Dual> q, std::span<const Dual>) { return q[i]; };
}

PhaseFunction momentum(std::size_t i) {
  return [i](std::span<const Dual>, std::span<const Dual> p) { return p[i]; };
}

std::vector<PhaseSpacePoint> surface_points(std::uint64_t seed, int n) {
  auto r = gen::rng(seed);
  std::vector<PhaseSpacePoint> out;
  for (int i = 0; i < n; ++i) out.push_back(random_internal_point_on_surface(r));
  return out;
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("layout names") {
    CHECK(layout_from_string("external") == Layout::external);
    CHECK(std::string(to_string(Layout::relative)) == "relative");
    CHECK_THROWS_AS(layout_from_string("polar"), ValidationError);
  }

  TEST_CASE("external generators at rest") {
    CollectiveState cs;
    cs.S = {0, 0, 1};
    cs.Mc = 1.7;
    const GeneratorSet g = external_generators(cs);
    CHECK(g.P == FourVector{1.7, {0, 0, 0}});
    CHECK(g.J == Vec3{0, 0, 1});
    CHECK(g.K == Vec3{0, 0, 0});

    CollectiveState d;
    d.z = {1, 0, 0};
    CHECK(external_generators(d).K == Vec3{-1, 0, 0});
  }

  TEST_CASE("external Casimirs on random states") {
    auto r = gen::rng(3);
    for (int i = 0; i < 200; ++i) {
      const CollectiveState cs = random_collective_state(r);
      const GeneratorSet g = external_generators(cs);
      CHECK(minkowski_dot(g.P, g.P) == doctest::Approx(cs.Mc * cs.Mc).epsilon(1e-12));
      const FourVector W = pauli_lubanski(g);
      const double w2 = -cs.Mc * cs.Mc * norm2(cs.S);
      const double scale = g.P.t * (norm(g.J) + norm(g.K)) + norm(cross(g.P.s, g.K));
      CHECK(std::abs(minkowski_dot(W, W) - w2) < 1e-12 * (1.0 + scale * scale));
    }
  }

  TEST_CASE("internal generators") {
    const Potential V0 = Potential::free();
    const Vec3 e1{0.3, -0.1, 0.2};
    const Vec3 e2{-0.4, 0.5, 0.1};
    const InternalGeneratorSet a = internal_generators(PhaseSpacePoint::internal(e1, {}, e2, {}), V0, 1.5, 2.5, 2.0);
    CHECK(a.Mc == doctest::Approx(8.0));
    CHECK(a.P_int == Vec3{0, 0, 0});
    CHECK(a.S == Vec3{0, 0, 0});
    const Vec3 k = (e1 * 1.5 + e2 * 2.5) * -2.0;
    CHECK(norm(a.K_int - k) < 1e-15);

    const Vec3 kap{std::sqrt(1.5), 0, 0};
    const InternalGeneratorSet b =
        internal_generators(PhaseSpacePoint::internal(e1, kap, e2, kap * -1.0), V0, 1.0, 1.0, 1.0);
    CHECK(b.Mc == doctest::Approx(2.0 * std::sqrt(2.5)).epsilon(1e-15));

    const Vec3 k1{0.2, 0.7, -0.3};
    const Vec3 k2{-0.5, 0.1, 0.9};
    const InternalGeneratorSet c = internal_generators(PhaseSpacePoint::internal(e1, k1, e1, k2), V0, 1.0, 1.0, 1.0);
    CHECK(norm(c.S - cross(e1, k1 + k2)) < 1e-15);
  }

  TEST_CASE("negative radicand names the particle") {
    const Potential V = Potential::coulomb(10.0);
    const auto pt = PhaseSpacePoint::internal({0.01, 0, 0}, {}, {0, 0, 0}, {});
    try {
      internal_generators(pt, V, 1.0, 1.0, 1.0);
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("particle 1") != std::string::npos);
    }
  }

  TEST_CASE("elementary brackets") {
    auto r = gen::rng(5);
    const PhaseSpacePoint pt = PhaseSpacePoint::external(random_collective_state(r), 0.4);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(poisson_bracket(coordinate(i), momentum(j), pt) == (i == j ? 1.0 : 0.0));
        CHECK(poisson_bracket(momentum(i), momentum(j), pt) == 0.0);
        CHECK(poisson_bracket(coordinate(i), coordinate(j), pt) == 0.0);
      }
    }
  }

  TEST_CASE("{K1, P1} = -P0, dual and central agree") {
    auto r = gen::rng(8);
    const CollectiveState cs = random_collective_state(r);
    const PhaseSpacePoint pt = PhaseSpacePoint::external(cs);
    const PhaseVectorFunction g = external_generator_function(cs.Mc);
    const double p0 = external_generators(cs).P.t;
    const double dual = poisson_bracket(component(g, 7), component(g, 1), pt, DiffMode::dual);
    const double central = poisson_bracket(component(g, 7), component(g, 1), pt, DiffMode::central);
    CHECK(dual == doctest::Approx(-p0).epsilon(1e-13));
    CHECK(central == doctest::Approx(-p0).epsilon(1e-6));
  }

  TEST_CASE("automatic mode falls back to central differences") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    PhaseVectorFunction f = [nan](std::span<const Dual> q, std::span<const Dual> p) {
      return std::vector<Dual>{Dual{q[0].v * p[0].v, nan}};
    };
    const PhaseSpacePoint pt = PhaseSpacePoint::relative({2.0, 0, 0}, {3.0, 0, 0});
    const Gradients g = gradients(f, pt, DiffMode::automatic);
    CHECK(g.used_fallback);
    CHECK(g.dq[0][0] == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(g.dp[0][0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK_THROWS_AS(gradients(f, pt, DiffMode::dual), NumericalError);
  }

  TEST_CASE("external closure") {
    auto r = gen::rng(42);
    std::vector<CollectiveState> states;
    for (int i = 0; i < 50; ++i) states.push_back(random_collective_state(r));
    const ClosureReport rep = verify_external_closure(states, DiffMode::dual);
    CHECK(rep.samples == 50);
    CHECK(rep.entries.size() >= 8);
    CHECK(rep.max_residual() < 1e-8);
    CHECK(verify_external_closure(states, DiffMode::central).max_residual() < 1e-5);
  }

  TEST_CASE("internal closure, free and oscillator") {
    const auto pts = surface_points(9, 50);
    CHECK(verify_internal_closure(pts, Potential::free(), 1.0, 2.0, 1.0).max_residual() < 1e-8);
    CHECK(verify_internal_closure(pts, Potential::oscillator(1.0), 1.0, 2.0, 1.0).max_residual() < 1e-6);
    CHECK(verify_internal_closure(pts, Potential::oscillator(1.0), 1.0, 2.0, 1.0, DiffMode::central).max_residual() <
          1e-6);
  }

  TEST_CASE("closure report JSON") {
    const auto pts = surface_points(10, 4);
    const ClosureReport rep = verify_internal_closure(pts, Potential::free(), 1.0, 1.0, 1.0);
    const auto j = nlohmann::json::parse(closure_report_json(rep));
    REQUIRE(j.is_array());
    for (const auto& e : j) {
      CHECK(e.contains("relation"));
      CHECK(e.contains("max_residual"));
      CHECK(e.contains("worst_point"));
    }
  }

  TEST_CASE("Mc commutes with the internal momentum and spin for any V") {
    const Potential V = Potential::polynomial({0.3, -0.5, 0.2, 0.05});
    const PhaseVectorFunction g = internal_generator_function(V, 1.3, 0.7, 1.1);
    auto r = gen::rng(12);
    for (int n = 0; n < 20; ++n) {
      const PhaseSpacePoint pt =
          PhaseSpacePoint::internal(gen::ball(r, 1.0), gen::ball(r, 1.0), gen::ball(r, 1.0), gen::ball(r, 1.0));
      const Gradients gr = gradients(g, pt);
      for (std::size_t i = 1; i <= 6; ++i) CHECK(std::abs(gr.bracket(0, i)) < 1e-12);
    }
  }

  TEST_CASE("rest-frame residuals") {
    const Potential V = Potential::oscillator(0.8);
    auto r = gen::rng(13);
    for (int n = 0; n < 20; ++n) {
      const PhaseSpacePoint pt = from_relative(gen::ball(r, 2.0), gen::ball(r, 2.0), 1.0, 3.0, V, 1.5);
      const ConstraintResiduals res = restframe_residuals(pt, V, 1.0, 3.0, 1.5);
      CHECK(res.momentum < 1e-12);
      CHECK(res.boost < 1e-10);
    }
    const Vec3 k{0.3, 0.4, 0};
    CHECK(restframe_residuals(PhaseSpacePoint::internal({}, k, {}, k), V, 1, 1, 1).momentum ==
          doctest::Approx(1.0));
    const Vec3 e{0.5, -0.2, 0.1};
    CHECK(restframe_residuals(PhaseSpacePoint::internal(e, k, e * -1.0, k * -1.0), V, 2, 2, 1).boost < 1e-15);
  }

  TEST_CASE("relative variables") {
    const Vec3 e{0.1, 0.2, 0.3};
    const Vec3 k{1.0, -2.0, 0.5};
    CHECK(to_relative(e, e, k, k, 1, 2).rho == Vec3{0, 0, 0});
    const RelativeVariables rv = to_relative({1, 0, 0}, {0, 1, 0}, k, k * -1.0, 1.5, 1.5);
    CHECK(norm(rv.pi - k) < 1e-15);
  }

  TEST_CASE("internal center of mass") {
    const Potential V0 = Potential::free();
    CHECK(internal_cm({1, 2, 3}, {0.5, 0, 0}, 1.4, 1.4, V0, 1.0) == Vec3{0, 0, 0});
    CHECK(internal_cm({0, 0, 0}, {0.5, 0, 0}, 2.0, 1.0, V0, 1.0) == Vec3{0, 0, 0});
    CHECK(norm(internal_cm({1, 0, 0}, {0, 0, 0}, 2.0, 1.0, V0, 1.0)) < 1e-16);
    const Vec3 eta = internal_cm({1, 0, 0}, {std::sqrt(3.0), 0, 0}, 2.0, 1.0, V0, 1.0);
    const double expected = (4.0 - std::sqrt(7.0)) / (3.0 * (std::sqrt(7.0) + 2.0));
    CHECK(eta.x == doctest::Approx(expected).epsilon(1e-14));
    CHECK(eta.x == doctest::Approx(0.09717).epsilon(1e-4));
  }

  TEST_CASE("relative canonicity through the bracket engine") {
    const double m1 = 1.3;
    const double m2 = 0.4;
    const double M = m1 + m2;
    for (const PhaseSpacePoint& pt : surface_points(14, 10)) {
      for (std::size_t i = 0; i < 3; ++i) {
        PhaseFunction rho = [i](std::span<const Dual> q, std::span<const Dual>) { return q[i] - q[3 + i]; };
        for (std::size_t j = 0; j < 3; ++j) {
          PhaseFunction pi = [j, m1, m2, M](std::span<const Dual>, std::span<const Dual> p) {
            return (m2 / M) * p[j] - (m1 / M) * p[3 + j];
          };
          CHECK(std::abs(poisson_bracket(rho, pi, pt) - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
      }
    }
  }

  TEST_CASE("phase-space point validation") {
    PhaseSpacePoint pt = PhaseSpacePoint::relative({1, 2, 3}, {4, 5, 6});
    CHECK_NOTHROW(pt.validate());
    pt.p[1] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(pt.validate(), ValidationError);
    pt = PhaseSpacePoint::relative({1, 2, 3}, {4, 5, 6});
    pt.layout = Layout::internal;
    CHECK_THROWS_AS(pt.validate(), ValidationError);
  }
}
