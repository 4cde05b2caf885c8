#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "generators.hpp"
#include "restframe/errors.hpp"
#include "restframe/kinematics.hpp"

using namespace restframe;

namespace {
const double gamma06 = std::sqrt(1.36);
}

TEST_SUITE("kinematics") {
  TEST_CASE("identity boost gives the coordinate tetrad") {
    const Tetrad t = wigner_tetrad({0, 0, 0});
    CHECK(t.h_mu == FourVector{1.0, {0, 0, 0}});
    CHECK(t.eps[0] == FourVector{0.0, {1, 0, 0}});
    CHECK(t.eps[1] == FourVector{0.0, {0, 1, 0}});
    CHECK(t.eps[2] == FourVector{0.0, {0, 0, 1}});
  }

  TEST_CASE("tetrad at h = (0.6,0,0)") {
    const Tetrad t = wigner_tetrad({0.6, 0, 0});
    CHECK(t.eps[0].t == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(t.eps[0].s.x == doctest::Approx(1.16619037896906).epsilon(1e-13));
    CHECK(t.eps[0].s.y == 0.0);
    CHECK(minkowski_dot(t.eps[0], t.eps[0]) == doctest::Approx(-1.0).epsilon(1e-14));
  }

  TEST_CASE("tetrad orthonormality on random boosts") {
    auto r = gen::rng(7);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) worst = std::max(worst, wigner_tetrad(gen::ball(r, 10.0)).orthonormality_residual());
    CHECK(worst < 1e-12);
  }

  TEST_CASE("non-finite boost is rejected") {
    CHECK_THROWS_AS(wigner_tetrad({std::numeric_limits<double>::quiet_NaN(), 0, 0}), ValidationError);
    CollectiveState cs;
    cs.Mc = -1.0;
    CHECK_THROWS_AS(cs.validate(), ValidationError);
  }

  TEST_CASE("embedding") {
    CollectiveState cs;
    cs.z = {0.3, -0.2, 0.5};
    cs.h = {0.6, 0, 0};
    cs.S = {0.1, 0.2, 0.7};
    cs.Mc = 1.3;
    const FourVector Y = fokker_pryce(cs, 0.0);
    CHECK(embed(cs, 0.0, {0, 0, 0}) == Y);
    const FourVector e = embed(cs, 0.0, {1, 0, 0}) - Y;
    CHECK(e.t == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(e.s.x == doctest::Approx(gamma06).epsilon(1e-14));

    cs.h = {0, 0, 0};
    const FourVector e0 = embed(cs, 2.0, {1, 0, 0}) - fokker_pryce(cs, 2.0);
    CHECK(e0.t == 0.0);
    CHECK(e0.s.x == doctest::Approx(1.0));
  }

  TEST_CASE("Fokker-Pryce closed forms") {
    CollectiveState cs;
    cs.z = {1, 2, 3};
    cs.Mc = 2.0;
    const FourVector y0 = fokker_pryce(cs, 1.5);
    CHECK(y0.t == 1.5);
    CHECK(y0.s.x == doctest::Approx(0.5));
    CHECK(y0.s.z == doctest::Approx(1.5));

    CollectiveState b;
    b.h = {0.6, 0, 0};
    b.Mc = 1.0;
    const FourVector y = fokker_pryce(b, 1.0);
    CHECK(y.t == doctest::Approx(gamma06).epsilon(1e-15));
    CHECK(y.s.x == doctest::Approx(0.6).epsilon(1e-15));
  }

  TEST_CASE("canonical center and Moller center offsets") {
    CollectiveState cs;
    cs.S = {0, 0, 1};
    cs.h = {1, 0, 0};
    const FourVector Y = fokker_pryce(cs, 0.3);
    const double dx = norm((canonical_cm(cs, 0.3) - Y).s);
    const double dr = norm((moller_center(cs, 0.3) - Y).s);
    CHECK(dx == doctest::Approx(0.41421356237309515).epsilon(1e-14));
    CHECK(dr == doctest::Approx(0.7071067811865476).epsilon(1e-14));
    CHECK(dx < dr);

    cs.h = {0, 0, 2.5};  // S parallel to h
    CHECK(canonical_cm(cs, 0.3) == fokker_pryce(cs, 0.3));
    cs.h = {0, 0, 0};
    CHECK(moller_center(cs, 0.3) == fokker_pryce(cs, 0.3));
  }

  TEST_CASE("Moller radius") {
    CHECK(moller_radius(1.0, {0, 0, 0}) == 0.0);
    CHECK(moller_radius(2.0, {0, 1, 0}) == 0.5);
    CHECK_THROWS_AS(moller_radius(0.0, {0, 0, 1}), ValidationError);
  }

  TEST_CASE("tube scan along x") {
    CollectiveState cs;
    cs.S = {0, 0, 1};
    std::vector<Vec3> hs{{1, 0, 0}, {10, 0, 0}, {100, 0, 0}};
    const TubeReport rep = tube_scan(cs, hs);
    REQUIRE(rep.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      const double t = hs[i].x;
      CHECK(rep.rows[i].offset_xtilde == doctest::Approx(t / (1.0 + std::sqrt(1.0 + t * t))).epsilon(1e-14));
      CHECK(rep.rows[i].offset_R == doctest::Approx(t / std::sqrt(1.0 + t * t)).epsilon(1e-14));
    }
    CHECK(rep.rho == 1.0);
    CHECK(rep.min_strictness > 0.0);
    CHECK_THROWS_AS(tube_scan(cs, std::vector<Vec3>{}), ValidationError);
  }

  TEST_CASE("tube bound holds for random states") {
    auto r = gen::rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      CollectiveState cs;
      cs.S = gen::ball(r, 3.0);
      cs.Mc = gen::uniform(r, 0.2, 4.0);
      cs.z = gen::ball(r, 2.0);
      std::vector<Vec3> hs;
      for (int i = 0; i < 50; ++i) hs.push_back(gen::ball(r, 1e3));
      const TubeReport rep = tube_scan(cs, hs);
      for (const auto& row : rep.rows) {
        CHECK(row.offset_xtilde <= row.offset_R * (1 + 1e-14));
        CHECK(row.offset_R <= rep.rho * (1 + 1e-14));
      }
      CHECK(rep.betweenness_residual < 1e-12 * std::max(1.0, rep.rho));
      CHECK(rep.rho == moller_radius(cs.Mc, cs.S));
    }
  }

  TEST_CASE("S parallel to every sample gives zero offsets") {
    CollectiveState cs;
    cs.S = {0, 0, 2};
    std::vector<Vec3> hs{{0, 0, 1}, {0, 0, -5}, {0, 0, 40}};
    const TubeReport rep = tube_scan(cs, hs);
    CHECK(rep.sup() == 0.0);
  }

  TEST_CASE("tube CSV header") {
    CollectiveState cs;
    cs.S = {0, 0, 1};
    std::vector<Vec3> hs{{1, 0, 0}};
    std::ostringstream os;
    write_tube_csv(os, tube_scan(cs, hs));
    CHECK(os.str().rfind("hx,hy,hz,offset_xtilde,offset_R,rho\n", 0) == 0);
  }
}
