#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "restframe/csv.hpp"
#include "restframe/dual.hpp"
#include "restframe/potential.hpp"

using namespace restframe;

TEST_SUITE("support") {
  TEST_CASE("dual arithmetic") {
    const Dual x = Dual::variable(2.0);
    const Dual f = x * x * x - 3.0 * x / (x + 1.0);
    // d/dx (x³ - 3x/(x+1)) = 3x² - 3/(x+1)²
    CHECK(f.v == doctest::Approx(8.0 - 2.0));
    CHECK(f.d == doctest::Approx(12.0 - 3.0 / 9.0));
    const Dual s = sqrt(Dual::variable(4.0));
    CHECK(s.v == 2.0);
    CHECK(s.d == 0.25);
    CHECK(Dual::constant(3.0).d == 0.0);
  }

  TEST_CASE("potentials") {
    const Potential c = Potential::coulomb(2.0);
    CHECK(c(4.0) == -1.0);
    CHECK(c.derivative(4.0) == doctest::Approx(2.0 * 0.5 / 8.0));
    const Potential o = Potential::oscillator(3.0);
    CHECK(o(2.0) == 18.0);
    CHECK(o.derivative(2.0) == 9.0);
    const Potential p = Potential::polynomial({1.0, -2.0, 0.5});
    CHECK(p(2.0) == doctest::Approx(1.0 - 4.0 + 2.0));
    CHECK(p.derivative(2.0) == doctest::Approx(-2.0 + 2.0));
    const Dual v = p(Dual::variable(2.0));
    CHECK(v.d == doctest::Approx(p.derivative(2.0)));
    CHECK(Potential::free()(7.0) == 0.0);

    const std::vector<double> samples{0.3, 1.0, 2.5, 7.0};
    for (const Potential& q : {c, o, p}) CHECK(q.consistency_residual(samples) < 1e-6);
    const Potential wrong("wrong", [](double s) { return s * s; }, [](double s) { return s; });
    CHECK(wrong.consistency_residual(samples) > 1e-2);
  }

  TEST_CASE("CSV number formatting round-trips") {
    for (double v : {0.0, 1.0, -2.5, 0.1, 1e-300, 6.02214076e23, std::nextafter(1.0, 2.0)}) {
      CHECK(std::stod(csv::format(v)) == v);
    }
    std::ostringstream os;
    csv::row(os, {1.0, 0.5, -3.0});
    CHECK(os.str() == "1,0.5,-3\n");
  }

  TEST_CASE("atomic write replaces the file") {
    const auto dir = std::filesystem::temp_directory_path() / "restframe_support_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.csv";
    csv::write_atomic(path, "a\n");
    csv::write_atomic(path, "b\n");
    std::ifstream in(path);
    std::string s;
    std::getline(in, s);
    CHECK(s == "b");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
    CHECK(files == 1);
    std::filesystem::remove_all(dir);
  }
}
