#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kahler/diastasis.hpp"
#include "kahler/error.hpp"
#include "kahler/metric.hpp"

using namespace kahler;
using namespace kahler::diastasis;
using C = Complex;

namespace {

Point random_point(std::mt19937_64& rng, int n, double rmin, double rmax) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> r(rmin, rmax);
  Point z(static_cast<std::size_t>(n));
  double s = 0.0;
  for (auto& c : z) {
    c = {g(rng), g(rng)};
    s += std::norm(c);
  }
  const double scale = r(rng) / std::sqrt(s);
  for (auto& c : z) c *= scale;
  return z;
}

Point near(std::mt19937_64& rng, const Point& q, double radius) {
  Point d = random_point(rng, static_cast<int>(q.size()), 0.0, radius);
  for (std::size_t i = 0; i < q.size(); ++i) d[i] += q[i];
  return d;
}

}  // namespace

TEST_CASE("flat diastasis is the squared distance") {
  const Point a{C(0.5, -1), C(2, 0.25)};
  const auto d = diastasis_from_potential(potentials::flat(2), a);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    const Point z = random_point(rng, 2, 0.0, 3.0);
    const double expected = std::norm(z[0] - a[0]) + std::norm(z[1] - a[1]);
    CHECK(std::abs(d(z) - expected) < 1e-12);
  }
}

TEST_CASE("closed simanca diastasis examples") {
  const Point q{C(1), C(0)};
  CHECK(std::abs(closed_diastasis_S(q, q)) < 1e-15);
  CHECK(std::abs(closed_diastasis_S(q, std::vector<C>{C(2), C(0)}) - 1.0) < 1e-15);
  CHECK_THROWS_AS((void)closed_diastasis_S(q, std::vector<C>{C(0), C(1)}), SingularEvaluationError);
  CHECK_THROWS_AS((void)closed_diastasis_S(q, std::vector<C>{C(0), C(0)}), SingularEvaluationError);
}

TEST_CASE("polarization reproduces the simanca closed form") {
  std::mt19937_64 rng(2);
  for (int n = 2; n <= 3; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const Point q = random_point(rng, n, 0.5, 1.8);
      const auto d = diastasis_from_potential(potentials::simanca(n), q);
      CHECK(std::abs(d(q)) < 1e-10);
      for (int k = 0; k < 5; ++k) {
        const Point z = near(rng, q, 0.3);
        CHECK(std::abs(d(z) - closed_diastasis_S(q, z)) < 1e-9);
      }
    }
  }
}

TEST_CASE("eguchi-hanson: log reading matches polarization, printed reading does not") {
  std::mt19937_64 rng(3);
  double printed_gap = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Point q = random_point(rng, 2, 0.5, 1.8);
    const auto d = diastasis_from_potential(potentials::eguchi_hanson(), q);
    for (int k = 0; k < 5; ++k) {
      const Point z = near(rng, q, 0.3);
      CHECK(std::abs(d(z) - closed_diastasis_EH(q, z)) < 1e-9);
      CHECK(std::abs(closed_diastasis_EH(q, z) - closed_diastasis_EH(z, q)) < 1e-9);
      printed_gap = std::max(printed_gap, std::abs(d(z) - closed_diastasis_EH_as_printed(q, z)));
    }
  }
  CHECK(printed_gap > 1e-2);
  const Point q{C(1), C(0)};
  const Point z{C(1.2), C(0)};
  CHECK(std::abs(closed_diastasis_EH(q, q)) < 1e-14);
  CHECK(std::abs(closed_diastasis_EH(q, z) - diastasis_from_potential(potentials::eguchi_hanson(), q)(z)) < 1e-9);
}

TEST_CASE("diastasis invariants") {
  std::mt19937_64 rng(4);
  for (const auto& phi : {potentials::simanca(2), potentials::eguchi_hanson(), potentials::fubini_study(2)}) {
    const Point p = random_point(rng, 2, 0.5, 1.5);
    const auto d = diastasis_from_potential(phi, p);
    const metric::CurvatureModel base(phi);
    const metric::CurvatureModel dm(d.as_potential());
    for (int k = 0; k < 20; ++k) {
      const Point z = near(rng, p, 0.3);
      CHECK((base.hessian(z) - dm.hessian(z)).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(d(z) > 0.0);
      CHECK(std::abs(d.value_complex(z).imag()) < 1e-12);
      const auto dz = diastasis_from_potential(phi, z);
      CHECK(std::abs(d(z) - dz(p)) < 1e-9);
    }
    for (const auto& c : sym::taylor_pure_coeffs(d.expr, sym::Assignment::diagonal(p), 4))
      CHECK(std::abs(c.value) < 1e-10);
  }
}

TEST_CASE("hereditary property") {
  using namespace sym;
  std::mt19937_64 rng(5);
  std::vector<Point> samples;
  for (int i = 0; i < 20; ++i) samples.push_back(random_point(rng, 1, 0.0, 0.5));

  const std::vector<Expr> identity{hol(0), hol(1)};
  const Point p2{C(0.3), C(0.4)};
  std::vector<Point> s2;
  for (int i = 0; i < 10; ++i) s2.push_back(random_point(rng, 2, 0.0, 1.0));
  CHECK(hereditary_check(potentials::flat(2), identity, potentials::flat(2), p2, s2) < 1e-12);

  const std::vector<Expr> slice{hol(0), constant(0.0)};
  CHECK(hereditary_check(potentials::flat(2), slice, potentials::flat(1), std::vector<C>{C(0)}, samples) < 1e-12);

  const C lambda(1.0);
  const std::vector<Expr> phi_map{constant(0.0), hol(0) + lambda};
  CHECK(hereditary_check(potentials::simanca(2), phi_map, potentials::flat(1), std::vector<C>{C(0)}, samples) < 1e-9);
}

TEST_CASE("proportionality factor") {
  const Point a{C(0), C(1.5, 0.5)};
  const Point b{C(0), C(2)};
  CHECK(std::abs(proportionality_factor(a, b) - 1.0) < 1e-15);
  CHECK(proportionality_factor(std::vector<C>{C(1), C(1)}, b) > 1.5);
}
