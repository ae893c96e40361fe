#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kahler/error.hpp"
#include "kahler/finite_diff.hpp"
#include "kahler/metric.hpp"

using namespace kahler;
using namespace kahler::metric;
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

Matrix random_unitary(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(n, n);
}

fd::MatrixFn metric_fn(const KahlerPotential& phi) {
  auto model = CurvatureModel::cached(phi);
  return [model](std::span<const Complex> p) { return model->hessian(p); };
}

}  // namespace

TEST_CASE("flat calibration") {
  const auto phi = potentials::flat(3);
  const Point p{C(0.3, 1), C(-2), C(0, 0.5)};
  const auto s = CurvatureModel(phi).sample(p);
  CHECK((s.g - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(s.ricci.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(s.rho_c) < 1e-12);
  CHECK(std::abs(hsc_at(phi, p, std::vector<C>{C(1), C(2), C(0, 1)})) < 1e-12);
}

TEST_CASE("simanca metric at (1,0)") {
  const auto g = metric_at(potentials::simanca(2), std::vector<C>{C(1), C(0)});
  CHECK(std::abs(g(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(g(1, 1) - 2.0) < 1e-14);
  CHECK(std::abs(g(0, 1)) < 1e-14);
  CHECK_THROWS_AS((void)metric_at(potentials::simanca(2), std::vector<C>{C(0), C(0)}), DomainError);
  CHECK_THROWS_AS((void)metric_at(potentials::simanca(2), std::vector<C>{C(1)}), DomainError);
}

TEST_CASE("fubini-study calibration") {
  const auto fs1 = potentials::fubini_study(1);
  const Point zero{C(0)};
  CHECK(std::abs(metric_at(fs1, zero)(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(ricci_at(fs1, zero)(0, 0) - 2.0) < 1e-14);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Point w = random_point(rng, 1, 0.0, 2.0);
    CHECK(std::abs(scalar_trace(fs1, w) - 2.0) < 1e-12);
  }
  for (int m = 1; m <= 3; ++m) {
    const auto fs = potentials::fubini_study(m);
    const CurvatureModel model(fs);
    for (int i = 0; i < 20; ++i) {
      const Point w = random_point(rng, m, 0.0, 2.0);
      const Point v = random_point(rng, m, 0.5, 1.0);
      CHECK(model.sample(w).einstein_residual(2.0 * (m + 1)) < 1e-9);
      CHECK(std::abs(model.hsc(w, v) - 4.0) < 1e-8);
      std::vector<C> v2(v);
      for (auto& c : v2) c *= 2.0;
      CHECK(std::abs(model.hsc(w, v2) - model.hsc(w, v)) < 1e-12);
    }
  }
}

TEST_CASE("ricci routes agree") {
  std::mt19937_64 rng(4);
  for (const auto& phi : {potentials::simanca(2), potentials::simanca(3), potentials::eguchi_hanson()}) {
    const CurvatureModel model(phi);
    for (int i = 0; i < 10; ++i) {
      const Point z = random_point(rng, phi.n, 0.2, 2.0);
      CHECK((model.ricci(z) - model.ricci_trace_identity(z)).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
  // n = 4 goes through the trace identity; compare with the FS Einstein law
  const CurvatureModel fs4(potentials::fubini_study(4));
  const Point w = random_point(rng, 4, 0.2, 1.5);
  CHECK(fs4.sample(w).einstein_residual(10.0) < 1e-9);
}

TEST_CASE("hermiticity and reality") {
  std::mt19937_64 rng(6);
  for (const auto& phi : {potentials::simanca(2), potentials::simanca(3), potentials::eguchi_hanson()}) {
    const CurvatureModel model(phi);
    for (int i = 0; i < 20; ++i) {
      const Point z = random_point(rng, phi.n, 0.2, 2.0);
      const auto s = model.sample(z);
      CHECK(hermitian_defect(s.g) < 1e-10);
      CHECK(hermitian_defect(s.ricci) < 1e-10);
      CHECK(s.det_g > 0.0);
      CHECK(std::abs(model.scalar_trace_complex(z).imag()) < 1e-10);
    }
  }
}

TEST_CASE("eguchi-hanson is ricci flat, simanca n=2 is scalar flat") {
  std::mt19937_64 rng(8);
  const CurvatureModel eh(potentials::eguchi_hanson());
  const CurvatureModel s2(potentials::simanca(2));
  double max_ric = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Point z = random_point(rng, 2, 0.2, 2.0);
    CHECK(eh.ricci(z).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(s2.scalar_trace(z)) < 1e-8);
    max_ric = std::max(max_ric, s2.ricci(z).cwiseAbs().maxCoeff());
  }
  CHECK(max_ric > 1e-3);
}

TEST_CASE("unitary invariance") {
  std::mt19937_64 rng(9);
  for (const auto& phi : {potentials::simanca(2), potentials::simanca(3), potentials::eguchi_hanson()}) {
    const CurvatureModel model(phi);
    for (int i = 0; i < 10; ++i) {
      const Matrix u = random_unitary(rng, phi.n);
      const Point z = random_point(rng, phi.n, 0.2, 2.0);
      Eigen::VectorXcd zv(phi.n);
      for (int k = 0; k < phi.n; ++k) zv(k) = z[static_cast<std::size_t>(k)];
      const Eigen::VectorXcd uz = u * zv;
      const Point uzp(uz.data(), uz.data() + uz.size());
      const auto a = model.sample(z);
      const auto b = model.sample(uzp);
      // g(Uz) transported: U^T g(Uz) conj(U) = g(z)
      CHECK((u.transpose() * b.g * u.conjugate() - a.g).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((u.transpose() * b.ricci * u.conjugate() - a.ricci).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(std::abs(a.rho_c - b.rho_c) < 1e-9);
    }
  }
}

TEST_CASE("finite-difference cross-validation of curvature") {
  std::mt19937_64 rng(10);
  for (const auto& phi : {potentials::simanca(2), potentials::eguchi_hanson(), potentials::fubini_study(2)}) {
    const CurvatureModel model(phi);
    const auto g = metric_fn(phi);
    for (int i = 0; i < 5; ++i) {
      const Point z = random_point(rng, phi.n, 0.3, 1.8);
      const Point v = random_point(rng, phi.n, 1.0, 1.0);
      CHECK(fd::relative_error(model.ricci(z), fd::ricci(g, z, 1e-4)) < 1e-5);
      CHECK(fd::relative_error(C(model.hsc(z, v)), C(fd::hsc(g, z, v, 1e-4))) < 1e-5);
    }
  }
}

TEST_CASE("levi form and monge-ampere") {
  const Point p{C(0.3), C(-1, 1)};
  CHECK(std::abs(levi_min_eig(sym::norm_squared(2), 2, p) - 1.0) < 1e-14);
  const auto re_z1 = 0.5 * (sym::hol(0) + sym::antihol(0));
  CHECK(std::abs(levi_min_eig(re_z1, 2, p)) < 1e-14);
  CHECK(levi_min_eig(potentials::eguchi_hanson_psi(std::vector<C>{C(1), C(0)}), 2, std::vector<C>{C(1), C(0)}) >
        1e-6);

  CHECK(monge_ampere_residual(sym::norm_squared(2), 2, 0.0, p) < 1e-14);
  const auto fs = potentials::fubini_study(2).expr;
  CHECK(monge_ampere_residual(fs, 2, 6.0, p) < 1e-12);
  CHECK(monge_ampere_residual(fs, 2, 6.1, p) > 1e-3);
}

TEST_CASE("pullback") {
  using namespace sym;
  const auto id = potentials::flat(2);
  const std::vector<Expr> identity{hol(0), hol(1)};
  CHECK(pullback(id, identity, 2).expr == norm_squared(2));

  // Phi(z) = (z + lambda) e lands on a flat line of the Simanca metric
  const C lambda(0.4, 0.2);
  const C e0(0.6, 0.0);
  const C e1(0.0, 0.8);
  const std::vector<Expr> phi_map{(hol(0) + lambda) * e0, (hol(0) + lambda) * e1};
  const auto pulled = pullback(potentials::simanca(2), phi_map, 1);
  for (double x : {-0.2, 0.1, 0.7, 1.3})
    CHECK(std::abs(metric_at(pulled, std::vector<C>{C(x, 0.3)})(0, 0) - 1.0) < 1e-10);
  CHECK_THROWS_AS((void)metric_at(pulled, std::vector<C>{-lambda}), DomainError);

  // FS pulled back by w -> w^2, compared against finite differences
  const std::vector<Expr> square{hol(0) * hol(0)};
  const auto fs_sq = pullback(potentials::fubini_study(1), square, 1);
  const Point w{C(1, 0)};
  const auto exact = metric_at(fs_sq, w)(0, 0);
  CHECK(std::abs(exact - 1.0) < 1e-12);  // 4|w|^2 / (1+|w|^4)^2 at |w| = 1
  auto prog = std::make_shared<Program>(fs_sq.expr);
  const fd::Fn f = [prog](std::span<const Complex> z) { return prog->eval1(Assignment::diagonal(z)); };
  CHECK(fd::relative_error(exact, fd::d_hol_anti(f, w, 0, 0, 1e-4)) < 1e-6);

  const std::vector<Expr> bad{antihol(0), hol(0)};
  CHECK_THROWS_AS((void)pullback(potentials::flat(2), bad, 1), ConstructionError);
}

TEST_CASE("non positive definite potential is rejected") {
  const KahlerPotential neg{-sym::norm_squared(2), 2, {DomainKind::Whole}, MetricLabel::Custom, "negative"};
  CHECK_THROWS_AS((void)metric_at(neg, std::vector<C>{C(1), C(0)}), NotPositiveDefiniteError);
}
