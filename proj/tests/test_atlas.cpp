#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kahler/atlas.hpp"
#include "kahler/error.hpp"
#include "kahler/metric.hpp"

using namespace kahler;
using namespace kahler::atlas;
using C = Complex;

namespace {

double dist(const Point& a, const Point& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Point normalized(Point t) { return normalize_homogeneous(t); }

Point random_chart_point(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.3, 1.5);
  std::uniform_real_distribution<double> ph(0.0, 6.283185307179586);
  Point w(static_cast<std::size_t>(n));
  for (auto& c : w) c = std::polar(u(rng), ph(rng));
  return w;
}

}  // namespace

TEST_CASE("chart inverse examples") {
  auto p = chart_to_total({1, {C(1), C(0)}});
  CHECK(dist(p.z(), {C(1), C(0)}) == 0.0);
  CHECK(dist(p.t(), {C(1), C(0)}) < 1e-15);
  CHECK_FALSE(p.on_exceptional());

  auto h = chart_to_total({1, {C(0), C(5)}});
  CHECK(h.on_exceptional());
  CHECK(dist(h.t(), normalized({C(1), C(5)})) < 1e-15);

  auto q = chart_to_total({2, {C(2), C(3), C(4)}});
  CHECK(dist(q.z(), {C(6), C(3), C(12)}) < 1e-14);
  CHECK(dist(q.t(), normalized({C(2), C(1), C(4)})) < 1e-15);
}

TEST_CASE("chart maps") {
  auto p = BlowupPoint::make({C(1), C(0)}, {C(1), C(0)});
  CHECK(dist(total_to_chart(p, 1).w, {C(1), C(0)}) == 0.0);

  auto h = BlowupPoint::make({C(0), C(0)}, {C(0), C(1)});
  CHECK_THROWS_AS((void)total_to_chart(h, 1), ChartDomainError);

  auto q = BlowupPoint::make({C(6), C(3), C(12)}, {C(2), C(1), C(4)});
  CHECK(dist(total_to_chart(q, 2).w, {C(2), C(3), C(4)}) < 1e-14);
  CHECK_THROWS_AS((void)total_to_chart(q, 4), ChartDomainError);
}

TEST_CASE("incidence and normalization") {
  CHECK_THROWS_AS((void)BlowupPoint::make({C(1), C(1)}, {C(1), C(0)}), DomainError);
  CHECK_THROWS_AS((void)BlowupPoint::make({C(0), C(0)}, {C(0), C(0)}), DomainError);
  auto p = BlowupPoint::make({C(0, 2), C(0, 4)}, {C(0, 1), C(0, 2)});
  CHECK(std::abs(p.t()[0].imag()) < 1e-15);
  CHECK(p.t()[0].real() > 0.0);
  CHECK(std::abs(std::norm(p.t()[0]) + std::norm(p.t()[1]) - 1.0) < 1e-15);
}

TEST_CASE("projection") {
  auto p = unproj(std::vector<C>{C(1), C(0)});
  CHECK(dist(p.z(), {C(1), C(0)}) == 0.0);
  CHECK(dist(p.t(), {C(1), C(0)}) == 0.0);
  const Point z{C(0, 3), C(4)};
  CHECK(dist(proj(unproj(z)), z) == 0.0);
  CHECK_THROWS_AS((void)unproj(std::vector<C>{C(0), C(0)}), ExceptionalDivisorError);
  CHECK_THROWS_AS((void)proj(chart_to_total({1, {C(0), C(2)}})), ExceptionalDivisorError);
}

TEST_CASE("transition examples") {
  CHECK(dist(transition({1, {C(1), C(1)}}, 2).w, {C(1), C(1)}) < 1e-15);
  CHECK(dist(transition({1, {C(1), C(2)}}, 2).w, {C(0.5), C(2)}) < 1e-15);
  CHECK(dist(transition({1, {C(0.3), C(2)}}, 1).w, {C(0.3), C(2)}) == 0.0);
  CHECK_THROWS_AS((void)transition({1, {C(1), C(0)}}, 2), ChartDomainError);
}

TEST_CASE("atlas consistency at random points") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    const Point w = random_chart_point(rng, n);
    const int j = 1 + trial % n;
    const int k = 1 + (trial + 1) % n;
    const int l = 1 + (trial + 2) % n;
    ChartPoint p{j, w};
    CHECK(dist(total_to_chart(chart_to_total(p), j).w, w) < 1e-12);
    const auto jk_kl = transition(transition(p, k), l);
    const auto jl = transition(p, l);
    CHECK(dist(jk_kl.w, jl.w) < 1e-10);

    // the symbolic transition agrees with the numeric one
    const auto tm = transition_map(n, j, k);
    const sym::Program prog(tm);
    const auto v = prog.eval(sym::Assignment::diagonal(w));
    CHECK(dist(v, transition(p, k).w) < 1e-12);
  }
}

TEST_CASE("chart potentials") {
  const auto s1 = chart_potential(MetricKind::Simanca, 1, 2);
  CHECK(std::abs(sym::eval(s1.expr, sym::Assignment::diagonal(std::vector<C>{C(1), C(0)})) - 1.0) < 1e-15);
  CHECK_THROWS_AS((void)chart_potential(MetricKind::EguchiHanson, 1, 3), ConstructionError);

  std::mt19937_64 rng(11);
  for (int n = 2; n <= 4; ++n) {
    for (int j = 1; j <= n; ++j) {
      const auto h = restrict_to_exceptional(chart_potential(MetricKind::Simanca, j, n));
      CHECK(h.n == n - 1);
      for (int trial = 0; trial < 5; ++trial) {
        const Point w = random_chart_point(rng, n - 1);
        double r = 0.0;
        for (C c : w) r += std::norm(c);
        CHECK(std::abs(sym::eval(h.expr, sym::Assignment::diagonal(w)) - std::log(1.0 + r)) < 1e-13);
      }
    }
  }
  for (int j = 1; j <= 2; ++j) {
    const auto h = restrict_to_exceptional(chart_potential(MetricKind::EguchiHanson, j, 2));
    const Point w{C(0.4, -0.7)};
    CHECK(std::abs(sym::eval(h.expr, sym::Assignment::diagonal(w)) -
                   (1.0 + std::log((1.0 + std::norm(w[0])) / 2.0))) < 1e-14);
  }
}

TEST_CASE("chart potentials agree on overlaps up to pluriharmonic terms") {
  std::mt19937_64 rng(13);
  for (auto kind : {MetricKind::Simanca, MetricKind::EguchiHanson}) {
    const int n = 2;
    for (int trial = 0; trial < 50; ++trial) {
      const Point w = random_chart_point(rng, n);
      const int j = 1 + trial % 2;
      const int k = 3 - j;
      const auto pj = chart_potential(kind, j, n);
      const auto pk = chart_potential(kind, k, n);
      const auto pulled = metric::pullback(pk, transition_map(n, j, k), n);
      const auto gj = metric::CurvatureModel(pj).hessian(w);
      const auto gk = metric::CurvatureModel(pulled).hessian(w);
      CHECK((gj - gk).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("chart potentials pulled back through the projection match the global ones") {
  std::mt19937_64 rng(17);
  const KahlerPotential global[] = {potentials::simanca(2), potentials::eguchi_hanson()};
  const MetricKind kinds[] = {MetricKind::Simanca, MetricKind::EguchiHanson};
  for (int m = 0; m < 2; ++m) {
    for (int trial = 0; trial < 20; ++trial) {
      const Point z = random_chart_point(rng, 2);
      const int j = 1 + trial % 2;
      const auto pulled = metric::pullback(chart_potential(kinds[m], j, 2), chart_of_projection(2, j), 2);
      const auto a = metric::CurvatureModel(pulled).hessian(z);
      const auto b = metric::CurvatureModel(global[m]).hessian(z);
      CHECK((a - b).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}
