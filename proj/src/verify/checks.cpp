#include "verify/checks.hpp"

#include <cmath>

#include "kahler/atlas.hpp"
#include "kahler/diastasis.hpp"
#include "kahler/error.hpp"
#include "kahler/finite_diff.hpp"
#include "kahler/metric.hpp"

namespace kahler::verify::detail {

using namespace sym;
using metric::CurvatureModel;
using metric::Matrix;

namespace {

// Fixed thresholds for witnesses and negative controls; only the tiers are
// user-adjustable.
constexpr double kFlatnessWitness = 1e-2;
constexpr double kRicciWitness = 1e-3;
constexpr double kControlDeviation = 1e-3;
constexpr int kControlSamples = 10;

constexpr double kTwoPi = 6.283185307179586;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (Complex c : v) s += std::norm(c);
  return std::sqrt(s);
}

KahlerPotential perturbed(const KahlerPotential& phi, double eps) {
  const Expr r = norm_squared(phi.n);
  KahlerPotential out = phi;
  out.expr = phi.expr + eps * r * r;
  out.label = MetricLabel::Custom;
  out.name = phi.name + " + eps ||z||^4";
  return out;
}

KahlerPotential custom(Expr e, int n, std::string name) {
  return {e, n, {DomainKind::Whole}, MetricLabel::Custom, std::move(name)};
}

fd::Fn value_fn(Expr e) {
  auto prog = std::make_shared<const Program>(e);
  return [prog](std::span<const Complex> z) { return prog->eval1(Assignment::diagonal(z)); };
}

// One Richardson step on a central difference: cancels the h^2 term.
template <class F>
auto richardson(F f, double h) -> decltype(f(h)) {
  return (4.0 * f(0.5 * h) - f(h)) / 3.0;
}

fd::MatrixFn metric_fn(const KahlerPotential& phi) {
  auto model = CurvatureModel::cached(phi);
  return [model](std::span<const Complex> p) { return model->hessian(p); };
}

// ---------------------------------------------------------------------------

CheckReport eh_ricci_flat(const CheckSpec& self, const SuiteConfig& cfg) {
  const int n_samples = sample_count(cfg, self.default_samples);
  std::vector<ConditionAcc> c;
  c.emplace_back("ricci_max_entry", Compare::AtMost, cfg.tol.curvature);
  c.emplace_back("hsc_nonflat_witness", Compare::AtLeastSome, kFlatnessWitness);
  c.emplace_back("control_flat_ricci", Compare::AtMost, cfg.tol.curvature);
  c.emplace_back("control_flat_witness_absent", Compare::AtMost, kFlatnessWitness);
  c.emplace_back("control_perturbed_ricci", Compare::AtLeastSome, kControlDeviation);

  const auto eh = CurvatureModel::cached(potentials::eguchi_hanson());
  Sampler s(cfg.seed, self.id, "points");
  for (int i = 0; i < n_samples; ++i) {
    const Point z = s.annulus(2);
    const Point v = s.direction(2);
    c[0].add(max_abs(eh->ricci(z)), z);
    c[1].add(std::abs(eh->hsc(z, v)), z);
  }
  const auto flat = CurvatureModel::cached(potentials::flat(2));
  const auto pert = CurvatureModel::cached(perturbed(potentials::eguchi_hanson(), 0.1));
  Sampler sc(cfg.seed, self.id, "controls");
  for (int i = 0; i < kControlSamples; ++i) {
    const Point z = sc.annulus(2);
    const Point v = sc.direction(2);
    c[2].add(max_abs(flat->ricci(z)), z);
    c[3].add(std::abs(flat->hsc(z, v)), z);
    c[4].add(max_abs(pert->ricci(z)), z);
  }
  return make_report(self, cfg, c);
}

CheckReport bs_scalar_flat_n2(const CheckSpec& self, const SuiteConfig& cfg) {
  const int n_samples = sample_count(cfg, self.default_samples);
  std::vector<ConditionAcc> c;
  c.emplace_back("scalar_trace_abs", Compare::AtMost, cfg.tol.curvature);
  c.emplace_back("ricci_nonflat_witness", Compare::AtLeastSome, kRicciWitness);
  c.emplace_back("control_flat_scalar", Compare::AtMost, cfg.tol.curvature);
  c.emplace_back("control_flat_ricci_witness_absent", Compare::AtMost, kRicciWitness);
  c.emplace_back("control_perturbed_scalar", Compare::AtLeastSome, kControlDeviation);
  c.emplace_back("record_n3_scalar_trace_abs", Compare::Record, 0.0);

  const auto s2 = CurvatureModel::cached(potentials::simanca(2));
  Sampler s(cfg.seed, self.id, "points");
  for (int i = 0; i < n_samples; ++i) {
    const Point z = s.annulus(2);
    const auto sample = s2->sample(z);
    c[0].add(std::abs(sample.rho_c), z);
    c[1].add(max_abs(sample.ricci), z);
  }
  const auto flat = CurvatureModel::cached(potentials::flat(2));
  const auto pert = CurvatureModel::cached(perturbed(potentials::simanca(2), 0.1));
  const auto s3 = CurvatureModel::cached(potentials::simanca(3));
  Sampler sc(cfg.seed, self.id, "controls");
  for (int i = 0; i < kControlSamples; ++i) {
    const Point z = sc.annulus(2);
    c[2].add(std::abs(flat->scalar_trace(z)), z);
    c[3].add(max_abs(flat->ricci(z)), z);
    c[4].add(std::abs(pert->scalar_trace(z)), z);
    const Point z3 = sc.annulus(3);
    c[5].add(std::abs(s3->scalar_trace(z3)), z3);
  }
  return make_report(self, cfg, c);
}

CheckReport restrictions_to_h(const CheckSpec& self, const SuiteConfig& cfg) {
  const int n_samples = sample_count(cfg, self.default_samples);
  std::vector<ConditionAcc> c;
  c.emplace_back("hessian_minus_fs", Compare::AtMost, cfg.tol.identity);
  c.emplace_back("hsc_minus_4", Compare::AtMost, cfg.tol.curvature);
  c.emplace_back("control_off_h_slice_deviation", Compare::AtLeastSome, kControlDeviation);

  struct Case {
    atlas::MetricKind kind;
    int n;
    int j;
    std::string tag;
  };
  std::vector<Case> cases;
  for (int n = 2; n <= 4; ++n)
    for (int j = 1; j <= n; ++j) cases.push_back({atlas::MetricKind::Simanca, n, j, "S-n" + std::to_string(n) + "-j" + std::to_string(j)});
  for (int j = 1; j <= 2; ++j) cases.push_back({atlas::MetricKind::EguchiHanson, 2, j, "EH-j" + std::to_string(j)});

  for (const auto& cs : cases) {
    const auto chart = atlas::chart_potential(cs.kind, cs.j, cs.n);
    const auto on_h = CurvatureModel::cached(atlas::restrict_to_exceptional(chart));
    const auto slice = CurvatureModel::cached(atlas::restrict_to_slice(chart, Complex{0.5, 0.0}));
    const auto fs = CurvatureModel::cached(potentials::fubini_study(cs.n - 1));
    Sampler s(cfg.seed, self.id, cs.tag);
    for (int i = 0; i < n_samples; ++i) {
      const Point w = s.annulus(cs.n - 1, 0.0, 2.0);
      const Point v = s.direction(cs.n - 1);
      c[0].add(max_abs(on_h->metric(w) - fs->metric(w)), w);
      c[1].add(std::abs(on_h->hsc(w, v) - 4.0), w);
    }
    for (int i = 0; i < kControlSamples; ++i) {
      const Point w = s.annulus(cs.n - 1, 0.0, 2.0);
      c[2].add(max_abs(slice->metric(w) - fs->metric(w)), w);
    }
  }
  return make_report(self, cfg, c);
}

CheckReport phi_isometry(const CheckSpec& self, const SuiteConfig& cfg) {
  const int n = cfg.n;
  const int n_samples = sample_count(cfg, self.default_samples);
  constexpr double kEps = 1e-2;
  constexpr int kRandomMaps = 5;
  std::vector<ConditionAcc> c;
  c.emplace_back("pullback_metric_minus_1", Compare::AtMost, cfg.tol.identity);
  c.emplace_back("proportionality_factor_minus_1", Compare::AtMost, cfg.tol.identity);
  c.emplace_back("hereditary_residual", Compare::AtMost, cfg.tol.closed_form);
  c.emplace_back("control_perturbed_metric_deviation", Compare::AtLeastSome, kControlDeviation);

  Sampler s(cfg.seed, self.id, "maps");
  const auto simanca = potentials::simanca(n);
  for (int m = 0; m <= kRandomMaps; ++m) {
    Complex lambda{0.0, 0.0};
    Point e(static_cast<std::size_t>(n), Complex{0.0, 0.0});
    Point center{Complex{0.0, 0.0}};
    if (m == 0) {
      // axis case: lambda = 0, e = last basis vector; centred away from H
      e.back() = 1.0;
      center[0] = 1.0;
    } else {
      lambda = std::polar(s.uniform(0.6, 1.5), s.uniform(0.0, kTwoPi));
      e = s.direction(n);
    }
    std::vector<Expr> f;
    std::vector<Expr> f_pert;
    for (int i = 0; i < n; ++i) {
      const Complex ei = e[static_cast<std::size_t>(i)];
      f.push_back((hol(0) + lambda) * ei);
      f_pert.push_back((hol(0) + lambda + kEps * hol(0) * hol(0)) * ei);
    }
    const auto pulled = CurvatureModel::cached(metric::pullback(simanca, f, 1));
    const auto pulled_pert = CurvatureModel::cached(metric::pullback(simanca, f_pert, 1));
    const Program fmap(f);
    const auto f_center = fmap.eval(Assignment::diagonal(center));

    std::vector<Point> points;
    for (int i = 0; i < n_samples; ++i) points.push_back(s.ball(center, 0.3));
    for (const auto& w : points) {
      c[0].add(std::abs(pulled->metric(w)(0, 0) - 1.0), w);
      const auto fw = fmap.eval(Assignment::diagonal(w));
      c[1].add(std::abs(diastasis::proportionality_factor(fw, f_center) - 1.0), w);
      c[3].add(std::abs(pulled_pert->metric(w)(0, 0) - 1.0), w);
    }
    c[2].add(diastasis::hereditary_check(simanca, f, potentials::flat(1), center, points), center);
  }
  return make_report(self, cfg, c);
}

CheckReport diastasis_closed_forms(const CheckSpec& self, const SuiteConfig& cfg) {
  const int n = cfg.n;
  const int n_samples = sample_count(cfg, self.default_samples);
  constexpr int kTaylorCenters = 3;
  std::vector<ConditionAcc> c;
  c.emplace_back("simanca_closed_vs_polarized", Compare::AtMost, cfg.tol.closed_form);
  c.emplace_back("eh_log_reading_vs_polarized", Compare::AtMost, cfg.tol.closed_form);
  c.emplace_back("pure_taylor_coefficients", Compare::AtMost, cfg.tol.identity);
  c.emplace_back("value_at_center", Compare::AtMost, cfg.tol.identity);
  c.emplace_back("symmetry", Compare::AtMost, cfg.tol.closed_form);
  c.emplace_back("record_eh_printed_reading_vs_polarized", Compare::Record, 0.0);
  c.emplace_back("control_naive_potential_pure_terms", Compare::AtLeastSome, kControlDeviation);

  const KahlerPotential metrics[] = {potentials::simanca(n), potentials::eguchi_hanson()};
  for (int which = 0; which < 2; ++which) {
    const auto& phi = metrics[which];
    Sampler s(cfg.seed, self.id, which == 0 ? "simanca" : "eguchi-hanson");
    for (int i = 0; i < n_samples; ++i) {
      // z near q keeps z.qbar in the right half-plane, away from every cut
      const Point q = s.annulus(phi.n);
      const Point z = s.ball(q, 0.3 * norm(q));
      const auto dq = diastasis::diastasis_from_potential(phi, q);
      const auto dz = diastasis::diastasis_from_potential(phi, z);
      const double polar = dq(z);
      if (which == 0) {
        c[0].add(std::abs(polar - diastasis::closed_diastasis_S(q, z)), z);
      } else {
        c[1].add(std::abs(polar - diastasis::closed_diastasis_EH(q, z)), z);
        c[5].add(std::abs(polar - diastasis::closed_diastasis_EH_as_printed(q, z)), z);
      }
      c[3].add(std::abs(dq.value_complex(q)), q);
      c[4].add(std::abs(polar - dz(q)), z);

      if (i < kTaylorCenters) {
        Point center = q;
        if (i == 0) {
          center.assign(static_cast<std::size_t>(phi.n), Complex{0.0, 0.0});
          center[0] = 1.0;
        }
        const auto d = diastasis::diastasis_from_potential(phi, center);
        double worst = 0.0;
        for (const auto& coef : taylor_pure_coeffs(d.expr, Assignment::diagonal(center), 4))
          worst = std::max(worst, std::abs(coef.value));
        c[2].add(worst, center);
        double naive = 0.0;
        for (const auto& coef : taylor_pure_coeffs(phi.expr, Assignment::diagonal(center), 4))
          naive = std::max(naive, std::abs(coef.value));
        c[6].add(naive, center);
      }
    }
  }
  return make_report(self, cfg, c);
}

CheckReport einstein_ma_identity(const CheckSpec& self, const SuiteConfig& cfg) {
  const int n_samples = sample_count(cfg, self.default_samples);
  std::vector<ConditionAcc> c;
  c.emplace_back("fs_m1_lambda4", Compare::AtMost, cfg.tol.identity);
  c.emplace_back("fs_m2_lambda6", Compare::AtMost, cfg.tol.identity);
  c.emplace_back("flat_lambda0", Compare::AtMost, cfg.tol.identity);
  c.emplace_back("control_lambda_shift", Compare::AtLeastSome, kControlDeviation);

  for (int m = 1; m <= 2; ++m) {
    const Point origin(static_cast<std::size_t>(m), Complex{0.0, 0.0});
    const auto d = diastasis::diastasis_from_potential(potentials::fubini_study(m), origin);
    const double lambda = 2.0 * (m + 1);
    Sampler s(cfg.seed, self.id, "fs-m" + std::to_string(m));
    for (int i = 0; i < n_samples; ++i) {
      const Point w = s.ball(origin, 2.0);
      c[static_cast<std::size_t>(m - 1)].add(metric::monge_ampere_residual(d.expr, m, lambda, w), w);
      c[3].add(metric::monge_ampere_residual(d.expr, m, lambda + 0.1, w), w);
    }
  }
  const Point origin2(2, Complex{0.0, 0.0});
  const auto flat = diastasis::diastasis_from_potential(potentials::flat(2), origin2);
  Sampler s(cfg.seed, self.id, "flat");
  for (int i = 0; i < n_samples; ++i) {
    const Point z = s.ball(origin2, 2.0);
    c[2].add(metric::monge_ampere_residual(flat.expr, 2, 0.0, z), z);
  }
  return make_report(self, cfg, c);
}

CheckReport eqnew_psh(const CheckSpec& self, const SuiteConfig& cfg) {
  const int n_samples = sample_count(cfg, self.default_samples);
  std::vector<ConditionAcc> c;
  c.emplace_back("eh_psi_levi_min_eig", Compare::AtLeastAll, cfg.tol.levi);
  c.emplace_back("simanca_levi_eig_minus_1", Compare::AtMost, 0.0);
  c.emplace_back("record_eh_psi_levi_at_1_0", Compare::Record, 0.0);
  c.emplace_back("control_pluriharmonic_not_strict", Compare::AtMost, cfg.tol.levi);

  const Expr re_z1 = 0.5 * (hol(0) + antihol(0));
  Sampler s(cfg.seed, self.id, "centers");
  for (int i = 0; i < n_samples; ++i) {
    const Point q = s.annulus(2);
    c[0].add(metric::levi_min_eig(potentials::eguchi_hanson_psi(q), 2, q), q);
    const Point qn = s.annulus(cfg.n);
    Expr dist = constant(0.0);
    for (int k = 0; k < cfg.n; ++k) {
      const Complex qk = qn[static_cast<std::size_t>(k)];
      dist = dist + (hol(k) - qk) * (antihol(k) - std::conj(qk));
    }
    c[1].add(std::abs(metric::levi_min_eig(dist, cfg.n, qn) - 1.0), qn);
    c[3].add(std::abs(metric::levi_min_eig(re_z1, 2, q)), q);
  }
  const Point q10{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  c[2].add(metric::levi_min_eig(potentials::eguchi_hanson_psi(q10), 2, q10), q10);
  return make_report(self, cfg, c);
}

CheckReport fd_cross_validation(const CheckSpec& self, const SuiteConfig& cfg) {
  const int n_samples = sample_count(cfg, self.default_samples);
  std::vector<ConditionAcc> c;
  c.emplace_back("first_derivatives_rel", Compare::AtMost, cfg.tol.fd);
  c.emplace_back("second_derivatives_rel", Compare::AtMost, cfg.tol.fd);
  c.emplace_back("ricci_rel", Compare::AtMost, cfg.tol.fd_curvature);
  c.emplace_back("scalar_trace_rel", Compare::AtMost, cfg.tol.fd_curvature);
  c.emplace_back("hsc_rel", Compare::AtMost, cfg.tol.fd_curvature);
  c.emplace_back("control_perturbed_hessian_rel", Compare::AtLeastSome, kControlDeviation);

  // Second differences of phi and log det g, first differences of g; steps
  // balance truncation against roundoff after extrapolation.
  constexpr double kHessianStep = 1e-3;
  constexpr double kRicciStep = 3.2e-3;
  constexpr double kHscStep = 4e-4;
  enum class Where { Annulus, Ball, NearCenter, ChartAnnulus };
  struct Item {
    KahlerPotential phi;
    Where where;
    Point center;
    bool curvature;
    int chart = 0;
  };
  const Point q10{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  const Point origin2(2, Complex{0.0, 0.0});
  std::vector<Item> items{
      {potentials::flat(2), Where::Annulus, {}, true},
      {potentials::simanca(2), Where::Annulus, {}, true},
      {potentials::simanca(3), Where::Annulus, {}, true},
      {potentials::eguchi_hanson(), Where::Annulus, {}, true},
      {potentials::fubini_study(1), Where::Annulus, {}, true},
      {potentials::fubini_study(2), Where::Annulus, {}, true},
      {potentials::hyperbolic_ball(2), Where::Ball, origin2, true},
      {atlas::chart_potential(atlas::MetricKind::Simanca, 1, 2), Where::ChartAnnulus, {}, true, 1},
      {atlas::chart_potential(atlas::MetricKind::EguchiHanson, 2, 2), Where::ChartAnnulus, {}, true, 2},
      {custom(potentials::eguchi_hanson_psi(q10), 2, "eh psi at (1,0)"), Where::NearCenter, q10, false},
      {diastasis::diastasis_from_potential(potentials::simanca(2), q10).as_potential(), Where::NearCenter, q10, true},
      {diastasis::diastasis_from_potential(potentials::eguchi_hanson(), q10).as_potential(), Where::NearCenter, q10,
       true},
  };

  for (std::size_t item = 0; item < items.size(); ++item) {
    const auto& it = items[item];
    const int n = it.phi.n;
    const auto model = CurvatureModel::cached(it.phi);
    std::vector<Expr> firsts;
    for (int i = 0; i < n; ++i) {
      firsts.push_back(wirtinger(it.phi.expr, i, VarKind::Hol));
      firsts.push_back(wirtinger(it.phi.expr, i, VarKind::Anti));
    }
    const Program first_prog(firsts);
    const auto value = value_fn(it.phi.expr);
    const auto gfn = metric_fn(it.phi);
    Sampler s(cfg.seed, self.id, "potential-" + std::to_string(item));
    for (int k = 0; k < n_samples; ++k) {
      Point z;
      switch (it.where) {
        case Where::Annulus: z = s.annulus(n); break;
        case Where::Ball: z = s.ball(it.center, 0.8); break;
        case Where::NearCenter: z = s.ball(it.center, 0.3); break;
        case Where::ChartAnnulus:
          // the image in C^n keeps the global standoff ||z|| >= 0.2 from H
          do z = s.annulus(n);
          while (norm(atlas::proj(atlas::chart_to_total({it.chart, z}))) < 0.2);
          break;
      }
      const auto sym1 = first_prog.eval(Assignment::diagonal(z));
      double e1 = 0.0;
      for (int i = 0; i < n; ++i) {
        e1 = std::max(e1, fd::relative_error(sym1[static_cast<std::size_t>(2 * i)], fd::d_hol(value, z, i)));
        e1 = std::max(e1, fd::relative_error(sym1[static_cast<std::size_t>(2 * i + 1)], fd::d_anti(value, z, i)));
      }
      c[0].add(e1, z);
      const Matrix g = model->hessian(z);
      const Matrix hess_fd =
          richardson([&](double h) { return Matrix(fd::complex_hessian(value, z, h)); }, kHessianStep);
      c[1].add(fd::relative_error(g, hess_fd), z);
      if (!it.curvature) continue;
      const Matrix ric_fd = richardson([&](double h) { return Matrix(fd::ricci(gfn, z, h)); }, kRicciStep);
      c[2].add(fd::relative_error(model->ricci(z), ric_fd), z);
      c[3].add(fd::relative_error(model->scalar_trace_complex(z), (g.inverse() * ric_fd).trace()), z);
      const Point v = s.direction(n);
      const double hsc_fd = richardson([&](double h) { return fd::hsc(gfn, z, v, h); }, kHscStep);
      c[4].add(fd::relative_error(Complex{model->hsc(z, v), 0.0}, Complex{hsc_fd, 0.0}), z);
    }
  }

  const auto s2 = CurvatureModel::cached(potentials::simanca(2));
  const auto pert_value = value_fn(perturbed(potentials::simanca(2), 1e-2).expr);
  Sampler sc(cfg.seed, self.id, "control");
  for (int k = 0; k < kControlSamples; ++k) {
    const Point z = sc.annulus(2);
    const Matrix hess_fd =
        richardson([&](double h) { return Matrix(fd::complex_hessian(pert_value, z, h)); }, kHessianStep);
    c[5].add(fd::relative_error(s2->hessian(z), hess_fd), z);
  }
  return make_report(self, cfg, c);
}

CheckReport probe(const CheckSpec& self, const SuiteConfig& cfg, const KahlerPotential& target, ProbeSource source,
                  bool positive_control) {
  ProbeSpec spec{target, source};
  spec.restarts = sample_count(cfg, self.default_samples);
  Sampler s(cfg.seed, self.id, "search");
  const auto result = probe_nonexistence(spec, s);

  std::vector<ConditionAcc> c;
  if (positive_control) {
    c.emplace_back("best_defect", Compare::AtMost, cfg.tol.closed_form);
  } else {
    c.emplace_back("best_defect", Compare::AtLeastAll, cfg.tol.probe);
  }
  c.emplace_back("feasible_restarts", Compare::AtLeastAll, 1.0);
  c.emplace_back("record_best_image_min_norm", Compare::Record, 0.0);
  c.emplace_back("record_best_image_max_norm", Compare::Record, 0.0);
  c.emplace_back("record_best_restart", Compare::Record, 0.0);

  int feasible = 0;
  for (double d : result.defects) feasible += std::isfinite(d) ? 1 : 0;
  c[0].add(result.best_defect, result.best_coefficients);
  c[1].add(static_cast<double>(feasible));
  c[2].add(result.image_min_norm);
  c[3].add(result.image_max_norm);
  c[4].add(static_cast<double>(result.best_restart));
  auto report = make_report(self, cfg, c);
  report.samples = spec.restarts;
  return report;
}

}  // namespace

int sample_count(const SuiteConfig& config, int fallback) { return config.samples.value_or(fallback); }

CheckReport make_report(const CheckSpec& spec, const SuiteConfig& config, const std::vector<ConditionAcc>& conditions) {
  CheckReport r;
  r.id = spec.id;
  r.seed = config.seed;
  r.claim_ref = spec.claim_ref;
  r.pass = true;
  for (const auto& acc : conditions) {
    r.conditions.push_back(acc.finish());
    r.pass = r.pass && r.conditions.back().pass;
  }
  if (!r.conditions.empty()) {
    const auto& head = r.conditions.front();
    r.max_residual = head.value;
    r.mean_residual = head.mean;
    r.tolerance = head.threshold;
    r.samples = head.samples;
    r.worst_point = head.worst_point;
  }
  return r;
}

std::vector<CheckSpec> build_registry() {
  using Fn = CheckReport (*)(const CheckSpec&, const SuiteConfig&);
  struct Row {
    const char* id;
    const char* description;
    const char* claim;
    int samples;
    Fn fn;
  };
  const Row rows[] = {
      {"check_eh_ricci_flat", "Eguchi-Hanson Ricci form vanishes on the annulus; hsc witnesses non-flatness",
       "Eguchi-Hanson metric is complete Ricci flat (not flat)", 100, eh_ricci_flat},
      {"check_bs_scalar_flat_n2", "Burns-Simanca n=2 has zero scalar trace but nonzero Ricci form",
       "Burns-Simanca metric (n=2) is scalar flat but not Ricci flat", 100, bs_scalar_flat_n2},
      {"check_restrictions_to_H", "Chart potentials restricted to H give Fubini-Study with hsc 4",
       "restrictions of g_S and g_EH to the exceptional divisor are Fubini-Study of holomorphic sectional curvature 4",
       50, restrictions_to_h},
      {"check_phi_isometry", "The line z -> (z+lambda)e is a flat isometric curve of g_S",
       "Phi(z) = ((z+lambda)e,[e]) is a holomorphic isometry of the flat line into g_S", 20, phi_isometry},
      {"check_diastasis_closed_forms", "Closed-form diastases agree with the polarization construction",
       "closed-form Calabi diastasis of g_S and g_EH (Eguchi-Hanson last term read inside the logarithm)", 50,
       diastasis_closed_forms},
      {"check_einstein_ma_identity", "Fubini-Study diastasis satisfies det(d dbar D) = exp(-lambda D / 2)",
       "Kahler-Einstein condition as the determinant equation for the diastasis, lambda = 2(m+1) on CP^m", 50,
       einstein_ma_identity},
      {"check_eqnew_psh", "The Eguchi-Hanson Psi part is strictly plurisubharmonic at its centre",
       "the Psi part of the Eguchi-Hanson diastasis is strictly plurisubharmonic at q; ||z-q||^2 likewise for g_S",
       50, eqnew_psh},
      {"check_fd_cross_validation", "Symbolic derivatives and curvature agree with central finite differences",
       "cross-validation of the exact Wirtinger calculus", 20, fd_cross_validation},
  };
  std::vector<CheckSpec> specs;
  for (const auto& row : rows) {
    CheckSpec spec{row.id, row.description, row.claim, row.samples, false, {}};
    const std::string id = row.id;
    const Fn fn = row.fn;
    spec.run = [id, fn](const SuiteConfig& cfg) { return fn(find_check(id), cfg); };
    specs.push_back(std::move(spec));
  }

  struct ProbeRow {
    const char* id;
    const char* description;
    const char* claim;
    bool eh;
    ProbeSource source;
    bool positive;
  };
  const ProbeRow probes[] = {
      {"probe_flat_line_s", "PROBE positive control: search finds the flat line in g_S",
       "flat line isometry Phi exists (positive control)", false, ProbeSource::FlatLine, true},
      {"probe_flat2d_s", "PROBE: no flat 2-dimensional piece in g_S at degree <= 3",
       "flat submanifolds of g_S are one-dimensional", false, ProbeSource::Flat2d, false},
      {"probe_ball_s", "PROBE: no hyperbolic disc in g_S off H at degree <= 3",
       "g_S is not relative to a homogeneous bounded domain", false, ProbeSource::HyperbolicBall, false},
      {"probe_fs_s", "PROBE: no Fubini-Study curve in g_S off H at degree <= 3",
       "KE submanifolds of g_S with lambda != 0 lie in H", false, ProbeSource::FubiniStudy, false},
      {"probe_flat2d_eh", "PROBE: no flat 2-dimensional piece in g_EH at degree <= 3",
       "desk-scale search for flat pieces of g_EH", true, ProbeSource::Flat2d, false},
      {"probe_ball_eh", "PROBE: no hyperbolic disc in g_EH off H at degree <= 3",
       "g_EH is not relative to a homogeneous bounded domain", true, ProbeSource::HyperbolicBall, false},
      {"probe_fs_eh", "PROBE: no Fubini-Study curve in g_EH off H at degree <= 3",
       "KE submanifolds of g_EH with lambda != 0 lie in H", true, ProbeSource::FubiniStudy, false},
  };
  for (const auto& row : probes) {
    CheckSpec spec{row.id, row.description, row.claim, 50, true, {}};
    const std::string id = row.id;
    const bool eh = row.eh;
    const ProbeSource source = row.source;
    const bool positive = row.positive;
    spec.run = [id, eh, source, positive](const SuiteConfig& cfg) {
      const auto target = eh ? potentials::eguchi_hanson() : potentials::simanca(cfg.n);
      return probe(find_check(id), cfg, target, source, positive);
    };
    specs.push_back(std::move(spec));
  }
  return specs;
}

}  // namespace kahler::verify::detail
