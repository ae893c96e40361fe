#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "kahler/error.hpp"
#include "kahler/metric.hpp"
#include "kahler/verify.hpp"

namespace kahler::verify {

namespace {

constexpr double kPenaltyWeight = 100.0;
// slack on the image annulus when classifying a final candidate as feasible
constexpr double kFeasibilitySlack = 1e-2;
constexpr double kInfeasible = 1e3;

// Multi-indices of total degree 0..d in m variables, graded order.
std::vector<std::vector<int>> monomials(int m, int d) {
  std::vector<std::vector<int>> out;
  for (int deg = 0; deg <= d; ++deg) {
    if (m == 1) {
      out.push_back({deg});
    } else {
      for (int a = deg; a >= 0; --a) out.push_back({a, deg - a});
    }
  }
  return out;
}

class PullbackProblem {
 public:
  PullbackProblem(const ProbeSpec& spec, std::vector<Point> samples)
      : spec_(spec),
        m_(source_dimension(spec.source)),
        n_(spec.target.n),
        basis_(monomials(m_, spec.degree)),
        samples_(std::move(samples)),
        target_(metric::CurvatureModel::cached(spec.target)) {
    const auto src = metric::CurvatureModel::cached(source_potential(spec.source));
    for (const auto& w : samples_) source_g_.push_back(src->hessian(w));
    // powers w^alpha and their derivatives are fixed per sample
    for (const auto& w : samples_) {
      std::vector<Complex> val(basis_.size());
      std::vector<std::vector<Complex>> der(static_cast<std::size_t>(m_), std::vector<Complex>(basis_.size()));
      for (std::size_t b = 0; b < basis_.size(); ++b) {
        Complex v{1.0, 0.0};
        for (int k = 0; k < m_; ++k) v *= std::pow(w[static_cast<std::size_t>(k)], basis_[b][static_cast<std::size_t>(k)]);
        val[b] = v;
        for (int k = 0; k < m_; ++k) {
          const int a = basis_[b][static_cast<std::size_t>(k)];
          if (a == 0) continue;
          Complex dv{static_cast<double>(a), 0.0};
          for (int l = 0; l < m_; ++l) {
            const int e = basis_[b][static_cast<std::size_t>(l)] - (l == k ? 1 : 0);
            dv *= std::pow(w[static_cast<std::size_t>(l)], e);
          }
          der[static_cast<std::size_t>(k)][b] = dv;
        }
      }
      powers_.push_back(std::move(val));
      dpowers_.push_back(std::move(der));
    }
  }

  [[nodiscard]] int num_params() const { return 2 * n_ * static_cast<int>(basis_.size()); }
  [[nodiscard]] int num_residuals() const {
    return static_cast<int>(samples_.size()) * (2 * m_ * m_ + 2);
  }
  [[nodiscard]] std::size_t basis_size() const { return basis_.size(); }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int m() const { return m_; }

  // coefficient of monomial b in component i
  static Complex coeff(const Eigen::VectorXd& x, int i, std::size_t b, std::size_t nb) {
    const auto k = 2 * (static_cast<std::size_t>(i) * nb + b);
    return {x(static_cast<Eigen::Index>(k)), x(static_cast<Eigen::Index>(k + 1))};
  }

  struct Eval {
    Eigen::VectorXd residuals;
    double defect = 0.0;  // sup over samples of the Frobenius metric defect
    bool feasible = true;
    double image_min = std::numeric_limits<double>::infinity();
    double image_max = 0.0;
  };

  /// Residuals and, when `jac` is given, their exact derivatives with respect
  /// to the real and imaginary parts of every coefficient.
  Eval evaluate(const Eigen::VectorXd& x, Eigen::MatrixXd* jac = nullptr) const {
    Eval out;
    out.residuals.resize(num_residuals());
    if (jac) jac->setZero(num_residuals(), num_params());
    const std::size_t nb = basis_.size();
    Eigen::Index r = 0;
    for (std::size_t s = 0; s < samples_.size(); ++s) {
      Point f(static_cast<std::size_t>(n_));
      metric::Matrix jm(n_, m_);
      double fn2 = 0.0;
      for (int i = 0; i < n_; ++i) {
        Complex v{0.0, 0.0};
        for (std::size_t b = 0; b < nb; ++b) v += coeff(x, i, b, nb) * powers_[s][b];
        f[static_cast<std::size_t>(i)] = v;
        fn2 += std::norm(v);
        for (int k = 0; k < m_; ++k) {
          Complex d{0.0, 0.0};
          for (std::size_t b = 0; b < nb; ++b) d += coeff(x, i, b, nb) * dpowers_[s][static_cast<std::size_t>(k)][b];
          jm(i, k) = d;
        }
      }
      const double fn = std::sqrt(fn2);
      out.image_min = std::min(out.image_min, fn);
      out.image_max = std::max(out.image_max, fn);
      metric::Matrix diff;
      metric::CurvatureModel::Jet jet;
      bool ok = fn > 1e-6 && std::isfinite(fn);
      if (ok) {
        try {
          jet = target_->jet(f);
          diff = jm.transpose() * jet.g * jm.conjugate() - source_g_[s];
          ok = diff.allFinite();
        } catch (const DomainError&) {
          ok = false;
        }
      }
      if (!ok) diff = metric::Matrix::Constant(m_, m_, Complex{kInfeasible, 0.0});
      const Eigen::Index r0 = r;
      for (int a = 0; a < m_; ++a)
        for (int b = 0; b < m_; ++b) {
          out.residuals(r++) = diff(a, b).real();
          out.residuals(r++) = diff(a, b).imag();
        }
      const double lo = std::max(0.0, spec_.image_rmin - fn);
      const double hi = std::max(0.0, fn - spec_.image_rmax);
      out.residuals(r++) = kPenaltyWeight * lo;
      out.residuals(r++) = kPenaltyWeight * hi;
      if (!ok || lo > kFeasibilitySlack || hi > kFeasibilitySlack) out.feasible = false;
      out.defect = std::max(out.defect, diff.norm());

      if (!jac || !ok) continue;
      const metric::Matrix a_mat = jet.g * jm.conjugate();   // n x m
      const metric::Matrix b_mat = jm.transpose() * jet.g;   // m x n
      std::vector<metric::Matrix> pd;
      std::vector<metric::Matrix> qd;
      for (int i = 0; i < n_; ++i) {
        pd.push_back(jm.transpose() * jet.d_hol[static_cast<std::size_t>(i)] * jm.conjugate());
        qd.push_back(jm.transpose() * jet.d_anti[static_cast<std::size_t>(i)] * jm.conjugate());
      }
      for (int i = 0; i < n_; ++i) {
        for (std::size_t b = 0; b < nb; ++b) {
          for (int part = 0; part < 2; ++part) {
            const Complex dc = part == 0 ? Complex{1.0, 0.0} : Complex{0.0, 1.0};
            const auto col = static_cast<Eigen::Index>(2 * (static_cast<std::size_t>(i) * nb + b) + part);
            const Complex df = dc * powers_[s][b];
            Eigen::Index row = r0;
            for (int k = 0; k < m_; ++k) {
              const Complex djk = dc * dpowers_[s][static_cast<std::size_t>(k)][b];
              for (int l = 0; l < m_; ++l) {
                const Complex djl = dc * dpowers_[s][static_cast<std::size_t>(l)][b];
                const Complex dm = djk * a_mat(i, l) + b_mat(k, i) * std::conj(djl) +
                                   df * pd[static_cast<std::size_t>(i)](k, l) +
                                   std::conj(df) * qd[static_cast<std::size_t>(i)](k, l);
                (*jac)(row++, col) = dm.real();
                (*jac)(row++, col) = dm.imag();
              }
            }
            const double dfn = (std::conj(f[static_cast<std::size_t>(i)]) * df).real() / fn;
            (*jac)(row++, col) = lo > 0.0 ? -kPenaltyWeight * dfn : 0.0;
            (*jac)(row++, col) = hi > 0.0 ? kPenaltyWeight * dfn : 0.0;
          }
        }
      }
    }
    return out;
  }

 private:
  const ProbeSpec& spec_;
  int m_;
  int n_;
  std::vector<std::vector<int>> basis_;
  std::vector<Point> samples_;
  std::shared_ptr<const metric::CurvatureModel> target_;
  std::vector<metric::Matrix> source_g_;
  std::vector<std::vector<Complex>> powers_;
  std::vector<std::vector<std::vector<Complex>>> dpowers_;
};

struct LmOutcome {
  Eigen::VectorXd x;
  long evaluations = 0;
};

LmOutcome levenberg_marquardt(const PullbackProblem& prob, Eigen::VectorXd x, int max_iterations) {
  LmOutcome out;
  auto ev = prob.evaluate(x);
  ++out.evaluations;
  double cost = ev.residuals.squaredNorm();
  double mu = 1e-3;
  const Eigen::Index np = x.size();
  Eigen::MatrixXd jac(ev.residuals.size(), np);
  for (int it = 0; it < max_iterations && cost > 1e-30; ++it) {
    (void)prob.evaluate(x, &jac);
    ++out.evaluations;
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * ev.residuals;
    bool improved = false;
    while (mu < 1e12) {
      Eigen::MatrixXd a = jtj;
      a.diagonal() += mu * (jtj.diagonal().array() + 1e-12).matrix();
      const Eigen::VectorXd step = a.ldlt().solve(-grad);
      const Eigen::VectorXd trial = x + step;
      auto tev = prob.evaluate(trial);
      ++out.evaluations;
      const double tcost = tev.residuals.squaredNorm();
      if (std::isfinite(tcost) && tcost < cost) {
        const double rel = step.norm() / (x.norm() + 1e-12);
        x = trial;
        ev = std::move(tev);
        cost = tcost;
        mu = std::max(mu / 3.0, 1e-12);
        improved = rel > 1e-14;
        break;
      }
      mu *= 4.0;
    }
    if (!improved) break;
  }
  out.x = x;
  return out;
}

}  // namespace

int source_dimension(ProbeSource s) { return s == ProbeSource::Flat2d ? 2 : 1; }

KahlerPotential source_potential(ProbeSource s) {
  switch (s) {
    case ProbeSource::FlatLine: return potentials::flat(1);
    case ProbeSource::Flat2d: return potentials::flat(2);
    case ProbeSource::HyperbolicBall: return potentials::hyperbolic_ball(1);
    case ProbeSource::FubiniStudy: return potentials::fubini_study(1);
  }
  throw ConstructionError("unknown probe source");
}

ProbeResult probe_nonexistence(const ProbeSpec& spec, Sampler& sampler) {
  if (spec.degree < 1 || spec.degree > 3) throw ConfigError("probe degree must be 1..3");
  if (spec.restarts < 1) throw ConfigError("probe needs at least one restart");
  const int m = source_dimension(spec.source);
  std::vector<Point> samples;
  const Point origin(static_cast<std::size_t>(m), Complex{0.0, 0.0});
  for (int s = 0; s < spec.source_samples; ++s) samples.push_back(sampler.ball(origin, spec.source_radius));
  const PullbackProblem prob(spec, samples);

  ProbeResult result;
  result.best_defect = std::numeric_limits<double>::infinity();
  const std::size_t nb = prob.basis_size();
  for (int r = 0; r < spec.restarts; ++r) {
    // constant term inside the annulus, linear part of unit scale, small higher terms
    Eigen::VectorXd x = Eigen::VectorXd::Zero(prob.num_params());
    const Point c0 = sampler.annulus(prob.n(), 0.6, 1.6);
    for (int i = 0; i < prob.n(); ++i) {
      for (std::size_t b = 0; b < nb; ++b) {
        const int deg = b == 0 ? 0 : (b <= static_cast<std::size_t>(m) ? 1 : 2);
        const Complex c = b == 0 ? c0[static_cast<std::size_t>(i)]
                                 : sampler.complex_normal() * (deg == 1 ? 1.0 / std::sqrt(prob.n()) : 0.1);
        const auto k = static_cast<Eigen::Index>(2 * (static_cast<std::size_t>(i) * nb + b));
        x(k) = c.real();
        x(k + 1) = c.imag();
      }
    }
    const auto lm = levenberg_marquardt(prob, x, spec.max_iterations);
    result.evaluations += lm.evaluations;
    const auto ev = prob.evaluate(lm.x);
    const double defect = ev.feasible ? ev.defect : std::numeric_limits<double>::infinity();
    result.defects.push_back(defect);
    if (defect < result.best_defect) {
      result.best_defect = defect;
      result.best_restart = r;
      result.image_min_norm = ev.image_min;
      result.image_max_norm = ev.image_max;
      result.best_coefficients.clear();
      for (Eigen::Index k = 0; k + 1 < lm.x.size(); k += 2) result.best_coefficients.emplace_back(lm.x(k), lm.x(k + 1));
    }
  }
  return result;
}

}  // namespace kahler::verify
