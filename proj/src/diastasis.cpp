#include "kahler/diastasis.hpp"

#include <cmath>
#include <sstream>

#include "kahler/error.hpp"

namespace kahler::diastasis {

using namespace sym;

namespace {

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (Complex c : v) s += std::norm(c);
  return s;
}

Complex dot_conj(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

Complex checked_sqrt(Complex x, const char* what) {
  if (on_branch_cut(x)) {
    std::ostringstream os;
    os << "branch cut: sqrt argument " << what << " = " << x;
    throw DomainError(os.str());
  }
  return std::sqrt(x);
}

// Returns z.qbar after validating both vectors and the singular locus.
Complex guarded_pairing(std::span<const Complex> q, std::span<const Complex> z) {
  if (q.size() != z.size()) throw DomainError("center and point have different dimensions");
  const double nq = std::sqrt(norm2(q));
  const double nz = std::sqrt(norm2(z));
  if (nq == 0.0 || nz == 0.0) throw SingularEvaluationError("closed diastasis needs z != 0 and q != 0");
  const Complex zq = dot_conj(z, q);
  if (std::abs(zq) <= kSingularTol * nz * nq) {
    std::ostringstream os;
    os << "singular locus: |z.qbar| = " << std::abs(zq) << " <= " << kSingularTol << " ||z|| ||q||";
    throw SingularEvaluationError(os.str());
  }
  return zq;
}

struct EhParts {
  double sqrt_terms;
  double ratio;
};

EhParts eh_parts(std::span<const Complex> q, std::span<const Complex> z) {
  if (q.size() != 2 || z.size() != 2) throw DomainError("the Eguchi-Hanson diastasis lives on C^2");
  const Complex zq = guarded_pairing(q, z);
  const double rz = norm2(z);
  const double rq = norm2(q);
  const double sz = std::sqrt(rz * rz + 1.0);
  const double sq = std::sqrt(rq * rq + 1.0);
  const Complex szq = checked_sqrt(zq * zq + 1.0, "(z.qbar)^2 + 1");
  const Complex szq_bar = checked_sqrt(std::conj(zq) * std::conj(zq) + 1.0, "(zbar.q)^2 + 1");
  const double sqrt_terms = sz + sq - (szq + szq_bar).real();
  const double ratio = rz * rq * std::norm(1.0 + szq) / (std::norm(zq) * (1.0 + sz) * (1.0 + sq));
  return {sqrt_terms, ratio};
}

}  // namespace

Complex DiastasisFn::value_complex(std::span<const Complex> z) const {
  check_admissible(base, z);
  return program->eval1(Assignment::diagonal(z));
}

double DiastasisFn::operator()(std::span<const Complex> z) const { return value_complex(z).real(); }

KahlerPotential DiastasisFn::as_potential() const {
  KahlerPotential out = base;
  out.expr = expr;
  out.label = MetricLabel::Custom;
  out.name = "diastasis of " + base.name;
  return out;
}

DiastasisFn diastasis_from_potential(const KahlerPotential& phi, std::span<const Complex> p) {
  check_admissible(phi, p);
  const int n = phi.n;
  std::vector<Expr> zs;
  std::vector<Expr> zbars;
  std::vector<Expr> ps;
  std::vector<Expr> pbars;
  for (int i = 0; i < n; ++i) {
    zs.push_back(hol(i));
    zbars.push_back(antihol(i));
    ps.push_back(constant(p[static_cast<std::size_t>(i)]));
    pbars.push_back(constant(std::conj(p[static_cast<std::size_t>(i)])));
  }
  DiastasisFn d;
  d.center.assign(p.begin(), p.end());
  d.base = phi;
  d.polarized = polarize(phi.expr);
  std::vector<Complex> pconj(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) pconj[i] = std::conj(p[i]);
  const Complex phi_pp = d.polarized.eval(p, pconj);
  d.expr = phi.expr + constant(phi_pp) - substitute(phi.expr, zs, pbars) - substitute(phi.expr, ps, zbars);
  d.program = std::make_shared<const Program>(d.expr);
  return d;
}

double closed_diastasis_S(std::span<const Complex> q, std::span<const Complex> z) {
  const Complex zq = guarded_pairing(q, z);
  double diff = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) diff += std::norm(z[i] - q[i]);
  return diff + std::log(norm2(z) * norm2(q) / std::norm(zq));
}

double closed_diastasis_EH(std::span<const Complex> q, std::span<const Complex> z) {
  const auto parts = eh_parts(q, z);
  return parts.sqrt_terms + std::log(parts.ratio);
}

double closed_diastasis_EH_as_printed(std::span<const Complex> q, std::span<const Complex> z) {
  const auto parts = eh_parts(q, z);
  return parts.sqrt_terms + parts.ratio;
}

double hereditary_check(const KahlerPotential& ambient, std::span<const Expr> f, const KahlerPotential& sub,
                        std::span<const Complex> p, std::span<const Point> samples) {
  if (static_cast<int>(f.size()) != ambient.n) throw ConstructionError("map has the wrong number of components");
  const Program fmap(f);
  const auto fp = fmap.eval(Assignment::diagonal(p));
  const auto d_amb = diastasis_from_potential(ambient, fp);
  const auto d_sub = diastasis_from_potential(sub, p);
  std::vector<Expr> fbar;
  for (const Expr& c : f) {
    if (!c.is_holomorphic()) throw ConstructionError("hereditary_check needs a holomorphic map");
    fbar.push_back(conjugate(c));
  }
  const Program composed(substitute(d_amb.expr, f, fbar));
  double worst = 0.0;
  for (const Point& w : samples) {
    check_admissible(ambient, fmap.eval(Assignment::diagonal(w)));
    const double a = d_sub(w);
    const double b = composed.eval1(Assignment::diagonal(w)).real();
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

double proportionality_factor(std::span<const Complex> a, std::span<const Complex> b) {
  const Complex ab = dot_conj(a, b);
  if (std::abs(ab) == 0.0) throw SingularEvaluationError("proportionality factor undefined for orthogonal vectors");
  return norm2(a) * norm2(b) / std::norm(ab);
}

}  // namespace kahler::diastasis
