#include "kahler/metric.hpp"

#include <map>
#include <sstream>
#include <tuple>

#include "kahler/error.hpp"

namespace kahler::metric {

using namespace sym;

namespace {

Matrix to_matrix(std::span<const Complex> values, int n, std::size_t offset = 0) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = values[offset + static_cast<std::size_t>(i * n + j)];
  return m;
}

double min_eigenvalue(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Expr determinant(const std::vector<Expr>& g, int n) {
  auto at = [&](int i, int j) { return g[static_cast<std::size_t>(i * n + j)]; };
  switch (n) {
    case 1: return at(0, 0);
    case 2: return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    case 3:
      return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
             at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
             at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    default: throw ConstructionError("symbolic determinant only for n <= 3");
  }
}

Eigen::VectorXcd to_vector(std::span<const Complex> v) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out(static_cast<Eigen::Index>(k)) = v[k];
  return out;
}

}  // namespace

double CurvatureSample::einstein_residual(double lambda) const {
  return (ricci - 0.5 * lambda * g).cwiseAbs().maxCoeff();
}

std::vector<Expr> complex_hessian(Expr f, int n) {
  std::vector<Expr> h;
  h.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    const Expr di = wirtinger(f, i, VarKind::Hol);
    for (int j = 0; j < n; ++j) h.push_back(wirtinger(di, j, VarKind::Anti));
  }
  return h;
}

struct CurvatureModel::Tower {
  // roots: g (n^2), d_k g (n^3), dbar_l g (n^3), d_k dbar_l g (n^4)
  Program program;
};

CurvatureModel::CurvatureModel(KahlerPotential phi) : phi_(std::move(phi)) {
  if (phi_.n < 1) throw ConstructionError("potential with no variables");
  hessian_ = Program(complex_hessian(phi_.expr, phi_.n));
}

CurvatureModel::~CurvatureModel() = default;

std::shared_ptr<const CurvatureModel> CurvatureModel::cached(const KahlerPotential& phi) {
  static std::mutex mu;
  static std::map<std::tuple<const Node*, int, int, int, const void*>, std::shared_ptr<const CurvatureModel>> cache;
  const auto key = std::make_tuple(phi.expr.get(), phi.n, static_cast<int>(phi.domain.kind), phi.domain.chart,
                                   static_cast<const void*>(phi.domain.via.get()));
  std::lock_guard lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_shared<CurvatureModel>(phi)).first;
  return it->second;
}

const CurvatureModel::Tower& CurvatureModel::tower() const {
  std::call_once(tower_once_, [this] {
    const int n = phi_.n;
    const auto g = complex_hessian(phi_.expr, n);
    std::vector<Expr> roots = g;
    std::vector<Expr> dh;
    for (int k = 0; k < n; ++k)
      for (const Expr& e : g) dh.push_back(wirtinger(e, k, VarKind::Hol));
    roots.insert(roots.end(), dh.begin(), dh.end());
    for (int l = 0; l < n; ++l)
      for (const Expr& e : g) roots.push_back(wirtinger(e, l, VarKind::Anti));
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (std::size_t e = 0; e < g.size(); ++e)
          roots.push_back(wirtinger(dh[static_cast<std::size_t>(k) * g.size() + e], l, VarKind::Anti));
    tower_ = std::make_unique<Tower>(Tower{Program(roots)});
  });
  return *tower_;
}

CurvatureModel::Jet CurvatureModel::jet(std::span<const Complex> p) const {
  const int n = phi_.n;
  std::call_once(jet_once_, [this, n] {
    const auto g = complex_hessian(phi_.expr, n);
    std::vector<Expr> roots = g;
    for (auto kind : {VarKind::Hol, VarKind::Anti})
      for (int k = 0; k < n; ++k)
        for (const Expr& e : g) roots.push_back(wirtinger(e, k, kind));
    jet_ = std::make_unique<Program>(roots);
  });
  const auto nn = static_cast<std::size_t>(n * n);
  const auto v = jet_->eval(Assignment::diagonal(p));
  Jet out;
  out.g = to_matrix(v, n);
  for (int k = 0; k < n; ++k) out.d_hol.push_back(to_matrix(v, n, nn * (1 + static_cast<std::size_t>(k))));
  for (int k = 0; k < n; ++k) out.d_anti.push_back(to_matrix(v, n, nn * (1 + static_cast<std::size_t>(n + k))));
  return out;
}

const Program& CurvatureModel::ricci_program() const {
  std::call_once(ricci_once_, [this] {
    const int n = phi_.n;
    const Expr logdet = log(determinant(complex_hessian(phi_.expr, n), n));
    std::vector<Expr> roots;
    for (int i = 0; i < n; ++i) {
      const Expr di = wirtinger(logdet, i, VarKind::Hol);
      for (int j = 0; j < n; ++j) roots.push_back(-wirtinger(di, j, VarKind::Anti));
    }
    ricci_ = std::make_unique<Program>(roots);
  });
  return *ricci_;
}

Matrix CurvatureModel::hessian(std::span<const Complex> p) const {
  return to_matrix(hessian_.eval(Assignment::diagonal(p)), phi_.n);
}

Matrix CurvatureModel::metric(std::span<const Complex> p) const {
  check_admissible(phi_, p);
  Matrix g = hessian(p);
  const double ev = min_eigenvalue(g);
  if (!(ev > kPositiveDefiniteTol)) {
    std::ostringstream os;
    os << "complex Hessian of '" << phi_.name << "' is not positive definite (min eigenvalue " << ev << ")";
    throw NotPositiveDefiniteError(os.str());
  }
  return g;
}

void CurvatureModel::derivatives(std::span<const Complex> p, std::vector<Matrix>& d_hol, std::vector<Matrix>& d_anti,
                                 std::vector<Matrix>& d_mixed, Matrix& g) const {
  const int n = phi_.n;
  const auto nn = static_cast<std::size_t>(n * n);
  const auto v = tower().program.eval(Assignment::diagonal(p));
  g = to_matrix(v, n);
  d_hol.clear();
  d_anti.clear();
  d_mixed.clear();
  for (int k = 0; k < n; ++k) d_hol.push_back(to_matrix(v, n, nn * (1 + static_cast<std::size_t>(k))));
  for (int l = 0; l < n; ++l)
    d_anti.push_back(to_matrix(v, n, nn * (1 + static_cast<std::size_t>(n + l))));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      d_mixed.push_back(to_matrix(v, n, nn * (1 + static_cast<std::size_t>(2 * n + k * n + l))));
}

Matrix CurvatureModel::ricci_trace_identity(std::span<const Complex> p) const {
  (void)metric(p);
  std::vector<Matrix> dh;
  std::vector<Matrix> da;
  std::vector<Matrix> dm;
  Matrix g;
  derivatives(p, dh, da, dm, g);
  const int n = phi_.n;
  const Matrix ginv = g.inverse();
  Matrix ric(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Matrix& mixed = dm[static_cast<std::size_t>(i * n + j)];
      ric(i, j) = -((ginv * mixed).trace() -
                    (ginv * da[static_cast<std::size_t>(j)] * ginv * dh[static_cast<std::size_t>(i)]).trace());
    }
  }
  return ric;
}

Matrix CurvatureModel::ricci(std::span<const Complex> p) const {
  if (phi_.n > 3) return ricci_trace_identity(p);
  (void)metric(p);
  return to_matrix(ricci_program().eval(Assignment::diagonal(p)), phi_.n);
}

Complex CurvatureModel::scalar_trace_complex(std::span<const Complex> p) const {
  const Matrix g = metric(p);
  return (g.inverse() * ricci(p)).trace();
}

double CurvatureModel::scalar_trace(std::span<const Complex> p) const {
  const Complex rho = scalar_trace_complex(p);
  if (std::abs(rho.imag()) > 1e-10 * (1.0 + std::abs(rho.real()))) {
    std::ostringstream os;
    os << "scalar trace has imaginary part " << rho.imag();
    throw DomainError(os.str());
  }
  return rho.real();
}

double CurvatureModel::hsc(std::span<const Complex> p, std::span<const Complex> v) const {
  const int n = phi_.n;
  if (static_cast<int>(v.size()) != n) throw DomainError("direction has the wrong dimension");
  double vn = 0.0;
  for (Complex c : v) vn += std::norm(c);
  if (vn == 0.0) throw DomainError("holomorphic sectional curvature needs a nonzero direction");
  (void)metric(p);
  std::vector<Matrix> dh;
  std::vector<Matrix> da;
  std::vector<Matrix> dm;
  Matrix g;
  derivatives(p, dh, da, dm, g);

  const Eigen::VectorXcd vv = to_vector(v);
  Matrix dv = Matrix::Zero(n, n);
  Matrix dvbar = Matrix::Zero(n, n);
  Matrix ddbar = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    dv += vv(k) * dh[static_cast<std::size_t>(k)];
    dvbar += std::conj(vv(k)) * da[static_cast<std::size_t>(k)];
    for (int l = 0; l < n; ++l) ddbar += vv(k) * std::conj(vv(l)) * dm[static_cast<std::size_t>(k * n + l)];
  }
  const Matrix r = -ddbar + dv * g.inverse() * dvbar;
  const Complex rv = vv.transpose() * r * vv.conjugate();
  const Complex gv = vv.transpose() * g * vv.conjugate();
  return 2.0 * rv.real() / (gv.real() * gv.real());
}

CurvatureSample CurvatureModel::sample(std::span<const Complex> p) const {
  CurvatureSample s;
  s.point.assign(p.begin(), p.end());
  s.g = metric(p);
  s.g_inv = s.g.inverse();
  s.det_g = s.g.determinant().real();
  s.ricci = ricci(p);
  s.rho_c = (s.g_inv * s.ricci).trace().real();
  return s;
}

Matrix metric_at(const KahlerPotential& phi, std::span<const Complex> p) { return CurvatureModel::cached(phi)->metric(p); }
Matrix ricci_at(const KahlerPotential& phi, std::span<const Complex> p) { return CurvatureModel::cached(phi)->ricci(p); }
double scalar_trace(const KahlerPotential& phi, std::span<const Complex> p) {
  return CurvatureModel::cached(phi)->scalar_trace(p);
}
double hsc_at(const KahlerPotential& phi, std::span<const Complex> p, std::span<const Complex> v) {
  return CurvatureModel::cached(phi)->hsc(p, v);
}

double levi_min_eig(Expr f, int n, std::span<const Complex> p) {
  const Program prog(complex_hessian(f, n));
  return min_eigenvalue(to_matrix(prog.eval(Assignment::diagonal(p)), n));
}

double monge_ampere_residual(Expr diastasis, int n, double lambda, std::span<const Complex> p) {
  std::vector<Expr> roots = complex_hessian(diastasis, n);
  roots.push_back(diastasis);
  const auto v = Program(roots).eval(Assignment::diagonal(p));
  const Complex det = to_matrix(v, n).determinant();
  const Complex d = v.back();
  return std::abs(det - std::exp(-0.5 * lambda * d));
}

KahlerPotential pullback(const KahlerPotential& phi, std::span<const Expr> f, int m) {
  if (static_cast<int>(f.size()) != phi.n) throw ConstructionError("pullback map has the wrong number of components");
  std::vector<Expr> fbar;
  fbar.reserve(f.size());
  for (const Expr& c : f) {
    if (!c.is_holomorphic()) throw ConstructionError("pullback map must be holomorphic");
    if (m < kMaxVars && (c.hol_mask() >> m) != 0) throw ConstructionError("pullback map uses variables beyond m");
    fbar.push_back(conjugate(c));
  }
  KahlerPotential out;
  out.expr = substitute(phi.expr, f, fbar);
  out.n = m;
  auto comp = std::make_shared<Composition>();
  comp->map.assign(f.begin(), f.end());
  comp->program = std::make_shared<const Program>(comp->map);
  comp->parent = std::make_shared<const KahlerPotential>(phi);
  out.domain = {DomainKind::Pullback, 0, comp};
  out.label = MetricLabel::Custom;
  out.name = "pullback of " + phi.name;
  return out;
}

double hermitian_defect(const Matrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace kahler::metric
