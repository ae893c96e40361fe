#include "kahler/finite_diff.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

namespace kahler::fd {

namespace {

// A real direction of C^n: variable i, along the real (axis 0) or imaginary (axis 1) part.
struct Dir {
  int var;
  int axis;
};

std::vector<Complex> shifted(std::span<const Complex> p, Dir a, double ha, Dir b = {-1, 0}, double hb = 0.0) {
  std::vector<Complex> q(p.begin(), p.end());
  auto bump = [&](Dir d, double h) {
    if (d.var < 0) return;
    q[static_cast<std::size_t>(d.var)] += d.axis == 0 ? Complex{h, 0.0} : Complex{0.0, h};
  };
  bump(a, ha);
  bump(b, hb);
  return q;
}

template <class F>
auto first(const F& f, std::span<const Complex> p, Dir a, double h) -> std::invoke_result_t<F, std::vector<Complex>> {
  return (f(shifted(p, a, h)) - f(shifted(p, a, -h))) / (2.0 * h);
}

template <class F>
auto second(const F& f, std::span<const Complex> p, Dir a, Dir b, double h)
    -> std::invoke_result_t<F, std::vector<Complex>> {
  if (a.var == b.var && a.axis == b.axis) {
    return (f(shifted(p, a, h)) - 2.0 * f(std::vector<Complex>(p.begin(), p.end())) + f(shifted(p, a, -h))) / (h * h);
  }
  return (f(shifted(p, a, h, b, h)) - f(shifted(p, a, h, b, -h)) - f(shifted(p, a, -h, b, h)) +
          f(shifted(p, a, -h, b, -h))) /
         (4.0 * h * h);
}

template <class F>
auto hol_anti(const F& f, std::span<const Complex> p, int i, int j, double h)
    -> std::invoke_result_t<F, std::vector<Complex>> {
  const Complex I{0.0, 1.0};
  // (Dx_i - i Dy_i)(Dx_j + i Dy_j) / 4
  auto xx = second(f, p, {i, 0}, {j, 0}, h);
  auto yy = second(f, p, {i, 1}, {j, 1}, h);
  auto xy = second(f, p, {i, 0}, {j, 1}, h);
  auto yx = second(f, p, {i, 1}, {j, 0}, h);
  return ((xx + yy) + I * (xy - yx)) * 0.25;
}

}  // namespace

Complex d_hol(const Fn& f, std::span<const Complex> p, int i, double h) {
  const Complex I{0.0, 1.0};
  return 0.5 * (first(f, p, {i, 0}, h) - I * first(f, p, {i, 1}, h));
}

Complex d_anti(const Fn& f, std::span<const Complex> p, int i, double h) {
  const Complex I{0.0, 1.0};
  return 0.5 * (first(f, p, {i, 0}, h) + I * first(f, p, {i, 1}, h));
}

Complex d_hol_anti(const Fn& f, std::span<const Complex> p, int i, int j, double h) {
  return hol_anti(f, p, i, j, h);
}

Eigen::MatrixXcd complex_hessian(const Fn& f, std::span<const Complex> p, double h) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = hol_anti(f, p, static_cast<int>(i), static_cast<int>(j), h);
  return m;
}

Eigen::MatrixXcd d_hol(const MatrixFn& f, std::span<const Complex> p, int i, double h) {
  const Complex I{0.0, 1.0};
  return 0.5 * (first(f, p, {i, 0}, h) - I * first(f, p, {i, 1}, h));
}

Eigen::MatrixXcd d_anti(const MatrixFn& f, std::span<const Complex> p, int i, double h) {
  const Complex I{0.0, 1.0};
  return 0.5 * (first(f, p, {i, 0}, h) + I * first(f, p, {i, 1}, h));
}

Eigen::MatrixXcd d_hol_anti(const MatrixFn& f, std::span<const Complex> p, int i, int j, double h) {
  return hol_anti(f, p, i, j, h);
}

double hsc(const MatrixFn& metric, std::span<const Complex> p, std::span<const Complex> v, double h) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::VectorXcd vv(n);
  for (Eigen::Index k = 0; k < n; ++k) vv(k) = v[static_cast<std::size_t>(k)];
  const Eigen::MatrixXcd g = metric(p);
  Eigen::MatrixXcd dv = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd dvbar = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd ddbar = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    dv += vv(k) * d_hol(metric, p, static_cast<int>(k), h);
    dvbar += std::conj(vv(k)) * d_anti(metric, p, static_cast<int>(k), h);
    for (Eigen::Index l = 0; l < n; ++l)
      ddbar += vv(k) * std::conj(vv(l)) * d_hol_anti(metric, p, static_cast<int>(k), static_cast<int>(l), h);
  }
  const Eigen::MatrixXcd r = -ddbar + dv * g.inverse() * dvbar;
  const Complex rv = vv.transpose() * r * vv.conjugate();
  const Complex gv = vv.transpose() * g * vv.conjugate();
  return 2.0 * rv.real() / (gv.real() * gv.real());
}

Eigen::MatrixXcd ricci(const MatrixFn& metric, std::span<const Complex> p, double h) {
  Fn logdet = [&](std::span<const Complex> q) { return std::log(metric(q).determinant()); };
  return -complex_hessian(logdet, p, h);
}

double relative_error(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double relative_error(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) worst = std::max(worst, relative_error(a(i, j), b(i, j)));
  return worst;
}

}  // namespace kahler::fd
