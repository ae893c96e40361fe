#pragma once

// Central finite differences on function values only. This is the
// independent oracle the symbolic derivatives are checked against; nothing in
// here touches the expression DAG.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace kahler::fd {

using Complex = std::complex<double>;
/// Evaluates a real-analytic function at a point of C^n (diagonal assignment).
using Fn = std::function<Complex(std::span<const Complex>)>;

[[nodiscard]] Complex d_hol(const Fn& f, std::span<const Complex> p, int i, double h = 1e-5);
[[nodiscard]] Complex d_anti(const Fn& f, std::span<const Complex> p, int i, double h = 1e-5);

/// d^2 f / dz_i dzbar_j from the real second-difference stencils.
[[nodiscard]] Complex d_hol_anti(const Fn& f, std::span<const Complex> p, int i, int j, double h = 1e-5);

/// The n x n complex Hessian [d_i dbar_j f].
[[nodiscard]] Eigen::MatrixXcd complex_hessian(const Fn& f, std::span<const Complex> p, double h = 1e-5);

/// Holomorphic / antiholomorphic directional derivative of a matrix-valued map.
using MatrixFn = std::function<Eigen::MatrixXcd(std::span<const Complex>)>;
[[nodiscard]] Eigen::MatrixXcd d_hol(const MatrixFn& f, std::span<const Complex> p, int i, double h);
[[nodiscard]] Eigen::MatrixXcd d_anti(const MatrixFn& f, std::span<const Complex> p, int i, double h);
[[nodiscard]] Eigen::MatrixXcd d_hol_anti(const MatrixFn& f, std::span<const Complex> p, int i, int j, double h);

/// Holomorphic sectional curvature 2 R(v,vbar,v,vbar) / g(v,vbar)^2 with
/// every derivative of the metric taken by finite differences of `metric`.
[[nodiscard]] double hsc(const MatrixFn& metric, std::span<const Complex> p, std::span<const Complex> v, double h);

/// Ricci form -d dbar log det g from finite differences of log det `metric`.
[[nodiscard]] Eigen::MatrixXcd ricci(const MatrixFn& metric, std::span<const Complex> p, double h);

/// |a - b| / max(1, |b|), maximized over entries.
[[nodiscard]] double relative_error(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
[[nodiscard]] double relative_error(Complex a, Complex b);

}  // namespace kahler::fd
