#pragma once

// Metric and curvature of a Kahler potential, with the conventions
//   g_{i jbar}         = d_i dbar_j phi
//   Ric_{i jbar}       = -d_i dbar_j log det g
//   rho_C              = g^{i jbar} Ric_{i jbar}   (Riemannian scalar = 2 rho_C)
//   R_{i jbar k lbar}  = -d_k dbar_l g_{i jbar} + g^{p qbar} (d_k g_{i qbar}) (dbar_l g_{p jbar})
//   hsc(v)             = 2 R(v, vbar, v, vbar) / g(v, vbar)^2
// so that ||z||^2 is the flat metric and log(1 + ||w||^2) has hsc 4.

#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <span>

#include "kahler/potential.hpp"

namespace kahler::metric {

using Matrix = Eigen::MatrixXcd;

/// Minimum eigenvalue accepted as positive definite.
inline constexpr double kPositiveDefiniteTol = 1e-10;

struct CurvatureSample {
  Point point;
  Matrix g;
  Matrix g_inv;
  double det_g = 0.0;
  Matrix ricci;
  double rho_c = 0.0;

  /// max |Ric - (lambda/2) g| over entries.
  [[nodiscard]] double einstein_residual(double lambda) const;
};

/// Compiles the symbolic derivative towers of one potential on first use and
/// evaluates them numerically. Thread-safe once constructed.
class CurvatureModel {
 public:
  explicit CurvatureModel(KahlerPotential phi);
  ~CurvatureModel();
  CurvatureModel(const CurvatureModel&) = delete;
  CurvatureModel& operator=(const CurvatureModel&) = delete;

  /// Shared model per distinct potential expression.
  [[nodiscard]] static std::shared_ptr<const CurvatureModel> cached(const KahlerPotential& phi);

  [[nodiscard]] const KahlerPotential& potential() const { return phi_; }
  [[nodiscard]] int n() const { return phi_.n; }

  /// Hermitian positive definite metric; throws DomainError /
  /// NotPositiveDefiniteError.
  [[nodiscard]] Matrix metric(std::span<const Complex> p) const;
  /// Complex Hessian without admissibility or definiteness checks.
  [[nodiscard]] Matrix hessian(std::span<const Complex> p) const;

  /// Ricci form from the symbolic log det (cofactor expansion for n <= 3,
  /// trace identity otherwise).
  [[nodiscard]] Matrix ricci(std::span<const Complex> p) const;
  /// Ricci form through d log det g = tr(g^{-1} dg), assembled numerically
  /// from symbolic third and fourth derivatives of phi.
  [[nodiscard]] Matrix ricci_trace_identity(std::span<const Complex> p) const;

  [[nodiscard]] Complex scalar_trace_complex(std::span<const Complex> p) const;
  [[nodiscard]] double scalar_trace(std::span<const Complex> p) const;

  [[nodiscard]] double hsc(std::span<const Complex> p, std::span<const Complex> v) const;

  [[nodiscard]] CurvatureSample sample(std::span<const Complex> p) const;

  /// Hessian and its first derivatives d_k g, dbar_k g at p, unchecked.
  struct Jet {
    Matrix g;
    std::vector<Matrix> d_hol;
    std::vector<Matrix> d_anti;
  };
  [[nodiscard]] Jet jet(std::span<const Complex> p) const;

 private:
  struct Tower;
  const Tower& tower() const;
  const sym::Program& ricci_program() const;
  void derivatives(std::span<const Complex> p, std::vector<Matrix>& d_hol, std::vector<Matrix>& d_anti,
                   std::vector<Matrix>& d_mixed, Matrix& g) const;

  KahlerPotential phi_;
  sym::Program hessian_;
  mutable std::once_flag tower_once_;
  mutable std::unique_ptr<Tower> tower_;
  mutable std::once_flag jet_once_;
  mutable std::unique_ptr<sym::Program> jet_;
  mutable std::once_flag ricci_once_;
  mutable std::unique_ptr<sym::Program> ricci_;
};

[[nodiscard]] Matrix metric_at(const KahlerPotential& phi, std::span<const Complex> p);
[[nodiscard]] Matrix ricci_at(const KahlerPotential& phi, std::span<const Complex> p);
[[nodiscard]] double scalar_trace(const KahlerPotential& phi, std::span<const Complex> p);
[[nodiscard]] double hsc_at(const KahlerPotential& phi, std::span<const Complex> p, std::span<const Complex> v);

/// Symbolic complex Hessian [d_i dbar_j f] of an expression in n variables.
[[nodiscard]] std::vector<sym::Expr> complex_hessian(sym::Expr f, int n);

/// Smallest eigenvalue of the Levi form d dbar f at p.
[[nodiscard]] double levi_min_eig(sym::Expr f, int n, std::span<const Complex> p);

/// |det(d dbar D)(p) - exp(-(lambda/2) D(p))|.
[[nodiscard]] double monge_ampere_residual(sym::Expr diastasis, int n, double lambda, std::span<const Complex> p);

/// Pulls phi back through the holomorphic map f: C^m -> C^n (f[i] are
/// expressions in hol variables 0..m-1 only).
[[nodiscard]] KahlerPotential pullback(const KahlerPotential& phi, std::span<const sym::Expr> f, int m);

/// Hermitian defect max |M - M^H|.
[[nodiscard]] double hermitian_defect(const Matrix& m);

}  // namespace kahler::metric
