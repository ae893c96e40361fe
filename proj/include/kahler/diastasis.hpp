#pragma once

// Calabi's diastasis built by polarization:
//   D_p(z) = psi~(z, zbar) + psi~(p, pbar) - psi~(z, pbar) - psi~(p, zbar)
// together with the closed forms for the Burns-Simanca and Eguchi-Hanson
// metrics, which are checked against it.

#include <memory>
#include <span>
#include <vector>

#include "kahler/potential.hpp"

namespace kahler::diastasis {

/// Relative guard on the singular locus z . qbar = 0 of the closed forms.
inline constexpr double kSingularTol = 1e-8;

struct DiastasisFn {
  Point center;
  KahlerPotential base;
  sym::Polarized polarized;
  sym::Expr expr;  // D_p as a function of (z, zbar)
  std::shared_ptr<const sym::Program> program;

  [[nodiscard]] Complex value_complex(std::span<const Complex> z) const;
  /// Real part of D_p(z); admissibility of z is checked against the base.
  [[nodiscard]] double operator()(std::span<const Complex> z) const;
  /// D_p as a potential on the base domain (same metric as the base).
  [[nodiscard]] KahlerPotential as_potential() const;
};

/// Throws DomainError when p is not admissible for phi.
[[nodiscard]] DiastasisFn diastasis_from_potential(const KahlerPotential& phi, std::span<const Complex> p);

/// ||z - q||^2 + log(||z||^2 ||q||^2 / |z.qbar|^2).
[[nodiscard]] double closed_diastasis_S(std::span<const Complex> q, std::span<const Complex> z);

/// sqrt(||z||^4+1) + sqrt(||q||^4+1) - sqrt((z.qbar)^2+1) - sqrt((zbar.q)^2+1)
///   + log( ||z||^2 ||q||^2 |1 + sqrt((z.qbar)^2+1)|^2
///          / (|z.qbar|^2 (1 + sqrt(||z||^4+1)) (1 + sqrt(||q||^4+1))) ).
[[nodiscard]] double closed_diastasis_EH(std::span<const Complex> q, std::span<const Complex> z);

/// The same expression with the last quotient added without the logarithm.
[[nodiscard]] double closed_diastasis_EH_as_printed(std::span<const Complex> q, std::span<const Complex> z);

/// sup over samples w of |D^sub_p(w) - D^ambient_{f(p)}(f(w))|, with f given as
/// holomorphic expressions in the sub variables.
[[nodiscard]] double hereditary_check(const KahlerPotential& ambient, std::span<const sym::Expr> f,
                                      const KahlerPotential& sub, std::span<const Complex> p,
                                      std::span<const Point> samples);

/// ||a||^2 ||b||^2 / |a . bbar|^2, which is 1 exactly when a is proportional to b.
[[nodiscard]] double proportionality_factor(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace kahler::diastasis
