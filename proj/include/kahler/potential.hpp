#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "kahler/wirtinger.hpp"

namespace kahler {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;

enum class DomainKind {
  Whole,             // all of C^n
  Punctured,         // C^n minus the origin
  Chart,             // a blow-up chart U_j
  ExceptionalSlice,  // chart potential restricted to the exceptional divisor
  UnitBall,          // ||w|| < 1
  Pullback,          // composition with a holomorphic map
};

struct KahlerPotential;

/// Holomorphic map the potential was pulled back through, kept so that
/// admissibility can be checked on the image point.
struct Composition {
  std::vector<sym::Expr> map;
  std::shared_ptr<const sym::Program> program;
  std::shared_ptr<const KahlerPotential> parent;
};

struct Domain {
  Domain() = default;
  Domain(DomainKind k, int c = 0, std::shared_ptr<const Composition> v = {}) : kind(k), chart(c), via(std::move(v)) {}

  DomainKind kind = DomainKind::Whole;
  int chart = 0;  // 1-based chart index for Chart / ExceptionalSlice
  std::shared_ptr<const Composition> via;
};

enum class MetricLabel { Flat, FubiniStudy, Simanca, EguchiHanson, Ball, Custom };

/// A real-analytic Kahler potential on (a domain of) C^n.
/// Metric convention: g_{i jbar} = d_i dbar_j expr.
struct KahlerPotential {
  sym::Expr expr;
  int n = 0;
  Domain domain;
  MetricLabel label = MetricLabel::Custom;
  std::string name;
};

/// Minimum distance kept from excluded loci (origin, unit sphere).
inline constexpr double kExcludedLocusMargin = 1e-3;

/// Throws DomainError naming the guard that fired when p is outside the
/// admissible set of the potential.
void check_admissible(const KahlerPotential& phi, std::span<const Complex> p);

namespace potentials {

/// ||z||^2, the flat metric.
[[nodiscard]] KahlerPotential flat(int n);
/// log(1 + ||w||^2): Fubini-Study on an affine chart of CP^m, normalized to
/// holomorphic sectional curvature 4.
[[nodiscard]] KahlerPotential fubini_study(int m);
/// ||z||^2 + log ||z||^2 on C^n \ {0} (generalized Burns-Simanca).
[[nodiscard]] KahlerPotential simanca(int n);
/// sqrt(||z||^4 + 1) + log ||z||^2 - log(1 + sqrt(||z||^4 + 1)) on C^2 \ {0}.
[[nodiscard]] KahlerPotential eguchi_hanson();
/// -log(1 - ||w||^2), the unit-ball hyperbolic potential.
[[nodiscard]] KahlerPotential hyperbolic_ball(int m);

/// The part of the Eguchi-Hanson diastasis centred at q that carries the
/// strict plurisubharmonicity, as a function of z in C^2:
/// sqrt(||z||^4+1) + sqrt(||q||^4+1) - sqrt((z.qbar)^2+1) - sqrt((zbar.q)^2+1) - log(1+sqrt(||z||^4+1)).
[[nodiscard]] sym::Expr eguchi_hanson_psi(std::span<const Complex> q);

}  // namespace potentials

[[nodiscard]] std::string to_string(MetricLabel label);

}  // namespace kahler
