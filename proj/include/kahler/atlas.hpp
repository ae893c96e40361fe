#pragma once

// The blow-up of C^n at the origin, as the incidence variety
//   { (z, [t]) in C^n x CP^{n-1} : t_a z_b = t_b z_a }
// with the standard charts psi_j (j = 1..n, 1-based as in the usual notation):
//   psi_j(z, [t])  = (t_1/t_j, ..., t_{j-1}/t_j, z_j, t_{j+1}/t_j, ..., t_n/t_j)
//   psi_j^{-1}(w)  = ((w_j w_1, ..., w_j, ..., w_j w_n), [w_1 : ... : 1 : ... : w_n])
// The exceptional divisor H is the locus z = 0.

#include <complex>
#include <span>
#include <vector>

#include "kahler/potential.hpp"

namespace kahler::atlas {

/// Incidence tolerance: |t_a z_b - t_b z_a| <= kIncidenceTol (||t|| ||z|| + 1).
inline constexpr double kIncidenceTol = 1e-10;
/// Chart guard: p lies in U_j when |t_j| > kChartTol ||t||.
inline constexpr double kChartTol = 1e-9;

class BlowupPoint {
 public:
  /// Validates incidence and normalizes t (unit norm, first nonzero
  /// component real positive). Throws DomainError on violation.
  [[nodiscard]] static BlowupPoint make(Point z, Point t);

  [[nodiscard]] int n() const { return static_cast<int>(z_.size()); }
  [[nodiscard]] const Point& z() const { return z_; }
  [[nodiscard]] const Point& t() const { return t_; }
  [[nodiscard]] bool on_exceptional() const { return on_exceptional_; }

 private:
  BlowupPoint(Point z, Point t, bool on_h) : z_(std::move(z)), t_(std::move(t)), on_exceptional_(on_h) {}
  Point z_;
  Point t_;
  bool on_exceptional_;
};

struct ChartPoint {
  int j;    // 1-based chart index
  Point w;  // chart coordinates
};

/// Canonical representative of [t]: unit norm, first nonzero entry real > 0.
[[nodiscard]] Point normalize_homogeneous(std::span<const Complex> t);

[[nodiscard]] BlowupPoint chart_to_total(const ChartPoint& p);
/// Throws ChartDomainError when p is not in U_j.
[[nodiscard]] ChartPoint total_to_chart(const BlowupPoint& p, int j);

/// p_r(z, [t]) = z; throws ExceptionalDivisorError on H.
[[nodiscard]] Point proj(const BlowupPoint& p);
/// p_r^{-1}(z) = (z, [z]); throws ExceptionalDivisorError for z = 0.
[[nodiscard]] BlowupPoint unproj(std::span<const Complex> z);

/// psi_k o psi_j^{-1}; throws ChartDomainError outside U_k.
[[nodiscard]] ChartPoint transition(const ChartPoint& p, int k);

/// psi_to o psi_from^{-1} as holomorphic expressions in the from-chart
/// coordinates (variables 0..n-1).
[[nodiscard]] std::vector<sym::Expr> transition_map(int n, int from, int to);

/// psi_j o p_r^{-1} as holomorphic expressions in z (off H).
[[nodiscard]] std::vector<sym::Expr> chart_of_projection(int n, int j);

enum class MetricKind { Simanca, EguchiHanson };

/// Potential of g_S (any n >= 2) or g_EH (n = 2) in chart U_j.
[[nodiscard]] KahlerPotential chart_potential(MetricKind metric, int j, int n);

/// Restricts a chart-j potential to H (w_j = 0); the result lives on the
/// remaining n-1 coordinates, renumbered 0..n-2 in order.
[[nodiscard]] KahlerPotential restrict_to_exceptional(const KahlerPotential& chart_pot);

/// Restricts a chart-j potential to the slice w_j = c (c = 0 is H).
[[nodiscard]] KahlerPotential restrict_to_slice(const KahlerPotential& chart_pot, Complex c);

}  // namespace kahler::atlas
