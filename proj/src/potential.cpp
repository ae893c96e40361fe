#include "kahler/potential.hpp"

#include <cmath>
#include <sstream>

#include "kahler/error.hpp"

namespace kahler {

using namespace sym;

namespace {

double norm(std::span<const Complex> p) {
  double s = 0.0;
  for (Complex c : p) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace

void check_admissible(const KahlerPotential& phi, std::span<const Complex> p) {
  if (static_cast<int>(p.size()) != phi.n) {
    throw DomainError("point has " + std::to_string(p.size()) + " coordinates, potential '" + phi.name +
                      "' expects " + std::to_string(phi.n));
  }
  for (Complex c : p)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw DomainError("point has non-finite coordinates");

  switch (phi.domain.kind) {
    case DomainKind::Punctured:
      if (norm(p) < kExcludedLocusMargin) {
        std::ostringstream os;
        os << "excluded-locus guard: ||z|| = " << norm(p) << " < " << kExcludedLocusMargin << " for '" << phi.name
           << "' (defined off the origin)";
        throw DomainError(os.str());
      }
      break;
    case DomainKind::UnitBall:
      if (norm(p) > 1.0 - kExcludedLocusMargin) {
        std::ostringstream os;
        os << "unit-ball guard: ||w|| = " << norm(p) << " > " << 1.0 - kExcludedLocusMargin << " for '" << phi.name
           << "'";
        throw DomainError(os.str());
      }
      break;
    case DomainKind::Pullback: {
      const auto& via = *phi.domain.via;
      const auto image = via.program->eval(Assignment::diagonal(p));
      try {
        check_admissible(*via.parent, image);
      } catch (const DomainError& e) {
        throw DomainError(std::string("composition-domain error: image of the point is inadmissible: ") + e.what());
      }
      break;
    }
    case DomainKind::Whole:
    case DomainKind::Chart:
    case DomainKind::ExceptionalSlice:
      break;
  }
}

namespace potentials {

KahlerPotential flat(int n) {
  return {norm_squared(n), n, {DomainKind::Whole}, MetricLabel::Flat, "flat"};
}

KahlerPotential fubini_study(int m) {
  return {log(1.0 + norm_squared(m)), m, {DomainKind::Whole}, MetricLabel::FubiniStudy, "fubini-study"};
}

KahlerPotential simanca(int n) {
  if (n < 2) throw ConstructionError("the Burns-Simanca potential needs n >= 2");
  const Expr r = norm_squared(n);
  return {r + log(r), n, {DomainKind::Punctured}, MetricLabel::Simanca, "burns-simanca"};
}

KahlerPotential eguchi_hanson() {
  const Expr r = norm_squared(2);
  const Expr s = sqrt(r * r + 1.0);
  return {s + log(r) - log(1.0 + s), 2, {DomainKind::Punctured}, MetricLabel::EguchiHanson, "eguchi-hanson"};
}

KahlerPotential hyperbolic_ball(int m) {
  return {-log(1.0 - norm_squared(m)), m, {DomainKind::UnitBall}, MetricLabel::Ball, "hyperbolic-ball"};
}

Expr eguchi_hanson_psi(std::span<const Complex> q) {
  if (q.size() != 2) throw ConstructionError("eguchi_hanson_psi: q must lie in C^2");
  const Expr r = norm_squared(2);
  Expr zq = constant(0.0);
  Expr zbq = constant(0.0);
  double qq = 0.0;
  for (int i = 0; i < 2; ++i) {
    zq = zq + hol(i) * std::conj(q[static_cast<std::size_t>(i)]);
    zbq = zbq + antihol(i) * q[static_cast<std::size_t>(i)];
    qq += std::norm(q[static_cast<std::size_t>(i)]);
  }
  const Expr s = sqrt(r * r + 1.0);
  return s + std::sqrt(qq * qq + 1.0) - sqrt(zq * zq + 1.0) - sqrt(zbq * zbq + 1.0) - log(1.0 + s);
}

}  // namespace potentials

std::string to_string(MetricLabel label) {
  switch (label) {
    case MetricLabel::Flat: return "flat";
    case MetricLabel::FubiniStudy: return "fubini-study";
    case MetricLabel::Simanca: return "burns-simanca";
    case MetricLabel::EguchiHanson: return "eguchi-hanson";
    case MetricLabel::Ball: return "hyperbolic-ball";
    case MetricLabel::Custom: return "custom";
  }
  return "custom";
}

}  // namespace kahler
