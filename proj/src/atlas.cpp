#include "kahler/atlas.hpp"

#include <cmath>
#include <sstream>

#include "kahler/error.hpp"

namespace kahler::atlas {

using namespace sym;

namespace {

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (Complex c : v) s += std::norm(c);
  return std::sqrt(s);
}

void check_chart_index(int j, int n) {
  if (j < 1 || j > n) throw ChartDomainError("chart index " + std::to_string(j) + " outside 1.." + std::to_string(n));
}

}  // namespace

Point normalize_homogeneous(std::span<const Complex> t) {
  const double nt = norm(t);
  if (nt == 0.0) throw DomainError("homogeneous coordinates are all zero");
  Point out(t.begin(), t.end());
  for (auto& c : out) c /= nt;
  for (Complex c : out) {
    if (std::abs(c) > 1e-12) {
      const Complex phase = std::conj(c) / std::abs(c);
      for (auto& d : out) d *= phase;
      break;
    }
  }
  return out;
}

BlowupPoint BlowupPoint::make(Point z, Point t) {
  if (z.size() < 2) throw DomainError("blow-up points need n >= 2");
  if (z.size() != t.size()) throw DomainError("z and t have different lengths");
  Point tn = normalize_homogeneous(t);
  const double scale = kIncidenceTol * (norm(tn) * norm(z) + 1.0);
  for (std::size_t a = 0; a < z.size(); ++a) {
    for (std::size_t b = a + 1; b < z.size(); ++b) {
      if (std::abs(tn[a] * z[b] - tn[b] * z[a]) > scale) {
        std::ostringstream os;
        os << "incidence violated: t_" << a + 1 << " z_" << b + 1 << " != t_" << b + 1 << " z_" << a + 1;
        throw DomainError(os.str());
      }
    }
  }
  bool on_h = true;
  for (Complex c : z) on_h = on_h && c == Complex{0.0, 0.0};
  return BlowupPoint(std::move(z), std::move(tn), on_h);
}

BlowupPoint chart_to_total(const ChartPoint& p) {
  const int n = static_cast<int>(p.w.size());
  check_chart_index(p.j, n);
  const auto jj = static_cast<std::size_t>(p.j - 1);
  const Complex wj = p.w[jj];
  Point z(p.w.size());
  Point t(p.w.size());
  for (std::size_t i = 0; i < p.w.size(); ++i) {
    t[i] = i == jj ? Complex{1.0, 0.0} : p.w[i];
    z[i] = i == jj ? wj : wj * p.w[i];
  }
  return BlowupPoint::make(std::move(z), std::move(t));
}

ChartPoint total_to_chart(const BlowupPoint& p, int j) {
  check_chart_index(j, p.n());
  const auto jj = static_cast<std::size_t>(j - 1);
  const Point& t = p.t();
  if (std::abs(t[jj]) <= kChartTol * norm(t)) {
    throw ChartDomainError("point is not in chart U_" + std::to_string(j) + " (t_" + std::to_string(j) + " = 0)");
  }
  Point w(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) w[i] = i == jj ? p.z()[jj] : t[i] / t[jj];
  return {j, std::move(w)};
}

Point proj(const BlowupPoint& p) {
  if (p.on_exceptional()) throw ExceptionalDivisorError("proj is undefined on the exceptional divisor");
  return p.z();
}

BlowupPoint unproj(std::span<const Complex> z) {
  if (norm(z) == 0.0) throw ExceptionalDivisorError("unproj: zero vector has no image off the exceptional divisor");
  return BlowupPoint::make(Point(z.begin(), z.end()), Point(z.begin(), z.end()));
}

ChartPoint transition(const ChartPoint& p, int k) {
  if (p.j == k) return p;
  return total_to_chart(chart_to_total(p), k);
}

std::vector<Expr> transition_map(int n, int from, int to) {
  check_chart_index(from, n);
  check_chart_index(to, n);
  std::vector<Expr> out;
  out.reserve(static_cast<std::size_t>(n));
  if (from == to) {
    for (int i = 0; i < n; ++i) out.push_back(hol(i));
    return out;
  }
  const int k = from - 1;
  const int j = to - 1;
  // t has t_k = 1, z_j = w_k w_j; chart j divides by t_j = w_j
  for (int i = 0; i < n; ++i) {
    if (i == j) {
      out.push_back(hol(k) * hol(j));
    } else if (i == k) {
      out.push_back(power(hol(j), -1));
    } else {
      out.push_back(hol(i) / hol(j));
    }
  }
  return out;
}

std::vector<Expr> chart_of_projection(int n, int j) {
  check_chart_index(j, n);
  std::vector<Expr> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(i == j - 1 ? hol(i) : hol(i) / hol(j - 1));
  return out;
}

KahlerPotential chart_potential(MetricKind metric, int j, int n) {
  check_chart_index(j, n);
  const int jj = j - 1;
  Expr others = constant(0.0);
  for (int i = 0; i < n; ++i)
    if (i != jj) others = others + hol(i) * antihol(i);
  const Expr wj2 = hol(jj) * antihol(jj);

  if (metric == MetricKind::Simanca) {
    if (n < 2) throw ConstructionError("chart potentials need n >= 2");
    const Expr W = 1.0 + others;
    return {wj2 * W + log(W), n, {DomainKind::Chart, j}, MetricLabel::Simanca,
            "burns-simanca chart " + std::to_string(j)};
  }
  if (n != 2) throw ConstructionError("the Eguchi-Hanson metric is only defined for n = 2");
  const Expr W = 1.0 + others;
  const Expr s = sqrt(wj2 * wj2 * W * W + 1.0);
  return {s + log(W / (1.0 + s)), n, {DomainKind::Chart, j}, MetricLabel::EguchiHanson,
          "eguchi-hanson chart " + std::to_string(j)};
}

KahlerPotential restrict_to_slice(const KahlerPotential& chart_pot, Complex c) {
  if (chart_pot.domain.kind != DomainKind::Chart) throw ConstructionError("restriction needs a chart potential");
  const int jj = chart_pot.domain.chart - 1;
  std::vector<Expr> hi;
  std::vector<Expr> ai;
  for (int i = 0; i < chart_pot.n; ++i) {
    if (i < jj) {
      hi.push_back(hol(i));
      ai.push_back(antihol(i));
    } else if (i == jj) {
      hi.push_back(constant(c));
      ai.push_back(constant(std::conj(c)));
    } else {
      hi.push_back(hol(i - 1));
      ai.push_back(antihol(i - 1));
    }
  }
  KahlerPotential out = chart_pot;
  out.expr = substitute(chart_pot.expr, hi, ai);
  out.n = chart_pot.n - 1;
  out.domain = {c == Complex{0.0, 0.0} ? DomainKind::ExceptionalSlice : DomainKind::Whole, chart_pot.domain.chart};
  out.name = chart_pot.name + (c == Complex{0.0, 0.0} ? " on H" : " on slice");
  return out;
}

KahlerPotential restrict_to_exceptional(const KahlerPotential& chart_pot) {
  return restrict_to_slice(chart_pot, Complex{0.0, 0.0});
}

}  // namespace kahler::atlas
