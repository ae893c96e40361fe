#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include "intern.hpp"
#include "kahler/error.hpp"
#include "kahler/wirtinger.hpp"

namespace kahler::sym {

Assignment Assignment::diagonal(std::span<const Complex> z) {
  Assignment a;
  a.z.assign(z.begin(), z.end());
  a.zbar.reserve(z.size());
  for (Complex c : z) a.zbar.push_back(std::conj(c));
  return a;
}

Assignment Assignment::polarized(std::span<const Complex> z, std::span<const Complex> wbar) {
  if (z.size() != wbar.size()) throw ConstructionError("assignment blocks differ in length");
  Assignment a;
  a.z.assign(z.begin(), z.end());
  a.zbar.assign(wbar.begin(), wbar.end());
  return a;
}

Program::Program(Expr root) : Program(std::span<const Expr>(&root, 1)) {}

Program::Program(std::span<const Expr> roots) {
  std::lock_guard lock(detail::table().mu);
  std::unordered_map<const Node*, std::uint32_t> slot;
  // iterative post-order DFS
  struct Frame {
    const Node* node;
    std::size_t next;
  };
  for (Expr root : roots) {
    if (!slot.count(root.get())) {
      std::vector<Frame> stack{{root.get(), 0}};
      while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.node->children.size()) {
          const Node* c = f.node->children[f.next++].get();
          if (!slot.count(c)) stack.push_back({c, 0});
          continue;
        }
        const Node* n = f.node;
        stack.pop_back();
        if (slot.count(n)) continue;
        Instr in{n->kind, n->index, n->exponent, n->value, static_cast<std::uint32_t>(child_slots_.size()),
                 static_cast<std::uint32_t>(n->children.size()), n};
        for (Expr c : n->children) child_slots_.push_back(slot.at(c.get()));
        slot.emplace(n, static_cast<std::uint32_t>(code_.size()));
        code_.push_back(in);
      }
    }
    roots_.push_back(slot.at(root.get()));
  }
}

namespace {

[[noreturn]] void domain_fail(std::size_t k, const Node* n, const std::string& what, Complex arg) {
  std::ostringstream os;
  os.precision(17);
  os << "domain-evaluation error at node #" << k << ": " << what << " (argument " << arg.real()
     << (arg.imag() < 0 ? "-" : "+") << std::abs(arg.imag()) << "i) in " << to_string(Expr(n), 4);
  throw DomainError(os.str());
}

Complex ipow(Complex b, std::int64_t k) {
  const bool inv = k < 0;
  std::uint64_t e = static_cast<std::uint64_t>(inv ? -k : k);
  Complex r{1.0, 0.0};
  while (e != 0) {
    if (e & 1U) r *= b;
    b *= b;
    e >>= 1U;
  }
  return inv ? Complex{1.0, 0.0} / r : r;
}

}  // namespace

void Program::eval_into(const Assignment& a, std::span<Complex> out) const {
  if (out.size() != roots_.size()) throw ConstructionError("output span does not match number of roots");
  std::vector<Complex> v(code_.size());
  const auto n = a.z.size();
  for (std::size_t k = 0; k < code_.size(); ++k) {
    const Instr& in = code_[k];
    const std::uint32_t* ch = child_slots_.data() + in.first_child;
    switch (in.kind) {
      case Kind::Constant:
        v[k] = in.value;
        break;
      case Kind::HolVar:
        if (static_cast<std::size_t>(in.index) >= n) domain_fail(k, in.source, "variable index beyond assignment", {});
        v[k] = a.z[static_cast<std::size_t>(in.index)];
        break;
      case Kind::AntiVar:
        if (static_cast<std::size_t>(in.index) >= a.zbar.size())
          domain_fail(k, in.source, "variable index beyond assignment", {});
        v[k] = a.zbar[static_cast<std::size_t>(in.index)];
        break;
      case Kind::Sum: {
        Complex s{0.0, 0.0};
        for (std::uint32_t m = 0; m < in.num_children; ++m) s += v[ch[m]];
        v[k] = s;
        break;
      }
      case Kind::Product:
      case Kind::Quotient: {
        Complex p{1.0, 0.0};
        for (std::uint32_t m = 0; m < in.num_children; ++m) p *= v[ch[m]];
        v[k] = p;
        break;
      }
      case Kind::Power: {
        const Complex b = v[ch[0]];
        const Rational r = in.exponent;
        if (r.is_integer()) {
          if (r.num < 0 && b == Complex{0.0, 0.0}) domain_fail(k, in.source, "division by zero", b);
          v[k] = ipow(b, r.num);
        } else {
          if (on_branch_cut(b)) domain_fail(k, in.source, "fractional power on the principal branch cut", b);
          v[k] = r.den == 2 ? ipow(std::sqrt(b), r.num) : std::exp(r.value() * std::log(b));
        }
        break;
      }
      case Kind::Log: {
        const Complex b = v[ch[0]];
        if (on_branch_cut(b)) domain_fail(k, in.source, "log on the principal branch cut", b);
        v[k] = std::log(b);
        break;
      }
      case Kind::Exp:
        v[k] = std::exp(v[ch[0]]);
        break;
    }
  }
  for (std::size_t r = 0; r < roots_.size(); ++r) out[r] = v[roots_[r]];
}

std::vector<Complex> Program::eval(const Assignment& a) const {
  std::vector<Complex> out(roots_.size());
  eval_into(a, out);
  return out;
}

Complex Program::eval1(const Assignment& a) const {
  Complex out;
  eval_into(a, std::span<Complex>(&out, 1));
  return out;
}

Complex eval(Expr e, const Assignment& a) { return Program(e).eval1(a); }

// --- polarization ----------------------------------------------------------------

Polarized polarize(Expr e) { return Polarized{e}; }

Complex Polarized::eval(std::span<const Complex> z, std::span<const Complex> wbar) const {
  return sym::eval(expr, Assignment::polarized(z, wbar));
}

// --- Taylor coefficients -----------------------------------------------------------

std::vector<PureCoefficient> taylor_pure_coeffs(Expr e, const Assignment& center, int max_order) {
  if (max_order > 6) throw ConstructionError("taylor_pure_coeffs: max_order above 6");
  const int n = center.n();
  std::vector<PureCoefficient> out;
  if (max_order < 1) return out;

  for (VarKind kind : {VarKind::Hol, VarKind::Anti}) {
    std::map<std::vector<int>, Expr> deriv;
    deriv.emplace(std::vector<int>(static_cast<std::size_t>(n), 0), e);
    std::vector<std::vector<int>> frontier{std::vector<int>(static_cast<std::size_t>(n), 0)};
    std::vector<std::vector<int>> alphas;
    std::vector<Expr> roots;
    for (int order = 1; order <= max_order; ++order) {
      std::vector<std::vector<int>> next;
      for (const auto& base : frontier) {
        // extend only at or after the last nonzero slot to enumerate each alpha once
        int last = 0;
        for (int i = 0; i < n; ++i)
          if (base[static_cast<std::size_t>(i)] > 0) last = i;
        for (int i = last; i < n; ++i) {
          auto alpha = base;
          ++alpha[static_cast<std::size_t>(i)];
          Expr d = wirtinger(deriv.at(base), i, kind);
          deriv.emplace(alpha, d);
          alphas.push_back(alpha);
          roots.push_back(d);
          next.push_back(std::move(alpha));
        }
      }
      frontier = std::move(next);
    }
    const auto values = Program(roots).eval(center);
    for (std::size_t k = 0; k < roots.size(); ++k) {
      double fact = 1.0;
      for (int a : alphas[k])
        for (int m = 2; m <= a; ++m) fact *= m;
      out.push_back({kind, alphas[k], values[k] / fact});
    }
  }
  return out;
}

bool real_on_diagonal(Expr e, int n, int samples, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const Program prog(e);
  int tested = 0;
  for (int s = 0; s < samples; ++s) {
    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (auto& c : z) c = {radius * (2.0 * uniform() - 1.0), radius * (2.0 * uniform() - 1.0)};
    try {
      const Complex v = prog.eval1(Assignment::diagonal(z));
      ++tested;
      if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real()))) return false;
    } catch (const DomainError&) {
    }
  }
  return tested > 0;
}

}  // namespace kahler::sym
