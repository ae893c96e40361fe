#include "kahler/wirtinger.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <deque>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "intern.hpp"
#include "kahler/error.hpp"

namespace kahler::sym {

namespace detail {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer combined with the running hash
  v += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (v ^ (v >> 31));
}

std::uint64_t bits(double d) {
  if (d == 0.0) d = 0.0;  // fold -0
  return std::bit_cast<std::uint64_t>(d);
}

bool same_double(double a, double b) { return bits(a) == bits(b); }

}  // namespace

Table& table() {
  static Table* t = new Table;  // lives for the whole process
  return *t;
}

const Node* intern(Kind kind, Complex value, int index, Rational exponent, std::vector<Expr> children) {
  if (value.real() == 0.0) value.real(0.0);
  if (value.imag() == 0.0) value.imag(0.0);

  std::uint64_t h = mix(0x51ed270b27a3c1f5ULL, static_cast<std::uint64_t>(kind));
  h = mix(h, bits(value.real()));
  h = mix(h, bits(value.imag()));
  h = mix(h, static_cast<std::uint64_t>(index));
  h = mix(h, static_cast<std::uint64_t>(exponent.num));
  h = mix(h, static_cast<std::uint64_t>(exponent.den));
  for (const Expr& c : children) h = mix(h, c.hash());

  Table& t = table();
  auto& bucket = t.buckets[h];
  for (const Node* cand : bucket) {
    if (cand->kind != kind || cand->index != index || !(cand->exponent == exponent)) continue;
    if (!same_double(cand->value.real(), value.real()) || !same_double(cand->value.imag(), value.imag())) continue;
    if (cand->children.size() != children.size()) continue;
    if (std::equal(children.begin(), children.end(), cand->children.begin())) return cand;
  }

  std::uint64_t hm = 0;
  std::uint64_t am = 0;
  if (kind == Kind::HolVar) hm = std::uint64_t{1} << index;
  if (kind == Kind::AntiVar) am = std::uint64_t{1} << index;
  for (const Expr& c : children) {
    hm |= c.hol_mask();
    am |= c.anti_mask();
  }
  t.nodes.push_back(Node{kind, value, index, exponent, std::move(children), h, t.next_id++, hm, am});
  const Node* node = &t.nodes.back();
  bucket.push_back(node);
  return node;
}

void canonical_sort(std::vector<Expr>& v) {
  std::sort(v.begin(), v.end(), [](Expr a, Expr b) {
    if (a.hash() != b.hash()) return a.hash() < b.hash();
    return a.node().id < b.node().id;
  });
}

}  // namespace detail

using detail::intern;

// --- Rational ----------------------------------------------------------------

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ConstructionError("rational exponent with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  return {num, den};
}

namespace {

Rational add(Rational a, Rational b) { return make_rational(a.num * b.den + b.num * a.den, a.den * b.den); }
Rational mul(Rational a, Rational b) { return make_rational(a.num * b.num, a.den * b.den); }

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

// --- Expr accessors ----------------------------------------------------------

Expr::Expr() : Expr(Complex{0.0, 0.0}) {}
Expr::Expr(double c) : Expr(Complex{c, 0.0}) {}
Expr::Expr(Complex c) : node_(constant(c).get()) {}

Kind Expr::kind() const { return node_->kind; }
bool Expr::is_constant(Complex c) const { return node_->kind == Kind::Constant && node_->value == c; }
Complex Expr::value() const { return node_->value; }
int Expr::index() const { return node_->index; }
Rational Expr::exponent() const { return node_->exponent; }
const std::vector<Expr>& Expr::children() const { return node_->children; }
std::uint64_t Expr::hash() const { return node_->hash; }
std::uint64_t Expr::hol_mask() const { return node_->hol_mask; }
std::uint64_t Expr::anti_mask() const { return node_->anti_mask; }

// --- leaves ------------------------------------------------------------------

Expr constant(Complex c) {
  std::lock_guard lock(detail::table().mu);
  return Expr(intern(Kind::Constant, c, -1, {1, 1}, {}));
}

Expr hol(int i) {
  if (i < 0 || i >= kMaxVars) throw ConstructionError("variable index out of range: " + std::to_string(i));
  std::lock_guard lock(detail::table().mu);
  return Expr(intern(Kind::HolVar, {}, i, {1, 1}, {}));
}

Expr antihol(int i) {
  if (i < 0 || i >= kMaxVars) throw ConstructionError("variable index out of range: " + std::to_string(i));
  std::lock_guard lock(detail::table().mu);
  return Expr(intern(Kind::AntiVar, {}, i, {1, 1}, {}));
}

// --- sums ----------------------------------------------------------------------

namespace {

// Splits c * rest into (c, rest); rest is the constant 1 for pure constants.
std::pair<Complex, Expr> split_coefficient(Expr t) {
  if (t.kind() != Kind::Product) return {Complex{1.0, 0.0}, t};
  const auto& ch = t.children();
  auto it = std::find_if(ch.begin(), ch.end(), [](Expr c) { return c.is_constant(); });
  if (it == ch.end()) return {Complex{1.0, 0.0}, t};
  std::vector<Expr> rest;
  rest.reserve(ch.size() - 1);
  for (Expr c : ch)
    if (c != *it) rest.push_back(c);
  Expr r = rest.size() == 1 ? rest.front() : product(std::move(rest));
  return {it->value(), r};
}

}  // namespace

Expr sum(std::vector<Expr> terms) {
  std::lock_guard lock(detail::table().mu);
  std::vector<Expr> flat;
  flat.reserve(terms.size());
  for (Expr t : terms) {
    if (t.kind() == Kind::Sum) {
      flat.insert(flat.end(), t.children().begin(), t.children().end());
    } else {
      flat.push_back(t);
    }
  }

  Complex c{0.0, 0.0};
  std::vector<std::pair<Expr, Complex>> groups;
  std::unordered_map<const Node*, std::size_t> slot;
  for (Expr t : flat) {
    if (t.is_constant()) {
      c += t.value();
      continue;
    }
    auto [coef, rest] = split_coefficient(t);
    auto [it, fresh] = slot.try_emplace(rest.get(), groups.size());
    if (fresh) {
      groups.emplace_back(rest, coef);
    } else {
      groups[it->second].second += coef;
    }
  }

  std::vector<Expr> out;
  out.reserve(groups.size() + 1);
  for (auto& [rest, coef] : groups) {
    if (coef == Complex{0.0, 0.0}) continue;
    out.push_back(coef == Complex{1.0, 0.0} ? rest : product({constant(coef), rest}));
  }
  if (c != Complex{0.0, 0.0}) out.push_back(constant(c));
  if (out.empty()) return constant(0.0);
  if (out.size() == 1) return out.front();
  detail::canonical_sort(out);
  return Expr(intern(Kind::Sum, {}, -1, {1, 1}, std::move(out)));
}

// --- products ----------------------------------------------------------------

Expr product(std::vector<Expr> factors) {
  std::lock_guard lock(detail::table().mu);
  std::vector<Expr> flat;
  flat.reserve(factors.size());
  for (Expr f : factors) {
    if (f.kind() == Kind::Product) {
      flat.insert(flat.end(), f.children().begin(), f.children().end());
    } else {
      flat.push_back(f);
    }
  }

  Complex c{1.0, 0.0};
  std::vector<std::pair<Expr, Rational>> groups;
  std::unordered_map<const Node*, std::size_t> slot;
  for (Expr f : flat) {
    if (f.is_constant()) {
      c *= f.value();
      continue;
    }
    Expr base = f;
    Rational r{1, 1};
    if (f.kind() == Kind::Power) {
      base = f.children().front();
      r = f.exponent();
    }
    auto [it, fresh] = slot.try_emplace(base.get(), groups.size());
    if (fresh) {
      groups.emplace_back(base, r);
    } else {
      groups[it->second].second = add(groups[it->second].second, r);
    }
  }
  if (c == Complex{0.0, 0.0}) return constant(0.0);

  std::vector<Expr> out;
  out.reserve(groups.size() + 1);
  bool nested = false;
  for (auto& [base, r] : groups) {
    if (r.num == 0) continue;
    Expr p = power(base, r);
    if (p.is_constant()) {
      c *= p.value();
      continue;
    }
    nested = nested || p.kind() == Kind::Product;
    out.push_back(p);
  }
  if (nested) {
    // an integer power distributed over a product base; merge once more
    if (c != Complex{1.0, 0.0}) out.push_back(constant(c));
    return product(std::move(out));
  }
  if (c != Complex{1.0, 0.0}) out.push_back(constant(c));
  if (out.empty()) return constant(c);
  if (out.size() == 1) return out.front();
  detail::canonical_sort(out);
  return Expr(intern(Kind::Product, {}, -1, {1, 1}, std::move(out)));
}

Expr quotient(Expr num, Expr den) { return product({num, power(den, -1)}); }

// --- powers and transcendental nodes -------------------------------------------

bool on_branch_cut(Complex x) {
  const double scale = std::max(1.0, std::abs(x));
  return x.real() <= kBranchCutTol * scale && std::abs(x.imag()) <= kBranchCutTol * scale;
}

Expr power(Expr base, Rational exponent) {
  const Rational r = make_rational(exponent.num, exponent.den);
  if (r.num == 0) return constant(1.0);
  if (r.num == 1 && r.den == 1) return base;

  std::lock_guard lock(detail::table().mu);
  if (base.is_constant()) {
    const Complex b = base.value();
    if (r.is_integer()) {
      if (!(r.num < 0 && b == Complex{0.0, 0.0})) return constant(ipow(b, r.num));
    } else if (!on_branch_cut(b)) {
      if (r.den == 2) return constant(ipow(std::sqrt(b), r.num));
      return constant(std::exp(r.value() * std::log(b)));
    }
  }
  if (r.is_integer()) {
    if (base.kind() == Kind::Power) return power(base.children().front(), mul(base.exponent(), r));
    if (base.kind() == Kind::Product) {
      std::vector<Expr> fs;
      fs.reserve(base.children().size());
      for (Expr f : base.children()) fs.push_back(power(f, r));
      return product(std::move(fs));
    }
    if (base.kind() == Kind::Exp) return exp(product({constant(static_cast<double>(r.num)), base.children().front()}));
  }
  return Expr(intern(Kind::Power, {}, -1, r, {base}));
}

Expr power(Expr base, std::int64_t exponent) { return power(base, Rational{exponent, 1}); }

Expr sqrt(Expr base) { return power(base, Rational{1, 2}); }

Expr log(Expr arg) {
  std::lock_guard lock(detail::table().mu);
  if (arg.is_constant() && !on_branch_cut(arg.value())) return constant(std::log(arg.value()));
  return Expr(intern(Kind::Log, {}, -1, {1, 1}, {arg}));
}

Expr exp(Expr arg) {
  std::lock_guard lock(detail::table().mu);
  if (arg.is_constant()) return constant(std::exp(arg.value()));
  return Expr(intern(Kind::Exp, {}, -1, {1, 1}, {arg}));
}

Expr build(Kind kind, std::vector<Expr> children, Rational exponent) {
  auto need = [&](std::size_t k) {
    if (children.size() != k)
      throw ConstructionError("arity mismatch: kind expects " + std::to_string(k) + " children, got " +
                              std::to_string(children.size()));
  };
  switch (kind) {
    case Kind::Constant:
    case Kind::HolVar:
    case Kind::AntiVar:
      throw ConstructionError("leaf kinds are built with constant()/hol()/antihol()");
    case Kind::Sum:
      if (children.empty()) throw ConstructionError("arity mismatch: sum needs at least one child");
      return sum(std::move(children));
    case Kind::Product:
      if (children.empty()) throw ConstructionError("arity mismatch: product needs at least one child");
      return product(std::move(children));
    case Kind::Quotient:
      need(2);
      return quotient(children[0], children[1]);
    case Kind::Power:
      need(1);
      return power(children[0], make_rational(exponent.num, exponent.den));
    case Kind::Log:
      need(1);
      return log(children[0]);
    case Kind::Exp:
      need(1);
      return exp(children[0]);
  }
  throw ConstructionError("unknown node kind");
}

Expr operator+(Expr a, Expr b) { return sum({a, b}); }
Expr operator-(Expr a, Expr b) { return sum({a, product({constant(-1.0), b})}); }
Expr operator*(Expr a, Expr b) { return product({a, b}); }
Expr operator/(Expr a, Expr b) { return quotient(a, b); }
Expr operator-(Expr a) { return product({constant(-1.0), a}); }

Expr norm_squared(int n, int offset) {
  std::vector<Expr> terms;
  terms.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) terms.push_back(hol(offset + i) * antihol(offset + i));
  return sum(std::move(terms));
}

// --- traversal utilities -------------------------------------------------------

std::size_t dag_size(Expr e) {
  std::unordered_map<const Node*, bool> seen;
  std::vector<Expr> stack{e};
  while (!stack.empty()) {
    Expr x = stack.back();
    stack.pop_back();
    if (!seen.emplace(x.get(), true).second) continue;
    for (Expr c : x.children()) stack.push_back(c);
  }
  return seen.size();
}

namespace {

void print(std::ostringstream& os, Expr e, int depth) {
  if (depth <= 0) {
    os << "...";
    return;
  }
  auto join = [&](const char* op) {
    os << '(';
    for (std::size_t k = 0; k < e.children().size(); ++k) {
      if (k) os << op;
      print(os, e.children()[k], depth - 1);
    }
    os << ')';
  };
  switch (e.kind()) {
    case Kind::Constant:
      if (e.value().imag() == 0.0) {
        os << e.value().real();
      } else {
        os << '(' << e.value().real() << (e.value().imag() < 0 ? "-" : "+") << std::abs(e.value().imag()) << "i)";
      }
      break;
    case Kind::HolVar: os << 'z' << e.index(); break;
    case Kind::AntiVar: os << "zb" << e.index(); break;
    case Kind::Sum: join(" + "); break;
    case Kind::Product:
    case Kind::Quotient: join("*"); break;
    case Kind::Power:
      os << "pow(";
      print(os, e.children().front(), depth - 1);
      os << ", " << e.exponent().num;
      if (e.exponent().den != 1) os << '/' << e.exponent().den;
      os << ')';
      break;
    case Kind::Log:
      os << "log(";
      print(os, e.children().front(), depth - 1);
      os << ')';
      break;
    case Kind::Exp:
      os << "exp(";
      print(os, e.children().front(), depth - 1);
      os << ')';
      break;
  }
}

}  // namespace

std::string to_string(Expr e, int max_depth) {
  std::ostringstream os;
  os.precision(17);
  print(os, e, max_depth);
  return os.str();
}

}  // namespace kahler::sym
