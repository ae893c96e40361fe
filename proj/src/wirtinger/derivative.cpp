#include <functional>
#include <unordered_map>

#include "intern.hpp"
#include "kahler/error.hpp"
#include "kahler/wirtinger.hpp"

namespace kahler::sym {

namespace {

bool depends(Expr e, int i, VarKind kind) {
  const std::uint64_t bit = std::uint64_t{1} << i;
  return ((kind == VarKind::Hol ? e.hol_mask() : e.anti_mask()) & bit) != 0;
}

Expr differentiate(Expr e, int i, VarKind kind) {
  if (!depends(e, i, kind)) return constant(0.0);

  auto& cache = detail::table().derivatives;
  const detail::DerivKey key{e.get(), static_cast<std::uint32_t>(2 * i + (kind == VarKind::Anti ? 1 : 0))};
  if (auto it = cache.find(key); it != cache.end()) return Expr(it->second);

  Expr d;
  switch (e.kind()) {
    case Kind::Constant:
      d = constant(0.0);
      break;
    case Kind::HolVar:
    case Kind::AntiVar:
      d = constant(1.0);  // depends() already matched kind and index
      break;
    case Kind::Sum: {
      std::vector<Expr> terms;
      terms.reserve(e.children().size());
      for (Expr c : e.children()) terms.push_back(differentiate(c, i, kind));
      d = sum(std::move(terms));
      break;
    }
    case Kind::Product:
    case Kind::Quotient: {
      const auto& ch = e.children();
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < ch.size(); ++k) {
        if (!depends(ch[k], i, kind)) continue;
        std::vector<Expr> fs;
        fs.reserve(ch.size());
        for (std::size_t m = 0; m < ch.size(); ++m) fs.push_back(m == k ? differentiate(ch[k], i, kind) : ch[m]);
        terms.push_back(product(std::move(fs)));
      }
      d = sum(std::move(terms));
      break;
    }
    case Kind::Power: {
      Expr base = e.children().front();
      const Rational r = e.exponent();
      d = product({constant(r.value()), power(base, make_rational(r.num - r.den, r.den)),
                   differentiate(base, i, kind)});
      break;
    }
    case Kind::Log: {
      Expr arg = e.children().front();
      d = product({differentiate(arg, i, kind), power(arg, -1)});
      break;
    }
    case Kind::Exp:
      d = product({e, differentiate(e.children().front(), i, kind)});
      break;
  }
  cache.emplace(key, d.get());
  return d;
}

Expr rebuild(Expr e, const std::function<Expr(Expr)>& leaf, std::unordered_map<const Node*, Expr>& memo) {
  if (auto it = memo.find(e.get()); it != memo.end()) return it->second;
  Expr out;
  switch (e.kind()) {
    case Kind::Constant:
    case Kind::HolVar:
    case Kind::AntiVar:
      out = leaf(e);
      break;
    default: {
      std::vector<Expr> ch;
      ch.reserve(e.children().size());
      for (Expr c : e.children()) ch.push_back(rebuild(c, leaf, memo));
      switch (e.kind()) {
        case Kind::Sum: out = sum(std::move(ch)); break;
        case Kind::Product:
        case Kind::Quotient: out = product(std::move(ch)); break;
        case Kind::Power: out = power(ch.front(), e.exponent()); break;
        case Kind::Log: out = log(ch.front()); break;
        case Kind::Exp: out = exp(ch.front()); break;
        default: break;
      }
    }
  }
  memo.emplace(e.get(), out);
  return out;
}

}  // namespace

Expr wirtinger(Expr e, int i, VarKind kind) {
  if (i < 0 || i >= kMaxVars) throw ConstructionError("derivative index out of range: " + std::to_string(i));
  std::lock_guard lock(detail::table().mu);
  return differentiate(e, i, kind);
}

Expr substitute(Expr e, std::span<const Expr> hol_images, std::span<const Expr> anti_images) {
  std::lock_guard lock(detail::table().mu);
  std::unordered_map<const Node*, Expr> memo;
  return rebuild(
      e,
      [&](Expr leaf) {
        const auto i = static_cast<std::size_t>(leaf.index());
        if (leaf.kind() == Kind::HolVar && i < hol_images.size()) return hol_images[i];
        if (leaf.kind() == Kind::AntiVar && i < anti_images.size()) return anti_images[i];
        return leaf;
      },
      memo);
}

Expr conjugate(Expr e) {
  std::lock_guard lock(detail::table().mu);
  std::unordered_map<const Node*, Expr> memo;
  return rebuild(
      e,
      [](Expr leaf) {
        switch (leaf.kind()) {
          case Kind::Constant: return constant(std::conj(leaf.value()));
          case Kind::HolVar: return antihol(leaf.index());
          case Kind::AntiVar: return hol(leaf.index());
          default: return leaf;
        }
      },
      memo);
}

}  // namespace kahler::sym
