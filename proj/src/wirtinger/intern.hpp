#pragma once

#include <deque>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "kahler/wirtinger.hpp"

namespace kahler::sym::detail {

struct DerivKey {
  const Node* node;
  std::uint32_t var;  // 2 * index + (kind == Anti)
  friend bool operator==(const DerivKey&, const DerivKey&) = default;
};

struct DerivKeyHash {
  std::size_t operator()(const DerivKey& k) const {
    return std::hash<const void*>{}(k.node) ^ (static_cast<std::size_t>(k.var) * 0x9e3779b97f4a7c15ULL);
  }
};

struct Table {
  std::recursive_mutex mu;
  std::deque<Node> nodes;
  std::unordered_map<std::uint64_t, std::vector<const Node*>> buckets;
  std::unordered_map<DerivKey, const Node*, DerivKeyHash> derivatives;
  std::uint64_t next_id = 0;
};

Table& table();

// Caller must hold table().mu.
const Node* intern(Kind kind, Complex value, int index, Rational exponent, std::vector<Expr> children);

void canonical_sort(std::vector<Expr>& v);

}  // namespace kahler::sym::detail
