#pragma once

#include <limits>
#include <string>
#include <vector>

#include "kahler/verify.hpp"

namespace kahler::verify::detail {

/// Accumulates one condition over samples in sample order.
class ConditionAcc {
 public:
  ConditionAcc(std::string name, Compare cmp, double threshold) {
    c_.name = std::move(name);
    c_.cmp = cmp;
    c_.threshold = threshold;
    c_.value = cmp == Compare::AtLeastAll ? std::numeric_limits<double>::infinity() : 0.0;
  }

  void add(double v, std::span<const Complex> where = {}) {
    const bool worse = c_.samples == 0 || (c_.cmp == Compare::AtLeastAll ? v < c_.value : v > c_.value);
    if (worse) {
      c_.value = v;
      c_.worst_point.assign(where.begin(), where.end());
    }
    sum_ += v;
    ++c_.samples;
  }

  [[nodiscard]] Condition finish() const {
    Condition c = c_;
    c.mean = c.samples > 0 ? sum_ / c.samples : 0.0;
    switch (c.cmp) {
      case Compare::AtMost: c.pass = c.samples > 0 && c.value <= c.threshold; break;
      case Compare::AtLeastAll:
      case Compare::AtLeastSome: c.pass = c.samples > 0 && c.value >= c.threshold; break;
      case Compare::Record: c.pass = true; break;
    }
    return c;
  }

 private:
  Condition c_;
  double sum_ = 0.0;
};

CheckReport make_report(const CheckSpec& spec, const SuiteConfig& config, const std::vector<ConditionAcc>& conditions);

int sample_count(const SuiteConfig& config, int fallback);

std::vector<CheckSpec> build_registry();

}  // namespace kahler::verify::detail
