// Acceptance run: the full suite at its default configuration, one PASS/FAIL
// line per criterion. Thresholds are restated here rather than read back from
// the suite's tolerance tiers.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kahler/report.hpp"
#include "kahler/verify.hpp"

using namespace kahler;
using namespace kahler::verify;

namespace {

class Reports {
 public:
  explicit Reports(const std::vector<CheckReport>& all) {
    for (const auto& r : all) by_id_[r.id] = &r;
  }
  const CheckReport& get(const std::string& id) const {
    const auto it = by_id_.find(id);
    if (it == by_id_.end()) throw std::runtime_error("missing report " + id);
    return *it->second;
  }
  const Condition& cond(const std::string& id, const std::string& name) const {
    for (const auto& c : get(id).conditions)
      if (c.name == name) return c;
    throw std::runtime_error("missing condition " + id + "/" + name);
  }

 private:
  std::map<std::string, const CheckReport*> by_id_;
};

struct Line {
  bool ok = true;
  std::string detail;

  void at_most(const std::string& label, double v, double bound) {
    ok = ok && v <= bound;
    add(label, v, "<=", bound);
  }
  void at_least(const std::string& label, double v, double bound) {
    ok = ok && v >= bound;
    add(label, v, ">=", bound);
  }
  void count(const std::string& label, int got, int want) {
    ok = ok && got >= want;
    if (!detail.empty()) detail += "; ";
    detail += label + " n=" + std::to_string(got) + " (need " + std::to_string(want) + ")";
  }

 private:
  void add(const std::string& label, double v, const char* op, double bound) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.3g %s %.0e%s", label.c_str(), v, op, bound,
                  (op[0] == '<' ? v <= bound : v >= bound) ? "" : " [FAILED]");
    if (!detail.empty()) detail += "; ";
    detail += buf;
  }
};

int failures = 0;

void emit(int number, const char* title, const Line& line) {
  failures += line.ok ? 0 : 1;
  std::printf("%s  criterion %2d  %s: %s\n", line.ok ? "PASS" : "FAIL", number, title, line.detail.c_str());
}

double elapsed_s(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

int main() {
  SuiteConfig cfg;  // seed 42, default sample counts
  const auto ids = all_check_ids();

  const auto start = std::chrono::steady_clock::now();
  const auto first = run_checks(ids, cfg);
  const double suite_s = elapsed_s(start);
  const auto second = run_checks(ids, cfg);
  const Reports r(first);

  {
    Line l;
    l.at_most("max|Ric|", r.cond("check_eh_ricci_flat", "ricci_max_entry").value, 1e-8);
    l.count("samples", r.cond("check_eh_ricci_flat", "ricci_max_entry").samples, 100);
    l.at_least("max|hsc|", r.cond("check_eh_ricci_flat", "hsc_nonflat_witness").value, 1e-2);
    emit(1, "Eguchi-Hanson Ricci flat, not flat", l);
  }
  {
    Line l;
    l.at_most("max|rho|", r.cond("check_bs_scalar_flat_n2", "scalar_trace_abs").value, 1e-8);
    l.count("samples", r.cond("check_bs_scalar_flat_n2", "scalar_trace_abs").samples, 100);
    l.at_least("max|Ric|", r.cond("check_bs_scalar_flat_n2", "ricci_nonflat_witness").value, 1e-3);
    emit(2, "Burns-Simanca n=2 scalar flat, not Ricci flat", l);
  }
  {
    Line l;
    // S: n = 2, 3, 4 over every chart (9 cases); EH: 2 charts; 50 pairs each
    l.at_most("|ddbar - FS|", r.cond("check_restrictions_to_H", "hessian_minus_fs").value, 1e-10);
    l.at_most("|hsc - 4|", r.cond("check_restrictions_to_H", "hsc_minus_4").value, 1e-8);
    l.count("pairs", r.cond("check_restrictions_to_H", "hsc_minus_4").samples, 11 * 50);
    emit(3, "restrictions to H are Fubini-Study with hsc 4", l);
  }
  {
    Line l;
    l.at_most("|g - 1|", r.cond("check_phi_isometry", "pullback_metric_minus_1").value, 1e-10);
    l.at_most("|factor - 1|", r.cond("check_phi_isometry", "proportionality_factor_minus_1").value, 1e-10);
    l.at_least("control", r.cond("check_phi_isometry", "control_perturbed_metric_deviation").value, 1e-3);
    l.count("maps", r.cond("check_phi_isometry", "hereditary_residual").samples, 6);
    emit(4, "Phi is an isometry of the flat line", l);
  }
  {
    Line l;
    const std::string id = "check_diastasis_closed_forms";
    l.at_most("S closed form", r.cond(id, "simanca_closed_vs_polarized").value, 1e-9);
    l.count("S points", r.cond(id, "simanca_closed_vs_polarized").samples, 50);
    l.at_most("EH closed form", r.cond(id, "eh_log_reading_vs_polarized").value, 1e-9);
    l.count("EH points", r.cond(id, "eh_log_reading_vs_polarized").samples, 50);
    l.at_most("pure terms", r.cond(id, "pure_taylor_coefficients").value, 1e-10);
    l.at_most("D_p(p)", r.cond(id, "value_at_center").value, 1e-10);
    emit(5, "diastasis closed forms", l);
  }
  {
    Line l;
    const std::string id = "check_einstein_ma_identity";
    l.at_most("CP1 lambda=4", r.cond(id, "fs_m1_lambda4").value, 1e-10);
    l.count("CP1 points", r.cond(id, "fs_m1_lambda4").samples, 50);
    l.at_most("CP2 lambda=6", r.cond(id, "fs_m2_lambda6").value, 1e-10);
    l.count("CP2 points", r.cond(id, "fs_m2_lambda6").samples, 50);
    l.at_least("lambda+0.1", r.cond(id, "control_lambda_shift").value, 1e-3);
    emit(6, "Einstein determinant identity", l);
  }
  {
    Line l;
    const auto& eh = r.cond("check_eqnew_psh", "eh_psi_levi_min_eig");
    const double s_dev = r.cond("check_eqnew_psh", "simanca_levi_eig_minus_1").value;
    l.at_least("min Levi eig", eh.value, 1e-6);
    l.count("q", eh.samples, 50);
    l.ok = l.ok && s_dev == 0.0;
    l.detail += "; S eigenvalue - 1 = " + report::format_real(s_dev) + (s_dev == 0.0 ? " (exact)" : " [FAILED]");
    emit(7, "strict plurisubharmonicity at q", l);
  }
  {
    Line l;
    const std::string id = "check_fd_cross_validation";
    l.at_most("first", r.cond(id, "first_derivatives_rel").value, 1e-6);
    l.at_most("second", r.cond(id, "second_derivatives_rel").value, 1e-6);
    l.at_most("Ricci", r.cond(id, "ricci_rel").value, 1e-5);
    l.at_most("scalar", r.cond(id, "scalar_trace_rel").value, 1e-5);
    l.at_most("hsc", r.cond(id, "hsc_rel").value, 1e-5);
    emit(8, "finite-difference cross-validation", l);
  }
  {
    Line l;
    l.at_most("flat line", r.get("probe_flat_line_s").max_residual, 1e-9);
    double slowest_ms = 0.0;
    int fewest_restarts = 1 << 30;
    for (const auto& id : ids) {
      if (!find_check(id).is_probe) continue;
      const auto& p = r.get(id);
      slowest_ms = std::max(slowest_ms, p.wall_ms);
      fewest_restarts = std::min(fewest_restarts, p.samples);
      if (id == "probe_flat_line_s") continue;
      l.at_least(id.substr(6), p.max_residual, 1e-2);
    }
    l.count("restarts", fewest_restarts, 50);
    l.ok = l.ok && slowest_ms <= 60e3;
    char buf[64];
    std::snprintf(buf, sizeof buf, "; slowest probe %.1f s <= 60 s", slowest_ms / 1e3);
    l.detail += buf;
    emit(9, "nonexistence probes (50 restarts, degree <= 3)", l);
  }
  {
    Line l;
    const bool same = report::to_json(first) == report::to_json(second);
    l.ok = same;
    l.detail = same ? "two seeded runs give byte-identical JSON" : "JSON differs between runs [FAILED]";
    emit(10, "determinism", l);
  }
  {
    Line l;
    l.ok = suite_s < 120.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "full suite %.1f s < 120 s", suite_s);
    l.detail = buf;
    failures += l.ok ? 0 : 1;
    std::printf("%s  runtime       suite wall time: %s\n", l.ok ? "PASS" : "FAIL", l.detail.c_str());
  }

  std::printf("%d failing criteria\n", failures);
  return failures == 0 ? 0 : 1;
}
