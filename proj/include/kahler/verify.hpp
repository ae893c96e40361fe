#pragma once

// Named, seeded checks. Every check draws its samples from its own random
// stream (seed, check id, part tag), so reports are reproducible bit for bit
// and independent of which other checks run alongside.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kahler/potential.hpp"

namespace kahler::verify {

/// Tolerance tiers; each can be overridden by name.
struct Tolerances {
  double identity = 1e-10;      // symbolic identities
  double closed_form = 1e-9;    // closed forms vs polarization
  double curvature = 1e-8;      // fourth-derivative chains
  double levi = 1e-6;           // strict plurisubharmonicity margin
  double fd = 1e-6;             // first/second derivatives vs finite differences
  double fd_curvature = 1e-5;   // curvature vs finite differences
  double probe = 1e-2;          // nonexistence probe defect floor

  /// Throws ConfigError for unknown tiers or non-positive values.
  void set(std::string_view tier, double value);
  [[nodiscard]] double get(std::string_view tier) const;
  [[nodiscard]] static const std::vector<std::string>& tier_names();
};

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::optional<int> samples;  // overrides each check's default count
  int n = 2;                   // dimension for the Burns-Simanca cases
  Tolerances tol;
  unsigned jobs = 0;           // 0: one per hardware thread

  /// Throws ConfigError when samples < 10 or n is outside 2..4.
  void validate() const;
};

enum class Compare {
  AtMost,       // max over samples <= threshold
  AtLeastAll,   // min over samples >= threshold
  AtLeastSome,  // max over samples >= threshold (existence witness)
  Record,       // reported, not asserted
};

struct Condition {
  std::string name;
  Compare cmp = Compare::AtMost;
  double threshold = 0.0;
  double value = 0.0;  // max (AtMost, AtLeastSome, Record) or min (AtLeastAll)
  double mean = 0.0;
  int samples = 0;
  Point worst_point;
  bool pass = true;
};

struct CheckReport {
  std::string id;
  bool pass = false;
  // headline statistics: those of the first condition
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  std::string claim_ref;
  Point worst_point;
  std::vector<Condition> conditions;
};

struct CheckSpec {
  std::string id;
  std::string description;
  std::string claim_ref;
  int default_samples = 0;
  bool is_probe = false;
  std::function<CheckReport(const SuiteConfig&)> run;
};

[[nodiscard]] const std::vector<CheckSpec>& registry();
/// Throws ConfigError for unknown ids.
[[nodiscard]] const CheckSpec& find_check(std::string_view id);

/// Runs one check; wall_ms is measured but left to the caller to publish.
[[nodiscard]] CheckReport run_check(std::string_view id, const SuiteConfig& config);
/// Validates every id first, then runs the checks (concurrently when
/// config.jobs allows) and returns reports in the order given.
[[nodiscard]] std::vector<CheckReport> run_checks(const std::vector<std::string>& ids, const SuiteConfig& config);
[[nodiscard]] std::vector<std::string> all_check_ids();

/// Deterministic random stream for one part of one check.
class Sampler {
 public:
  Sampler(std::uint64_t seed, std::string_view check_id, std::string_view part);

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double normal();
  Complex complex_normal();
  /// Unit vector in C^n.
  Point direction(int n);
  /// ||z|| uniform in [rmin, rmax], direction uniform.
  Point annulus(int n, double rmin = 0.2, double rmax = 2.0);
  /// Uniform in the ball of the given radius around `center`.
  Point ball(std::span<const Complex> center, double radius);

 private:
  std::mt19937_64 rng_;
};

// --- nonexistence probes ----------------------------------------------------

enum class ProbeSource { FlatLine, Flat2d, HyperbolicBall, FubiniStudy };

struct ProbeSpec {
  KahlerPotential target;   // on C^n minus the origin
  ProbeSource source;
  int degree = 3;
  int restarts = 50;
  int max_iterations = 200;   // per restart
  double source_radius = 0.5; // source samples lie in this ball
  int source_samples = 48;
  double image_rmin = 0.2;    // image kept in the sampling annulus
  double image_rmax = 2.0;
};

struct ProbeResult {
  double best_defect = 0.0;
  int best_restart = -1;
  std::vector<double> defects;  // one per restart
  std::vector<Complex> best_coefficients;  // component-major, graded monomials
  double image_min_norm = 0.0;  // range of ||f(w)|| over the samples, best map
  double image_max_norm = 0.0;
  long evaluations = 0;
};

/// Seeded random-restart Levenberg-Marquardt search over polynomial maps
/// f: (source) -> C^n of bounded degree, minimizing the pullback defect
/// sup_w ||f* g_target - g_source||_F over the source samples.
[[nodiscard]] ProbeResult probe_nonexistence(const ProbeSpec& spec, Sampler& sampler);

[[nodiscard]] int source_dimension(ProbeSource s);
[[nodiscard]] KahlerPotential source_potential(ProbeSource s);

}  // namespace kahler::verify
