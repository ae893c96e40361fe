#include <chrono>
#include <cmath>
#include <future>
#include <thread>

#include "kahler/error.hpp"
#include "kahler/verify.hpp"
#include "verify/checks.hpp"

namespace kahler::verify {

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kTwoPi = 6.283185307179586;

}  // namespace

void Tolerances::set(std::string_view tier, double value) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw ConfigError("tolerance for tier '" + std::string(tier) + "' must be positive");
  if (tier == "identity") identity = value;
  else if (tier == "closed_form") closed_form = value;
  else if (tier == "curvature") curvature = value;
  else if (tier == "levi") levi = value;
  else if (tier == "fd") fd = value;
  else if (tier == "fd_curvature") fd_curvature = value;
  else if (tier == "probe") probe = value;
  else throw ConfigError("unknown tolerance tier '" + std::string(tier) + "'");
}

double Tolerances::get(std::string_view tier) const {
  if (tier == "identity") return identity;
  if (tier == "closed_form") return closed_form;
  if (tier == "curvature") return curvature;
  if (tier == "levi") return levi;
  if (tier == "fd") return fd;
  if (tier == "fd_curvature") return fd_curvature;
  if (tier == "probe") return probe;
  throw ConfigError("unknown tolerance tier '" + std::string(tier) + "'");
}

const std::vector<std::string>& Tolerances::tier_names() {
  static const std::vector<std::string> names{"identity", "closed_form", "curvature", "levi",
                                              "fd",       "fd_curvature", "probe"};
  return names;
}

void SuiteConfig::validate() const {
  if (samples && *samples < 10) throw ConfigError("samples must be at least 10");
  if (n < 2 || n > 4) throw ConfigError("n must be 2, 3 or 4");
}

Sampler::Sampler(std::uint64_t seed, std::string_view check_id, std::string_view part)
    : rng_(splitmix(seed ^ splitmix(fnv1a(part, fnv1a(check_id))))) {}

double Sampler::uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

double Sampler::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Sampler::normal() {
  // Box-Muller, one value per call so the stream stays prefix-stable
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

Complex Sampler::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Point Sampler::direction(int n) {
  while (true) {
    Point v(static_cast<std::size_t>(n));
    double s = 0.0;
    for (auto& c : v) {
      c = complex_normal();
      s += std::norm(c);
    }
    if (s < 1e-12) continue;
    const double inv = 1.0 / std::sqrt(s);
    for (auto& c : v) c *= inv;
    return v;
  }
}

Point Sampler::annulus(int n, double rmin, double rmax) {
  Point v = direction(n);
  const double r = uniform(rmin, rmax);
  for (auto& c : v) c *= r;
  return v;
}

Point Sampler::ball(std::span<const Complex> center, double radius) {
  const int n = static_cast<int>(center.size());
  Point v = direction(n);
  const double r = radius * std::pow(uniform(), 1.0 / (2.0 * n));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = center[i] + r * v[i];
  return v;
}

const std::vector<CheckSpec>& registry() {
  static const std::vector<CheckSpec> specs = detail::build_registry();
  return specs;
}

const CheckSpec& find_check(std::string_view id) {
  for (const auto& s : registry())
    if (s.id == id) return s;
  throw ConfigError("unknown check '" + std::string(id) + "'");
}

std::vector<std::string> all_check_ids() {
  std::vector<std::string> ids;
  for (const auto& s : registry()) ids.push_back(s.id);
  return ids;
}

CheckReport run_check(std::string_view id, const SuiteConfig& config) {
  config.validate();
  const auto& spec = find_check(id);
  const auto start = std::chrono::steady_clock::now();
  CheckReport r = spec.run(config);
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CheckReport> run_checks(const std::vector<std::string>& ids, const SuiteConfig& config) {
  config.validate();
  for (const auto& id : ids) (void)find_check(id);
  unsigned jobs = config.jobs == 0 ? std::max(1U, std::thread::hardware_concurrency()) : config.jobs;
  std::vector<CheckReport> out(ids.size());
  if (jobs <= 1 || ids.size() <= 1) {
    for (std::size_t i = 0; i < ids.size(); ++i) out[i] = run_check(ids[i], config);
    return out;
  }
  // bounded batches of concurrent checks; results stay in input order
  for (std::size_t begin = 0; begin < ids.size(); begin += jobs) {
    const std::size_t end = std::min(ids.size(), begin + jobs);
    std::vector<std::future<CheckReport>> running;
    for (std::size_t i = begin; i < end; ++i)
      running.push_back(std::async(std::launch::async, [&, i] { return run_check(ids[i], config); }));
    for (std::size_t i = begin; i < end; ++i) out[i] = running[i - begin].get();
  }
  return out;
}

}  // namespace kahler::verify
