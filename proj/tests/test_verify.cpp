#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <set>

#include "kahler/error.hpp"
#include "kahler/report.hpp"
#include "kahler/verify.hpp"

using namespace kahler;
using namespace kahler::verify;

TEST_CASE("sampler streams are reproducible and separated by id and part") {
  Sampler a(42, "check_x", "points");
  Sampler b(42, "check_x", "points");
  Sampler c(42, "check_x", "controls");
  Sampler d(43, "check_x", "points");
  for (int i = 0; i < 20; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x != c.uniform());
    CHECK(x != d.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("sampler annulus and ball respect their radii") {
  Sampler s(1, "geometry", "annulus");
  for (int i = 0; i < 200; ++i) {
    const Point z = s.annulus(3);
    double r = 0.0;
    for (Complex c : z) r += std::norm(c);
    r = std::sqrt(r);
    CHECK(r >= 0.2 - 1e-15);
    CHECK(r <= 2.0 + 1e-15);
    const Point center{Complex{1.0, 0.0}, Complex{0.0, 2.0}};
    const Point w = s.ball(center, 0.3);
    double d = std::norm(w[0] - center[0]) + std::norm(w[1] - center[1]);
    CHECK(std::sqrt(d) <= 0.3 + 1e-15);
  }
}

TEST_CASE("more samples extend the same prefix") {
  // the first k samples drawn for a larger count coincide with a smaller run
  Sampler a(9, "prefix", "p");
  Sampler b(9, "prefix", "p");
  std::vector<Point> small;
  for (int i = 0; i < 10; ++i) small.push_back(a.annulus(2));
  for (int i = 0; i < 10; ++i) CHECK(b.annulus(2) == small[static_cast<std::size_t>(i)]);
}

TEST_CASE("config validation") {
  SuiteConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.samples = 9;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.samples = 10;
  cfg.n = 5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.n = 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  Tolerances tol;
  tol.set("curvature", 1e-7);
  CHECK(tol.get("curvature") == 1e-7);
  CHECK_THROWS_AS(tol.set("curvature", 0.0), ConfigError);
  CHECK_THROWS_AS(tol.set("curvature", -1.0), ConfigError);
  CHECK_THROWS_AS(tol.set("bogus", 1.0), ConfigError);
  CHECK(Tolerances::tier_names().size() == 7);
}

TEST_CASE("registry ids are unique and unknown ids are rejected before running") {
  const auto ids = all_check_ids();
  CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
  CHECK(ids.size() == 15);
  CHECK_THROWS_AS((void)find_check("no_such_check"), ConfigError);
  SuiteConfig cfg;
  CHECK_THROWS_AS((void)run_checks({"check_eh_ricci_flat", "no_such_check"}, cfg), ConfigError);
  for (const auto& spec : registry()) {
    CHECK(spec.default_samples >= 10);
    CHECK_FALSE(spec.claim_ref.empty());
    CHECK(spec.is_probe == (spec.id.rfind("probe_", 0) == 0));
  }
}

TEST_CASE("reports are deterministic and every check has a failable control") {
  SuiteConfig cfg;
  cfg.samples = 10;
  cfg.jobs = 1;
  const std::vector<std::string> ids{"check_eh_ricci_flat", "check_bs_scalar_flat_n2", "check_phi_isometry",
                                     "check_einstein_ma_identity", "check_eqnew_psh"};
  const auto first = run_checks(ids, cfg);
  const auto second = run_checks(ids, cfg);
  REQUIRE(first.size() == ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    CHECK(first[i].id == ids[i]);
    CHECK(first[i].pass);
    CHECK(first[i].max_residual == second[i].max_residual);
    CHECK(first[i].mean_residual == second[i].mean_residual);
    CHECK(first[i].worst_point == second[i].worst_point);
    bool has_control = false;
    for (const auto& c : first[i].conditions) has_control = has_control || c.name.rfind("control_", 0) == 0;
    CHECK(has_control);
  }
  CHECK(report::to_json(first) == report::to_json(second));
}

TEST_CASE("concurrent and sequential runs agree") {
  SuiteConfig seq;
  seq.samples = 10;
  seq.jobs = 1;
  SuiteConfig par = seq;
  par.jobs = 3;
  const std::vector<std::string> ids{"check_eh_ricci_flat", "check_restrictions_to_H", "check_diastasis_closed_forms"};
  CHECK(report::to_json(run_checks(ids, seq)) == report::to_json(run_checks(ids, par)));
}

TEST_CASE("tightened tolerance turns a pass into a fail") {
  SuiteConfig cfg;
  cfg.samples = 10;
  const auto loose = run_check("check_eh_ricci_flat", cfg);
  cfg.tol.set("curvature", 1e-20);
  const auto tight = run_check("check_eh_ricci_flat", cfg);
  CHECK(loose.pass);
  CHECK_FALSE(tight.pass);
  CHECK(tight.max_residual == loose.max_residual);
}

TEST_CASE("json and csv carry exactly the report fields in order") {
  CheckReport r;
  r.id = "x";
  r.pass = true;
  r.max_residual = 1.5e-12;
  r.tolerance = 1e-8;
  r.samples = 10;
  r.seed = 7;
  r.wall_ms = 12.5;
  r.claim_ref = "a claim, with \"quotes\"";
  const auto j = nlohmann::ordered_json::parse(report::to_json({r}));
  REQUIRE(j.is_array());
  std::vector<std::string> keys;
  for (const auto& [k, v] : j[0].items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"id", "pass", "max_residual", "mean_residual", "tolerance", "samples",
                                         "seed", "wall_ms", "claim_ref"});
  CHECK(j[0]["wall_ms"] == 0.0);
  CHECK(nlohmann::json::parse(report::to_json({r}, {true}))[0]["wall_ms"] == 12.5);
  CHECK(j[0]["max_residual"].get<double>() == 1.5e-12);

  const std::string csv = report::to_csv({r});
  CHECK(csv ==
        "id,pass,max_residual,mean_residual,tolerance,samples,seed,wall_ms,claim_ref\n"
        "x,true,1.5e-12,0,1e-08,10,7,0,\"a claim, with \"\"quotes\"\"\"\n");
  CHECK_THROWS_AS((void)report::parse_format("xml"), ConfigError);
}

TEST_CASE("complex literals") {
  CHECK(report::parse_complex("1.5") == Complex{1.5, 0.0});
  CHECK(report::parse_complex("0.3i") == Complex{0.0, 0.3});
  CHECK(report::parse_complex("-i") == Complex{0.0, -1.0});
  CHECK(report::parse_complex("i") == Complex{0.0, 1.0});
  CHECK(report::parse_complex("2-i") == Complex{2.0, -1.0});
  CHECK(report::parse_complex("0.7-0.3i") == Complex{0.7, -0.3});
  CHECK(report::parse_complex("+1e-3+2.5e1i") == Complex{1e-3, 25.0});
  CHECK(report::parse_complex("1e-3i") == Complex{0.0, 1e-3});
  CHECK_THROWS_AS((void)report::parse_complex(""), ConfigError);
  CHECK_THROWS_AS((void)report::parse_complex("1+x"), ConfigError);
  CHECK_THROWS_AS((void)report::parse_complex("abc"), ConfigError);
  CHECK(report::parse_point("1,0") == Point{Complex{1.0, 0.0}, Complex{0.0, 0.0}});
  CHECK(report::parse_point("0.7,0.3i") == Point{Complex{0.7, 0.0}, Complex{0.0, 0.3}});

  CHECK(report::format_complex({1.0, -0.5}) == "1-0.5i");
  CHECK(report::format_complex({-0.0, 0.0}) == "0+0i");
  CHECK(report::format_real(0.1) == "0.1");
  CHECK(report::format_real(1.0 / 3.0) == "0.3333333333333333");
  CHECK(report::parse_complex(report::format_complex({0.1, -1.0 / 3.0})) == Complex{0.1, -1.0 / 3.0});
}

TEST_CASE("probe positive control finds the flat line") {
  ProbeSpec spec{potentials::simanca(2), ProbeSource::FlatLine};
  spec.restarts = 10;
  Sampler s(42, "probe_flat_line_s", "search");
  const auto r = probe_nonexistence(spec, s);
  CHECK(r.defects.size() == 10);
  CHECK(r.best_defect <= 1e-9);
  CHECK(r.image_min_norm >= 0.2 - 1e-2);
  CHECK(r.image_max_norm <= 2.0 + 1e-2);
  CHECK(source_dimension(ProbeSource::Flat2d) == 2);
  CHECK(source_dimension(ProbeSource::FubiniStudy) == 1);
}
