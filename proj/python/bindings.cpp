#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/stl.h>

#include "kahler/atlas.hpp"
#include "kahler/diastasis.hpp"
#include "kahler/error.hpp"
#include "kahler/metric.hpp"
#include "kahler/report.hpp"
#include "kahler/verify.hpp"

namespace py = pybind11;
using namespace kahler;

namespace {

verify::SuiteConfig make_config(std::uint64_t seed, std::optional<int> samples, int n,
                                const std::map<std::string, double>& tolerances, unsigned jobs) {
  verify::SuiteConfig cfg;
  cfg.seed = seed;
  cfg.samples = samples;
  cfg.n = n;
  cfg.jobs = jobs;
  for (const auto& [tier, value] : tolerances) cfg.tol.set(tier, value);
  return cfg;
}

atlas::MetricKind metric_kind(const std::string& name) {
  if (name == "s") return atlas::MetricKind::Simanca;
  if (name == "eh") return atlas::MetricKind::EguchiHanson;
  throw ConfigError("chart metric must be 's' or 'eh', got '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Wirtinger calculus, curvature and diastasis for Kahler potentials";

  auto base = py::register_exception<Error>(m, "KahlerError", PyExc_RuntimeError);
  py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());
  auto domain = py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ChartDomainError>(m, "ChartDomainError", domain.ptr());
  py::register_exception<ExceptionalDivisorError>(m, "ExceptionalDivisorError", domain.ptr());
  py::register_exception<SingularEvaluationError>(m, "SingularEvaluationError", domain.ptr());
  py::register_exception<NotPositiveDefiniteError>(m, "NotPositiveDefiniteError", domain.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::class_<KahlerPotential>(m, "Potential")
      .def_readonly("n", &KahlerPotential::n)
      .def_readonly("name", &KahlerPotential::name)
      .def("expression", [](const KahlerPotential& p) { return sym::to_string(p.expr, 12); })
      .def("value",
           [](const KahlerPotential& p, const Point& z) {
             check_admissible(p, z);
             return sym::eval(p.expr, sym::Assignment::diagonal(z)).real();
           })
      .def("metric", [](const KahlerPotential& p, const Point& z) { return metric::metric_at(p, z); })
      .def("ricci", [](const KahlerPotential& p, const Point& z) { return metric::ricci_at(p, z); })
      .def("scalar_trace", [](const KahlerPotential& p, const Point& z) { return metric::scalar_trace(p, z); })
      .def("hsc", [](const KahlerPotential& p, const Point& z, const Point& v) { return metric::hsc_at(p, z, v); })
      .def("einstein_residual",
           [](const KahlerPotential& p, const Point& z, double lambda) {
             return metric::CurvatureModel::cached(p)->sample(z).einstein_residual(lambda);
           })
      .def("diastasis",
           [](const KahlerPotential& p, const Point& center, const Point& z) {
             return diastasis::diastasis_from_potential(p, center)(z);
           })
      .def("__repr__", [](const KahlerPotential& p) { return "<Potential " + p.name + " n=" + std::to_string(p.n) + ">"; });

  m.def("flat", &potentials::flat, py::arg("n"));
  m.def("fubini_study", &potentials::fubini_study, py::arg("m"));
  m.def("simanca", &potentials::simanca, py::arg("n"));
  m.def("eguchi_hanson", &potentials::eguchi_hanson);
  m.def("hyperbolic_ball", &potentials::hyperbolic_ball, py::arg("m"));
  m.def(
      "chart_potential", [](const std::string& metric, int j, int n) { return atlas::chart_potential(metric_kind(metric), j, n); },
      py::arg("metric"), py::arg("j"), py::arg("n"));
  m.def("restrict_to_exceptional", &atlas::restrict_to_exceptional, py::arg("chart_potential"));

  m.def("closed_diastasis_s", [](const Point& q, const Point& z) { return diastasis::closed_diastasis_S(q, z); },
        py::arg("q"), py::arg("z"));
  m.def("closed_diastasis_eh", [](const Point& q, const Point& z) { return diastasis::closed_diastasis_EH(q, z); },
        py::arg("q"), py::arg("z"));
  m.def("parse_point", [](const std::string& s) { return report::parse_point(s); });

  py::class_<verify::Condition>(m, "Condition")
      .def_readonly("name", &verify::Condition::name)
      .def_readonly("threshold", &verify::Condition::threshold)
      .def_readonly("value", &verify::Condition::value)
      .def_readonly("mean", &verify::Condition::mean)
      .def_readonly("samples", &verify::Condition::samples)
      .def_readonly("passed", &verify::Condition::pass);

  py::class_<verify::CheckReport>(m, "CheckReport")
      .def_readonly("id", &verify::CheckReport::id)
      .def_readonly("passed", &verify::CheckReport::pass)
      .def_readonly("max_residual", &verify::CheckReport::max_residual)
      .def_readonly("mean_residual", &verify::CheckReport::mean_residual)
      .def_readonly("tolerance", &verify::CheckReport::tolerance)
      .def_readonly("samples", &verify::CheckReport::samples)
      .def_readonly("seed", &verify::CheckReport::seed)
      .def_readonly("wall_ms", &verify::CheckReport::wall_ms)
      .def_readonly("claim_ref", &verify::CheckReport::claim_ref)
      .def_readonly("worst_point", &verify::CheckReport::worst_point)
      .def_readonly("conditions", &verify::CheckReport::conditions)
      .def("__repr__", [](const verify::CheckReport& r) {
        return "<CheckReport " + r.id + (r.pass ? " pass" : " FAIL") + " max=" + report::format_real(r.max_residual) + ">";
      });

  m.def("list_checks", [] { return verify::all_check_ids(); });
  m.def(
      "run_check",
      [](const std::string& id, std::uint64_t seed, std::optional<int> samples, int n,
         const std::map<std::string, double>& tolerances) {
        const auto cfg = make_config(seed, samples, n, tolerances, 1);
        py::gil_scoped_release release;
        return verify::run_check(id, cfg);
      },
      py::arg("id"), py::arg("seed") = 42, py::arg("samples") = py::none(), py::arg("n") = 2,
      py::arg("tolerances") = std::map<std::string, double>{});
  m.def(
      "run_checks",
      [](const std::vector<std::string>& ids, std::uint64_t seed, std::optional<int> samples, int n,
         const std::map<std::string, double>& tolerances, unsigned jobs) {
        const auto cfg = make_config(seed, samples, n, tolerances, jobs);
        py::gil_scoped_release release;
        return verify::run_checks(ids, cfg);
      },
      py::arg("ids"), py::arg("seed") = 42, py::arg("samples") = py::none(), py::arg("n") = 2,
      py::arg("tolerances") = std::map<std::string, double>{}, py::arg("jobs") = 0);
  m.def(
      "to_json", [](const std::vector<verify::CheckReport>& r, bool timing) { return report::to_json(r, {timing}); },
      py::arg("reports"), py::arg("timing") = false);
  m.def(
      "to_csv", [](const std::vector<verify::CheckReport>& r, bool timing) { return report::to_csv(r, {timing}); },
      py::arg("reports"), py::arg("timing") = false);
}
