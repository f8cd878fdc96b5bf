#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cclab/grid_oracle.hpp"
#include "cclab/report.hpp"

namespace py = pybind11;
using namespace cclab;

namespace {

ScenarioSpec spec_from_kwargs(const std::string& kind, const std::string& id, int n, int m,
                              double c, const std::string& h_kind, py::object h_arg,
                              const std::string& M_kind, py::object M_arg, std::uint64_t seed) {
  ScenarioSpec s;
  s.id = id;
  s.n = n;
  s.m = m;
  s.c = c;
  s.seed = seed;
  if (kind == "invariant") {
    s.kind = ScenarioSpec::Kind::invariant;
  } else if (kind == "anti_invariant") {
    s.kind = ScenarioSpec::Kind::anti_invariant;
  } else if (kind == "random") {
    s.kind = ScenarioSpec::Kind::random;
  } else {
    throw PreconditionError("kind must be invariant, anti_invariant, or random");
  }

  if (h_kind == "zero") {
    s.h.kind = HSpec::Kind::zero;
  } else if (h_kind == "umbilical") {
    s.h.kind = HSpec::Kind::umbilical;
    s.h.lambda = h_arg.cast<std::vector<double>>();
  } else if (h_kind == "quasi_umbilical") {
    s.h.kind = HSpec::Kind::quasi_umbilical;
    auto pair = h_arg.cast<std::pair<double, double>>();
    s.h.u = pair.first;
    s.h.r = pair.second;
  } else if (h_kind == "explicit") {
    s.h.kind = HSpec::Kind::explicit_values;
    s.h.values = h_arg.cast<std::vector<Matrix>>();
  } else if (h_kind == "random") {
    s.h.kind = HSpec::Kind::random;
    if (!h_arg.is_none()) s.h.scale = h_arg.cast<double>();
  } else {
    throw PreconditionError("h_kind must be zero, umbilical, quasi_umbilical, explicit, or random");
  }

  if (M_kind == "zero") {
    s.M.kind = MSpec::Kind::zero;
  } else if (M_kind == "scaled_identity") {
    s.M.kind = MSpec::Kind::scaled_identity;
    s.M.s = M_arg.cast<double>();
  } else if (M_kind == "explicit") {
    s.M.kind = MSpec::Kind::explicit_values;
    s.M.values = M_arg.cast<Matrix>();
  } else if (M_kind == "random") {
    s.M.kind = MSpec::Kind::random;
    if (!M_arg.is_none()) s.M.scale = M_arg.cast<double>();
  } else {
    throw PreconditionError("M_kind must be zero, scaled_identity, explicit, or random");
  }
  return s;
}

}  // namespace

PYBIND11_MODULE(_cclab, mod) {
  mod.doc() = "Curvature quantities and inequality checks for pointwise submanifold data "
              "in quaternionic space forms";

  py::register_exception<PreconditionError>(mod, "PreconditionError", PyExc_ValueError);
  py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);

  py::class_<QuaternionicStructure>(mod, "QuaternionicStructure")
      .def_readonly("dim", &QuaternionicStructure::dim)
      .def_property_readonly("J", [](const QuaternionicStructure& q) {
        return std::vector<Matrix>(q.J.begin(), q.J.end());
      });

  py::class_<StructureDiagnostics>(mod, "StructureDiagnostics")
      .def_readonly("j_squared", &StructureDiagnostics::j_squared)
      .def_readonly("cyclic", &StructureDiagnostics::cyclic)
      .def_readonly("anticommute", &StructureDiagnostics::anticommute)
      .def_readonly("orthogonality", &StructureDiagnostics::orthogonality)
      .def_readonly("skewness", &StructureDiagnostics::skewness)
      .def_readonly("pass_", &StructureDiagnostics::pass)
      .def("max_residual", &StructureDiagnostics::max_residual);

  py::class_<AmbientModel>(mod, "AmbientModel")
      .def_readonly("c", &AmbientModel::c)
      .def_readonly("structure", &AmbientModel::structure);

  py::class_<SubmanifoldPoint>(mod, "SubmanifoldPoint")
      .def_readonly("n", &SubmanifoldPoint::n)
      .def_readonly("ambient", &SubmanifoldPoint::ambient)
      .def_readonly("tangent_frame", &SubmanifoldPoint::tangent_frame)
      .def_readonly("normal_frame", &SubmanifoldPoint::normal_frame)
      .def_readonly("h", &SubmanifoldPoint::h)
      .def_readonly("M", &SubmanifoldPoint::M)
      .def_property_readonly("codim", &SubmanifoldPoint::codim)
      .def_property_readonly("ambient_dim", &SubmanifoldPoint::ambient_dim);

  py::class_<TangencyData>(mod, "TangencyData")
      .def_property_readonly("P", [](const TangencyData& t) {
        return std::vector<Matrix>(t.P.begin(), t.P.end());
      })
      .def_property_readonly("F", [](const TangencyData& t) {
        return std::vector<Matrix>(t.F.begin(), t.F.end());
      })
      .def_property_readonly("normP2", [](const TangencyData& t) {
        return std::vector<double>(t.normP2.begin(), t.normP2.end());
      })
      .def("sumP2", &TangencyData::sumP2);

  py::class_<PointDiagnostics>(mod, "PointDiagnostics")
      .def_readonly("frame_gram_residual", &PointDiagnostics::frame_gram_residual)
      .def_readonly("h_symmetry_residual", &PointDiagnostics::h_symmetry_residual)
      .def_readonly("M_symmetry_residual", &PointDiagnostics::M_symmetry_residual)
      .def_readonly("dims_ok", &PointDiagnostics::dims_ok)
      .def_readonly("pass_", &PointDiagnostics::pass);

  py::class_<CurvatureSummary>(mod, "CurvatureSummary")
      .def_readonly("tau", &CurvatureSummary::tau)
      .def_readonly("rho", &CurvatureSummary::rho)
      .def_readonly("tau_prime", &CurvatureSummary::tau_prime)
      .def_readonly("tau_dprime", &CurvatureSummary::tau_dprime)
      .def_readonly("K", &CurvatureSummary::K);

  py::class_<MeanCurvature>(mod, "MeanCurvature")
      .def_readonly("H", &MeanCurvature::H)
      .def_readonly("norm2", &MeanCurvature::norm2);

  py::enum_<ExtremumMode>(mod, "ExtremumMode")
      .value("inf", ExtremumMode::inf)
      .value("sup", ExtremumMode::sup);

  py::class_<CasoratiResult>(mod, "CasoratiResult")
      .def_readonly("C", &CasoratiResult::C)
      .def_readonly("extremal_value", &CasoratiResult::extremal_value)
      .def_readonly("extremal_normal", &CasoratiResult::extremal_normal)
      .def_readonly("mode", &CasoratiResult::mode)
      .def_readonly("delta_value", &CasoratiResult::delta_value);

  py::class_<DeltaC>(mod, "DeltaC")
      .def_readonly("delta", &DeltaC::delta)
      .def_property_readonly("variant", [](const DeltaC& d) {
        return d.variant == DeltaC::Variant::low ? "low" : "high";
      });

  py::class_<NormalizedDeltaC>(mod, "NormalizedDeltaC")
      .def_readonly("deltaC", &NormalizedDeltaC::deltaC)
      .def_readonly("deltaC_hat", &NormalizedDeltaC::deltaC_hat);

  py::class_<ChenDelta>(mod, "ChenDelta")
      .def_readonly("delta", &ChenDelta::delta)
      .def_readonly("plane", &ChenDelta::plane);

  py::class_<PlaneData>(mod, "PlaneData")
      .def_property_readonly("beta", [](const PlaneData& p) {
        return std::vector<double>(p.beta.begin(), p.beta.end());
      })
      .def_readonly("trace_m_perp", &PlaneData::trace_m_perp);

  py::class_<Lemma1Result>(mod, "Lemma1Result")
      .def_readonly("a_star", &Lemma1Result::a_star)
      .def_readonly("lhs", &Lemma1Result::lhs)
      .def_readonly("holds", &Lemma1Result::holds)
      .def_readonly("equality", &Lemma1Result::equality);

  py::class_<Lemma2Result>(mod, "Lemma2Result")
      .def_readonly("zeta", &Lemma2Result::zeta)
      .def_readonly("bound", &Lemma2Result::bound)
      .def_readonly("holds", &Lemma2Result::holds)
      .def_readonly("equality", &Lemma2Result::equality);

  py::class_<EqualityClass>(mod, "EqualityClass")
      .def_property_readonly("kind", [](const EqualityClass& e) { return to_string(e); })
      .def_readonly("r", &EqualityClass::r);

  py::class_<InequalityReport>(mod, "InequalityReport")
      .def_readonly("name", &InequalityReport::name)
      .def_readonly("lhs", &InequalityReport::lhs)
      .def_readonly("rhs_canonical", &InequalityReport::rhs_canonical)
      .def_readonly("rhs_variant", &InequalityReport::rhs_variant)
      .def_readonly("slack", &InequalityReport::slack)
      .def_readonly("holds", &InequalityReport::holds)
      .def_readonly("equality", &InequalityReport::equality)
      .def_readonly("equality_case", &InequalityReport::equality_case)
      .def_readonly("invariance_proxy", &InequalityReport::invariance_proxy);

  py::class_<HessianSpectrum>(mod, "HessianSpectrum")
      .def_readonly("n", &HessianSpectrum::n)
      .def_readonly("r", &HessianSpectrum::r)
      .def_readonly("H1", &HessianSpectrum::H1)
      .def_readonly("eigenvalues", &HessianSpectrum::eigenvalues)
      .def_readonly("paper_eigenvalues", &HessianSpectrum::paper_eigenvalues)
      .def_readonly("psd", &HessianSpectrum::psd)
      .def_readonly("zero_multiplicity", &HessianSpectrum::zero_multiplicity)
      .def_readonly("matches_paper", &HessianSpectrum::matches_paper);

  mod.def("build_standard", &build_standard, py::arg("m"));
  mod.def("verify_structure", &verify_structure, py::arg("structure"));
  mod.def("apply_structure", &apply, py::arg("structure"), py::arg("k"), py::arg("v"));

  mod.def("orthonormalize", &orthonormalize, py::arg("vectors"));
  mod.def("tangency_decomposition", &tangency_decomposition, py::arg("point"));
  mod.def("validate_point", &validate_point, py::arg("point"));

  mod.def("ambient_R_star", &ambient_R_star, py::arg("ambient"), py::arg("X"), py::arg("Y"),
          py::arg("Z"), py::arg("W"));
  mod.def("tau_prime", &tau_prime, py::arg("point"));
  mod.def("tau_prime_contracted", &tau_prime_contracted, py::arg("point"));
  mod.def("connection_R_dprime", &connection_R_dprime, py::arg("point"), py::arg("i"),
          py::arg("j"), py::arg("k"), py::arg("l"));
  mod.def("induced_R", &induced_R, py::arg("point"), py::arg("i"), py::arg("j"), py::arg("k"),
          py::arg("l"));
  mod.def("sectional_K", &sectional_K, py::arg("point"), py::arg("u"), py::arg("v"));
  mod.def("scalar_tau", &scalar_tau, py::arg("point"));
  mod.def("normalized_rho", &normalized_rho, py::arg("point"));
  mod.def("ricci", &ricci, py::arg("point"), py::arg("X"));
  mod.def("S_dprime", &S_dprime, py::arg("point"), py::arg("i"), py::arg("j"));
  mod.def("tau_dprime", &tau_dprime, py::arg("point"));
  mod.def("curvature_summary", &curvature_summary, py::arg("point"));

  mod.def("mean_curvature", &mean_curvature, py::arg("point"));
  mod.def("casorati_C", &casorati_C, py::arg("point"));
  mod.def("casorati_CV", &casorati_CV, py::arg("point"), py::arg("basis"));
  mod.def("hyperplane_casorati", &hyperplane_casorati, py::arg("point"), py::arg("u"));
  mod.def("hyperplane_extrema", &hyperplane_extrema, py::arg("point"), py::arg("mode"),
          py::arg("seed") = 0);
  mod.def("delta_C_generalized", &delta_C_generalized, py::arg("point"), py::arg("r"),
          py::arg("seed") = 0);
  mod.def("casorati_result", &casorati_result, py::arg("point"), py::arg("r"),
          py::arg("seed") = 0);
  mod.def("delta_C_normalized", &delta_C_normalized, py::arg("point"), py::arg("seed") = 0);
  mod.def("chen_delta", &chen_delta, py::arg("point"), py::arg("seed") = 0);
  mod.def("plane_data", &plane_data, py::arg("point"), py::arg("plane"));
  mod.def(
      "lemma1_check",
      [](const std::vector<double>& a, int k) {
        return lemma1_check(std::span<const double>(a.data(), a.size()), k);
      },
      py::arg("a"), py::arg("k"));
  mod.def(
      "lemma2_bound",
      [](const std::vector<double>& x) {
        return lemma2_bound(std::span<const double>(x.data(), x.size()));
      },
      py::arg("x"));

  mod.def("check_A1", &check_A1, py::arg("point"));
  mod.def("check_A2", &check_A2, py::arg("point"), py::arg("X"));
  mod.def("check_A3", &check_A3, py::arg("point"), py::arg("plane"));
  mod.def("check_A4",
          py::overload_cast<const SubmanifoldPoint&, std::uint64_t>(&check_A4),
          py::arg("point"), py::arg("seed") = 0);
  mod.def("check_A5",
          py::overload_cast<const SubmanifoldPoint&, std::uint64_t>(&check_A5),
          py::arg("point"), py::arg("seed") = 0);
  mod.def("check_B1", &check_B1, py::arg("point"), py::arg("r"), py::arg("seed") = 0);
  mod.def("check_corollary_11", &check_corollary_11, py::arg("point"), py::arg("seed") = 0);
  mod.def("quadratic_T", &quadratic_T, py::arg("point"), py::arg("r"), py::arg("u"));
  mod.def("hessian_spectrum", &hessian_spectrum, py::arg("n"), py::arg("r"));
  mod.def(
      "detect_equality_case",
      [](const SubmanifoldPoint& p, py::object r) {
        return r.is_none() ? detect_equality_case(p)
                           : detect_equality_case(p, r.cast<double>());
      },
      py::arg("point"), py::arg("r") = py::none());

  mod.def("fixture", &fixture, py::arg("name"));
  mod.def("fixture_names", &fixture_names);
  mod.def("make_quasi_umbilical_h", &make_quasi_umbilical_h, py::arg("n"), py::arg("codim"),
          py::arg("u"), py::arg("r"));
  mod.def(
      "make_point",
      [](const std::string& kind, const std::string& id, int n, int m, double c,
         const std::string& h_kind, py::object h_arg, const std::string& M_kind,
         py::object M_arg, std::uint64_t seed) {
        return make_point(
            spec_from_kwargs(kind, id, n, m, c, h_kind, h_arg, M_kind, M_arg, seed));
      },
      py::arg("kind"), py::arg("id") = "point", py::arg("n") = 4, py::arg("m") = 2,
      py::arg("c") = 1.0, py::arg("h_kind") = "zero", py::arg("h_arg") = py::none(),
      py::arg("M_kind") = "zero", py::arg("M_arg") = py::none(), py::arg("seed") = 0,
      "Realize a scenario point from its construction recipe");

  mod.def(
      "run_config_file",
      [](const std::string& path) {
        const RunConfig cfg = parse_scenario_file(path);
        const auto rows = run_suite(cfg);
        py::list out;
        for (const ReportRow& r : rows) {
          py::dict d;
          d["scenario_id"] = r.scenario_id;
          d["check"] = r.check;
          d["subcase"] = r.subcase;
          d["lhs"] = r.lhs;
          d["rhs_canonical"] = r.rhs_canonical;
          d["rhs_variant"] = r.rhs_variant ? py::cast(*r.rhs_variant) : py::none();
          d["slack"] = r.slack;
          d["holds"] = r.holds;
          d["equality"] = r.equality;
          d["equality_case"] = r.equality_case;
          d["seed"] = r.seed;
          out.append(d);
        }
        return out;
      },
      py::arg("path"), "Parse a scenario config and run the suite, returning report rows");
}
