// pybind11 module exposing the core operations: grids, fields, model
// parameters, the three steppers behind solve(), presets, the chemical
// transform and reconstruction, analysis functionals, the comparison-ODE
// lemma machinery, and the experiment campaigns.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rkslab/analysis.hpp"
#include "rkslab/colehopf.hpp"
#include "rkslab/gronwall.hpp"
#include "rkslab/harness.hpp"
#include "rkslab/io.hpp"
#include "rkslab/mms.hpp"
#include "rkslab/operators.hpp"
#include "rkslab/presets.hpp"
#include "rkslab/solver.hpp"

namespace py = pybind11;
using namespace rks;

namespace {

// Campaign summaries cross the boundary as JSON strings; Python parses them
// with its own json module. Keeps the binding surface small and stable.
std::string dumps(const io::json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_rkslab, m) {
    m.doc() = "Radial chemotaxis / vanishing-diffusivity numerical laboratory";

    py::classh<RadialGrid>(m, "RadialGrid")
        .def_static("uniform", &RadialGrid::uniform, py::arg("a"), py::arg("b"), py::arg("m"))
        .def_static("boundary_graded", &RadialGrid::boundary_graded, py::arg("a"), py::arg("b"),
                    py::arg("m"), py::arg("ratio"))
        .def_property_readonly("a", &RadialGrid::a)
        .def_property_readonly("b", &RadialGrid::b)
        .def("__len__", &RadialGrid::size)
        .def("nodes", &RadialGrid::nodes, py::return_value_policy::copy)
        .def("min_spacing", &RadialGrid::min_spacing)
        .def("max_spacing", &RadialGrid::max_spacing)
        .def("same_nodes", &RadialGrid::same_nodes);

    py::class_<ScalarField>(m, "ScalarField")
        .def(py::init<GridPtr>(), py::arg("grid"))
        .def(py::init<GridPtr, std::vector<double>>(), py::arg("grid"), py::arg("values"))
        .def_static("sample", &ScalarField::sample, py::arg("grid"), py::arg("f"))
        .def("__len__", &ScalarField::size)
        .def("__getitem__",
             [](const ScalarField& f, std::size_t i) {
                 if (i >= f.size()) throw py::index_error();
                 return f[i];
             })
        .def("values", [](const ScalarField& f) { return f.values(); })
        .def_property_readonly("grid", &ScalarField::grid)
        .def("min_value", &ScalarField::min_value)
        .def("max_value", &ScalarField::max_value)
        .def("max_abs", &ScalarField::max_abs);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("n", &ModelParams::n)
        .def_readwrite("eps", &ModelParams::eps)
        .def_readwrite("u_bar", &ModelParams::u_bar)
        .def_readwrite("v_bar1", &ModelParams::v_bar1)
        .def_readwrite("v_bar2", &ModelParams::v_bar2)
        .def_readwrite("T", &ModelParams::T)
        .def_readwrite("dt", &ModelParams::dt)
        .def_readwrite("grid", &ModelParams::grid)
        .def("validate", &ModelParams::validate);

    py::class_<StepControls>(m, "StepControls")
        .def(py::init<>())
        .def_readwrite("dt", &StepControls::dt)
        .def_readwrite("theta", &StepControls::theta)
        .def_readwrite("save_every", &StepControls::save_every)
        .def_readwrite("tol_pos", &StepControls::tol_pos)
        .def_readwrite("c_floor", &StepControls::c_floor)
        .def_readwrite("record_entropy", &StepControls::record_entropy);

    py::class_<StepDiagnostics>(m, "StepDiagnostics")
        .def_readonly("time", &StepDiagnostics::time)
        .def_readonly("min_u", &StepDiagnostics::min_u)
        .def_readonly("cfl", &StepDiagnostics::cfl)
        .def_readonly("min_c", &StepDiagnostics::min_c)
        .def_readonly("entropy_E", &StepDiagnostics::entropy_E)
        .def_readonly("entropy_D", &StepDiagnostics::entropy_D);

    py::class_<Trajectory>(m, "Trajectory")
        .def("samples", &Trajectory::samples)
        .def("__len__", &Trajectory::samples)
        .def("time", &Trajectory::time)
        .def("times", &Trajectory::times)
        .def("u", &Trajectory::u, py::return_value_policy::reference_internal)
        .def("v", &Trajectory::v, py::return_value_policy::reference_internal)
        .def("c", &Trajectory::c, py::return_value_policy::reference_internal)
        .def("second", &Trajectory::second, py::return_value_policy::reference_internal)
        .def("diagnostics", py::overload_cast<>(&Trajectory::diagnostics, py::const_),
             py::return_value_policy::reference_internal)
        .def("dt_effective", &Trajectory::dt_effective)
        .def("compat_mismatch", &Trajectory::compat_mismatch);

    py::enum_<SolveKind>(m, "SolveKind")
        .value("Transformed", SolveKind::Transformed)
        .value("Limit", SolveKind::Limit)
        .value("Original", SolveKind::Original);

    py::register_exception<SolverError>(m, "SolverError");

    m.def(
        "solve",
        [](const std::string& kind, const ScalarField& first, const ScalarField& second,
           const ModelParams& p, const StepControls& ctrl) {
            return solve(solve_kind_from_string(kind), first, second, p, ctrl);
        },
        py::arg("kind"), py::arg("first"), py::arg("second"), py::arg("params"),
        py::arg("controls") = StepControls{},
        "Run a full time loop; kind is 'transformed', 'limit' or 'original'");

    m.def("initial_data_presets", &initial_data_presets, py::arg("name"), py::arg("params"));
    m.def("preset_names", &preset_names);
    m.def("compatibility_mismatch", &compatibility_mismatch, py::arg("u0"), py::arg("v0"),
          py::arg("params"), py::arg("check_v"));

    m.def("gradient", &gradient, py::arg("f"));
    m.def("radial_laplacian", &radial_laplacian, py::arg("f"), py::arg("n"));

    m.def("to_v", &to_v, py::arg("c"), "Chemical-gradient variable v = -c_r / c");
    m.def("reconstruct_c", &reconstruct_c, py::arg("c0"), py::arg("trajectory"));

    py::class_<RobinResidualReport>(m, "RobinResidualReport")
        .def_readonly("times", &RobinResidualReport::times)
        .def_readonly("res_a", &RobinResidualReport::res_a)
        .def_readonly("res_b", &RobinResidualReport::res_b)
        .def_readonly("max_res_a", &RobinResidualReport::max_res_a)
        .def_readonly("max_res_b", &RobinResidualReport::max_res_b);
    m.def("check_robin_consistency", &check_robin_consistency, py::arg("c_series"),
          py::arg("times"), py::arg("v_bar1"), py::arg("v_bar2"));

    py::enum_<WeightKind>(m, "WeightKind")
        .value("RadialMeasure", WeightKind::RadialMeasure)
        .value("AnnulusQuadratic", WeightKind::AnnulusQuadratic);
    m.def("weighted_l2", &weighted_l2, py::arg("f"), py::arg("kind"), py::arg("n") = 2);
    m.def("sup_norm", &sup_norm, py::arg("f"), py::arg("lo"), py::arg("hi"));
    m.def("discrete_sobolev", &discrete_sobolev, py::arg("f"), py::arg("order"));

    py::class_<EntropyValue>(m, "EntropyValue")
        .def_readonly("E", &EntropyValue::E)
        .def_readonly("D", &EntropyValue::D)
        .def_readonly("floored_nodes", &EntropyValue::floored_nodes);
    m.def("entropy_functional", &entropy_functional, py::arg("u"), py::arg("v"), py::arg("u_bar"),
          py::arg("n"), py::arg("u_floor") = 1e-12);

    py::class_<FSeries>(m, "FSeries")
        .def_readonly("times", &FSeries::times)
        .def_readonly("values", &FSeries::values)
        .def_readonly("integral", &FSeries::integral)
        .def_readonly("eps0", &FSeries::eps0)
        .def_readonly("log_eps0", &FSeries::log_eps0);
    m.def("compute_F_and_eps0", &compute_F_and_eps0, py::arg("limit_trajectory"), py::arg("C0"));
    m.def("log_eps0_from_integral", &log_eps0_from_integral, py::arg("I"), py::arg("T"),
          py::arg("C0"));

    py::class_<FluxSeries>(m, "FluxSeries")
        .def_readonly("times", &FluxSeries::times)
        .def_readonly("I_a", &FluxSeries::I_a)
        .def_readonly("I_b", &FluxSeries::I_b)
        .def_readonly("max_abs_a", &FluxSeries::max_abs_a)
        .def_readonly("max_abs_b", &FluxSeries::max_abs_b);
    m.def("boundary_flux_integral", &boundary_flux_integral, py::arg("limit_trajectory"));

    py::class_<LayerReport>(m, "LayerReport")
        .def_readonly("delta", &LayerReport::delta)
        .def_readonly("threshold", &LayerReport::threshold)
        .def_readonly("interior_error", &LayerReport::interior_error)
        .def_readonly("full_error", &LayerReport::full_error)
        .def_readonly("flux_a", &LayerReport::flux_a)
        .def_readonly("flux_b", &LayerReport::flux_b)
        .def_readonly("layer", &LayerReport::layer);
    m.def("detect_layer", &detect_layer, py::arg("diffusive"), py::arg("limit_trajectory"),
          py::arg("delta"), py::arg("threshold"));

    py::class_<RateFit>(m, "RateFit")
        .def_readonly("slope", &RateFit::slope)
        .def_readonly("intercept", &RateFit::intercept)
        .def_readonly("rms_residual", &RateFit::rms_residual);
    m.def("fit_rate", &fit_rate, py::arg("eps_values"), py::arg("errors"));

    py::class_<TimeFunction>(m, "TimeFunction")
        .def_static("from_callable", &TimeFunction::from_callable, py::arg("f"))
        .def_static("tabulated", &TimeFunction::tabulated, py::arg("t"), py::arg("values"))
        .def("__call__", &TimeFunction::operator())
        .def("integrate", &TimeFunction::integrate, py::arg("t0"), py::arg("t1"),
             py::arg("tol") = 1e-12);

    py::class_<LemmaInputs>(m, "LemmaInputs")
        .def(py::init<>())
        .def_readwrite("k", &LemmaInputs::k)
        .def_readwrite("T", &LemmaInputs::T)
        .def_readwrite("C0", &LemmaInputs::C0)
        .def_readwrite("gamma", &LemmaInputs::gamma)
        .def_readwrite("f1", &LemmaInputs::f1)
        .def_readwrite("f2", &LemmaInputs::f2)
        .def("validate", &LemmaInputs::validate);
    m.def("gamma0", &gamma0, py::arg("inputs"));
    m.def("bound_value", &bound_value, py::arg("inputs"), py::arg("t"));

    py::class_<ExtremalResult>(m, "ExtremalResult")
        .def_readonly("times", &ExtremalResult::times)
        .def_readonly("values", &ExtremalResult::values)
        .def_readonly("blown_up", &ExtremalResult::blown_up)
        .def_readonly("blowup_time", &ExtremalResult::blowup_time)
        .def_readonly("converged", &ExtremalResult::converged);
    m.def("integrate_extremal", &integrate_extremal, py::arg("inputs"));

    py::class_<LemmaVerdict>(m, "LemmaVerdict")
        .def_readonly("seed", &LemmaVerdict::seed)
        .def_readonly("k", &LemmaVerdict::k)
        .def_readonly("T", &LemmaVerdict::T)
        .def_readonly("C0", &LemmaVerdict::C0)
        .def_readonly("gamma", &LemmaVerdict::gamma)
        .def_readonly("gamma0", &LemmaVerdict::gamma0)
        .def_readonly("y_max", &LemmaVerdict::y_max)
        .def_readonly("bound", &LemmaVerdict::bound_at_ymax)
        .def_readonly("bound_margin", &LemmaVerdict::bound_min)
        .def_readonly("blown_up", &LemmaVerdict::blown_up)
        .def_readonly("pass_", &LemmaVerdict::pass);
    m.def("verify_random_instance", &verify_random_instance, py::arg("seed"));

    py::class_<harness::ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("n", &harness::ExperimentConfig::n)
        .def_readwrite("a", &harness::ExperimentConfig::a)
        .def_readwrite("b", &harness::ExperimentConfig::b)
        .def_readwrite("m", &harness::ExperimentConfig::m)
        .def_readwrite("grid_kind", &harness::ExperimentConfig::grid_kind)
        .def_readwrite("grid_ratio", &harness::ExperimentConfig::grid_ratio)
        .def_readwrite("u_bar", &harness::ExperimentConfig::u_bar)
        .def_readwrite("v_bar1", &harness::ExperimentConfig::v_bar1)
        .def_readwrite("v_bar2", &harness::ExperimentConfig::v_bar2)
        .def_readwrite("T", &harness::ExperimentConfig::T)
        .def_readwrite("dt", &harness::ExperimentConfig::dt)
        .def_readwrite("preset", &harness::ExperimentConfig::preset)
        .def_readwrite("eps_list", &harness::ExperimentConfig::eps_list)
        .def_readwrite("alphas", &harness::ExperimentConfig::alphas)
        .def_readwrite("layer_threshold", &harness::ExperimentConfig::layer_threshold)
        .def_readwrite("C0", &harness::ExperimentConfig::C0)
        .def_readwrite("mms_spatial_m", &harness::ExperimentConfig::mms_spatial_m)
        .def_readwrite("mms_temporal_dt", &harness::ExperimentConfig::mms_temporal_dt)
        .def_readwrite("mms_eps", &harness::ExperimentConfig::mms_eps)
        .def_readwrite("mms_vbar", &harness::ExperimentConfig::mms_vbar)
        .def_readwrite("mms_spatial_dt0", &harness::ExperimentConfig::mms_spatial_dt0)
        .def_readwrite("mms_spatial_T", &harness::ExperimentConfig::mms_spatial_T)
        .def_readwrite("mms_temporal_m", &harness::ExperimentConfig::mms_temporal_m)
        .def_readwrite("mms_temporal_T", &harness::ExperimentConfig::mms_temporal_T)
        .def_readwrite("seed", &harness::ExperimentConfig::seed)
        .def_readwrite("instances", &harness::ExperimentConfig::instances)
        .def_readwrite("roundtrip_m", &harness::ExperimentConfig::roundtrip_m)
        .def_readwrite("roundtrip_eps", &harness::ExperimentConfig::roundtrip_eps)
        .def_readwrite("roundtrip_T", &harness::ExperimentConfig::roundtrip_T)
        .def_readwrite("longtime_T", &harness::ExperimentConfig::longtime_T)
        .def_readwrite("longtime_dt", &harness::ExperimentConfig::longtime_dt)
        .def_readwrite("out_dir", &harness::ExperimentConfig::out_dir)
        .def_readwrite("jobs", &harness::ExperimentConfig::jobs)
        .def_readwrite("save_every", &harness::ExperimentConfig::save_every)
        .def_readwrite("resume", &harness::ExperimentConfig::resume)
        .def("validate", &harness::ExperimentConfig::validate)
        .def("config_hash", &harness::ExperimentConfig::config_hash)
        .def("to_params", &harness::ExperimentConfig::to_params, py::arg("eps"));

    m.def("run_sweep", [](const harness::ExperimentConfig& c) { return dumps(harness::run_sweep(c)); });
    m.def("run_layer", [](const harness::ExperimentConfig& c) { return dumps(harness::run_layer(c)); });
    m.def("run_mms", [](const harness::ExperimentConfig& c) { return dumps(harness::run_mms(c)); });
    m.def("run_longtime",
          [](const harness::ExperimentConfig& c) { return dumps(harness::run_longtime(c)); });
    m.def("run_roundtrip",
          [](const harness::ExperimentConfig& c) { return dumps(harness::run_roundtrip(c)); });
    m.def("run_lemma_batch",
          [](const harness::ExperimentConfig& c) { return dumps(harness::run_lemma_batch(c)); });
    m.def("run_single",
          [](const harness::ExperimentConfig& c, const std::string& kind, double eps) {
              return dumps(harness::run_single(c, kind, eps));
          },
          py::arg("config"), py::arg("kind"), py::arg("eps"));
    m.def("render_reports",
          [](const std::string& dir) { return harness::render_reports(dir); });

    m.def("save_trajectory", &io::save_trajectory, py::arg("trajectory"), py::arg("dir"));
    m.def("format_double", &io::format_double, py::arg("x"));
}
