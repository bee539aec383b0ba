#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "phaseswitch/core.hpp"
#include "phaseswitch/dynamics.hpp"
#include "phaseswitch/serialize.hpp"
#include "phaseswitch/sweep.hpp"

namespace py = pybind11;
using namespace phaseswitch;

PYBIND11_MODULE(phaseswitch, m) {
  m.doc() = "Single-atom nonlinear phase switch in a one-sided cavity";

  py::register_exception<InvalidState>(m, "InvalidState", PyExc_ValueError);
  py::register_exception<IntegrationError>(m, "IntegrationError", PyExc_RuntimeError);

  m.attr("BLOCH_SLACK") = kBlochSlack;

  py::class_<AtomParams>(m, "AtomParams")
      .def(py::init<double, double>(), py::arg("big_gamma"), py::arg("gamma_loss") = 0.0)
      .def_static("from_beta", &AtomParams::from_beta, py::arg("big_gamma"), py::arg("beta"))
      .def_property_readonly("big_gamma", &AtomParams::big_gamma)
      .def_property_readonly("gamma_loss", &AtomParams::gamma_loss)
      .def_property_readonly("beta", &AtomParams::beta)
      .def_property_readonly("dipole_rate", &AtomParams::dipole_rate)
      .def_property_readonly("inversion_rate", &AtomParams::inversion_rate)
      .def("__repr__", [](const AtomParams& p) {
        return "AtomParams(big_gamma=" + format_number(p.big_gamma()) +
               ", gamma_loss=" + format_number(p.gamma_loss()) + ")";
      });

  py::class_<CavityParams>(m, "CavityParams")
      .def(py::init<double, double>(), py::arg("g"), py::arg("kappa"))
      .def_readonly("g", &CavityParams::g)
      .def_readonly("kappa", &CavityParams::kappa);

  py::class_<EffectiveGamma>(m, "EffectiveGamma")
      .def_readonly("big_gamma", &EffectiveGamma::big_gamma)
      .def_readonly("coupling_ratio", &EffectiveGamma::coupling_ratio)
      .def_readonly("bad_cavity", &EffectiveGamma::bad_cavity);

  py::class_<BlochState>(m, "BlochState")
      .def(py::init([](Complex s, double z) { return BlochState{s, z}; }),
           py::arg("sigma_minus") = Complex{0.0, 0.0}, py::arg("sigma_z") = -0.5)
      .def_static("ground", &BlochState::ground)
      .def_static("excited", &BlochState::excited)
      .def_readonly("sigma_minus", &BlochState::sigma_minus)
      .def_readonly("sigma_z", &BlochState::sigma_z)
      .def("within_bound", &BlochState::within_bound, py::arg("slack") = kBlochSlack);

  py::class_<SteadyStateSolution>(m, "SteadyStateSolution")
      .def_readonly("state", &SteadyStateSolution::state)
      .def_readonly("b_out", &SteadyStateSolution::b_out)
      .def_readonly("p_noise", &SteadyStateSolution::p_noise)
      .def_readonly("p_loss", &SteadyStateSolution::p_loss);

  py::class_<IntensityFractions>(m, "IntensityFractions")
      .def_readonly("coherent", &IntensityFractions::coherent)
      .def_readonly("noise", &IntensityFractions::noise);

  py::class_<PulseCheck>(m, "PulseCheck")
      .def_readonly("duration", &PulseCheck::duration)
      .def_readonly("average_intensity", &PulseCheck::average_intensity)
      .def_readonly("switching_intensity", &PulseCheck::switching_intensity)
      .def_readonly("exceeds", &PulseCheck::exceeds);

  m.def("effective_gamma", &effective_gamma, py::arg("cavity"));
  m.def("steady_state", &steady_state, py::arg("params"), py::arg("b_in"));
  m.def("response_ratio", &response_ratio, py::arg("x"));
  m.def("noise_power", &noise_power, py::arg("params"), py::arg("state"));
  m.def("noise_lower_bound", &noise_lower_bound, py::arg("params"), py::arg("sigma_z"));
  m.def("output_amplitude", &output_amplitude, py::arg("params"), py::arg("b_in"),
        py::arg("state"));
  m.def("intensity_fractions", &intensity_fractions, py::arg("x"));
  m.def("linear_response", &linear_response, py::arg("params"));
  m.def("switching_intensity", &switching_intensity, py::arg("params"),
        "Switching intensity, or None when the response never crosses zero");
  m.def("two_photon_pulse_check", &two_photon_pulse_check, py::arg("params"),
        py::arg("duration"));

  // dynamics
  py::class_<DriveSignal>(m, "DriveSignal")
      .def_static("constant", &DriveSignal::constant, py::arg("amplitude"))
      .def_static(
          "steps",
          [](const std::vector<std::pair<double, Complex>>& steps) {
            std::vector<DriveSignal::Step> converted;
            for (const auto& [start, amplitude] : steps) converted.push_back({start, amplitude});
            return DriveSignal::steps(std::move(converted));
          },
          py::arg("steps"))
      .def_static("square_pulse", &DriveSignal::square_pulse, py::arg("center"),
                  py::arg("duration"), py::arg("photons"), py::arg("phase") = 0.0)
      .def_static("gaussian_pulse", &DriveSignal::gaussian_pulse, py::arg("center"),
                  py::arg("duration"), py::arg("photons"), py::arg("phase") = 0.0)
      .def_property_readonly("kind", [](const DriveSignal& d) { return to_string(d.kind()); })
      .def("__call__", &DriveSignal::operator(), py::arg("t"));

  py::class_<IntegratorConfig>(m, "IntegratorConfig")
      .def(py::init([](double step, double t_max, int stride, double steady_tol) {
             return IntegratorConfig{step, t_max, stride, steady_tol};
           }),
           py::arg("step") = 1e-3, py::arg("t_max") = 10.0, py::arg("record_stride") = 1,
           py::arg("steady_tol") = 1e-10)
      .def_readwrite("step", &IntegratorConfig::step)
      .def_readwrite("t_max", &IntegratorConfig::t_max)
      .def_readwrite("record_stride", &IntegratorConfig::record_stride)
      .def_readwrite("steady_tol", &IntegratorConfig::steady_tol);

  py::class_<BlochDerivative>(m, "BlochDerivative")
      .def_readonly("d_sigma_minus", &BlochDerivative::d_sigma_minus)
      .def_readonly("d_sigma_z", &BlochDerivative::d_sigma_z)
      .def("norm", &BlochDerivative::norm);

  py::class_<TrajectorySample>(m, "TrajectorySample")
      .def_readonly("t", &TrajectorySample::t)
      .def_readonly("state", &TrajectorySample::state)
      .def_readonly("b_in", &TrajectorySample::b_in)
      .def_readonly("b_out", &TrajectorySample::b_out)
      .def_readonly("p_noise", &TrajectorySample::p_noise)
      .def_readonly("residual", &TrajectorySample::residual);

  py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
      .def_readonly("samples", &TrajectoryRecord::samples)
      .def_readonly("converged", &TrajectoryRecord::converged)
      .def("to_csv", &trajectory_csv);

  py::class_<EnergyAudit>(m, "EnergyAudit")
      .def_readonly("max_residual", &EnergyAudit::max_residual)
      .def_readonly("rms_residual", &EnergyAudit::rms_residual)
      .def_readonly("input_photons", &EnergyAudit::input_photons)
      .def_readonly("coherent_output_photons", &EnergyAudit::coherent_output_photons)
      .def_readonly("noise_photons", &EnergyAudit::noise_photons)
      .def_readonly("loss_photons", &EnergyAudit::loss_photons)
      .def_readonly("inversion_change", &EnergyAudit::inversion_change)
      .def_readonly("closure_defect", &EnergyAudit::closure_defect);

  m.def("bloch_rhs", &bloch_rhs, py::arg("params"), py::arg("b_in"), py::arg("state"));
  m.def("integrate", &integrate, py::arg("params"), py::arg("drive"),
        py::arg("initial") = BlochState::ground(), py::arg("config") = IntegratorConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("decay_closed_form", &decay_closed_form, py::arg("params"), py::arg("initial"),
        py::arg("t"));
  m.def("energy_audit", &energy_audit, py::arg("record"));

  // sweeps
  py::enum_<GridAxis>(m, "GridAxis")
      .value("log10_scaled_intensity", GridAxis::log10_scaled_intensity)
      .value("beta", GridAxis::beta);

  py::class_<Grid>(m, "Grid")
      .def(py::init([](GridAxis axis, double min, double max, int points) {
             return Grid{axis, min, max, points};
           }),
           py::arg("axis") = GridAxis::log10_scaled_intensity, py::arg("min") = -2.0,
           py::arg("max") = 2.0, py::arg("points") = 201)
      .def_readonly("axis", &Grid::axis)
      .def_readonly("min", &Grid::min)
      .def_readonly("max", &Grid::max)
      .def_readonly("points", &Grid::points)
      .def("value", &Grid::value, py::arg("index"));

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("axis_value", &SweepRow::axis_value)
      .def_readonly("x", &SweepRow::x)
      .def_readonly("amplitude_ratio", &SweepRow::amplitude_ratio)
      .def_readonly("coherent_fraction", &SweepRow::coherent_fraction)
      .def_readonly("noise_fraction", &SweepRow::noise_fraction)
      .def_readonly("sigma_z", &SweepRow::sigma_z)
      .def_readonly("sigma_minus_mag", &SweepRow::sigma_minus_mag);

  py::class_<BetaRow>(m, "BetaRow")
      .def_readonly("beta", &BetaRow::beta)
      .def_readonly("gamma_loss", &BetaRow::gamma_loss)
      .def_readonly("linear_ratio", &BetaRow::linear_ratio);

  m.def(
      "response_sweep",
      [](const AtomParams& params, const Grid& grid, unsigned threads) {
        return response_sweep(params, grid, {threads});
      },
      py::arg("params"), py::arg("grid") = Grid{}, py::arg("threads") = 1u);
  m.def("beta_sweep", &beta_sweep, py::arg("grid"), py::arg("big_gamma") = 1.0);
  m.def("sweep_csv", &sweep_csv, py::arg("rows"));
  m.def("beta_csv", &beta_csv, py::arg("rows"));
}
