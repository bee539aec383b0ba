#include "phaseswitch/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <utility>

#include <CLI11.hpp>

#include "phaseswitch/core.hpp"
#include "phaseswitch/dynamics.hpp"
#include "phaseswitch/serialize.hpp"
#include "phaseswitch/sweep.hpp"

namespace phaseswitch::cli {

namespace {

using nlohmann::json;

// Raised while resolving flags into a run configuration; maps to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SharedFlags {
  double big_gamma = 1.0;
  double gamma_loss = 0.0;
  std::string format;
  std::string out_path;
};

struct Artifact {
  std::string text;
};

void add_shared(CLI::App* sub, SharedFlags& flags) {
  sub->add_option("--big-gamma", flags.big_gamma, "Cavity-mediated dipole decay rate Gamma")
      ->capture_default_str();
  sub->add_option("--gamma-loss", flags.gamma_loss, "Transverse loss rate to non-cavity modes")
      ->capture_default_str();
  sub->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", flags.out_path, "Write the artifact to this path instead of stdout");
}

AtomParams resolve_params(const SharedFlags& flags) {
  try {
    return AtomParams(flags.big_gamma, flags.gamma_loss);
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
}

json shared_metadata(const std::string& command, const SharedFlags& flags,
                     const std::string& format) {
  return {{"command", command},
          {"big_gamma", flags.big_gamma},
          {"gamma_loss", flags.gamma_loss},
          {"format", format}};
}

// Flat object (without metadata) as a one-row CSV.
std::string object_csv(const json& object) {
  std::string header;
  std::string values;
  for (const auto& [key, value] : object.items()) {
    if (key == "metadata") continue;
    if (!header.empty()) {
      header += ',';
      values += ',';
    }
    header += key;
    if (value.is_number()) {
      values += format_number(value.get<double>());
    } else if (value.is_null()) {
      values += "";
    } else if (value.is_boolean()) {
      values += value.get<bool>() ? "true" : "false";
    } else {
      values += value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  return header + '\n' + values + '\n';
}

std::string single_point(json object, json metadata, const std::string& format) {
  if (format == "csv") return object_csv(object);
  object["metadata"] = std::move(metadata);
  return object.dump(2) + '\n';
}

void require_nonnegative(double value, const char* flag) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw UsageError(std::string(flag) + " must be finite and >= 0");
  }
}

void require_positive(double value, const char* flag) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw UsageError(std::string(flag) + " must be finite and > 0");
  }
}

// ---------------------------------------------------------------------------
// steady

struct SteadyFlags {
  SharedFlags shared;
  double intensity = 0.0;
  double bin_re = 0.0;
  double bin_im = 0.0;
  CLI::Option* intensity_opt = nullptr;
  CLI::Option* bin_re_opt = nullptr;
  CLI::Option* bin_im_opt = nullptr;
};

void add_steady(CLI::App& app, SteadyFlags& f) {
  auto* sub = app.add_subcommand("steady", "Stationary state under a constant resonant drive");
  add_shared(sub, f.shared);
  f.intensity_opt = sub->add_option("--intensity", f.intensity, "Input photon current |b_in|^2");
  f.bin_re_opt = sub->add_option("--bin-re", f.bin_re, "Real part of b_in");
  f.bin_im_opt = sub->add_option("--bin-im", f.bin_im, "Imaginary part of b_in");
  f.intensity_opt->excludes(f.bin_re_opt)->excludes(f.bin_im_opt);
}

// Shared by steady and constant-drive simulate.
Complex resolve_amplitude(const CLI::Option* intensity_opt, double intensity,
                          const CLI::Option* re_opt, double re, const CLI::Option* im_opt,
                          double im, std::optional<double> fallback_intensity) {
  const bool by_amplitude = re_opt->count() > 0 || im_opt->count() > 0;
  if (intensity_opt->count() > 0 && by_amplitude) {
    throw UsageError("--intensity conflicts with --bin-re/--bin-im");
  }
  if (by_amplitude) {
    if (!std::isfinite(re) || !std::isfinite(im)) throw UsageError("b_in must be finite");
    return {re, im};
  }
  if (intensity_opt->count() == 0) {
    if (!fallback_intensity) throw UsageError("one of --intensity or --bin-re/--bin-im is required");
    intensity = *fallback_intensity;
  }
  require_nonnegative(intensity, "--intensity");
  return {std::sqrt(intensity), 0.0};
}

std::string run_steady(const SteadyFlags& f) {
  const AtomParams params = resolve_params(f.shared);
  const Complex b_in = resolve_amplitude(f.intensity_opt, f.intensity, f.bin_re_opt, f.bin_re,
                                         f.bin_im_opt, f.bin_im, std::nullopt);
  const std::string format = f.shared.format.empty() ? "json" : f.shared.format;

  json meta = shared_metadata("steady", f.shared, format);
  if (f.intensity_opt->count() > 0) meta["intensity"] = f.intensity;
  if (f.bin_re_opt->count() > 0) meta["bin_re"] = f.bin_re;
  if (f.bin_im_opt->count() > 0) meta["bin_im"] = f.bin_im;

  const SteadyStateSolution sol = steady_state(params, b_in);
  return single_point(to_json(sol, b_in), std::move(meta), format);
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateFlags {
  SharedFlags shared;
  std::string drive = "constant";
  std::string initial = "ground";
  double intensity = 0.0;
  double bin_re = 0.0;
  double bin_im = 0.0;
  double photons = 2.0;
  double duration = 4.0;
  double center = 0.0;
  double t_max = 20.0;
  double dt = 0.0;
  int stride = 10;
  double steady_tol = 1e-10;
  std::vector<std::pair<double, double>> steps;
  CLI::Option* intensity_opt = nullptr;
  CLI::Option* bin_re_opt = nullptr;
  CLI::Option* bin_im_opt = nullptr;
  CLI::Option* photons_opt = nullptr;
  CLI::Option* duration_opt = nullptr;
  CLI::Option* center_opt = nullptr;
  CLI::Option* dt_opt = nullptr;
  CLI::Option* steps_opt = nullptr;
};

void add_simulate(CLI::App& app, SimulateFlags& f) {
  auto* sub = app.add_subcommand("simulate", "Integrate the Bloch equations under a drive");
  add_shared(sub, f.shared);
  sub->add_option("--drive", f.drive, "Drive shape")
      ->check(CLI::IsMember({"constant", "square", "gaussian", "steps"}))
      ->capture_default_str();
  sub->add_option("--initial", f.initial, "Initial atomic state")
      ->check(CLI::IsMember({"ground", "excited"}))
      ->capture_default_str();
  f.intensity_opt = sub->add_option("--intensity", f.intensity,
                                    "Constant drive |b_in|^2, or pulse intensity on its support");
  f.bin_re_opt = sub->add_option("--bin-re", f.bin_re, "Real part of a constant b_in");
  f.bin_im_opt = sub->add_option("--bin-im", f.bin_im, "Imaginary part of a constant b_in");
  f.photons_opt = sub->add_option("--photons", f.photons, "Photons per pulse")->capture_default_str();
  f.duration_opt =
      sub->add_option("--duration", f.duration, "Pulse duration (square width or Gaussian FWHM)")
          ->capture_default_str();
  f.center_opt = sub->add_option("--center", f.center, "Pulse center time");
  sub->add_option("--t-max", f.t_max, "Integration end time")->capture_default_str();
  f.dt_opt = sub->add_option("--dt", f.dt, "Integration step (default 1e-3/Gamma)");
  sub->add_option("--stride", f.stride, "Record every k-th step")->capture_default_str();
  sub->add_option("--steady-tol", f.steady_tol, "Early-exit threshold on |d/dt state| / Gamma")
      ->capture_default_str();
  f.steps_opt = sub->add_option("--step-at", f.steps,
                                "Piecewise-constant drive: start time and intensity (repeatable)");
}

DriveSignal resolve_drive(const SimulateFlags& f) {
  if (f.drive != "steps" && f.steps_opt->count() > 0) {
    throw UsageError("--step-at requires --drive steps");
  }
  if (f.drive == "constant") {
    return DriveSignal::constant(resolve_amplitude(f.intensity_opt, f.intensity, f.bin_re_opt,
                                                   f.bin_re, f.bin_im_opt, f.bin_im, 0.25));
  }
  if (f.bin_re_opt->count() > 0 || f.bin_im_opt->count() > 0) {
    throw UsageError("--bin-re/--bin-im apply to --drive constant only");
  }
  if (f.drive == "steps") {
    if (f.steps.empty()) throw UsageError("--drive steps needs at least one --step-at");
    std::vector<DriveSignal::Step> steps;
    for (const auto& [start, intensity] : f.steps) {
      require_nonnegative(intensity, "--step-at intensity");
      steps.push_back({start, Complex{std::sqrt(intensity), 0.0}});
    }
    try {
      return DriveSignal::steps(std::move(steps));
    } catch (const InvalidParameter& e) {
      throw UsageError(e.what());
    }
  }

  require_positive(f.duration, "--duration");
  if (f.intensity_opt->count() > 0 && f.photons_opt->count() > 0) {
    throw UsageError("--intensity conflicts with --photons for pulsed drives");
  }
  double photons = f.photons;
  if (f.intensity_opt->count() > 0) {
    require_nonnegative(f.intensity, "--intensity");
    photons = f.intensity * f.duration;
  }
  require_nonnegative(photons, "--photons");
  if (f.drive == "square") {
    const double center = f.center_opt->count() > 0 ? f.center : 0.5 * f.duration;
    return DriveSignal::square_pulse(center, f.duration, photons);
  }
  const double center = f.center_opt->count() > 0 ? f.center : 3.0 * f.duration;
  return DriveSignal::gaussian_pulse(center, f.duration, photons);
}

std::string run_simulate(const SimulateFlags& f) {
  const AtomParams params = resolve_params(f.shared);
  const DriveSignal drive = resolve_drive(f);
  IntegratorConfig config = IntegratorConfig::for_params(params, f.t_max);
  if (f.dt_opt->count() > 0) config.step = f.dt;
  config.record_stride = f.stride;
  config.steady_tol = f.steady_tol;
  try {
    config.validate();
  } catch (const IntegrationError& e) {
    throw UsageError(e.what());
  }
  const BlochState initial = f.initial == "excited" ? BlochState::excited() : BlochState::ground();
  const std::string format = f.shared.format.empty() ? "csv" : f.shared.format;

  const TrajectoryRecord record = integrate(params, drive, initial, config);
  if (format == "csv") return trajectory_csv(record);

  json meta = shared_metadata("simulate", f.shared, format);
  meta["drive"] = f.drive;
  meta["initial"] = f.initial;
  meta["t_max"] = config.t_max;
  meta["dt"] = config.step;
  meta["stride"] = config.record_stride;
  meta["steady_tol"] = config.steady_tol;
  if (f.intensity_opt->count() > 0) meta["intensity"] = f.intensity;
  if (f.bin_re_opt->count() > 0) meta["bin_re"] = f.bin_re;
  if (f.bin_im_opt->count() > 0) meta["bin_im"] = f.bin_im;
  if (f.drive == "square" || f.drive == "gaussian") {
    meta["photons"] = f.photons;
    meta["duration"] = f.duration;
    if (f.center_opt->count() > 0) meta["center"] = f.center;
  }
  if (f.drive == "steps") meta["steps"] = f.steps;

  json samples = json::array();
  for (const auto& s : record.samples) samples.push_back(to_json(s));
  json doc = {{"metadata", std::move(meta)},
              {"converged", record.converged},
              {"audit", to_json(energy_audit(record))},
              {"samples", std::move(samples)}};
  return doc.dump(2) + '\n';
}

// ---------------------------------------------------------------------------
// sweep

struct SweepFlags {
  SharedFlags shared;
  double grid_min = -2.0;
  double grid_max = 2.0;
  int points = 201;
  unsigned threads = 1;
};

void add_sweep(CLI::App& app, SweepFlags& f) {
  auto* sub = app.add_subcommand("sweep", "Response and noise fractions over log10(4|b_in|^2/Gamma)");
  add_shared(sub, f.shared);
  sub->add_option("--grid-min", f.grid_min)->capture_default_str();
  sub->add_option("--grid-max", f.grid_max)->capture_default_str();
  sub->add_option("--points", f.points)->capture_default_str();
  sub->add_option("--threads", f.threads, "Worker threads")->capture_default_str();
}

std::string run_sweep(const SweepFlags& f) {
  const AtomParams params = resolve_params(f.shared);
  const Grid grid{GridAxis::log10_scaled_intensity, f.grid_min, f.grid_max, f.points};
  try {
    grid.validate();
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  const auto rows = response_sweep(params, grid, {std::max(1u, f.threads)});
  const std::string format = f.shared.format.empty() ? "csv" : f.shared.format;
  return format == "csv" ? sweep_csv(rows) : sweep_json(rows).dump(2) + '\n';
}

// ---------------------------------------------------------------------------
// linear

struct LinearFlags {
  SharedFlags shared;
  double beta = 1.0;
  std::vector<double> beta_sweep;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* sweep_opt = nullptr;
  CLI::Option* gamma_loss_opt = nullptr;
};

void add_linear(CLI::App& app, LinearFlags& f) {
  auto* sub = app.add_subcommand("linear", "Weak-drive reflection 1 - 2 beta");
  add_shared(sub, f.shared);
  f.gamma_loss_opt = sub->get_option("--gamma-loss");
  f.beta_opt = sub->add_option("--beta", f.beta, "Cavity emission fraction in (0, 1]");
  f.sweep_opt = sub->add_option("--beta-sweep", f.beta_sweep, "min max points")->expected(3);
  f.beta_opt->excludes(f.sweep_opt);
}

std::string run_linear(const LinearFlags& f) {
  resolve_params(f.shared);
  if (f.gamma_loss_opt->count() > 0 && (f.beta_opt->count() > 0 || f.sweep_opt->count() > 0)) {
    throw UsageError("--gamma-loss conflicts with --beta/--beta-sweep");
  }

  if (f.sweep_opt->count() > 0) {
    const double points = f.beta_sweep[2];
    if (points != std::floor(points) || points < 2 || points > 1e7) {
      throw UsageError("--beta-sweep points must be an integer >= 2");
    }
    const Grid grid{GridAxis::beta, f.beta_sweep[0], f.beta_sweep[1], static_cast<int>(points)};
    std::vector<BetaRow> rows;
    try {
      rows = beta_sweep(grid, f.shared.big_gamma);
    } catch (const std::logic_error& e) {
      throw UsageError(e.what());
    }
    const std::string format = f.shared.format.empty() ? "csv" : f.shared.format;
    return format == "csv" ? beta_csv(rows) : beta_json(rows).dump(2) + '\n';
  }

  const std::string format = f.shared.format.empty() ? "json" : f.shared.format;
  json meta = shared_metadata("linear", f.shared, format);
  std::optional<AtomParams> params;
  if (f.beta_opt->count() > 0) {
    meta["beta"] = f.beta;
    try {
      params = AtomParams::from_beta(f.shared.big_gamma, f.beta);
    } catch (const std::logic_error& e) {
      throw UsageError(e.what());
    }
  } else {
    params = resolve_params(f.shared);
  }
  meta["gamma_loss"] = params->gamma_loss();

  const double ratio = f.beta_opt->count() > 0 ? 1.0 - 2.0 * f.beta : linear_response(*params);
  const auto switching = switching_intensity(*params);
  json result = {{"big_gamma", params->big_gamma()},
                 {"gamma_loss", params->gamma_loss()},
                 {"beta", f.beta_opt->count() > 0 ? f.beta : params->beta()},
                 {"linear_ratio", ratio},
                 {"intensity_ratio", ratio * ratio},
                 {"loss_fraction", 1.0 - ratio * ratio},
                 {"switching_intensity", switching ? json(*switching) : json(nullptr)}};
  return single_point(std::move(result), std::move(meta), format);
}

// ---------------------------------------------------------------------------
// params, pulse-check

struct ParamsFlags {
  SharedFlags shared;
  double g = 0.0;
  double kappa = 0.0;
};

void add_params(CLI::App& app, ParamsFlags& f) {
  auto* sub = app.add_subcommand("params", "Effective Gamma = g^2/kappa with validity diagnostics");
  add_shared(sub, f.shared);
  sub->add_option("--g", f.g, "Atom-cavity dipole coupling")->required();
  sub->add_option("--kappa", f.kappa, "Cavity damping rate")->required();
}

std::string run_params(const ParamsFlags& f) {
  EffectiveGamma result{};
  try {
    result = effective_gamma({f.g, f.kappa});
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  const std::string format = f.shared.format.empty() ? "json" : f.shared.format;
  json meta = {{"command", "params"}, {"g", f.g}, {"kappa", f.kappa}, {"format", format}};
  json object = to_json(result);
  object["g"] = f.g;
  object["kappa"] = f.kappa;
  return single_point(std::move(object), std::move(meta), format);
}

struct PulseFlags {
  SharedFlags shared;
  double duration = 0.0;
};

void add_pulse(CLI::App& app, PulseFlags& f) {
  auto* sub = app.add_subcommand("pulse-check",
                                 "Does a two-photon pulse of duration T exceed the switching intensity?");
  add_shared(sub, f.shared);
  sub->add_option("--duration", f.duration, "Pulse duration T")->required();
}

std::string run_pulse(const PulseFlags& f) {
  const AtomParams params = resolve_params(f.shared);
  PulseCheck check{};
  try {
    check = two_photon_pulse_check(params, f.duration);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const std::string format = f.shared.format.empty() ? "json" : f.shared.format;
  json meta = shared_metadata("pulse-check", f.shared, format);
  meta["duration"] = f.duration;
  return single_point(to_json(check), std::move(meta), format);
}

void emit(const std::string& artifact, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << artifact;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  file << artifact;
  if (!file) throw std::runtime_error("failed writing output file " + path);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-atom nonlinear phase switch: steady states, dynamics and sweeps",
               "phaseswitch"};
  app.require_subcommand(1);

  SteadyFlags steady;
  SimulateFlags simulate;
  SweepFlags sweep;
  LinearFlags linear;
  ParamsFlags params;
  PulseFlags pulse;
  add_steady(app, steady);
  add_simulate(app, simulate);
  add_sweep(app, sweep);
  add_linear(app, linear);
  add_params(app, params);
  add_pulse(app, pulse);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  std::string path;
  std::function<std::string()> action;
  if (name == "steady") {
    action = [&] { return run_steady(steady); };
    path = steady.shared.out_path;
  } else if (name == "simulate") {
    action = [&] { return run_simulate(simulate); };
    path = simulate.shared.out_path;
  } else if (name == "sweep") {
    action = [&] { return run_sweep(sweep); };
    path = sweep.shared.out_path;
  } else if (name == "linear") {
    action = [&] { return run_linear(linear); };
    path = linear.shared.out_path;
  } else if (name == "params") {
    action = [&] { return run_params(params); };
    path = params.shared.out_path;
  } else {
    action = [&] { return run_pulse(pulse); };
    path = pulse.shared.out_path;
  }

  std::string artifact;
  try {
    artifact = action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }

  try {
    emit(artifact, path, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace phaseswitch::cli
