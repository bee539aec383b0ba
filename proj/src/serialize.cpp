#include "phaseswitch/serialize.hpp"

#include <array>
#include <charconv>
#include <initializer_list>

namespace phaseswitch {

namespace {

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_number(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

std::string trajectory_csv(const TrajectoryRecord& record) {
  std::string out = kTrajectoryCsvHeader;
  out += '\n';
  for (const auto& s : record.samples) {
    append_row(out, {s.t, s.state.sigma_minus.real(), s.state.sigma_minus.imag(), s.state.sigma_z,
                     s.b_in.real(), s.b_in.imag(), s.b_out.real(), s.b_out.imag(), s.p_noise,
                     s.residual});
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    append_row(out, {r.axis_value, r.x, r.amplitude_ratio, r.coherent_fraction, r.noise_fraction,
                     r.sigma_z, r.sigma_minus_mag});
  }
  return out;
}

std::string beta_csv(const std::vector<BetaRow>& rows) {
  std::string out = kBetaCsvHeader;
  out += '\n';
  for (const auto& r : rows) append_row(out, {r.beta, r.gamma_loss, r.linear_ratio});
  return out;
}

nlohmann::json to_json(const TrajectorySample& s) {
  return {{"t", s.t},
          {"sigma_minus_re", s.state.sigma_minus.real()},
          {"sigma_minus_im", s.state.sigma_minus.imag()},
          {"sigma_z", s.state.sigma_z},
          {"b_in_re", s.b_in.real()},
          {"b_in_im", s.b_in.imag()},
          {"b_out_re", s.b_out.real()},
          {"b_out_im", s.b_out.imag()},
          {"p_noise", s.p_noise},
          {"residual", s.residual}};
}

nlohmann::json to_json(const SweepRow& r) {
  return {{"axis_value", r.axis_value},
          {"x", r.x},
          {"amplitude_ratio", r.amplitude_ratio},
          {"coherent_fraction", r.coherent_fraction},
          {"noise_fraction", r.noise_fraction},
          {"sigma_z", r.sigma_z},
          {"sigma_minus_mag", r.sigma_minus_mag}};
}

nlohmann::json to_json(const BetaRow& r) {
  return {{"beta", r.beta}, {"gamma_loss", r.gamma_loss}, {"linear_ratio", r.linear_ratio}};
}

nlohmann::json to_json(const SteadyStateSolution& sol, Complex b_in) {
  return {{"sigma_minus_re", sol.state.sigma_minus.real()},
          {"sigma_minus_im", sol.state.sigma_minus.imag()},
          {"sigma_z", sol.state.sigma_z},
          {"b_in_re", b_in.real()},
          {"b_in_im", b_in.imag()},
          {"b_out_re", sol.b_out.real()},
          {"b_out_im", sol.b_out.imag()},
          {"p_noise", sol.p_noise},
          {"p_loss", sol.p_loss}};
}

nlohmann::json to_json(const EnergyAudit& a) {
  return {{"max_residual", a.max_residual},
          {"rms_residual", a.rms_residual},
          {"input_photons", a.input_photons},
          {"coherent_output_photons", a.coherent_output_photons},
          {"noise_photons", a.noise_photons},
          {"loss_photons", a.loss_photons},
          {"inversion_change", a.inversion_change},
          {"closure_defect", a.closure_defect}};
}

nlohmann::json to_json(const EffectiveGamma& r) {
  return {{"big_gamma", r.big_gamma},
          {"coupling_ratio", r.coupling_ratio},
          {"bad_cavity", r.bad_cavity}};
}

nlohmann::json to_json(const PulseCheck& c) {
  return {{"duration", c.duration},
          {"average_intensity", c.average_intensity},
          {"switching_intensity", c.switching_intensity},
          {"exceeds", c.exceeds}};
}

nlohmann::json sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) out.push_back(to_json(r));
  return out;
}

nlohmann::json beta_json(const std::vector<BetaRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) out.push_back(to_json(r));
  return out;
}

}  // namespace phaseswitch
