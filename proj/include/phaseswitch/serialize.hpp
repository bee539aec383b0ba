#pragma once

// CSV and JSON forms of trajectories, sweeps and single-point results.

#include <string>
#include <vector>

#include <json.hpp>

#include "phaseswitch/core.hpp"
#include "phaseswitch/dynamics.hpp"
#include "phaseswitch/sweep.hpp"

namespace phaseswitch {

inline constexpr const char* kTrajectoryCsvHeader =
    "t,sigma_minus_re,sigma_minus_im,sigma_z,b_in_re,b_in_im,b_out_re,b_out_im,p_noise,residual";
inline constexpr const char* kSweepCsvHeader =
    "axis_value,x,amplitude_ratio,coherent_fraction,noise_fraction,sigma_z,sigma_minus_mag";
inline constexpr const char* kBetaCsvHeader = "beta,gamma_loss,linear_ratio";

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

std::string trajectory_csv(const TrajectoryRecord& record);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string beta_csv(const std::vector<BetaRow>& rows);

nlohmann::json to_json(const TrajectorySample& sample);
nlohmann::json to_json(const SweepRow& row);
nlohmann::json to_json(const BetaRow& row);
nlohmann::json to_json(const SteadyStateSolution& solution, Complex b_in);
nlohmann::json to_json(const EnergyAudit& audit);
nlohmann::json to_json(const EffectiveGamma& result);
nlohmann::json to_json(const PulseCheck& check);

/// Array-of-rows JSON forms.
nlohmann::json sweep_json(const std::vector<SweepRow>& rows);
nlohmann::json beta_json(const std::vector<BetaRow>& rows);

}  // namespace phaseswitch
