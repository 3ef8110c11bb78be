#pragma once

#include <optional>
#include <string>
#include <vector>

#include "secrecy/asymptotics.hpp"
#include "secrecy/closed_form.hpp"
#include "secrecy/montecarlo.hpp"
#include "secrecy/types.hpp"

namespace secrecy {

enum class SweepAxis { GammaIDb, SecrecyRate, NumEves, NumUsers, MerDb };

const char* to_string(SweepAxis axis);
SweepAxis axis_from_string(const std::string& name);

/// One parameter sweep: an axis and grid, the schemes and modes to evaluate,
/// and the base parameterization in ratio form. dB quantities are converted
/// to linear at this boundary; everything downstream is linear.
struct SweepSpec {
    SweepAxis axis = SweepAxis::GammaIDb;
    std::vector<double> grid;

    std::vector<Scheme> schemes{Scheme::RoundRobin, Scheme::Optimal, Scheme::Suboptimal};
    std::vector<EavesdropperMode> modes{EavesdropperMode::Uncoordinated,
                                        EavesdropperMode::Coordinated};

    std::size_t num_users = 1;
    std::size_t num_eves = 1;
    std::vector<double> theta_main;              // size num_users
    std::vector<std::vector<double>> theta_eve;  // num_users x num_eves
    std::vector<double> gain_primary;            // size num_users
    double ref_gain_main = 1.0;
    double mer = 1.0;
    double noise_cbs = 1.0;
    std::vector<double> noise_eve;               // size num_eves
    double interference_limit = 1.0;
    double secrecy_rate = 0.0;

    std::uint64_t mc_trials = 1'000'000;         // 0 = analytic only
    std::uint64_t seed = 42;

    void validate() const;
};

struct SweepRow {
    double axis_value = 0.0;
    Scheme scheme = Scheme::RoundRobin;
    EavesdropperMode mode = EavesdropperMode::Uncoordinated;
    std::optional<double> analytic;     // empty when closed-form preconditions fail
    std::optional<FloorPair> floor;
    std::optional<OutageEstimate> mc;   // empty when mc_trials == 0
};

/// Concrete configuration at one grid point (axis value substituted).
SystemConfig config_at(const SweepSpec& spec, double axis_value);
FloorParams floor_params_at(const SweepSpec& spec, double axis_value);

/// Evaluates the sweep. Rows are ordered by (axis, scheme, mode); per-point
/// Monte-Carlo seeds derive from (seed, axis index), so output is identical
/// for any worker count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SimulationOptions& opts = {});

/// Byte-stable CSV: fixed header, rows in sweep order, 12 significant digits,
/// '\n' terminators. Bound pairs print as lower:upper in one field.
std::string to_csv(const std::vector<SweepRow>& rows);

/// Parses a JSON sweep description. Unknown keys are rejected; missing or
/// ill-typed keys name the key and expected type. dB-suffixed keys are
/// converted as linear = 10^(dB/10).
SweepSpec parse_config(const std::string& json_text);

/// Built-in parameterizations of the four reference sweeps (2: interference
/// axis, 3: secrecy-rate axis, 4: eavesdropper-count axis, 5: user-count axis).
SweepSpec figure_spec(int figure);

struct FloorTableRow {
    double mer_db = 0.0;
    Scheme scheme = Scheme::RoundRobin;
    EavesdropperMode mode = EavesdropperMode::Uncoordinated;
    FloorPair floor;
};

std::vector<FloorTableRow> run_floor_table(const SweepSpec& spec,
                                           const std::vector<double>& mer_db_grid);
std::string to_csv(const std::vector<FloorTableRow>& rows);

struct DiversityTableRow {
    Scheme scheme = Scheme::RoundRobin;
    EavesdropperMode mode = EavesdropperMode::Uncoordinated;
    DiversityEstimate estimate;
};

std::vector<DiversityTableRow> run_diversity_table(const SweepSpec& spec,
                                                   const std::vector<double>& mer_grid);
std::string to_csv(const std::vector<DiversityTableRow>& rows);

}  // namespace secrecy
