#include "secrecy/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "secrecy/model.hpp"

namespace secrecy {

namespace {

using nlohmann::json;

constexpr Scheme kSchemeOrder[] = {Scheme::RoundRobin, Scheme::Optimal, Scheme::Suboptimal};
constexpr EavesdropperMode kModeOrder[] = {EavesdropperMode::Uncoordinated,
                                           EavesdropperMode::Coordinated};

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

bool all_equal(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

void require_integral_counts(const std::vector<double>& grid, const char* what) {
    for (double v : grid)
        if (!(v >= 1.0) || v != std::floor(v))
            throw ConfigError(std::string("grid for axis ") + what +
                              " must contain integers >= 1");
}

FloorPair floor_for(Scheme scheme, EavesdropperMode mode, const FloorParams& params) {
    switch (scheme) {
        case Scheme::RoundRobin: return floor_round_robin(params, mode);
        case Scheme::Optimal: return floor_optimal(params, mode);
        case Scheme::Suboptimal: return floor_suboptimal(params, mode);
    }
    throw ConfigError("unknown scheme");
}

}  // namespace

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::GammaIDb: return "gamma_I_db";
        case SweepAxis::SecrecyRate: return "secrecy_rate";
        case SweepAxis::NumEves: return "num_eves";
        case SweepAxis::NumUsers: return "num_users";
        case SweepAxis::MerDb: return "mer_db";
    }
    return "?";
}

SweepAxis axis_from_string(const std::string& name) {
    if (name == "gamma_I_db") return SweepAxis::GammaIDb;
    if (name == "secrecy_rate") return SweepAxis::SecrecyRate;
    if (name == "num_eves") return SweepAxis::NumEves;
    if (name == "num_users") return SweepAxis::NumUsers;
    if (name == "mer_db") return SweepAxis::MerDb;
    throw ConfigError("unknown axis '" + name +
                      "' (expected gamma_I_db, secrecy_rate, num_eves, num_users or mer_db)");
}

void SweepSpec::validate() const {
    if (grid.empty()) throw ConfigError("grid must not be empty");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1]))
            throw ConfigError("grid must be strictly increasing");
    if (schemes.empty()) throw ConfigError("schemes must not be empty");
    if (modes.empty()) throw ConfigError("modes must not be empty");

    MerParameterization form{theta_main, theta_eve, mer, ref_gain_main};
    form.validate();
    if (theta_main.size() != num_users)
        throw ConfigError("theta_main must have num_users entries");
    if (noise_eve.size() != num_eves)
        throw ConfigError("noise_eve must have num_eves entries");
    if (theta_eve.front().size() != num_eves)
        throw ConfigError("theta_eve rows must have num_eves entries");
    if (gain_primary.size() != num_users)
        throw ConfigError("gain_primary must have num_users entries");
    for (std::size_t i = 0; i < num_users; ++i)
        if (!(gain_primary[i] > 0.0))
            throw ConfigError("gain_primary entries must be > 0");
    if (!(noise_cbs > 0.0)) throw ConfigError("noise_cbs must be > 0");
    if (!(interference_limit > 0.0)) throw ConfigError("interference_limit must be > 0");
    if (!(secrecy_rate >= 0.0)) throw ConfigError("secrecy_rate must be >= 0");

    if (axis == SweepAxis::NumUsers) {
        require_integral_counts(grid, "num_users");
        if (!all_equal(theta_main) || !all_equal(gain_primary))
            throw ConfigError("axis num_users requires uniform users "
                              "(scalar theta_main and gain_primary)");
        for (const auto& row : theta_eve)
            if (row != theta_eve.front())
                throw ConfigError("axis num_users requires identical theta_eve rows");
    }
    if (axis == SweepAxis::NumEves) {
        require_integral_counts(grid, "num_eves");
        if (!all_equal(noise_eve))
            throw ConfigError("axis num_eves requires a scalar noise_eve");
        for (const auto& row : theta_eve)
            if (!all_equal(row))
                throw ConfigError("axis num_eves requires per-user scalar theta_eve");
    }
    if (axis == SweepAxis::SecrecyRate) {
        for (double v : grid)
            if (!(v >= 0.0)) throw ConfigError("secrecy_rate grid entries must be >= 0");
    }
}

namespace {

// Axis substitution on a copy of the base parameters.
struct PointParams {
    std::size_t num_users;
    std::size_t num_eves;
    std::vector<double> theta_main;
    std::vector<std::vector<double>> theta_eve;
    std::vector<double> gain_primary;
    double mer;
    std::vector<double> noise_eve;
    double interference_limit;
    double secrecy_rate;
};

PointParams point_params(const SweepSpec& spec, double axis_value) {
    PointParams p{spec.num_users, spec.num_eves,     spec.theta_main,
                  spec.theta_eve, spec.gain_primary, spec.mer,
                  spec.noise_eve, spec.interference_limit, spec.secrecy_rate};
    switch (spec.axis) {
        case SweepAxis::GammaIDb:
            p.interference_limit = spec.noise_cbs * db_to_linear(axis_value);
            break;
        case SweepAxis::SecrecyRate:
            p.secrecy_rate = axis_value;
            break;
        case SweepAxis::MerDb:
            p.mer = db_to_linear(axis_value);
            break;
        case SweepAxis::NumUsers: {
            p.num_users = static_cast<std::size_t>(std::llround(axis_value));
            p.theta_main.assign(p.num_users, spec.theta_main.front());
            p.gain_primary.assign(p.num_users, spec.gain_primary.front());
            p.theta_eve.assign(p.num_users, spec.theta_eve.front());
            break;
        }
        case SweepAxis::NumEves: {
            p.num_eves = static_cast<std::size_t>(std::llround(axis_value));
            p.noise_eve.assign(p.num_eves, spec.noise_eve.front());
            for (auto& row : p.theta_eve) row.assign(p.num_eves, row.front());
            break;
        }
    }
    return p;
}

}  // namespace

SystemConfig config_at(const SweepSpec& spec, double axis_value) {
    const PointParams p = point_params(spec, axis_value);
    MerParameterization form{p.theta_main, p.theta_eve, p.mer, spec.ref_gain_main};
    return make_system_config(form, p.gain_primary, spec.noise_cbs, p.noise_eve,
                              p.interference_limit, p.secrecy_rate);
}

FloorParams floor_params_at(const SweepSpec& spec, double axis_value) {
    const PointParams p = point_params(spec, axis_value);
    FloorParams fp;
    fp.theta_main = p.theta_main;
    fp.theta_eve = p.theta_eve;
    fp.mer = p.mer;
    fp.noise_cbs = spec.noise_cbs;
    fp.noise_eve = p.noise_eve;
    fp.secrecy_rate = p.secrecy_rate;
    fp.validate();
    return fp;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SimulationOptions& opts) {
    spec.validate();
    std::vector<SweepRow> rows;

    for (std::size_t k = 0; k < spec.grid.size(); ++k) {
        const double axis_value = spec.grid[k];
        const SystemConfig cfg = config_at(spec, axis_value);
        const FloorParams fp = floor_params_at(spec, axis_value);
        const std::uint64_t point_seed = RandomStream::derive_seed(spec.seed, k);

        for (Scheme scheme : kSchemeOrder) {
            if (std::find(spec.schemes.begin(), spec.schemes.end(), scheme) ==
                spec.schemes.end())
                continue;
            for (EavesdropperMode mode : kModeOrder) {
                if (std::find(spec.modes.begin(), spec.modes.end(), mode) ==
                    spec.modes.end())
                    continue;

                SweepRow row;
                row.axis_value = axis_value;
                row.scheme = scheme;
                row.mode = mode;

                try {
                    row.analytic = outage_closed_form(scheme, mode, cfg).value;
                } catch (const CapExceededError&) {
                    if (spec.mc_trials == 0) throw;
                } catch (const ModelAssumptionError&) {
                    if (spec.mc_trials == 0) throw;
                }
                try {
                    row.floor = floor_for(scheme, mode, fp);
                } catch (const CapExceededError&) {
                }
                if (spec.mc_trials > 0)
                    row.mc = estimate_outage(scheme, mode, cfg, spec.mc_trials,
                                             point_seed, opts);
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "axis,scheme,mode,analytic,floor_or_bounds,mc_p_hat,mc_ci_low,mc_ci_high\n";
    for (const SweepRow& r : rows) {
        out += fmt(r.axis_value);
        out += ',';
        out += to_string(r.scheme);
        out += ',';
        out += to_string(r.mode);
        out += ',';
        if (r.analytic) out += fmt(*r.analytic);
        out += ',';
        if (r.floor) {
            if (r.floor->is_exact()) {
                out += fmt(r.floor->lower.value);
            } else {
                out += fmt(r.floor->lower.value);
                out += ':';
                out += fmt(r.floor->upper.value);
            }
        }
        out += ',';
        if (r.mc) {
            out += fmt(r.mc->p_hat);
            out += ',';
            out += fmt(r.mc->ci_low);
            out += ',';
            out += fmt(r.mc->ci_high);
        } else {
            out += ",,";
        }
        out += '\n';
    }
    return out;
}

namespace {

const char* kKnownKeys[] = {
    "axis",        "grid",         "schemes",      "modes",         "num_users",
    "num_eves",    "gamma_I_db",   "interference_limit",            "mer_db",
    "mer",         "secrecy_rate", "theta_main",   "theta_eve",     "gain_primary",
    "noise_cbs",   "noise_eve",    "ref_gain_main", "mc_trials",    "seed",
};

[[noreturn]] void type_error(const std::string& key, const char* expected) {
    throw ConfigError("key '" + key + "': expected " + expected);
}

double get_number(const json& j, const std::string& key) {
    if (!j.at(key).is_number()) type_error(key, "a number");
    return j.at(key).get<double>();
}

std::uint64_t get_count(const json& j, const std::string& key) {
    if (!j.at(key).is_number_unsigned()) type_error(key, "a non-negative integer");
    return j.at(key).get<std::uint64_t>();
}

std::vector<double> get_number_list(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_array() || v.empty()) type_error(key, "a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) type_error(key, "a non-empty array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

// Scalar-or-list: a scalar is broadcast to `size` entries.
std::vector<double> get_broadcast(const json& j, const std::string& key, std::size_t size,
                                  double fallback) {
    if (!j.contains(key)) return std::vector<double>(size, fallback);
    const auto& v = j.at(key);
    if (v.is_number()) return std::vector<double>(size, v.get<double>());
    if (v.is_array()) {
        auto list = get_number_list(j, key);
        if (list.size() != size)
            throw ConfigError("key '" + key + "': expected " + std::to_string(size) +
                              " entries, got " + std::to_string(list.size()));
        return list;
    }
    type_error(key, "a number or array of numbers");
}

std::vector<std::vector<double>> get_theta_eve(const json& j, std::size_t m,
                                               std::size_t n) {
    if (!j.contains("theta_eve"))
        return std::vector<std::vector<double>>(m, std::vector<double>(n, 1.0));
    const auto& v = j.at("theta_eve");
    if (v.is_number())
        return std::vector<std::vector<double>>(m,
                                                std::vector<double>(n, v.get<double>()));
    if (v.is_array() && !v.empty() && v.front().is_number()) {
        auto row = get_number_list(j, "theta_eve");
        if (row.size() != n)
            throw ConfigError("key 'theta_eve': per-eavesdropper list must have num_eves "
                              "entries");
        return std::vector<std::vector<double>>(m, row);
    }
    if (v.is_array()) {
        std::vector<std::vector<double>> out;
        for (const auto& e : v) {
            if (!e.is_array()) type_error("theta_eve", "a number, list, or list of lists");
            std::vector<double> row;
            for (const auto& x : e) {
                if (!x.is_number())
                    type_error("theta_eve", "a number, list, or list of lists");
                row.push_back(x.get<double>());
            }
            if (row.size() != n)
                throw ConfigError("key 'theta_eve': rows must have num_eves entries");
            out.push_back(std::move(row));
        }
        if (out.size() != m)
            throw ConfigError("key 'theta_eve': expected num_users rows");
        return out;
    }
    type_error("theta_eve", "a number, list, or list of lists");
}

}  // namespace

SweepSpec parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    for (const auto& item : j.items()) {
        const bool known = std::any_of(std::begin(kKnownKeys), std::end(kKnownKeys),
                                       [&](const char* k) { return item.key() == k; });
        if (!known) throw ConfigError("unknown key '" + item.key() + "'");
    }

    SweepSpec spec;
    if (!j.contains("axis")) throw ConfigError("missing required key 'axis' (string)");
    if (!j.at("axis").is_string()) type_error("axis", "a string");
    spec.axis = axis_from_string(j.at("axis").get<std::string>());

    if (!j.contains("grid"))
        throw ConfigError("missing required key 'grid' (array of numbers)");
    spec.grid = get_number_list(j, "grid");

    if (j.contains("schemes")) {
        if (!j.at("schemes").is_array()) type_error("schemes", "an array of strings");
        spec.schemes.clear();
        for (const auto& e : j.at("schemes")) {
            if (!e.is_string()) type_error("schemes", "an array of strings");
            spec.schemes.push_back(scheme_from_string(e.get<std::string>()));
        }
    }
    if (j.contains("modes")) {
        if (!j.at("modes").is_array()) type_error("modes", "an array of strings");
        spec.modes.clear();
        for (const auto& e : j.at("modes")) {
            if (!e.is_string()) type_error("modes", "an array of strings");
            spec.modes.push_back(mode_from_string(e.get<std::string>()));
        }
    }

    // Axis-substituted parameters may not also be fixed in the config.
    const auto reject_on_axis = [&](SweepAxis axis, const char* key) {
        if (spec.axis == axis && j.contains(key))
            throw ConfigError(std::string("key '") + key + "' conflicts with axis " +
                              to_string(axis));
    };
    reject_on_axis(SweepAxis::GammaIDb, "gamma_I_db");
    reject_on_axis(SweepAxis::GammaIDb, "interference_limit");
    reject_on_axis(SweepAxis::MerDb, "mer_db");
    reject_on_axis(SweepAxis::MerDb, "mer");
    reject_on_axis(SweepAxis::SecrecyRate, "secrecy_rate");
    reject_on_axis(SweepAxis::NumUsers, "num_users");
    reject_on_axis(SweepAxis::NumEves, "num_eves");

    if (spec.axis == SweepAxis::NumUsers) {
        require_integral_counts(spec.grid, "num_users");
        spec.num_users = static_cast<std::size_t>(spec.grid.back());
    } else {
        if (!j.contains("num_users"))
            throw ConfigError("missing required key 'num_users' (positive integer)");
        spec.num_users = static_cast<std::size_t>(get_count(j, "num_users"));
    }
    if (spec.axis == SweepAxis::NumEves) {
        require_integral_counts(spec.grid, "num_eves");
        spec.num_eves = static_cast<std::size_t>(spec.grid.back());
    } else {
        if (!j.contains("num_eves"))
            throw ConfigError("missing required key 'num_eves' (positive integer)");
        spec.num_eves = static_cast<std::size_t>(get_count(j, "num_eves"));
    }
    if (spec.num_users < 1) throw ConfigError("num_users must be >= 1");
    if (spec.num_eves < 1) throw ConfigError("num_eves must be >= 1");

    if (spec.axis != SweepAxis::GammaIDb) {
        if (j.contains("gamma_I_db") && j.contains("interference_limit"))
            throw ConfigError("give either 'gamma_I_db' or 'interference_limit', not both");
        if (j.contains("gamma_I_db")) {
            spec.noise_cbs = j.contains("noise_cbs") ? get_number(j, "noise_cbs") : 1.0;
            spec.interference_limit = spec.noise_cbs * db_to_linear(get_number(j, "gamma_I_db"));
        } else if (j.contains("interference_limit")) {
            spec.interference_limit = get_number(j, "interference_limit");
        } else {
            throw ConfigError(
                "missing required key 'gamma_I_db' or 'interference_limit' (number)");
        }
    }

    if (spec.axis != SweepAxis::MerDb) {
        if (j.contains("mer_db") && j.contains("mer"))
            throw ConfigError("give either 'mer_db' or 'mer', not both");
        if (j.contains("mer_db"))
            spec.mer = db_to_linear(get_number(j, "mer_db"));
        else if (j.contains("mer"))
            spec.mer = get_number(j, "mer");
        else
            throw ConfigError("missing required key 'mer_db' or 'mer' (number)");
    }

    if (spec.axis != SweepAxis::SecrecyRate) {
        if (!j.contains("secrecy_rate"))
            throw ConfigError("missing required key 'secrecy_rate' (number)");
        spec.secrecy_rate = get_number(j, "secrecy_rate");
    }

    if (j.contains("noise_cbs")) spec.noise_cbs = get_number(j, "noise_cbs");
    spec.noise_eve = get_broadcast(j, "noise_eve", spec.num_eves, 1.0);
    spec.theta_main = get_broadcast(j, "theta_main", spec.num_users, 1.0);
    spec.gain_primary = get_broadcast(j, "gain_primary", spec.num_users, 1.0);
    spec.theta_eve = get_theta_eve(j, spec.num_users, spec.num_eves);
    if (j.contains("ref_gain_main")) spec.ref_gain_main = get_number(j, "ref_gain_main");
    if (j.contains("mc_trials")) spec.mc_trials = get_count(j, "mc_trials");
    if (j.contains("seed")) spec.seed = get_count(j, "seed");

    spec.validate();
    return spec;
}

SweepSpec figure_spec(int figure) {
    SweepSpec spec;
    const auto uniform = [&](std::size_t m, std::size_t n) {
        spec.num_users = m;
        spec.num_eves = n;
        spec.theta_main.assign(m, 1.0);
        spec.theta_eve.assign(m, std::vector<double>(n, 1.0));
        spec.gain_primary.assign(m, 1.0);
        spec.noise_eve.assign(n, 1.0);
    };
    switch (figure) {
        case 2:
            spec.axis = SweepAxis::GammaIDb;
            for (int v = 0; v <= 20; v += 2) spec.grid.push_back(v);
            uniform(8, 4);
            spec.secrecy_rate = 1.0;
            spec.mer = db_to_linear(10.0);
            break;
        case 3:
            spec.axis = SweepAxis::SecrecyRate;
            for (int v = 0; v <= 10; ++v) spec.grid.push_back(0.2 * v);
            uniform(8, 4);
            spec.mer = db_to_linear(10.0);
            spec.interference_limit = db_to_linear(10.0);
            break;
        case 4:
            spec.axis = SweepAxis::NumEves;
            for (int v = 1; v <= 8; ++v) spec.grid.push_back(v);
            uniform(8, 8);
            spec.secrecy_rate = 1.0;
            spec.mer = db_to_linear(10.0);
            spec.interference_limit = db_to_linear(10.0);
            break;
        case 5:
            spec.axis = SweepAxis::NumUsers;
            for (int v = 1; v <= 8; ++v) spec.grid.push_back(v);
            uniform(8, 2);
            spec.secrecy_rate = 0.2;
            spec.mer = db_to_linear(-3.0);
            spec.interference_limit = db_to_linear(10.0);
            break;
        default:
            throw ConfigError("figure must be 2, 3, 4 or 5");
    }
    spec.validate();
    return spec;
}

std::vector<FloorTableRow> run_floor_table(const SweepSpec& spec,
                                           const std::vector<double>& mer_db_grid) {
    spec.validate();
    if (mer_db_grid.empty()) throw ConfigError("mer grid must not be empty");
    std::vector<FloorTableRow> rows;
    for (double mer_db : mer_db_grid) {
        // Tables describe the base configuration; the largest grid entry is
        // the full-size system when the sweep axis is a count.
        FloorParams fp = floor_params_at(spec, spec.grid.back());
        fp.mer = db_to_linear(mer_db);
        for (Scheme scheme : kSchemeOrder) {
            if (std::find(spec.schemes.begin(), spec.schemes.end(), scheme) ==
                spec.schemes.end())
                continue;
            for (EavesdropperMode mode : kModeOrder) {
                if (std::find(spec.modes.begin(), spec.modes.end(), mode) ==
                    spec.modes.end())
                    continue;
                rows.push_back({mer_db, scheme, mode, floor_for(scheme, mode, fp)});
            }
        }
    }
    return rows;
}

std::string to_csv(const std::vector<FloorTableRow>& rows) {
    std::string out = "mer_db,scheme,mode,floor_lower,floor_upper,log10_lower,log10_upper\n";
    constexpr double kLog10 = 2.302585092994046;  // ln(10)
    for (const auto& r : rows) {
        out += fmt(r.mer_db);
        out += ',';
        out += to_string(r.scheme);
        out += ',';
        out += to_string(r.mode);
        out += ',';
        out += fmt(r.floor.lower.value);
        out += ',';
        out += fmt(r.floor.upper.value);
        out += ',';
        out += fmt(r.floor.lower.log_value / kLog10);
        out += ',';
        out += fmt(r.floor.upper.log_value / kLog10);
        out += '\n';
    }
    return out;
}

std::vector<DiversityTableRow> run_diversity_table(const SweepSpec& spec,
                                                   const std::vector<double>& mer_grid) {
    spec.validate();
    std::vector<DiversityTableRow> rows;
    const FloorParams fp = floor_params_at(spec, spec.grid.back());
    for (Scheme scheme : kSchemeOrder) {
        if (std::find(spec.schemes.begin(), spec.schemes.end(), scheme) ==
            spec.schemes.end())
            continue;
        for (EavesdropperMode mode : kModeOrder) {
            if (std::find(spec.modes.begin(), spec.modes.end(), mode) == spec.modes.end())
                continue;
            rows.push_back(
                {scheme, mode, estimate_diversity_order(scheme, mode, fp, mer_grid)});
        }
    }
    return rows;
}

std::string to_csv(const std::vector<DiversityTableRow>& rows) {
    std::string out = "scheme,mode,slope,slope_upper,mer_low,mer_high\n";
    for (const auto& r : rows) {
        out += to_string(r.scheme);
        out += ',';
        out += to_string(r.mode);
        out += ',';
        out += fmt(r.estimate.slope);
        out += ',';
        if (r.estimate.slope_upper) out += fmt(*r.estimate.slope_upper);
        out += ',';
        out += fmt(r.estimate.mer_grid[r.estimate.mer_grid.size() - 2]);
        out += ',';
        out += fmt(r.estimate.mer_grid.back());
        out += '\n';
    }
    return out;
}

}  // namespace secrecy
