#include "secrecy/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "detail/quadrature.hpp"
#include "secrecy/closed_form.hpp"

namespace secrecy::oracle {

namespace {

double min_positive(const std::vector<double>& v) {
    double m = v.front();
    for (double x : v) m = std::min(m, x);
    return m;
}

// `scale` is the sum of absolute piece magnitudes: aggregating k pieces each
// converged to rel_tol can legitimately carry rel_tol * sum |piece| error even
// when the pieces cancel.
void require_estimate(const detail::IntegralEstimate& est, double scale,
                      const QuadratureSpec& spec, const char* what,
                      std::size_t pieces = 1) {
    const double bound = std::max(spec.abs_tol * static_cast<double>(pieces),
                                  spec.rel_tol * std::abs(scale));
    if (!(est.error <= bound) || !std::isfinite(est.value)) {
        std::ostringstream msg;
        msg << what << ": quadrature error estimate " << est.error
            << " exceeds tolerance " << bound;
        throw NonConvergenceError(msg.str(), est.error);
    }
}

// Product over users k != i of the main-gain CDFs: the probability that user
// i holds the largest main-channel gain given its own gain x.
double win_probability(double x, std::size_t i, const SystemConfig& cfg) {
    double p = 1.0;
    for (std::size_t k = 0; k < cfg.num_users; ++k)
        if (k != i) p *= -std::expm1(-x / cfg.gain_main[k]);
    return p;
}

struct CoordinatedGeometry {
    double two_rs;
    double x_coef;    // z threshold per unit x: N_e / (2^Rs N_b)
    double y_cut;     // rate threshold per unit x on y: I / ((2^Rs - 1) N_b), +inf at Rs = 0
    double y_coef;    // y credit per unit z: 2^Rs I / ((2^Rs - 1) N_e), +inf at Rs = 0
};

CoordinatedGeometry coordinated_geometry(const SystemConfig& cfg) {
    CoordinatedGeometry g;
    g.two_rs = std::exp2(cfg.secrecy_rate);
    const double ne = cfg.noise_eve.front();
    g.x_coef = ne / (g.two_rs * cfg.noise_cbs);
    g.y_cut = cfg.interference_limit / ((g.two_rs - 1.0) * cfg.noise_cbs);
    g.y_coef = g.two_rs * cfg.interference_limit / ((g.two_rs - 1.0) * ne);
    return g;
}

}  // namespace

QuadResult quad_outage_user_uncoordinated(std::size_t i, const SystemConfig& cfg,
                                          const QuadratureSpec& spec) {
    cfg.validate();
    if (i >= cfg.num_users) throw ConfigError("user index out of range");
    if (cfg.num_eves > 6)
        throw ConfigError("per-user quadrature oracle supports num_eves <= 6");

    const double two_rs = std::exp2(cfg.secrecy_rate);
    const double nb = cfg.noise_cbs;
    const double norm = cfg.gain_main[i] * cfg.interference_limit +
                        cfg.gain_primary[i] * (two_rs - 1.0) * nb;
    const double prefactor = two_rs * nb * cfg.interference_limit / norm;
    const double decay = cfg.gain_main[i] / (two_rs * nb);

    double rise = decay;
    for (std::size_t j = 0; j < cfg.num_eves; ++j)
        rise = std::min(rise, cfg.gain_eve[i][j] / cfg.noise_eve[j]);

    const auto integrand = [&](double x) {
        double prod = 1.0;
        for (std::size_t j = 0; j < cfg.num_eves; ++j)
            prod *= -std::expm1(-cfg.noise_eve[j] * x / cfg.gain_eve[i][j]);
        return prod * std::exp(-x / decay);
    };

    const auto est = detail::integrate_geometric(
        integrand, 0.0, spec.truncation_radius * decay, rise, spec);
    const double covered = prefactor * est.value;
    require_estimate({covered, prefactor * est.error}, std::max(covered, 1.0 - covered),
                     spec, "per-user outage quadrature");
    return {1.0 - covered, prefactor * est.error};
}

QuadResult quad_outage_suboptimal_uncoordinated(const SystemConfig& cfg,
                                                const QuadratureSpec& spec) {
    cfg.validate();
    if (cfg.num_users > 4)
        throw ConfigError("suboptimal quadrature oracle supports num_users <= 4");
    if (cfg.num_eves > 4)
        throw ConfigError("suboptimal quadrature oracle supports num_eves <= 4");

    const double two_rs = std::exp2(cfg.secrecy_rate);
    const double nb = cfg.noise_cbs;
    const double limit = cfg.interference_limit;
    const double y_cut = limit / ((two_rs - 1.0) * nb);  // +inf when secrecy_rate == 0

    QuadratureSpec inner_spec = spec;
    inner_spec.rel_tol = spec.rel_tol * 0.1;
    inner_spec.abs_tol = spec.abs_tol * 0.1;

    double value = 0.0;
    double error = 0.0;
    double piece_scale = 0.0;

    for (std::size_t i = 0; i < cfg.num_users; ++i) {
        const double gain_i = cfg.gain_main[i];
        const double gp = cfg.gain_primary[i];
        const double x_scale = min_positive(cfg.gain_main);

        std::vector<double> ax(cfg.num_eves), by(cfg.num_eves);
        for (std::size_t j = 0; j < cfg.num_eves; ++j) {
            ax[j] = cfg.noise_eve[j] / (cfg.gain_eve[i][j] * two_rs * nb);
            by[j] = cfg.noise_eve[j] * (two_rs - 1.0) / (cfg.gain_eve[i][j] * two_rs * limit);
        }

        const auto main_weight = [&](double x) {
            return std::exp(-x / gain_i) / gain_i * win_probability(x, i, cfg);
        };

        // Outage regardless of eavesdroppers: the power-control ratio alone
        // pushes the main channel below the secrecy rate.
        const auto rate_limited = [&](double x) {
            const double t = y_cut * x / gp;
            return std::isfinite(t) ? main_weight(x) * std::exp(-t) : 0.0;
        };

        // Selection mass with the rate threshold not binding.
        const auto selection = [&](double x) {
            const double t = y_cut * x / gp;
            return std::isfinite(t) ? main_weight(x) * -std::expm1(-t) : main_weight(x);
        };

        // Joint mass where every eavesdropper stays below the secrecy margin,
        // integrated over the primary gain window (0, y_cut * x).
        const auto covered = [&](double x) {
            double y_scale = gp;
            for (std::size_t j = 0; j < cfg.num_eves; ++j)
                if (by[j] > 0.0) y_scale = std::min(y_scale, 1.0 / by[j]);
            const double y_hi = std::min(y_cut * x, spec.truncation_radius * gp);
            const auto inner = [&](double y) {
                double prod = 1.0;
                for (std::size_t j = 0; j < cfg.num_eves; ++j)
                    prod *= -std::expm1(-(ax[j] * x - by[j] * y));
                return prod * std::exp(-y / gp) / gp;
            };
            const auto est = detail::integrate_geometric(inner, 0.0, y_hi, y_scale, inner_spec);
            return main_weight(x) * est.value;
        };

        const double x_hi = spec.truncation_radius * gain_i;
        const auto est_sel = detail::integrate_geometric(selection, 0.0, x_hi, x_scale, spec);
        const auto est_cov = detail::integrate_geometric(covered, 0.0, x_hi, x_scale, spec);
        const auto est_rate = detail::integrate_geometric(rate_limited, 0.0, x_hi, x_scale, spec);

        value += est_sel.value - est_cov.value + est_rate.value;
        error += est_sel.error + est_cov.error + est_rate.error;
        piece_scale += std::abs(est_sel.value) + std::abs(est_cov.value) +
                       std::abs(est_rate.value);
    }

    require_estimate({value, error}, piece_scale, spec, "suboptimal outage quadrature",
                     3 * cfg.num_users);
    return {value, error};
}

QuadResult quad_outage_suboptimal_coordinated(const SystemConfig& cfg,
                                              const QuadratureSpec& spec) {
    cfg.validate();
    if (cfg.num_users > 3)
        throw ConfigError("coordinated quadrature oracle supports num_users <= 3");
    if (cfg.num_eves > 4)
        throw ConfigError("coordinated quadrature oracle supports num_eves <= 4");
    for (std::size_t i = 0; i < cfg.num_users; ++i)
        for (std::size_t j = 1; j < cfg.num_eves; ++j)
            if (cfg.gain_eve[i][j] != cfg.gain_eve[i][0] ||
                cfg.noise_eve[j] != cfg.noise_eve[0])
                throw ModelAssumptionError(
                    "coordinated quadrature requires per-user equal eavesdropper "
                    "gains and a common eavesdropper noise variance");

    const auto geo = coordinated_geometry(cfg);
    const double n = static_cast<double>(cfg.num_eves);

    QuadratureSpec inner_spec = spec;
    inner_spec.rel_tol = spec.rel_tol * 0.1;
    inner_spec.abs_tol = spec.abs_tol * 0.1;

    double value = 0.0;
    double error = 0.0;

    for (std::size_t i = 0; i < cfg.num_users; ++i) {
        const double gain_i = cfg.gain_main[i];
        const double gp = cfg.gain_primary[i];
        const double g_eve = cfg.gain_eve[i][0];
        const double gamma_norm = std::tgamma(n) * std::pow(g_eve, n);
        const double z_hi = (n + spec.truncation_radius) * g_eve;
        const double x_scale = min_positive(cfg.gain_main);

        const auto outer = [&](double x) {
            const double z_star = geo.x_coef * x;
            const auto inner = [&](double z) {
                const double diff = z_star - z;
                double survive;  // P(primary gain keeps the outage condition)
                if (diff <= 0.0) {
                    survive = 1.0;
                } else {
                    const double y0 = geo.y_coef * diff;
                    survive = std::isfinite(y0) ? std::exp(-y0 / gp) : 0.0;
                }
                const double pdf = std::pow(z, n - 1.0) * std::exp(-z / g_eve) / gamma_norm;
                return pdf * survive;
            };
            detail::IntegralEstimate zest;
            if (z_star < z_hi) {
                const auto lo = detail::integrate_geometric(inner, 0.0, z_star,
                                                            g_eve, inner_spec);
                const auto hi = detail::integrate_geometric(inner, z_star, z_hi,
                                                            g_eve, inner_spec);
                zest = {lo.value + hi.value, lo.error + hi.error};
            } else {
                zest = detail::integrate_geometric(inner, 0.0, z_hi, g_eve, inner_spec);
            }
            return std::exp(-x / gain_i) / gain_i * win_probability(x, i, cfg) * zest.value;
        };

        const auto est = detail::integrate_geometric(
            outer, 0.0, spec.truncation_radius * gain_i, x_scale, spec);
        value += est.value;
        error += est.error;
    }

    require_estimate({value, error}, value, spec,
                     "coordinated suboptimal outage quadrature", cfg.num_users);
    return {value, error};
}

bool in_outage_region(double x, double y, double z, std::size_t i, const SystemConfig& cfg) {
    (void)i;
    if (x <= 0.0 || y <= 0.0 || z <= 0.0) return false;
    // Outage condition: z > x * N_e / (2^Rs N_b) - y * (2^Rs - 1) N_e / (2^Rs I).
    const auto geo = coordinated_geometry(cfg);
    const double ne = cfg.noise_eve.front();
    return z > geo.x_coef * x - (geo.two_rs - 1.0) * ne * y / (geo.two_rs * cfg.interference_limit);
}

bool in_region_rate_limited(double x, double y, double z, std::size_t i,
                            const SystemConfig& cfg) {
    (void)i;
    if (x <= 0.0 || y <= 0.0 || z <= 0.0) return false;
    const auto geo = coordinated_geometry(cfg);
    return y > geo.y_cut * x;
}

bool in_region_eve_dominant(double x, double y, double z, std::size_t i,
                            const SystemConfig& cfg) {
    (void)i;
    if (x <= 0.0 || y <= 0.0 || z <= 0.0) return false;
    const auto geo = coordinated_geometry(cfg);
    return y < geo.y_cut * x && z > geo.x_coef * x;
}

bool in_region_boundary_band(double x, double y, double z, std::size_t i,
                             const SystemConfig& cfg) {
    (void)i;
    if (x <= 0.0 || y <= 0.0 || z <= 0.0) return false;
    const auto geo = coordinated_geometry(cfg);
    if (!(z < geo.x_coef * x)) return false;
    const double y_low = geo.y_cut * x - geo.y_coef * z;
    return y < geo.y_cut * x && y > y_low;
}

std::vector<CertifyResult> run_certification_battery(const QuadratureSpec& spec) {
    std::vector<CertifyResult> out;
    const auto rel_err = [](double closed, double quad) {
        return std::abs(closed - quad) / std::max({std::abs(closed), std::abs(quad), 1e-30});
    };

    const std::vector<double> main_pattern{1.0, 2.0, 0.5};
    const std::vector<double> primary_pattern{0.8, 1.3, 0.6};
    const std::vector<double> eve_noise_pattern{1.0, 1.2, 0.9};

    for (std::size_t m = 1; m <= 3; ++m) {
        for (std::size_t n = 1; n <= 3; ++n) {
            for (const double rate : {1.0, 0.0}) {
                SystemConfig cfg;
                cfg.num_users = m;
                cfg.num_eves = n;
                cfg.gain_main.assign(main_pattern.begin(), main_pattern.begin() + m);
                cfg.gain_primary.assign(primary_pattern.begin(), primary_pattern.begin() + m);
                cfg.gain_eve.assign(m, std::vector<double>(n));
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        cfg.gain_eve[i][j] = 0.2 * (1.0 + 0.25 * i + 0.15 * j);
                cfg.noise_cbs = 1.0;
                cfg.noise_eve.assign(eve_noise_pattern.begin(), eve_noise_pattern.begin() + n);
                cfg.interference_limit = 10.0;
                cfg.secrecy_rate = rate;

                std::ostringstream tag;
                tag << "M=" << m << ",N=" << n << ",Rs=" << rate;

                for (std::size_t i = 0; i < m; ++i) {
                    const double closed = outage_user_uncoordinated(i, cfg).value;
                    const auto quad = quad_outage_user_uncoordinated(i, cfg, spec);
                    out.push_back({"user_uncoordinated " + tag.str() + ",i=" + std::to_string(i),
                                   closed, quad.value, quad.error, rel_err(closed, quad.value)});
                }
                {
                    const double closed = outage_suboptimal_uncoordinated(cfg).value;
                    const auto quad = quad_outage_suboptimal_uncoordinated(cfg, spec);
                    out.push_back({"suboptimal_uncoordinated " + tag.str(), closed, quad.value,
                                   quad.error, rel_err(closed, quad.value)});
                }

                // Coordinated variant: per-user equal eavesdropper gains, one
                // shared eavesdropper noise variance.
                SystemConfig coord = cfg;
                for (std::size_t i = 0; i < m; ++i)
                    coord.gain_eve[i].assign(n, 0.2 * (1.0 + 0.3 * i));
                coord.noise_eve.assign(n, 1.1);
                {
                    const double closed = outage_suboptimal_coordinated(coord).value;
                    const auto quad = quad_outage_suboptimal_coordinated(coord, spec);
                    out.push_back({"suboptimal_coordinated " + tag.str(), closed, quad.value,
                                   quad.error, rel_err(closed, quad.value)});
                }
                if (m == 1) {
                    // With one user the selection is vacuous, so the scheduled
                    // outage equals the per-user coordinated closed form.
                    const double closed = outage_user_coordinated(0, coord).value;
                    const auto quad = quad_outage_suboptimal_coordinated(coord, spec);
                    out.push_back({"user_coordinated " + tag.str(), closed, quad.value,
                                   quad.error, rel_err(closed, quad.value)});
                }
            }
        }
    }
    return out;
}

}  // namespace secrecy::oracle
