#include "secrecy/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "detail/numerics.hpp"
#include "detail/quadrature.hpp"
#include "secrecy/closed_form.hpp"

namespace secrecy {

namespace {

// Effective per-eavesdropper noise lists for the coordinated bounds: the
// combined interception rate is at least the best single eavesdropper
// (noise at most max N_e) and at most N times it (noise at least min N_e / N).
std::vector<double> bound_noise(const FloorParams& p, FloorKind kind) {
    if (kind == FloorKind::LowerBound) {
        const double worst = *std::max_element(p.noise_eve.begin(), p.noise_eve.end());
        return std::vector<double>(p.noise_eve.size(), worst);
    }
    const double best = *std::min_element(p.noise_eve.begin(), p.noise_eve.end());
    return std::vector<double>(p.noise_eve.size(),
                               best / static_cast<double>(p.noise_eve.size()));
}

// Per-user floor against independent eavesdroppers with an explicit noise
// list: inclusion-exclusion over eavesdropper subsets of
// 2^Rs N_b / (2^Rs N_b + mer * sum theta_ib / theta_ie_j * noise_j).
double per_user_floor(std::size_t i, const FloorParams& p,
                      const std::vector<double>& noise) {
    const double two_rs = std::exp2(p.secrecy_rate);
    const double base = two_rs * p.noise_cbs;

    std::vector<double> w(p.num_eves());
    for (std::size_t j = 0; j < p.num_eves(); ++j)
        w[j] = p.theta_main[i] / p.theta_eve[i][j] * noise[j];
    std::vector<double> subsum;
    detail::subset_sums(w, subsum);

    detail::CompensatedSum acc;
    const std::uint32_t n_subsets = (1u << p.num_eves());
    for (SubsetIndex n{1}; n.bits < n_subsets; ++n.bits)
        acc.add(n.sign() * base / (base + p.mer * subsum[n.bits]));
    return acc.value();
}

FloorResult mean_floor(const FloorParams& p, const std::vector<double>& noise,
                       FloorKind kind) {
    detail::CompensatedSum acc;
    for (std::size_t i = 0; i < p.num_users(); ++i) acc.add(per_user_floor(i, p, noise));
    const double value = acc.value() / static_cast<double>(p.num_users());
    return {value, std::log(value), kind};
}

FloorResult product_floor(const FloorParams& p, const std::vector<double>& noise,
                          FloorKind kind) {
    double log_value = 0.0;
    for (std::size_t i = 0; i < p.num_users(); ++i)
        log_value += std::log(per_user_floor(i, p, noise));
    return {std::exp(log_value), log_value, kind};
}

// High-ratio suboptimal floor with an explicit noise list. The bracket is
// ratio-independent in the limit, so the log form stays finite at any mer:
//   log G(M) - sum_k log theta_kb + log bracket - M log mer,
//   bracket = sum_i sum_subsets sign * (1/(theta_ib * mer) + S_subset)^-M.
FloorResult high_mer_suboptimal(const FloorParams& p, const std::vector<double>& noise,
                                FloorKind kind) {
    const double m = static_cast<double>(p.num_users());
    const double two_rs = std::exp2(p.secrecy_rate);

    detail::CompensatedSum bracket;
    std::vector<double> w(p.num_eves());
    std::vector<double> subsum;
    const std::uint32_t n_subsets = (1u << p.num_eves());
    for (std::size_t i = 0; i < p.num_users(); ++i) {
        for (std::size_t j = 0; j < p.num_eves(); ++j)
            w[j] = noise[j] / (p.theta_eve[i][j] * two_rs * p.noise_cbs);
        detail::subset_sums(w, subsum);
        for (SubsetIndex n{1}; n.bits < n_subsets; ++n.bits) {
            const double s = 1.0 / (p.theta_main[i] * p.mer) + subsum[n.bits];
            bracket.add(n.sign() * std::pow(s, -m));
        }
    }

    double log_theta = 0.0;
    for (double t : p.theta_main) log_theta += std::log(t);

    const double log_value = std::lgamma(m) - log_theta + std::log(bracket.value()) -
                             m * std::log(p.mer);
    return {std::exp(log_value), log_value, kind};
}

// Exact unbounded-interference limit with an explicit noise list: the joint
// probability that user i wins the main-gain contest while some eavesdropper
// subset clears the secrecy margin, integrated over the winning gain.
FloorResult exact_suboptimal(const FloorParams& p, const std::vector<double>& noise,
                             FloorKind kind) {
    const double two_rs = std::exp2(p.secrecy_rate);
    oracle::QuadratureSpec spec;

    detail::CompensatedSum acc;
    for (std::size_t i = 0; i < p.num_users(); ++i) {
        const double theta_i = p.theta_main[i];
        std::vector<double> rate(p.num_eves());
        double eve_scale = theta_i;
        for (std::size_t j = 0; j < p.num_eves(); ++j) {
            rate[j] = p.mer * noise[j] / (p.theta_eve[i][j] * two_rs * p.noise_cbs);
            eve_scale = std::min(eve_scale, 1.0 / rate[j]);
        }
        const auto integrand = [&](double x) {
            double all_below = 1.0;
            for (std::size_t j = 0; j < p.num_eves(); ++j)
                all_below *= -std::expm1(-rate[j] * x);
            double win = 1.0;
            for (std::size_t k = 0; k < p.num_users(); ++k)
                if (k != i) win *= -std::expm1(-x / p.theta_main[k]);
            return (1.0 - all_below) * win * std::exp(-x / theta_i) / theta_i;
        };
        const auto est = detail::integrate_geometric(
            integrand, 0.0, spec.truncation_radius * theta_i, eve_scale, spec);
        detail::require_converged(est, spec, "suboptimal floor quadrature");
        acc.add(est.value);
    }
    const double value = acc.value();
    return {value, std::log(value), kind};
}

void check_eve_cap(const FloorParams& p) {
    if (p.num_eves() > kMaxEnumeratedEves)
        throw CapExceededError("floor evaluation needs 2^N - 1 subset terms and N "
                               "exceeds the enumeration cap");
}

}  // namespace

const char* to_string(FloorKind kind) {
    switch (kind) {
        case FloorKind::Exact: return "exact";
        case FloorKind::LowerBound: return "lower";
        case FloorKind::UpperBound: return "upper";
    }
    return "?";
}

void FloorParams::validate() const {
    MerParameterization form;
    form.theta_main = theta_main;
    form.theta_eve = theta_eve;
    form.mer = mer;
    form.validate();
    if (theta_eve.front().size() != noise_eve.size())
        throw ConfigError("noise_eve must have one entry per eavesdropper");
    for (double v : noise_eve)
        if (!(v > 0.0)) throw ConfigError("noise_eve entries must be > 0");
    if (!(noise_cbs > 0.0)) throw ConfigError("noise_cbs must be > 0");
    if (!(secrecy_rate >= 0.0)) throw ConfigError("secrecy_rate must be >= 0");
}

FloorParams FloorParams::from_config(const SystemConfig& cfg, double mer,
                                     double ref_gain_main) {
    const MerParameterization form = extract_mer(cfg, mer, ref_gain_main);
    FloorParams p;
    p.theta_main = form.theta_main;
    p.theta_eve = form.theta_eve;
    p.mer = mer;
    p.noise_cbs = cfg.noise_cbs;
    p.noise_eve = cfg.noise_eve;
    p.secrecy_rate = cfg.secrecy_rate;
    p.validate();
    return p;
}

FloorPair floor_round_robin(const FloorParams& params, EavesdropperMode mode) {
    params.validate();
    check_eve_cap(params);
    if (mode == EavesdropperMode::Uncoordinated) {
        const FloorResult exact = mean_floor(params, params.noise_eve, FloorKind::Exact);
        return {exact, exact};
    }
    return {mean_floor(params, bound_noise(params, FloorKind::LowerBound),
                       FloorKind::LowerBound),
            mean_floor(params, bound_noise(params, FloorKind::UpperBound),
                       FloorKind::UpperBound)};
}

FloorPair floor_optimal(const FloorParams& params, EavesdropperMode mode) {
    params.validate();
    check_eve_cap(params);
    if (mode == EavesdropperMode::Uncoordinated) {
        const FloorResult exact = product_floor(params, params.noise_eve, FloorKind::Exact);
        return {exact, exact};
    }
    return {product_floor(params, bound_noise(params, FloorKind::LowerBound),
                          FloorKind::LowerBound),
            product_floor(params, bound_noise(params, FloorKind::UpperBound),
                          FloorKind::UpperBound)};
}

FloorPair floor_suboptimal_high_mer(const FloorParams& params, EavesdropperMode mode) {
    params.validate();
    check_eve_cap(params);
    if (params.num_users() > kMaxEnumeratedUsers)
        throw CapExceededError("suboptimal floor exceeds the user enumeration cap");
    if (mode == EavesdropperMode::Uncoordinated) {
        const FloorResult exact =
            high_mer_suboptimal(params, params.noise_eve, FloorKind::Exact);
        return {exact, exact};
    }
    return {high_mer_suboptimal(params, bound_noise(params, FloorKind::LowerBound),
                                FloorKind::LowerBound),
            high_mer_suboptimal(params, bound_noise(params, FloorKind::UpperBound),
                                FloorKind::UpperBound)};
}

FloorPair floor_suboptimal_exact(const FloorParams& params, EavesdropperMode mode) {
    params.validate();
    if (mode == EavesdropperMode::Uncoordinated) {
        const FloorResult exact = exact_suboptimal(params, params.noise_eve, FloorKind::Exact);
        return {exact, exact};
    }
    return {exact_suboptimal(params, bound_noise(params, FloorKind::LowerBound),
                             FloorKind::LowerBound),
            exact_suboptimal(params, bound_noise(params, FloorKind::UpperBound),
                             FloorKind::UpperBound)};
}

FloorPair floor_suboptimal(const FloorParams& params, EavesdropperMode mode) {
    return params.mer > kHighMerThreshold ? floor_suboptimal_high_mer(params, mode)
                                          : floor_suboptimal_exact(params, mode);
}

DiversityEstimate estimate_diversity_order(Scheme scheme, EavesdropperMode mode,
                                           const FloorParams& params,
                                           std::vector<double> mer_grid) {
    if (mer_grid.size() < 2)
        throw ConfigError("mer_grid needs at least two entries");
    for (std::size_t k = 1; k < mer_grid.size(); ++k)
        if (!(mer_grid[k] > mer_grid[k - 1]))
            throw ConfigError("mer_grid must be strictly increasing");
    if (mer_grid.back() < 1e6)
        throw ConfigError("mer_grid must reach at least 1e6 for slope estimation");

    const auto floor_at = [&](double mer) {
        FloorParams p = params;
        p.mer = mer;
        switch (scheme) {
            case Scheme::RoundRobin: return floor_round_robin(p, mode);
            case Scheme::Optimal: return floor_optimal(p, mode);
            case Scheme::Suboptimal: return floor_suboptimal(p, mode);
        }
        throw ConfigError("unknown scheme");
    };

    const double mer_lo = mer_grid[mer_grid.size() - 2];
    const double mer_hi = mer_grid.back();
    const FloorPair f_lo = floor_at(mer_lo);
    const FloorPair f_hi = floor_at(mer_hi);

    constexpr double kLogUnderflow = -690.77552789821368;  // log(1e-300)
    for (const FloorResult* r : {&f_lo.lower, &f_lo.upper, &f_hi.lower, &f_hi.upper})
        if (r->log_value < kLogUnderflow)
            throw UnderflowError("floor underflowed below 1e-300; shrink the mer grid");

    const double dlog = std::log(mer_hi) - std::log(mer_lo);
    DiversityEstimate est;
    est.mer_grid = std::move(mer_grid);
    est.slope = -(f_hi.lower.log_value - f_lo.lower.log_value) / dlog;
    if (mode == EavesdropperMode::Coordinated)
        est.slope_upper = -(f_hi.upper.log_value - f_lo.upper.log_value) / dlog;
    return est;
}

}  // namespace secrecy
