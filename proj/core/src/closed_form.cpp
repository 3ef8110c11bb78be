#include "secrecy/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "detail/numerics.hpp"

namespace secrecy {

namespace {

// Tolerated numeric residue outside [0, 1] before clamping.
constexpr double kClampBand = 1e-9;

// Relative tolerance for the removable-singularity branch switch in the
// suboptimal closed form: the generic antiderivative has a 0/0 at the switch
// point and the limit formula is its analytic continuation inside the band.
constexpr double kDegenerateBranchTol = 1e-9;

// Relative tolerance when checking the identically-distributed assumptions
// of the coordinated closed forms.
constexpr double kIidTol = 1e-12;

OutageProbability make_outage(double raw) {
    if (!(raw > -kClampBand && raw < 1.0 + kClampBand)) {
        std::ostringstream msg;
        msg << "closed-form outage " << raw << " outside [0,1] beyond tolerance "
            << kClampBand;
        throw Error(msg.str());
    }
    return OutageProbability{std::clamp(raw, 0.0, 1.0)};
}

void check_user_index(std::size_t i, const SystemConfig& cfg) {
    if (i >= cfg.num_users) throw ConfigError("user index out of range");
}

void check_eve_cap(const SystemConfig& cfg) {
    if (cfg.num_eves > kMaxEnumeratedEves)
        throw CapExceededError(
            "closed form needs 2^N - 1 eavesdropper-subset terms and N exceeds "
            "the enumeration cap; use the Monte-Carlo estimator instead");
}

void check_user_cap(const SystemConfig& cfg) {
    if (cfg.num_users > kMaxEnumeratedUsers)
        throw CapExceededError(
            "closed form needs 2^(M-1) user-subset terms and M exceeds the "
            "enumeration cap; use the Monte-Carlo estimator instead");
}

bool nearly_equal(double a, double b) {
    return std::abs(a - b) <= kIidTol * std::max(std::abs(a), std::abs(b));
}

// The coordinated closed forms model the combined interception power as a
// Gamma variable, which needs per-user equal eavesdropper gains and a common
// eavesdropper noise variance.
void check_iid_coordinated(std::size_t i, const SystemConfig& cfg) {
    for (std::size_t j = 1; j < cfg.num_eves; ++j) {
        if (!nearly_equal(cfg.gain_eve[i][j], cfg.gain_eve[i][0]))
            throw ModelAssumptionError(
                "coordinated closed form requires equal gain_eve entries for each "
                "user; use the Monte-Carlo estimator instead");
        if (!nearly_equal(cfg.noise_eve[j], cfg.noise_eve[0]))
            throw ModelAssumptionError(
                "coordinated closed form requires equal noise_eve entries; use the "
                "Monte-Carlo estimator instead");
    }
}

// Per-user competing-user subset sums: B[mask] = 1/gain_main[i] plus the sum
// of 1/gain_main[k] over the users k != i selected by mask.
void inverse_gain_subset_sums(std::size_t i, const SystemConfig& cfg,
                              std::vector<double>& scratch, std::vector<double>& out) {
    scratch.clear();
    for (std::size_t k = 0; k < cfg.num_users; ++k)
        if (k != i) scratch.push_back(1.0 / cfg.gain_main[k]);
    detail::subset_sums(scratch, out);
    for (double& b : out) b += 1.0 / cfg.gain_main[i];
}

}  // namespace

OutageProbability outage_user_uncoordinated(std::size_t i, const SystemConfig& cfg) {
    cfg.validate();
    check_user_index(i, cfg);
    check_eve_cap(cfg);

    const double two_rs = std::exp2(cfg.secrecy_rate);
    const double nb = cfg.noise_cbs;
    const double limit = cfg.interference_limit;
    const double rate_term = cfg.gain_primary[i] * (two_rs - 1.0) * nb;
    const double denom = cfg.gain_main[i] * limit + rate_term;

    std::vector<double> ratios(cfg.num_eves);
    for (std::size_t j = 0; j < cfg.num_eves; ++j)
        ratios[j] = cfg.noise_eve[j] / cfg.gain_eve[i][j];
    std::vector<double> subsum;
    detail::subset_sums(ratios, subsum);

    const double base = two_rs * nb / cfg.gain_main[i];
    detail::CompensatedSum acc;
    acc.add(rate_term);
    const std::uint32_t n_subsets = (1u << cfg.num_eves);
    for (SubsetIndex n{1}; n.bits < n_subsets; ++n.bits)
        acc.add(n.sign() * two_rs * nb * limit / (base + subsum[n.bits]));

    return make_outage(acc.value() / denom);
}

OutageProbability outage_user_coordinated(std::size_t i, const SystemConfig& cfg) {
    cfg.validate();
    check_user_index(i, cfg);
    check_iid_coordinated(i, cfg);

    const double two_rs = std::exp2(cfg.secrecy_rate);
    const double nb = cfg.noise_cbs;
    const double gain_eve = cfg.gain_eve[i][0];
    const double noise_eve = cfg.noise_eve[0];
    const double rate_term = cfg.gain_primary[i] * (two_rs - 1.0) * nb;
    const double main_term = cfg.gain_main[i] * cfg.interference_limit;

    const double gamma_tail = std::pow(
        1.0 + two_rs * gain_eve * nb / (cfg.gain_main[i] * noise_eve),
        -static_cast<double>(cfg.num_eves));
    return make_outage(1.0 - main_term / (main_term + rate_term) * gamma_tail);
}

OutageProbability outage_round_robin(const SystemConfig& cfg, EavesdropperMode mode) {
    cfg.validate();
    detail::CompensatedSum acc;
    for (std::size_t i = 0; i < cfg.num_users; ++i) {
        const auto p = mode == EavesdropperMode::Uncoordinated
                           ? outage_user_uncoordinated(i, cfg)
                           : outage_user_coordinated(i, cfg);
        acc.add(p.value);
    }
    return make_outage(acc.value() / static_cast<double>(cfg.num_users));
}

OutageProbability outage_optimal(const SystemConfig& cfg, EavesdropperMode mode) {
    cfg.validate();
    double product = 1.0;
    for (std::size_t i = 0; i < cfg.num_users; ++i) {
        const auto p = mode == EavesdropperMode::Uncoordinated
                           ? outage_user_uncoordinated(i, cfg)
                           : outage_user_coordinated(i, cfg);
        product *= p.value;
    }
    return make_outage(product);
}

OutageProbability outage_suboptimal_uncoordinated(const SystemConfig& cfg) {
    cfg.validate();
    check_eve_cap(cfg);
    check_user_cap(cfg);

    const double two_rs = std::exp2(cfg.secrecy_rate);
    const double nb = cfg.noise_cbs;
    const double limit = cfg.interference_limit;

    std::vector<double> eve_x(cfg.num_eves);   // x-exponent rates per eavesdropper
    std::vector<double> eve_y(cfg.num_eves);   // y-exponent rates per eavesdropper
    std::vector<double> sum_x, sum_y, inv_b, scratch;

    detail::CompensatedSum total;
    const std::uint32_t eve_subsets = (1u << cfg.num_eves);
    const std::uint32_t user_subsets = (1u << (cfg.num_users - 1));

    for (std::size_t i = 0; i < cfg.num_users; ++i) {
        const double gain_i = cfg.gain_main[i];
        const double gp = cfg.gain_primary[i];
        // +inf when the secrecy rate is zero, in which case every term it
        // enters vanishes (the selection region covers the whole quadrant).
        const double cross = gain_i * limit / (gp * (two_rs - 1.0) * nb);

        for (std::size_t j = 0; j < cfg.num_eves; ++j) {
            eve_x[j] = cfg.noise_eve[j] / (cfg.gain_eve[i][j] * two_rs * nb);
            eve_y[j] = cfg.noise_eve[j] * (two_rs - 1.0) / (cfg.gain_eve[i][j] * two_rs * limit);
        }
        detail::subset_sums(eve_x, sum_x);
        detail::subset_sums(eve_y, sum_y);
        inverse_gain_subset_sums(i, cfg, scratch, inv_b);

        // Selection term: probability that user i both wins the main-gain
        // contest and has its power-control ratio below the rate threshold.
        detail::CompensatedSum tail;
        for (SubsetIndex m{0}; m.bits < user_subsets; ++m.bits) {
            const double sign = (m.cardinality() % 2 == 0) ? 1.0 : -1.0;
            tail.add(sign / (gain_i * inv_b[m.bits] + cross));
        }
        total.add(tail.value());

        for (SubsetIndex n{1}; n.bits < eve_subsets; ++n.bits) {
            const double sx = sum_x[n.bits];
            const double sy = sum_y[n.bits];
            const bool degenerate = std::abs(sy * gp - 1.0) <= kDegenerateBranchTol;
            const double q = 1.0 / gp - sy;

            detail::CompensatedSum inner;
            for (SubsetIndex m{0}; m.bits < user_subsets; ++m.bits) {
                const double sign = (m.cardinality() % 2 == 0) ? 1.0 : -1.0;
                const double b = inv_b[m.bits];
                double piece;
                if (degenerate) {
                    const double r = b + sx;
                    piece = limit / (r * r * gain_i * gp * (two_rs - 1.0) * nb);
                } else {
                    piece = (1.0 / (gain_i * (b + sx)) - 1.0 / (gain_i * b + cross)) /
                            (gp * q);
                }
                inner.add(sign * piece);
            }
            total.add(n.sign() * inner.value());
        }
    }
    return make_outage(total.value());
}

OutageProbability outage_suboptimal_coordinated(const SystemConfig& cfg) {
    cfg.validate();
    check_user_cap(cfg);

    const double two_rs = std::exp2(cfg.secrecy_rate);
    const double nb = cfg.noise_cbs;
    const double limit = cfg.interference_limit;
    const double n_eves = static_cast<double>(cfg.num_eves);

    std::vector<double> inv_b, scratch;
    detail::CompensatedSum total;
    const std::uint32_t user_subsets = (1u << (cfg.num_users - 1));

    for (std::size_t i = 0; i < cfg.num_users; ++i) {
        check_iid_coordinated(i, cfg);
        const double gain_i = cfg.gain_main[i];
        const double gp = cfg.gain_primary[i];
        const double gain_eve = cfg.gain_eve[i][0];
        const double noise_eve = cfg.noise_eve[0];

        // Scaled constants; 'threshold' and 'shift' are +inf when the secrecy
        // rate is zero, and every term they enter then vanishes.
        const double per_eve = two_rs * nb / noise_eve;          // x-rate per unit 1/gain
        const double threshold = limit / ((two_rs - 1.0) * gp * nb);
        const double shift = gain_eve * two_rs * limit / ((two_rs - 1.0) * gp * noise_eve);

        inverse_gain_subset_sums(i, cfg, scratch, inv_b);

        detail::CompensatedSum user_sum;
        for (SubsetIndex m{0}; m.bits < user_subsets; ++m.bits) {
            const double sign = (m.cardinality() % 2 == 0) ? 1.0 : -1.0;
            const double b = inv_b[m.bits];
            const double gamma_base = 1.0 + gain_eve * per_eve * b;
            const double tail_near = std::pow(gamma_base, -n_eves);
            const double tail_far = std::pow(gamma_base + shift, -n_eves);
            const double with_cross = gain_i * (b + threshold);

            // Split of the integration domain by whether the rate threshold
            // binds: below-threshold piece, above-threshold piece, and the
            // piece where the main channel alone is too weak.
            const double piece_one = (tail_near - tail_far) / with_cross;
            const double piece_two =
                (1.0 - tail_near) / (gain_i * b) - (1.0 - tail_far) / with_cross;
            const double piece_three = 1.0 / with_cross;
            user_sum.add(sign * (piece_one + piece_two + piece_three));
        }
        total.add(user_sum.value());
    }
    return make_outage(total.value());
}

OutageProbability outage_closed_form(Scheme scheme, EavesdropperMode mode,
                                     const SystemConfig& cfg) {
    switch (scheme) {
        case Scheme::RoundRobin: return outage_round_robin(cfg, mode);
        case Scheme::Optimal: return outage_optimal(cfg, mode);
        case Scheme::Suboptimal:
            return mode == EavesdropperMode::Uncoordinated
                       ? outage_suboptimal_uncoordinated(cfg)
                       : outage_suboptimal_coordinated(cfg);
    }
    throw ConfigError("unknown scheme");
}

}  // namespace secrecy
