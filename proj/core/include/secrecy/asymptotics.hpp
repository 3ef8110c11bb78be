#pragma once

#include <optional>

#include "secrecy/types.hpp"

namespace secrecy {

enum class FloorKind { Exact, LowerBound, UpperBound };

const char* to_string(FloorKind kind);

/// A secrecy-outage floor: the outage probability in the unbounded
/// interference-limit regime. log_value stays meaningful when value
/// underflows at extreme main-to-eavesdropper ratios.
struct FloorResult {
    double value = 0.0;
    double log_value = 0.0;  // natural log
    FloorKind kind = FloorKind::Exact;
};

/// Exact floors are represented as a collapsed pair (lower == upper); the
/// coordinated-eavesdropper floors are genuine bound pairs.
struct FloorPair {
    FloorResult lower;
    FloorResult upper;
    bool is_exact() const { return lower.kind == FloorKind::Exact; }
};

/// Large-interference parameterization. Floors do not depend on the primary
/// channel or the interference limit; only the shape factors, the
/// main-to-eavesdropper ratio, noise variances and the secrecy rate remain.
struct FloorParams {
    std::vector<double> theta_main;              // size M
    std::vector<std::vector<double>> theta_eve;  // M x N
    double mer = 1.0;
    double noise_cbs = 1.0;
    std::vector<double> noise_eve;               // size N
    double secrecy_rate = 0.0;

    std::size_t num_users() const { return theta_main.size(); }
    std::size_t num_eves() const { return noise_eve.size(); }
    void validate() const;

    static FloorParams from_config(const SystemConfig& cfg, double mer,
                                   double ref_gain_main = 1.0);
};

/// Above this ratio the suboptimal floor switches from the exact quadrature
/// limit to its high-ratio closed form, and all slope work stays in log space.
inline constexpr double kHighMerThreshold = 1e4;

/// Round-robin floor: mean of the per-user floors. Exact for uncoordinated
/// eavesdroppers; a lower/upper bound pair for coordinated ones (combining
/// bounded between the best single eavesdropper and N times it).
FloorPair floor_round_robin(const FloorParams& params, EavesdropperMode mode);

/// Best-secrecy-capacity scheduling floor: product of per-user floors.
FloorPair floor_optimal(const FloorParams& params, EavesdropperMode mode);

/// Best-main-gain scheduling floor. Uncoordinated: exact quadrature limit at
/// moderate ratios, high-ratio closed form beyond the threshold. Coordinated:
/// a bound pair under the same split.
FloorPair floor_suboptimal(const FloorParams& params, EavesdropperMode mode);

/// High-ratio closed form of the suboptimal floor (ratio-independent bracket
/// times mer^-M); exact in the mer -> infinity limit.
FloorPair floor_suboptimal_high_mer(const FloorParams& params, EavesdropperMode mode);

/// Exact unbounded-interference limit of the suboptimal outage by adaptive
/// quadrature of the limiting selection integral; valid at any ratio.
FloorPair floor_suboptimal_exact(const FloorParams& params, EavesdropperMode mode);

/// Secrecy diversity order: negative slope of the log floor versus the log
/// main-to-eavesdropper ratio, estimated over the two largest grid entries.
struct DiversityEstimate {
    std::vector<double> mer_grid;
    double slope = 0.0;                 // exact floor, or lower bound when coordinated
    std::optional<double> slope_upper;  // upper-bound slope, coordinated only
};

DiversityEstimate estimate_diversity_order(Scheme scheme, EavesdropperMode mode,
                                           const FloorParams& params,
                                           std::vector<double> mer_grid = {1e6, 1e8});

}  // namespace secrecy
