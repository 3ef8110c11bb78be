#pragma once

#include <cstdint>
#include <utility>

#include "secrecy/types.hpp"

namespace secrecy {

/// Empirical outage probability with a 95% Wilson score interval.
struct OutageEstimate {
    double p_hat = 0.0;
    std::uint64_t trials = 0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    std::uint64_t seed = 0;
};

/// 95% Wilson score interval for `successes` out of `trials`; behaves
/// correctly near 0 and 1, where the outage probabilities of interest live.
std::pair<double, double> wilson_interval_95(std::uint64_t successes,
                                             std::uint64_t trials);

/// Scheduling decision for one channel realization. Round-robin cycles by
/// slot; optimal maximizes the instantaneous secrecy capacity; suboptimal
/// maximizes the main-channel gain. Ties break to the lowest index.
std::size_t select_user(Scheme scheme, const ChannelDraw& draw, const SystemConfig& cfg,
                        EavesdropperMode mode, std::uint64_t slot);

struct SimulationOptions {
    /// Trials are split into fixed blocks with per-block substreams, so the
    /// estimate is bit-identical for any worker count.
    std::uint64_t block_size = std::uint64_t{1} << 14;
    unsigned threads = 0;  // 0 = hardware concurrency
};

/// Estimates the secrecy outage probability by seeded simulation. Round-robin
/// allocates trials/M trials to every user (equal stratification); the other
/// schemes re-select per draw. Supports every valid configuration, including
/// those outside the closed forms' assumptions.
OutageEstimate estimate_outage(Scheme scheme, EavesdropperMode mode,
                               const SystemConfig& cfg, std::uint64_t trials,
                               std::uint64_t seed, const SimulationOptions& opts = {});

}  // namespace secrecy
