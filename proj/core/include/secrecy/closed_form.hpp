#pragma once

#include <bit>
#include <cstdint>

#include "secrecy/types.hpp"

namespace secrecy {

/// Subset-enumeration caps for the inclusion-exclusion sums. Term counts
/// grow as 2^N (eavesdropper subsets) and 2^(M-1) (competing-user subsets);
/// beyond the caps the closed forms refuse and the Monte-Carlo estimator is
/// the fallback.
inline constexpr std::size_t kMaxEnumeratedEves = 20;
inline constexpr std::size_t kMaxEnumeratedUsers = 20;

/// A probability in [0, 1]; construction clamps floating-point residue and
/// rejects values outside the tolerated band.
struct OutageProbability {
    double value = 0.0;
};

/// Bitmask identifying one non-empty subset in an inclusion-exclusion sum.
struct SubsetIndex {
    std::uint32_t bits = 0;

    int cardinality() const { return std::popcount(bits); }

    /// Inclusion-exclusion sign (-1)^(cardinality+1).
    double sign() const { return (cardinality() % 2 == 1) ? 1.0 : -1.0; }
};

/// Exact secrecy outage probability of user i against independent
/// eavesdroppers, via inclusion-exclusion over eavesdropper subsets.
OutageProbability outage_user_uncoordinated(std::size_t i, const SystemConfig& cfg);

/// Exact secrecy outage probability of user i against MRC-combining
/// eavesdroppers. Requires gain_eve[i][j] identical across j and noise_eve
/// identical across eavesdroppers (the combined interception power is then
/// Gamma distributed); otherwise throws ModelAssumptionError.
OutageProbability outage_user_coordinated(std::size_t i, const SystemConfig& cfg);

/// Round-robin scheduling: every user transmits equally often, so the outage
/// probability is the mean of the per-user probabilities.
OutageProbability outage_round_robin(const SystemConfig& cfg, EavesdropperMode mode);

/// Scheduling the user with the highest instantaneous secrecy capacity:
/// outage requires every user to be in outage, and per-user events are
/// independent, so the probability is the product of per-user probabilities.
OutageProbability outage_optimal(const SystemConfig& cfg, EavesdropperMode mode);

/// Scheduling the user with the strongest main-channel gain (no primary or
/// eavesdropper CSI). Joint probability over the selection event and the
/// outage event, expanded over eavesdropper and competing-user subsets.
OutageProbability outage_suboptimal_uncoordinated(const SystemConfig& cfg);

/// Same selection rule against MRC-combining eavesdroppers; requires the
/// per-user identically-distributed eavesdropper assumptions.
OutageProbability outage_suboptimal_coordinated(const SystemConfig& cfg);

/// Dispatch by scheme and mode.
OutageProbability outage_closed_form(Scheme scheme, EavesdropperMode mode,
                                     const SystemConfig& cfg);

}  // namespace secrecy
