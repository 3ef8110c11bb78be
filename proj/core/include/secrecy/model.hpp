#pragma once

#include <cstdint>

#include "secrecy/types.hpp"

namespace secrecy {

/// Counter-based pseudo-random stream (splitmix64). Cheap to seed, and
/// substream(seed, k) yields decorrelated streams for parallel workers, so
/// results are reproducible for any worker count.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    static RandomStream substream(std::uint64_t seed, std::uint64_t stream_index);

    /// Mixes (seed, index) into a fresh 64-bit seed; used to derive
    /// per-grid-point seeds without correlating neighbouring points.
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1); both endpoints are unreachable.
    double next_unit_open();

    /// Inverse-transform exponential draw, strictly positive.
    double next_exponential(double mean);

private:
    std::uint64_t state_;
};

/// Draws all M + M + M*N fading power gains independently, exponentially
/// distributed with the configured means. Deterministic in the stream state.
ChannelDraw sample_channels(const SystemConfig& cfg, RandomStream& rng);

/// Same, writing into an existing draw to avoid reallocation in hot loops.
void sample_channels(const SystemConfig& cfg, RandomStream& rng, ChannelDraw& out);

/// Capacity of the main channel of user i under interference-limited power
/// control: log2(1 + I*g_main / (g_primary * N_b)).
double capacity_main(std::size_t i, const ChannelDraw& draw, const SystemConfig& cfg);

/// Effective wiretap capacity against user i. Uncoordinated eavesdroppers
/// achieve the best individual rate; coordinated eavesdroppers combine their
/// signals with maximal ratio combining.
double capacity_wiretap(std::size_t i, const ChannelDraw& draw, const SystemConfig& cfg,
                        EavesdropperMode mode);

/// Main-channel capacity minus wiretap capacity; negative when the
/// eavesdroppers hold the better channel.
double secrecy_capacity(std::size_t i, const ChannelDraw& draw, const SystemConfig& cfg,
                        EavesdropperMode mode);

}  // namespace secrecy
