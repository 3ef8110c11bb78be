#include "secrecy/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "secrecy/model.hpp"

namespace secrecy {

std::pair<double, double> wilson_interval_95(std::uint64_t successes,
                                             std::uint64_t trials) {
    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // The interval must bracket the point estimate even through rounding.
    const double lo = std::min(p, std::max(0.0, center - half));
    const double hi = std::max(p, std::min(1.0, center + half));
    return {lo, hi};
}

std::size_t select_user(Scheme scheme, const ChannelDraw& draw, const SystemConfig& cfg,
                        EavesdropperMode mode, std::uint64_t slot) {
    switch (scheme) {
        case Scheme::RoundRobin:
            return static_cast<std::size_t>(slot % cfg.num_users);
        case Scheme::Suboptimal: {
            std::size_t best = 0;
            for (std::size_t i = 1; i < cfg.num_users; ++i)
                if (draw.g_main[i] > draw.g_main[best]) best = i;
            return best;
        }
        case Scheme::Optimal: {
            std::size_t best = 0;
            double best_cs = secrecy_capacity(0, draw, cfg, mode);
            for (std::size_t i = 1; i < cfg.num_users; ++i) {
                const double cs = secrecy_capacity(i, draw, cfg, mode);
                if (cs > best_cs) {
                    best = i;
                    best_cs = cs;
                }
            }
            return best;
        }
    }
    throw ConfigError("unknown scheme");
}

OutageEstimate estimate_outage(Scheme scheme, EavesdropperMode mode,
                               const SystemConfig& cfg, std::uint64_t trials,
                               std::uint64_t seed, const SimulationOptions& opts) {
    cfg.validate();
    if (trials < 1) throw ConfigError("trials must be >= 1");

    std::uint64_t total = trials;
    if (scheme == Scheme::RoundRobin) {
        // Equal allocation across users; the pooled frequency then equals the
        // mean of the per-user frequencies.
        const std::uint64_t per_user = std::max<std::uint64_t>(1, trials / cfg.num_users);
        total = per_user * cfg.num_users;
    }

    const std::uint64_t block = std::max<std::uint64_t>(1, opts.block_size);
    const std::uint64_t num_blocks = (total + block - 1) / block;
    std::vector<std::uint64_t> block_outages(num_blocks, 0);
    std::atomic<std::uint64_t> next_block{0};

    const auto worker = [&]() {
        ChannelDraw draw;
        for (;;) {
            const std::uint64_t b = next_block.fetch_add(1, std::memory_order_relaxed);
            if (b >= num_blocks) return;
            RandomStream rng = RandomStream::substream(seed, b);
            const std::uint64_t begin = b * block;
            const std::uint64_t end = std::min(total, begin + block);
            std::uint64_t outages = 0;
            for (std::uint64_t t = begin; t < end; ++t) {
                sample_channels(cfg, rng, draw);
                const std::size_t u = select_user(scheme, draw, cfg, mode, t);
                if (secrecy_capacity(u, draw, cfg, mode) < cfg.secrecy_rate) ++outages;
            }
            block_outages[b] = outages;
        }
    };

    unsigned workers = opts.threads != 0 ? opts.threads
                                         : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, num_blocks));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::uint64_t successes = 0;
    for (std::uint64_t c : block_outages) successes += c;

    const auto [lo, hi] = wilson_interval_95(successes, total);
    return {static_cast<double>(successes) / static_cast<double>(total), total, lo, hi,
            seed};
}

}  // namespace secrecy
