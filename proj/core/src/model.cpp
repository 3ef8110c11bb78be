#include "secrecy/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace secrecy {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

void check_positive(double v, const char* field, std::size_t index, bool allow_zero = false) {
    const bool ok = std::isfinite(v) && (allow_zero ? v >= 0.0 : v > 0.0);
    if (!ok) {
        std::ostringstream msg;
        msg << field;
        if (index != static_cast<std::size_t>(-1)) msg << "[" << index << "]";
        msg << " must be " << (allow_zero ? ">= 0" : "> 0") << ", got " << v;
        throw ConfigError(msg.str());
    }
}

}  // namespace

const char* to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::RoundRobin: return "round_robin";
        case Scheme::Optimal: return "optimal";
        case Scheme::Suboptimal: return "suboptimal";
    }
    return "?";
}

const char* to_string(EavesdropperMode mode) {
    switch (mode) {
        case EavesdropperMode::Uncoordinated: return "uncoordinated";
        case EavesdropperMode::Coordinated: return "coordinated";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& name) {
    if (name == "round_robin") return Scheme::RoundRobin;
    if (name == "optimal") return Scheme::Optimal;
    if (name == "suboptimal") return Scheme::Suboptimal;
    throw ConfigError("unknown scheme '" + name +
                      "' (expected round_robin, optimal or suboptimal)");
}

EavesdropperMode mode_from_string(const std::string& name) {
    if (name == "uncoordinated") return EavesdropperMode::Uncoordinated;
    if (name == "coordinated") return EavesdropperMode::Coordinated;
    throw ConfigError("unknown mode '" + name +
                      "' (expected uncoordinated or coordinated)");
}

void SystemConfig::validate() const {
    if (num_users < 1) throw ConfigError("num_users must be >= 1");
    if (num_eves < 1) throw ConfigError("num_eves must be >= 1");
    if (gain_main.size() != num_users)
        throw ConfigError("gain_main must have num_users entries");
    if (gain_primary.size() != num_users)
        throw ConfigError("gain_primary must have num_users entries");
    if (gain_eve.size() != num_users)
        throw ConfigError("gain_eve must have num_users rows");
    for (std::size_t i = 0; i < num_users; ++i) {
        if (gain_eve[i].size() != num_eves)
            throw ConfigError("gain_eve rows must have num_eves entries");
        check_positive(gain_main[i], "gain_main", i);
        check_positive(gain_primary[i], "gain_primary", i);
        for (std::size_t j = 0; j < num_eves; ++j)
            check_positive(gain_eve[i][j], "gain_eve", j);
    }
    if (noise_eve.size() != num_eves)
        throw ConfigError("noise_eve must have num_eves entries");
    check_positive(noise_cbs, "noise_cbs", static_cast<std::size_t>(-1));
    for (std::size_t j = 0; j < num_eves; ++j)
        check_positive(noise_eve[j], "noise_eve", j);
    check_positive(interference_limit, "interference_limit", static_cast<std::size_t>(-1));
    check_positive(secrecy_rate, "secrecy_rate", static_cast<std::size_t>(-1),
                   /*allow_zero=*/true);
}

SystemConfig SystemConfig::symmetric(std::size_t num_users, std::size_t num_eves,
                                     double gain_main, double gain_primary, double gain_eve,
                                     double noise, double interference_limit,
                                     double secrecy_rate) {
    SystemConfig cfg;
    cfg.num_users = num_users;
    cfg.num_eves = num_eves;
    cfg.gain_main.assign(num_users, gain_main);
    cfg.gain_primary.assign(num_users, gain_primary);
    cfg.gain_eve.assign(num_users, std::vector<double>(num_eves, gain_eve));
    cfg.noise_cbs = noise;
    cfg.noise_eve.assign(num_eves, noise);
    cfg.interference_limit = interference_limit;
    cfg.secrecy_rate = secrecy_rate;
    cfg.validate();
    return cfg;
}

void MerParameterization::validate() const {
    if (theta_main.empty()) throw ConfigError("theta_main must not be empty");
    if (theta_eve.size() != theta_main.size())
        throw ConfigError("theta_eve must have one row per user");
    const std::size_t n = theta_eve.front().size();
    if (n == 0) throw ConfigError("theta_eve rows must not be empty");
    for (std::size_t i = 0; i < theta_main.size(); ++i) {
        check_positive(theta_main[i], "theta_main", i);
        if (theta_eve[i].size() != n)
            throw ConfigError("theta_eve rows must all have the same length");
        for (std::size_t j = 0; j < n; ++j)
            check_positive(theta_eve[i][j], "theta_eve", j);
    }
    check_positive(mer, "mer", static_cast<std::size_t>(-1));
    check_positive(ref_gain_main, "ref_gain_main", static_cast<std::size_t>(-1));
}

SystemConfig make_system_config(const MerParameterization& mer_form,
                                std::vector<double> gain_primary,
                                double noise_cbs, std::vector<double> noise_eve,
                                double interference_limit, double secrecy_rate) {
    mer_form.validate();
    const std::size_t m = mer_form.num_users();
    const std::size_t n = mer_form.num_eves();
    const double ref_eve = mer_form.ref_gain_main / mer_form.mer;

    SystemConfig cfg;
    cfg.num_users = m;
    cfg.num_eves = n;
    cfg.gain_main.resize(m);
    cfg.gain_eve.assign(m, std::vector<double>(n));
    for (std::size_t i = 0; i < m; ++i) {
        cfg.gain_main[i] = mer_form.theta_main[i] * mer_form.ref_gain_main;
        for (std::size_t j = 0; j < n; ++j)
            cfg.gain_eve[i][j] = mer_form.theta_eve[i][j] * ref_eve;
    }
    cfg.gain_primary = std::move(gain_primary);
    cfg.noise_cbs = noise_cbs;
    cfg.noise_eve = std::move(noise_eve);
    cfg.interference_limit = interference_limit;
    cfg.secrecy_rate = secrecy_rate;
    cfg.validate();
    return cfg;
}

MerParameterization extract_mer(const SystemConfig& cfg, double mer, double ref_gain_main) {
    cfg.validate();
    MerParameterization out;
    out.mer = mer;
    out.ref_gain_main = ref_gain_main;
    const double ref_eve = ref_gain_main / mer;
    out.theta_main.resize(cfg.num_users);
    out.theta_eve.assign(cfg.num_users, std::vector<double>(cfg.num_eves));
    for (std::size_t i = 0; i < cfg.num_users; ++i) {
        out.theta_main[i] = cfg.gain_main[i] / ref_gain_main;
        for (std::size_t j = 0; j < cfg.num_eves; ++j)
            out.theta_eve[i][j] = cfg.gain_eve[i][j] / ref_eve;
    }
    out.validate();
    return out;
}

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t stream_index) {
    std::uint64_t h = mix64(seed + kGolden);
    h = mix64(h ^ (stream_index + 0xD1B54A32D192ED03ULL));
    return RandomStream(h);
}

std::uint64_t RandomStream::derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(mix64(seed + kGolden) ^ (index + 0x8CB92BA72F3D8DD7ULL));
}

std::uint64_t RandomStream::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double RandomStream::next_unit_open() {
    // 53 random bits, shifted into (0, 1): min 2^-54, max 1 - 2^-54.
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RandomStream::next_exponential(double mean) {
    return -mean * std::log1p(-next_unit_open());
}

void sample_channels(const SystemConfig& cfg, RandomStream& rng, ChannelDraw& out) {
    const std::size_t m = cfg.num_users;
    const std::size_t n = cfg.num_eves;
    out.g_main.resize(m);
    out.g_primary.resize(m);
    out.g_eve.resize(m);

    for (std::size_t i = 0; i < m; ++i)
        out.g_main[i] = rng.next_exponential(cfg.gain_main[i]);
    for (std::size_t i = 0; i < m; ++i)
        out.g_primary[i] = rng.next_exponential(cfg.gain_primary[i]);
    for (std::size_t i = 0; i < m; ++i) {
        out.g_eve[i].resize(n);
        for (std::size_t j = 0; j < n; ++j)
            out.g_eve[i][j] = rng.next_exponential(cfg.gain_eve[i][j]);
    }
}

ChannelDraw sample_channels(const SystemConfig& cfg, RandomStream& rng) {
    ChannelDraw draw;
    sample_channels(cfg, rng, draw);
    return draw;
}

double capacity_main(std::size_t i, const ChannelDraw& draw, const SystemConfig& cfg) {
    const double gp = draw.g_primary[i];
    if (gp <= 0.0)
        throw DegenerateDrawError("g_primary is zero; transmit power is unbounded");
    return std::log2(1.0 + cfg.interference_limit * draw.g_main[i] / (gp * cfg.noise_cbs));
}

double capacity_wiretap(std::size_t i, const ChannelDraw& draw, const SystemConfig& cfg,
                        EavesdropperMode mode) {
    const double gp = draw.g_primary[i];
    if (gp <= 0.0)
        throw DegenerateDrawError("g_primary is zero; transmit power is unbounded");

    if (mode == EavesdropperMode::Uncoordinated) {
        double best = 0.0;
        for (std::size_t j = 0; j < cfg.num_eves; ++j)
            best = std::max(best, draw.g_eve[i][j] / cfg.noise_eve[j]);
        return std::log2(1.0 + cfg.interference_limit * best / gp);
    }

    // MRC combining: SNR = I * (sum g)^2 / (g_primary * sum g*N_e).
    double sum_g = 0.0;
    double sum_gn = 0.0;
    for (std::size_t j = 0; j < cfg.num_eves; ++j) {
        sum_g += draw.g_eve[i][j];
        sum_gn += draw.g_eve[i][j] * cfg.noise_eve[j];
    }
    if (sum_g <= 0.0) return 0.0;
    return std::log2(1.0 + cfg.interference_limit * sum_g * sum_g / (gp * sum_gn));
}

double secrecy_capacity(std::size_t i, const ChannelDraw& draw, const SystemConfig& cfg,
                        EavesdropperMode mode) {
    return capacity_main(i, draw, cfg) - capacity_wiretap(i, draw, cfg, mode);
}

}  // namespace secrecy
