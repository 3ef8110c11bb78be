#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace secrecy {

/// Multi-user scheduling policies for the shared uplink.
enum class Scheme { RoundRobin, Optimal, Suboptimal };

/// Whether the eavesdroppers intercept independently or combine their
/// received signals (maximal ratio combining).
enum class EavesdropperMode { Uncoordinated, Coordinated };

const char* to_string(Scheme scheme);
const char* to_string(EavesdropperMode mode);
Scheme scheme_from_string(const std::string& name);
EavesdropperMode mode_from_string(const std::string& name);

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or invariant violation; maps to CLI exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A closed form would need more subset terms than the enumeration cap
/// allows. The Monte-Carlo estimator has no such limit.
class CapExceededError : public Error {
public:
    using Error::Error;
};

/// A coordinated-eavesdropper closed form was requested for a configuration
/// that violates its identically-distributed assumptions.
class ModelAssumptionError : public Error {
public:
    using Error::Error;
};

/// A channel draw carries a zero gain where the model requires positive
/// support (a probability-zero event under the sampler).
class DegenerateDrawError : public Error {
public:
    using Error::Error;
};

/// A floor evaluation underflowed past what log-space slope estimation
/// can certify.
class UnderflowError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature did not reach the requested tolerance; maps to CLI
/// exit code 2.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& what, double achieved_error)
        : Error(what), achieved_error_(achieved_error) {}
    double achieved_error() const { return achieved_error_; }

private:
    double achieved_error_;
};

/// Full parameterization of the network: M users transmitting to one base
/// station under an interference constraint at the primary receiver, with
/// N eavesdroppers listening. Gains are average channel power gains of the
/// Rayleigh-faded links; all internal computation is linear (no dB).
struct SystemConfig {
    std::size_t num_users = 0;  // M
    std::size_t num_eves = 0;   // N

    std::vector<double> gain_main;                 // user -> base station, size M
    std::vector<double> gain_primary;              // user -> primary receiver, size M
    std::vector<std::vector<double>> gain_eve;     // user -> eavesdropper, M x N

    double noise_cbs = 1.0;                        // interference+noise variance at the base station
    std::vector<double> noise_eve;                 // per-eavesdropper variance, size N
    double interference_limit = 1.0;               // max tolerable interference at the primary receiver
    double secrecy_rate = 0.0;                     // target secrecy rate, bit/s/Hz

    /// Throws ConfigError naming the offending field.
    void validate() const;

    /// Uniform-user convenience constructor: every user gets the same main,
    /// primary and eavesdropper gains, every eavesdropper the same noise.
    static SystemConfig symmetric(std::size_t num_users, std::size_t num_eves,
                                  double gain_main, double gain_primary, double gain_eve,
                                  double noise, double interference_limit, double secrecy_rate);
};

/// Normalized parameterization: per-link shape factors plus a single
/// main-to-eavesdropper ratio. gain_main[i] = theta_main[i] * ref_gain_main
/// and gain_eve[i][j] = theta_eve[i][j] * ref_gain_main / mer.
struct MerParameterization {
    std::vector<double> theta_main;                // size M
    std::vector<std::vector<double>> theta_eve;    // M x N
    double mer = 1.0;                              // reference main gain / reference eavesdropper gain
    double ref_gain_main = 1.0;

    std::size_t num_users() const { return theta_main.size(); }
    std::size_t num_eves() const { return theta_eve.empty() ? 0 : theta_eve.front().size(); }
    void validate() const;
};

/// Expands a normalized parameterization into absolute gains. The primary
/// channel, noise and rate parameters are not part of the ratio form and are
/// supplied separately.
SystemConfig make_system_config(const MerParameterization& mer_form,
                                std::vector<double> gain_primary,
                                double noise_cbs, std::vector<double> noise_eve,
                                double interference_limit, double secrecy_rate);

/// Inverse of make_system_config for a given ratio and reference gain.
MerParameterization extract_mer(const SystemConfig& cfg, double mer,
                                double ref_gain_main = 1.0);

/// One realization of all fading power gains.
struct ChannelDraw {
    std::vector<double> g_main;                 // |h_ib|^2, size M
    std::vector<double> g_primary;              // |h_ip|^2, size M
    std::vector<std::vector<double>> g_eve;     // |h_ie_j|^2, M x N
};

}  // namespace secrecy
