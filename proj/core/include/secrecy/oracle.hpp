#pragma once

#include <cstddef>
#include <vector>

#include "secrecy/types.hpp"

namespace secrecy::oracle {

/// Controls for the brute-force quadrature evaluations. Semi-infinite tails
/// are truncated at truncation_radius multiples of the relevant channel
/// scale; the exponential tail bound keeps the omitted mass below e^-radius.
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    unsigned max_subdivisions = 15;
    double truncation_radius = 50.0;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // achieved error estimate
};

/// Outage probability of user i against independent eavesdroppers by direct
/// 1-D integration of the max-eavesdropper CDF against the power-controlled
/// main-channel density. No subset expansion; certifies the closed form.
QuadResult quad_outage_user_uncoordinated(std::size_t i, const SystemConfig& cfg,
                                          const QuadratureSpec& spec = {});

/// Outage probability of best-main-gain scheduling against independent
/// eavesdroppers by 2-D integration over the joint (main gain, primary gain)
/// density, with the product forms integrated directly.
QuadResult quad_outage_suboptimal_uncoordinated(const SystemConfig& cfg,
                                                const QuadratureSpec& spec = {});

/// Outage probability of best-main-gain scheduling against MRC-combining
/// eavesdroppers: 2-D numeric integration over (main gain, combined
/// eavesdropper power) with the primary-gain integral done analytically.
QuadResult quad_outage_suboptimal_coordinated(const SystemConfig& cfg,
                                              const QuadratureSpec& spec = {});

/// Membership tests for the coordinated outage integration domain in
/// (x, y, z) = (main gain, primary gain, combined eavesdropper power).
/// The three sub-regions partition the outage region; exposed so property
/// tests can verify the partition on random point clouds.
bool in_outage_region(double x, double y, double z, std::size_t i, const SystemConfig& cfg);
bool in_region_boundary_band(double x, double y, double z, std::size_t i,
                             const SystemConfig& cfg);
bool in_region_eve_dominant(double x, double y, double z, std::size_t i,
                            const SystemConfig& cfg);
bool in_region_rate_limited(double x, double y, double z, std::size_t i,
                            const SystemConfig& cfg);

/// One certification case: a configuration plus the closed form and
/// quadrature values that must agree.
struct CertifyResult {
    std::string label;
    double closed_form = 0.0;
    double quadrature = 0.0;
    double quad_error = 0.0;
    double rel_error = 0.0;
};

/// Runs the fixed certification battery (heterogeneous small configurations)
/// comparing every applicable closed form against its quadrature oracle.
std::vector<CertifyResult> run_certification_battery(const QuadratureSpec& spec = {});

}  // namespace secrecy::oracle
