#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "secrecy/oracle.hpp"

namespace secrecy::detail {

struct IntegralEstimate {
    double value = 0.0;
    double error = 0.0;
};

/// One adaptive Gauss-Kronrod pass on [a, b]. Returns the estimate without
/// judging convergence; callers aggregate errors and decide.
template <typename F>
IntegralEstimate integrate(const F& f, double a, double b,
                           const oracle::QuadratureSpec& spec) {
    if (!(b > a)) return {};
    double err = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, spec.max_subdivisions, spec.rel_tol, &err);
    return {value, err};
}

/// Integrates [a, b] after splitting it into geometrically growing segments
/// anchored at `scale`; resolves integrand features much narrower than the
/// interval, which plain bisection would need excessive depth to find.
template <typename F>
IntegralEstimate integrate_geometric(const F& f, double a, double b, double scale,
                                     const oracle::QuadratureSpec& spec) {
    if (!(b > a)) return {};
    scale = std::clamp(scale, 1e-300, b - a);
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double off = scale / 8.0; a + off < b; off *= 2.0) cuts.push_back(a + off);
    cuts.push_back(b);

    IntegralEstimate total;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const IntegralEstimate part = integrate(f, cuts[s], cuts[s + 1], spec);
        total.value += part.value;
        total.error += part.error;
    }
    return total;
}

/// Throws NonConvergenceError when an aggregated error estimate misses the
/// requested tolerance.
inline void require_converged(const IntegralEstimate& est,
                              const oracle::QuadratureSpec& spec, const char* what) {
    const double bound = std::max(spec.abs_tol, spec.rel_tol * std::abs(est.value));
    if (!(est.error <= bound) || !std::isfinite(est.value)) {
        throw NonConvergenceError(
            std::string(what) + ": quadrature error estimate " +
                std::to_string(est.error) + " exceeds tolerance " + std::to_string(bound),
            est.error);
    }
}

}  // namespace secrecy::detail
