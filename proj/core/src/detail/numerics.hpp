#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace secrecy::detail {

/// Neumaier-compensated summation; the inclusion-exclusion sums alternate in
/// sign, and 2^N terms can otherwise lose precision.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Fills out[mask] with the sum of values[j] over the bits set in mask, for
/// every mask in [0, 2^k). out[0] = 0.
inline void subset_sums(std::span<const double> values, std::vector<double>& out) {
    const std::size_t k = values.size();
    out.assign(std::size_t{1} << k, 0.0);
    for (std::uint32_t mask = 1; mask < out.size(); ++mask) {
        const unsigned lowest = static_cast<unsigned>(std::countr_zero(mask));
        out[mask] = out[mask & (mask - 1)] + values[lowest];
    }
}

}  // namespace secrecy::detail
