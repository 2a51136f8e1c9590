#pragma once

#include <cmath>

namespace zc {

// Outward decimal rounding at k digits, with a snap window so that a value
// lying within 1e-6 ulp-of-the-kth-digit of an exact decimal is treated as
// that decimal rather than pushed one step outward by binary noise.
inline double round_up_dec(double x, int k) {
    const double scale = std::pow(10.0, k);
    const double y = x * scale;
    const double n = std::round(y);
    if (std::fabs(y - n) < 1e-6) return n / scale;
    return std::ceil(y) / scale;
}

inline double round_down_dec(double x, int k) {
    const double scale = std::pow(10.0, k);
    const double y = x * scale;
    const double n = std::round(y);
    if (std::fabs(y - n) < 1e-6) return n / scale;
    return std::floor(y) / scale;
}

} // namespace zc
