#pragma once

#include "bohr/maps.hpp"

namespace bohr {

// Directional coefficient sequence c_s = max_j |s-th Taylor coefficient of
// zeta -> f_j(zeta * z0)| for a unit direction z0. Every functional below is
// a function of this sequence and a radius.
struct SliceCoefficients {
    std::vector<double> c;         // indices 0..S_max
    int S_max = 0;
    bool constant_term_exact = false;
    double aliasing_bound = 0.0;   // certified per-coefficient extraction error

    double at(int s) const { return s >= 0 && s <= S_max ? c[static_cast<std::size_t>(s)] : 0.0; }
};

struct ExtractOptions {
    double rho = 0.95; // evaluation circle radius
    int M = 0;         // quadrature points; 0 selects max(256, 8 * S_max)
};

// Closed-form slice of the coordinate Mobius family: c_0 = b and
// c_s = (1 - b^2) b^(s-1) for s >= 1.
SliceCoefficients mobius_slice(double b, int S_max);

// Taylor coefficients of zeta -> f(zeta * direction) by the discrete Cauchy
// integral on the circle |zeta| = rho with M points:
//   a_{j,s} ~= (1 / (M rho^s)) sum_l f_j(rho e^{2 pi i l / M} direction) e^{-2 pi i l s / M}.
// The aliasing error per coefficient is bounded by sup|f| * rho^(M-s)/(1-rho),
// recorded (at the worst s) in the result.
SliceCoefficients extract_slice(const MapDescriptor& map, cspan direction, int S_max,
                                const ExtractOptions& opts = {});

// Upper bound (1 - c_0^2) r^(S_max+1) / (1 - r) for the truncated tail
// sum_{s > S_max} c_s r^s of a self-map slice.
double geometric_tail_bound(const SliceCoefficients& c, double r);

// Companion bounds for the squared series sum_{s > S_max} (c_s r^s)^2 and the
// energy series sum_{s > S_max} s (c_s r^s)^2.
double squared_tail_bound(const SliceCoefficients& c, double r);
double energy_tail_bound(const SliceCoefficients& c, double r);

} // namespace bohr
