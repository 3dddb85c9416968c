#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace bohr {

using complexd = std::complex<double>;
using cvec = std::vector<complexd>;
using cspan = std::span<const complexd>;

inline constexpr double t_infinity = std::numeric_limits<double>::infinity();

// (sum |z_j|^t)^(1/t) for finite t >= 1, max_j |z_j| for t = infinity.
double lt_norm(cspan z, double t);

// w/|w|, with sign(0) defined as 1 so phases stay well defined at zero.
complexd unit_sign(complexd w);

// Norm-one linear functional attaining ||z0||_t at z0 (explicit Hahn-Banach
// on l_t^n). Non-unique cases are resolved deterministically: for t = infinity
// the lowest index attaining max|z0_j| wins; for t = 1 the functional is
// supported exactly on the support of z0.
class SupportFunctional {
public:
    SupportFunctional(cspan z0, double t);

    complexd operator()(cspan z) const;

    double t() const { return t_; }

private:
    cvec weights_; // T(z) = sum_j weights_[j] * z_j
    double t_;
};

// Deterministic-for-seed directions on the unit sphere of l_t^n. The first
// min(n, count) entries are the coordinate directions e_1..e_n; the rest are
// normalized complex Gaussian samples.
std::vector<cvec> sample_boundary(int n, double t, int count, std::uint64_t seed);

} // namespace bohr
