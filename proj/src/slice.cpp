#include "bohr/slice.hpp"

#include <cmath>

#include "bohr/errors.hpp"

namespace bohr {

SliceCoefficients mobius_slice(double b, int S_max) {
    if (b < 0.0 || b >= 1.0) throw precondition_error("mobius_slice: b must lie in [0,1)");
    if (S_max < 1) throw precondition_error("mobius_slice: S_max must be positive");
    SliceCoefficients out;
    out.S_max = S_max;
    out.constant_term_exact = true;
    out.c.assign(static_cast<std::size_t>(S_max) + 1, 0.0);
    out.c[0] = b;
    double cur = 1.0 - b * b; // (1-b^2) b^(s-1) at s = 1
    for (int s = 1; s <= S_max; ++s) {
        out.c[static_cast<std::size_t>(s)] = cur;
        cur *= b;
    }
    return out;
}

SliceCoefficients extract_slice(const MapDescriptor& map, cspan direction, int S_max,
                                const ExtractOptions& opts) {
    if (S_max < 1) throw precondition_error("extract_slice: S_max must be positive");
    double rho = opts.rho;
    int M = opts.M > 0 ? opts.M : std::max(256, 8 * S_max);
    if (!(rho > 0.0 && rho < 1.0))
        throw precondition_error("extract_slice: rho must lie in (0,1)");
    if (M < 4 * S_max) throw precondition_error("extract_slice: need M >= 4 * S_max");
    if (std::abs(lt_norm(direction, map.t) - 1.0) > 1e-12)
        throw precondition_error("extract_slice: direction must lie on the unit sphere of l_t^n");

    const int n = map.n;
    const std::size_t un = static_cast<std::size_t>(n);

    // Sample the map on the circle. Each point is independent; invalid-map
    // errors must not escape a parallel region, so they are collected first.
    std::vector<cvec> samples(static_cast<std::size_t>(M));
    std::vector<signed char> bad(static_cast<std::size_t>(M), 0);
#pragma omp parallel for schedule(static)
    for (int l = 0; l < M; ++l) {
        double ang = 2.0 * M_PI * static_cast<double>(l) / static_cast<double>(M);
        complexd zeta = std::polar(rho, ang);
        cvec point(direction.begin(), direction.end());
        for (auto& v : point) v *= zeta;
        try {
            samples[static_cast<std::size_t>(l)] = map_eval(map, point);
        } catch (const invalid_map_error&) {
            bad[static_cast<std::size_t>(l)] = 1;
        }
    }
    for (int l = 0; l < M; ++l)
        if (bad[static_cast<std::size_t>(l)])
            throw invalid_map_error("extract_slice: map leaves the closed polydisc on the sampling circle");

    double sup_bound = 0.0;
    for (const auto& row : samples)
        for (const auto& v : row) sup_bound = std::max(sup_bound, std::abs(v));

    // Twiddle table keeps every angle evaluation in [0, 2*pi).
    std::vector<complexd> twiddle(static_cast<std::size_t>(M));
    for (int k = 0; k < M; ++k)
        twiddle[static_cast<std::size_t>(k)] =
            std::polar(1.0, -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(M));

    SliceCoefficients out;
    out.S_max = S_max;
    out.constant_term_exact = false;
    out.c.assign(static_cast<std::size_t>(S_max) + 1, 0.0);

#pragma omp parallel for schedule(static)
    for (int s = 0; s <= S_max; ++s) {
        double inv_scale = 1.0 / (static_cast<double>(M) * std::pow(rho, s));
        double best = 0.0;
        for (std::size_t j = 0; j < un; ++j) {
            complexd acc{0.0, 0.0};
            for (int l = 0; l < M; ++l)
                acc += samples[static_cast<std::size_t>(l)][j] *
                       twiddle[static_cast<std::size_t>((static_cast<long long>(l) * s) % M)];
            best = std::max(best, std::abs(acc) * inv_scale);
        }
        out.c[static_cast<std::size_t>(s)] = best;
    }

    out.aliasing_bound = sup_bound * std::pow(rho, M - S_max) / (1.0 - rho);
    return out;
}

double geometric_tail_bound(const SliceCoefficients& c, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw precondition_error("geometric_tail_bound: need 0 <= r < 1");
    double c0 = c.at(0);
    return (1.0 - c0 * c0) * std::pow(r, c.S_max + 1) / (1.0 - r);
}

double squared_tail_bound(const SliceCoefficients& c, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw precondition_error("squared_tail_bound: need 0 <= r < 1");
    double c0 = c.at(0);
    double a = 1.0 - c0 * c0;
    return a * a * std::pow(r, 2 * (c.S_max + 1)) / (1.0 - r * r);
}

double energy_tail_bound(const SliceCoefficients& c, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw precondition_error("energy_tail_bound: need 0 <= r < 1");
    double c0 = c.at(0);
    double a = 1.0 - c0 * c0;
    double r2 = r * r;
    double S = static_cast<double>(c.S_max);
    // sum_{s > S} s x^s = x^(S+1) ((S+1) - S x) / (1-x)^2 with x = r^2
    return a * a * std::pow(r2, c.S_max + 1) * ((S + 1.0) - S * r2) / ((1.0 - r2) * (1.0 - r2));
}

} // namespace bohr
