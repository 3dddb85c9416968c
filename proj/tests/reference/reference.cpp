#include "reference.hpp"

#include <cmath>
#include <complex>

namespace bohr_ref {

using bohr::complexd;
using bohr::cvec;

bohr::SliceCoefficients extract_slice_serial(const bohr::MapDescriptor& map, bohr::cspan direction,
                                             int S_max, double rho, int M) {
    bohr::SliceCoefficients out;
    out.S_max = S_max;
    out.c.assign(static_cast<std::size_t>(S_max) + 1, 0.0);

    std::vector<cvec> samples;
    samples.reserve(static_cast<std::size_t>(M));
    for (int l = 0; l < M; ++l) {
        complexd zeta = std::polar(rho, 2.0 * M_PI * l / M);
        cvec point(direction.begin(), direction.end());
        for (auto& v : point) v *= zeta;
        samples.push_back(bohr::map_eval(map, point));
    }

    for (int s = 0; s <= S_max; ++s) {
        double best = 0.0;
        for (int j = 0; j < map.n; ++j) {
            complexd acc{0.0, 0.0};
            for (int l = 0; l < M; ++l) {
                double ang = -2.0 * M_PI * ((static_cast<long long>(l) * s) % M) / M;
                acc += samples[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)] *
                       std::polar(1.0, ang);
            }
            best = std::max(best, std::abs(acc) / (M * std::pow(rho, s)));
        }
        out.c[static_cast<std::size_t>(s)] = best;
    }
    return out;
}

double disk_energy_quadrature_serial(double b, double r, int n_rad, int n_ang) {
    if (n_rad % 2 != 0) ++n_rad;
    const double h = r / n_rad;
    const double num = (1.0 - b * b) * (1.0 - b * b);
    double total = 0.0;
    for (int i = 0; i <= n_rad; ++i) {
        double rho = h * i;
        double acc = 0.0;
        for (int a = 0; a < n_ang; ++a) {
            complexd denom = 1.0 + b * std::polar(rho, 2.0 * M_PI * a / n_ang);
            double d2 = std::norm(denom);
            acc += num / (d2 * d2);
        }
        double ring = acc * (2.0 * M_PI / n_ang) * rho;
        double w = (i == 0 || i == n_rad) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        total += w * ring;
    }
    return total * h / 3.0;
}

double cs_grid_max_serial(int s, int grid_points) {
    double best = 0.0;
    for (int i = 0; i <= grid_points; ++i) {
        double tau = static_cast<double>(i) / grid_points;
        double v = tau * (1.0 + tau) * (1.0 + tau) * std::pow(1.0 - tau * tau, 2 * s - 2);
        best = std::max(best, v);
    }
    return best;
}

std::optional<std::pair<double, double>> first_sign_change_serial(
    const std::function<double(double)>& fn, double lo, double hi, int grid_points) {
    double prev_x = lo;
    double prev_f = fn(lo);
    for (int i = 1; i <= grid_points; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / grid_points;
        double f = fn(x);
        if ((prev_f < 0.0) != (f < 0.0) || f == 0.0 || prev_f == 0.0)
            return std::make_pair(prev_x, x);
        prev_x = x;
        prev_f = f;
    }
    return std::nullopt;
}

double sum_majorant(const bohr::SliceCoefficients& c, int N, double r) {
    double acc = 0.0;
    for (int s = N; s <= c.S_max; ++s) acc += c.at(s) * std::pow(r, s);
    return acc;
}

double sum_refined_block(const bohr::SliceCoefficients& c, int N, double r) {
    int k = (N - 1) / 2;
    double acc = sum_majorant(c, N, r);
    if (k >= 1) {
        double sq = 0.0;
        for (int s = 1; s <= k; ++s) sq += c.at(s) * c.at(s);
        acc += sq * std::pow(r, N) / (1.0 - r);
    }
    double squares = 0.0;
    for (int s = k + 1; s <= c.S_max; ++s) squares += std::pow(c.at(s) * std::pow(r, s), 2);
    acc += (1.0 / (1.0 + c.at(0)) + r / (1.0 - r)) * squares;
    return acc;
}

double sum_energy(const bohr::SliceCoefficients& c, double r) {
    double acc = 0.0;
    for (int s = 1; s <= c.S_max; ++s) acc += s * std::pow(c.at(s) * std::pow(r, s), 2);
    return acc;
}

} // namespace bohr_ref
