#include "bohr/geometry.hpp"

#include <cmath>
#include <random>

#include "bohr/errors.hpp"

namespace bohr {

double lt_norm(cspan z, double t) {
    if (t < 1.0) throw precondition_error("lt_norm: exponent t must satisfy t >= 1");
    if (std::isinf(t)) {
        double m = 0.0;
        for (const auto& v : z) m = std::max(m, std::abs(v));
        return m;
    }
    if (t == 1.0) {
        double s = 0.0;
        for (const auto& v : z) s += std::abs(v);
        return s;
    }
    if (t == 2.0) {
        double s = 0.0;
        for (const auto& v : z) s += std::norm(v);
        return std::sqrt(s);
    }
    double s = 0.0;
    for (const auto& v : z) s += std::pow(std::abs(v), t);
    return std::pow(s, 1.0 / t);
}

complexd unit_sign(complexd w) {
    double a = std::abs(w);
    if (a == 0.0) return {1.0, 0.0};
    return w / a;
}

SupportFunctional::SupportFunctional(cspan z0, double t) : t_(t) {
    if (t < 1.0) throw precondition_error("SupportFunctional: exponent t must satisfy t >= 1");
    double nrm = lt_norm(z0, t);
    if (nrm == 0.0) throw precondition_error("SupportFunctional: base point must be nonzero");

    weights_.assign(z0.size(), complexd{0.0, 0.0});
    if (std::isinf(t)) {
        std::size_t jstar = 0;
        double best = -1.0;
        for (std::size_t j = 0; j < z0.size(); ++j) {
            if (std::abs(z0[j]) > best) { // strict: lowest index wins ties
                best = std::abs(z0[j]);
                jstar = j;
            }
        }
        weights_[jstar] = std::conj(unit_sign(z0[jstar]));
        return;
    }
    if (t == 1.0) {
        for (std::size_t j = 0; j < z0.size(); ++j)
            if (std::abs(z0[j]) > 0.0) weights_[j] = std::conj(unit_sign(z0[j]));
        return;
    }
    double scale = std::pow(nrm, t - 1.0);
    for (std::size_t j = 0; j < z0.size(); ++j) {
        double a = std::abs(z0[j]);
        if (a > 0.0) weights_[j] = std::conj(unit_sign(z0[j])) * std::pow(a, t - 1.0) / scale;
    }
}

complexd SupportFunctional::operator()(cspan z) const {
    if (z.size() != weights_.size())
        throw precondition_error("SupportFunctional: dimension mismatch");
    complexd acc{0.0, 0.0};
    for (std::size_t j = 0; j < z.size(); ++j) acc += weights_[j] * z[j];
    return acc;
}

namespace {

// mt19937_64 output mapped to [0,1) with an explicit ldexp so the stream is
// pinned by the standard, independent of library distribution internals.
double next_uniform(std::mt19937_64& rng) {
    return std::ldexp(static_cast<double>(rng() >> 11), -53);
}

complexd next_gaussian_pair(std::mt19937_64& rng) {
    double u1 = next_uniform(rng);
    while (u1 == 0.0) u1 = next_uniform(rng);
    double u2 = next_uniform(rng);
    double mag = std::sqrt(-2.0 * std::log(u1));
    return {mag * std::cos(2.0 * M_PI * u2), mag * std::sin(2.0 * M_PI * u2)};
}

} // namespace

std::vector<cvec> sample_boundary(int n, double t, int count, std::uint64_t seed) {
    if (n < 1) throw precondition_error("sample_boundary: dimension must be positive");
    if (count < 1) throw precondition_error("sample_boundary: count must be positive");

    std::vector<cvec> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < n && j < count; ++j) {
        cvec e(static_cast<std::size_t>(n), complexd{0.0, 0.0});
        e[static_cast<std::size_t>(j)] = complexd{1.0, 0.0};
        out.push_back(std::move(e));
    }

    std::mt19937_64 rng(seed);
    while (static_cast<int>(out.size()) < count) {
        cvec z(static_cast<std::size_t>(n));
        for (auto& v : z) v = next_gaussian_pair(rng);
        double nrm = lt_norm(z, t);
        if (nrm < 1e-6) continue;
        for (auto& v : z) v /= nrm;
        out.push_back(std::move(z));
    }
    return out;
}

} // namespace bohr
