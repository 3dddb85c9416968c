#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "bohr/slice.hpp"

namespace bohr {

// Weight polynomial W_N(x) = d_1 x + d_2 x^2 + ... + d_N x^N with d_i >= 0,
// attached to the exponent p it must be admissible for.
struct PolynomialWeights {
    std::vector<double> d; // d[0] is d_1
    double p = 1.0;
};

// One functional evaluation: value, per-term breakdown, certified truncation
// tail, and the margin 1 - lhs - tail.
struct FunctionalReport {
    double r = 0.0;
    double lhs = 0.0;
    double tail = 0.0;
    double margin = 0.0;
    std::vector<std::pair<std::string, double>> terms;

    void add_term(std::string name, double value) { terms.emplace_back(std::move(name), value); }
    void finalize(); // lhs := sum of terms, margin := 1 - lhs - tail
};

// sum_{s=N}^{S_max} c_s r^s
double majorant_sum(const SliceCoefficients& c, int N, double r);

// sum_{s>=1, qs+m <= S_max} c_{qs+m} r^(qs+m)
double lacunary_sum(const SliceCoefficients& c, int q, int m, double r);

// With k = floor((N-1)/2):
//   sum_{s>=N} c_s r^s
//   + sgn(k) sum_{s=1}^{k} c_s^2 r^N / (1-r)
//   + (1/(1+c_0) + r/(1-r)) sum_{s>=k+1} (c_s r^s)^2
double refined_block(const SliceCoefficients& c, int N, double r);

// (1 - c_0^2) r^N / (1 - r)
double refined_bound_rhs(double c0, int N, double r);

// sum_{s>=1} s (c_s r^s)^2
double schwarz_energy(const SliceCoefficients& c, double r);

double weight_poly(const PolynomialWeights& W, double x);

// max over [0,1] of tau (1+tau)^2 (1-tau^2)^(2s-2), s >= 2, found by a dense
// grid scan refined by golden-section search.
double cs_constant(int s);
// The maximizer, exposed for the constants table.
double cs_maximizer(int s);

// p(2+p)/(4p+4) for p in (0,1].
double mp_constant(double p);

// Admissibility of the weight polynomial:
//   L = 8 d_1 Mp^2 + sum_{i=2}^{N} 2(2i-1) c_i d_i Mp^(2i) <= p.
// Returns (holds, L).
std::pair<bool, double> check_weight_condition(const PolynomialWeights& W);

enum class Theorem { T41, T12, T21, T14 };

// Composite functional with a lacunary series block and a difference block:
//   ||f(v1(z))||^p + mu * lacunary(q, m) + nu * ||f(v2(z)) - f(0)||.
// m1_inf realizes the m1 -> infinity limit: the composition collapses to
// ||f(0)||^p.
struct T41Params {
    double p = 1.0;
    double mu = 1.0;
    double nu = 1.0;
    int q = 1;
    int m = 0;
    int m1 = 1;
    bool m1_inf = false;
    int m2 = 1;
};

// ||f(0)||^p + N^1 block + ||f(v1(z)) - f(0)||.
struct T12Params {
    double p = 1.0;
    int m1 = 1;
};

// ||f(0)||^p + N^1 block + W_N(S_z); requires the weight condition.
struct T21Params {
    PolynomialWeights W;
};

// ||f(v1(z))||^p + refined block of order N.
struct T14Params {
    double p = 1.0;
    int m1 = 1;
    int N = 1;
};

using ThmParams = std::variant<T41Params, T12Params, T21Params, T14Params>;

struct EvalOptions {
    int S_max = 64;
    ExtractOptions extract;
    // Closed-form slices are substituted for numeric extraction when the
    // descriptor is a coordinate Mobius map probed along its own axis.
    bool allow_closed_form_slice = true;
};

// Left-hand side of one of the four vector-valued inequalities at the point z
// (r = ||z||_t), with per-term breakdown and certified tail. schwarz[0] is v1
// and schwarz[1] is v2 where the theorem uses them.
FunctionalReport thm_lhs(Theorem id, const MapDescriptor& map,
                         std::span<const SchwarzMapSpec> schwarz, const ThmParams& params,
                         cspan z, const EvalOptions& opts = {});

// Same assembly on a precomputed slice (the composition terms still evaluate
// the descriptor pointwise).
FunctionalReport thm_lhs_on_slice(Theorem id, const MapDescriptor& map,
                                  std::span<const SchwarzMapSpec> schwarz,
                                  const ThmParams& params, cspan z,
                                  const SliceCoefficients& slice);

const char* theorem_name(Theorem id);

} // namespace bohr
