#include "bohr/functionals.hpp"

#include <cmath>
#include <sstream>

#include "bohr/errors.hpp"

namespace bohr {

void FunctionalReport::finalize() {
    lhs = 0.0;
    for (const auto& [name, value] : terms) lhs += value;
    margin = 1.0 - lhs - tail;
}

double majorant_sum(const SliceCoefficients& c, int N, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw precondition_error("majorant_sum: need 0 <= r < 1");
    if (N < 0) throw precondition_error("majorant_sum: need N >= 0");
    double acc = 0.0;
    for (int s = c.S_max; s >= N; --s) acc = acc * r + c.at(s); // Horner from the top
    acc *= std::pow(r, N);
    return acc;
}

double lacunary_sum(const SliceCoefficients& c, int q, int m, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw precondition_error("lacunary_sum: need 0 <= r < 1");
    if (q < 1 || m < 0) throw precondition_error("lacunary_sum: need q >= 1 and m >= 0");
    double acc = 0.0;
    for (int s = 1; q * s + m <= c.S_max; ++s) acc += c.at(q * s + m) * std::pow(r, q * s + m);
    return acc;
}

double refined_block(const SliceCoefficients& c, int N, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw precondition_error("refined_block: need 0 <= r < 1");
    if (N < 1) throw precondition_error("refined_block: need N >= 1");
    const int k = (N - 1) / 2;

    double head = majorant_sum(c, N, r);

    double mid = 0.0;
    if (k >= 1) {
        double sq = 0.0;
        for (int s = 1; s <= k && s <= c.S_max; ++s) sq += c.at(s) * c.at(s);
        mid = sq * std::pow(r, N) / (1.0 - r);
    }

    double squares = 0.0;
    for (int s = k + 1; s <= c.S_max; ++s) {
        double term = c.at(s) * std::pow(r, s);
        squares += term * term;
    }
    double multiplier = 1.0 / (1.0 + c.at(0)) + r / (1.0 - r);

    return head + mid + multiplier * squares;
}

double refined_bound_rhs(double c0, int N, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw precondition_error("refined_bound_rhs: need 0 <= r < 1");
    return (1.0 - c0 * c0) * std::pow(r, N) / (1.0 - r);
}

double schwarz_energy(const SliceCoefficients& c, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw precondition_error("schwarz_energy: need 0 <= r < 1");
    double acc = 0.0;
    for (int s = 1; s <= c.S_max; ++s) {
        double term = c.at(s) * std::pow(r, s);
        acc += static_cast<double>(s) * term * term;
    }
    return acc;
}

double weight_poly(const PolynomialWeights& W, double x) {
    if (x < 0.0) throw precondition_error("weight_poly: need x >= 0");
    double acc = 0.0;
    for (std::size_t i = W.d.size(); i-- > 0;) acc = (acc + W.d[i]) * x;
    return acc;
}

namespace {

double cs_objective(int s, double tau) {
    double one_minus = 1.0 - tau * tau;
    return tau * (1.0 + tau) * (1.0 + tau) * std::pow(one_minus, 2 * s - 2);
}

// Dense scan followed by golden-section refinement around the best cell.
std::pair<double, double> cs_maximize(int s) {
    if (s < 2) throw precondition_error("cs_constant: need s >= 2");
    constexpr int grid = 10000;
    int best_i = 0;
    double best = -1.0;
    std::vector<double> values(grid + 1);
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= grid; ++i)
        values[static_cast<std::size_t>(i)] = cs_objective(s, static_cast<double>(i) / grid);
    for (int i = 0; i <= grid; ++i) {
        if (values[static_cast<std::size_t>(i)] > best) {
            best = values[static_cast<std::size_t>(i)];
            best_i = i;
        }
    }

    double lo = std::max(0.0, static_cast<double>(best_i - 1) / grid);
    double hi = std::min(1.0, static_cast<double>(best_i + 1) / grid);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = cs_objective(s, x1);
    double f2 = cs_objective(s, x2);
    while (hi - lo > 1e-12) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = cs_objective(s, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = cs_objective(s, x1);
        }
    }
    double tstar = 0.5 * (lo + hi);
    return {cs_objective(s, tstar), tstar};
}

} // namespace

double cs_constant(int s) { return cs_maximize(s).first; }

double cs_maximizer(int s) { return cs_maximize(s).second; }

double mp_constant(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw precondition_error("mp_constant: need p in (0,1]");
    return p * (2.0 + p) / (4.0 * p + 4.0);
}

std::pair<bool, double> check_weight_condition(const PolynomialWeights& W) {
    if (!(W.p > 0.0 && W.p <= 1.0))
        throw precondition_error("check_weight_condition: need p in (0,1]");
    if (W.d.empty()) throw precondition_error("check_weight_condition: need N >= 1 weights");
    for (double di : W.d)
        if (di < 0.0) throw precondition_error("check_weight_condition: weights must be nonnegative");

    double Mp = mp_constant(W.p);
    double Mp2 = Mp * Mp;
    double lhs = 0.0;
    double Mpow = Mp2;
    for (std::size_t i = 1; i <= W.d.size(); ++i) {
        double gamma = i == 1 ? 4.0 : cs_constant(static_cast<int>(i));
        lhs += 2.0 * (2.0 * static_cast<double>(i) - 1.0) * gamma * W.d[i - 1] * Mpow;
        Mpow *= Mp2;
    }
    // Boundary slack absorbs decimal truncation of extremal weights such as
    // d_1 = 8/9 entered as 0.8888888889.
    return {lhs <= W.p + 1e-9, lhs};
}

const char* theorem_name(Theorem id) {
    switch (id) {
        case Theorem::T41: return "t41";
        case Theorem::T12: return "t12";
        case Theorem::T21: return "t21";
        case Theorem::T14: return "t14";
    }
    return "?";
}

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw precondition_error(msg);
}

void validate_params(Theorem id, const ThmParams& params,
                     std::span<const SchwarzMapSpec> schwarz) {
    switch (id) {
        case Theorem::T41: {
            const auto& P = std::get<T41Params>(params);
            require(P.p > 0.0 && P.p <= 2.0, "thm_lhs: need p in (0,2]");
            require(P.mu >= 0.0 && P.nu >= 0.0 && P.mu + P.nu > 0.0,
                    "thm_lhs: need mu, nu >= 0 with mu + nu > 0");
            require(P.q >= 1 && P.m >= 0, "thm_lhs: need q >= 1 and m >= 0");
            require(P.m1_inf || P.m1 >= 1, "thm_lhs: need m1 >= 1");
            require(P.m2 >= 1, "thm_lhs: need m2 >= 1");
            std::size_t needed = P.nu > 0.0 ? 2 : (P.m1_inf ? 0 : 1);
            require(schwarz.size() >= needed, "thm_lhs: composite functional needs Schwarz maps v1, v2");
            break;
        }
        case Theorem::T12: {
            const auto& P = std::get<T12Params>(params);
            require(P.p > 0.0 && P.p <= 2.0, "thm_lhs: need p in (0,2]");
            require(P.m1 >= 1, "thm_lhs: need m1 >= 1");
            require(!schwarz.empty(), "thm_lhs: needs Schwarz map v1");
            break;
        }
        case Theorem::T21: {
            const auto& P = std::get<T21Params>(params);
            auto [holds, lhs] = check_weight_condition(P.W);
            if (!holds) {
                std::ostringstream os;
                os << "thm_lhs: weight condition violated: 8 d1 Mp^2 + sum 2(2i-1) c_i d_i Mp^(2i) = "
                   << lhs << " > p = " << P.W.p;
                throw weight_condition_error(os.str(), lhs, P.W.p);
            }
            break;
        }
        case Theorem::T14: {
            const auto& P = std::get<T14Params>(params);
            require(P.p > 0.0 && P.p <= 2.0, "thm_lhs: need p in (0,2]");
            require(P.m1 >= 1 && P.N >= 1, "thm_lhs: need m1 >= 1 and N >= 1");
            require(!schwarz.empty(), "thm_lhs: needs Schwarz map v1");
            break;
        }
    }
}

double sup_norm(cspan v) { return lt_norm(v, t_infinity); }

// ||f(v(z))||_infty for a Schwarz mapping v.
double composition_sup(const MapDescriptor& map, const SchwarzMapSpec& v, cspan z) {
    return sup_norm(map_eval(map, schwarz_eval(v, z)));
}

double difference_sup(const MapDescriptor& map, const SchwarzMapSpec& v, cspan z) {
    cvec at = map_eval(map, schwarz_eval(v, z));
    cvec origin(static_cast<std::size_t>(map.n), complexd{0.0, 0.0});
    cvec at0 = map_eval(map, origin);
    double best = 0.0;
    for (std::size_t j = 0; j < at.size(); ++j) best = std::max(best, std::abs(at[j] - at0[j]));
    return best;
}

double map_sup_at_origin(const MapDescriptor& map) {
    cvec origin(static_cast<std::size_t>(map.n), complexd{0.0, 0.0});
    return sup_norm(map_eval(map, origin));
}

// The N^1 block: majorant from s=1 plus the weighted square series; its
// certified tail rides along.
struct RefinedPieces {
    double head = 0.0;
    double mid = 0.0;
    double squares = 0.0;
    double tail = 0.0;
};

RefinedPieces refined_pieces(const SliceCoefficients& c, int N, double r) {
    RefinedPieces out;
    const int k = (N - 1) / 2;
    out.head = majorant_sum(c, N, r);
    if (k >= 1) {
        double sq = 0.0;
        for (int s = 1; s <= k && s <= c.S_max; ++s) sq += c.at(s) * c.at(s);
        out.mid = sq * std::pow(r, N) / (1.0 - r);
    }
    double squares = 0.0;
    for (int s = k + 1; s <= c.S_max; ++s) {
        double term = c.at(s) * std::pow(r, s);
        squares += term * term;
    }
    double multiplier = 1.0 / (1.0 + c.at(0)) + r / (1.0 - r);
    out.squares = multiplier * squares;
    out.tail = geometric_tail_bound(c, r) + multiplier * squared_tail_bound(c, r);
    return out;
}

bool mobius_along_own_axis(const MapDescriptor& map, cspan direction) {
    const auto* mk = std::get_if<MobiusCoord>(&map.kind);
    if (!mk) return false;
    for (int j = 0; j < map.n; ++j) {
        complexd v = direction[static_cast<std::size_t>(j)];
        if (j == mk->coord - 1) {
            if (std::abs(v - complexd{1.0, 0.0}) > 0.0) return false;
        } else if (std::abs(v) > 0.0) {
            return false;
        }
    }
    return true;
}

} // namespace

FunctionalReport thm_lhs_on_slice(Theorem id, const MapDescriptor& map,
                                  std::span<const SchwarzMapSpec> schwarz,
                                  const ThmParams& params, cspan z,
                                  const SliceCoefficients& slice) {
    validate_params(id, params, schwarz);
    double r = lt_norm(z, map.t);
    require(r > 0.0 && r < 1.0, "thm_lhs: need 0 < ||z||_t < 1");

    FunctionalReport rep;
    rep.r = r;

    switch (id) {
        case Theorem::T41: {
            const auto& P = std::get<T41Params>(params);
            double comp = P.m1_inf ? map_sup_at_origin(map) : composition_sup(map, schwarz[0], z);
            rep.add_term("f_v1_pow_p", std::pow(comp, P.p));
            rep.add_term("lacunary", P.mu * lacunary_sum(slice, P.q, P.m, r));
            double diff = P.nu > 0.0 ? difference_sup(map, schwarz[1], z) : 0.0;
            rep.add_term("difference", P.nu * diff);
            rep.tail = P.mu * geometric_tail_bound(slice, r);
            break;
        }
        case Theorem::T12: {
            const auto& P = std::get<T12Params>(params);
            rep.add_term("f0_pow_p", std::pow(map_sup_at_origin(map), P.p));
            RefinedPieces pieces = refined_pieces(slice, 1, r);
            rep.add_term("majorant", pieces.head);
            rep.add_term("square_block", pieces.squares);
            rep.add_term("difference", difference_sup(map, schwarz[0], z));
            rep.tail = pieces.tail;
            break;
        }
        case Theorem::T21: {
            const auto& P = std::get<T21Params>(params);
            rep.add_term("f0_pow_p", std::pow(map_sup_at_origin(map), P.W.p));
            RefinedPieces pieces = refined_pieces(slice, 1, r);
            rep.add_term("majorant", pieces.head);
            rep.add_term("square_block", pieces.squares);
            double Sz = schwarz_energy(slice, r);
            double Sz_tail = energy_tail_bound(slice, r);
            rep.add_term("weighted_energy", weight_poly(P.W, Sz));
            rep.tail = pieces.tail + (weight_poly(P.W, Sz + Sz_tail) - weight_poly(P.W, Sz));
            break;
        }
        case Theorem::T14: {
            const auto& P = std::get<T14Params>(params);
            rep.add_term("f_v1_pow_p", std::pow(composition_sup(map, schwarz[0], z), P.p));
            RefinedPieces pieces = refined_pieces(slice, P.N, r);
            rep.add_term("refined_majorant", pieces.head);
            rep.add_term("refined_mid", pieces.mid);
            rep.add_term("refined_squares", pieces.squares);
            rep.tail = pieces.tail;
            break;
        }
    }

    rep.finalize();
    return rep;
}

FunctionalReport thm_lhs(Theorem id, const MapDescriptor& map,
                         std::span<const SchwarzMapSpec> schwarz, const ThmParams& params,
                         cspan z, const EvalOptions& opts) {
    double r = lt_norm(z, map.t);
    require(r > 0.0 && r < 1.0, "thm_lhs: need 0 < ||z||_t < 1");
    cvec direction(z.begin(), z.end());
    for (auto& v : direction) v /= r;

    SliceCoefficients slice;
    if (opts.allow_closed_form_slice && mobius_along_own_axis(map, direction)) {
        slice = mobius_slice(std::get<MobiusCoord>(map.kind).b, opts.S_max);
    } else {
        slice = extract_slice(map, direction, opts.S_max, opts.extract);
    }
    return thm_lhs_on_slice(id, map, schwarz, params, z, slice);
}

} // namespace bohr
