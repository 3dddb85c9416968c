#include "bohr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bohr/errors.hpp"

namespace bohr {

const char* plan_name(PlanKind kind) {
    switch (kind) {
        case PlanKind::T41: return "t41";
        case PlanKind::T12: return "t12";
        case PlanKind::T21: return "t21";
        case PlanKind::T14: return "t14";
        case PlanKind::Lemma21: return "lemma21";
        case PlanKind::LemmaA: return "lemmaa";
        case PlanKind::LemmaB: return "lemmab";
        case PlanKind::Classical1D: return "classical1d";
    }
    return "?";
}

std::vector<double> default_verify_b_grid() {
    return {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
}

std::vector<double> default_sharpness_b_grid() { return {0.9, 0.99, 0.999, 0.9999}; }

namespace {

bool theorem_kind(PlanKind kind) {
    return kind == PlanKind::T41 || kind == PlanKind::T12 || kind == PlanKind::T21 ||
           kind == PlanKind::T14;
}

Theorem as_theorem(PlanKind kind) {
    switch (kind) {
        case PlanKind::T41: return Theorem::T41;
        case PlanKind::T12: return Theorem::T12;
        case PlanKind::T21: return Theorem::T21;
        case PlanKind::T14: return Theorem::T14;
        default: throw precondition_error("plan kind has no theorem functional");
    }
}

RadiusQuery radius_query_for(PlanKind kind, const ThmParams& params) {
    switch (kind) {
        case PlanKind::T41: {
            const auto& P = std::get<T41Params>(params);
            return XiQuery{P.p, P.mu, P.nu, P.q, P.m, P.m1, P.m1_inf, P.m2};
        }
        case PlanKind::T12: {
            const auto& P = std::get<T12Params>(params);
            return R2Query{P.p, P.m1};
        }
        case PlanKind::T21: {
            const auto& P = std::get<T21Params>(params);
            return R3Query{P.W.p};
        }
        case PlanKind::T14: {
            const auto& P = std::get<T14Params>(params);
            return RBRQuery{P.p, P.m1, P.N};
        }
        default: throw precondition_error("plan kind has no radius equation");
    }
}

// Schwarz map orders a theorem needs, in v1, v2 slot order.
std::vector<int> schwarz_orders(PlanKind kind, const ThmParams& params) {
    switch (kind) {
        case PlanKind::T41: {
            const auto& P = std::get<T41Params>(params);
            return {P.m1_inf ? 1 : P.m1, P.m2};
        }
        case PlanKind::T12: return {std::get<T12Params>(params).m1};
        case PlanKind::T21: return {};
        case PlanKind::T14: return {std::get<T14Params>(params).m1};
        default: return {};
    }
}

std::string mobius_label(double b) {
    std::ostringstream os;
    os << "mobius(b=" << b << ")";
    return os.str();
}

std::string map_label(const MapDescriptor& map) {
    struct L {
        std::string operator()(const MobiusCoord& k) const { return mobius_label(k.b); }
        std::string operator()(const Polynomial&) const { return "polynomial"; }
        std::string operator()(const Lacunary&) const { return "lacunary"; }
        std::string operator()(const Rotated&) const { return "rotated"; }
        std::string operator()(const Composed&) const { return "composed"; }
    };
    return std::visit(L{}, map.kind);
}

struct FamilyEntry {
    MapDescriptor map;
    std::string label;
    double b = 0.0; // Mobius parameter when applicable
};

std::vector<FamilyEntry> build_family(const VerificationPlan& plan) {
    std::vector<FamilyEntry> family;
    std::vector<double> bs = plan.b_grid.empty() ? default_verify_b_grid() : plan.b_grid;
    for (double b : bs)
        family.push_back({mobius_map(plan.directions.n, plan.directions.t, b), mobius_label(b), b});
    for (const auto& m : plan.extra_family) family.push_back({m, map_label(m), 0.0});
    return family;
}

// Work unit: one (map, direction) pair; the slice is shared across the r grid.
struct SweepJob {
    std::size_t family_index;
    int direction_index;
};

void finalize_outcome(VerificationOutcome& out, const TolerancePolicy& tol) {
    out.pass = true;
    out.worst_margin = std::numeric_limits<double>::infinity();
    for (auto& row : out.rows) {
        row.pass = row.report.margin >= -(row.report.tail + tol.slack);
        out.worst_margin = std::min(out.worst_margin, row.report.margin);
        if (!row.pass && !out.counterexample) out.counterexample = row;
        out.pass = out.pass && row.pass;
    }
    if (out.rows.empty()) out.worst_margin = 0.0;
}

VerificationOutcome verify_theorem(const VerificationPlan& plan) {
    VerificationOutcome out;
    out.kind = plan.kind;

    RadiusQuery query = radius_query_for(plan.kind, plan.params);
    out.radius = minimal_root(query).root;

    const auto dirs = sample_boundary(plan.directions.n, plan.directions.t,
                                      plan.directions.count, plan.directions.seed);
    const auto family = build_family(plan);
    const std::vector<int> orders = schwarz_orders(plan.kind, plan.params);
    const Theorem id = as_theorem(plan.kind);
    const bool has_difference_term =
        plan.kind == PlanKind::T12 ||
        (plan.kind == PlanKind::T41 && std::get<T41Params>(plan.params).nu > 0.0);

    std::vector<double> r_grid(static_cast<std::size_t>(plan.r_grid.count));
    for (int i = 0; i < plan.r_grid.count; ++i)
        r_grid[static_cast<std::size_t>(i)] =
            out.radius * plan.r_grid.max_fraction * static_cast<double>(i + 1) / plan.r_grid.count;

    std::vector<SweepJob> jobs;
    for (std::size_t f = 0; f < family.size(); ++f)
        for (int d = 0; d < static_cast<int>(dirs.size()); ++d)
            jobs.push_back({f, d});

    std::vector<std::vector<VerificationRow>> results(jobs.size());
    std::vector<std::string> failures(jobs.size());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t ji = 0; ji < static_cast<std::ptrdiff_t>(jobs.size()); ++ji) {
        const SweepJob& job = jobs[static_cast<std::size_t>(ji)];
        const FamilyEntry& entry = family[job.family_index];
        const cvec& z0 = dirs[static_cast<std::size_t>(job.direction_index)];
        try {
            SliceCoefficients slice;
            bool mobius_axis = false;
            if (const auto* mk = std::get_if<MobiusCoord>(&entry.map.kind)) {
                mobius_axis = std::abs(z0[static_cast<std::size_t>(mk->coord - 1)] -
                                       complexd{1.0, 0.0}) == 0.0;
                for (int j = 0; mobius_axis && j < entry.map.n; ++j)
                    if (j != mk->coord - 1 && std::abs(z0[static_cast<std::size_t>(j)]) != 0.0)
                        mobius_axis = false;
            }
            if (mobius_axis && plan.eval.allow_closed_form_slice)
                slice = mobius_slice(std::get<MobiusCoord>(entry.map.kind).b, plan.eval.S_max);
            else
                slice = extract_slice(entry.map, z0, plan.eval.S_max, plan.eval.extract);

            std::vector<int> phases = has_difference_term ? std::vector<int>{1, -1}
                                                          : std::vector<int>{1};
            auto& rows = results[static_cast<std::size_t>(ji)];
            for (double r : r_grid) {
                cvec z(z0.begin(), z0.end());
                for (auto& v : z) v *= r;
                for (int phase : phases) {
                    std::vector<SchwarzMapSpec> schwarz;
                    for (std::size_t si = 0; si < orders.size(); ++si) {
                        SchwarzMapSpec spec;
                        spec.k = orders[si];
                        spec.z0 = z0;
                        spec.t = plan.directions.t;
                        // The difference-bearing map carries the sign variant.
                        bool is_difference_slot =
                            (plan.kind == PlanKind::T41 && si == 1) ||
                            (plan.kind == PlanKind::T12 && si == 0);
                        spec.eta = (is_difference_slot && phase < 0) ? complexd{-1.0, 0.0}
                                                                     : complexd{1.0, 0.0};
                        schwarz.push_back(std::move(spec));
                    }
                    VerificationRow row;
                    row.map_label = entry.label;
                    row.check = theorem_name(id);
                    row.direction = job.direction_index;
                    row.b = entry.b;
                    row.r = r;
                    row.phase = orders.empty() ? 0 : phase;
                    row.report = thm_lhs_on_slice(id, entry.map, schwarz, plan.params, z, slice);
                    rows.push_back(std::move(row));
                }
            }
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(ji)] = e.what();
        }
    }

    for (const auto& f : failures)
        if (!f.empty()) throw invalid_map_error("verify_below_radius: " + f);
    for (auto& rows : results)
        for (auto& row : rows) out.rows.push_back(std::move(row));

    finalize_outcome(out, plan.tol);
    return out;
}

VerificationOutcome verify_lemma21(const VerificationPlan& plan) {
    VerificationOutcome out;
    out.kind = plan.kind;
    out.radius = std::numeric_limits<double>::quiet_NaN();

    const auto dirs = sample_boundary(plan.directions.n, plan.directions.t,
                                      plan.directions.count, plan.directions.seed);
    const auto family = build_family(plan);

    std::vector<double> r_grid(static_cast<std::size_t>(plan.r_grid.count));
    for (int i = 0; i < plan.r_grid.count; ++i)
        r_grid[static_cast<std::size_t>(i)] =
            0.95 * static_cast<double>(i + 1) / plan.r_grid.count;

    for (std::size_t f = 0; f < family.size(); ++f) {
        for (int d = 0; d < static_cast<int>(dirs.size()); ++d) {
            SliceCoefficients slice =
                extract_slice(family[f].map, dirs[static_cast<std::size_t>(d)], plan.eval.S_max,
                              plan.eval.extract);
            auto reports = check_refined_lemma(slice, plan.lemma_N, r_grid);
            for (auto& rep : reports) {
                VerificationRow row;
                row.map_label = family[f].label;
                row.check = "refined_block<=bound";
                row.direction = d;
                row.b = family[f].b;
                row.r = rep.r;
                row.report = std::move(rep);
                out.rows.push_back(std::move(row));
            }
        }
    }
    finalize_outcome(out, plan.tol);
    return out;
}

VerificationOutcome verify_lemma_a(const VerificationPlan& plan) {
    VerificationOutcome out;
    out.kind = plan.kind;
    out.radius = std::numeric_limits<double>::quiet_NaN();

    const auto dirs = sample_boundary(plan.directions.n, plan.directions.t,
                                      plan.directions.count, plan.directions.seed);
    const auto family = build_family(plan);

    for (std::size_t f = 0; f < family.size(); ++f) {
        cvec origin(static_cast<std::size_t>(family[f].map.n), complexd{0.0, 0.0});
        double f0 = lt_norm(map_eval(family[f].map, origin), t_infinity);
        for (int d = 0; d < static_cast<int>(dirs.size()); ++d) {
            for (int i = 1; i <= plan.r_grid.count; ++i) {
                double r = 0.95 * static_cast<double>(i) / plan.r_grid.count;
                cvec z(dirs[static_cast<std::size_t>(d)].begin(),
                       dirs[static_cast<std::size_t>(d)].end());
                for (auto& v : z) v *= r;
                double fz = lt_norm(map_eval(family[f].map, z), t_infinity);
                double bound = (f0 + r) / (1.0 + f0 * r);

                VerificationRow row;
                row.map_label = family[f].label;
                row.check = "schwarz_pick";
                row.direction = d;
                row.b = family[f].b;
                row.r = r;
                row.report.r = r;
                row.report.lhs = fz;
                row.report.terms = {{"f_sup", fz}, {"bound", bound}};
                row.report.margin = bound - fz;
                out.rows.push_back(std::move(row));
            }
        }
    }
    finalize_outcome(out, plan.tol);
    return out;
}

VerificationOutcome verify_lemma_b(const VerificationPlan& plan) {
    VerificationOutcome out;
    out.kind = plan.kind;
    out.radius = std::numeric_limits<double>::quiet_NaN();

    for (int pi = 1; pi <= 10; ++pi) {
        double p = static_cast<double>(pi) / 10.0;
        for (int i = 0; i < plan.r_grid.count; ++i) {
            double tau = static_cast<double>(i) / plan.r_grid.count; // [0, 1)
            double value = (1.0 - std::pow(tau, p)) / (1.0 - tau);
            VerificationRow row;
            row.map_label = "power_quotient";
            row.check = "(1-t^p)/(1-t)>=p";
            row.b = p;
            row.r = tau;
            row.report.r = tau;
            row.report.lhs = value;
            row.report.terms = {{"quotient", value}, {"p", p}};
            row.report.margin = value - p;
            out.rows.push_back(std::move(row));
        }
    }
    finalize_outcome(out, plan.tol);
    return out;
}

VerificationOutcome verify_classical_1d(const VerificationPlan& plan) {
    VerificationOutcome out;
    out.kind = plan.kind;
    out.radius = 1.0 / 3.0;

    DirectionSpec dspec = plan.directions;
    dspec.n = 1;
    const auto dirs = sample_boundary(dspec.n, dspec.t, dspec.count, dspec.seed);

    VerificationPlan family_plan = plan;
    family_plan.directions = dspec;
    const auto family = build_family(family_plan);

    std::vector<double> r_grid(static_cast<std::size_t>(plan.r_grid.count));
    for (int i = 0; i < plan.r_grid.count; ++i)
        r_grid[static_cast<std::size_t>(i)] =
            out.radius * plan.r_grid.max_fraction * static_cast<double>(i + 1) / plan.r_grid.count;

    for (std::size_t f = 0; f < family.size(); ++f) {
        cvec origin(1, complexd{0.0, 0.0});
        cvec f0 = map_eval(family[f].map, origin);
        for (int d = 0; d < static_cast<int>(dirs.size()); ++d) {
            const cvec& z0 = dirs[static_cast<std::size_t>(d)];
            SliceCoefficients slice;
            if (const auto* mk = std::get_if<MobiusCoord>(&family[f].map.kind);
                mk && std::abs(z0[0] - complexd{1.0, 0.0}) == 0.0)
                slice = mobius_slice(mk->b, plan.eval.S_max);
            else
                slice = extract_slice(family[f].map, z0, plan.eval.S_max, plan.eval.extract);

            for (double r : r_grid) {
                double tail = geometric_tail_bound(slice, r);
                double majorant = majorant_sum(slice, 0, r);
                {
                    VerificationRow row;
                    row.map_label = family[f].label;
                    row.check = "majorant<=1";
                    row.direction = d;
                    row.b = family[f].b;
                    row.r = r;
                    row.report.r = r;
                    row.report.tail = tail;
                    row.report.add_term("majorant", majorant);
                    row.report.finalize();
                    out.rows.push_back(std::move(row));
                }
                {
                    cvec z{z0[0] * r};
                    cvec fz = map_eval(family[f].map, z);
                    double diff = std::abs(fz[0] - f0[0]);
                    VerificationRow row;
                    row.map_label = family[f].label;
                    row.check = "majorant_plus_square<=1";
                    row.direction = d;
                    row.b = family[f].b;
                    row.r = r;
                    row.report.r = r;
                    row.report.tail = tail;
                    row.report.add_term("majorant", majorant);
                    row.report.add_term("square_difference", diff * diff);
                    row.report.finalize();
                    out.rows.push_back(std::move(row));
                }
            }
        }
    }
    finalize_outcome(out, plan.tol);
    return out;
}

} // namespace

VerificationOutcome verify_below_radius(const VerificationPlan& plan) {
    switch (plan.kind) {
        case PlanKind::Lemma21: return verify_lemma21(plan);
        case PlanKind::LemmaA: return verify_lemma_a(plan);
        case PlanKind::LemmaB: return verify_lemma_b(plan);
        case PlanKind::Classical1D: return verify_classical_1d(plan);
        default: return verify_theorem(plan);
    }
}

SharpnessWitness probe_sharpness(PlanKind kind, const ThmParams& params, double delta,
                                 std::span<const double> b_grid, const TolerancePolicy& tol,
                                 const EvalOptions& opts) {
    if (!theorem_kind(kind)) throw precondition_error("probe_sharpness: plan has no radius");
    if (delta < 0.0) throw precondition_error("probe_sharpness: need delta >= 0");

    RadiusQuery query = radius_query_for(kind, params);
    double radius = minimal_root(query).root;
    double r = radius + delta;
    if (r >= 1.0) throw precondition_error("probe_sharpness: radius + delta must stay below 1");

    const std::vector<int> orders = schwarz_orders(kind, params);
    const Theorem id = as_theorem(kind);

    double max_lhs = -std::numeric_limits<double>::infinity();
    for (double b : b_grid) {
        MapDescriptor map = mobius_map(1, 2.0, b);
        cvec z{complexd{r, 0.0}};
        std::vector<SchwarzMapSpec> schwarz;
        for (std::size_t si = 0; si < orders.size(); ++si) {
            SchwarzMapSpec spec;
            spec.k = orders[si];
            spec.z0 = cvec{complexd{1.0, 0.0}};
            spec.t = 2.0;
            // Flipping the sign of the Schwarz map feeding the difference
            // term lets one point z = r e_1 attain both suprema at once.
            bool is_difference_slot =
                (kind == PlanKind::T41 && si == 1) || (kind == PlanKind::T12 && si == 0);
            spec.eta = is_difference_slot ? complexd{-1.0, 0.0} : complexd{1.0, 0.0};
            schwarz.push_back(std::move(spec));
        }
        FunctionalReport rep = thm_lhs(id, map, schwarz, params, z, opts);
        max_lhs = std::max(max_lhs, rep.lhs);
        if (rep.lhs - rep.tail > 1.0 + tol.sharp_excess) {
            SharpnessWitness w;
            w.kind = kind;
            w.radius = radius;
            w.delta = delta;
            w.b = b;
            w.r = r;
            w.lhs = rep.lhs;
            w.tail = rep.tail;
            w.margin = rep.lhs - rep.tail - 1.0;
            return w;
        }
    }
    std::ostringstream os;
    os << "probe_sharpness: no witness found at r = " << r << "; max lhs attained = " << max_lhs
       << " (refine the b grid toward 1)";
    throw sharpness_probe_error(os.str(), max_lhs);
}

std::vector<FunctionalReport> check_refined_lemma(const SliceCoefficients& c, int N,
                                                  std::span<const double> r_grid) {
    std::vector<FunctionalReport> out;
    out.reserve(r_grid.size());
    for (double r : r_grid) {
        if (!(r > 0.0 && r < 1.0))
            throw precondition_error("check_refined_lemma: grid must lie in (0,1)");
        FunctionalReport rep;
        rep.r = r;
        double block = refined_block(c, N, r);
        double bound = refined_bound_rhs(c.at(0), N, r);
        double multiplier = 1.0 / (1.0 + c.at(0)) + r / (1.0 - r);
        rep.tail = geometric_tail_bound(c, r) + multiplier * squared_tail_bound(c, r);
        rep.terms = {{"refined_block", block}, {"bound", bound}};
        rep.lhs = block;
        rep.margin = bound - block - rep.tail;
        out.push_back(std::move(rep));
    }
    return out;
}

double disk_energy_quadrature(double b, double r, int n_rad, int n_ang) {
    if (n_rad % 2 != 0) ++n_rad; // Simpson needs an even panel count
    const double h = r / n_rad;
    const double one_minus_b2 = 1.0 - b * b;
    const double num = one_minus_b2 * one_minus_b2;

    std::vector<double> ring(static_cast<std::size_t>(n_rad) + 1, 0.0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= n_rad; ++i) {
        double rho = h * i;
        double acc = 0.0;
        for (int a = 0; a < n_ang; ++a) {
            double theta = 2.0 * M_PI * a / n_ang;
            complexd denom = 1.0 + b * std::polar(rho, theta);
            double d2 = std::norm(denom);
            acc += num / (d2 * d2);
        }
        ring[static_cast<std::size_t>(i)] = acc * (2.0 * M_PI / n_ang) * rho;
    }

    double total = ring[0] + ring[static_cast<std::size_t>(n_rad)];
    for (int i = 1; i < n_rad; ++i)
        total += ring[static_cast<std::size_t>(i)] * (i % 2 == 1 ? 4.0 : 2.0);
    return total * h / 3.0;
}

AreaIntegralCheck area_integral_check(double b, double r, int quad_points) {
    if (!(r > 0.0 && r < 1.0)) throw precondition_error("area_integral_check: need 0 < r < 1");
    if (!(b >= 0.0 && b < 1.0)) throw precondition_error("area_integral_check: need b in [0,1)");
    if (quad_points < 64 * 64)
        throw precondition_error("area_integral_check: need quad_points >= 64^2");

    AreaIntegralCheck out;
    out.series = M_PI * schwarz_energy(mobius_slice(b, 64), r);

    int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(quad_points))));
    out.quadrature = disk_energy_quadrature(b, r, side, side);
    out.rel_err = std::abs(out.series - out.quadrature) /
                  std::max(std::abs(out.quadrature), 1e-300);
    return out;
}

} // namespace bohr
