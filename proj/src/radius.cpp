#include "bohr/radius.hpp"

#include <cmath>
#include <vector>

#include "bohr/errors.hpp"

namespace bohr {

namespace {

constexpr double scan_hi = 1.0 - 1e-9; // keep denominators away from the pole at 1
constexpr double scan_lo = 1e-9;
constexpr double geometric_cut = 0.1; // geometric nodes below, uniform above

void require(bool ok, const char* msg) {
    if (!ok) throw precondition_error(msg);
}

struct Validate {
    void operator()(const XiQuery& q) const {
        require(q.p > 0.0 && q.p <= 2.0, "xi: need p in (0,2]");
        require(q.mu >= 0.0 && q.nu >= 0.0 && q.mu + q.nu > 0.0,
                "xi: need mu, nu >= 0 with mu + nu > 0");
        require(q.q >= 1, "xi: need q >= 1");
        require(q.m >= 0, "xi: need m >= 0");
        require(q.m1_inf || q.m1 >= 1, "xi: need m1 >= 1 or the infinity flag");
        require(q.m2 >= 1, "xi: need m2 >= 1");
    }
    void operator()(const R2Query& q) const {
        require(q.p > 0.0 && q.p <= 2.0, "r2: need p in (0,2]");
        require(q.m1 >= 1, "r2: need m1 >= 1");
    }
    void operator()(const R3Query& q) const {
        require(q.p > 0.0 && q.p <= 1.0, "r3: need p in (0,1]");
    }
    void operator()(const RBRQuery& q) const {
        require(q.p > 0.0 && q.p <= 2.0, "rbr: need p in (0,2]");
        require(q.m1 >= 1, "rbr: need m1 >= 1");
        require(q.N >= 1, "rbr: need N >= 1");
    }
    void operator()(const RNQuery& q) const { require(q.N >= 1, "rn: need N >= 1"); }
    void operator()(const RNPrimeQuery& q) const { require(q.N >= 1, "rnprime: need N >= 1"); }
    void operator()(const RPkmQuery& q) const {
        require(q.p > 0.0 && q.p <= 2.0, "rpkm: need p in (0,2]");
        require(q.k >= 1 && q.m >= 1, "rpkm: need k, m >= 1");
    }
    void operator()(const PsiEQuery& q) const {
        require(q.p > 0.0 && q.p <= 2.0, "psie: need p in (0,2]");
        require(q.q >= 2 && q.m >= 2 && q.m < q.q, "psie: need q >= 2 and 2 <= m < q");
        require(q.lambda > 0.0, "psie: need lambda > 0");
    }
};

struct NameOf {
    std::string operator()(const XiQuery&) const { return "xi"; }
    std::string operator()(const R2Query&) const { return "r2"; }
    std::string operator()(const R3Query&) const { return "r3"; }
    std::string operator()(const RBRQuery&) const { return "rbr"; }
    std::string operator()(const RNQuery&) const { return "rn"; }
    std::string operator()(const RNPrimeQuery&) const { return "rnprime"; }
    std::string operator()(const RPkmQuery&) const { return "rpkm"; }
    std::string operator()(const PsiEQuery&) const { return "psie"; }
};

struct EquationOf {
    std::function<double(double)> operator()(const XiQuery& q) const {
        return [q](double r) {
            double rq = std::pow(r, q.q);
            double rm2 = std::pow(r, q.m2);
            double head = 2.0 * q.mu * std::pow(r, q.q + q.m) / (1.0 - rq) +
                          2.0 * q.nu * rm2 / (1.0 - rm2);
            double factor = 1.0;
            if (!q.m1_inf) {
                double rm1 = std::pow(r, q.m1);
                factor = (1.0 - rm1) / (1.0 + rm1);
            }
            return head - q.p * factor;
        };
    }
    std::function<double(double)> operator()(const R2Query& q) const {
        return [q](double r) {
            double rm1 = std::pow(r, q.m1);
            return r / (1.0 - r) + rm1 / (1.0 - rm1) - q.p / 2.0;
        };
    }
    std::function<double(double)> operator()(const R3Query& q) const {
        double root = q.p / (2.0 + q.p);
        return [root](double r) { return r - root; };
    }
    std::function<double(double)> operator()(const RBRQuery& q) const {
        return [q](double r) {
            double rm1 = std::pow(r, q.m1);
            return q.p * (1.0 - rm1) / (1.0 + rm1) - 2.0 * std::pow(r, q.N) / (1.0 - r);
        };
    }
    std::function<double(double)> operator()(const RNQuery& q) const {
        return [q](double r) {
            return 2.0 * (1.0 + r) * std::pow(r, q.N) - (1.0 - r) * (1.0 - r);
        };
    }
    std::function<double(double)> operator()(const RNPrimeQuery& q) const {
        return [q](double r) {
            return (1.0 + r) * std::pow(r, q.N) - (1.0 - r) * (1.0 - r);
        };
    }
    std::function<double(double)> operator()(const RPkmQuery& q) const {
        return [q](double r) {
            double rk = std::pow(r, q.k);
            double rm = std::pow(r, q.m);
            return rk / (1.0 - rk) + rm / (1.0 - rm) - q.p / 2.0;
        };
    }
    std::function<double(double)> operator()(const PsiEQuery& q) const {
        return [q](double r) {
            double rq = std::pow(r, q.q);
            double rm = std::pow(r, q.m);
            return 2.0 * q.lambda * std::pow(r, q.q + q.m) / (1.0 - rq) -
                   q.p * (1.0 - rm) / (1.0 + rm);
        };
    }
};

std::vector<double> scan_grid(int points) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points) + 1);
    int geo = points / 4;
    int uni = points - geo;
    double ratio = std::pow(geometric_cut / scan_lo, 1.0 / geo);
    double x = scan_lo;
    for (int i = 0; i < geo; ++i, x *= ratio) grid.push_back(x);
    for (int i = 0; i <= uni; ++i)
        grid.push_back(geometric_cut + (scan_hi - geometric_cut) * static_cast<double>(i) / uni);
    return grid;
}

RootRecord bisect(const std::function<double(double)>& fn, double lo, double hi, double flo,
                  double tol) {
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double fm = fn(mid);
        if (fm == 0.0) {
            lo = mid;
            hi = mid;
            break;
        }
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    RootRecord rec;
    rec.root = 0.5 * (lo + hi);
    rec.bracket_lo = lo;
    rec.bracket_hi = hi;
    rec.residual = fn(rec.root);
    rec.tol = tol;
    return rec;
}

} // namespace

void validate(const RadiusQuery& query) { std::visit(Validate{}, query); }

std::string family_name(const RadiusQuery& query) { return std::visit(NameOf{}, query); }

std::function<double(double)> radius_equation(const RadiusQuery& query) {
    validate(query);
    return std::visit(EquationOf{}, query);
}

RootRecord scan_minimal_root(const std::function<double(double)>& fn, double tol,
                             int grid_points) {
    if (tol < 1e-14) throw precondition_error("scan_minimal_root: tol must be >= 1e-14");
    if (grid_points < 16) throw precondition_error("scan_minimal_root: grid too coarse");

    for (int pass = 0; pass < 2; ++pass) {
        int points = pass == 0 ? grid_points : grid_points * 10;
        std::vector<double> grid = scan_grid(points);
        std::vector<double> values(grid.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size()); ++i)
            values[static_cast<std::size_t>(i)] = fn(grid[static_cast<std::size_t>(i)]);

        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            double fa = values[i];
            double fb = values[i + 1];
            if (fa == 0.0) {
                RootRecord rec;
                rec.root = grid[i];
                rec.bracket_lo = grid[i];
                rec.bracket_hi = grid[i];
                rec.residual = 0.0;
                rec.tol = tol;
                return rec;
            }
            if ((fa < 0.0) != (fb < 0.0) || fb == 0.0) {
                RootRecord rec = bisect(fn, grid[i], grid[i + 1], fa, tol);
                // Uniqueness audit: look for a later crossing.
                for (std::size_t j = i + 1; j + 1 < grid.size(); ++j) {
                    if ((values[j] < 0.0) != (values[j + 1] < 0.0)) {
                        rec.second_sign_change = true;
                        break;
                    }
                }
                return rec;
            }
        }
        if (pass == 1) {
            double mn = values[0];
            double mx = values[0];
            for (double v : values) {
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            throw no_root_error("scan_minimal_root: no sign change on (0,1)", mn, mx);
        }
    }
    throw no_root_error("scan_minimal_root: unreachable", 0.0, 0.0);
}

RootRecord minimal_root(const RadiusQuery& query, double tol, int grid_points) {
    validate(query);
    if (tol < 1e-14) throw precondition_error("minimal_root: tol must be >= 1e-14");

    if (const auto* r3 = std::get_if<R3Query>(&query)) {
        RootRecord rec;
        rec.root = r3->p / (2.0 + r3->p);
        rec.bracket_lo = rec.root;
        rec.bracket_hi = rec.root;
        rec.residual = 0.0;
        rec.tol = tol;
        rec.closed_form = true;
        return rec;
    }
    return scan_minimal_root(std::visit(EquationOf{}, query), tol, grid_points);
}

std::optional<double> closed_form_radius(const RadiusQuery& query) {
    validate(query);
    if (const auto* r3 = std::get_if<R3Query>(&query)) return r3->p / (2.0 + r3->p);
    if (const auto* rbr = std::get_if<RBRQuery>(&query)) {
        // p(1-r)/(1+r) = 2r/(1-r)  =>  r^2 + 4r - 1 = 0 at p = 1.
        if (rbr->p == 1.0 && rbr->m1 == 1 && rbr->N == 1) return std::sqrt(5.0) - 2.0;
        return std::nullopt;
    }
    if (const auto* rnp = std::get_if<RNPrimeQuery>(&query)) {
        if (rnp->N == 1) return 1.0 / 3.0; // (1+r) r = (1-r)^2  =>  3r = 1
        return std::nullopt;
    }
    if (const auto* r2 = std::get_if<R2Query>(&query)) {
        if (r2->m1 == 1) return r2->p / (4.0 + r2->p); // 2r/(1-r) = p/2
        return std::nullopt;
    }
    if (const auto* rpkm = std::get_if<RPkmQuery>(&query)) {
        if (rpkm->k == rpkm->m)
            return std::pow(rpkm->p / (4.0 + rpkm->p), 1.0 / rpkm->k); // 2r^k/(1-r^k) = p/2
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace bohr
