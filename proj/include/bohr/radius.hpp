#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>

namespace bohr {

// Tagged parameter sets for the sharp-radius equations. Construction is
// unchecked; validate() enforces the stated ranges and the solver calls it.

// Xi(r) = 2 mu r^(q+m)/(1-r^q) + 2 nu r^m2/(1-r^m2) - p (1-r^m1)/(1+r^m1).
// m1_inf replaces the last factor by its pointwise limit 1.
struct XiQuery {
    double p = 1.0;
    double mu = 1.0;
    double nu = 1.0;
    int q = 1;
    int m = 0;
    int m1 = 1;
    bool m1_inf = false;
    int m2 = 1;
};

// r/(1-r) + r^m1/(1-r^m1) - p/2.
struct R2Query {
    double p = 1.0;
    int m1 = 1;
};

// Closed form p/(2+p).
struct R3Query {
    double p = 1.0;
};

// p (1-r^m1)/(1+r^m1) - 2 r^N/(1-r).
struct RBRQuery {
    double p = 1.0;
    int m1 = 1;
    int N = 1;
};

// 2 (1+r) r^N - (1-r)^2.
struct RNQuery {
    int N = 1;
};

// (1+r) r^N - (1-r)^2.
struct RNPrimeQuery {
    int N = 1;
};

// r^k/(1-r^k) + r^m/(1-r^m) - p/2.
struct RPkmQuery {
    double p = 1.0;
    int k = 1;
    int m = 1;
};

// 2 lambda r^(q+m)/(1-r^q) - p (1-r^m)/(1+r^m), with 2 <= m < q.
struct PsiEQuery {
    double p = 1.0;
    int q = 2;
    int m = 2;
    double lambda = 1.0;
};

using RadiusQuery = std::variant<XiQuery, R2Query, R3Query, RBRQuery, RNQuery, RNPrimeQuery,
                                 RPkmQuery, PsiEQuery>;

void validate(const RadiusQuery& query); // throws precondition_error
std::string family_name(const RadiusQuery& query);

// The residual function exactly as the defining equation reads, on (0,1).
std::function<double(double)> radius_equation(const RadiusQuery& query);

struct RootRecord {
    double root = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double residual = 0.0;
    double tol = 0.0;
    bool second_sign_change = false; // another crossing exists in (root, 1)
    bool closed_form = false;
};

// First sign change of fn on a geometric-then-uniform grid over
// (0, 1 - 1e-9], bisected to |bracket| <= tol. The grid is refined tenfold
// once before reporting no_root_error.
RootRecord scan_minimal_root(const std::function<double(double)>& fn, double tol,
                             int grid_points = 10000);

// Minimal root in (0,1) of the query's equation. Closed-form families skip
// the search.
RootRecord minimal_root(const RadiusQuery& query, double tol = 1e-12, int grid_points = 10000);

// Exact value for the cataloged degenerate cases, absent otherwise.
std::optional<double> closed_form_radius(const RadiusQuery& query);

} // namespace bohr
