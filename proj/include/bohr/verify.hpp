#pragma once

#include <cstdint>
#include <optional>

#include "bohr/functionals.hpp"
#include "bohr/radius.hpp"

namespace bohr {

enum class PlanKind { T41, T12, T21, T14, Lemma21, LemmaA, LemmaB, Classical1D };

const char* plan_name(PlanKind kind);

struct DirectionSpec {
    int n = 2;
    double t = 2.0;
    int count = 32;
    std::uint64_t seed = 42;
};

struct RGridSpec {
    int count = 100;
    double max_fraction = 0.999; // of the computed radius
};

struct TolerancePolicy {
    double slack = 1e-9;        // pass iff margin >= -(tail + slack)
    double sharp_excess = 1e-6; // witness iff lhs - tail > 1 + sharp_excess
};

struct VerificationPlan {
    PlanKind kind = PlanKind::T12;
    ThmParams params{T12Params{}};
    std::vector<double> b_grid; // Mobius family; empty selects the default grid
    std::vector<MapDescriptor> extra_family;
    DirectionSpec directions;
    RGridSpec r_grid;
    TolerancePolicy tol;
    EvalOptions eval;
    int lemma_N = 1; // order for Lemma21 plans
};

struct VerificationRow {
    std::string map_label;
    std::string check;   // which inequality the row tests
    int direction = -1;  // index into the sampled directions, -1 when N/A
    double b = 0.0;      // Mobius parameter, or first grid parameter for lemma rows
    double r = 0.0;
    int phase = 0;       // Schwarz eta variant: +1 / -1, 0 when unused
    FunctionalReport report;
    bool pass = true;
};

struct VerificationOutcome {
    PlanKind kind;
    double radius = 0.0; // NaN for plans without one
    bool pass = true;
    double worst_margin = 0.0;
    std::optional<VerificationRow> counterexample;
    std::vector<VerificationRow> rows;
};

// Checks the plan's inequality on every (map, direction, r) tuple strictly
// below the computed radius. Any failing row is returned as the
// counterexample and fails the run.
VerificationOutcome verify_below_radius(const VerificationPlan& plan);

struct SharpnessWitness {
    PlanKind kind;
    double radius = 0.0;
    double delta = 0.0;
    double b = 0.0;
    double r = 0.0;
    double lhs = 0.0;
    double tail = 0.0;
    double margin = 0.0; // lhs - tail - 1
};

// Evaluates the extremal Mobius family at r = radius + delta over the b grid
// (ascending) and returns the first configuration whose value certifiably
// exceeds 1. Throws sharpness_probe_error when none does.
SharpnessWitness probe_sharpness(PlanKind kind, const ThmParams& params, double delta,
                                 std::span<const double> b_grid,
                                 const TolerancePolicy& tol = {}, const EvalOptions& opts = {});

std::vector<double> default_verify_b_grid();
std::vector<double> default_sharpness_b_grid();

// Refined coefficient bound on a grid: refined_block(c, N, r) against
// refined_bound_rhs(c_0, N, r), one report per r.
std::vector<FunctionalReport> check_refined_lemma(const SliceCoefficients& c, int N,
                                                  std::span<const double> r_grid);

struct AreaIntegralCheck {
    double series = 0.0;     // pi * schwarz_energy
    double quadrature = 0.0; // polar-grid integral of |f'|^2 over the disk of radius r
    double rel_err = 0.0;
};

// Cross-checks the energy series against a 2-D quadrature for the scalar
// Mobius map with parameter b. quad_points is the total grid budget.
AreaIntegralCheck area_integral_check(double b, double r, int quad_points = 65536);

// The quadrature kernel behind area_integral_check: Simpson in the radius,
// trapezoid in the angle, parallel over radial rings.
double disk_energy_quadrature(double b, double r, int n_rad, int n_ang);

} // namespace bohr
