#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bohr/geometry.hpp"

namespace bohr {

// Schwarz mapping with a zero of order k at 0, built from the support
// functional at z0:  v(z) = eta * T_{z0}(z)^(k-1) * z.  eta is a unimodular
// scale (default 1); any |eta| <= 1 keeps v a Schwarz map of the same order.
struct SchwarzMapSpec {
    int k = 1;
    cvec z0;
    double t = 2.0;
    complexd eta{1.0, 0.0};
};

cvec schwarz_eval(const SchwarzMapSpec& spec, cspan z);

struct MapDescriptor;
using MapPtr = std::shared_ptr<const MapDescriptor>;

// f(z) = ((b + z_c)/(1 + b z_c), 0, ..., 0) with the active component moved
// to slot `coord` (1-based).
struct MobiusCoord {
    double b = 0.0;
    int coord = 1;
};

struct PolyTerm {
    std::vector<int> alpha; // multi-degree, one entry per domain variable
    cvec coef;              // one complex coefficient per target component
};

struct Polynomial {
    std::vector<PolyTerm> terms;
};

// Component `coord` carries a0 + sum_{s>=1} coefs[s-1] * z_coord^(q*s + m);
// all other components are zero.
struct Lacunary {
    int q = 1;
    int m = 0;
    int coord = 1;
    complexd a0{0.0, 0.0};
    cvec coefs;
};

// Domain rotation: f(z) = inner(diag(e^{i phase_j}) z).
struct Rotated {
    std::vector<double> phases;
    MapPtr inner;
};

// f(z) = outer(v(z)) for a Schwarz mapping v.
struct Composed {
    MapPtr outer;
    SchwarzMapSpec inner;
};

struct MapDescriptor {
    int n = 1;
    double t = 2.0;
    std::variant<MobiusCoord, Polynomial, Lacunary, Rotated, Composed> kind;
};

// Evaluates f at a point of the open unit ball of l_t^n. Throws
// precondition_error if ||z||_t >= 1 and invalid_map_error if the value
// leaves the closed polydisc by more than self_map_tolerance.
inline constexpr double self_map_tolerance = 1e-9;
cvec map_eval(const MapDescriptor& map, cspan z);

// max_j |f_j(z)| shorthand used by the functional assemblers.
double map_sup_at(const MapDescriptor& map, cspan z);

// Builders for the families exercised in tests and verification runs.
MapDescriptor mobius_map(int n, double t, double b, int coord = 1);
MapDescriptor identity_map(int n, double t);
MapDescriptor constant_map(double t, cvec value);
MapDescriptor lacunary_map(int n, double t, int q, int m, complexd a0, cvec coefs, int coord = 1);
MapDescriptor rotated_map(std::vector<double> phases, MapDescriptor inner);
MapDescriptor composed_map(MapDescriptor outer, SchwarzMapSpec inner);

// JSON wire format. Descriptors round-trip exactly: all doubles are emitted
// with full round-trip precision, complex numbers as [re, im] pairs, and
// t = infinity as the string "inf".
std::string to_json(const MapDescriptor& map);
MapDescriptor map_from_json(const std::string& text);
std::string to_json(const SchwarzMapSpec& spec);
SchwarzMapSpec schwarz_from_json(const std::string& text);

bool operator==(const MapDescriptor& a, const MapDescriptor& b);
bool operator==(const SchwarzMapSpec& a, const SchwarzMapSpec& b);

} // namespace bohr
