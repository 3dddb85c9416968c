#pragma once

#include <stdexcept>
#include <string>

namespace bohr {

// A caller violated a documented precondition (bad parameter range, direction
// off the unit sphere, radius outside (0,1), ...).
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// A map descriptor claimed to be a self-map into the closed polydisc produced
// a value outside it by more than the sampling tolerance.
class invalid_map_error : public std::runtime_error {
public:
    explicit invalid_map_error(const std::string& what) : std::runtime_error(what) {}
};

// The residual of a radius equation has no sign change on the scan grid.
class no_root_error : public std::runtime_error {
public:
    no_root_error(const std::string& what, double residual_min, double residual_max)
        : std::runtime_error(what), residual_min(residual_min), residual_max(residual_max) {}
    double residual_min;
    double residual_max;
};

// The weight polynomial coefficients fail the admissibility condition
// 8*d1*Mp^2 + sum_{i>=2} 2(2i-1)*c_i*d_i*Mp^(2i) <= p.
class weight_condition_error : public std::runtime_error {
public:
    weight_condition_error(const std::string& what, double lhs, double p)
        : std::runtime_error(what), lhs(lhs), p(p) {}
    double lhs;
    double p;
};

// No extremal-family parameter in the grid produced a value above 1.
class sharpness_probe_error : public std::runtime_error {
public:
    sharpness_probe_error(const std::string& what, double max_lhs)
        : std::runtime_error(what), max_lhs(max_lhs) {}
    double max_lhs;
};

} // namespace bohr
