#pragma once

#include <map>
#include <string>
#include <vector>

#include "vortex/integrand.hpp"

namespace vortex {

/// An ordered sequence of parameter choices within one family, inducing a
/// sequence f_n converging pointwise to t^2/2.
struct FamilySchedule {
    std::string family;
    std::vector<std::map<std::string, double>> params;

    size_t size() const { return params.size(); }
    Integrand at(size_t i) const { return make_family(family, params.at(i)); }
};

/// Schedule from explicit values of the family's principal parameter
/// (p for penergy, delta for area, kappa for trunc, eta for sublog).
FamilySchedule schedule_from_values(const std::string& family,
                                    const std::vector<double>& values,
                                    double sublog_alpha = 2.0);

/// The documented default schedules:
///   penergy  p_n     = 2 - 2^-n          (n = 1..count)
///   area     delta_n = 2^-n
///   trunc    kappa_n = 2^n
///   sublog   eta_n   = 2^-n  (alpha = 2, capped to the validity window)
FamilySchedule default_schedule(const std::string& family, int count);

/// Principal parameter name for a family.
std::string principal_param(const std::string& family);

/// sup_{t in grid} |f_n(t) - t^2/2| on the documented test grid
/// (64 uniform points on [0, 4]).
std::vector<double> pointwise_limit_errors(const FamilySchedule& s);

} // namespace vortex
