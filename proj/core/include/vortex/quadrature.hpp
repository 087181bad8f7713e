#pragma once

#include <functional>
#include <span>
#include <vector>

namespace vortex {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    long evaluations = 0;
    bool converged = false;
    /// True when the tail walk saw panel contributions that failed to decay;
    /// the integral is then presumed divergent rather than merely hard.
    bool diverging_tail = false;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    int max_depth = 60;        // bisection levels per initial segment
    int max_intervals = 200000;
    int max_tail_panels = 64;  // width-doubling panels for [a, inf)
    double first_tail_width = 1.0;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration over the finite interval
/// [a, b]. `forced_splits` lists abscissae (sorted or not) where the domain
/// is pre-split so that narrow analytic branches are never missed.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const QuadOptions& opt,
                              std::span<const double> forced_splits = {});

/// Integration over [a, inf) for integrands that decay at +inf: panels of
/// doubling width walk the tail until contributions decay below tolerance,
/// then the retained range is integrated adaptively. A geometric tail bound
/// is folded into the error estimate. When panel contributions fail to decay
/// within the panel budget, the result reports `diverging_tail`.
QuadResult integrate_half_line(const std::function<double(double)>& f, double a,
                               const QuadOptions& opt,
                               std::span<const double> forced_splits = {});

} // namespace vortex
