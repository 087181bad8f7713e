#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vortex/errors.hpp"

namespace vortex {

namespace detail {
class IntegrandImpl;
}

/// A Young-function integrand f : [0,inf) -> [0,inf), convex, nondecreasing,
/// f(0) = 0. Instances are immutable; evaluation is pure and thread-safe.
///
/// Built-in families ("params" keys in brackets):
///   penergy   [p]            t^p / p,                      1 < p < 2
///   area      [delta]        (sqrt(1+d^2 t^2)-1)/d^2,      delta > 0
///   trunc     [kappa]        t^2/2 capped to linear growth beyond kappa
///   sublog    [eta, alpha]   t^2 / (2 (1+eta|log t|)^alpha)
///   osc       [p, beta]      t^p (1 + sin(p log t)/beta)/p  (fails (Dec)^n_2)
///   spike     [p]            p-energy plus integrated spikes (fails (Dec)^c_2)
///   dirichlet []             t^2/2 (divergent vortex energy)
class Integrand {
public:
    Integrand() = default;
    explicit Integrand(std::shared_ptr<const detail::IntegrandImpl> impl);

    double operator()(double t) const;

    /// One-sided derivative f'_+(t); at kinks this is the right limit,
    /// computed from the analytic piecewise formula.
    double right_derivative(double t) const;

    /// f(s)/s^2, evaluated in a form that stays finite for huge s.
    double normalized(double s) const;

    /// f(e^u) e^{-2u}; the kernel of every vortex-type integral. Stable for
    /// arbitrarily large u (no overflow in intermediate quantities).
    double phi_log(double u) const;

    /// Threshold beyond which the (Dec)_2 conditions are declared.
    double t0() const;

    /// f^inf(1) = lim f(t)/t when f is asymptotically linear.
    std::optional<double> recession_slope() const;

    /// Analytic value of the vortex energy V(f) = 2 int_0^1 f(1/r) r dr,
    /// populated for families with a known closed form.
    std::optional<double> closed_form_vortex_energy() const;

    /// Exponential decay rate of phi_log, when known; guides tail grading.
    std::optional<double> decay_hint() const;

    /// Points where f or f'_+ changes analytic branch (t-space). Quadrature
    /// splits panels there so narrow features are never skipped.
    std::vector<double> breakpoints() const;

    const std::string& family() const;
    const std::map<std::string, double>& params() const;

    bool valid() const { return impl_ != nullptr; }
    const detail::IntegrandImpl& impl() const { return *impl_; }
    std::shared_ptr<const detail::IntegrandImpl> impl_ptr() const { return impl_; }

private:
    std::shared_ptr<const detail::IntegrandImpl> impl_;
};

/// Construct a built-in family. Parameters are validated eagerly against the
/// family's validity window; no silent clamping.
Integrand make_family(const std::string& family,
                      const std::map<std::string, double>& params);

/// Tangent-line truncation: equals f on [0,kappa], affine with slope
/// f'_+(kappa) beyond. Always a Young function with T_k f <= f.
Integrand truncate(const Integrand& f, double kappa);

/// The controlled-growth envelope fbar(t) = int_0^t 2 f(s)/s ds. Satisfies
/// f <= fbar and fbar'(t)/t = 2 f(t)/t^2. Uses analytic forms where known,
/// adaptive quadrature otherwise.
Integrand regularize(const Integrand& f);

/// 2048 log-spaced points on [max(t0, 1e-6), 1e6]; the default certification
/// grid for the structural checks below.
std::vector<double> default_check_grid(double t0 = 0.0);

struct WitnessReport {
    bool holds = true;
    /// First violating consecutive pair (t_i, t_{i+1}) when !holds.
    std::optional<std::pair<double, double>> witness;
};

/// Checks t -> f(t)/t^2 nonincreasing across consecutive grid points
/// (tolerance relative, default 1e-10).
WitnessReport check_dec2_natural(const Integrand& f, std::span<const double> grid,
                                 double tol = 1e-10);

/// Checks concavity of g(t) = f(sqrt(t)) via divided-difference slopes on the
/// squared grid (equivalent to f'_+(t)/t nonincreasing).
WitnessReport check_dec2_controlled(const Integrand& f, std::span<const double> grid,
                                    double tol = 1e-10);

struct YoungReport {
    bool zero_at_origin = true;
    bool nondecreasing = true;
    bool midpoint_convex = true;
    bool derivative_nondecreasing = true;
    std::optional<double> first_violation; // t of first failed check
    bool ok() const {
        return zero_at_origin && nondecreasing && midpoint_convex &&
               derivative_nondecreasing;
    }
};

/// Grid certification of the Young-function axioms (relative tol 1e-12).
YoungReport check_young(const Integrand& f, std::span<const double> grid,
                        double rel_tol = 1e-12);

/// Smallest C with f(t) <= C (1 + t^2) on the grid (the constant is fitted,
/// not canonical).
double quadratic_bound_constant(const Integrand& f, std::span<const double> grid);

/// Right derivative blended C^1 over [k-eps, k+eps] around each declared
/// breakpoint k; used by descent solvers on kinked integrands. The energy
/// itself always uses the exact f.
double smoothed_right_derivative(const Integrand& f, double t, double eps);

} // namespace vortex
