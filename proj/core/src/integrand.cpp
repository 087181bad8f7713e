#include "vortex/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vortex/geometry.hpp"
#include "vortex/quadrature.hpp"

namespace vortex {
namespace detail {

class IntegrandImpl {
public:
    virtual ~IntegrandImpl() = default;
    virtual double value(double t) const = 0;
    virtual double right_deriv(double t) const = 0;
    virtual double normalized(double s) const { return value(s) / (s * s); }
    /// f(e^u) e^{-2u}; override whenever value(e^u) could overflow.
    virtual double normalized_log(double u) const {
        return normalized(std::exp(std::min(u, 690.0)));
    }

    std::string family;
    std::map<std::string, double> params;
    double t0 = 0.0;
    std::optional<double> recession;
    std::optional<double> closed_vortex;
    std::optional<double> decay;
    std::vector<double> breaks;
};

namespace {

double get_param(const std::map<std::string, double>& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw ParamOutOfRange("missing parameter '" + key + "'");
    return it->second;
}

double get_param_or(const std::map<std::string, double>& p, const std::string& key,
                    double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

// ---------------------------------------------------------------------------
// family (a): t^p / p

class PEnergy final : public IntegrandImpl {
public:
    explicit PEnergy(double p) : p_(p) {
        family = "penergy";
        params = {{"p", p}};
        t0 = 0.0;
        closed_vortex = 2.0 / ((2.0 - p) * p);
        decay = 2.0 - p;
    }
    double value(double t) const override { return std::pow(t, p_) / p_; }
    double right_deriv(double t) const override {
        return t == 0.0 ? 0.0 : std::pow(t, p_ - 1.0);
    }
    double normalized(double s) const override { return std::pow(s, p_ - 2.0) / p_; }
    double normalized_log(double u) const override {
        return std::exp((p_ - 2.0) * u) / p_;
    }

private:
    double p_;
};

// ---------------------------------------------------------------------------
// family (b): (sqrt(1 + d^2 t^2) - 1) / d^2   (rescaled area)

class AreaIntegrand final : public IntegrandImpl {
public:
    explicit AreaIntegrand(double delta) : d_(delta) {
        family = "area";
        params = {{"delta", delta}};
        t0 = 0.0;
        recession = 1.0 / delta;
        closed_vortex = value(1.0) + std::asinh(1.0 / delta);
        decay = 1.0;
    }
    double value(double t) const override {
        const double x = d_ * t;
        // (sqrt(1+x^2)-1)/d^2 without cancellation for small x
        return x * x / (d_ * d_ * (1.0 + std::sqrt(1.0 + x * x)));
    }
    double right_deriv(double t) const override {
        return t / std::sqrt(1.0 + d_ * d_ * t * t);
    }
    double normalized(double s) const override {
        const double x = d_ * s;
        return 1.0 / (1.0 + std::sqrt(1.0 + x * x));
    }
    double normalized_log(double u) const override {
        if (u > 300.0) return std::exp(-u) / d_;
        return normalized(std::exp(u));
    }

private:
    double d_;
};

// ---------------------------------------------------------------------------
// family (c): truncated Dirichlet

class TruncatedDirichlet final : public IntegrandImpl {
public:
    explicit TruncatedDirichlet(double kappa) : k_(kappa) {
        family = "trunc";
        params = {{"kappa", kappa}};
        t0 = 0.0;
        recession = kappa;
        closed_vortex = kappa >= 1.0 ? std::log(kappa) + 1.5
                                     : 2.0 * kappa - 0.5 * kappa * kappa;
        decay = 1.0;
        breaks = {kappa};
    }
    double value(double t) const override {
        return t < k_ ? 0.5 * t * t : k_ * (t - 0.5 * k_);
    }
    double right_deriv(double t) const override { return t < k_ ? t : k_; }
    double normalized(double s) const override {
        return s < k_ ? 0.5 : k_ / s - 0.5 * k_ * k_ / (s * s);
    }
    double normalized_log(double u) const override {
        if (u < std::log(k_)) return 0.5;
        const double e = std::exp(-u);
        return k_ * e - 0.5 * k_ * k_ * e * e;
    }

private:
    double k_;
};

// ---------------------------------------------------------------------------
// family (d): t^2 / (2 (1 + eta |log t|)^alpha)

class SubLog final : public IntegrandImpl {
public:
    SubLog(double eta, double alpha) : eta_(eta), a_(alpha) {
        family = "sublog";
        params = {{"eta", eta}, {"alpha", alpha}};
        // f'_+(t)/t increases on (0,1) and f has a concave corner at t=1, so
        // the (Dec)_2 conditions are declared from t0 = 1 on.
        t0 = 1.0;
        closed_vortex = 1.0 / ((alpha - 1.0) * eta);
        breaks = {1.0};
    }
    double value(double t) const override {
        if (t == 0.0) return 0.0;
        return 0.5 * t * t / std::pow(1.0 + eta_ * std::abs(std::log(t)), a_);
    }
    double right_deriv(double t) const override {
        if (t == 0.0) return 0.0;
        const double L = std::abs(std::log(t));
        const double X = 1.0 + eta_ * L;
        const double sgn = t >= 1.0 ? 1.0 : -1.0; // d|log t|/dt sign (right limit)
        return t * std::pow(X, -a_) * (1.0 - sgn * 0.5 * a_ * eta_ / X);
    }
    double normalized(double s) const override {
        return 0.5 / std::pow(1.0 + eta_ * std::abs(std::log(s)), a_);
    }
    double normalized_log(double u) const override {
        return 0.5 / std::pow(1.0 + eta_ * std::abs(u), a_);
    }

private:
    double eta_, a_;
};

// ---------------------------------------------------------------------------
// oscillating counterexample: t^p (1 + sin(p log t)/beta) / p
// Satisfies (vInt) but violates (Dec)^n_2 near t_k = exp(((2k+1)pi - asin(1/beta))/p).

class Oscillating final : public IntegrandImpl {
public:
    Oscillating(double p, double beta) : p_(p), b_(beta) {
        family = "osc";
        params = {{"p", p}, {"beta", beta}};
        t0 = 0.0;
        const double a = 2.0 - p;
        closed_vortex = (2.0 / p) * (1.0 / a + p / (b_ * (a * a + p * p)));
        decay = a;
    }
    double value(double t) const override {
        if (t == 0.0) return 0.0;
        return std::pow(t, p_) * (1.0 + std::sin(p_ * std::log(t)) / b_) / p_;
    }
    double right_deriv(double t) const override {
        if (t == 0.0) return 0.0;
        const double th = p_ * std::log(t);
        return std::pow(t, p_ - 1.0) *
               (1.0 + std::sqrt(2.0) * std::sin(th + 0.25 * kPi) / b_);
    }
    double normalized(double s) const override {
        if (s == 0.0) return 0.0;
        return std::pow(s, p_ - 2.0) * (1.0 + std::sin(p_ * std::log(s)) / b_) / p_;
    }
    double normalized_log(double u) const override {
        return std::exp((p_ - 2.0) * u) * (1.0 + std::sin(p_ * u) / b_) / p_;
    }

private:
    double p_, b_;
};

// ---------------------------------------------------------------------------
// spike counterexample: f(t) = t^p/p + sum_k a_k H_k(t),
// H_k(t) = int_0^t h((s-k)/r_k) s ds, a_k = 2(2-p)/k^2, r_k = k^{1-p}.
// Satisfies (Dec)^n_2 and (vInt) but f'_+(t)/t increases just past each integer
// k >= 3, violating (Dec)^c_2.

class SpikePerturbed final : public IntegrandImpl {
public:
    explicit SpikePerturbed(double p) : p_(p) {
        family = "spike";
        params = {{"p", p}};
        t0 = 0.0;
        decay = 2.0 - p;
        prefix_.resize(kExact + 1, 0.0);
        for (long k = 3; k <= kExact; ++k)
            prefix_[k] = prefix_[k - 1] + full_area(static_cast<double>(k));
        breaks.reserve(3 * (kBreakCap - 2));
        for (long k = 3; k <= kBreakCap; ++k) {
            const double rk = r(static_cast<double>(k));
            breaks.push_back(static_cast<double>(k));
            breaks.push_back(k + 0.5 * rk);
            breaks.push_back(k + rk);
        }
    }

    double value(double t) const override {
        return std::pow(t, p_) / p_ + spike_sum(t);
    }
    double right_deriv(double t) const override {
        if (t == 0.0) return 0.0;
        return t * (std::pow(t, p_ - 2.0) + spike_height(t));
    }
    double normalized(double s) const override {
        if (s == 0.0) return 0.0;
        return std::pow(s, p_ - 2.0) / p_ + spike_sum(s) / (s * s);
    }
    double normalized_log(double u) const override {
        const double base = std::exp((p_ - 2.0) * u) / p_;
        if (u > 650.0) return base + spike_total() * std::exp(-2.0 * u);
        const double s = std::exp(u);
        return base + spike_sum(s) * std::exp(-2.0 * u);
    }

private:
    static constexpr long kExact = 1 << 16;
    static constexpr long kBreakCap = 2048;

    double a(double k) const { return 2.0 * (2.0 - p_) / (k * k); }
    double r(double k) const { return std::pow(k, 1.0 - p_); }
    double full_area(double k) const {
        const double rk = r(k);
        return a(k) * (0.25 * k * rk + 0.125 * rk * rk);
    }

    // sum_{j<=k} of full spike contributions; exact up to kExact, then a
    // midpoint-rule tail on a_j A_j = (2-p)(j^{-p}/2 + j^{-2p}/4).
    double prefix_sum(double k) const {
        if (k < 3.0) return 0.0;
        if (k <= static_cast<double>(kExact))
            return prefix_[static_cast<long>(k)];
        return prefix_[kExact] + tail_between(static_cast<double>(kExact), k);
    }
    double tail_between(double from, double to) const {
        const double c = 2.0 - p_;
        auto anti = [&](double x) {
            return c * (std::pow(x, 1.0 - p_) / (2.0 * (1.0 - p_)) +
                        std::pow(x, 1.0 - 2.0 * p_) / (4.0 * (1.0 - 2.0 * p_)));
        };
        return anti(to + 0.5) - anti(from + 0.5);
    }
    double spike_total() const {
        // full series: exact part + tail integral to infinity
        const double c = 2.0 - p_;
        const double K = static_cast<double>(kExact) + 0.5;
        return prefix_[kExact] + c * (std::pow(K, 1.0 - p_) / (2.0 * (p_ - 1.0)) +
                                      std::pow(K, 1.0 - 2.0 * p_) / (4.0 * (2.0 * p_ - 1.0)));
    }

    // partial integral H_k(t) of the spike at k (analytic piecewise cubic)
    double partial(double k, double t) const {
        const double rk = r(k);
        if (t <= k) return 0.0;
        if (t >= k + rk) return 0.25 * k * rk + 0.125 * rk * rk;
        const double m = k + 0.5 * rk;
        auto rising = [&](double x) {
            // int_k^x (s-k)/rk * s ds
            return ((x * x * x - k * k * k) / 3.0 - 0.5 * k * (x * x - k * k)) / rk;
        };
        if (t <= m) return rising(t);
        // falling branch: h = (1 + k/rk) - s/rk
        const double c1 = 1.0 + k / rk;
        auto falling = [&](double x) {
            return 0.5 * c1 * (x * x - m * m) - (x * x * x - m * m * m) / (3.0 * rk);
        };
        return rising(m) + falling(t);
    }

    double spike_sum(double t) const {
        if (t <= 3.0) return 0.0;
        const double kcur = std::floor(t);
        double s = prefix_sum(kcur - 1.0); // spikes fully below floor(t)
        if (kcur >= 3.0) {
            const double rk = r(kcur);
            if (t >= kcur + rk)
                s += full_area(kcur);
            else
                s += a(kcur) * partial(kcur, t);
        }
        return s;
    }

    double spike_height(double t) const {
        const double k = std::floor(t);
        if (k < 3.0) return 0.0;
        const double rk = r(k);
        const double y = (t - k) / rk;
        if (y < 0.0 || y >= 1.0) return 0.0;
        const double h = y < 0.5 ? y : 1.0 - y;
        return a(k) * h;
    }

    double p_;
    std::vector<double> prefix_;
};

// ---------------------------------------------------------------------------
// plain Dirichlet t^2/2 (divergent vortex energy; the limit object)

class Dirichlet final : public IntegrandImpl {
public:
    Dirichlet() {
        family = "dirichlet";
        t0 = 0.0;
    }
    double value(double t) const override { return 0.5 * t * t; }
    double right_deriv(double t) const override { return t; }
    double normalized(double) const override { return 0.5; }
    double normalized_log(double) const override { return 0.5; }
};

// ---------------------------------------------------------------------------
// tangent-line truncation of an arbitrary base integrand

class Truncation final : public IntegrandImpl {
public:
    Truncation(std::shared_ptr<const IntegrandImpl> base, double kappa)
        : base_(std::move(base)), k_(kappa) {
        fk_ = base_->value(kappa);
        dk_ = base_->right_deriv(kappa);
        family = "truncate";
        params = {{"kappa", kappa}};
        t0 = base_->t0;
        recession = dk_;
        decay = 1.0;
        for (double b : base_->breaks)
            if (b < kappa) breaks.push_back(b);
        breaks.push_back(kappa);
    }
    double value(double t) const override {
        return t <= k_ ? base_->value(t) : fk_ + dk_ * (t - k_);
    }
    double right_deriv(double t) const override {
        return t < k_ ? base_->right_deriv(t) : dk_;
    }
    double normalized(double s) const override {
        if (s <= k_) return base_->normalized(s);
        return dk_ / s - (dk_ * k_ - fk_) / (s * s);
    }
    double normalized_log(double u) const override {
        if (u <= std::log(k_)) return base_->normalized_log(u);
        const double e = std::exp(-u);
        return dk_ * e - (dk_ * k_ - fk_) * e * e;
    }
    std::shared_ptr<const IntegrandImpl> base_;

private:
    double k_, fk_, dk_;
};

// ---------------------------------------------------------------------------
// controlled-growth envelope fbar(t) = int_0^t 2 f(s)/s ds

class Regularized final : public IntegrandImpl {
public:
    explicit Regularized(std::shared_ptr<const IntegrandImpl> base)
        : base_(std::move(base)) {
        family = "regularize";
        t0 = base_->t0;
        if (base_->recession) recession = 2.0 * *base_->recession;
        decay = base_->decay;
        breaks = base_->breaks;
        c1_ = integral_over(1e-12, 1.0); // int_0^1 2 f/s ds; f(s)/s -> f'(0)=0
        head_ = c1_ + integral_over(1.0, std::exp(2.0)); // fbar(e^2)
    }

    double value(double t) const override {
        if (t == 0.0) return 0.0;
        if (t <= 1.0) return integral_over(1e-12 * t, t);
        return c1_ + integral_over(1.0, t);
    }
    double right_deriv(double t) const override {
        return t == 0.0 ? 2.0 * base_->right_deriv(0.0) : 2.0 * base_->value(t) / t;
    }
    double normalized_log(double u) const override {
        if (u <= 2.0) return normalized(std::exp(u));
        // fbar(e^u) e^{-2u} = fbar(e^2) e^{-2u} + 2 int_2^u phi(v) e^{-2(u-v)} dv
        std::vector<double> splits;
        for (double b : base_->breaks) {
            const double lb = std::log(b);
            if (lb > 2.0 && lb < u) splits.push_back(lb);
        }
        QuadOptions opt;
        opt.abs_tol = 1e-13;
        auto integ = integrate_adaptive(
            [&](double v) {
                return base_->normalized_log(v) * std::exp(-2.0 * (u - v));
            },
            2.0, u, opt, splits);
        if (!integ.converged)
            throw QuadratureFailure("regularized integrand: envelope tail integral");
        return head_ * std::exp(-2.0 * u) + 2.0 * integ.value;
    }

    std::shared_ptr<const IntegrandImpl> base_;

private:
    double integral_over(double lo, double hi) const {
        if (!(hi > lo)) return 0.0;
        std::vector<double> splits;
        for (double b : base_->breaks)
            if (b > lo && b < hi) splits.push_back(b);
        QuadOptions opt;
        opt.abs_tol = 1e-12 * std::max(1.0, base_->value(hi)) + 1e-14;
        auto res = integrate_adaptive(
            [&](double s) { return s <= 0.0 ? 0.0 : 2.0 * base_->value(s) / s; }, lo,
            hi, opt, splits);
        if (!res.converged)
            throw QuadratureFailure(
                "regularized integrand: defining integral did not converge");
        return res.value;
    }

    double c1_ = 0.0;
    double head_ = 0.0;
};

// analytic special case: regularizing t^p/p gives 2 t^p / p^2
class RegularizedPEnergy final : public IntegrandImpl {
public:
    explicit RegularizedPEnergy(double p) : p_(p) {
        family = "regularize";
        t0 = 0.0;
        closed_vortex = 4.0 / ((2.0 - p) * p * p);
        decay = 2.0 - p;
    }
    double value(double t) const override { return 2.0 * std::pow(t, p_) / (p_ * p_); }
    double right_deriv(double t) const override {
        return t == 0.0 ? 0.0 : 2.0 * std::pow(t, p_ - 1.0) / p_;
    }
    double normalized(double s) const override {
        return 2.0 * std::pow(s, p_ - 2.0) / (p_ * p_);
    }
    double normalized_log(double u) const override {
        return 2.0 * std::exp((p_ - 2.0) * u) / (p_ * p_);
    }

private:
    double p_;
};

} // namespace
} // namespace detail

// ===========================================================================

Integrand::Integrand(std::shared_ptr<const detail::IntegrandImpl> impl)
    : impl_(std::move(impl)) {}

double Integrand::operator()(double t) const { return impl_->value(t); }
double Integrand::right_derivative(double t) const { return impl_->right_deriv(t); }
double Integrand::normalized(double s) const { return impl_->normalized(s); }
double Integrand::phi_log(double u) const { return impl_->normalized_log(u); }
double Integrand::t0() const { return impl_->t0; }
std::optional<double> Integrand::recession_slope() const { return impl_->recession; }
std::optional<double> Integrand::closed_form_vortex_energy() const {
    return impl_->closed_vortex;
}
std::optional<double> Integrand::decay_hint() const { return impl_->decay; }
std::vector<double> Integrand::breakpoints() const { return impl_->breaks; }
const std::string& Integrand::family() const { return impl_->family; }
const std::map<std::string, double>& Integrand::params() const {
    return impl_->params;
}

Integrand make_family(const std::string& family,
                      const std::map<std::string, double>& params) {
    using namespace detail;
    if (family == "penergy") {
        const double p = get_param(params, "p");
        if (!(p > 1.0 && p < 2.0))
            throw ParamOutOfRange("penergy: requires 1 < p < 2");
        return Integrand(std::make_shared<PEnergy>(p));
    }
    if (family == "area") {
        const double d = get_param(params, "delta");
        if (!(d > 0.0)) throw ParamOutOfRange("area: requires delta > 0");
        return Integrand(std::make_shared<AreaIntegrand>(d));
    }
    if (family == "trunc") {
        const double k = get_param(params, "kappa");
        if (!(k > 0.0)) throw ParamOutOfRange("trunc: requires kappa > 0");
        return Integrand(std::make_shared<TruncatedDirichlet>(k));
    }
    if (family == "sublog") {
        const double eta = get_param(params, "eta");
        const double alpha = get_param_or(params, "alpha", 2.0);
        if (!(alpha > 1.0 && alpha < 8.0))
            throw ParamOutOfRange("sublog: requires 1 < alpha < 8");
        if (!(eta > 0.0 && eta <= 2.0 / (alpha + 1.0)))
            throw ParamOutOfRange("sublog: requires 0 < eta <= 2/(alpha+1)");
        return Integrand(std::make_shared<SubLog>(eta, alpha));
    }
    if (family == "osc") {
        const double p = get_param(params, "p");
        const double beta = get_param_or(params, "beta", 5.0);
        if (!(p > 1.0 && p < 2.0)) throw ParamOutOfRange("osc: requires 1 < p < 2");
        if (!(beta >= 5.0)) throw ParamOutOfRange("osc: requires beta >= 5");
        const double amp = std::sqrt(2.0 * ((p - 1.0) * (p - 1.0) + p * p));
        if (amp > beta * (p - 1.0))
            throw ParamOutOfRange("osc: (p, beta) outside the convexity window");
        return Integrand(std::make_shared<Oscillating>(p, beta));
    }
    if (family == "spike") {
        const double p = get_param(params, "p");
        if (!(p >= 1.71 && p < 2.0))
            throw ParamOutOfRange("spike: requires 1.71 <= p < 2");
        return Integrand(std::make_shared<SpikePerturbed>(p));
    }
    if (family == "dirichlet") {
        return Integrand(std::make_shared<Dirichlet>());
    }
    throw UnknownFamily("unknown integrand family '" + family + "'");
}

Integrand truncate(const Integrand& f, double kappa) {
    if (!(kappa > 0.0)) throw ParamOutOfRange("truncate: requires kappa > 0");
    return Integrand(std::make_shared<detail::Truncation>(f.impl_ptr(), kappa));
}

Integrand regularize(const Integrand& f) {
    using namespace detail;
    if (f.family() == "penergy")
        return Integrand(std::make_shared<RegularizedPEnergy>(f.params().at("p")));
    if (f.family() == "dirichlet")
        return Integrand(std::make_shared<Dirichlet>());
    return Integrand(std::make_shared<Regularized>(f.impl_ptr()));
}

std::vector<double> default_check_grid(double t0) {
    const double lo = std::max(t0, 1e-6);
    const double hi = 1e6;
    const int n = 2048;
    std::vector<double> g(n);
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < n; ++i)
        g[i] = std::exp(la + (lb - la) * i / (n - 1.0));
    g.front() = lo;
    g.back() = hi;
    return g;
}

WitnessReport check_dec2_natural(const Integrand& f, std::span<const double> grid,
                                 double tol) {
    WitnessReport rep;
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        const double q0 = f.normalized(grid[i]);
        const double q1 = f.normalized(grid[i + 1]);
        if (q1 - q0 > tol * std::max(1.0, std::abs(q0))) {
            rep.holds = false;
            rep.witness = {grid[i], grid[i + 1]};
            return rep;
        }
    }
    return rep;
}

WitnessReport check_dec2_controlled(const Integrand& f, std::span<const double> grid,
                                    double tol) {
    WitnessReport rep;
    double prev_slope = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        const double x0 = grid[i] * grid[i];
        const double x1 = grid[i + 1] * grid[i + 1];
        if (!(x1 > x0)) continue;
        const double slope = (f(grid[i + 1]) - f(grid[i])) / (x1 - x0);
        if (slope - prev_slope > tol * std::max(1.0, std::abs(prev_slope))) {
            rep.holds = false;
            rep.witness = {grid[i], grid[i + 1]};
            return rep;
        }
        prev_slope = slope;
    }
    return rep;
}

YoungReport check_young(const Integrand& f, std::span<const double> grid,
                        double rel_tol) {
    YoungReport rep;
    if (f(0.0) != 0.0) {
        rep.zero_at_origin = false;
        rep.first_violation = 0.0;
    }
    double prev_v = 0.0, prev_t = 0.0, prev_d = f.right_derivative(0.0);
    bool first = true;
    for (double t : grid) {
        const double v = f(t);
        const double d = f.right_derivative(t);
        const double scale = std::max(1.0, std::abs(v));
        if (!first) {
            if (v < prev_v - rel_tol * scale && rep.nondecreasing) {
                rep.nondecreasing = false;
                if (!rep.first_violation) rep.first_violation = t;
            }
            if (d < prev_d - rel_tol * std::max(1.0, std::abs(prev_d)) &&
                rep.derivative_nondecreasing) {
                rep.derivative_nondecreasing = false;
                if (!rep.first_violation) rep.first_violation = t;
            }
            const double mid = 0.5 * (prev_t + t);
            if (f(mid) > 0.5 * (prev_v + v) + rel_tol * scale &&
                rep.midpoint_convex) {
                rep.midpoint_convex = false;
                if (!rep.first_violation) rep.first_violation = mid;
            }
        }
        prev_v = v;
        prev_t = t;
        prev_d = d;
        first = false;
    }
    return rep;
}

double quadratic_bound_constant(const Integrand& f, std::span<const double> grid) {
    double c = 0.0;
    for (double t : grid) c = std::max(c, f(t) / (1.0 + t * t));
    return c;
}

double smoothed_right_derivative(const Integrand& f, double t, double eps) {
    if (eps > 0.0) {
        for (double k : f.breakpoints()) {
            if (std::abs(t - k) < eps) {
                const double lo = std::max(k - eps, 0.0);
                const double d0 = f.right_derivative(lo);
                const double d1 = f.right_derivative(k + eps);
                const double w = (t - lo) / (k + eps - lo);
                return d0 + (d1 - d0) * w;
            }
        }
    }
    return f.right_derivative(t);
}

} // namespace vortex
