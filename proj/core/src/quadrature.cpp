#include "vortex/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vortex {
namespace {

// G7/K15 pair on [-1,1] (positive abscissae; the rule is symmetric).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double kronrod = 0.0;
    double err = 0.0;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b,
                   long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    evals += 15;

    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    double resabs = kWgk[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        const double x = h * kXgk[i];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        kron += kWgk[i] * (f1 + f2);
        resabs += kWgk[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
    }
    kron *= h;
    gauss *= h;
    resabs *= std::abs(h);

    double err = std::abs(kron - gauss);
    // QUADPACK-style sharpening for smooth panels, floored at fp noise.
    if (err > 0.0 && resabs > 0.0) {
        const double scaled = std::pow(200.0 * err / resabs, 1.5);
        if (scaled < 1.0) err = resabs * scaled;
    }
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * resabs);
    return {kron, err};
}

struct Interval {
    double a, b, value, err;
    int depth;
    bool operator<(const Interval& o) const { return err < o.err; }
};

QuadResult adaptive_on_segments(const std::function<double(double)>& f,
                                std::vector<std::pair<double, double>> segments,
                                const QuadOptions& opt) {
    QuadResult res;
    std::vector<Interval> heap;
    heap.reserve(segments.size() + 64);
    double total = 0.0, total_err = 0.0;
    for (auto [a, b] : segments) {
        if (!(b > a)) continue;
        auto est = gk15(f, a, b, res.evaluations);
        heap.push_back({a, b, est.kronrod, est.err, 0});
        total += est.kronrod;
        total_err += est.err;
    }
    std::make_heap(heap.begin(), heap.end());

    while (total_err > opt.abs_tol && !heap.empty() &&
           static_cast<int>(heap.size()) < opt.max_intervals) {
        std::pop_heap(heap.begin(), heap.end());
        Interval worst = heap.back();
        if (worst.depth >= opt.max_depth) {
            // nothing left to refine
            std::push_heap(heap.begin(), heap.end());
            break;
        }
        heap.pop_back();
        total -= worst.value;
        total_err -= worst.err;
        const double m = 0.5 * (worst.a + worst.b);
        for (auto [a, b] : {std::pair{worst.a, m}, std::pair{m, worst.b}}) {
            auto est = gk15(f, a, b, res.evaluations);
            heap.push_back({a, b, est.kronrod, est.err, worst.depth + 1});
            std::push_heap(heap.begin(), heap.end());
            total += est.kronrod;
            total_err += est.err;
        }
    }

    res.value = total;
    res.abs_error = total_err;
    res.converged = total_err <= opt.abs_tol;
    return res;
}

std::vector<std::pair<double, double>> split_segments(
    double a, double b, std::span<const double> forced_splits) {
    std::vector<double> pts;
    pts.reserve(forced_splits.size() + 2);
    pts.push_back(a);
    for (double s : forced_splits)
        if (s > a && s < b) pts.push_back(s);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<std::pair<double, double>> segs;
    segs.reserve(pts.size() - 1);
    for (size_t i = 0; i + 1 < pts.size(); ++i) segs.push_back({pts[i], pts[i + 1]});
    return segs;
}

} // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const QuadOptions& opt,
                              std::span<const double> forced_splits) {
    if (!(b > a)) return {0.0, 0.0, 0, true, false};
    return adaptive_on_segments(f, split_segments(a, b, forced_splits), opt);
}

QuadResult integrate_half_line(const std::function<double(double)>& f, double a,
                               const QuadOptions& opt,
                               std::span<const double> forced_splits) {
    QuadResult res;

    // Walk width-doubling panels until contributions decay; the retained
    // range is then re-integrated adaptively with full error control.
    double lo = a;
    double w = std::max(opt.first_tail_width, 1e-6);
    double prev_mag = std::numeric_limits<double>::infinity();
    double cutoff = a;
    double tail_bound = 0.0;
    bool found_cutoff = false;
    const double cut_eps = std::max(opt.abs_tol / 50.0, 1e-300);

    for (int k = 0; k < opt.max_tail_panels; ++k) {
        const double hi = lo + w;
        auto est = gk15(f, lo, hi, res.evaluations);
        const double mag = std::abs(est.kronrod);
        if (mag <= cut_eps && mag <= prev_mag) {
            double ratio = prev_mag > 0.0 && std::isfinite(prev_mag)
                               ? std::min(mag / prev_mag, 0.9)
                               : 0.0;
            tail_bound = mag * ratio / (1.0 - ratio);
            if (tail_bound <= opt.abs_tol / 10.0) {
                cutoff = hi;
                found_cutoff = true;
                break;
            }
        }
        prev_mag = mag;
        lo = hi;
        w *= 2.0;
    }

    if (!found_cutoff) {
        res.converged = false;
        res.diverging_tail = true;
        res.value = std::numeric_limits<double>::quiet_NaN();
        res.abs_error = std::numeric_limits<double>::infinity();
        return res;
    }

    // Segment boundaries: the panel edges visited above plus forced splits.
    std::vector<double> splits(forced_splits.begin(), forced_splits.end());
    double edge = a + std::max(opt.first_tail_width, 1e-6);
    double width = std::max(opt.first_tail_width, 1e-6);
    while (edge < cutoff) {
        splits.push_back(edge);
        width *= 2.0;
        edge += width;
    }

    QuadOptions inner = opt;
    inner.abs_tol = 0.5 * opt.abs_tol;
    auto core = adaptive_on_segments(f, split_segments(a, cutoff, splits), inner);
    res.evaluations += core.evaluations;
    res.value = core.value;
    res.abs_error = core.abs_error + tail_bound;
    res.converged = res.abs_error <= opt.abs_tol;
    return res;
}

} // namespace vortex
