// Shared numerical kernels: grids, bracketed root finding, adaptive
// Gauss-Kronrod quadrature and shape-preserving (monotone cubic) interpolation.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "pseudonorm/errors.hpp"

namespace pseudonorm {

using real_fn = std::function<double(double)>;

// ---------------------------------------------------------------------------
// grids

inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw numeric_error("log_grid: need 0 < lo < hi and n >= 2");
    std::vector<double> g(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

inline std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (n < 1) throw numeric_error("linear_grid: n >= 1");
    if (n == 1) return {lo};
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

// ---------------------------------------------------------------------------
// finite differences (relative step keeps cancellation under control at large x)

inline double fd_step(double x, double h0 = 1e-6) { return std::max(h0, h0 * std::abs(x)); }

inline double central_derivative(const real_fn& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double central_second_derivative(const real_fn& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// ---------------------------------------------------------------------------
// root finding: geometric bracket expansion, bisection, Newton polish

struct bracket {
    double lo = 0.0;
    double hi = 0.0;
};

// Expand [start, ...) geometrically until g changes sign from negative to
// positive. g is expected to be eventually increasing past `start`; a sampled
// decrease of more than `slack` relative to the running maximum triggers
// not_monotone_error.
inline bracket expand_bracket(const real_fn& g, double start, double scale_hint = 1.0,
                              int max_steps = 200, double slack = 1e-9) {
    double lo = start;
    double glo = g(lo);
    if (glo == 0.0) return {lo, lo};
    if (glo > 0.0) {
        // Root lies below `start`; shrink towards zero instead.
        double hi = start, ghi = glo;
        double cand = std::max(start * 0.5, std::numeric_limits<double>::min());
        for (int k = 0; k < max_steps; ++k) {
            double gc = g(cand);
            if (gc <= 0.0) return {cand, hi};
            hi = cand;
            ghi = gc;
            cand *= 0.5;
            if (cand < 1e-300) break;
        }
        (void)ghi;
        throw no_bracket_error("expand_bracket: no sign change below start");
    }
    double step = std::max(scale_hint, std::abs(start) * 0.5 + scale_hint);
    double gmax = glo;
    for (int k = 0; k < max_steps; ++k) {
        double hi = lo + step;
        double ghi = g(hi);
        if (std::isnan(ghi)) throw numeric_error("expand_bracket: NaN sample");
        if (ghi >= 0.0) return {lo, hi};
        if (ghi < gmax - slack * (std::abs(gmax) + 1.0) && gmax > glo)
            throw not_monotone_error("expand_bracket: sampled decrease past rise");
        gmax = std::max(gmax, ghi);
        lo = hi;
        step *= 2.0;
        if (hi > 1e300) break;
    }
    throw no_bracket_error("expand_bracket: horizon exhausted without sign change");
}

// Bisection to width max(abs_width, few ulps) followed by Newton polish.
// dg may be null; then the bisection result is returned as-is.
inline double bisect_newton(const real_fn& g, const real_fn& dg, bracket br,
                            double abs_width = 1e-8) {
    double lo = br.lo, hi = br.hi;
    double glo = g(lo);
    if (glo == 0.0) return lo;
    double ghi = g(hi);
    if (ghi == 0.0) return hi;
    if (glo > 0.0 || ghi < 0.0)
        throw numeric_error("bisect_newton: invalid bracket");
    while (hi - lo > std::max(abs_width, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi))) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double gm = g(mid);
        if (gm == 0.0) return mid;
        (gm < 0.0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    if (dg) {
        for (int it = 0; it < 12; ++it) {
            double gx = g(x);
            if (gx == 0.0) break;
            double d = dg(x);
            if (!(d > 0.0) || !std::isfinite(d)) break;
            double step = gx / d;
            double xn = x - step;
            if (!(xn > lo) || !(xn < hi)) xn = (gx < 0.0) ? 0.5 * (x + hi) : 0.5 * (x + lo);
            if (std::abs(xn - x) <= std::numeric_limits<double>::epsilon() * std::abs(x)) {
                x = xn;
                break;
            }
            x = xn;
        }
    }
    return x;
}

// ---------------------------------------------------------------------------
// adaptive Gauss-Kronrod (G7,K15) quadrature

namespace detail {

// K15 abscissae on [0,1] side (symmetric) and weights; G7 weights on shared nodes.
inline constexpr std::array<double, 8> kGk15Nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr std::array<double, 8> kGk15Weights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> kG7Weights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct panel_eval {
    double k15;
    double g7;
};

inline panel_eval gk15(const real_fn& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double k15 = 0.0, g7 = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        const double dx = h * kGk15Nodes[i];
        const double fl = f(c - dx);
        const double fr = (i == 7) ? fl : f(c + dx);
        const double sum = (i == 7) ? fl : fl + fr;
        k15 += kGk15Weights[i] * sum;
        if (i % 2 == 1) g7 += kG7Weights[i / 2] * sum;
    }
    return {k15 * h, g7 * h};
}

inline void gk_adaptive(const real_fn& f, double a, double b, double rel_tol, double abs_tol,
                        int depth, double& acc, int& panels) {
    if (panels > 200000) throw quadrature_error("gk_adaptive: panel budget exhausted");
    auto pe = gk15(f, a, b);
    if (!std::isfinite(pe.k15)) throw quadrature_error("gk_adaptive: non-finite panel");
    const double err = std::abs(pe.k15 - pe.g7);
    // The 1e-280 floor stops futile splitting once values drop to the edge of
    // the double range (far tails of exponentially small integrands).
    const bool accept = err <= abs_tol + rel_tol * std::abs(pe.k15) || err < 1e-280;
    if (depth <= 0) {
        if (!accept) throw quadrature_error("gk_adaptive: depth exhausted before tolerance");
        acc += pe.k15;
        ++panels;
        return;
    }
    if (accept) {
        acc += pe.k15;
        ++panels;
        return;
    }
    const double m = 0.5 * (a + b);
    gk_adaptive(f, a, m, rel_tol, 0.5 * abs_tol, depth - 1, acc, panels);
    gk_adaptive(f, m, b, rel_tol, 0.5 * abs_tol, depth - 1, acc, panels);
}

} // namespace detail

// Integrates f over [a, b] to the requested relative tolerance. Unless an
// absolute tolerance is supplied, one is derived from a whole-interval
// estimate so that integrable endpoint singularities terminate.
inline double integrate(const real_fn& f, double a, double b, double rel_tol = 1e-10,
                        double abs_tol = 0.0, int max_depth = 48) {
    if (a == b) return 0.0;
    if (abs_tol <= 0.0) {
        const auto whole = detail::gk15(f, a, b);
        abs_tol = rel_tol * std::max(std::abs(whole.k15), 1e-300);
    }
    double acc = 0.0;
    int panels = 0;
    detail::gk_adaptive(f, a, b, rel_tol, abs_tol, max_depth, acc, panels);
    return acc;
}

// Cumulative integrals of f along an increasing grid: out[k] = int_{grid[0]}^{grid[k]}.
inline std::vector<double> integrate_cumulative(const real_fn& f, const std::vector<double>& grid,
                                                double rel_tol = 1e-10, double abs_tol = 0.0) {
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t k = 1; k < grid.size(); ++k)
        out[k] = out[k - 1] + integrate(f, grid[k - 1], grid[k], rel_tol, abs_tol);
    return out;
}

// ---------------------------------------------------------------------------
// monotone (Fritsch-Carlson) cubic interpolation

class monotone_cubic {
  public:
    monotone_cubic() = default;

    monotone_cubic(std::vector<double> xs, std::vector<double> ys)
        : x_(std::move(xs)), y_(std::move(ys)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n)
            throw numeric_error("monotone_cubic: need >= 2 matched nodes");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw numeric_error("monotone_cubic: abscissae must strictly increase");
        m_.assign(n, 0.0);
        std::vector<double> d(n - 1), h(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            d[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        m_[0] = d[0];
        m_[n - 1] = d[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (d[i - 1] * d[i] <= 0.0) {
                m_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
        // Endpoint limiter (keeps the interpolant monotone on the edge panels).
        for (std::size_t i : {std::size_t{0}, n - 1}) {
            const double dd = (i == 0) ? d[0] : d[n - 2];
            if (dd == 0.0)
                m_[i] = 0.0;
            else if (m_[i] / dd > 3.0)
                m_[i] = 3.0 * dd;
        }
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    const std::vector<double>& xs() const { return x_; }
    const std::vector<double>& ys() const { return y_; }

    double operator()(double x) const {
        const auto [i, t, h] = locate(x);
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
    }

    double derivative(double x) const {
        const auto [i, t, h] = locate(x);
        const double t2 = t * t;
        const double dh00 = 6 * t2 - 6 * t, dh10 = 3 * t2 - 4 * t + 1;
        const double dh01 = -6 * t2 + 6 * t, dh11 = 3 * t2 - 2 * t;
        return (dh00 * y_[i] + dh01 * y_[i + 1]) / h + dh10 * m_[i] + dh11 * m_[i + 1];
    }

  private:
    std::tuple<std::size_t, double, double> locate(double x) const {
        if (x < x_.front() || x > x_.back())
            throw out_of_table_error("monotone_cubic: abscissa outside table");
        std::size_t i = static_cast<std::size_t>(
            std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
        i = std::min(std::max<std::size_t>(i, 1), x_.size() - 1) - 1;
        const double h = x_[i + 1] - x_[i];
        return {i, (x - x_[i]) / h, h};
    }

    std::vector<double> x_, y_, m_;
};

} // namespace pseudonorm
