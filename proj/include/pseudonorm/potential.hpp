// Complex potentials V = V1 + i V2: model type, built-in registry, and the
// scalar quantities derived from V (turning points, Fourier scaling length,
// derivative-control functions, assumption reports).
#pragma once

#include <cmath>
#include <complex>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pseudonorm/errors.hpp"
#include "pseudonorm/numerics.hpp"

namespace pseudonorm {

enum class domain_kind { half_line, full_line };
enum class line_side { plus, minus };
enum class assumption_mode { iR, R };

// Immutable after construction; all evaluators are pure, so a model can be
// shared freely across concurrent computations.
struct PotentialModel {
    real_fn v1;    // Re V; empty means identically zero
    real_fn v2;    // Im V
    real_fn d_v1;  // closed-form derivatives when available,
    real_fn d_v2;  // central-difference fallback otherwise
    real_fn dd_v2;

    domain_kind domain = domain_kind::half_line;
    double x0 = 0.0;        // plus side monotonicity threshold
    double x0_minus = 0.0;  // |x| threshold on the minus side (full_line)
    double nu = -1.0;       // derivative-control exponent, plus side
    double nu_minus = -1.0;
    std::optional<double> beta;     // regular-variation index (mode R)
    std::optional<double> l_limit;  // lim V1'/V2' when known in closed form
    double h_fd = 1e-6;
    double sample_hi = 0.0;  // >0 caps sampling horizons (table potentials)
    std::string label;

    bool v1_is_zero() const { return !static_cast<bool>(v1); }

    double eval_v1(double x) const { return v1 ? v1(x) : 0.0; }
    double eval_v2(double x) const { return v2(x); }
    std::complex<double> eval(double x) const { return {eval_v1(x), eval_v2(x)}; }

    double eval_d_v1(double x) const {
        if (d_v1) return d_v1(x);
        if (!v1) return 0.0;
        return central_derivative(v1, x, fd_step(x, h_fd));
    }
    double eval_d_v2(double x) const {
        if (d_v2) return d_v2(x);
        return central_derivative(v2, x, fd_step(x, h_fd));
    }
    double eval_dd_v2(double x) const {
        if (dd_v2) return dd_v2(x);
        if (d_v2) return central_derivative(d_v2, x, fd_step(x, h_fd));
        return central_second_derivative(v2, x, fd_step(x, h_fd));
    }

    double side_x0(line_side s) const { return s == line_side::plus ? x0 : x0_minus; }
    double side_nu(line_side s) const { return s == line_side::plus ? nu : nu_minus; }
};

// ---------------------------------------------------------------------------
// turning point and Fourier scaling length

namespace detail {

inline double sup_v2_below(const PotentialModel& V, double x_hi) {
    if (x_hi <= 0.0) return -std::numeric_limits<double>::infinity();
    double s = -std::numeric_limits<double>::infinity();
    for (double x : linear_grid(0.0, x_hi, 33)) s = std::max(s, V.eval_v2(x));
    return s;
}

} // namespace detail

// Solves V2(x_b) = b past x0 (plus side) or |V2(-u)| = b past |x0_minus|
// (minus side, full-line potentials). Returns the distance from the origin;
// the minus-side coordinate is -x_b.
inline double turning_point(const PotentialModel& V, double b, line_side side = line_side::plus) {
    if (!(b > 0.0)) throw numeric_error("turning_point: b must be positive");
    if (side == line_side::minus && V.domain != domain_kind::full_line)
        throw numeric_error("turning_point: minus side requires a full-line potential");

    const double x0 = std::abs(V.side_x0(side));
    real_fn g, dg;
    if (side == line_side::plus) {
        if (b <= detail::sup_v2_below(V, x0))
            throw no_bracket_error("turning_point: b does not exceed sup V2 on [0, x0]");
        g = [&V, b](double x) { return V.eval_v2(x) - b; };
        dg = [&V](double x) { return V.eval_d_v2(x); };
    } else {
        g = [&V, b](double u) { return std::abs(V.eval_v2(-u)) - b; };
        dg = [&V](double u) {
            const double s = V.eval_v2(-u) < 0.0 ? 1.0 : -1.0;
            return s * V.eval_d_v2(-u);
        };
    }

    const double start = x0 + std::max(1e-9, 1e-9 * x0);
    bracket br = expand_bracket(g, start);
    const double xb = bisect_newton(g, dg, br);
    const double res = std::abs(g(xb));
    if (res > 1e-12 * std::max(b, 1.0))
        throw numeric_error("turning_point: residual above tolerance (non-smooth potential?)");
    return xb;
}

// Solves t_a V2(t_a) = 2 sqrt(a); t -> t V2(t) must be eventually increasing.
inline double fourier_scale(const PotentialModel& V, double a) {
    if (!(a > 0.0)) throw numeric_error("fourier_scale: a must be positive");
    const double target = 2.0 * std::sqrt(a);
    auto g = [&V, target](double t) { return t * V.eval_v2(t) - target; };
    auto dg = [&V](double t) { return V.eval_v2(t) + t * V.eval_d_v2(t); };

    const double start = std::max(V.x0, 0.0) + 1e-9;
    bracket br = expand_bracket(g, start);
    const double ta = bisect_newton(g, dg, br);
    if (std::abs(g(ta)) > 1e-12 * std::max(target, 1.0))
        throw numeric_error("fourier_scale: residual above tolerance");
    return ta;
}

// Upsilon(x) = x^nu (V2'(x))^{-1/3}, the derivative-control remainder driver.
inline double upsilon(const PotentialModel& V, double x, line_side side = line_side::plus) {
    const double u = std::abs(x);
    const double d = side == line_side::plus ? V.eval_d_v2(u) : std::abs(V.eval_d_v2(-u));
    if (!(d > 0.0))
        throw derivative_nonpositive_error("upsilon: V2' not positive at x");
    return std::pow(u, V.side_nu(side)) * std::pow(d, -1.0 / 3.0);
}

// ---------------------------------------------------------------------------
// kappa: the rotation mismatch between the limiting and local derivative ratio

struct kappa_info {
    double kappa_b = 0.0;
    double r = 1.0;
    double theta = 0.0;
    double r_b = 1.0;
    double theta_b = 0.0;
    double l = 0.0;
};

namespace detail {

// Estimate l = lim V1'/V2' from the last decade of a log-spaced sample.
// The spread criterion is relative to max(1, |l|) so that ratios decaying to
// zero stabilise rather than oscillating in relative terms forever.
inline double estimate_l(const PotentialModel& V, double horizon) {
    const double hi = V.sample_hi > 0.0 ? std::min(V.sample_hi, horizon) : horizon;
    const double lo = hi / 10.0;
    double mn = std::numeric_limits<double>::infinity(), mx = -mn, last = 0.0;
    for (double x : log_grid(lo, hi, 48)) {
        const double d2 = V.eval_d_v2(x);
        if (!(d2 > 0.0))
            throw derivative_nonpositive_error("estimate_l: V2' not positive in sample decade");
        last = V.eval_d_v1(x) / d2;
        mn = std::min(mn, last);
        mx = std::max(mx, last);
    }
    if (mx - mn > 1e-3 * std::max(1.0, std::abs(last)))
        throw limit_unavailable_error("kappa: derivative ratio has not stabilised; supply l");
    return last;
}

} // namespace detail

inline kappa_info kappa(const PotentialModel& V, double b, double horizon = 1e8) {
    kappa_info k;
    if (V.v1_is_zero())
        k.l = 0.0;
    else if (V.l_limit)
        k.l = *V.l_limit;
    else
        k.l = detail::estimate_l(V, horizon);

    k.r = std::hypot(k.l, 1.0);
    k.theta = std::atan2(1.0, k.l);

    const double xb = turning_point(V, b);
    const double d2 = V.eval_d_v2(xb);
    if (!(d2 > 0.0)) throw derivative_nonpositive_error("kappa: V2'(x_b) not positive");
    const double ratio_b = V.v1_is_zero() ? 0.0 : V.eval_d_v1(xb) / d2;
    k.r_b = std::hypot(ratio_b, 1.0);
    k.theta_b = std::atan2(1.0, ratio_b);

    if (V.v1_is_zero()) {
        k.kappa_b = 0.0;  // r_b = r and theta_b = theta exactly
    } else {
        const std::complex<double> lim(k.l, 1.0), loc(ratio_b, 1.0);
        k.kappa_b = std::abs(lim - loc);
    }
    return k;
}

// ---------------------------------------------------------------------------
// iota: sup-norm distance between (1+W_t)^{-1} and (1+|x|^beta)^{-1}

// Grid sup over x in [1e-4, 1e6] plus an analytic bound for the tail beyond
// the grid. The tail uses the sharper of the regular-variation lower bound
// 1 + (1/2) x^{beta - gamma} with gamma = beta/2 and the monotone bound
// 1 + W_t(x_max) (V2 increases beyond x0, so both tail terms are below their
// value at x_max). A grid sup at rounding level certifies the exact scaling
// identity of pure monomials and returns 0.
inline double iota(const PotentialModel& V, double t) {
    if (!V.beta) throw beta_missing_error("iota: regular-variation index beta not set");
    const double beta = *V.beta;
    if (!(t > 0.0) || !(V.eval_v2(t) > 0.0))
        throw numeric_error("iota: need t > 0 with V2(t) > 0");

    const double x_min = 1e-4, x_max = 1e6;
    const double v2t = V.eval_v2(t);
    double sup = 0.0;
    for (double x : log_grid(x_min, x_max, 2400)) {
        const double wt = V.eval_v2(t * x) / v2t;
        const double diff = std::abs(1.0 / (1.0 + wt) - 1.0 / (1.0 + std::pow(x, beta)));
        sup = std::max(sup, diff);
    }
    if (sup <= 1e-14) return 0.0;

    const double w_edge = V.eval_v2(t * x_max) / v2t;
    const double tail_monotone =
        std::max(1.0 / (1.0 + w_edge), 1.0 / (1.0 + std::pow(x_max, beta)));
    const double tail_potter = 1.0 / (1.0 + 0.5 * std::pow(x_max, beta / 2.0));
    return std::max(sup, std::min(tail_monotone, tail_potter));
}

// ---------------------------------------------------------------------------
// assumption reports

struct assumption_item {
    std::string name;
    bool pass = false;
    double worst = 0.0;    // worst violation magnitude (0 when clean)
    double witness = 0.0;  // position of the worst sample
    std::string note;
};

struct AssumptionReport {
    assumption_mode mode = assumption_mode::iR;
    std::vector<assumption_item> items;
    std::string grid_note;

    bool all_pass() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
};

namespace detail {

struct decade_stats {
    double max_first = 0.0;        // first decade of the grid
    double max_last = 0.0;         // last decade
    double max_before_last = 0.0;  // everything before the last decade
    double max_all = 0.0;
    double arg_max = 0.0;
};

inline decade_stats scan(const std::vector<double>& xs, const std::vector<double>& vals) {
    decade_stats s;
    const double lo = xs.front(), hi = xs.back();
    const double first_edge = lo * 10.0, last_edge = hi / 10.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = vals[i];
        if (v > s.max_all) {
            s.max_all = v;
            s.arg_max = xs[i];
        }
        if (xs[i] <= first_edge) s.max_first = std::max(s.max_first, v);
        if (xs[i] >= last_edge)
            s.max_last = std::max(s.max_last, v);
        else
            s.max_before_last = std::max(s.max_before_last, v);
    }
    return s;
}

} // namespace detail

// Sampled validation of the hypotheses behind the two main estimates. Failures
// are report entries, never exceptions.
inline AssumptionReport check_assumptions(const PotentialModel& V, assumption_mode mode,
                                          double horizon = 1e8, std::size_t n_samples = 400) {
    AssumptionReport rep;
    rep.mode = mode;
    const double lo = std::max(V.x0, 0.0) + 1.0;
    const double hi = std::max(V.sample_hi > 0.0 ? std::min(V.sample_hi, horizon) : horizon,
                               lo * 100.0);
    const auto xs = log_grid(lo, hi, n_samples);
    {
        std::ostringstream os;
        os << n_samples << " log-spaced samples on [" << lo << ", " << hi << "]";
        rep.grid_note = os.str();
    }

    // (i) eventually increasing and unbounded
    {
        assumption_item it{"V2 increasing and unbounded", true, 0.0, 0.0, ""};
        double v2_first = V.eval_v2(xs.front()), v2_last = V.eval_v2(xs.back());
        for (double x : xs) {
            const double d = V.eval_d_v2(x);
            if (!(d > 0.0) && -d >= it.worst) {
                it.pass = false;
                it.worst = -d;
                it.witness = x;
                it.note = "V2' <= 0 at witness";
            }
        }
        if (it.pass && !(v2_last > 2.0 * std::abs(v2_first) + 1.0)) {
            it.pass = false;
            it.witness = xs.back();
            it.note = "no unbounded-growth trend over the sampling range";
        }
        rep.items.push_back(std::move(it));
    }

    // (ii) controlled derivatives: V2' <~ V2 x^nu and |V2''| <~ V2' x^nu
    {
        assumption_item it{"controlled derivatives (nu)", true, 0.0, 0.0, ""};
        std::vector<double> c1, c2;
        c1.reserve(xs.size());
        c2.reserve(xs.size());
        for (double x : xs) {
            const double v2 = V.eval_v2(x), d2 = V.eval_d_v2(x), dd2 = V.eval_dd_v2(x);
            const double xs_nu = std::pow(x, V.nu);
            c1.push_back(d2 > 0.0 && v2 > 0.0 ? d2 / (v2 * xs_nu) : std::numeric_limits<double>::infinity());
            c2.push_back(d2 > 0.0 ? std::abs(dd2) / (d2 * xs_nu) : std::numeric_limits<double>::infinity());
        }
        const auto s1 = detail::scan(xs, c1), s2 = detail::scan(xs, c2);
        std::ostringstream os;
        os << "fitted constants C1=" << s1.max_all << " C2=" << s2.max_all;
        it.note = os.str();
        // Pass when the last decade sets no materially new record.
        if (!(s1.max_last <= 1.25 * s1.max_before_last) || !std::isfinite(s1.max_all)) {
            it.pass = false;
            it.worst = s1.max_last;
            it.witness = s1.arg_max;
        }
        if (!(s2.max_last <= 1.25 * s2.max_before_last) || !std::isfinite(s2.max_all)) {
            it.pass = false;
            it.worst = std::max(it.worst, s2.max_last);
            it.witness = s2.arg_max;
        }
        rep.items.push_back(std::move(it));
    }

    // (iii) Upsilon = o(1)
    {
        assumption_item it{"Upsilon decays to 0", true, 0.0, 0.0, ""};
        std::vector<double> ups;
        ups.reserve(xs.size());
        bool ok = true;
        for (double x : xs) {
            const double d = V.eval_d_v2(x);
            if (!(d > 0.0)) {
                ok = false;
                it.witness = x;
                break;
            }
            ups.push_back(std::pow(x, V.nu) * std::pow(d, -1.0 / 3.0));
        }
        if (!ok) {
            it.pass = false;
            it.note = "V2' not positive; Upsilon undefined";
        } else {
            const auto s = detail::scan(xs, ups);
            it.worst = s.max_last;
            it.witness = s.arg_max;
            it.pass = s.max_last <= 0.5 * s.max_first;
            std::ostringstream os;
            os << "first-decade max " << s.max_first << ", last-decade max " << s.max_last;
            it.note = os.str();
        }
        rep.items.push_back(std::move(it));
    }

    // (iv) V1'/V2' convergent
    {
        assumption_item it{"V1'/V2' convergent", true, 0.0, 0.0, ""};
        if (V.v1_is_zero()) {
            it.note = "V1 identically zero";
        } else {
            try {
                const double l = detail::estimate_l(V, hi);
                std::ostringstream os;
                os << "l ~ " << l;
                it.note = os.str();
            } catch (const limit_unavailable_error&) {
                it.pass = false;
                it.note = "ratio oscillation above 1e-3 in the last decade";
            }
        }
        rep.items.push_back(std::move(it));
    }

    if (mode == assumption_mode::R) {
        // (R-i) evenness
        {
            assumption_item it{"V2 even", true, 0.0, 0.0, ""};
            for (double x : xs) {
                const double diff = std::abs(V.eval_v2(-x) - V.eval_v2(x));
                const double tol = 1e-12 * (std::abs(V.eval_v2(x)) + 1.0);
                if (diff > tol && diff > it.worst) {
                    it.pass = false;
                    it.worst = diff;
                    it.witness = x;
                }
            }
            if (V.domain != domain_kind::full_line) {
                it.pass = false;
                it.note = "half-line potential; evenness not applicable";
            }
            rep.items.push_back(std::move(it));
        }
        // (R-iii) regular variation towards |x|^beta
        {
            assumption_item it{"regularly varying (beta)", true, 0.0, 0.0, ""};
            if (!V.beta) {
                it.pass = false;
                it.note = "beta not set";
            } else {
                const double beta = *V.beta;
                const double t_hi = hi, t_lo = hi / 100.0;
                auto probe = [&](double t) {
                    double worst = 0.0;
                    for (double x : {0.25, 0.5, 2.0, 4.0}) {
                        const double wt = V.eval_v2(t * x) / V.eval_v2(t);
                        worst = std::max(worst, std::abs(wt / std::pow(x, beta) - 1.0));
                    }
                    return worst;
                };
                const double e_lo = probe(t_lo), e_hi = probe(t_hi);
                it.worst = e_hi;
                it.witness = t_hi;
                it.pass = e_hi <= e_lo * 1.0000001 && e_hi < 0.05;
                std::ostringstream os;
                os << "W_t mismatch " << e_lo << " -> " << e_hi;
                it.note = os.str();
            }
            rep.items.push_back(std::move(it));
        }
        // (R-iv) symbol-type derivative control up to order 2
        {
            assumption_item it{"derivative control n<=2", true, 0.0, 0.0, ""};
            std::vector<double> c1, c2;
            c1.reserve(xs.size());
            c2.reserve(xs.size());
            for (double x : xs) {
                const double v2 = V.eval_v2(x);
                const double bracket1 = (1.0 + v2) / std::hypot(1.0, x);
                const double bracket2 = (1.0 + v2) / (1.0 + x * x);
                c1.push_back(std::abs(V.eval_d_v2(x)) / bracket1);
                c2.push_back(std::abs(V.eval_dd_v2(x)) / bracket2);
            }
            const auto s1 = detail::scan(xs, c1), s2 = detail::scan(xs, c2);
            it.pass = s1.max_last <= 1.25 * std::max(s1.max_before_last, 1e-300) &&
                      s2.max_last <= 1.25 * std::max(s2.max_before_last, 1e-300);
            it.worst = std::max(s1.max_last, s2.max_last);
            std::ostringstream os;
            os << "fitted C1=" << s1.max_all << " C2=" << s2.max_all;
            it.note = os.str();
            rep.items.push_back(std::move(it));
        }
        rep.items.push_back(
            {"derivative control n>2", true, 0.0, 0.0, "untested: beyond numeric reach"});
    }

    return rep;
}

// ---------------------------------------------------------------------------
// built-in registry

namespace detail {

inline bool parse_key_value(const std::string& s, const std::string& prefix, double& out) {
    if (s.rfind(prefix, 0) != 0) return false;
    try {
        out = std::stod(s.substr(prefix.size()));
    } catch (...) {
        throw config_error("potential registry: cannot parse number in '" + s + "'");
    }
    return true;
}

inline PotentialModel make_power(double p) {
    // <x>^p = (1 + x^2)^{p/2}
    PotentialModel V;
    V.v2 = [p](double x) { return std::pow(1.0 + x * x, p / 2.0); };
    V.d_v2 = [p](double x) { return p * x * std::pow(1.0 + x * x, p / 2.0 - 1.0); };
    V.dd_v2 = [p](double x) {
        return p * std::pow(1.0 + x * x, p / 2.0 - 2.0) * ((p - 1.0) * x * x + 1.0);
    };
    V.domain = domain_kind::full_line;
    V.nu = V.nu_minus = -1.0;
    V.beta = p;
    V.label = "power:p=" + std::to_string(p);
    return V;
}

inline PotentialModel make_monomial(int n) {
    PotentialModel V;
    V.v2 = [n](double x) { return std::pow(x, n); };
    V.d_v2 = [n](double x) { return n * std::pow(x, n - 1); };
    V.dd_v2 = [n](double x) { return static_cast<double>(n) * (n - 1) * std::pow(x, n - 2); };
    V.domain = domain_kind::full_line;
    V.nu = V.nu_minus = -1.0;
    if (n % 2 == 0) V.beta = static_cast<double>(n);  // odd monomials are not even functions
    V.label = "monomial:n=" + std::to_string(n);
    return V;
}

inline PotentialModel make_log() {
    PotentialModel V;
    V.v2 = [](double x) { return 0.5 * std::log1p(x * x); };
    V.d_v2 = [](double x) { return x / (1.0 + x * x); };
    V.dd_v2 = [](double x) {
        const double q = 1.0 + x * x;
        return (1.0 - x * x) / (q * q);
    };
    V.domain = domain_kind::full_line;
    V.nu = V.nu_minus = -1.0;
    V.label = "log";
    return V;
}

inline PotentialModel make_expsq() {
    PotentialModel V;
    V.v2 = [](double x) { return std::exp(x * x); };
    V.d_v2 = [](double x) { return 2.0 * x * std::exp(x * x); };
    V.dd_v2 = [](double x) { return (2.0 + 4.0 * x * x) * std::exp(x * x); };
    V.domain = domain_kind::full_line;
    V.nu = V.nu_minus = 1.0;
    V.label = "expsq";
    return V;
}

// CSV of x,V1,V2 with strictly increasing x; derivatives from the monotone
// cubic interpolant, linear extension beyond the table ends.
inline PotentialModel make_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("potential registry: cannot open table '" + path + "'");
    std::vector<double> xs, v1s, v2s;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& c : line)
            if (c == ',' || c == ';') c = ' ';
        std::istringstream ls(line);
        double x, a, b;
        if (!(ls >> x >> a >> b)) {
            if (xs.empty()) continue;  // header row
            throw config_error("potential registry: malformed table row '" + line + "'");
        }
        xs.push_back(x);
        v1s.push_back(a);
        v2s.push_back(b);
    }
    if (xs.size() < 4) throw config_error("potential registry: table needs >= 4 rows");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw config_error("potential registry: table abscissae must strictly increase");

    auto extend = [](const monotone_cubic& s, double x) {
        if (x < s.x_min()) return s(s.x_min()) + s.derivative(s.x_min()) * (x - s.x_min());
        if (x > s.x_max()) return s(s.x_max()) + s.derivative(s.x_max()) * (x - s.x_max());
        return s(x);
    };
    auto extend_d = [](const monotone_cubic& s, double x) {
        return s.derivative(std::clamp(x, s.x_min(), s.x_max()));
    };

    monotone_cubic s1(xs, v1s), s2(xs, v2s);
    bool v1_flat = true;
    for (double v : v1s) v1_flat = v1_flat && v == 0.0;

    PotentialModel V;
    if (!v1_flat) {
        V.v1 = [s1, extend](double x) { return extend(s1, x); };
        V.d_v1 = [s1, extend_d](double x) { return extend_d(s1, x); };
    }
    V.v2 = [s2, extend](double x) { return extend(s2, x); };
    V.d_v2 = [s2, extend_d](double x) { return extend_d(s2, x); };
    V.domain = xs.front() >= 0.0 ? domain_kind::half_line : domain_kind::full_line;
    V.x0 = std::max(xs.front(), 0.0);
    V.x0_minus = xs.front() < 0.0 ? xs.front() : 0.0;
    V.nu = V.nu_minus = -1.0;
    V.sample_hi = xs.back();
    V.label = "table:" + path;
    return V;
}

} // namespace detail

// Parses "power:p=<real>", "monomial:n=<int>", "log", "expsq", "table:<path>".
inline PotentialModel make_potential(const std::string& spec) {
    double val = 0.0;
    if (detail::parse_key_value(spec, "power:p=", val)) {
        if (!(val > 0.0)) throw config_error("power potential needs p > 0");
        return detail::make_power(val);
    }
    if (detail::parse_key_value(spec, "monomial:n=", val)) {
        const int n = static_cast<int>(val);
        if (n < 1 || static_cast<double>(n) != val)
            throw config_error("monomial potential needs integer n >= 1");
        return detail::make_monomial(n);
    }
    if (spec == "log") return detail::make_log();
    if (spec == "expsq") return detail::make_expsq();
    if (spec.rfind("table:", 0) == 0) return detail::make_table(spec.substr(6));
    throw config_error("unknown potential spec '" + spec + "'");
}

} // namespace pseudonorm
