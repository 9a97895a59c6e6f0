// Closed-form resolvent-norm estimates: the two main asymptotic formulas (in
// Ran V and on the real axis), the general-curve variants with shifted Airy
// constants, whole-line and radial reductions, level curves, and the
// triangle-inequality critical regions.
#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include "pseudonorm/airy.hpp"
#include "pseudonorm/potential.hpp"

namespace pseudonorm {

enum class curve_axis { imag, real };

// lambda = a(b) + i b (imag axis) or lambda = a + i b(a) (real axis).
struct CurveSpec {
    curve_axis axis = curve_axis::imag;
    real_fn offset;  // a(b), resp. b(a); must be >= 0 on the range
    double param_lo = 1.0;
    double param_hi = 1e6;
};

struct AsymValidity {
    std::optional<double> phi;     // shifted-curve smallness driver, when applicable
    bool assumptions_pass = true;  // sampled hypothesis check (or skipped by force)
    bool phi_ok = true;            // phi <= 0.5 engineering gate
};

struct AsymEstimate {
    double value = 0.0;
    double leading_constant = 0.0;  // the Airy factor
    double scale_factor = 0.0;      // (V2'(x_b))^{-2/3}, resp. V2(t_a)^{-1}
    double remainder_scale = 0.0;
    AsymValidity validity;
};

struct AsymOptions {
    bool force = false;      // skip the assumption gate
    double airy_tol = 2e-4;  // tolerance handed to the Airy reference table
    double eps = 0.0;        // epsilon in l_{beta,eps}; 0 picks min(beta,1)/10
};

namespace detail {

inline double l_beta_eps(double beta, double eps) {
    return beta > 0.5 ? 1.0 - eps : 0.5 + beta - eps;
}

inline void gate(const PotentialModel& V, assumption_mode mode, const AsymOptions& opt,
                 AsymValidity& validity) {
    if (opt.force) return;
    validity.assumptions_pass = check_assumptions(V, mode).all_pass();
}

} // namespace detail

// ||(H - lambda_b)^{-1}|| ~ ||A_{r,theta}^{-1}|| (V2'(x_b))^{-2/3} along the
// range of V, with remainder driver kappa_b + Upsilon(x_b).
inline AsymEstimate resnorm_iR(const PotentialModel& V, double b, AsymOptions opt = {}) {
    AsymEstimate est;
    detail::gate(V, assumption_mode::iR, opt, est.validity);
    const kappa_info k = kappa(V, b);
    const double xb = turning_point(V, b);
    est.leading_constant = airy_norm_rotated(k.r, k.theta, 0.0, opt.airy_tol).value;
    est.scale_factor = std::pow(V.eval_d_v2(xb), -2.0 / 3.0);
    est.value = est.leading_constant * est.scale_factor;
    est.remainder_scale = k.kappa_b + upsilon(V, xb);
    return est;
}

// ||(H - a)^{-1}|| ~ ||A_beta^{-1}|| V2(t_a)^{-1} on the real axis, remainder
// iota(t_a) + (sqrt(a) t_a)^{-l_{beta,eps}}.
inline AsymEstimate resnorm_R(const PotentialModel& V, double a, AsymOptions opt = {}) {
    if (!V.beta) throw beta_missing_error("resnorm_R: regular-variation index beta not set");
    const double beta = *V.beta;
    AsymEstimate est;
    detail::gate(V, assumption_mode::R, opt, est.validity);
    const double ta = fourier_scale(V, a);
    const double eps = opt.eps > 0.0 ? opt.eps : std::min(beta, 1.0) / 10.0;
    est.leading_constant = airy_norm_generalized(beta, 0.0, opt.airy_tol).value;
    est.scale_factor = 1.0 / V.eval_v2(ta);
    est.value = est.leading_constant * est.scale_factor;
    est.remainder_scale =
        iota(V, ta) + std::pow(std::sqrt(a) * ta, -detail::l_beta_eps(beta, eps));
    return est;
}

// General curves inside the numerical range. Imag axis: lambda_b = a(b) + ib
// with mu_b = (V2'(x_b))^{-2/3} a(b); real axis: lambda_a = a + i b(a) with
// mu_a = b(a) / V2(t_a). The smallness driver Phi is reported in validity and
// gates nothing hard: estimates outside Phi <= 0.5 carry phi_ok = false.
inline AsymEstimate resnorm_curve(const PotentialModel& V, const CurveSpec& curve, double param,
                                  AsymOptions opt = {}) {
    if (!curve.offset) throw numeric_error("resnorm_curve: curve has no offset function");
    AsymEstimate est;

    if (curve.axis == curve_axis::imag) {
        if (!V.v1_is_zero() && !opt.force)
            throw numeric_error("resnorm_curve: imag-axis curves require purely imaginary V");
        detail::gate(V, assumption_mode::iR, opt, est.validity);
        const double b = param;
        const double ab = curve.offset(b);
        if (!(ab >= 0.0)) throw numeric_error("resnorm_curve: offset must be nonnegative");
        const double xb = turning_point(V, b);
        const double rho2 = std::pow(V.eval_d_v2(xb), -2.0 / 3.0);
        const double mu = rho2 * ab;
        est.leading_constant = airy_norm_rotated(1.0, kPi / 2, mu, opt.airy_tol).value;
        est.scale_factor = rho2;
        est.value = est.leading_constant * est.scale_factor;
        const double phi =
            (1.0 + mu * mu) * est.leading_constant * upsilon(V, xb);
        est.validity.phi = phi;
        est.validity.phi_ok = phi <= 0.5;
        est.remainder_scale = phi;
        return est;
    }

    if (!V.beta) throw beta_missing_error("resnorm_curve: real-axis curves need beta");
    const double beta = *V.beta;
    detail::gate(V, assumption_mode::R, opt, est.validity);
    const double a = param;
    const double ba = curve.offset(a);
    if (!(ba >= 0.0)) throw numeric_error("resnorm_curve: offset must be nonnegative");
    if (!opt.force) {
        // b_a / a must trend to zero along the curve
        const double here = ba / a;
        const double there = curve.offset(4.0 * a) / (4.0 * a);
        if (!(there <= here * (1.0 + 1e-9) || there < 1e-12))
            throw numeric_error("resnorm_curve: offset does not satisfy b_a = o(a)");
    }
    const double ta = fourier_scale(V, a);
    const double v2ta = V.eval_v2(ta);
    const double mu = ba / v2ta;
    const double eps = opt.eps > 0.0 ? opt.eps : std::min(beta, 1.0) / 10.0;
    est.leading_constant = airy_norm_generalized(beta, mu, opt.airy_tol).value;
    est.scale_factor = 1.0 / v2ta;
    est.value = est.leading_constant * est.scale_factor;
    const double small =
        iota(V, ta) + std::pow(std::sqrt(a) * ta, -detail::l_beta_eps(beta, eps));
    const double phi = (1.0 + mu * mu) * est.leading_constant * small;
    est.validity.phi = phi;
    est.validity.phi_ok = phi <= 0.5;
    est.remainder_scale = phi;
    return est;
}

// Whole-line variant: lambda = i * sign * b; collects the sides where
// sign * V2 attains b and takes the worse (larger) scale factor.
inline AsymEstimate resnorm_wholeline(const PotentialModel& V, double b, int sign = +1,
                                      AsymOptions opt = {}) {
    if (V.domain != domain_kind::full_line)
        throw numeric_error("resnorm_wholeline: needs a full-line potential");
    if (!(b > 0.0) || (sign != 1 && sign != -1))
        throw numeric_error("resnorm_wholeline: b > 0 and sign in {-1, +1}");
    AsymEstimate est;
    detail::gate(V, assumption_mode::iR, opt, est.validity);

    // Each side is solved through turning_point (so the even case reproduces
    // the half-line estimate bit for bit) and kept only when the signed
    // potential actually attains i * sign * b there. A side where |V2| never
    // reaches b at all signals a bounded side: that error propagates.
    bool found = false;
    double worst_scale = 0.0, worst_upsilon = 0.0;
    for (line_side side : {line_side::plus, line_side::minus}) {
        const double u = turning_point(V, b, side);
        const double x = side == line_side::plus ? u : -u;
        if (std::abs(sign * V.eval_v2(x) - b) > 1e-9 * b) continue;  // wrong sign of V2 here
        const double d2 = side == line_side::plus ? V.eval_d_v2(x) : std::abs(V.eval_d_v2(x));
        if (!(d2 > 0.0))
            throw derivative_nonpositive_error("resnorm_wholeline: |V2'| vanishes at x_b");
        found = true;
        worst_scale = std::max(worst_scale, std::pow(d2, -2.0 / 3.0));
        worst_upsilon = std::max(worst_upsilon, upsilon(V, x, side));
    }
    if (!found)
        throw no_bracket_error("resnorm_wholeline: no side attains the spectral height " +
                               std::to_string(sign) + "*" + std::to_string(b));
    est.leading_constant = airy_norm_rotated(1.0, kPi / 2, 0.0, opt.airy_tol).value;
    est.scale_factor = worst_scale;
    est.value = est.leading_constant * est.scale_factor;
    est.remainder_scale = worst_upsilon;
    return est;
}

// Radial reduction in dimension d >= 2: the leading term carries no
// d-dependence, so this is the half-line estimate verbatim.
inline AsymEstimate resnorm_radial(const PotentialModel& v, int dim, double b,
                                   AsymOptions opt = {}) {
    if (dim < 2) throw numeric_error("resnorm_radial: dimension must be >= 2");
    if (!v.v1_is_zero()) throw numeric_error("resnorm_radial: radial potential must be i v(|x|)");
    return resnorm_iR(v, b, opt);
}

// Level curves Psi = 1/eps in leading order. Imag axis: the offset a_b from
// inverting the exponential Airy asymptotics through Lambert W bounds; real
// axis: the analogous b_a.
inline double level_curve(const PotentialModel& V, curve_axis axis, double eps, double param) {
    if (!(eps > 0.0)) throw numeric_error("level_curve: eps must be positive");
    if (axis == curve_axis::imag) {
        const double xb = turning_point(V, param);
        const double rho_inv2 = std::pow(V.eval_d_v2(xb), 2.0 / 3.0);  // rho^{-2}
        const double arg = rho_inv2 / eps;
        if (!(arg > std::exp(1.0)))
            throw log_domain_error("level_curve: log argument below e; curve undefined here");
        return std::pow(0.75, 2.0 / 3.0) * rho_inv2 * std::pow(std::log(arg), 2.0 / 3.0);
    }
    if (!V.beta) throw beta_missing_error("level_curve: real-axis curve needs beta");
    const double beta = *V.beta;
    const double v2ta = V.eval_v2(fourier_scale(V, param));
    const double arg = v2ta / eps;
    if (!(arg > std::exp(1.0)))
        throw log_domain_error("level_curve: log argument below e; curve undefined here");
    const double q = beta / (beta + 1.0);
    return std::pow((beta + 1.0) / (2.0 * beta), q) * v2ta * std::pow(std::log(arg), q);
}

struct CriticalBoundary {
    double offset = 0.0;
    bool clamped = false;  // formula went negative; region empty at this param
};

// Triangle-inequality critical regions: inside 0 <= offset < boundary the
// resolvent norm is at most 1/eps.
inline CriticalBoundary critical_boundary(const PotentialModel& V, curve_axis axis, double eps,
                                          double eps_prime, double param,
                                          AsymOptions opt = {}) {
    if (!(eps > 0.0) || !(eps_prime >= 0.0))
        throw numeric_error("critical_boundary: eps > 0 and eps' >= 0 required");
    double raw = 0.0;
    if (axis == curve_axis::imag) {
        const double xb = turning_point(V, param);
        const double airy = airy_norm_rotated(1.0, kPi / 2, 0.0, opt.airy_tol).value;
        raw = std::pow(V.eval_d_v2(xb), 2.0 / 3.0) / airy * (1.0 - eps_prime) - eps;
    } else {
        if (!V.beta) throw beta_missing_error("critical_boundary: real axis needs beta");
        const double airy = airy_norm_generalized(*V.beta, 0.0, opt.airy_tol).value;
        raw = V.eval_v2(fourier_scale(V, param)) / airy * (1.0 - eps_prime) - eps;
    }
    if (raw < 0.0) return {0.0, true};
    return {raw, false};
}

} // namespace pseudonorm
