// Reference-operator constants: ||(A_{r,theta} - mu)^{-1}|| for the rotated
// Airy operator -d^2/dx^2 + r e^{i theta} x and ||(A_beta - mu)^{-1}|| for the
// generalised first-order operator -d/dx + |x|^beta, computed numerically
// (with a persistent cache) and via their large-mu closed forms. Also the
// principal Lambert branch and the empty-point-spectrum certificate.
#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>

#include <nlohmann/json.hpp>

#include "pseudonorm/errors.hpp"
#include "pseudonorm/numerics.hpp"
#include "pseudonorm/operator_lab.hpp"

namespace pseudonorm {

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Lambert W, principal branch

// Solves w e^w = x for x >= -1/e. Initial guess log x - loglog x for large x,
// series near the branch point, then Halley iterations to fixed point.
inline double lambert_w0(double x) {
    constexpr double inv_e = 0.36787944117144233;
    if (x < -inv_e) throw out_of_domain_error("lambert_w0: x below -1/e");
    if (x == 0.0) return 0.0;

    double w;
    if (x < -0.32) {
        const double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
        w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
    } else if (x < std::exp(1.0)) {
        w = std::log1p(x);
    } else {
        const double l1 = std::log(x), l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }

    for (int it = 0; it < 40; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (std::abs(f) <= 1e-14 * std::max(std::abs(x), 1e-300)) break;
        const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * (w + 1.0));
        const double step = f / denom;
        w -= step;
        if (std::abs(step) <= std::numeric_limits<double>::epsilon() * std::abs(w)) break;
    }
    return w;
}

// ---------------------------------------------------------------------------
// queries and the persistent norm table

enum class airy_kind { rotated_second_order, generalized_first_order };

struct AiryQuery {
    airy_kind kind = airy_kind::rotated_second_order;
    double r = 1.0;          // rotated kind
    double theta = kPi / 2;  // rotated kind, in (-pi, pi)
    double beta = 2.0;       // generalized kind
    double mu = 0.0;         // real shift >= 0
    double tol = 2e-4;

    void validate() const {
        if (kind == airy_kind::rotated_second_order) {
            if (!(r > 0.0)) throw numeric_error("AiryQuery: r must be positive");
            if (!(theta > -kPi && theta < kPi))
                throw numeric_error("AiryQuery: theta must lie in (-pi, pi)");
        } else if (!(beta > 0.0)) {
            throw numeric_error("AiryQuery: beta must be positive");
        }
        if (!(mu >= 0.0)) throw numeric_error("AiryQuery: mu must be >= 0");
        if (!(tol > 0.0)) throw numeric_error("AiryQuery: tol must be positive");
    }
};

namespace detail {

// Parameters rounded to 1e-9 so float noise cannot split cache entries.
inline long long quantize(double x) { return std::llround(x * 1e9); }

// Truncation for the reference operators: the resolvent concentrates near the
// turning region, the margin covers Airy-function decay lengths.
inline double airy_truncation(const AiryQuery& q, double mu_reduced) {
    if (q.kind == airy_kind::rotated_second_order)
        return std::max(30.0, 10.0 * std::pow(1.0 + mu_reduced, 1.5));
    return std::max(30.0, 10.0 * std::pow(1.0 + q.mu, 1.0 + 1.0 / q.beta));
}

inline NormResult airy_norm_compute(const AiryQuery& q) {
    q.validate();
    if (q.kind == airy_kind::rotated_second_order) {
        // Reduce r to 1 by the dilation identity
        // ||(A_{r,theta} - mu)^{-1}|| = r^{-2/3} ||(A_{1,theta} - r^{-2/3} mu)^{-1}||.
        const double scale = std::pow(q.r, -2.0 / 3.0);
        const double mu1 = scale * q.mu;
        const double c = std::cos(q.theta), s = std::sin(q.theta);
        PotentialModel airy;
        if (std::abs(c) > 0.0) airy.v1 = [c](double x) { return c * x; };
        airy.v2 = [s](double x) { return s * x; };
        airy.d_v2 = [s](double) { return s; };
        airy.dd_v2 = [](double) { return 0.0; };
        airy.domain = domain_kind::full_line;
        airy.label = "airy-rotated";

        Discretization d0;
        d0.L = airy_truncation(q, mu1);
        d0.N = std::max(4096, detail::next_pow2(2.0 * d0.L * 6.0 *
                                                std::max(1.0, std::sqrt(mu1)) / (2.0 * kPi)));
        NormResult res = resolvent_norm_numeric(airy, cplx(mu1, 0.0), q.tol, d0);
        res.value *= scale;
        for (auto& row : res.grid_history) std::get<2>(row) *= scale;
        return res;
    }

    PotentialModel dummy;
    dummy.v2 = [b = q.beta](double x) { return std::pow(std::abs(x), b); };
    dummy.domain = domain_kind::full_line;
    dummy.label = "airy-generalized";
    Discretization d0;
    d0.L = airy_truncation(q, q.mu);
    d0.N = std::max(4096, detail::next_pow2(2.0 * d0.L * 6.0 /
                                            (2.0 * kPi)));
    return resolvent_norm_numeric(dummy, cplx(q.mu, 0.0), q.tol, d0,
                                  FirstOrderSpec{q.beta});
}

} // namespace detail

// Persistent map from quantized query to computed norm. Concurrent reads,
// serialized writes; identical keys written twice agree within tol, so
// last-writer-wins is harmless. File format: JSON array of entries keyed by a
// format version; entries with a tighter tol win over looser ones.
class AiryNormTable {
  public:
    AiryNormTable() = default;
    explicit AiryNormTable(std::string path) : path_(std::move(path)) { load(); }

    static constexpr int kFormatVersion = 1;

    NormResult lookup_or_compute(const AiryQuery& q) {
        q.validate();
        const key_t key = make_key(q);
        {
            std::shared_lock lk(mutex_);
            auto it = entries_.find(key);
            if (it != entries_.end() && it->second.tol <= q.tol * (1.0 + 1e-12)) {
                NormResult r;
                r.value = it->second.value;
                r.method = norm_method::numeric;
                r.converged = it->second.converged;
                r.est_rel_error = it->second.est_rel_error;
                return r;
            }
        }
        NormResult res = detail::airy_norm_compute(q);
        {
            std::unique_lock lk(mutex_);
            entry e{q.tol, res.value, res.converged, res.est_rel_error, 0.0, 0};
            if (!res.grid_history.empty()) {
                e.grid_L = std::get<0>(res.grid_history.back());
                e.grid_N = std::get<1>(res.grid_history.back());
            }
            entries_[key] = e;
            if (!path_.empty()) save_locked();
        }
        return res;
    }

    std::size_t size() const {
        std::shared_lock lk(mutex_);
        return entries_.size();
    }

  private:
    using key_t = std::tuple<int, long long, long long, long long, long long, int>;

    struct entry {
        double tol = 0.0;
        double value = 0.0;
        bool converged = false;
        double est_rel_error = 0.0;
        double grid_L = 0.0;
        int grid_N = 0;
    };

    static key_t make_key(const AiryQuery& q) {
        const int kind = q.kind == airy_kind::rotated_second_order ? 0 : 1;
        const long long p1 = kind == 0 ? detail::quantize(q.r) : detail::quantize(q.beta);
        const long long p2 = kind == 0 ? detail::quantize(q.theta) : 0;
        // tol bucket: decade exponent, so 2e-4 and 9e-4 share an entry
        const int bucket = static_cast<int>(std::floor(std::log10(q.tol)));
        return {kind, p1, p2, detail::quantize(q.mu), 0, bucket};
    }

    void load() {
        std::ifstream in(path_);
        if (!in) return;
        nlohmann::json j;
        try {
            in >> j;
        } catch (...) {
            return;  // unreadable cache is simply ignored
        }
        if (!j.is_array()) return;
        for (const auto& e : j) {
            try {
                if (e.value("version", 0) != kFormatVersion) continue;
                AiryQuery q;
                q.kind = e.at("kind").get<std::string>() == "rotated"
                             ? airy_kind::rotated_second_order
                             : airy_kind::generalized_first_order;
                q.r = e.value("r", 1.0);
                q.theta = e.value("theta", kPi / 2);
                q.beta = e.value("beta", 2.0);
                q.mu = e.value("mu", 0.0);
                q.tol = e.value("tol", 1e-3);
                entries_[make_key(q)] = {q.tol,
                                         e.at("value").get<double>(),
                                         e.value("converged", true),
                                         e.value("est_rel_error", 0.0),
                                         e.value("grid_L", 0.0),
                                         e.value("grid_N", 0)};
                originals_[make_key(q)] = e;
            } catch (...) {
                continue;
            }
        }
    }

    void save_locked() {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& [key, ent] : entries_) {
            auto orig = originals_.find(key);
            if (orig != originals_.end() &&
                orig->second.value("tol", 1e300) <= ent.tol * (1.0 + 1e-12)) {
                j.push_back(orig->second);
                continue;
            }
            nlohmann::json e;
            e["version"] = kFormatVersion;
            e["kind"] = std::get<0>(key) == 0 ? "rotated" : "generalized";
            if (std::get<0>(key) == 0) {
                e["r"] = static_cast<double>(std::get<1>(key)) / 1e9;
                e["theta"] = static_cast<double>(std::get<2>(key)) / 1e9;
            } else {
                e["beta"] = static_cast<double>(std::get<1>(key)) / 1e9;
            }
            e["mu"] = static_cast<double>(std::get<3>(key)) / 1e9;
            e["tol"] = ent.tol;
            e["value"] = ent.value;
            e["converged"] = ent.converged;
            e["est_rel_error"] = ent.est_rel_error;
            e["grid_L"] = ent.grid_L;
            e["grid_N"] = ent.grid_N;
            j.push_back(e);
        }
        std::ofstream out(path_);
        if (out) out << j.dump(1) << "\n";
    }

    std::string path_;
    mutable std::shared_mutex mutex_;
    std::map<key_t, entry> entries_;
    std::map<key_t, nlohmann::json> originals_;
};

// Process-wide table; file backing comes from PSEUDONORM_CACHE or an explicit
// set_airy_cache_path call before first use.
namespace detail {
inline std::string& airy_cache_path_storage() {
    static std::string path = [] {
        const char* env = std::getenv("PSEUDONORM_CACHE");
        return std::string(env ? env : "");
    }();
    return path;
}
} // namespace detail

inline void set_airy_cache_path(const std::string& path) {
    detail::airy_cache_path_storage() = path;
}

inline AiryNormTable& airy_cache() {
    static AiryNormTable table(detail::airy_cache_path_storage());
    return table;
}

// ---------------------------------------------------------------------------
// the two public evaluators

inline NormResult airy_norm(const AiryQuery& q) { return airy_cache().lookup_or_compute(q); }

inline NormResult airy_norm(airy_kind kind, double param, double theta_or_unused, double mu,
                            double tol = 2e-4) {
    AiryQuery q;
    q.kind = kind;
    if (kind == airy_kind::rotated_second_order) {
        q.r = param;
        q.theta = theta_or_unused;
    } else {
        q.beta = param;
    }
    q.mu = mu;
    q.tol = tol;
    return airy_norm(q);
}

inline NormResult airy_norm_rotated(double r, double theta, double mu, double tol = 2e-4) {
    return airy_norm(airy_kind::rotated_second_order, r, theta, mu, tol);
}

inline NormResult airy_norm_generalized(double beta, double mu, double tol = 2e-4) {
    return airy_norm(airy_kind::generalized_first_order, beta, 0.0, mu, tol);
}

// Leading term of the large-mu asymptotics; no remainder term is attached.
// Rotated: sqrt(pi/2) mu^{-1/4} exp(4/3 mu^{3/2}).
// Generalized: sqrt(pi/beta) mu^{(1-beta)/(2 beta)} exp(2 beta/(beta+1) mu^{(1+beta)/beta}).
inline double airy_norm_asym(const AiryQuery& q) {
    if (!(q.mu > 0.0)) throw mu_nonpositive_error("airy_norm_asym: mu must be positive");
    if (q.kind == airy_kind::rotated_second_order) {
        if (std::abs(q.r - 1.0) > 1e-12 || std::abs(q.theta - kPi / 2) > 1e-12)
            throw numeric_error("airy_norm_asym: closed form available for (r, theta) = (1, pi/2)");
        return std::sqrt(kPi / 2.0) * std::pow(q.mu, -0.25) *
               std::exp(4.0 / 3.0 * std::pow(q.mu, 1.5));
    }
    const double b = q.beta;
    return std::sqrt(kPi / b) * std::pow(q.mu, (1.0 - b) / (2.0 * b)) *
           std::exp(2.0 * b / (b + 1.0) * std::pow(q.mu, (1.0 + b) / b));
}

// ---------------------------------------------------------------------------
// empty point spectrum certificate (first-order operators A = -d/dx + W)

// Decides whether lambda can be an eigenvalue of -d/dx + W by quadrature of
// the squared candidate eigenfunction exp(int_0^x Re W - Re lambda x). Returns
// true when the L^2 integral provably diverges on [0, horizon] (overflow
// guard) and the growth condition still holds at the horizon; false only when
// the integral converges numerically on both tails.
inline bool point_spectrum_empty(const real_fn& w_real, cplx lambda, double horizon) {
    if (!(horizon > 1.0)) throw numeric_error("point_spectrum_empty: horizon must exceed 1");
    const double re_l = std::real(lambda);

    // log |u(x)|^2 = 2 (int_0^x Re W - Re lambda x), cumulative on both sides.
    // The exponents are compared against O(100) thresholds, so an absolute
    // quadrature tolerance is appropriate.
    const auto xs = linear_grid(0.0, horizon, 257);
    auto cum_right = integrate_cumulative(w_real, xs, 1e-9, 1e-9);
    auto g_right = [&](std::size_t i) { return 2.0 * (cum_right[i] - re_l * xs[i]); };
    auto w_neg = [&w_real](double s) { return w_real(-s); };
    auto cum_left = integrate_cumulative(w_neg, xs, 1e-9, 1e-9);
    auto g_left = [&](std::size_t i) { return 2.0 * (-cum_left[i] + re_l * xs[i]); };

    constexpr double kOverflow = 600.0;  // e^{300} guard on |u|
    double max_r = -1e300, max_l = -1e300;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        max_r = std::max(max_r, g_right(i));
        max_l = std::max(max_l, g_left(i));
    }

    if (max_r >= kOverflow || max_l >= kOverflow) {
        // Divergence certified; confirm the growth trend at the horizon.
        const bool trend = w_real(horizon) - re_l > 0.0 || re_l < 0.0 ||
                           g_right(xs.size() - 1) >= g_right(xs.size() - 2);
        if (trend) return true;
        throw inconclusive_error("point_spectrum_empty: overflow without growth trend");
    }

    // Convergence on both tails: log-integrand far negative and decreasing.
    const std::size_t last = xs.size() - 1;
    const bool conv_r = g_right(last) < -100.0 && g_right(last) < g_right(last - 1);
    const bool conv_l = g_left(last) < -100.0 && g_left(last) < g_left(last - 1);
    if (conv_r && conv_l) return false;

    throw inconclusive_error("point_spectrum_empty: neither divergence nor convergence "
                             "certified at the horizon");
}

} // namespace pseudonorm
