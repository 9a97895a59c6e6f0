// Error taxonomy shared by all modules. Every failure a caller can act on
// gets its own type; generic numeric faults use numeric_error directly.
#pragma once

#include <stdexcept>
#include <string>

namespace pseudonorm {

struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Root finding could not enclose a sign change within the search horizon.
struct no_bracket_error : numeric_error {
    explicit no_bracket_error(const std::string& what) : numeric_error(what) {}
};

// A sampled function violated the monotonicity the bracketing relies on.
struct not_monotone_error : numeric_error {
    explicit not_monotone_error(const std::string& what) : numeric_error(what) {}
};

struct derivative_nonpositive_error : numeric_error {
    explicit derivative_nonpositive_error(const std::string& what) : numeric_error(what) {}
};

// The derivative-ratio limit l was not supplied and the samples have not
// stabilised enough to estimate it.
struct limit_unavailable_error : numeric_error {
    explicit limit_unavailable_error(const std::string& what) : numeric_error(what) {}
};

struct beta_missing_error : numeric_error {
    explicit beta_missing_error(const std::string& what) : numeric_error(what) {}
};

struct mu_nonpositive_error : numeric_error {
    explicit mu_nonpositive_error(const std::string& what) : numeric_error(what) {}
};

struct out_of_domain_error : numeric_error {
    explicit out_of_domain_error(const std::string& what) : numeric_error(what) {}
};

struct no_convergence_error : numeric_error {
    explicit no_convergence_error(const std::string& what) : numeric_error(what) {}
};

struct log_domain_error : numeric_error {
    explicit log_domain_error(const std::string& what) : numeric_error(what) {}
};

struct quadrature_error : numeric_error {
    explicit quadrature_error(const std::string& what) : numeric_error(what) {}
};

struct horizon_too_small_error : numeric_error {
    explicit horizon_too_small_error(const std::string& what) : numeric_error(what) {}
};

struct out_of_table_error : numeric_error {
    explicit out_of_table_error(const std::string& what) : numeric_error(what) {}
};

// Neither divergence nor convergence could be certified at the horizon.
struct inconclusive_error : numeric_error {
    explicit inconclusive_error(const std::string& what) : numeric_error(what) {}
};

struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct scenario_unknown_error : std::runtime_error {
    explicit scenario_unknown_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pseudonorm
