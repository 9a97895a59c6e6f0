#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "pseudonorm/operator_lab.hpp"

using namespace pseudonorm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

PotentialModel zero_potential(domain_kind dom) {
    PotentialModel V;
    V.v2 = [](double) { return 0.0; };
    V.d_v2 = [](double) { return 0.0; };
    V.domain = dom;
    V.label = "free";
    return V;
}

OperatorMatrix wrap(const sparse_cmat& A) {
    OperatorMatrix M;
    M.mat = A;
    M.N = static_cast<int>(A.rows());
    return M;
}

} // namespace

TEST_CASE("assemble: second-difference stencil on the standard example") {
    auto V = zero_potential(domain_kind::half_line);
    Discretization d{4.0, 3, stencil_kind::fd2};  // h = L/(N+1) = 1
    auto M = assemble(V, cplx(0.0, 0.0), d);
    Eigen::MatrixXcd D(M.mat);
    REQUIRE(M.h == 1.0);
    for (int i = 0; i < 3; ++i) {
        CHECK(D(i, i) == cplx(2.0, 0.0));
        if (i > 0) CHECK(D(i, i - 1) == cplx(-1.0, 0.0));
        if (i < 2) CHECK(D(i, i + 1) == cplx(-1.0, 0.0));
    }

    auto M5 = assemble(V, cplx(5.0, 0.0), d);
    CHECK(Eigen::MatrixXcd(M5.mat)(1, 1) == cplx(-3.0, 0.0));
}

TEST_CASE("assemble: central first difference plus |x|^2 diagonal") {
    auto V = zero_potential(domain_kind::full_line);
    Discretization d{2.0, 3, stencil_kind::fd2};  // h = 2L/(N+1) = 1, grid {-1, 0, 1}
    auto M = assemble(V, cplx(0.0, 0.0), d, FirstOrderSpec{2.0});
    Eigen::MatrixXcd D(M.mat);
    CHECK(D(0, 0) == cplx(1.0, 0.0));
    CHECK(D(1, 1) == cplx(0.0, 0.0));
    CHECK(D(2, 2) == cplx(1.0, 0.0));
    CHECK(D(0, 1) == cplx(-0.5, 0.0));
    CHECK(D(1, 0) == cplx(0.5, 0.0));
}

TEST_CASE("assemble: multiplication potentials give complex-symmetric matrices") {
    auto V = make_potential("monomial:n=2");
    for (auto st : {stencil_kind::fd2, stencil_kind::fd4}) {
        Discretization d{10.0, 64, st};
        auto M = assemble(V, cplx(0.0, 3.0), d);
        Eigen::MatrixXcd D(M.mat);
        CHECK((D - D.transpose()).norm() == 0.0);
    }
}

TEST_CASE("smallest singular value: exact small cases") {
    sparse_cmat I(5, 5);
    I.setIdentity();
    CHECK_THAT(smallest_singular_value(wrap(I)), WithinRel(1.0, 1e-12));

    sparse_cmat D(3, 3);
    D.insert(0, 0) = 1.0;
    D.insert(1, 1) = 2.0;
    D.insert(2, 2) = 3.0;
    CHECK_THAT(smallest_singular_value(wrap(D)), WithinRel(1.0, 1e-12));

    sparse_cmat Ng(2, 2);
    Ng.insert(0, 1) = 1.0;  // rank deficient
    CHECK_THAT(smallest_singular_value(wrap(Ng)), WithinAbs(0.0, 1e-14));
}

TEST_CASE("smallest singular value: iterative path matches dense on random banded") {
    std::mt19937 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        const int n = 300 + 150 * trial;
        sparse_cmat A(n, n);
        std::vector<Eigen::Triplet<cplx>> trip;
        for (int i = 0; i < n; ++i)
            for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j)
                trip.emplace_back(i, j, cplx(g(rng), g(rng)) + (i == j ? cplx(4.0, 0.0) : cplx(0.0, 0.0)));
        A.setFromTriplets(trip.begin(), trip.end());
        auto M = wrap(A);
        const double dense = smallest_singular_value(M, svd_path::dense);
        const double iter = smallest_singular_value(M, svd_path::iterative);
        INFO("n=" << n);
        CHECK_THAT(iter, WithinRel(dense, 1e-6));
    }
}

TEST_CASE("resolvent norm: free operator at lambda = -1") {
    auto V = zero_potential(domain_kind::full_line);
    auto res = resolvent_norm_numeric(V, cplx(-1.0, 0.0), 1e-3);
    CHECK(res.converged);
    CHECK_THAT(res.value, WithinAbs(1.0, 2e-3));
    CHECK(res.est_rel_error <= 1e-3);
    CHECK(res.grid_history.size() >= 2);
}

TEST_CASE("resolvent norm: harmonic oscillator at lambda = 0") {
    PotentialModel V;  // V = x^2, purely real
    V.v1 = [](double x) { return x * x; };
    V.d_v1 = [](double x) { return 2.0 * x; };
    V.v2 = [](double) { return 0.0; };
    V.d_v2 = [](double) { return 0.0; };
    V.domain = domain_kind::full_line;
    auto res = resolvent_norm_numeric(V, cplx(0.0, 0.0), 1e-3);
    CHECK(res.converged);
    CHECK_THAT(res.value, WithinAbs(1.0, 2e-3));  // lowest eigenvalue 2n+1 = 1
}

TEST_CASE("resolvent norm: conjugation symmetry") {
    // For purely imaginary V, flipping the sign of V2 and conjugating lambda
    // conjugates the whole matrix, an antiunitary equivalence.
    const double tol = 1e-3;
    auto plus = make_potential("monomial:n=2");
    PotentialModel minus = plus;
    minus.v2 = [f = plus.v2](double x) { return -f(x); };
    minus.d_v2 = [f = plus.d_v2](double x) { return -f(x); };

    Discretization d{40.0, 4096, stencil_kind::fd2};
    auto a = resolvent_norm_numeric(plus, cplx(0.0, 30.0), tol, d);
    auto b = resolvent_norm_numeric(minus, cplx(0.0, -30.0), tol, d);
    CHECK_THAT(a.value, WithinRel(b.value, 2.0 * tol));
}

TEST_CASE("stencil consistency: fd4 beats fd2 on the truncated free operator") {
    auto V = zero_potential(domain_kind::full_line);
    const double L = 20.0;
    const double exact = 1.0 / (1.0 + std::pow(3.14159265358979323846 / (2.0 * L), 2.0));
    double err2 = 0.0, err4 = 0.0;
    for (auto [st, err] : {std::pair{stencil_kind::fd2, &err2}, {stencil_kind::fd4, &err4}}) {
        Discretization d{L, 128, st};
        auto M = assemble(V, cplx(-1.0, 0.0), d);
        *err = std::abs(1.0 / smallest_singular_value(M) - exact);
    }
    CHECK(err4 <= err2);
}

TEST_CASE("resolvent norm: ladder cap reports non-convergence") {
    auto V = zero_potential(domain_kind::full_line);
    Discretization d{1.0, 4096, stencil_kind::fd2};  // L capped at 8: truncation error stays
    auto res = resolvent_norm_numeric(V, cplx(-0.01, 0.0), 1e-4, d);
    CHECK(!res.converged);
    CHECK(res.est_rel_error > 1e-4);
}

TEST_CASE("resolvent norm: tolerance domain") {
    auto V = zero_potential(domain_kind::full_line);
    CHECK_THROWS_AS(resolvent_norm_numeric(V, cplx(-1.0, 0.0), 0.5), numeric_error);
    CHECK_THROWS_AS(resolvent_norm_numeric(V, cplx(-1.0, 0.0), 1e-12), numeric_error);
}
