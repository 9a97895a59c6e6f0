#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pseudonorm/potential.hpp"

using namespace pseudonorm;

TEST_CASE("registry parses the built-in families") {
    CHECK(make_potential("power:p=2").beta.value() == 2.0);
    CHECK(make_potential("monomial:n=3").label == "monomial:n=3");
    CHECK(make_potential("log").v2(0.0) == 0.0);
    CHECK(make_potential("expsq").nu == 1.0);
    CHECK_THROWS_AS(make_potential("hermite"), config_error);
    CHECK_THROWS_AS(make_potential("power:p=x"), config_error);
}

TEST_CASE("turning point on exact roots") {
    auto davies = make_potential("monomial:n=2");
    CHECK_THAT(turning_point(davies, 4.0), Catch::Matchers::WithinRel(2.0, 1e-12));

    auto power2 = make_potential("power:p=2");  // <x>^2 = 1 + x^2
    CHECK_THAT(turning_point(power2, 5.0), Catch::Matchers::WithinRel(2.0, 1e-12));

    // e^{x^2} at b = e^9: closed-form inverse sqrt(log b) = 3
    auto fast = make_potential("expsq");
    const double b = std::exp(9.0);
    CHECK_THAT(turning_point(fast, b), Catch::Matchers::WithinRel(3.0, 1e-11));
}

TEST_CASE("turning point residuals and monotonicity") {
    for (const char* spec : {"power:p=0.5", "power:p=2", "monomial:n=3", "log", "expsq"}) {
        auto V = make_potential(spec);
        double prev = 0.0;
        for (double b : log_grid(2.0, spec == std::string("log") ? 8.0 : 1e6, 13)) {
            const double xb = turning_point(V, b);
            INFO(spec << " b=" << b);
            CHECK(std::abs(V.eval_v2(xb) - b) <= 1e-12 * b);
            CHECK(xb > prev);
            prev = xb;
        }
    }
    // pure monomials: x_b = b^{1/p} in closed form
    for (int n : {1, 2, 3, 5}) {
        auto V = make_potential("monomial:n=" + std::to_string(n));
        for (double b : log_grid(1.5, 1e9, 9))
            CHECK_THAT(turning_point(V, b),
                       Catch::Matchers::WithinRel(std::pow(b, 1.0 / n), 1e-10));
    }
}

TEST_CASE("turning point on the minus side") {
    auto cubic = make_potential("monomial:n=3");  // odd: |V2(-u)| = u^3
    CHECK_THAT(turning_point(cubic, 8.0, line_side::minus), Catch::Matchers::WithinRel(2.0, 1e-11));
    auto half = make_potential("monomial:n=2");
    half.domain = domain_kind::half_line;
    CHECK_THROWS_AS(turning_point(half, 8.0, line_side::minus), numeric_error);
}

TEST_CASE("turning point error paths") {
    PotentialModel bounded;
    bounded.v2 = [](double x) { return std::tanh(x); };
    bounded.d_v2 = [](double x) { return 1.0 / std::cosh(x) / std::cosh(x); };
    CHECK_THROWS_AS(turning_point(bounded, 5.0), no_bracket_error);

    PotentialModel wobble;
    wobble.v2 = [](double x) { return 2.0 + std::sin(x); };
    CHECK_THROWS_AS(turning_point(wobble, 5.0), numeric_error);
}

TEST_CASE("fourier scale") {
    auto davies = make_potential("monomial:n=2");
    CHECK_THAT(fourier_scale(davies, 1.0), Catch::Matchers::WithinRel(std::cbrt(2.0), 1e-12));
    CHECK_THAT(fourier_scale(davies, 1e6),
               Catch::Matchers::WithinRel(std::cbrt(2.0) * 10.0, 1e-12));

    auto lin = make_potential("monomial:n=1");  // t * t = 2 sqrt(a)
    CHECK_THAT(fourier_scale(lin, 4.0), Catch::Matchers::WithinRel(2.0, 1e-12));

    // monomials: t_a = (2 sqrt a)^{1/(p+1)}; increasing in a
    for (int n : {1, 2, 4}) {
        auto V = make_potential("monomial:n=" + std::to_string(n));
        double prev = 0.0;
        for (double a : log_grid(1.0, 1e10, 11)) {
            const double ta = fourier_scale(V, a);
            CHECK_THAT(ta, Catch::Matchers::WithinRel(
                               std::pow(2.0 * std::sqrt(a), 1.0 / (n + 1.0)), 1e-10));
            CHECK(ta > prev);
            prev = ta;
        }
    }
}

TEST_CASE("upsilon closed forms") {
    auto davies = make_potential("monomial:n=2");  // nu = -1
    CHECK_THAT(upsilon(davies, 8.0),
               Catch::Matchers::WithinRel(std::pow(8.0, -1.0) * std::pow(16.0, -1.0 / 3.0), 1e-12));

    auto lin = make_potential("monomial:n=1");  // V2' = 1: upsilon = 1/x
    for (double x : {2.0, 7.0, 130.0})
        CHECK_THAT(upsilon(lin, x), Catch::Matchers::WithinRel(1.0 / x, 1e-12));

    PotentialModel expo;  // V2 = e^x with nu = 0: upsilon(3) = e^{-1}
    expo.v2 = [](double x) { return std::exp(x); };
    expo.d_v2 = [](double x) { return std::exp(x); };
    expo.nu = 0.0;
    CHECK_THAT(upsilon(expo, 3.0), Catch::Matchers::WithinRel(std::exp(-1.0), 1e-12));

    PotentialModel bad;
    bad.v2 = [](double x) { return -x; };
    bad.d_v2 = [](double) { return -1.0; };
    CHECK_THROWS_AS(upsilon(bad, 2.0), derivative_nonpositive_error);
}

TEST_CASE("kappa vanishes identically for purely imaginary potentials") {
    auto V = make_potential("power:p=2");
    for (double b : log_grid(2.0, 1e8, 7)) {
        auto k = kappa(V, b);
        CHECK(k.kappa_b == 0.0);
        CHECK(k.r == 1.0);
        CHECK(k.theta == std::atan2(1.0, 0.0));
    }
}

TEST_CASE("kappa for constant derivative ratio") {
    PotentialModel V;  // V = (1+i) x: l = 1 exactly
    V.v1 = [](double x) { return x; };
    V.d_v1 = [](double) { return 1.0; };
    V.v2 = [](double x) { return x; };
    V.d_v2 = [](double) { return 1.0; };
    auto k = kappa(V, 10.0);
    CHECK_THAT(k.l, Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(k.r, Catch::Matchers::WithinRel(std::sqrt(2.0), 1e-12));
    CHECK_THAT(k.theta, Catch::Matchers::WithinRel(std::atan2(1.0, 1.0), 1e-12));
    CHECK_THAT(k.kappa_b, Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("kappa for decaying derivative ratio") {
    PotentialModel V;  // V = x^{1/2} + i x
    V.v1 = [](double x) { return std::sqrt(x); };
    V.d_v1 = [](double x) { return 0.5 / std::sqrt(x); };
    V.v2 = [](double x) { return x; };
    V.d_v2 = [](double) { return 1.0; };
    auto k = kappa(V, 100.0);
    CHECK_THAT(k.l, Catch::Matchers::WithinAbs(0.0, 1e-3));
    CHECK_THAT(k.kappa_b, Catch::Matchers::WithinAbs(0.05, 1e-3));
}

TEST_CASE("kappa demands a stabilised ratio") {
    PotentialModel V;  // ratio log-periodic: no limit
    V.v1 = [](double x) { return x * (1.1 + std::sin(std::log(x))); };
    V.d_v1 = [](double x) {
        return 1.1 + std::sin(std::log(x)) + std::cos(std::log(x));
    };
    V.v2 = [](double x) { return x; };
    V.d_v2 = [](double) { return 1.0; };
    CHECK_THROWS_AS(kappa(V, 10.0), limit_unavailable_error);
    V.l_limit = 1.1;  // user-supplied limit bypasses the estimator
    CHECK(kappa(V, 10.0).l == 1.1);
}

TEST_CASE("iota of even pure monomials is exactly zero") {
    auto V = make_potential("monomial:n=2");
    CHECK(iota(V, 3.0) == 0.0);
    CHECK(iota(V, 1000.0) == 0.0);
    auto quartic = make_potential("monomial:n=4");
    CHECK(iota(quartic, 50.0) == 0.0);
}

TEST_CASE("iota of bracket-type potentials is small and decreasing") {
    auto V = make_potential("power:p=2");
    const double i100 = iota(V, 100.0);
    CHECK(i100 <= 1e-3);
    CHECK(i100 >= 0.0);
    CHECK(iota(V, 1000.0) < i100);

    auto slow = make_potential("power:p=0.666666666666666667");
    double prev = 1e300;
    for (int k = 1; k <= 5; ++k) {
        const double v = iota(slow, std::pow(10.0, k));
        INFO("t=1e" << k);
        CHECK(v < prev);
        prev = v;
    }

    auto nobeta = make_potential("log");
    CHECK_THROWS_AS(iota(nobeta, 10.0), beta_missing_error);
}

TEST_CASE("assumption reports") {
    SECTION("bracket powers pass mode iR") {
        for (const char* spec : {"power:p=0.5", "power:p=2", "log"}) {
            auto rep = check_assumptions(make_potential(spec), assumption_mode::iR);
            INFO(spec);
            CHECK(rep.all_pass());
        }
    }
    SECTION("oscillating potential fails eventual monotonicity") {
        PotentialModel V;
        V.v2 = [](double x) { return 2.0 + std::sin(x); };
        V.d_v2 = [](double x) { return std::cos(x); };
        auto rep = check_assumptions(V, assumption_mode::iR, 1e4);
        REQUIRE(!rep.items.empty());
        CHECK(!rep.items.front().pass);
        CHECK(!rep.all_pass());
    }
    SECTION("mode R: even bracket potential passes, odd monomial fails evenness") {
        auto rep = check_assumptions(make_potential("power:p=2"), assumption_mode::R);
        CHECK(rep.all_pass());
        auto rep3 = check_assumptions(make_potential("monomial:n=3"), assumption_mode::R);
        bool even_failed = false;
        for (const auto& it : rep3.items)
            if (it.name == "V2 even" && !it.pass) even_failed = true;
        CHECK(even_failed);
    }
}
