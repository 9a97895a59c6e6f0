#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "pseudonorm/airy.hpp"

using namespace pseudonorm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("lambert_w0: exact points and residuals") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK_THAT(lambert_w0(std::exp(1.0)), WithinRel(1.0, 1e-14));
    CHECK_THAT(lambert_w0(-std::exp(-1.0)), WithinAbs(-1.0, 1e-6));

    const double w10 = lambert_w0(10.0);
    CHECK_THAT(w10 * std::exp(w10), WithinRel(10.0, 1e-13));

    for (double x : log_grid(1e-3, 1e12, 200)) {
        const double w = lambert_w0(x);
        INFO("x=" << x);
        REQUIRE(std::abs(w * std::exp(w) - x) <= 1e-13 * x);
    }
    // negative section of the principal branch
    for (double x : {-0.36, -0.2, -0.05}) {
        const double w = lambert_w0(x);
        CHECK_THAT(w * std::exp(w), WithinAbs(x, 1e-14));
        CHECK(w >= -1.0);
    }
    CHECK_THROWS_AS(lambert_w0(-0.5), out_of_domain_error);
}

TEST_CASE("lambert_w0: Hoorfar-Hassani bounds hold pointwise") {
    for (double x : log_grid(std::exp(1.0), 1e6, 300)) {
        const double w = lambert_w0(x);
        const double l1 = std::log(x), l2 = std::log(l1);
        const double lo = l1 - l2 + 0.5 * l2 / l1;
        const double hi = l1 - l2 + std::exp(1.0) / (std::exp(1.0) - 1.0) * l2 / l1;
        INFO("x=" << x);
        REQUIRE(w >= lo - 1e-12 * std::abs(lo));
        REQUIRE(w <= hi + 1e-12 * std::abs(hi));
    }
}

TEST_CASE("airy_norm: reference constants from the literature") {
    set_airy_cache_path("");
    auto rot = airy_norm_rotated(1.0, kPi / 2, 0.0);
    CHECK(rot.converged);
    CHECK_THAT(rot.value, WithinRel(1.33377, 5e-3));

    auto gen = airy_norm_generalized(2.0 / 3.0, 0.0);
    CHECK(gen.converged);
    CHECK_THAT(gen.value, WithinRel(1.12648, 5e-3));
}

TEST_CASE("airy_norm: Fourier duality between A_2 and the complex Airy operator") {
    const double a2 = airy_norm_generalized(2.0, 0.0).value;
    const double rot = airy_norm_rotated(1.0, kPi / 2, 0.0).value;
    CHECK(std::abs(a2 - rot) / rot <= 1e-3);
}

TEST_CASE("airy_norm: dilation scaling law in r") {
    const double base = airy_norm_rotated(1.0, kPi / 2, 0.0).value;
    for (double r : {0.5, 2.0, 5.0}) {
        const double v = airy_norm_rotated(r, kPi / 2, 0.0).value;
        INFO("r=" << r);
        CHECK(std::abs(v - std::pow(r, -2.0 / 3.0) * base) / v <= 1e-3);
    }
}

TEST_CASE("airy_norm: adjoint symmetry in theta") {
    const double plus = airy_norm_rotated(1.0, kPi / 2, 1.0).value;
    const double minus = airy_norm_rotated(1.0, -kPi / 2, 1.0).value;
    CHECK(std::abs(plus - minus) / plus <= 1e-3);
}

TEST_CASE("airy_norm_asym: closed-form spot values") {
    AiryQuery rot;
    rot.mu = 1.0;
    CHECK_THAT(airy_norm_asym(rot), WithinRel(std::sqrt(kPi / 2.0) * std::exp(4.0 / 3.0), 1e-12));
    CHECK_THAT(airy_norm_asym(rot), WithinRel(4.7546, 2e-4));

    AiryQuery gen;
    gen.kind = airy_kind::generalized_first_order;
    gen.beta = 1.0;
    gen.mu = 1.0;
    CHECK_THAT(airy_norm_asym(gen), WithinRel(std::sqrt(kPi) * std::exp(1.0), 1e-12));
    CHECK_THAT(airy_norm_asym(gen), WithinRel(4.8183, 2e-4));

    rot.mu = 4.0;
    CHECK_THAT(airy_norm_asym(rot),
               WithinRel(std::sqrt(kPi / 2.0) * std::pow(4.0, -0.25) * std::exp(32.0 / 3.0), 1e-12));

    rot.mu = 0.0;
    CHECK_THROWS_AS(airy_norm_asym(rot), mu_nonpositive_error);
}

TEST_CASE("airy_norm vs airy_norm_asym: agreement improves with mu") {
    double prev = 1e300;
    for (double mu : {2.0, 3.0, 4.0}) {
        AiryQuery q;
        q.mu = mu;
        const double num = airy_norm(q).value;
        const double ratio = std::abs(num / airy_norm_asym(q) - 1.0);
        INFO("mu=" << mu);
        CHECK(ratio < prev);
        prev = ratio;
    }
}

TEST_CASE("airy cache: quantized keys and persistence") {
    namespace fs = std::filesystem;
    const auto path = fs::temp_directory_path() / "pseudonorm_cache_test.json";
    fs::remove(path);
    {
        AiryNormTable table(path.string());
        AiryQuery q;
        q.tol = 1e-3;
        const double v1 = table.lookup_or_compute(q).value;
        // a float-noise perturbation below the 1e-9 quantum must hit the cache
        AiryQuery q2 = q;
        q2.mu = 1e-12;
        CHECK(table.lookup_or_compute(q2).value == v1);
        CHECK(table.size() == 1);
    }
    {
        AiryNormTable table(path.string());  // reloaded from disk
        AiryQuery q;
        q.tol = 1e-3;
        CHECK(table.size() == 1);
        const double v = table.lookup_or_compute(q).value;
        CHECK_THAT(v, WithinRel(1.33377, 5e-3));
        CHECK(table.size() == 1);

        // tightening the tolerance by a decade invalidates the entry
        AiryQuery tight = q;
        tight.tol = 1e-4;
        const double vt = table.lookup_or_compute(tight).value;
        CHECK_THAT(vt, WithinRel(v, 2e-3));
        CHECK(table.size() == 2);
    }
    fs::remove(path);
}

TEST_CASE("point spectrum emptiness certificates") {
    SECTION("growing potentials certify emptiness") {
        for (double beta : {0.5, 1.0, 2.0}) {
            auto W = [beta](double x) { return std::pow(std::abs(x), beta); };
            CHECK(point_spectrum_empty(W, cplx(1.0, 1.0), 200.0));
            CHECK(point_spectrum_empty(W, cplx(0.0, 0.0), 200.0));
        }
    }
    SECTION("W = 0 with negative real shift still has no eigenfunction") {
        auto W = [](double) { return 0.0; };
        CHECK(point_spectrum_empty(W, cplx(-1.0, 0.0), 300.0));
    }
    SECTION("integrable candidate on both tails returns false") {
        // step-down profile: W above Re lambda on the left, below it on the
        // right, so exp(int W - lambda x) is L^2 and lambda is an eigenvalue
        auto W = [](double x) { return 1.0 - std::tanh(x); };
        CHECK(!point_spectrum_empty(W, cplx(1.0, 0.0), 300.0));
    }
    SECTION("inconclusive at a too-small horizon") {
        auto W = [](double x) { return std::abs(x) > 1e4 ? 1.0 : 0.0; };
        CHECK_THROWS_AS(point_spectrum_empty(W, cplx(0.0, 0.0), 50.0), inconclusive_error);
    }
}
