#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "rslab/profile.hpp"

using namespace rslab;

namespace {

// forward differences of a scalar function, for cross-checking jet output
template <typename F>
double fd1(F f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}
template <typename F>
double fd2(F f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace

TEST_CASE("jet arithmetic reproduces closed-form derivatives") {
    const Jet3 x = Jet3::variable(0.7);

    SUBCASE("product rule") {
        // d/dx [x^2 sinh x] = 2x sinh x + x^2 cosh x
        const Jet3 g = x * x * sinh(x);
        CHECK(g.f == doctest::Approx(0.49 * std::sinh(0.7)).epsilon(1e-14));
        CHECK(g.d1 == doctest::Approx(2 * 0.7 * std::sinh(0.7) + 0.49 * std::cosh(0.7))
                          .epsilon(1e-14));
    }

    SUBCASE("exp/log inverse pair") {
        const Jet3 g = log(exp(x) * exp(x));
        CHECK(g.f == doctest::Approx(1.4).epsilon(1e-15));
        CHECK(g.d1 == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(g.d2 == doctest::Approx(0.0).epsilon(1e-13));
        CHECK(std::abs(g.d3) < 1e-12);
    }

    SUBCASE("quotient and chain") {
        // h(x) = sin(x)/x : h' = (x cos x - sin x)/x^2
        const Jet3 g = sin(x) / x;
        const double exact_d1 = (0.7 * std::cos(0.7) - std::sin(0.7)) / 0.49;
        CHECK(g.d1 == doctest::Approx(exact_d1).epsilon(1e-14));
        auto h = [](double t) { return std::sin(t) / t; };
        CHECK(g.d2 == doctest::Approx(fd2(h, 0.7, 1e-5)).epsilon(1e-4));
    }

    SUBCASE("pow matches exp(p log)") {
        const Jet3 a = pow(x + 1.0, 2.5);
        const Jet3 b = exp(2.5 * log(x + 1.0));
        CHECK(a.f == doctest::Approx(b.f).epsilon(1e-14));
        CHECK(a.d1 == doctest::Approx(b.d1).epsilon(1e-13));
        CHECK(a.d2 == doctest::Approx(b.d2).epsilon(1e-12));
        CHECK(a.d3 == doctest::Approx(b.d3).epsilon(1e-12));
    }
}

TEST_CASE("preset profiles: values and derivatives") {
    SUBCASE("euclidean warp is the identity") {
        const RadialProfile p = make_profile("euclidean", {}, 10.0);
        const Jet3 j = p.eval(3.2);
        CHECK(j.f == 3.2);
        CHECK(j.d1 == 1.0);
        CHECK(j.d2 == 0.0);
        CHECK(j.d3 == 0.0);
    }

    SUBCASE("hyperbolic_like warp is sinh") {
        const RadialProfile p = make_profile("hyperbolic_like", {}, 10.0);
        CHECK(p.value(1.3) == doctest::Approx(std::sinh(1.3)).epsilon(1e-15));
        CHECK(p.deriv1(1.3) == doctest::Approx(std::cosh(1.3)).epsilon(1e-15));
        CHECK(p.deriv2(1.3) == doctest::Approx(std::sinh(1.3)).epsilon(1e-15));
        CHECK(p.deriv3(1.3) == doctest::Approx(std::cosh(1.3)).epsilon(1e-15));
    }

    SUBCASE("gaussian density and its log-derivatives") {
        const RadialProfile w = make_profile("gaussian_density", {}, 10.0);
        const double r = 1.7;
        const double v = std::exp(-r * r / 2.0);
        CHECK(w.value(r) == doctest::Approx(v).epsilon(1e-15));
        CHECK(w.deriv1(r) == doctest::Approx(-r * v).epsilon(1e-14));
        CHECK(w.deriv2(r) == doctest::Approx((r * r - 1.0) * v).epsilon(1e-13));
    }

    SUBCASE("power density (1+r^2)^{q/2}") {
        const RadialProfile w = make_profile("power_density", {3.0}, 10.0);
        const double r = 0.9;
        auto f = [](double t) { return std::pow(1.0 + t * t, 1.5); };
        CHECK(w.value(r) == doctest::Approx(f(r)).epsilon(1e-15));
        CHECK(w.deriv1(r) == doctest::Approx(fd1(f, r, 1e-6)).epsilon(1e-8));
        CHECK(w.deriv2(r) == doctest::Approx(fd2(f, r, 1e-5)).epsilon(1e-4));
    }

    SUBCASE("capped power warp: r at the pole, ~r^beta at infinity") {
        const RadialProfile p = make_profile("capped_power", {0.5}, 1e6);
        // phi(r) = r (1+r^2)^{-(1-beta)/2}
        auto f = [](double t) { return t * std::pow(1.0 + t * t, -0.25); };
        for (double r : {0.3, 2.0, 50.0}) {
            CHECK(p.value(r) == doctest::Approx(f(r)).epsilon(1e-14));
            CHECK(p.deriv1(r) == doctest::Approx(fd1(f, r, 1e-6 * r)).epsilon(1e-7));
        }
        // small-radius behavior: phi/r -> 1
        CHECK(p.value(1e-8) / 1e-8 == doctest::Approx(1.0).epsilon(1e-12));
        // growth exponent at large radius: log phi / log r -> beta
        CHECK(std::log(p.value(1e5)) / std::log(1e5) == doctest::Approx(0.5).epsilon(1e-3));
    }

    SUBCASE("polynomial") {
        const RadialProfile p = make_profile("polynomial", {1.0, 0.0, -0.5, 0.25}, 10.0);
        // 1 - r^2/2 + r^3/4
        CHECK(p.value(2.0) == doctest::Approx(1.0 - 2.0 + 2.0).epsilon(1e-15));
        CHECK(p.deriv1(2.0) == doctest::Approx(-2.0 + 3.0).epsilon(1e-15));
        CHECK(p.deriv2(2.0) == doctest::Approx(-1.0 + 3.0).epsilon(1e-15));
        CHECK(p.deriv3(2.0) == doctest::Approx(1.5).epsilon(1e-15));
    }

    SUBCASE("unknown preset throws") {
        CHECK_THROWS_AS(make_profile("nonsense", {}, 1.0), std::domain_error);
    }
}

TEST_CASE("profile validation") {
    const double R = 5.0;
    CHECK_NOTHROW(make_profile("euclidean", {}, R).validate_as_warp());
    CHECK_NOTHROW(make_profile("hyperbolic_like", {}, R).validate_as_warp());
    CHECK_NOTHROW(make_profile("capped_power", {0.7}, R).validate_as_warp());
    // a constant is a density but not a warp (phi(0) must vanish)
    CHECK_THROWS_AS(make_profile("const", {1.0}, R).validate_as_warp(), std::domain_error);
    CHECK_NOTHROW(make_profile("const", {1.0}, R).validate_as_density());
    CHECK_NOTHROW(make_profile("gaussian_density", {}, R).validate_as_density());
    // negative constant is not a density
    CHECK_THROWS_AS(make_profile("const", {-1.0}, R).validate_as_density(), std::domain_error);
    CHECK(make_profile("euclidean", {}, R).exact_derivatives());
}

TEST_CASE("spline profiles interpolate tabulated data") {
    std::vector<double> r, v;
    for (int i = 0; i <= 200; ++i) {
        const double x = 3.0 * i / 200;
        r.push_back(x);
        v.push_back(std::exp(-x * x / 2.0));
    }
    const RadialProfile s = make_spline_profile(r, v, 3.0);
    CHECK_FALSE(s.exact_derivatives());
    // natural cubic: O(h^4) values, O(h^2)-ish derivatives away from the ends
    double worst_v = 0.0, worst_d = 0.0;
    for (double x = 0.3; x <= 2.7; x += 0.071) {
        worst_v = std::max(worst_v, std::abs(s.value(x) - std::exp(-x * x / 2.0)));
        worst_d = std::max(worst_d, std::abs(s.deriv1(x) + x * std::exp(-x * x / 2.0)));
    }
    CHECK(worst_v < 1e-7);
    CHECK(worst_d < 1e-4);

    SUBCASE("round-trips through CSV") {
        const char* path = "spline_roundtrip_test.csv";
        {
            std::ofstream out(path);
            out.precision(17);
            out << "r,value\n";
            for (std::size_t i = 0; i < r.size(); ++i) out << r[i] << "," << v[i] << "\n";
        }
        const RadialProfile loaded = load_spline_profile_csv(path, 3.0);
        CHECK(loaded.value(1.234) == doctest::Approx(s.value(1.234)).epsilon(1e-12));
        std::remove(path);
    }
}

TEST_CASE("preset list covers every constructible preset") {
    const auto names = profile_preset_names();
    for (const auto& n : names) {
        if (n == "spline") continue;  // needs data, not constructible from params
        std::vector<double> params;
        if (n == "capped_power") params = {0.5};
        if (n == "power_density") params = {1.0};
        if (n == "const") params = {1.0};
        if (n == "polynomial") params = {1.0, 1.0};
        CHECK_NOTHROW(make_profile(n, params, 2.0));
    }
}
