#include "support.hpp"

#include "flag/common.hpp"
#include "flag/laguerre.hpp"

#include <doctest.h>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>
#include <vector>

using namespace flag;

namespace {

// Direct sum L_p^(2)(x) = sum_j (-1)^j binom(p+2, p-j) x^j / j! in 50 digits.
double laguerre_direct(int p, double x)
{
    using big = boost::multiprecision::cpp_dec_float_50;
    big acc = 0;
    big term = boost::math::binomial_coefficient<double>(p + 2, p); // j = 0
    for (int j = 0; j <= p; ++j) {
        acc += term;
        // ratio of consecutive terms: -(p-j) x / ((j+1)(j+3))
        term *= -big(p - j) * big(x) / (big(j + 1) * big(j + 3));
    }
    return static_cast<double>(acc);
}

RadialCoeffs random_radial(int P, std::uint64_t seed)
{
    RadialCoeffs c;
    c.values.resize(P);
    for (int p = 0; p < P; ++p)
        c.values[p] = standard_normal(seed, p);
    return c;
}

} // namespace

TEST_CASE("laguerre_poly closed forms")
{
    CHECK(laguerre_poly(0, 0.0) == 1.0);
    CHECK(laguerre_poly(0, 17.5) == 1.0);
    CHECK(laguerre_poly(1, 0.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(laguerre_poly(2, 3.0) == doctest::Approx(-1.5).epsilon(1e-15));
    CHECK(laguerre_poly(3, 2.0) == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));
    CHECK(laguerre_poly(3, 6.0) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("laguerre_poly matches the direct sum")
{
    for (int p = 0; p < 20; ++p)
        for (double x : {0.0, 0.3, 1.0, 2.5, 7.0, 15.0}) {
            const double want = laguerre_direct(p, x);
            INFO("p=" << p << " x=" << x);
            CHECK(laguerre_poly(p, x) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
        }
}

TEST_CASE("normalized_laguerre is finite far beyond double range")
{
    std::vector<double> out(300);
    normalized_laguerre(900.0, -450.0, out);
    for (double v : out)
        CHECK(std::isfinite(v));
    // Small arguments agree with the plain recurrence.
    normalized_laguerre(2.0, 0.0, out);
    for (int p = 0; p < 10; ++p)
        CHECK(out[p] == doctest::Approx(laguerre_poly(p, 2.0) / std::sqrt((p + 1.0) * (p + 2.0))));
}

TEST_CASE("radial scheme: P=1 and P=2 closed forms")
{
    const RadialScheme s1(1, 1.0);
    REQUIRE(s1.nodes().size() == 1);
    CHECK(s1.nodes()[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(std::exp(s1.log_weights()[0]) == doctest::Approx(2.0 * std::exp(3.0)).epsilon(1e-13));
    CHECK(std::exp(s1.log_weights()[0]) == doctest::Approx(40.1711).epsilon(1e-5));

    const RadialScheme s2(2, 1.0);
    CHECK(s2.nodes()[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s2.nodes()[1] == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(std::exp(s2.log_weights()[0]) == doctest::Approx(1.5 * std::exp(2.0)).epsilon(1e-13));
    CHECK(std::exp(s2.log_weights()[1]) == doctest::Approx(0.5 * std::exp(6.0)).epsilon(1e-13));

    const RadialScheme s3(2, 0.5);
    CHECK(s3.nodes()[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s3.nodes()[1] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(s3.log_weights()[0] == doctest::Approx(s2.log_weights()[0]).epsilon(1e-15));
    CHECK(s3.log_weights()[1] == doctest::Approx(s2.log_weights()[1]).epsilon(1e-15));
}

TEST_CASE("radial scheme: nodes increasing, weights integrate x^2 e^-x")
{
    for (int P : {1, 3, 8, 33, 64, 128, 256}) {
        const RadialScheme s(P, 1.0);
        double total = 0.0;
        for (int i = 0; i < P; ++i) {
            CHECK(s.nodes()[i] > 0.0);
            if (i > 0)
                CHECK(s.nodes()[i] > s.nodes()[i - 1]);
            total += std::exp(s.log_weights()[i] - s.roots()[i]);
        }
        CHECK(total == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("radial scheme: Gauss-Laguerre exactness up to degree 2P-2")
{
    for (int P : {4, 16, 64}) {
        const RadialScheme s(P, 1.0);
        for (int n = 0; n <= 2 * P - 2; ++n) {
            // Compare in a scaled form to keep Gamma(n+3) finite.
            const double log_gamma = std::lgamma(n + 3.0);
            double acc = 0.0;
            for (int i = 0; i < P; ++i) {
                const double x = s.roots()[i];
                acc += std::exp(s.log_weights()[i] - x + n * std::log(x) - log_gamma);
            }
            INFO("P=" << P << " n=" << n);
            CHECK(std::abs(acc - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("radial scheme: weighted basis inverts the basis at the nodes")
{
    for (double tau : {1.0, 0.37, 2.5}) {
        for (int P : {1, 8, 32, 64}) {
            const RadialScheme s(P, tau);
            double worst = 0.0;
            for (int p = 0; p < P; ++p)
                for (int q = 0; q < P; ++q) {
                    double acc = 0.0;
                    for (int i = 0; i < P; ++i)
                        acc += s.weighted_basis(p, i) * s.basis_at_node(i, q);
                    worst = std::max(worst, std::abs(acc - (p == q ? 1.0 : 0.0)));
                }
            INFO("tau=" << tau << " P=" << P);
            CHECK(worst <= 1e-10);
        }
    }
}

TEST_CASE("basis functions: closed forms and orthonormality")
{
    CHECK(basis_k(1.0, 0, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(basis_k(1.0, 0, 2000.0)) < 1e-300);
    CHECK(basis_k(1.0, 3, 1e6) == 0.0);

    const RadialScheme s(32, 0.8);
    CHECK(basis_k(s, 5, 1.3) == doctest::Approx(basis_k(0.8, 5, 1.3)).epsilon(1e-15));
    std::vector<double> all(32);
    basis_k_all(0.8, 1.3, all);
    for (int p = 0; p < 32; ++p)
        CHECK(all[p] == doctest::Approx(basis_k(0.8, p, 1.3)).epsilon(1e-13));
    CHECK(s.basis_at_node(4, 7) == doctest::Approx(basis_k(0.8, 7, s.nodes()[4])).epsilon(1e-13));

    double worst = 0.0;
    for (int p = 0; p < 32; ++p)
        for (int q = 0; q < 32; ++q) {
            double acc = 0.0;
            for (int i = 0; i < 32; ++i)
                acc += s.radial_measure_weight(i) * s.basis_at_node(i, p) * s.basis_at_node(i, q);
            worst = std::max(worst, std::abs(acc - (p == q ? 1.0 : 0.0)));
        }
    CHECK(worst <= 1e-10);

    CHECK_THROWS_AS(basis_k_all(1.0, -0.1, all), std::invalid_argument);
}

TEST_CASE("radial analysis of basis functions")
{
    const RadialScheme s(16, 1.0);
    RadialSamples k0;
    RadialSamples mix;
    for (int i = 0; i < 16; ++i) {
        const double r = s.nodes()[i];
        k0.values.push_back(basis_k(1.0, 0, r));
        mix.values.push_back(basis_k(1.0, 0, r) + 2.0 * basis_k(1.0, 1, r));
    }
    const RadialCoeffs c0 = radial_analysis(s, k0);
    const RadialCoeffs c1 = radial_analysis(s, mix);
    for (int p = 0; p < 16; ++p) {
        CHECK(c0.values[p] == doctest::Approx(p == 0 ? 1.0 : 0.0).scale(1.0).epsilon(1e-13));
        const double want = p == 0 ? 1.0 : (p == 1 ? 2.0 : 0.0);
        CHECK(c1.values[p] == doctest::Approx(want).scale(1.0).epsilon(1e-13));
    }
    RadialSamples wrong;
    wrong.values.resize(15);
    CHECK_THROWS_AS(radial_analysis(s, wrong), std::invalid_argument);
}

TEST_CASE("radial round trip")
{
    for (int P : {16, 64, 128}) {
        const RadialScheme s(P, 1.0);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const RadialCoeffs f = random_radial(P, seed);
            const RadialCoeffs back = radial_analysis(s, radial_synthesis_nodes(s, f));
            double worst = 0.0;
            for (int p = 0; p < P; ++p)
                worst = std::max(worst, std::abs(back.values[p] - f.values[p]));
            INFO("P=" << P);
            CHECK(worst <= 1e-10);
        }
    }
}

TEST_CASE("radial synthesis")
{
    const RadialScheme s(12, 1.0);
    RadialCoeffs e0;
    e0.values.assign(12, 0.0);
    e0.values[0] = 1.0;
    const double r0 = 0.0;
    CHECK(radial_synthesis(s, e0, std::span(&r0, 1))[0] ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

    RadialCoeffs zero;
    zero.values.assign(12, 0.0);
    const std::vector<double> radii{0.0, 0.5, 3.0, 40.0};
    for (double v : radial_synthesis(s, zero, radii))
        CHECK(v == 0.0);

    // Analysis then synthesis at the nodes reproduces the samples.
    RadialSamples samples;
    const RadialCoeffs f = random_radial(12, 9);
    const std::vector<double> at_nodes =
        radial_synthesis(s, f, std::vector<double>(s.nodes().begin(), s.nodes().end()));
    samples.values = at_nodes;
    const RadialCoeffs g = radial_analysis(s, samples);
    const std::vector<double> again =
        radial_synthesis(s, g, std::vector<double>(s.nodes().begin(), s.nodes().end()));
    for (int i = 0; i < 12; ++i)
        CHECK(again[i] == doctest::Approx(at_nodes[i]).scale(1.0).epsilon(1e-10));

    // Lower band-limit coefficients are accepted, higher are not.
    RadialCoeffs short_c;
    short_c.values = {1.0, -0.5};
    CHECK(radial_synthesis(s, short_c, radii)[1] ==
          doctest::Approx(basis_k(1.0, 0, 0.5) - 0.5 * basis_k(1.0, 1, 0.5)));
    RadialCoeffs long_c;
    long_c.values.assign(13, 0.0);
    CHECK_THROWS_AS(radial_synthesis(s, long_c, radii), std::invalid_argument);
    const std::vector<double> negative{-1.0};
    CHECK_THROWS_AS(radial_synthesis(s, e0, negative), std::invalid_argument);
}

TEST_CASE("radial translation")
{
    const RadialScheme s(10, 1.0);
    RadialCoeffs e0;
    e0.values.assign(10, 0.0);
    e0.values[0] = 1.0;
    const RadialCoeffs t = radial_translate(s, e0, 2.2);
    CHECK(t.values[0] == doctest::Approx(basis_k(1.0, 0, 2.2)).epsilon(1e-15));
    for (int p = 1; p < 10; ++p)
        CHECK(t.values[p] == 0.0);

    RadialCoeffs zero;
    zero.values.assign(10, 0.0);
    for (double v : radial_translate(s, zero, 1.0).values)
        CHECK(v == 0.0);

    const RadialCoeffs c = random_radial(10, 4);
    const RadialCoeffs twice = radial_translate(s, radial_translate(s, c, 0.7), 3.1);
    for (int p = 0; p < 10; ++p) {
        const double want = c.values[p] * basis_k(1.0, p, 0.7) * basis_k(1.0, p, 3.1);
        CHECK(twice.values[p] == doctest::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("translated kernel peak moves outward with r")
{
    // A radially localized kernel on a ball of radius 1 (cf. translated flaglets).
    const int P = 32;
    const double tau = tau_for_radius(P, 1.0);
    const RadialScheme s(P, tau);
    CHECK(s.outer_radius() == doctest::Approx(1.0).epsilon(1e-13));

    RadialCoeffs kernel;
    kernel.values.resize(P);
    for (int p = 0; p < P; ++p)
        kernel.values[p] = std::exp(-std::pow(p / 12.0, 2));

    std::vector<double> grid;
    for (int i = 0; i <= 2000; ++i)
        grid.push_back(i * 1e-3);

    double previous = -1.0;
    for (double r : {0.2, 0.3, 0.4}) {
        const std::vector<double> profile = radial_synthesis(s, radial_translate(s, kernel, r), grid);
        const auto peak = std::max_element(profile.begin(), profile.end());
        const double where = grid[static_cast<std::size_t>(peak - profile.begin())];
        INFO("r=" << r << " peak at " << where);
        CHECK(where > previous);
        previous = where;
    }
}

TEST_CASE("radial scheme argument checks")
{
    CHECK_THROWS_AS(RadialScheme(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(RadialScheme(4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(RadialScheme(4, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(RadialScheme(4, std::nan("")), std::invalid_argument);
}

TEST_CASE("large band-limit stays finite")
{
    const RadialScheme s(512, 1.0);
    double total = 0.0;
    for (int i = 0; i < 512; ++i)
        total += std::exp(s.log_weights()[i] - s.roots()[i]);
    CHECK(total == doctest::Approx(2.0).epsilon(1e-12));
    for (int p = 0; p < 512; p += 37)
        for (double v : s.weighted_basis_row(p))
            CHECK(std::isfinite(v));
}
