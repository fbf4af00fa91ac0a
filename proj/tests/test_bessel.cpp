#include "support.hpp"

#include "flag/bessel.hpp"

#include <doctest.h>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <cmath>

using namespace flag;

namespace {

// Values from 30-digit mpmath quadrature of int r^2 K_p(r) j_ell(k r) dr, tau = 1.
struct Frozen {
    int ell;
    int p;
    double k;
    double value;
};
constexpr Frozen kFrozen[] = {
    {0, 1, 0.7, 1.71268753526091033064},
    {3, 2, 1.0, -0.897264489816618880},
    {8, 0, 5.0, 0.0755925790565048103},
    {8, 8, 5.0, -0.0134772929540793208},
    {2, 5, 0.1, -13.5405200995033823},
    {5, 3, 2.0, -0.255498863764392930},
};

} // namespace

TEST_CASE("Laguerre monomial coefficients match binomials")
{
    const BesselBridge b(1, 32, 1.0);
    for (int p = 0; p < 32; ++p) {
        CHECK(b.laguerre_coefficient(p, 0) == doctest::Approx((p + 1.0) * (p + 2.0) / 2.0));
        for (int j = 0; j <= p; ++j) {
            const double want = ((j % 2) ? -1.0 : 1.0) *
                                boost::math::binomial_coefficient<double>(p + 2, p - j) /
                                boost::math::factorial<double>(j);
            CHECK(b.laguerre_coefficient(p, j) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("moments at k = 0 have closed forms")
{
    for (double tau : {1.0, 0.5, 2.0}) {
        const BesselBridge b(4, 4, tau);
        for (int j = 0; j < 12; ++j) {
            const double want = std::pow(2.0, j + 1) * std::tgamma(j + 1.0) * std::pow(tau, 1.5);
            CHECK(b.moment(0, j, 0.0).value == doctest::Approx(want).epsilon(1e-13));
            const double general = std::sqrt(pi) * std::pow(2.0, j) * std::pow(tau, 1.5) *
                                   std::tgamma(j + 1.0) / std::tgamma(1.5);
            CHECK(b.moment(0, j, 0.0).value == doctest::Approx(general).epsilon(1e-13));
        }
        for (int ell = 1; ell < 4; ++ell)
            CHECK(b.moment(ell, 3, 0.0).value == 0.0);
    }
}

TEST_CASE("jlp special values")
{
    const BesselBridge b(10, 10, 1.0);
    const BridgeValue v = b.jlp(0, 0, 0.0);
    CHECK(v.value == doctest::Approx(8.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(v.precise());
    for (int ell = 1; ell < 10; ++ell)
        for (int p = 0; p < 10; ++p)
            CHECK(b.jlp(ell, p, 0.0).value == 0.0);
    CHECK_THROWS_AS(b.jlp(10, 0, 1.0), std::out_of_range);
    CHECK_THROWS_AS(b.jlp(0, 10, 1.0), std::out_of_range);
    CHECK_THROWS_AS(b.jlp(0, 0, -1.0), std::invalid_argument);
}

TEST_CASE("jlp matches frozen high-precision values")
{
    const BesselBridge b(9, 9, 1.0);
    for (const Frozen& f : kFrozen) {
        const BridgeValue v = b.jlp(f.ell, f.p, f.k);
        INFO("ell=" << f.ell << " p=" << f.p << " k=" << f.k);
        CHECK(v.precise());
        CHECK(v.value == doctest::Approx(f.value).epsilon(1e-9));
    }
}

TEST_CASE("jlp matches the quadrature oracle")
{
    for (double tau : {1.0, 0.6}) {
        const BesselBridge b(7, 7, tau);
        for (int ell : {0, 1, 4, 6})
            for (int p : {0, 2, 6})
                for (double k : {0.05, 0.7, 1.9, 4.0}) {
                    const BridgeValue v = b.jlp(ell, p, k);
                    if (!v.precise())
                        continue;
                    const double want = test::bessel_projection_oracle(ell, p, k, tau);
                    INFO("tau=" << tau << " ell=" << ell << " p=" << p << " k=" << k);
                    CHECK(v.value == doctest::Approx(want).epsilon(1e-7));
                }
    }
}

TEST_CASE("precision flag is honest at high p")
{
    // Either the value is flagged, or it matches the oracle.
    const BesselBridge b(6, 40, 1.0);
    int flagged = 0;
    for (int p : {20, 30, 39})
        for (double k : {0.5, 3.0, 8.0}) {
            const BridgeValue v = b.jlp(5, p, k);
            if (!v.precise()) {
                ++flagged;
                continue;
            }
            const double want = test::bessel_projection_oracle(5, p, k, 1.0);
            INFO("p=" << p << " k=" << k << " rel_error=" << v.rel_error);
            CHECK(v.value == doctest::Approx(want).epsilon(1e-7).scale(1e-6));
        }
    MESSAGE("flagged " << flagged << " of 9 high-p points");
}

TEST_CASE("Fourier-Bessel coefficients")
{
    const BesselBridge b(4, 4, 1.0);
    const std::vector<double> ks{0.0, 0.5, 1.0, 2.0};

    const FourierBesselTable zero = fourier_bessel(b, FlagCoeffs(4, 4), ks);
    CHECK(test::max_abs(zero.values) == 0.0);

    FlagCoeffs unit(4, 4);
    unit.at(0, 0, 0) = 1.0;
    const FourierBesselTable t = fourier_bessel(b, unit, ks);
    CHECK(t.at(0, 0, 0).real() == doctest::Approx(16.0 / std::sqrt(pi)).epsilon(1e-14));
    CHECK(t.at(0, 0, 0).real() == doctest::Approx(9.0270).epsilon(1e-4));
    CHECK(t.precise());

    // f(r, omega) = K_0(r): f_000 = 2 sqrt(pi) and f~_00(k) = 2 / (1/4 + k^2)^2.
    FlagCoeffs k0(4, 4);
    k0.at(0, 0, 0) = 2.0 * std::sqrt(pi);
    const FourierBesselTable ft = fourier_bessel(b, k0, ks);
    for (std::size_t q = 1; q < ks.size(); ++q) {
        const double k = ks[q];
        const double closed = 2.0 / std::pow(0.25 + k * k, 2);
        auto integrand = [k](double r) {
            return r * r * 2.0 * std::sqrt(pi) * basis_k(1.0, 0, r) * boost::math::sph_bessel(0, k * r);
        };
        const double oracle = std::sqrt(2.0 / pi) * test::panel_integral(integrand, 200.0, 0.5);
        CHECK(ft.at(q, 0, 0).real() == doctest::Approx(oracle).epsilon(1e-7));
        CHECK(ft.at(q, 0, 0).real() == doctest::Approx(closed).epsilon(1e-12));
    }
    CHECK(ft.at(1, 0, 0).real() == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(ft.at(2, 0, 0).real() == doctest::Approx(1.28).epsilon(1e-12));
    CHECK(ft.at(3, 0, 0).real() == doctest::Approx(0.110726643598615916955).epsilon(1e-12));

    CHECK_THROWS_AS(fourier_bessel(b, FlagCoeffs(5, 4), ks), std::invalid_argument);
    const std::vector<double> bad{-1.0};
    CHECK_THROWS_AS(fourier_bessel(b, unit, bad), std::invalid_argument);
}

TEST_CASE("Fourier-Bessel transform is linear in the coefficients")
{
    const BesselBridge b(5, 5, 0.8);
    const FlagCoeffs f = test::random_real_coeffs(5, 5, 6);
    const std::vector<double> ks{0.3, 1.7};
    const FourierBesselTable t = fourier_bessel(b, f, ks);
    for (std::size_t q = 0; q < ks.size(); ++q)
        for (int ell = 0; ell < 5; ++ell)
            for (int m = -ell; m <= ell; ++m) {
                cplx want = 0.0;
                for (int p = 0; p < 5; ++p)
                    want += std::sqrt(2.0 / pi) * f.at(ell, m, p) * b.jlp(ell, p, ks[q]).value;
                CHECK(std::abs(t.at(q, ell, m) - want) <= 1e-12 * (1.0 + std::abs(want)));
            }
}
