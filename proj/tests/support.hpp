#pragma once

// Independent oracles and helpers shared by the test binaries.

#include "flag/ball.hpp"
#include "flag/denoise.hpp"
#include "flag/laguerre.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace flag::test {

inline double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline double max_abs(std::span<const cplx> a)
{
    double worst = 0.0;
    for (const cplx& v : a)
        worst = std::max(worst, std::abs(v));
    return worst;
}

/// N(0,1) coefficients with the conjugate symmetry of a real signal.
inline FlagCoeffs random_real_coeffs(int L, int P, std::uint64_t seed)
{
    FlagCoeffs f(L, P);
    std::uint64_t c = 0;
    for (int p = 0; p < P; ++p)
        for (int ell = 0; ell < L; ++ell)
            for (int m = 0; m <= ell; ++m) {
                const double re = standard_normal(seed, c++);
                const double im = standard_normal(seed, c++);
                if (m == 0) {
                    f.at(ell, 0, p) = re;
                    continue;
                }
                f.at(ell, m, p) = {re, im};
                f.at(ell, -m, p) = ((m % 2) ? -1.0 : 1.0) * cplx(re, -im);
            }
    return f;
}

inline std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed)
{
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = {standard_normal(seed, 2 * i), standard_normal(seed, 2 * i + 1)};
    return v;
}

/// int_0^R g(r) dr by 30-point Gauss-Legendre on panels of width <= h.
template <class F>
double panel_integral(F g, double R, double h)
{
    const int n = std::max(1, static_cast<int>(std::ceil(R / h)));
    double acc = 0.0;
    double carry = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = R * i / n;
        const double b = R * (i + 1) / n;
        const double term = boost::math::quadrature::gauss<double, 30>::integrate(g, a, b);
        // Kahan summation across panels
        const double y = term - carry;
        const double t = acc + y;
        carry = (t - acc) - y;
        acc = t;
    }
    return acc;
}

/// int_0^inf r^2 K_p(r) j_ell(k r) dr by brute-force quadrature.
inline double bessel_projection_oracle(int ell, int p, double k, double tau)
{
    const double R = tau * (220.0 + 8.0 * p);
    auto g = [=](double r) {
        return r * r * basis_k(tau, p, r) * boost::math::sph_bessel(ell, k * r);
    };
    const double h = k > 0.0 ? std::min(0.5 * tau, 1.0 / k) : 0.5 * tau;
    return panel_integral(g, R, h);
}

/// Same integral by adaptive Gauss-Kronrod on bounded panels.
inline double bessel_projection_adaptive(int ell, int p, double k, double tau)
{
    const double R = tau * (160.0 + 8.0 * p);
    auto g = [=](double r) {
        return r * r * basis_k(tau, p, r) * boost::math::sph_bessel(ell, k * r);
    };
    const double h = k > 0.0 ? std::min(2.0 * tau, 4.0 / k) : 2.0 * tau;
    const int n = std::max(1, static_cast<int>(std::ceil(R / h)));
    double acc = 0.0;
    double carry = 0.0;
    for (int i = 0; i < n; ++i) {
        const double term = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            g, R * i / n, R * (i + 1) / n, 8, 1e-13);
        const double y = term - carry;
        const double t = acc + y;
        carry = (t - acc) - y;
        acc = t;
    }
    return acc;
}

} // namespace flag::test
