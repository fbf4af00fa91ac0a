#include "flag/sht.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace flag {

namespace {

std::size_t tri(int ell, int m) { return static_cast<std::size_t>(ell) * (ell + 1) / 2 + m; }

} // namespace

void gauss_legendre(int n, std::span<double> nodes, std::span<double> weights)
{
    if (n < 1)
        throw std::invalid_argument("Gauss-Legendre order must be >= 1");
    for (int i = 0; i < n; ++i) {
        // Initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n(x), p0 = P_{n-1}(x)
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon()) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw NumericalError("Gauss-Legendre node did not converge (n=" + std::to_string(n) + ")");
        // Recompute derivative at the final node for the weight.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

void normalized_legendre(int L, double theta, std::span<double> out)
{
    const double x = std::cos(theta);
    const double s = std::sin(theta);
    double pmm = 1.0 / std::sqrt(4.0 * pi);
    for (int m = 0; m < L; ++m) {
        if (m > 0)
            pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
        out[tri(m, m)] = pmm;
        if (m + 1 >= L)
            continue;
        double prev2 = pmm;
        double prev1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
        out[tri(m + 1, m)] = prev1;
        const double m2 = static_cast<double>(m) * m;
        for (int ell = m + 2; ell < L; ++ell) {
            const double l2 = static_cast<double>(ell) * ell;
            const double lm1 = ell - 1.0;
            const double a = std::sqrt((4.0 * l2 - 1.0) / (l2 - m2));
            const double b = std::sqrt((lm1 * lm1 - m2) / (4.0 * lm1 * lm1 - 1.0));
            const double cur = a * (x * prev1 - b * prev2);
            out[tri(ell, m)] = cur;
            prev2 = prev1;
            prev1 = cur;
        }
    }
}

std::vector<cplx> spherical_harmonics(int L, double theta, double phi)
{
    std::vector<double> plm(static_cast<std::size_t>(L) * (L + 1) / 2);
    normalized_legendre(L, theta, plm);
    std::vector<cplx> out(static_cast<std::size_t>(L) * L);
    for (int ell = 0; ell < L; ++ell) {
        for (int m = 0; m <= ell; ++m) {
            const cplx y = plm[tri(ell, m)] * std::polar(1.0, m * phi);
            out[lm_index(ell, m)] = y;
            if (m > 0)
                out[lm_index(ell, -m)] = ((m % 2) ? -1.0 : 1.0) * std::conj(y);
        }
    }
    return out;
}

AngularScheme::AngularScheme(int L) : L_(L)
{
    if (L < 1)
        throw std::invalid_argument("angular band-limit L must be >= 1");
    cos_thetas_.resize(L);
    weights_.resize(L);
    gauss_legendre(L, cos_thetas_, weights_);
    thetas_.resize(L);
    for (int t = 0; t < L; ++t)
        thetas_[t] = std::acos(cos_thetas_[t]);

    const int nphi = n_phi();
    phis_.resize(nphi);
    twiddles_.resize(nphi);
    for (int k = 0; k < nphi; ++k) {
        phis_[k] = 2.0 * pi * k / nphi;
        twiddles_[k] = std::polar(1.0, -2.0 * pi * k / nphi);
    }

    const std::size_t n = triangle_size();
    legendre_.resize(n * L);
    for (int t = 0; t < L; ++t)
        normalized_legendre(L, thetas_[t], {legendre_.data() + t * n, n});
}

SphCoeffs sht_forward(const AngularScheme& scheme, std::span<const cplx> samples)
{
    if (samples.size() != scheme.n_samples())
        throw std::invalid_argument("angular grid shape does not match the scheme");
    const int L = scheme.band_limit();
    const int nphi = scheme.n_phi();
    const auto tw = scheme.twiddles();
    const auto w = scheme.theta_weights();
    SphCoeffs out(L);
    std::vector<cplx> fm(nphi);
    const double dphi = 2.0 * pi / nphi;

    for (int t = 0; t < scheme.n_theta(); ++t) {
        const cplx* ring = samples.data() + static_cast<std::size_t>(t) * nphi;
        // fm[q] = dphi * sum_k f_k e^{-i q phi_k}, q = m mod nphi
        for (int q = 0; q < nphi; ++q) {
            cplx acc = 0.0;
            int idx = 0;
            for (int k = 0; k < nphi; ++k) {
                acc += ring[k] * tw[idx];
                idx += q;
                if (idx >= nphi)
                    idx -= nphi;
            }
            fm[q] = acc * dphi * w[t];
        }
        const auto plm = scheme.legendre_ring(t);
        for (int m = 0; m < L; ++m) {
            const cplx pos = fm[m];
            const cplx neg = fm[(nphi - m) % nphi];
            const double sign = (m % 2) ? -1.0 : 1.0;
            for (int ell = m; ell < L; ++ell) {
                const double lam = plm[tri(ell, m)];
                out.values[lm_index(ell, m)] += lam * pos;
                if (m > 0)
                    out.values[lm_index(ell, -m)] += sign * lam * neg;
            }
        }
    }
    return out;
}

SphCoeffs sht_forward(const AngularScheme& scheme, const SphGrid& grid)
{
    if (grid.n_theta != scheme.n_theta() || grid.n_phi != scheme.n_phi())
        throw std::invalid_argument("angular grid shape does not match the scheme");
    return sht_forward(scheme, std::span<const cplx>(grid.values));
}

void sht_inverse(const AngularScheme& scheme, const SphCoeffs& coeffs, std::span<cplx> out)
{
    const int Lc = coeffs.L;
    if (Lc > scheme.band_limit())
        throw std::invalid_argument("coefficient band-limit exceeds the angular scheme");
    if (out.size() != scheme.n_samples())
        throw std::invalid_argument("output grid shape does not match the scheme");
    const int nphi = scheme.n_phi();
    const auto tw = scheme.twiddles();
    std::vector<cplx> gm(nphi);

    for (int t = 0; t < scheme.n_theta(); ++t) {
        std::fill(gm.begin(), gm.end(), cplx{});
        const auto plm = scheme.legendre_ring(t);
        for (int m = 0; m < Lc; ++m) {
            cplx pos = 0.0;
            cplx neg = 0.0;
            for (int ell = m; ell < Lc; ++ell) {
                const double lam = plm[tri(ell, m)];
                pos += lam * coeffs.values[lm_index(ell, m)];
                if (m > 0)
                    neg += lam * coeffs.values[lm_index(ell, -m)];
            }
            gm[m] = pos;
            if (m > 0)
                gm[nphi - m] = ((m % 2) ? -1.0 : 1.0) * neg;
        }
        cplx* ring = out.data() + static_cast<std::size_t>(t) * nphi;
        for (int k = 0; k < nphi; ++k) {
            cplx acc = 0.0;
            int idx = 0;
            for (int q = 0; q < nphi; ++q) {
                acc += gm[q] * std::conj(tw[idx]);
                idx += k;
                if (idx >= nphi)
                    idx -= nphi;
            }
            ring[k] = acc;
        }
    }
}

SphGrid sht_inverse(const AngularScheme& scheme, const SphCoeffs& coeffs)
{
    SphGrid grid(scheme);
    sht_inverse(scheme, coeffs, grid.values);
    return grid;
}

} // namespace flag
