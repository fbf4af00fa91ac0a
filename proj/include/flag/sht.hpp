#pragma once

// Exact spherical harmonic transform on a Gauss-Legendre colatitude grid with
// 2L-1 equiangular longitudes. Signals band-limited at L (ell < L) are
// recovered exactly from L * (2L-1) samples.

#include "flag/common.hpp"

#include <span>
#include <vector>

namespace flag {

class AngularScheme {
public:
    explicit AngularScheme(int L);

    int band_limit() const { return L_; }
    int n_theta() const { return L_; }
    int n_phi() const { return 2 * L_ - 1; }
    std::size_t n_samples() const { return static_cast<std::size_t>(n_theta()) * n_phi(); }

    std::span<const double> thetas() const { return thetas_; }
    std::span<const double> cos_thetas() const { return cos_thetas_; }
    /// Quadrature weights for d(cos theta) on [-1, 1].
    std::span<const double> theta_weights() const { return weights_; }
    std::span<const double> phis() const { return phis_; }

    /// Normalized associated Legendre values for m >= 0 on ring t, indexed
    /// ell*(ell+1)/2 + m, such that Y_lm(theta_t, phi) = value * e^{i m phi}.
    std::span<const double> legendre_ring(int t) const
    {
        const std::size_t n = triangle_size();
        return {legendre_.data() + static_cast<std::size_t>(t) * n, n};
    }

    /// e^{-2 pi i q / n_phi}
    std::span<const cplx> twiddles() const { return twiddles_; }

    /// Sample count of the MW sampling theorem for the same band-limit,
    /// (L-1)(2L-1)+1. Reference metadata only.
    std::size_t mw_sample_count() const
    {
        return static_cast<std::size_t>(L_ - 1) * (2 * L_ - 1) + 1;
    }

private:
    std::size_t triangle_size() const { return static_cast<std::size_t>(L_) * (L_ + 1) / 2; }

    int L_;
    std::vector<double> thetas_;
    std::vector<double> cos_thetas_;
    std::vector<double> weights_;
    std::vector<double> phis_;
    std::vector<double> legendre_;
    std::vector<cplx> twiddles_;
};

/// Harmonic coefficients f_lm, packed ell^2 + ell + m.
struct SphCoeffs {
    int L = 0;
    std::vector<cplx> values;

    SphCoeffs() = default;
    explicit SphCoeffs(int band_limit)
        : L(band_limit), values(static_cast<std::size_t>(band_limit) * band_limit)
    {
    }

    cplx& at(int ell, int m) { return values[lm_index(ell, m)]; }
    const cplx& at(int ell, int m) const { return values[lm_index(ell, m)]; }
};

/// Samples on the angular grid, ring-major: values[t * n_phi + k].
struct SphGrid {
    int n_theta = 0;
    int n_phi = 0;
    std::vector<cplx> values;

    SphGrid() = default;
    explicit SphGrid(const AngularScheme& scheme)
        : n_theta(scheme.n_theta()), n_phi(scheme.n_phi()), values(scheme.n_samples())
    {
    }

    cplx& at(int t, int k) { return values[static_cast<std::size_t>(t) * n_phi + k]; }
    const cplx& at(int t, int k) const { return values[static_cast<std::size_t>(t) * n_phi + k]; }
};

/// Gauss-Legendre nodes (descending in x, i.e. ascending in theta = acos x) and weights on [-1, 1].
void gauss_legendre(int n, std::span<double> nodes, std::span<double> weights);

/// Normalized associated Legendre values for all 0 <= m <= ell < L at
/// colatitude theta, indexed ell*(ell+1)/2 + m. Condon-Shortley phase included.
void normalized_legendre(int L, double theta, std::span<double> out);

/// Y_lm(theta, phi) for all (ell, m) with ell < L, packed ell^2 + ell + m.
std::vector<cplx> spherical_harmonics(int L, double theta, double phi);

SphCoeffs sht_forward(const AngularScheme& scheme, std::span<const cplx> samples);
SphCoeffs sht_forward(const AngularScheme& scheme, const SphGrid& grid);

/// Writes the n_theta * n_phi samples of the expansion into out.
void sht_inverse(const AngularScheme& scheme, const SphCoeffs& coeffs, std::span<cplx> out);
SphGrid sht_inverse(const AngularScheme& scheme, const SphCoeffs& coeffs);

} // namespace flag
