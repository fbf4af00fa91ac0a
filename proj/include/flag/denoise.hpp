#pragma once

// Flaglet hard-thresholding denoiser: band-limited noise whose harmonic
// variance grows as (p/P)^2, the matching per-scale noise level in each
// wavelet signal, thresholding, and SNR bookkeeping in coefficient space.

#include "flag/flaglet.hpp"

#include <cstdint>
#include <vector>

namespace flag {

/// Counter-based generators: the value depends only on (seed, counter).
double uniform01(std::uint64_t seed, std::uint64_t counter);
double standard_normal(std::uint64_t seed, std::uint64_t counter);

struct NoiseModel {
    double sigma = 0.0;
    int L = 0;
    int P = 0;
    std::uint64_t seed = 0;
};

/// Zero-mean Gaussian coefficients with E|n_lmp|^2 = sigma^2 (p/P)^2 and the
/// conjugate symmetry of a real signal. Draw order: p, then ell, then m >= 0,
/// real part then imaginary part.
FlagCoeffs generate_noise(const NoiseModel& model);

/// sigma giving an expected noise energy of ||s||^2 / 10^(snr_db/10).
double sigma_for_snr(const FlagCoeffs& signal, double snr_db);

/// 10 log10(||s||^2 / ||y - s||^2) over the coefficients. Returns +infinity
/// when the residual is exactly zero.
double snr_db(const FlagCoeffs& reference, const FlagCoeffs& observed);

struct ThresholdPlan {
    double multiplier = 3.0;
    bool multires = false;
    /// sigma^{jj'}(r_i) at the radial nodes of each scale's grid, in WaveletCoeffSet order.
    std::vector<std::vector<double>> profiles;
};

ThresholdPlan predict_sigma(const TilingKernels& kernels, const NoiseModel& model, double tau,
                            bool multires, double multiplier = 3.0);

/// Zeroes wavelet samples with |value| < multiplier * sigma^{jj'}(r). Scaling
/// coefficients pass through unchanged.
WaveletCoeffSet hard_threshold(const WaveletCoeffSet& coeffs, const ThresholdPlan& plan);

/// Real test signal made of n_blobs smooth localized bumps placed inside the
/// sampled ball, built directly in coefficient space.
FlagCoeffs sparse_test_signal(int L, int P, double tau, std::uint64_t seed, int n_blobs = 4);

struct DenoiseReport {
    double snr_in_db = 0.0;
    double snr_out_db = 0.0;
    FlagCoeffs noisy;
    FlagCoeffs denoised;
};

/// Adds model noise to clean, thresholds its flaglet coefficients and reconstructs.
DenoiseReport denoise(const FlagCoeffs& clean, const BallScheme& scheme,
                      const TilingKernels& kernels, const NoiseModel& model, double multiplier = 3.0,
                      bool multires = true);

} // namespace flag
