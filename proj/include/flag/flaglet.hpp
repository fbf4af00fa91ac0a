#pragma once

// Flaglet transform on the ball: scaling and wavelet coefficients are
// axisymmetric convolutions of the signal with the tiling kernels, computed as
// products in Fourier-Laguerre space. In multiresolution mode each wavelet
// scale is sampled on the smallest ball grid supporting its band-limits.

#include "flag/ball.hpp"
#include "flag/tiling.hpp"

#include <vector>

namespace flag {

struct WaveletScale {
    int j = 0;
    int jp = 0;
    int L = 0; // band-limits of the grid this scale is sampled on
    int P = 0;
    BallSignal signal;
};

struct WaveletCoeffSet {
    TilingParams params;
    double tau = 1.0;
    bool multires = false;
    BallSignal scaling;
    /// Ordered by j, then jp.
    std::vector<WaveletScale> wavelets;

    const WaveletScale& scale(int j, int jp) const;
    WaveletScale& scale(int j, int jp);
};

/// Harmonic-space counterpart of WaveletCoeffSet.
struct WaveletHarmonics {
    TilingParams params;
    bool multires = false;
    FlagCoeffs scaling;
    /// Same order as WaveletCoeffSet::wavelets; each truncated to its scale's band-limits.
    std::vector<FlagCoeffs> wavelets;
};

/// W_lmp = sqrt(4 pi/(2l+1)) f_lmp K_l0p for the scaling kernel and every scale.
WaveletHarmonics flaglet_analysis_harmonic(const FlagCoeffs& coeffs, const TilingKernels& kernels,
                                           bool multires);
/// Inverse of flaglet_analysis_harmonic (resolution of the identity).
FlagCoeffs flaglet_synthesis_harmonic(const WaveletHarmonics& harmonics,
                                      const TilingKernels& kernels);

WaveletCoeffSet flaglet_analysis(const BallScheme& scheme, const BallSignal& signal,
                                 const TilingKernels& kernels, bool multires);
BallSignal flaglet_synthesis(const WaveletCoeffSet& coeffs, const TilingKernels& kernels,
                             const BallScheme& scheme);

/// Scheme a wavelet scale is sampled on, from the shared cache.
std::shared_ptr<const BallScheme> scale_scheme(const TilingParams& params, int j, int jp,
                                               double tau, bool multires);

/// Drops imaginary parts after checking they are below tol. Throws NumericalError otherwise.
void discard_imaginary(BallSignal& signal, double tol = 1e-10);

} // namespace flag
