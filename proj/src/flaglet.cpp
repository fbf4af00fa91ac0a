#include "flag/flaglet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace flag {

namespace {

void check_kernels(const TilingKernels& kernels, int L, int P)
{
    if (kernels.params().L != L || kernels.params().P != P)
        throw std::invalid_argument("kernel band-limits (" + std::to_string(kernels.params().L) +
                                    ", " + std::to_string(kernels.params().P) +
                                    ") do not match the signal (" + std::to_string(L) + ", " +
                                    std::to_string(P) + ")");
}

double axisym_factor(int ell) { return std::sqrt(4.0 * pi / (2.0 * ell + 1.0)); }

} // namespace

const WaveletScale& WaveletCoeffSet::scale(int j, int jp) const
{
    for (const auto& w : wavelets)
        if (w.j == j && w.jp == jp)
            return w;
    throw std::out_of_range("no wavelet scale (" + std::to_string(j) + ", " + std::to_string(jp) +
                            ")");
}

WaveletScale& WaveletCoeffSet::scale(int j, int jp)
{
    return const_cast<WaveletScale&>(std::as_const(*this).scale(j, jp));
}

std::shared_ptr<const BallScheme> scale_scheme(const TilingParams& params, int j, int jp,
                                               double tau, bool multires)
{
    if (!multires)
        return SchemeCache::shared().get(params.L, params.P, tau);
    const auto [Lj, Pj] = kernel_bandlimits(params, j, jp);
    return SchemeCache::shared().get(Lj, Pj, tau);
}

WaveletHarmonics flaglet_analysis_harmonic(const FlagCoeffs& coeffs, const TilingKernels& kernels,
                                           bool multires)
{
    const TilingParams& prm = kernels.params();
    check_kernels(kernels, coeffs.L, coeffs.P);

    WaveletHarmonics out;
    out.params = prm;
    out.multires = multires;
    out.scaling = FlagCoeffs(prm.L, prm.P);
    for (int p = 0; p < prm.P; ++p)
        for (int ell = 0; ell < prm.L; ++ell) {
            const double g = axisym_factor(ell) * kernels.phi(ell, p);
            for (int m = -ell; m <= ell; ++m)
                out.scaling.at(ell, m, p) = g * coeffs.at(ell, m, p);
        }

    for (int j = prm.J0; j <= prm.J(); ++j) {
        for (int jp = prm.J0p; jp <= prm.Jp(); ++jp) {
            const auto [Lj, Pj] =
                multires ? kernel_bandlimits(prm, j, jp) : std::pair{prm.L, prm.P};
            FlagCoeffs w(Lj, Pj);
            for (int p = 0; p < Pj; ++p)
                for (int ell = 0; ell < Lj; ++ell) {
                    const double g = axisym_factor(ell) * kernels.psi(j, jp, ell, p);
                    if (g == 0.0)
                        continue;
                    for (int m = -ell; m <= ell; ++m)
                        w.at(ell, m, p) = g * coeffs.at(ell, m, p);
                }
            out.wavelets.push_back(std::move(w));
        }
    }
    return out;
}

FlagCoeffs flaglet_synthesis_harmonic(const WaveletHarmonics& harmonics,
                                      const TilingKernels& kernels)
{
    const TilingParams& prm = kernels.params();
    if (!(harmonics.params == prm))
        throw std::invalid_argument("wavelet coefficients were built with different tiling params");
    if (harmonics.wavelets.size() !=
        static_cast<std::size_t>(prm.n_angular_scales()) * prm.n_radial_scales())
        throw std::invalid_argument("wavelet scale count does not match the tiling");

    FlagCoeffs out(prm.L, prm.P);
    for (int p = 0; p < prm.P; ++p)
        for (int ell = 0; ell < prm.L; ++ell) {
            const double g = axisym_factor(ell) * kernels.phi(ell, p);
            for (int m = -ell; m <= ell; ++m)
                out.at(ell, m, p) = g * harmonics.scaling.at(ell, m, p);
        }

    std::size_t s = 0;
    for (int j = prm.J0; j <= prm.J(); ++j) {
        for (int jp = prm.J0p; jp <= prm.Jp(); ++jp, ++s) {
            const FlagCoeffs& w = harmonics.wavelets[s];
            const int Lj = std::min(w.L, prm.L);
            const int Pj = std::min(w.P, prm.P);
            for (int p = 0; p < Pj; ++p)
                for (int ell = 0; ell < Lj; ++ell) {
                    const double g = axisym_factor(ell) * kernels.psi(j, jp, ell, p);
                    if (g == 0.0)
                        continue;
                    for (int m = -ell; m <= ell; ++m)
                        out.at(ell, m, p) += g * w.at(ell, m, p);
                }
        }
    }
    return out;
}

WaveletCoeffSet flaglet_analysis(const BallScheme& scheme, const BallSignal& signal,
                                 const TilingKernels& kernels, bool multires)
{
    check_kernels(kernels, scheme.L(), scheme.P());
    const FlagCoeffs f = flag_analysis(scheme, signal);
    const WaveletHarmonics h = flaglet_analysis_harmonic(f, kernels, multires);
    const TilingParams& prm = kernels.params();

    WaveletCoeffSet out;
    out.params = prm;
    out.tau = scheme.tau();
    out.multires = multires;
    // The scaling kernel reaches the full band-limits, so it always stays at full resolution.
    out.scaling = flag_synthesis(scheme, h.scaling);
    std::size_t s = 0;
    for (int j = prm.J0; j <= prm.J(); ++j) {
        for (int jp = prm.J0p; jp <= prm.Jp(); ++jp, ++s) {
            const auto sch = scale_scheme(prm, j, jp, scheme.tau(), multires);
            out.wavelets.push_back({j, jp, sch->L(), sch->P(), flag_synthesis(*sch, h.wavelets[s])});
        }
    }
    return out;
}

BallSignal flaglet_synthesis(const WaveletCoeffSet& coeffs, const TilingKernels& kernels,
                             const BallScheme& scheme)
{
    check_kernels(kernels, scheme.L(), scheme.P());
    if (!(coeffs.params == kernels.params()))
        throw std::invalid_argument("wavelet coefficients were built with different tiling params");
    const TilingParams& prm = kernels.params();

    WaveletHarmonics h;
    h.params = prm;
    h.multires = coeffs.multires;
    h.scaling = flag_analysis(scheme, coeffs.scaling);
    for (int j = prm.J0; j <= prm.J(); ++j) {
        for (int jp = prm.J0p; jp <= prm.Jp(); ++jp) {
            const WaveletScale& w = coeffs.scale(j, jp);
            const auto sch = SchemeCache::shared().get(w.L, w.P, scheme.tau());
            h.wavelets.push_back(flag_analysis(*sch, w.signal));
        }
    }
    return flag_synthesis(scheme, flaglet_synthesis_harmonic(h, kernels));
}

void discard_imaginary(BallSignal& signal, double tol)
{
    for (cplx& v : signal.values) {
        if (std::abs(v.imag()) > tol)
            throw NumericalError("imaginary residue " + std::to_string(v.imag()) +
                                 " exceeds tolerance for a real signal");
        v = {v.real(), 0.0};
    }
}

} // namespace flag
