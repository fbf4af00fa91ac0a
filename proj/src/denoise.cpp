#include "flag/denoise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace flag {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t counter)
{
    return splitmix64(splitmix64(seed) ^ (counter * 0xd1342543de82ef95ULL + 1));
}

} // namespace

double uniform01(std::uint64_t seed, std::uint64_t counter)
{
    // (0, 1]
    return (static_cast<double>(mix(seed, counter) >> 11) + 1.0) * 0x1.0p-53;
}

double standard_normal(std::uint64_t seed, std::uint64_t counter)
{
    const double u1 = uniform01(seed, 2 * counter);
    const double u2 = uniform01(seed, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
}

FlagCoeffs generate_noise(const NoiseModel& model)
{
    if (model.L < 1 || model.P < 1)
        throw std::invalid_argument("noise band-limits must be >= 1");
    if (!(model.sigma >= 0.0))
        throw std::invalid_argument("noise sigma must be nonnegative");
    FlagCoeffs out(model.L, model.P);
    std::uint64_t counter = 0;
    for (int p = 0; p < model.P; ++p) {
        const double sd = model.sigma * p / model.P;
        for (int ell = 0; ell < model.L; ++ell) {
            for (int m = 0; m <= ell; ++m) {
                const double re = standard_normal(model.seed, counter++);
                const double im = standard_normal(model.seed, counter++);
                if (m == 0) {
                    out.at(ell, 0, p) = sd * re;
                    continue;
                }
                const cplx v = sd * M_SQRT1_2 * cplx(re, im);
                out.at(ell, m, p) = v;
                out.at(ell, -m, p) = ((m % 2) ? -1.0 : 1.0) * std::conj(v);
            }
        }
    }
    return out;
}

double sigma_for_snr(const FlagCoeffs& signal, double snr)
{
    double mode_sum = 0.0;
    for (int p = 0; p < signal.P; ++p)
        mode_sum += static_cast<double>(p) * p / (static_cast<double>(signal.P) * signal.P);
    mode_sum *= static_cast<double>(signal.L) * signal.L;
    const double target = coeff_energy(signal) / std::pow(10.0, snr / 10.0);
    return mode_sum > 0.0 ? std::sqrt(target / mode_sum) : 0.0;
}

double snr_db(const FlagCoeffs& reference, const FlagCoeffs& observed)
{
    if (reference.L != observed.L || reference.P != observed.P)
        throw std::invalid_argument("SNR needs matching band-limits");
    double signal = 0.0;
    double residual = 0.0;
    for (std::size_t i = 0; i < reference.values.size(); ++i) {
        signal += std::norm(reference.values[i]);
        residual += std::norm(observed.values[i] - reference.values[i]);
    }
    if (residual == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal / residual);
}

ThresholdPlan predict_sigma(const TilingKernels& kernels, const NoiseModel& model, double tau,
                            bool multires, double multiplier)
{
    const TilingParams& prm = kernels.params();
    if (model.L != prm.L || model.P != prm.P)
        throw std::invalid_argument("noise model and kernels have different band-limits");
    ThresholdPlan plan;
    plan.multiplier = multiplier;
    plan.multires = multires;

    std::vector<double> kp(prm.P);
    for (int j = prm.J0; j <= prm.J(); ++j) {
        for (int jp = prm.J0p; jp <= prm.Jp(); ++jp) {
            const auto sch = scale_scheme(prm, j, jp, tau, multires);
            // sum_ell Psi^2 per p, weighted by the radial noise profile.
            std::vector<double> radial_weight(prm.P, 0.0);
            for (int p = 0; p < prm.P; ++p) {
                double acc = 0.0;
                for (int ell = 0; ell < prm.L; ++ell) {
                    const double v = kernels.psi(j, jp, ell, p);
                    acc += v * v;
                }
                const double frac = static_cast<double>(p) / prm.P;
                radial_weight[p] = frac * frac * acc;
            }
            std::vector<double> profile(sch->P());
            for (int i = 0; i < sch->P(); ++i) {
                basis_k_all(tau, sch->radial().nodes()[i], kp);
                double acc = 0.0;
                for (int p = 0; p < prm.P; ++p)
                    acc += radial_weight[p] * kp[p] * kp[p];
                profile[i] = model.sigma * std::sqrt(acc);
            }
            plan.profiles.push_back(std::move(profile));
        }
    }
    return plan;
}

WaveletCoeffSet hard_threshold(const WaveletCoeffSet& coeffs, const ThresholdPlan& plan)
{
    if (plan.profiles.size() != coeffs.wavelets.size())
        throw std::invalid_argument("threshold plan does not match the wavelet layout");
    WaveletCoeffSet out = coeffs;
    for (std::size_t s = 0; s < out.wavelets.size(); ++s) {
        BallSignal& sig = out.wavelets[s].signal;
        const std::vector<double>& prof = plan.profiles[s];
        if (static_cast<int>(prof.size()) != sig.n_r)
            throw std::invalid_argument("threshold profile length does not match the scale grid");
        for (int i = 0; i < sig.n_r; ++i) {
            const double threshold = plan.multiplier * prof[i];
            for (cplx& v : sig.shell(i))
                if (std::abs(v) < threshold)
                    v = 0.0;
        }
    }
    return out;
}

FlagCoeffs sparse_test_signal(int L, int P, double tau, std::uint64_t seed, int n_blobs)
{
    FlagCoeffs out(L, P);
    const double R = RadialScheme(P, tau).outer_radius();
    const double ell_width = std::max(1.0, L / 4.0);
    const double p_width = std::max(1.0, P / 4.0);
    std::vector<double> kp(P);
    std::uint64_t counter = 0;
    for (int b = 0; b < n_blobs; ++b) {
        const double r = R * (0.25 + 0.5 * uniform01(seed, counter++));
        const double theta = std::acos(2.0 * uniform01(seed, counter++) - 1.0);
        const double phi = 2.0 * pi * uniform01(seed, counter++);
        const double sign = uniform01(seed, counter++) < 0.5 ? -1.0 : 1.0;
        const double amp = sign * (1.0 + uniform01(seed, counter++));
        basis_k_all(tau, r, kp);
        const std::vector<cplx> ylm = spherical_harmonics(L, theta, phi);
        for (int p = 0; p < P; ++p) {
            const double gp = std::exp(-std::pow(p / p_width, 2));
            for (int ell = 0; ell < L; ++ell) {
                const double g = amp * gp * std::exp(-std::pow(ell / ell_width, 2)) * kp[p];
                for (int m = -ell; m <= ell; ++m)
                    out.at(ell, m, p) += g * std::conj(ylm[lm_index(ell, m)]);
            }
        }
    }
    return out;
}

DenoiseReport denoise(const FlagCoeffs& clean, const BallScheme& scheme,
                      const TilingKernels& kernels, const NoiseModel& model, double multiplier,
                      bool multires)
{
    if (clean.L != scheme.L() || clean.P != scheme.P())
        throw std::invalid_argument("signal band-limits do not match the scheme");
    DenoiseReport report;
    const FlagCoeffs noise = generate_noise(model);
    report.noisy = clean;
    for (std::size_t i = 0; i < noise.values.size(); ++i)
        report.noisy.values[i] += noise.values[i];
    report.snr_in_db = snr_db(clean, report.noisy);
    if (model.sigma == 0.0) {
        report.denoised = clean;
        report.snr_out_db = snr_db(clean, report.denoised);
        return report;
    }

    const BallSignal noisy_signal = flag_synthesis(scheme, report.noisy);
    const WaveletCoeffSet w = flaglet_analysis(scheme, noisy_signal, kernels, multires);
    const ThresholdPlan plan = predict_sigma(kernels, model, scheme.tau(), multires, multiplier);
    const WaveletCoeffSet thresholded = hard_threshold(w, plan);
    const BallSignal rec = flaglet_synthesis(thresholded, kernels, scheme);
    report.denoised = flag_analysis(scheme, rec);
    report.snr_out_db = snr_db(clean, report.denoised);
    return report;
}

} // namespace flag
