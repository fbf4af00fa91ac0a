#include "flag/ball.hpp"

#include "flag/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flag {

FlagCoeffs flag_analysis(const BallScheme& scheme, const BallSignal& signal)
{
    if (!signal.matches(scheme))
        throw std::invalid_argument("ball signal shape does not match the scheme");
    const int L = scheme.L();
    const int P = scheme.P();
    const std::size_t nlm = static_cast<std::size_t>(L) * L;

    // Shell-wise harmonic transforms.
    std::vector<cplx> harmonic(nlm * P);
    parallel_for(static_cast<std::size_t>(P), [&](std::size_t i) {
        const SphCoeffs c = sht_forward(scheme.angular(), signal.shell(static_cast<int>(i)));
        std::copy(c.values.begin(), c.values.end(), harmonic.begin() + i * nlm);
    });

    // Radial transform along each (ell, m) line.
    FlagCoeffs out(L, P);
    parallel_for(static_cast<std::size_t>(P), [&](std::size_t p) {
        const auto row = scheme.radial().weighted_basis_row(static_cast<int>(p));
        cplx* dst = out.values.data() + p * nlm;
        for (int i = 0; i < P; ++i) {
            const double w = row[i];
            const cplx* src = harmonic.data() + i * nlm;
            for (std::size_t lm = 0; lm < nlm; ++lm)
                dst[lm] += w * src[lm];
        }
    });
    return out;
}

BallSignal flag_synthesis(const BallScheme& scheme, const FlagCoeffs& coeffs)
{
    if (coeffs.L > scheme.L() || coeffs.P > scheme.P())
        throw std::invalid_argument("coefficient band-limits exceed the ball scheme");
    const int P = scheme.P();
    const int Pc = coeffs.P;
    const std::size_t nlm = coeffs.lm_count();

    BallSignal out(scheme);
    parallel_for(static_cast<std::size_t>(P), [&](std::size_t i) {
        const auto basis = scheme.radial().basis_row_at_node(static_cast<int>(i));
        SphCoeffs shell(coeffs.L);
        for (int p = 0; p < Pc; ++p) {
            const double k = basis[p];
            const cplx* src = coeffs.values.data() + p * nlm;
            for (std::size_t lm = 0; lm < nlm; ++lm)
                shell.values[lm] += k * src[lm];
        }
        sht_inverse(scheme.angular(), shell, out.shell(static_cast<int>(i)));
    });
    return out;
}

cplx flag_evaluate(const FlagCoeffs& coeffs, double tau, double r, double theta, double phi)
{
    std::vector<double> kp(coeffs.P);
    basis_k_all(tau, r, kp);
    const std::vector<cplx> ylm = spherical_harmonics(coeffs.L, theta, phi);
    cplx acc = 0.0;
    for (int p = 0; p < coeffs.P; ++p) {
        cplx line = 0.0;
        for (std::size_t lm = 0; lm < coeffs.lm_count(); ++lm)
            line += coeffs.values[p * coeffs.lm_count() + lm] * ylm[lm];
        acc += kp[p] * line;
    }
    return acc;
}

FlagCoeffs ball_convolve_axisym(const FlagCoeffs& f, const FlagCoeffs& h)
{
    if (f.L != h.L || f.P != h.P)
        throw std::invalid_argument("convolution band-limits differ");
    for (int p = 0; p < h.P; ++p)
        for (int ell = 0; ell < h.L; ++ell)
            for (int m = -ell; m <= ell; ++m)
                if (m != 0 && std::abs(h.at(ell, m, p)) > 0.0)
                    throw std::invalid_argument("convolution kernel is not axisymmetric");

    FlagCoeffs out(f.L, f.P);
    for (int p = 0; p < f.P; ++p) {
        for (int ell = 0; ell < f.L; ++ell) {
            const cplx factor = std::sqrt(4.0 * pi / (2.0 * ell + 1.0)) * std::conj(h.at(ell, 0, p));
            for (int m = -ell; m <= ell; ++m)
                out.at(ell, m, p) = factor * f.at(ell, m, p);
        }
    }
    return out;
}

FlagCoeffs resize_coeffs(const FlagCoeffs& coeffs, int L, int P)
{
    FlagCoeffs out(L, P);
    const int Lmin = std::min(L, coeffs.L);
    const int Pmin = std::min(P, coeffs.P);
    for (int p = 0; p < Pmin; ++p)
        for (int ell = 0; ell < Lmin; ++ell)
            for (int m = -ell; m <= ell; ++m)
                out.at(ell, m, p) = coeffs.at(ell, m, p);
    return out;
}

double coeff_energy(const FlagCoeffs& coeffs)
{
    double acc = 0.0;
    for (const cplx& v : coeffs.values)
        acc += std::norm(v);
    return acc;
}

double signal_energy(const BallScheme& scheme, const BallSignal& signal)
{
    if (!signal.matches(scheme))
        throw std::invalid_argument("ball signal shape does not match the scheme");
    double acc = 0.0;
    for (int i = 0; i < signal.n_r; ++i)
        for (int t = 0; t < signal.n_theta; ++t) {
            double ring = 0.0;
            for (int k = 0; k < signal.n_phi; ++k)
                ring += std::norm(signal.at(i, t, k));
            acc += scheme.sample_weight(i, t) * ring;
        }
    return acc;
}

SchemeCache& SchemeCache::shared()
{
    static SchemeCache cache;
    return cache;
}

std::shared_ptr<const BallScheme> SchemeCache::get(int L, int P, double tau)
{
    const auto key = std::make_tuple(L, P, tau);
    std::lock_guard lock(mutex_);
    auto it = schemes_.find(key);
    if (it != schemes_.end())
        return it->second;
    auto scheme = std::make_shared<const BallScheme>(L, P, tau);
    schemes_.emplace(key, scheme);
    return scheme;
}

void SchemeCache::clear()
{
    std::lock_guard lock(mutex_);
    schemes_.clear();
}

} // namespace flag
