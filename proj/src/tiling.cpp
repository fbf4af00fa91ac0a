#include "flag/tiling.hpp"

#include "flag/common.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>

#include <cmath>
#include <stdexcept>
#include <string>

namespace flag {

namespace {

constexpr double kRadicandFloor = -1e-12;
constexpr double kAdmissibilityTol = 1e-10;

double checked_sqrt(double radicand)
{
    if (radicand < kRadicandFloor)
        throw NumericalError("negative generating-function radicand: " + std::to_string(radicand));
    return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

} // namespace

double schwartz_s(double t)
{
    if (!(std::abs(t) < 1.0))
        return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

SmoothStep::SmoothStep(double lambda) : lambda_(lambda)
{
    if (!(lambda > 1.0))
        throw std::invalid_argument("dilation parameter must exceed 1");
    // Composite Gauss-Legendre on equal panels of [1/lambda, 1]; the integrand
    // is C-infinity with all derivatives vanishing at both ends, so a fixed rule
    // reaches rounding level without adaptivity.
    const double a = 1.0 / lambda;
    edges_.resize(kPanels + 1);
    for (int i = 0; i <= kPanels; ++i)
        edges_[i] = a + (1.0 - a) * i / kPanels;
    edges_[kPanels] = 1.0;
    tail_.assign(kPanels + 1, 0.0);
    for (int i = kPanels - 1; i >= 0; --i)
        tail_[i] = tail_[i + 1] + panel_integral(edges_[i], edges_[i + 1]);
}

double SmoothStep::panel_integral(double lo, double hi) const
{
    const double lam = lambda_;
    auto integrand = [lam](double u) {
        const double s = schwartz_s(2.0 * lam / (lam - 1.0) * (u - 1.0 / lam) - 1.0);
        return s * s / u;
    };
    return boost::math::quadrature::gauss<double, 30>::integrate(integrand, lo, hi);
}

double SmoothStep::operator()(double t) const
{
    if (t <= 1.0 / lambda_)
        return 1.0;
    if (t >= 1.0)
        return 0.0;
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), t);
    const auto i = static_cast<std::size_t>(it - edges_.begin()); // edges_[i-1] <= t < edges_[i]
    return (panel_integral(t, edges_[i]) + tail_[i]) / tail_[0];
}

double k_lambda(double lambda, double t) { return SmoothStep(lambda)(t); }

Generators generators(const SmoothStep& k_lam, const SmoothStep& k_nu, double t, double tp)
{
    const double lam = k_lam.lambda();
    const double nu = k_nu.lambda();
    const double kt = k_lam(t);
    const double kt_dil = k_lam(t / lam);
    const double ktp = k_nu(tp);
    const double ktp_dil = k_nu(tp / nu);
    return {checked_sqrt(kt_dil - kt), checked_sqrt(kt),
            checked_sqrt(kt_dil * ktp + kt * ktp_dil - kt * ktp)};
}

Generators generators(double lambda, double nu, double t, double tp)
{
    return generators(SmoothStep(lambda), SmoothStep(nu), t, tp);
}

int ceil_log(double base, double x)
{
    int n = 0;
    double v = 1.0;
    while (v < x * (1.0 - 1e-12)) {
        v *= base;
        ++n;
    }
    return n;
}

int TilingParams::J() const { return ceil_log(lambda, L - 1.0); }
int TilingParams::Jp() const { return ceil_log(nu, P - 1.0); }

void TilingParams::validate() const
{
    if (!(lambda > 1.0) || !(nu > 1.0))
        throw std::invalid_argument("dilation parameters lambda and nu must exceed 1");
    if (L < 3 || P < 3)
        throw std::invalid_argument("tiling needs band-limits L, P >= 3");
    if (J0 < 0 || J0 >= J())
        throw std::invalid_argument("J0 must satisfy 0 <= J0 < J = " + std::to_string(J()));
    if (J0p < 0 || J0p >= Jp())
        throw std::invalid_argument("J0p must satisfy 0 <= J0p < Jp = " + std::to_string(Jp()));
}

std::pair<int, int> kernel_bandlimits(const TilingParams& params, int j, int jp)
{
    if (j < params.J0 || j > params.J() || jp < params.J0p || jp > params.Jp())
        throw std::out_of_range("scale index outside [J0, J] x [J0p, Jp]");
    const auto band = [](double base, int exponent, int cap) {
        const double v = std::pow(base, exponent);
        if (v >= cap)
            return cap;
        return std::min(cap, static_cast<int>(std::ceil(v * (1.0 - 1e-14))));
    };
    return {band(params.lambda, j + 1, params.L), band(params.nu, jp + 1, params.P)};
}

TilingKernels::TilingKernels(const TilingParams& params) : params_(params)
{
    params_.validate();
    const int L = params_.L;
    const int P = params_.P;
    const int J = params_.J();
    const int Jp = params_.Jp();
    const SmoothStep k_lam(params_.lambda);
    const SmoothStep k_nu(params_.nu);

    // k(ell / lambda^j) for j in [J0, J+1], and likewise in p.
    const int n_ang = J - params_.J0 + 2;
    const int n_rad = Jp - params_.J0p + 2;
    std::vector<double> ang(static_cast<std::size_t>(n_ang) * L);
    std::vector<double> rad(static_cast<std::size_t>(n_rad) * P);
    for (int s = 0; s < n_ang; ++s) {
        const double scale = std::pow(params_.lambda, params_.J0 + s);
        for (int ell = 0; ell < L; ++ell)
            ang[s * L + ell] = k_lam(ell / scale);
    }
    for (int s = 0; s < n_rad; ++s) {
        const double scale = std::pow(params_.nu, params_.J0p + s);
        for (int p = 0; p < P; ++p)
            rad[s * P + p] = k_nu(p / scale);
    }

    psi_.assign(static_cast<std::size_t>(n_ang - 1) * (n_rad - 1) * plane(), 0.0);
    for (int j = params_.J0; j <= J; ++j) {
        const int s = j - params_.J0;
        for (int jp = params_.J0p; jp <= Jp; ++jp) {
            const int sp = jp - params_.J0p;
            double* out = psi_.data() + scale_index(j, jp) * plane();
            for (int p = 0; p < P; ++p) {
                const double kappa_nu = checked_sqrt(rad[(sp + 1) * P + p] - rad[sp * P + p]);
                if (kappa_nu == 0.0)
                    continue;
                for (int ell = 0; ell < L; ++ell) {
                    const double kappa_lam =
                        checked_sqrt(ang[(s + 1) * L + ell] - ang[s * L + ell]);
                    out[idx(ell, p)] =
                        std::sqrt((2.0 * ell + 1.0) / (4.0 * pi)) * kappa_lam * kappa_nu;
                }
            }
        }
    }

    // Scaling function. Boundary points ell = lambda^J0 or p = nu^J0p go to the
    // hybrid branch, which is exact there since k(1) = 0.
    const double ell0 = std::pow(params_.lambda, params_.J0);
    const double p0 = std::pow(params_.nu, params_.J0p);
    phi_.assign(plane(), 0.0);
    for (int p = 0; p < P; ++p) {
        for (int ell = 0; ell < L; ++ell) {
            const double norm = std::sqrt((2.0 * ell + 1.0) / (4.0 * pi));
            const double kt = ang[ell];
            const double kt_dil = ang[L + ell];
            const double ktp = rad[p];
            const double ktp_dil = rad[P + p];
            double value = 0.0;
            if (ell > ell0 && p <= p0)
                value = checked_sqrt(ktp);
            else if (ell <= ell0 && p > p0)
                value = checked_sqrt(kt);
            else if (ell <= ell0 && p <= p0)
                value = checked_sqrt(kt_dil * ktp + kt * ktp_dil - kt * ktp);
            phi_[idx(ell, p)] = norm * value;
        }
    }

    residual_ = flag::admissibility_residual(*this);
    if (!(residual_ <= kAdmissibilityTol))
        throw NumericalError("tiling violates admissibility, residual " + std::to_string(residual_));
}

double admissibility_residual(const TilingKernels& kernels)
{
    const TilingParams& prm = kernels.params();
    double worst = 0.0;
    for (int p = 0; p < prm.P; ++p) {
        for (int ell = 0; ell < prm.L; ++ell) {
            double acc = kernels.phi(ell, p) * kernels.phi(ell, p);
            for (int j = prm.J0; j <= prm.J(); ++j)
                for (int jp = prm.J0p; jp <= prm.Jp(); ++jp) {
                    const double v = kernels.psi(j, jp, ell, p);
                    acc += v * v;
                }
            worst = std::max(worst, std::abs(4.0 * pi / (2.0 * ell + 1.0) * acc - 1.0));
        }
    }
    return worst;
}

} // namespace flag
