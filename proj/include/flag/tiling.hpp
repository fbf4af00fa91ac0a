#pragma once

// Harmonic tiling of Fourier-Laguerre space into axisymmetric flaglets and a
// scaling function. Kernels are real, depend on (ell, p) only (m = 0), and satisfy
//     4 pi / (2 ell + 1) * (Phi_lp^2 + sum_{j, j'} Psi^{jj'}_lp^2) = 1
// for every ell < L, p < P.

#include <span>
#include <utility>
#include <vector>

namespace flag {

/// Compactly supported bump e^{-1/(1-t^2)} on (-1, 1).
double schwartz_s(double t);

/// Smooth decreasing profile k_lambda: 1 for t <= 1/lambda, 0 for t >= 1.
class SmoothStep {
public:
    explicit SmoothStep(double lambda);

    double lambda() const { return lambda_; }
    double operator()(double t) const;

private:
    static constexpr int kPanels = 32;

    double panel_integral(double lo, double hi) const;

    double lambda_;
    std::vector<double> edges_;
    std::vector<double> tail_; // integral from edges_[i] to 1

};

double k_lambda(double lambda, double t);

struct Generators {
    double kappa;
    double eta;
    double eta_hybrid;
};

/// kappa_lambda(t), eta_lambda(t) and the hybrid eta_{lambda nu}(t, tp).
/// Throws NumericalError when a radicand is below -1e-12.
Generators generators(const SmoothStep& k_lam, const SmoothStep& k_nu, double t, double tp);
Generators generators(double lambda, double nu, double t, double tp);

struct TilingParams {
    double lambda = 2.0;
    double nu = 2.0;
    int J0 = 0;
    int J0p = 0;
    int L = 0;
    int P = 0;

    /// ceil(log_lambda(L - 1)).
    int J() const;
    /// ceil(log_nu(P - 1)).
    int Jp() const;
    int n_angular_scales() const { return J() - J0 + 1; }
    int n_radial_scales() const { return Jp() - J0p + 1; }

    /// Throws std::invalid_argument unless lambda, nu > 1, L, P >= 3,
    /// 0 <= J0 < J and 0 <= J0p < Jp.
    void validate() const;

    bool operator==(const TilingParams&) const = default;
};

/// Smallest integer n with base^n >= x (x >= 1).
int ceil_log(double base, double x);

class TilingKernels {
public:
    /// Tabulates all kernels and checks admissibility; throws NumericalError if
    /// the residual exceeds 1e-10.
    explicit TilingKernels(const TilingParams& params);

    const TilingParams& params() const { return params_; }

    /// Psi^{jj'}_{l0p} for J0 <= j <= J, J0p <= jp <= Jp.
    double psi(int j, int jp, int ell, int p) const
    {
        return psi_[scale_index(j, jp) * plane() + idx(ell, p)];
    }
    std::span<const double> psi_plane(int j, int jp) const
    {
        return {psi_.data() + scale_index(j, jp) * plane(), plane()};
    }
    /// Phi_{l0p}.
    double phi(int ell, int p) const { return phi_[idx(ell, p)]; }

    /// Largest |4 pi/(2l+1)(Phi^2 + sum Psi^2) - 1| over the (ell, p) plane.
    double admissibility_residual() const { return residual_; }

    std::size_t scale_index(int j, int jp) const
    {
        return static_cast<std::size_t>(j - params_.J0) * params_.n_radial_scales() +
               (jp - params_.J0p);
    }

private:
    std::size_t plane() const { return static_cast<std::size_t>(params_.L) * params_.P; }
    std::size_t idx(int ell, int p) const { return static_cast<std::size_t>(p) * params_.L + ell; }

    TilingParams params_;
    std::vector<double> psi_;
    std::vector<double> phi_;
    double residual_ = 0.0;
};

/// Band-limits of scale (j, jp): (min(ceil(lambda^{j+1}), L), min(ceil(nu^{jp+1}), P)).
std::pair<int, int> kernel_bandlimits(const TilingParams& params, int j, int jp);

/// Admissibility residual computed from an arbitrary kernel table.
double admissibility_residual(const TilingKernels& kernels);

} // namespace flag
