#pragma once

// Fourier-Laguerre transform on the ball: Z_lmp(r) = K_p(r) Y_lm(omega).
// The sampling grid is the product of the Gauss-Laguerre radial nodes and the
// angular scheme, and the transform separates into shell-wise spherical
// harmonic transforms followed by per-(ell, m) radial transforms.

#include "flag/common.hpp"
#include "flag/laguerre.hpp"
#include "flag/sht.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

namespace flag {

class BallScheme {
public:
    BallScheme(int L, int P, double tau) : radial_(P, tau), angular_(L) {}

    int L() const { return angular_.band_limit(); }
    int P() const { return radial_.band_limit(); }
    double tau() const { return radial_.tau(); }
    /// Outer sampled radius tau * x_{P-1}.
    double radius() const { return radial_.outer_radius(); }

    const RadialScheme& radial() const { return radial_; }
    const AngularScheme& angular() const { return angular_; }

    std::size_t shell_size() const { return angular_.n_samples(); }
    std::size_t n_samples() const { return shell_size() * static_cast<std::size_t>(P()); }

    /// Quadrature weight of sample (i, t, k) for the measure d^3r.
    double sample_weight(int i, int t) const
    {
        return radial_.radial_measure_weight(i) * angular_.theta_weights()[t] * 2.0 * pi /
               angular_.n_phi();
    }

private:
    RadialScheme radial_;
    AngularScheme angular_;
};

/// Samples on the ball grid, indexed (radial node i, ring t, longitude k).
struct BallSignal {
    int n_r = 0;
    int n_theta = 0;
    int n_phi = 0;
    std::vector<cplx> values;

    BallSignal() = default;
    explicit BallSignal(const BallScheme& scheme)
        : n_r(scheme.P()), n_theta(scheme.angular().n_theta()), n_phi(scheme.angular().n_phi()),
          values(scheme.n_samples())
    {
    }

    std::size_t shell_size() const { return static_cast<std::size_t>(n_theta) * n_phi; }
    bool matches(const BallScheme& scheme) const
    {
        return n_r == scheme.P() && n_theta == scheme.angular().n_theta() &&
               n_phi == scheme.angular().n_phi() && values.size() == scheme.n_samples();
    }

    std::span<cplx> shell(int i) { return {values.data() + i * shell_size(), shell_size()}; }
    std::span<const cplx> shell(int i) const
    {
        return {values.data() + i * shell_size(), shell_size()};
    }
    cplx& at(int i, int t, int k) { return values[i * shell_size() + t * n_phi + k]; }
    const cplx& at(int i, int t, int k) const { return values[i * shell_size() + t * n_phi + k]; }
};

/// Fourier-Laguerre coefficients f_lmp, p-major then ell^2 + ell + m.
struct FlagCoeffs {
    int L = 0;
    int P = 0;
    std::vector<cplx> values;

    FlagCoeffs() = default;
    FlagCoeffs(int band_L, int band_P)
        : L(band_L), P(band_P), values(static_cast<std::size_t>(band_L) * band_L * band_P)
    {
    }

    std::size_t lm_count() const { return static_cast<std::size_t>(L) * L; }
    cplx& at(int ell, int m, int p) { return values[p * lm_count() + lm_index(ell, m)]; }
    const cplx& at(int ell, int m, int p) const { return values[p * lm_count() + lm_index(ell, m)]; }
};

FlagCoeffs flag_analysis(const BallScheme& scheme, const BallSignal& signal);
BallSignal flag_synthesis(const BallScheme& scheme, const FlagCoeffs& coeffs);

/// Direct evaluation of the expansion at one point (r, theta, phi).
cplx flag_evaluate(const FlagCoeffs& coeffs, double tau, double r, double theta, double phi);

/// Axisymmetric convolution in harmonic space:
/// (f * h)_lmp = sqrt(4 pi / (2 ell + 1)) f_lmp conj(h_l0p).
/// Throws std::invalid_argument if h has any nonzero m != 0 entry or the band-limits differ.
FlagCoeffs ball_convolve_axisym(const FlagCoeffs& f, const FlagCoeffs& h);

/// Copies the overlapping (ell < L, p < P) block of coeffs into a new set of
/// the requested size; missing entries are zero.
FlagCoeffs resize_coeffs(const FlagCoeffs& coeffs, int L, int P);

/// Sum of |f_lmp|^2.
double coeff_energy(const FlagCoeffs& coeffs);
/// Quadrature of |f|^2 over the ball.
double signal_energy(const BallScheme& scheme, const BallSignal& signal);

/// Shared, thread-safe cache of ball schemes keyed by (L, P, tau).
class SchemeCache {
public:
    static SchemeCache& shared();

    std::shared_ptr<const BallScheme> get(int L, int P, double tau);
    void clear();

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, double>, std::shared_ptr<const BallScheme>> schemes_;
};

} // namespace flag
