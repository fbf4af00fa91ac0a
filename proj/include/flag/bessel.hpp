#pragma once

// Exact spherical Bessel projections of the spherical Laguerre basis,
//     j_lp(k) = int_0^inf r^2 K_p(r) j_ell(k r) dr,
// evaluated through the finite expansion of L_p^(2) into monomials and the
// closed-form moments
//     mu^ell_j(k) = tau^{1/2 - j} int_0^inf r^j j_ell(k r) e^{-r/(2 tau)} dr.
// For a signal band-limited in the Laguerre basis this gives its Fourier-Bessel
// coefficients as a finite sum.

#include "flag/ball.hpp"

#include <span>
#include <vector>

namespace flag {

/// Relative error above which a bridge value is reported as imprecise.
inline constexpr double kBridgePrecision = 1e-8;

/// A value with a running estimate of its relative rounding error.
struct BridgeValue {
    double value = 0.0;
    double rel_error = 0.0;

    bool precise() const { return rel_error <= kBridgePrecision; }
};

class BesselBridge {
public:
    BesselBridge(int L, int P, double tau);

    int L() const { return L_; }
    int P() const { return P_; }
    double tau() const { return tau_; }

    /// c^p_j = (-1)^j / j! * binom(p+2, p-j), built by the downward-free recurrence
    /// c^p_j = -(p-j+1) / (j (j+2)) c^p_{j-1}.
    double laguerre_coefficient(int p, int j) const { return coeffs_[p * P_ + j]; }

    /// mu^ell_j(k).
    BridgeValue moment(int ell, int j, double k) const;

    /// j_lp(k) = <K_p | j_ell(k .)>.
    BridgeValue jlp(int ell, int p, double k) const;

private:
    int L_;
    int P_;
    double tau_;
    std::vector<double> coeffs_;
};

/// Fourier-Bessel coefficients f~_lm(k) = sqrt(2/pi) sum_p f_lmp j_lp(k).
struct FourierBesselTable {
    int L = 0;
    std::vector<double> ks;
    /// values[q * L^2 + ell^2 + ell + m] for ks[q].
    std::vector<cplx> values;
    /// Largest relative error estimate among the j_lp values used.
    double max_rel_error = 0.0;

    bool precise() const { return max_rel_error <= kBridgePrecision; }
    const cplx& at(std::size_t q, int ell, int m) const
    {
        return values[q * static_cast<std::size_t>(L) * L + lm_index(ell, m)];
    }
};

FourierBesselTable fourier_bessel(const BesselBridge& bridge, const FlagCoeffs& coeffs,
                                  std::span<const double> ks);

} // namespace flag
