#pragma once

// Spherical Laguerre transform on the radial half-line.
//
// Basis functions
//     K_p(r) = 1/sqrt((p+1)(p+2)) * exp(-r/(2 tau)) / tau^(3/2) * L_p^(2)(r/tau)
// are orthonormal under the measure r^2 dr. A signal band-limited at P is
// captured exactly by its samples at the P roots of L_P^(2) (scaled by tau),
// using Gauss-Laguerre quadrature for the weight x^2 exp(-x).

#include <span>
#include <vector>

namespace flag {

/// Generalized Laguerre polynomial of order two, L_p^(2)(x), by three-term recurrence.
double laguerre_poly(int p, double x);

/// Fills out[p] = exp(log_scale) * L_p^(2)(x) / sqrt((p+1)(p+2)) for p < out.size().
/// Intermediate values are rescaled so that neither the polynomial growth at
/// large x nor a large |log_scale| overflows on its own.
void normalized_laguerre(double x, double log_scale, std::span<double> out);

struct RadialCoeffs {
    std::vector<double> values;

    int band_limit() const { return static_cast<int>(values.size()); }
};

struct RadialSamples {
    std::vector<double> values;
};

class RadialScheme {
public:
    /// Builds the Gauss-Laguerre sampling for band-limit P and scale factor tau.
    /// Throws std::invalid_argument on bad sizes, NumericalError if the node
    /// computation fails.
    RadialScheme(int P, double tau);

    int band_limit() const { return P_; }
    double tau() const { return tau_; }

    /// Sample radii r_i = tau * x_i, strictly increasing.
    std::span<const double> nodes() const { return nodes_; }
    /// Unscaled roots x_i of L_P^(2).
    std::span<const double> roots() const { return roots_; }
    /// ln w_i, with w_i = (P+2) x_i e^{x_i} / ((P+1) [L_{P+1}^(2)(x_i)]^2).
    std::span<const double> log_weights() const { return log_weights_; }

    /// Largest sample radius.
    double outer_radius() const { return nodes_.back(); }

    /// Analysis matrix: f_p = sum_i weighted_basis(p, i) f(r_i).
    double weighted_basis(int p, int i) const { return weighted_basis_[idx(p, i)]; }
    std::span<const double> weighted_basis_row(int p) const
    {
        return {weighted_basis_.data() + idx(p, 0), static_cast<std::size_t>(P_)};
    }

    /// K_p(r_i), laid out by node: basis_at_node(i, p).
    double basis_at_node(int i, int p) const { return node_basis_[idx(i, p)]; }
    std::span<const double> basis_row_at_node(int i) const
    {
        return {node_basis_.data() + idx(i, 0), static_cast<std::size_t>(P_)};
    }

    /// Quadrature weight for the measure r^2 dr at node i, i.e.
    /// int r^2 g(r) dr = sum_i radial_measure_weight(i) g(r_i) for g = e^{-r/tau} * poly.
    /// Overflows to inf once x_i exceeds ~700 (P above ~180).
    double radial_measure_weight(int i) const;

private:
    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * P_ + b; }

    int P_;
    double tau_;
    std::vector<double> roots_;
    std::vector<double> nodes_;
    std::vector<double> log_weights_;
    std::vector<double> weighted_basis_;
    std::vector<double> node_basis_;
};

/// Scale factor placing the outermost of P nodes at radius R.
double tau_for_radius(int P, double R);

/// K_p(r) for scale factor tau.
double basis_k(double tau, int p, double r);
double basis_k(const RadialScheme& scheme, int p, double r);

/// K_p(r) for all p < out.size().
void basis_k_all(double tau, double r, std::span<double> out);

RadialCoeffs radial_analysis(const RadialScheme& scheme, const RadialSamples& samples);

/// Evaluates sum_p f_p K_p(r) at each radius. coeffs.band_limit() <= scheme band-limit.
std::vector<double> radial_synthesis(const RadialScheme& scheme, const RadialCoeffs& coeffs,
                                     std::span<const double> radii);

/// Samples of the expansion at the scheme's own nodes.
RadialSamples radial_synthesis_nodes(const RadialScheme& scheme, const RadialCoeffs& coeffs);

/// Radial translation: out_p = f_p K_p(r).
RadialCoeffs radial_translate(const RadialScheme& scheme, const RadialCoeffs& coeffs, double r);

} // namespace flag
