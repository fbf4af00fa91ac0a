#include "flag/laguerre.hpp"

#include "flag/common.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace flag {

namespace {

constexpr double kRescaleHigh = 1e100;
constexpr double kRescaleLow = 1e-100;

// l_n and l_{n-1} of the normalized sequence, sharing one scale:
// the true values are hi * exp(shift) and lo * exp(shift).
struct ScaledPair {
    double hi;
    double lo;
    double shift;
};

double next_normalized(int p, double x, double cur, double prev)
{
    const double dp = p;
    return ((2.0 * dp + 3.0 - x) * cur - std::sqrt(dp * (dp + 2.0)) * prev) /
           std::sqrt((dp + 1.0) * (dp + 3.0));
}

void rescale(double& cur, double& prev, double& shift)
{
    const double mag = std::max(std::abs(cur), std::abs(prev));
    if (mag > kRescaleHigh || (mag < kRescaleLow && mag > 0.0)) {
        cur /= mag;
        prev /= mag;
        shift += std::log(mag);
    }
}

ScaledPair normalized_pair(int n, double x)
{
    double prev = 0.0;
    double cur = M_SQRT1_2;
    double shift = 0.0;
    for (int p = 0; p < n; ++p) {
        const double next = next_normalized(p, x, cur, prev);
        prev = cur;
        cur = next;
        rescale(cur, prev, shift);
    }
    return {cur, prev, shift};
}

double scaled_value(double v, double shift)
{
    if (v == 0.0)
        return 0.0;
    return std::copysign(std::exp(std::log(std::abs(v)) + shift), v);
}

std::vector<double> laguerre_roots(int P)
{
    if (P == 1)
        return {3.0};
    Eigen::VectorXd diag(P);
    Eigen::VectorXd sub(P - 1);
    for (int k = 0; k < P; ++k)
        diag[k] = 2.0 * k + 3.0;
    for (int k = 0; k + 1 < P; ++k)
        sub[k] = std::sqrt((k + 1.0) * (k + 3.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("Laguerre node eigenvalue solve did not converge");

    std::vector<double> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + P);
    std::sort(roots.begin(), roots.end());

    // Newton polish on L_P^(2); x L_P' = P L_P - (P+2) L_{P-1}.
    const double n = P;
    for (double& x : roots) {
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const ScaledPair v = normalized_pair(P, x);
            const double lp = v.hi * std::sqrt((n + 1.0) * (n + 2.0));
            const double lm = v.lo * std::sqrt(n * (n + 1.0));
            const double denom = n * lp - (n + 2.0) * lm;
            if (denom == 0.0)
                break;
            const double dx = x * lp / denom;
            x -= dx;
            if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon() * x) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            const ScaledPair v = normalized_pair(P, x);
            const double lp = v.hi * std::sqrt((n + 1.0) * (n + 2.0));
            const double lm = v.lo * std::sqrt(n * (n + 1.0));
            if (std::abs(x * lp / (n * lp - (n + 2.0) * lm)) > 1e-12 * x)
                throw NumericalError("Newton refinement of Laguerre node did not converge (P=" +
                                     std::to_string(P) + ")");
        }
    }
    for (int i = 0; i < P; ++i) {
        if (!(roots[i] > 0.0) || (i > 0 && !(roots[i] > roots[i - 1])))
            throw NumericalError("Laguerre nodes not strictly increasing (P=" + std::to_string(P) +
                                 ")");
    }
    return roots;
}

} // namespace

double laguerre_poly(int p, double x)
{
    if (p == 0)
        return 1.0;
    double prev = 1.0;
    double cur = 3.0 - x;
    for (int n = 1; n < p; ++n) {
        const double next = ((2.0 * n + 3.0 - x) * cur - (n + 2.0) * prev) / (n + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

void normalized_laguerre(double x, double log_scale, std::span<double> out)
{
    double prev = 0.0;
    double cur = M_SQRT1_2;
    double shift = log_scale;
    for (std::size_t p = 0; p < out.size(); ++p) {
        out[p] = scaled_value(cur, shift);
        const double next = next_normalized(static_cast<int>(p), x, cur, prev);
        prev = cur;
        cur = next;
        rescale(cur, prev, shift);
    }
}

RadialScheme::RadialScheme(int P, double tau) : P_(P), tau_(tau)
{
    if (P < 1)
        throw std::invalid_argument("radial band-limit P must be >= 1");
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw std::invalid_argument("scale factor tau must be positive and finite");

    roots_ = laguerre_roots(P);
    nodes_.resize(P);
    log_weights_.resize(P);
    const double n = P;
    for (int i = 0; i < P; ++i) {
        const double x = roots_[i];
        nodes_[i] = tau * x;
        const ScaledPair next = normalized_pair(P + 1, x);
        const double log_abs_next =
            std::log(std::abs(next.hi)) + next.shift + 0.5 * std::log((n + 2.0) * (n + 3.0));
        log_weights_[i] = std::log((n + 2.0) * x) + x - std::log(n + 1.0) - 2.0 * log_abs_next;
        if (!std::isfinite(log_weights_[i]))
            throw NumericalError("non-finite Gauss-Laguerre weight (P=" + std::to_string(P) + ")");
    }

    // M[p][i] = tau^3 w_i K_p(r_i); the e^{x_i} in w_i and the e^{-x_i/2} of K_p
    // are combined before exponentiation.
    const double log_tau = std::log(tau);
    weighted_basis_.assign(static_cast<std::size_t>(P) * P, 0.0);
    node_basis_.assign(static_cast<std::size_t>(P) * P, 0.0);
    std::vector<double> column(P);
    for (int i = 0; i < P; ++i) {
        const double x = roots_[i];
        normalized_laguerre(x, log_weights_[i] - 0.5 * x + 1.5 * log_tau, column);
        for (int p = 0; p < P; ++p)
            weighted_basis_[idx(p, i)] = column[p];
        normalized_laguerre(x, -0.5 * x - 1.5 * log_tau, {node_basis_.data() + idx(i, 0),
                                                          static_cast<std::size_t>(P)});
    }
}

double RadialScheme::radial_measure_weight(int i) const
{
    return std::exp(log_weights_[i] + 3.0 * std::log(tau_));
}

double tau_for_radius(int P, double R)
{
    if (!(R > 0.0))
        throw std::invalid_argument("target radius must be positive");
    const RadialScheme unit(P, 1.0);
    return R / unit.roots().back();
}

void basis_k_all(double tau, double r, std::span<double> out)
{
    if (r < 0.0)
        throw std::invalid_argument("radius must be nonnegative");
    const double x = r / tau;
    normalized_laguerre(x, -0.5 * x - 1.5 * std::log(tau), out);
}

double basis_k(double tau, int p, double r)
{
    std::vector<double> values(static_cast<std::size_t>(p) + 1);
    basis_k_all(tau, r, values);
    return values.back();
}

double basis_k(const RadialScheme& scheme, int p, double r)
{
    if (p < 0 || p >= scheme.band_limit())
        throw std::out_of_range("basis index outside the scheme band-limit");
    return basis_k(scheme.tau(), p, r);
}

RadialCoeffs radial_analysis(const RadialScheme& scheme, const RadialSamples& samples)
{
    const int P = scheme.band_limit();
    if (static_cast<int>(samples.values.size()) != P)
        throw std::invalid_argument("sample count does not match the radial scheme");
    RadialCoeffs out{std::vector<double>(P, 0.0)};
    for (int p = 0; p < P; ++p) {
        const auto row = scheme.weighted_basis_row(p);
        double acc = 0.0;
        for (int i = 0; i < P; ++i)
            acc += row[i] * samples.values[i];
        out.values[p] = acc;
    }
    return out;
}

std::vector<double> radial_synthesis(const RadialScheme& scheme, const RadialCoeffs& coeffs,
                                     std::span<const double> radii)
{
    const int Pc = coeffs.band_limit();
    if (Pc > scheme.band_limit())
        throw std::invalid_argument("coefficient band-limit exceeds the radial scheme");
    std::vector<double> out(radii.size(), 0.0);
    std::vector<double> basis(Pc);
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (radii[k] < 0.0)
            throw std::invalid_argument("negative radius");
        basis_k_all(scheme.tau(), radii[k], basis);
        double acc = 0.0;
        for (int p = 0; p < Pc; ++p)
            acc += coeffs.values[p] * basis[p];
        out[k] = acc;
    }
    return out;
}

RadialSamples radial_synthesis_nodes(const RadialScheme& scheme, const RadialCoeffs& coeffs)
{
    const int P = scheme.band_limit();
    const int Pc = coeffs.band_limit();
    if (Pc > P)
        throw std::invalid_argument("coefficient band-limit exceeds the radial scheme");
    RadialSamples out{std::vector<double>(P, 0.0)};
    for (int i = 0; i < P; ++i) {
        const auto row = scheme.basis_row_at_node(i);
        double acc = 0.0;
        for (int p = 0; p < Pc; ++p)
            acc += row[p] * coeffs.values[p];
        out.values[i] = acc;
    }
    return out;
}

RadialCoeffs radial_translate(const RadialScheme& scheme, const RadialCoeffs& coeffs, double r)
{
    const int Pc = coeffs.band_limit();
    if (Pc > scheme.band_limit())
        throw std::invalid_argument("coefficient band-limit exceeds the radial scheme");
    std::vector<double> basis(Pc);
    basis_k_all(scheme.tau(), r, basis);
    RadialCoeffs out{coeffs.values};
    for (int p = 0; p < Pc; ++p)
        out.values[p] *= basis[p];
    return out;
}

} // namespace flag
