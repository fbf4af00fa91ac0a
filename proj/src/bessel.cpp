#include "flag/bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace flag {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSeriesTerms = 20000;

// Neumaier-compensated accumulator that also tracks sum |x| for error estimates.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    double abs_sum = 0.0;

    void add(double x)
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
        abs_sum += std::abs(x);
    }
    double value() const { return sum + carry; }
};

struct Series {
    double value;
    double abs_sum;
    int terms;
};

// sum_s (alpha)_s (beta)_s / ((gamma)_s s!) x^s. Terminates when alpha or beta is a
// nonpositive integer; otherwise runs until the terms drop below rounding.
Series hypergeometric_series(double alpha, double beta, double gamma, double x)
{
    CompensatedSum acc;
    double term = 1.0;
    int s = 0;
    for (; s < kMaxSeriesTerms; ++s) {
        acc.add(term);
        term *= (alpha + s) * (beta + s) / ((gamma + s) * (s + 1.0)) * x;
        if (term == 0.0)
            return {acc.value(), acc.abs_sum, s + 1};
        if (std::abs(term) < 0.25 * kEps * std::abs(acc.value()) && s > 2)
            return {acc.value(), acc.abs_sum, s + 1};
    }
    return {acc.value(), std::numeric_limits<double>::infinity(), s};
}

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// mu^ell_j(k) as sign * magnitude with the magnitude's log kept separate so that
// factorial growth in j does not overflow before it meets c^p_j.
struct LogMoment {
    double log_scale; // mu = series * exp(log_scale)
    double series;
    double rel_error;
};

LogMoment log_moment(int ell, int j, double k, double tau)
{
    const double kt = tau * k;
    double log_scale = 0.5 * std::log(pi) + j * std::log(2.0) + 1.5 * std::log(tau) +
                       std::lgamma(j + ell + 1.0) - std::lgamma(ell + 1.5);
    if (kt == 0.0) {
        if (ell == 0)
            return {log_scale, 1.0, 4.0 * kEps};
        return {0.0, 0.0, 0.0};
    }
    log_scale += ell * std::log(kt);

    const double q = 4.0 * kt * kt;
    const double w = q / (1.0 + q);
    const double log1q = std::log1p(q);
    const double a = 0.5 * (j + ell + 1.0);
    const double b = 0.5 * (j + ell) + 1.0;
    const double c = ell + 1.5;

    // 2F1(a, b; c; -q) via the Pfaff transformations
    //   (1+q)^{-a} 2F1(a, c-b; c; w)  or  (1+q)^{-b} 2F1(c-a, b; c; w),  w = q/(1+q),
    // one of which is a polynomial in w whenever j > ell.
    if (is_nonpositive_integer(c - b)) {
        const Series s = hypergeometric_series(a, c - b, c, w);
        return {log_scale - a * log1q, s.value,
                (s.terms + 8.0) * kEps * s.abs_sum / std::abs(s.value)};
    }
    if (is_nonpositive_integer(c - a)) {
        const Series s = hypergeometric_series(c - a, b, c, w);
        return {log_scale - b * log1q, s.value,
                (s.terms + 8.0) * kEps * s.abs_sum / std::abs(s.value)};
    }

    // Non-terminating case (ell >= j). Direct series in w when it converges fast,
    // otherwise the connection formula to 1 - w; the Pfaff form has C - A - B = 1/2,
    // so both connection terms are plain power series.
    const double A = a;
    const double B = c - b;
    const double C = c;
    if (w <= 0.5) {
        const Series s = hypergeometric_series(A, B, C, w);
        return {log_scale - a * log1q, s.value,
                (s.terms + 8.0) * kEps * s.abs_sum / std::abs(s.value)};
    }
    const double u = 1.0 / (1.0 + q); // 1 - w
    const Series s1 = hypergeometric_series(A, B, 0.5, u);
    const Series s2 = hypergeometric_series(C - A, C - B, 1.5, u);
    const double g1 = std::exp(std::lgamma(C) + std::lgamma(0.5) - std::lgamma(C - A) -
                               std::lgamma(C - B));
    const double g2 = -2.0 * std::sqrt(pi) *
                      std::exp(std::lgamma(C) - std::lgamma(A) - std::lgamma(B)) * std::sqrt(u);
    const double t1 = g1 * s1.value;
    const double t2 = g2 * s2.value;
    const double value = t1 + t2;
    const double err = (s1.terms + 16.0) * kEps * std::abs(g1) * s1.abs_sum +
                       (s2.terms + 16.0) * kEps * std::abs(g2) * s2.abs_sum;
    return {log_scale - a * log1q, value, err / std::abs(value)};
}

} // namespace

BesselBridge::BesselBridge(int L, int P, double tau) : L_(L), P_(P), tau_(tau)
{
    if (L < 1 || P < 1)
        throw std::invalid_argument("bridge band-limits must be >= 1");
    if (!(tau > 0.0))
        throw std::invalid_argument("scale factor tau must be positive");
    coeffs_.assign(static_cast<std::size_t>(P) * P, 0.0);
    for (int p = 0; p < P; ++p) {
        double c = 0.5 * (p + 1.0) * (p + 2.0);
        coeffs_[p * P] = c;
        for (int j = 1; j <= p; ++j) {
            c *= -(p - j + 1.0) / (j * (j + 2.0));
            coeffs_[p * P + j] = c;
        }
    }
}

BridgeValue BesselBridge::moment(int ell, int j, double k) const
{
    if (ell < 0 || j < 0 || k < 0.0)
        throw std::invalid_argument("moment arguments must be nonnegative");
    const LogMoment m = log_moment(ell, j, k, tau_);
    if (m.series == 0.0)
        return {0.0, m.rel_error};
    return {m.series * std::exp(m.log_scale), m.rel_error};
}

BridgeValue BesselBridge::jlp(int ell, int p, double k) const
{
    if (ell < 0 || ell >= L_ || p < 0 || p >= P_)
        throw std::out_of_range("bridge index outside band-limits");
    if (k < 0.0)
        throw std::invalid_argument("wavenumber must be nonnegative");

    CompensatedSum acc;
    double abs_err = 0.0;
    for (int j = 0; j <= p; ++j) {
        const double c = laguerre_coefficient(p, j);
        const LogMoment m = log_moment(ell, j + 2, k, tau_);
        if (m.series == 0.0)
            continue;
        const double term =
            std::copysign(1.0, c) * m.series * std::exp(std::log(std::abs(c)) + m.log_scale);
        acc.add(term);
        abs_err += std::abs(term) * (m.rel_error + 4.0 * kEps);
    }
    const double norm = 1.0 / std::sqrt((p + 1.0) * (p + 2.0));
    const double value = acc.value() * norm;
    if (acc.abs_sum == 0.0)
        return {0.0, 0.0};
    abs_err += (p + 2.0) * kEps * acc.abs_sum;
    const double rel = value == 0.0 ? std::numeric_limits<double>::infinity()
                                    : abs_err * norm / std::abs(value);
    return {value, rel};
}

FourierBesselTable fourier_bessel(const BesselBridge& bridge, const FlagCoeffs& coeffs,
                                  std::span<const double> ks)
{
    if (coeffs.L > bridge.L() || coeffs.P > bridge.P())
        throw std::invalid_argument("coefficient band-limits exceed the bridge");
    FourierBesselTable table;
    table.L = coeffs.L;
    table.ks.assign(ks.begin(), ks.end());
    const std::size_t nlm = coeffs.lm_count();
    table.values.assign(ks.size() * nlm, cplx{});
    const double pref = std::sqrt(2.0 / pi);

    for (std::size_t q = 0; q < ks.size(); ++q) {
        if (!(ks[q] >= 0.0) || !std::isfinite(ks[q]))
            throw std::invalid_argument("wavenumbers must be finite and nonnegative");
        for (int ell = 0; ell < coeffs.L; ++ell) {
            for (int p = 0; p < coeffs.P; ++p) {
                const BridgeValue j = bridge.jlp(ell, p, ks[q]);
                bool used = false;
                for (int m = -ell; m <= ell; ++m) {
                    const cplx f = coeffs.at(ell, m, p);
                    if (f == cplx{})
                        continue;
                    used = true;
                    table.values[q * nlm + lm_index(ell, m)] += pref * j.value * f;
                }
                if (used)
                    table.max_rel_error = std::max(table.max_rel_error, j.rel_error);
            }
        }
    }
    return table;
}

} // namespace flag
