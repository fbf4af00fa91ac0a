#include "flag/bench.hpp"

#include "flag/denoise.hpp"
#include "flag/flaglet.hpp"

#include <chrono>
#include <cmath>
#include <charconv>
#include <stdexcept>

namespace flag {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

FlagCoeffs random_coeffs(int L, int P, std::uint64_t seed)
{
    FlagCoeffs out(L, P);
    std::uint64_t counter = 0;
    for (cplx& v : out.values) {
        const double re = standard_normal(seed, counter++);
        const double im = standard_normal(seed, counter++);
        v = {re, im};
    }
    return out;
}

double max_abs_diff(const FlagCoeffs& a, const FlagCoeffs& b)
{
    if (a.L != b.L || a.P != b.P)
        throw std::invalid_argument("coefficient band-limits differ");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

BenchRecord run_roundtrip(const RoundtripConfig& cfg)
{
    if (cfg.L < 1 || cfg.P < 1)
        throw std::invalid_argument("band-limits must be >= 1");
    if (cfg.reps < 1)
        throw std::invalid_argument("reps must be >= 1");

    BenchRecord rec;
    rec.L = cfg.L;
    rec.P = cfg.P;

    const auto setup_start = Clock::now();
    const auto scheme = SchemeCache::shared().get(cfg.L, cfg.P, cfg.tau);
    std::unique_ptr<TilingKernels> kernels;
    if (cfg.transform == Transform::Flaglet) {
        TilingParams prm{cfg.lambda, cfg.nu, cfg.J0, cfg.J0p, cfg.L, cfg.P};
        kernels = std::make_unique<TilingKernels>(prm);
        for (int j = prm.J0; j <= prm.J(); ++j)
            for (int jp = prm.J0p; jp <= prm.Jp(); ++jp)
                scale_scheme(prm, j, jp, cfg.tau, cfg.multires);
    }
    rec.t_setup_s = seconds_since(setup_start);
    rec.n_samples = scheme->n_samples();

    for (int rep = 0; rep < cfg.reps; ++rep) {
        const FlagCoeffs f = random_coeffs(cfg.L, cfg.P, cfg.seed + static_cast<std::uint64_t>(rep));
        FlagCoeffs back;
        if (cfg.transform == Transform::Flag) {
            auto t0 = Clock::now();
            const BallSignal s = flag_synthesis(*scheme, f);
            rec.t_synthesis_s += seconds_since(t0);
            t0 = Clock::now();
            back = flag_analysis(*scheme, s);
            rec.t_analysis_s += seconds_since(t0);
        } else {
            const BallSignal s = flag_synthesis(*scheme, f);
            auto t0 = Clock::now();
            const WaveletCoeffSet w = flaglet_analysis(*scheme, s, *kernels, cfg.multires);
            rec.t_analysis_s += seconds_since(t0);
            t0 = Clock::now();
            const BallSignal r = flaglet_synthesis(w, *kernels, *scheme);
            rec.t_synthesis_s += seconds_since(t0);
            back = flag_analysis(*scheme, r);
        }
        rec.epsilon_max = std::max(rec.epsilon_max, max_abs_diff(f, back));
    }
    rec.t_synthesis_s /= cfg.reps;
    rec.t_analysis_s /= cfg.reps;
    rec.t_c_s = 0.5 * (rec.t_synthesis_s + rec.t_analysis_s);
    return rec;
}

double loglog_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("slope fit needs at least two matching points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string bench_csv_header() { return "L,P,N_samples,t_synthesis_s,t_analysis_s,t_c_s,epsilon_max"; }

std::string bench_csv_row(const BenchRecord& r)
{
    // to_chars ignores the global locale, so the decimal separator is always a dot.
    std::string out = std::to_string(r.L) + ',' + std::to_string(r.P) + ',' +
                      std::to_string(r.n_samples);
    for (double v : {r.t_synthesis_s, r.t_analysis_s, r.t_c_s, r.epsilon_max}) {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 6);
        out += ',';
        out.append(buf, res.ptr);
    }
    return out;
}

} // namespace flag
