#pragma once

// Round-trip accuracy and timing protocol: random N(0,1) harmonic
// coefficients are synthesized, decomposed and reconstructed, and the maximum
// coefficient error and the mean transform time are recorded.

#include "flag/ball.hpp"

#include <cstdint>
#include <span>
#include <string>

namespace flag {

enum class Transform { Flag, Flaglet };

struct RoundtripConfig {
    Transform transform = Transform::Flag;
    int L = 16;
    int P = 16;
    double tau = 1.0;
    std::uint64_t seed = 1;
    bool multires = false;
    double lambda = 2.0;
    double nu = 2.0;
    int J0 = 0;
    int J0p = 0;
    int reps = 1;
};

struct BenchRecord {
    int L = 0;
    int P = 0;
    std::size_t n_samples = 0;
    double t_synthesis_s = 0.0;
    double t_analysis_s = 0.0;
    double t_c_s = 0.0;
    double epsilon_max = 0.0;
    double t_setup_s = 0.0;
};

/// Coefficients with independent N(0,1) real and imaginary parts.
FlagCoeffs random_coeffs(int L, int P, std::uint64_t seed);

double max_abs_diff(const FlagCoeffs& a, const FlagCoeffs& b);

BenchRecord run_roundtrip(const RoundtripConfig& config);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord& record);

} // namespace flag
