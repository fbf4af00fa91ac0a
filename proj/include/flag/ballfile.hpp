#pragma once

// Binary container for ball data ("FLB1").
//
// All fields little-endian:
//   offset 0   char[4]  magic "FLB1"
//          4   u16      version (1)
//          6   u8       kind: 0 = real-space samples, 1 = Fourier-Laguerre coefficients,
//                             2 = flaglet coefficient set
//          7   u8       1 if the payload is complex (interleaved re, im), 0 if real
//          8   u32      L
//         12   u32      P
//         16   f64      tau
//         24   layout descriptor
//                kind 0: u32 n_theta, u32 n_phi
//                kind 1: empty
//                kind 2: f64 lambda, f64 nu, u32 J0, u32 J0p, u8 multires, u32 n_scales,
//                        then n_scales x (u32 j, u32 jp, u32 L_j, u32 P_j)
//   payload, f64 values:
//     kind 0: samples indexed (radial node, ring, longitude), longitude fastest
//     kind 1: coefficients indexed (p, ell^2 + ell + m)
//     kind 2: scaling samples on the full grid, then each scale's samples on its
//             own grid, in descriptor order

#include "flag/flaglet.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace flag {

enum class BallFileKind : std::uint8_t { Samples = 0, Coefficients = 1, Wavelets = 2 };

struct BallFile {
    BallFileKind kind = BallFileKind::Coefficients;
    int L = 0;
    int P = 0;
    double tau = 1.0;
    bool is_complex = true;

    BallSignal samples;       // kind 0
    FlagCoeffs coeffs;        // kind 1
    WaveletCoeffSet wavelets; // kind 2
};

BallFile make_samples_file(const BallScheme& scheme, BallSignal samples, bool is_complex);
BallFile make_coeffs_file(double tau, FlagCoeffs coeffs, bool is_complex);
BallFile make_wavelets_file(WaveletCoeffSet wavelets, bool is_complex);

/// Throws std::invalid_argument if a real file holds nonzero imaginary parts.
std::vector<std::uint8_t> encode_ball_file(const BallFile& file);
/// Throws FormatError on bad magic, version, sizes or payload length.
BallFile decode_ball_file(std::span<const std::uint8_t> bytes);

void write_ball_file(const std::filesystem::path& path, const BallFile& file);
BallFile read_ball_file(const std::filesystem::path& path);

} // namespace flag
