#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace flag {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Raised when a numerical routine cannot deliver its documented accuracy
/// (root finding failed, an identity that must hold is violated, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent on-disk data.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Packed index of (ell, m), -ell <= m <= ell.
inline constexpr std::size_t lm_index(int ell, int m)
{
    return static_cast<std::size_t>(ell * ell + ell + m);
}

} // namespace flag
