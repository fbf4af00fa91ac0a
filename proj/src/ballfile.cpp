#include "flag/ballfile.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

namespace flag {

namespace {

constexpr char kMagic[4] = {'F', 'L', 'B', '1'};
constexpr std::uint16_t kVersion = 1;
// Guards against absurd headers before allocating.
constexpr std::uint32_t kMaxBandLimit = 1u << 14;

class Writer {
public:
    void u8(std::uint8_t v) { bytes_.push_back(v); }
    void u16(std::uint16_t v) { le(v, 2); }
    void u32(std::uint32_t v) { le(v, 4); }
    void f64(double v) { le(std::bit_cast<std::uint64_t>(v), 8); }
    void raw(const char* p, std::size_t n) { bytes_.insert(bytes_.end(), p, p + n); }

    void values(std::span<const cplx> data, bool is_complex)
    {
        for (const cplx& v : data) {
            f64(v.real());
            if (is_complex)
                f64(v.imag());
            else if (v.imag() != 0.0)
                throw std::invalid_argument("real ball file cannot hold complex values");
        }
    }

    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    void le(std::uint64_t v, int n)
    {
        for (int i = 0; i < n; ++i)
            bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    std::vector<std::uint8_t> bytes_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(le(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(le(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
    double f64() { return std::bit_cast<double>(le(8)); }
    void raw(char* out, std::size_t n)
    {
        need(n);
        std::memcpy(out, bytes_.data() + pos_, n);
        pos_ += n;
    }

    std::size_t remaining() const { return bytes_.size() - pos_; }

    void values(std::vector<cplx>& out, std::size_t count, bool is_complex)
    {
        const std::size_t per = is_complex ? 16 : 8;
        if (count > remaining() / per)
            throw FormatError("ball file payload is truncated");
        out.resize(count);
        for (cplx& v : out) {
            const double re = f64();
            const double im = is_complex ? f64() : 0.0;
            v = {re, im};
        }
    }

private:
    void need(std::size_t n) const
    {
        if (remaining() < n)
            throw FormatError("ball file is truncated");
    }
    std::uint64_t le(int n)
    {
        need(static_cast<std::size_t>(n));
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i)
            v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
        pos_ += static_cast<std::size_t>(n);
        return v;
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

BallSignal empty_signal(int n_r, int n_theta, int n_phi)
{
    BallSignal s;
    s.n_r = n_r;
    s.n_theta = n_theta;
    s.n_phi = n_phi;
    return s;
}

void check_band(std::uint32_t v, const char* what)
{
    if (v < 1 || v > kMaxBandLimit)
        throw FormatError(std::string("ball file has invalid ") + what + " = " + std::to_string(v));
}

} // namespace

BallFile make_samples_file(const BallScheme& scheme, BallSignal samples, bool is_complex)
{
    if (!samples.matches(scheme))
        throw std::invalid_argument("samples do not match the scheme");
    BallFile f;
    f.kind = BallFileKind::Samples;
    f.L = scheme.L();
    f.P = scheme.P();
    f.tau = scheme.tau();
    f.is_complex = is_complex;
    f.samples = std::move(samples);
    return f;
}

BallFile make_coeffs_file(double tau, FlagCoeffs coeffs, bool is_complex)
{
    BallFile f;
    f.kind = BallFileKind::Coefficients;
    f.L = coeffs.L;
    f.P = coeffs.P;
    f.tau = tau;
    f.is_complex = is_complex;
    f.coeffs = std::move(coeffs);
    return f;
}

BallFile make_wavelets_file(WaveletCoeffSet wavelets, bool is_complex)
{
    BallFile f;
    f.kind = BallFileKind::Wavelets;
    f.L = wavelets.params.L;
    f.P = wavelets.params.P;
    f.tau = wavelets.tau;
    f.is_complex = is_complex;
    f.wavelets = std::move(wavelets);
    return f;
}

std::vector<std::uint8_t> encode_ball_file(const BallFile& file)
{
    Writer w;
    w.raw(kMagic, 4);
    w.u16(kVersion);
    w.u8(static_cast<std::uint8_t>(file.kind));
    w.u8(file.is_complex ? 1 : 0);
    w.u32(static_cast<std::uint32_t>(file.L));
    w.u32(static_cast<std::uint32_t>(file.P));
    w.f64(file.tau);

    switch (file.kind) {
    case BallFileKind::Samples: {
        const BallSignal& s = file.samples;
        if (s.n_r != file.P || s.n_theta != file.L || s.n_phi != 2 * file.L - 1 ||
            s.values.size() != static_cast<std::size_t>(s.n_r) * s.n_theta * s.n_phi)
            throw std::invalid_argument("sample grid does not match the file band-limits");
        w.u32(static_cast<std::uint32_t>(s.n_theta));
        w.u32(static_cast<std::uint32_t>(s.n_phi));
        w.values(s.values, file.is_complex);
        break;
    }
    case BallFileKind::Coefficients: {
        const FlagCoeffs& c = file.coeffs;
        if (c.L != file.L || c.P != file.P)
            throw std::invalid_argument("coefficients do not match the file band-limits");
        w.values(c.values, file.is_complex);
        break;
    }
    case BallFileKind::Wavelets: {
        const WaveletCoeffSet& ws = file.wavelets;
        w.f64(ws.params.lambda);
        w.f64(ws.params.nu);
        w.u32(static_cast<std::uint32_t>(ws.params.J0));
        w.u32(static_cast<std::uint32_t>(ws.params.J0p));
        w.u8(ws.multires ? 1 : 0);
        w.u32(static_cast<std::uint32_t>(ws.wavelets.size()));
        for (const WaveletScale& s : ws.wavelets) {
            w.u32(static_cast<std::uint32_t>(s.j));
            w.u32(static_cast<std::uint32_t>(s.jp));
            w.u32(static_cast<std::uint32_t>(s.L));
            w.u32(static_cast<std::uint32_t>(s.P));
        }
        w.values(ws.scaling.values, file.is_complex);
        for (const WaveletScale& s : ws.wavelets)
            w.values(s.signal.values, file.is_complex);
        break;
    }
    default:
        throw std::invalid_argument("unknown ball file kind");
    }
    return w.take();
}

BallFile decode_ball_file(std::span<const std::uint8_t> bytes)
{
    Reader r(bytes);
    char magic[4];
    r.raw(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError("not a ball file (bad magic)");
    const std::uint16_t version = r.u16();
    if (version != kVersion)
        throw FormatError("unsupported ball file version " + std::to_string(version));
    const std::uint8_t kind = r.u8();
    const std::uint8_t cflag = r.u8();
    if (cflag > 1)
        throw FormatError("invalid complex flag");
    const std::uint32_t L = r.u32();
    const std::uint32_t P = r.u32();
    check_band(L, "L");
    check_band(P, "P");
    const double tau = r.f64();
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw FormatError("ball file has invalid tau");

    BallFile f;
    f.L = static_cast<int>(L);
    f.P = static_cast<int>(P);
    f.tau = tau;
    f.is_complex = cflag == 1;

    switch (kind) {
    case 0: {
        f.kind = BallFileKind::Samples;
        const std::uint32_t n_theta = r.u32();
        const std::uint32_t n_phi = r.u32();
        if (n_theta != L || n_phi != 2 * L - 1)
            throw FormatError("sample grid shape inconsistent with L");
        f.samples = empty_signal(f.P, f.L, 2 * f.L - 1);
        r.values(f.samples.values, static_cast<std::size_t>(P) * n_theta * n_phi, f.is_complex);
        break;
    }
    case 1: {
        f.kind = BallFileKind::Coefficients;
        f.coeffs.L = f.L;
        f.coeffs.P = f.P;
        r.values(f.coeffs.values, static_cast<std::size_t>(L) * L * P, f.is_complex);
        break;
    }
    case 2: {
        f.kind = BallFileKind::Wavelets;
        WaveletCoeffSet& ws = f.wavelets;
        ws.tau = tau;
        ws.params.L = f.L;
        ws.params.P = f.P;
        ws.params.lambda = r.f64();
        ws.params.nu = r.f64();
        ws.params.J0 = static_cast<int>(r.u32());
        ws.params.J0p = static_cast<int>(r.u32());
        try {
            ws.params.validate();
        } catch (const std::invalid_argument& e) {
            throw FormatError(std::string("invalid tiling parameters: ") + e.what());
        }
        const std::uint8_t mr = r.u8();
        if (mr > 1)
            throw FormatError("invalid multires flag");
        ws.multires = mr == 1;
        const std::uint32_t n_scales = r.u32();
        const auto expected = static_cast<std::uint32_t>(ws.params.n_angular_scales() *
                                                         ws.params.n_radial_scales());
        if (n_scales != expected)
            throw FormatError("wavelet scale count does not match the tiling parameters");
        ws.wavelets.resize(n_scales);
        for (WaveletScale& s : ws.wavelets) {
            s.j = static_cast<int>(r.u32());
            s.jp = static_cast<int>(r.u32());
            const std::uint32_t Lj = r.u32();
            const std::uint32_t Pj = r.u32();
            if (Lj < 1 || Lj > L || Pj < 1 || Pj > P)
                throw FormatError("wavelet scale band-limits out of range");
            s.L = static_cast<int>(Lj);
            s.P = static_cast<int>(Pj);
        }
        ws.scaling = empty_signal(f.P, f.L, 2 * f.L - 1);
        r.values(ws.scaling.values, static_cast<std::size_t>(P) * L * (2 * L - 1), f.is_complex);
        for (WaveletScale& s : ws.wavelets) {
            s.signal = empty_signal(s.P, s.L, 2 * s.L - 1);
            r.values(s.signal.values, static_cast<std::size_t>(s.P) * s.L * (2 * s.L - 1),
                     f.is_complex);
        }
        break;
    }
    default:
        throw FormatError("unknown ball file kind " + std::to_string(kind));
    }
    if (r.remaining() != 0)
        throw FormatError("ball file has trailing bytes after the payload");
    return f;
}

void write_ball_file(const std::filesystem::path& path, const BallFile& file)
{
    const std::vector<std::uint8_t> bytes = encode_ball_file(file);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FormatError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw FormatError("failed writing " + path.string());
}

BallFile read_ball_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode_ball_file(bytes);
}

} // namespace flag
