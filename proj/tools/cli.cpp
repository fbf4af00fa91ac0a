#include "cli.hpp"

#include "flag/ballfile.hpp"
#include "flag/bench.hpp"
#include "flag/denoise.hpp"
#include "flag/flaglet.hpp"
#include "flag/parallel.hpp"
#include "flag/tiling.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <locale>
#include <sstream>
#include <ostream>
#include <stdexcept>

namespace flag::cli {

namespace {

// Distinguishes "bad flags" from "computation failed" once CLI11 has parsed.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TilingFlags {
    double lambda = 2.0;
    double nu = 2.0;
    int J0 = 0;
    int J0p = 0;

    void add_to(CLI::App& app)
    {
        app.add_option("--lambda", lambda, "Angular dilation (> 1)");
        app.add_option("--nu", nu, "Radial dilation (> 1)");
        app.add_option("--J0", J0, "Minimum angular scale")->check(CLI::NonNegativeNumber);
        app.add_option("--J0p", J0p, "Minimum radial scale")->check(CLI::NonNegativeNumber);
    }

    TilingParams params(int L, int P) const
    {
        TilingParams prm{lambda, nu, J0, J0p, L, P};
        try {
            prm.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return prm;
    }
};

struct RoundtripOpts {
    std::string transform = "flag";
    int L = 16;
    int P = 16;
    double tau = 1.0;
    std::uint64_t seed = 1;
    bool multires = false;
    TilingFlags tiling;
    double tol = -1.0;
    int reps = 1;
};

struct BenchOpts {
    std::string transform = "flag";
    int Lmin = 8;
    int Lmax = 64;
    int reps = 1;
    double tau = 1.0;
    std::uint64_t seed = 1;
    bool multires = false;
    TilingFlags tiling;
};

struct DenoiseOpts {
    std::string input;
    std::string output;
    double sigma = -1.0;
    double snr_in = 5.0;
    TilingFlags tiling;
    std::uint64_t seed = 1;
    double multiplier = 3.0;
    bool full_res = false;
};

struct KernelOpts {
    int L = 64;
    int P = 64;
    TilingFlags tiling;
    std::string out;
};

struct GenerateOpts {
    int L = 32;
    int P = 32;
    double tau = 1.0;
    std::uint64_t seed = 1;
    int blobs = 4;
    std::string kind = "samples";
    std::string out;
};

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

int cmd_roundtrip(const RoundtripOpts& o, std::ostream& out)
{
    RoundtripConfig cfg;
    cfg.transform = o.transform == "flaglet" ? Transform::Flaglet : Transform::Flag;
    if (cfg.transform == Transform::Flag && o.multires)
        throw UsageError("--multires applies to the flaglet transform only");
    cfg.L = o.L;
    cfg.P = o.P;
    cfg.tau = o.tau;
    cfg.seed = o.seed;
    cfg.multires = o.multires;
    cfg.reps = o.reps;
    if (cfg.transform == Transform::Flaglet) {
        const TilingParams prm = o.tiling.params(o.L, o.P);
        cfg.lambda = prm.lambda;
        cfg.nu = prm.nu;
        cfg.J0 = prm.J0;
        cfg.J0p = prm.J0p;
    }
    const double tol = o.tol >= 0.0 ? o.tol : (cfg.transform == Transform::Flag ? 1e-10 : 1e-9);

    const BenchRecord rec = run_roundtrip(cfg);
    out << bench_csv_header() << '\n' << bench_csv_row(rec) << '\n';
    out << "# t_setup_s=" << format_double(rec.t_setup_s) << '\n';
    return rec.epsilon_max <= tol ? kOk : kToleranceFail;
}

int cmd_bench(const BenchOpts& o, std::ostream& out)
{
    if (!is_power_of_two(o.Lmin) || !is_power_of_two(o.Lmax) || o.Lmin < 4 || o.Lmin > o.Lmax)
        throw UsageError("--Lmin and --Lmax must be powers of two with 4 <= Lmin <= Lmax");
    const Transform transform = o.transform == "flaglet" ? Transform::Flaglet : Transform::Flag;

    std::vector<double> qs;
    std::vector<double> tcs;
    out << bench_csv_header() << '\n';
    for (int L = o.Lmin; L <= o.Lmax; L *= 2) {
        RoundtripConfig cfg;
        cfg.transform = transform;
        cfg.L = L;
        cfg.P = L;
        cfg.tau = o.tau;
        cfg.seed = o.seed;
        cfg.reps = o.reps;
        cfg.multires = o.multires;
        if (transform == Transform::Flaglet) {
            const TilingParams prm = o.tiling.params(L, L);
            cfg.lambda = prm.lambda;
            cfg.nu = prm.nu;
            cfg.J0 = prm.J0;
            cfg.J0p = prm.J0p;
        }
        const BenchRecord rec = run_roundtrip(cfg);
        out << bench_csv_row(rec) << '\n';
        qs.push_back(L);
        tcs.push_back(std::max(rec.t_c_s, 1e-9));
    }
    if (qs.size() >= 2)
        out << "# loglog_slope_t_c=" << format_double(loglog_slope(qs, tcs)) << '\n';
    return kOk;
}

int cmd_denoise(const DenoiseOpts& o, std::ostream& out)
{
    BallFile in = read_ball_file(o.input);
    const auto scheme = SchemeCache::shared().get(in.L, in.P, in.tau);
    FlagCoeffs clean;
    switch (in.kind) {
    case BallFileKind::Samples:
        clean = flag_analysis(*scheme, in.samples);
        break;
    case BallFileKind::Coefficients:
        clean = std::move(in.coeffs);
        break;
    default:
        throw UsageError("denoise expects a sample or coefficient file");
    }

    const TilingParams prm = o.tiling.params(in.L, in.P);
    const TilingKernels kernels(prm);
    NoiseModel model{0.0, in.L, in.P, o.seed};
    model.sigma = o.sigma >= 0.0 ? o.sigma : sigma_for_snr(clean, o.snr_in);
    const DenoiseReport rep = denoise(clean, *scheme, kernels, model, o.multiplier, !o.full_res);

    if (!o.output.empty()) {
        if (in.kind == BallFileKind::Samples) {
            BallSignal s = flag_synthesis(*scheme, rep.denoised);
            if (!in.is_complex)
                discard_imaginary(s, 1e-8);
            write_ball_file(o.output, make_samples_file(*scheme, std::move(s), in.is_complex));
        } else {
            write_ball_file(o.output, make_coeffs_file(in.tau, rep.denoised, true));
        }
    }
    out << "sigma,snr_in_db,snr_out_db\n"
        << format_double(model.sigma) << ',' << format_double(rep.snr_in_db) << ','
        << format_double(rep.snr_out_db) << '\n';
    return kOk;
}

void write_kernels(const TilingKernels& kernels, std::ostream& os)
{
    const TilingParams& prm = kernels.params();
    os << "# J=" << prm.J() << ",Jp=" << prm.Jp() << '\n';
    os << "# admissibility_residual=" << format_double(kernels.admissibility_residual()) << '\n';
    os << "kind,j,jp,ell,p,value\n";
    for (int j = prm.J0; j <= prm.J(); ++j)
        for (int jp = prm.J0p; jp <= prm.Jp(); ++jp)
            for (int p = 0; p < prm.P; ++p)
                for (int ell = 0; ell < prm.L; ++ell) {
                    const double v = kernels.psi(j, jp, ell, p);
                    if (v != 0.0)
                        os << "psi," << j << ',' << jp << ',' << ell << ',' << p << ','
                           << format_double(v) << '\n';
                }
    for (int p = 0; p < prm.P; ++p)
        for (int ell = 0; ell < prm.L; ++ell) {
            const double v = kernels.phi(ell, p);
            if (v != 0.0)
                os << "phi,,," << ell << ',' << p << ',' << format_double(v) << '\n';
        }
}

int cmd_kernels(const KernelOpts& o, std::ostream& out)
{
    const TilingKernels kernels(o.tiling.params(o.L, o.P));
    if (o.out.empty()) {
        write_kernels(kernels, out);
        return kOk;
    }
    std::ofstream file(o.out);
    file.imbue(std::locale::classic());
    if (!file)
        throw FormatError("cannot open " + o.out + " for writing");
    write_kernels(kernels, file);
    if (!file)
        throw FormatError("failed writing " + o.out);
    out << "# J=" << kernels.params().J() << ",Jp=" << kernels.params().Jp() << '\n'
        << "# admissibility_residual=" << format_double(kernels.admissibility_residual()) << '\n';
    return kOk;
}

int cmd_generate(const GenerateOpts& o, std::ostream& out)
{
    const FlagCoeffs coeffs = sparse_test_signal(o.L, o.P, o.tau, o.seed, o.blobs);
    if (o.kind == "coeffs") {
        write_ball_file(o.out, make_coeffs_file(o.tau, coeffs, true));
    } else {
        const auto scheme = SchemeCache::shared().get(o.L, o.P, o.tau);
        BallSignal s = flag_synthesis(*scheme, coeffs);
        discard_imaginary(s, 1e-8);
        write_ball_file(o.out, make_samples_file(*scheme, std::move(s), false));
    }
    out << "wrote " << o.out << '\n';
    return kOk;
}

} // namespace

std::string format_double(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fourier-Laguerre and flaglet transforms on the ball"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    RoundtripOpts rt;
    auto* roundtrip = app.add_subcommand("roundtrip", "Random-coefficient round-trip accuracy test");
    roundtrip->add_option("--transform", rt.transform)->check(CLI::IsMember({"flag", "flaglet"}));
    roundtrip->add_option("--L", rt.L, "Angular band-limit")->check(CLI::PositiveNumber);
    roundtrip->add_option("--P", rt.P, "Radial band-limit")->check(CLI::PositiveNumber);
    roundtrip->add_option("--tau", rt.tau, "Radial scale factor")->check(CLI::PositiveNumber);
    roundtrip->add_option("--seed", rt.seed);
    roundtrip->add_flag("--multires", rt.multires, "Multiresolution flaglet transform");
    roundtrip->add_option("--tol", rt.tol, "Error tolerance (default 1e-10 flag, 1e-9 flaglet)")
        ->check(CLI::NonNegativeNumber);
    roundtrip->add_option("--reps", rt.reps)->check(CLI::PositiveNumber);
    rt.tiling.add_to(*roundtrip);

    BenchOpts bo;
    auto* bench = app.add_subcommand("bench", "Timing sweep over L = P = 2^i");
    bench->add_option("--transform", bo.transform)->check(CLI::IsMember({"flag", "flaglet"}));
    bench->add_option("--Lmin", bo.Lmin);
    bench->add_option("--Lmax", bo.Lmax);
    bench->add_option("--reps", bo.reps)->check(CLI::PositiveNumber);
    bench->add_option("--tau", bo.tau)->check(CLI::PositiveNumber);
    bench->add_option("--seed", bo.seed);
    bench->add_flag("--multires", bo.multires);
    bo.tiling.add_to(*bench);

    DenoiseOpts dn;
    auto* den = app.add_subcommand("denoise", "Add model noise and denoise by hard thresholding");
    den->add_option("--input", dn.input)->required();
    den->add_option("--output", dn.output);
    auto* sigma_opt = den->add_option("--sigma", dn.sigma, "Noise level")->check(CLI::NonNegativeNumber);
    den->add_option("--snr-in", dn.snr_in, "Target input SNR in dB (default 5)")->excludes(sigma_opt);
    den->add_option("--seed", dn.seed);
    den->add_option("--multiplier", dn.multiplier)->check(CLI::PositiveNumber);
    den->add_flag("--full-res", dn.full_res, "Threshold full-resolution wavelet signals");
    dn.tiling.add_to(*den);

    KernelOpts ko;
    auto* ker = app.add_subcommand("kernels", "Export the tiling kernels as CSV");
    ker->add_option("--L", ko.L)->check(CLI::PositiveNumber);
    ker->add_option("--P", ko.P)->check(CLI::PositiveNumber);
    ker->add_option("--out", ko.out);
    ko.tiling.add_to(*ker);

    GenerateOpts go;
    auto* gen = app.add_subcommand("generate", "Write a synthetic sparse test signal");
    gen->add_option("--L", go.L)->check(CLI::PositiveNumber);
    gen->add_option("--P", go.P)->check(CLI::PositiveNumber);
    gen->add_option("--tau", go.tau)->check(CLI::PositiveNumber);
    gen->add_option("--seed", go.seed);
    gen->add_option("--blobs", go.blobs)->check(CLI::PositiveNumber);
    gen->add_option("--kind", go.kind)->check(CLI::IsMember({"samples", "coeffs"}));
    gen->add_option("--out", go.out)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    // Buffer through the classic locale so integers never pick up grouping
    // separators from whatever locale the caller's stream carries.
    std::ostringstream buf;
    buf.imbue(std::locale::classic());
    struct Flush {
        std::ostringstream& from;
        std::ostream& to;
        ~Flush() { to << from.str() << std::flush; }
    } flush{buf, out};

    try {
        set_num_threads(threads);
        if (*roundtrip)
            return cmd_roundtrip(rt, buf);
        if (*bench)
            return cmd_bench(bo, buf);
        if (*den)
            return cmd_denoise(dn, buf);
        if (*ker)
            return cmd_kernels(ko, buf);
        return cmd_generate(go, buf);
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kIoFormat;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kToleranceFail;
    }
}

} // namespace flag::cli
