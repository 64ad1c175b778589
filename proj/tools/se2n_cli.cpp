#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "se2n/apfun.hpp"
#include "se2n/diffusion.hpp"
#include "se2n/errors.hpp"
#include "se2n/experiments.hpp"
#include "se2n/features.hpp"
#include "se2n/image_io.hpp"

using namespace se2n;

namespace {

constexpr int kOk = 0;
constexpr int kBadInput = 2;
constexpr int kNumerical = 3;

void require_readable(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
}

struct InpaintArgs {
    std::string input, mask, out = "inpainted.pgm";
    DiffusionParams p = [] {
        DiffusionParams d;
        d.steps = 40;
        return d;
    }();
    int intervals = 20;
};

int cmd_inpaint(InpaintArgs& a) {
    require_readable(a.input);
    if (!a.mask.empty()) require_readable(a.mask);
    a.p.validate();
    const Image f = load_image(a.input);
    const MaskState mask = a.mask.empty() ? MaskState::from_zeros(f) : MaskState::from_mask(load_image(a.mask));
    InpaintReport rep;
    const auto t0 = std::chrono::steady_clock::now();
    const Image out = inpaint_masked(f, mask, a.p, a.intervals, &rep);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    save_pgm(a.out, out);
    std::cerr << "bad pixels per round:";
    for (auto c : rep.bad_counts) std::cerr << ' ' << c;
    std::cerr << "\nmass residual " << rep.mass_residual << "\naffine scale " << rep.affine_scale << " offset "
              << rep.affine_offset << "\ntime " << secs << " s\nwrote " << a.out << '\n';
    return kOk;
}

struct FeatureArgs {
    std::vector<std::string> inputs;
    std::string out = "features.csv";
    std::string kind = "rpsbs";
    InvariantConfig cfg;
    bool no_center = false;
};

int cmd_features(FeatureArgs& a) {
    a.cfg.kind = parse_kind(a.kind);
    a.cfg.center = !a.no_center;
    a.cfg.validate();
    std::vector<std::string> ids;
    std::vector<FeatureVector> fvs;
    int code = kOk;
    for (const auto& path : a.inputs) {
        try {
            require_readable(path);
            fvs.push_back(feature_pipeline(load_image(path), a.cfg));
            ids.push_back(path);
        } catch (const InputError& e) {
            std::cerr << path << ": " << e.what() << '\n';
            code = std::max(code, kBadInput);
        } catch (const NumericalError& e) {
            std::cerr << path << ": " << e.what() << '\n';
            code = std::max(code, kNumerical);
        }
    }
    std::ofstream os(a.out);
    if (!os) throw IoError("cannot write " + a.out);
    write_features_csv(os, ids, fvs);
    std::cerr << "wrote " << fvs.size() << " rows to " << a.out << '\n';
    return code;
}

struct ApproxArgs {
    std::string input, freqs, points, out = "approx";
    NormsConfig cfg;
    std::vector<double> xi{0.3, 0.5};
    bool auto_spacing = false;
    bool scale_given = false;
};

int cmd_approx(ApproxArgs& a) {
    require_readable(a.input);
    if (a.xi.size() != 2) throw InputError("--xi takes two values");
    a.cfg.xi = {a.xi[0], a.xi[1]};
    const Image f = load_image(a.input);
    NormsResult r;
    if (a.freqs.empty() != a.points.empty()) throw InputError("--freqs and --points must be given together");
    if (a.freqs.empty()) {
        if (a.auto_spacing) {
            a.cfg.spacing = first_well_posed_spacing(a.cfg.N, a.cfg.rings, a.cfg.per_ring);
            if (a.cfg.spacing == 0.0) throw IllPosed(-1, "no well-posed spacing found for this grid");
            // outer ring at 7/16 of the image width
            if (!a.scale_given) a.cfg.scale = 7.0 * std::min(f.width, f.height) / (16.0 * a.cfg.rings * a.cfg.spacing);
            std::fprintf(stderr, "auto spacing %.6g, scale %.6g px/unit\n", a.cfg.spacing, a.cfg.scale);
        }
        r = run_norms(f, a.cfg);
    } else {
        require_readable(a.points);
        const FrequencySet F = load_frequency_set(a.freqs, a.cfg.N);
        SpatialSampleSet E;
        E.N = a.cfg.N;
        std::ifstream in(a.points);
        for (const auto& p : read_polar_points(in)) E.slice_points.push_back(p);
        r = run_norms(f, a.cfg, F, E);
    }
    save_coefficients(a.out + "_interp.bin", r.interp_coeffs);
    save_coefficients(a.out + "_approx.bin", r.approx_coeffs);
    {
        std::ofstream os(a.out + "_reconstruction.txt");
        os << "# m j x1 x2 sample approx_re approx_im\n";
        os.precision(17);
        for (int m = 0; m < r.F.N; ++m)
            for (int j = 0; j < r.E.P(); ++j) {
                const Vec2 y = rotate_k(r.E.slice_points[j], m, r.F.N);
                os << m << ' ' << j << ' ' << y.x << ' ' << y.y << ' ' << r.samples(m, j).real() << ' '
                   << r.approx_eval(m, j).real() << ' ' << r.approx_eval(m, j).imag() << '\n';
            }
    }
    std::ofstream csv(a.out + "_norms.csv");
    csv << "method,coefficients,evaluated,rotated,translated\n";
    std::printf("image norm on E: %.6g\n", r.image_norm);
    std::printf("%-14s %14s %14s %14s %14s\n", "", "coefficients", "evaluated", "rotated", "translated");
    auto emit = [&](const char* name, const NormsRow& row) {
        std::printf("%-14s %14.6g %14.6g %14.6g %14.6g\n", name, row.coefficients, row.evaluated, row.rotated,
                    row.translated);
        csv.precision(17);
        csv << name << ',' << row.coefficients << ',' << row.evaluated << ',' << row.rotated << ',' << row.translated
            << '\n';
    };
    emit("interpolation", r.interpolation);
    emit("approximation", r.approximation);
    return kOk;
}

struct FreqsetArgs {
    int N = 4;
    int depth = 2;
    std::string seed_file, out = "freqset.txt";
    std::size_t cap = 200000;
};

int cmd_freqset(const FreqsetArgs& a) {
    if (a.N < 1) throw InputError("--n must be positive");
    if (a.depth < 1) throw InputError("--depth must be positive");
    FrequencySet seed = FrequencySet::roots_of_unity(a.N);
    if (!a.seed_file.empty()) {
        require_readable(a.seed_file);
        seed = load_frequency_set(a.seed_file, a.N);
    }
    const FrequencySet F = gen_freqset(seed, a.depth, 1e-9, a.cap);
    save_frequency_set(a.out, F);
    const Admissibility adm = is_admissible(F);
    std::ofstream cert(a.out + ".cert");
    if (!cert) throw IoError("cannot write " + a.out + ".cert");
    cert << "# admissible " << (adm.admissible ? 1 : 0) << '\n';
    cert << "# N " << F.N << " Q " << F.Q() << " origin " << (F.has_origin ? 1 : 0) << '\n';
    if (!adm.reason.empty()) cert << "# reason " << adm.reason << '\n';
    cert << "# F1 slice representatives\n";
    write_polar_points(cert, adm.f1);
    std::cout << "Q " << F.Q() << " (full " << F.Q() * F.N << (F.has_origin ? " + origin" : "") << "), admissible "
              << (adm.admissible ? "yes" : "no") << ", |F1 slice| " << adm.f1.size() << '\n';
    return adm.admissible ? kOk : kNumerical;
}

int cmd_selftest(unsigned seed) {
    bool ok = true;
    for (const auto& c : run_selftest(seed)) {
        std::printf("%s  %-45s %.3g (< %.3g)\n", c.ok ? "ok  " : "FAIL", c.name.c_str(), c.value, c.threshold);
        ok = ok && c.ok;
    }
    return ok ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harmonic analysis on the semi-discrete roto-translation group"};
    app.require_subcommand(1);

    InpaintArgs ia;
    auto* inpaint = app.add_subcommand("inpaint", "Fill corrupted pixels by hypoelliptic diffusion");
    inpaint->add_option("input", ia.input, "Input image (PGM or PNG)")->required();
    inpaint->add_option("--mask", ia.mask, "Mask image, nonzero = corrupted (default: zero pixels)");
    inpaint->add_option("--out", ia.out, "Output PGM");
    inpaint->add_option("--n", ia.p.N, "Number of orientations")->check(CLI::Range(1, 4096));
    inpaint->add_option("--beta", ia.p.beta, "Angular diffusion rate")->check(CLI::NonNegativeNumber);
    inpaint->add_option("--time", ia.p.T, "Total diffusion time")->check(CLI::NonNegativeNumber);
    inpaint->add_option("--steps", ia.p.steps, "Crank-Nicolson steps in total")->check(CLI::PositiveNumber);
    inpaint->add_option("--intervals", ia.intervals, "Masking rounds")->check(CLI::PositiveNumber);
    inpaint->add_flag("--paper-coefficients", ia.p.paper_coefficients, "Use the double-cosine direction symbol");

    FeatureArgs fa;
    auto* features = app.add_subcommand("features", "Write rotation and translation invariant features as CSV");
    features->add_option("inputs", fa.inputs, "Images")->required();
    features->add_option("--out", fa.out, "CSV path");
    features->add_option("--n", fa.cfg.N, "Rotation order")->check(CLI::Range(2, 256));
    features->add_option("--window", fa.cfg.grid_half, "Half-width of the frequency window in bins")
        ->check(CLI::Range(1, 64));
    features->add_option("--kind", fa.kind, "ps, bs, rps, rbs or rpsbs")
        ->check(CLI::IsMember({"ps", "bs", "rps", "rbs", "rpsbs"}));
    features->add_flag("--no-center", fa.no_center, "Skip the centering step");
    features->add_flag("--moduli", fa.cfg.moduli_only, "Keep only moduli of complex invariants");

    ApproxArgs aa;
    auto* approx = app.add_subcommand("approx", "AP interpolation and approximation norm table");
    approx->add_option("input", aa.input, "Image")->required();
    approx->add_option("--freqs", aa.freqs, "Frequency set file (with --points)");
    approx->add_option("--points", aa.points, "Spatial sample file, one 'rho alpha' per line");
    approx->add_option("--n", aa.cfg.N, "Rotation order")->check(CLI::Range(1, 1024));
    approx->add_option("--rings", aa.cfg.rings, "Built-in grid: number of rings")->check(CLI::PositiveNumber);
    approx->add_option("--per-ring", aa.cfg.per_ring, "Built-in grid: points per ring in the slice")
        ->check(CLI::PositiveNumber);
    approx->add_option("--spacing", aa.cfg.spacing, "Built-in grid: ring spacing")->check(CLI::PositiveNumber);
    auto* scale_opt = approx->add_option("--scale", aa.cfg.scale, "Pixels per unit of E")->check(CLI::PositiveNumber);
    approx->add_flag("--auto-spacing", aa.auto_spacing,
                     "Use the first ring spacing at which E = F interpolation is well posed");
    approx->add_option("--alpha", aa.cfg.alpha, "Weight level")->check(CLI::PositiveNumber);
    approx->add_option("--rotate", aa.cfg.rotation, "Rotation applied to the coefficients, in steps of 2pi/N");
    approx->add_option("--xi", aa.xi, "Translation (two values, units of E)")->expected(2);
    approx->add_flag("--paper-sign", aa.cfg.paper_sign, "Use J*J - D^2 in the normal equations");
    approx->add_option("--out", aa.out, "Output prefix");

    FreqsetArgs fs;
    auto* freqset = app.add_subcommand("freqset", "Generate a bispectrally admissible frequency set");
    freqset->add_option("--n", fs.N, "Seed: N-th roots of unity")->check(CLI::Range(1, 1024));
    freqset->add_option("--seed-file", fs.seed_file, "Seed set file instead of roots of unity");
    freqset->add_option("--depth", fs.depth, "Generations")->check(CLI::Range(1, 16));
    freqset->add_option("--cap", fs.cap, "Abort when the set grows beyond this many slice points");
    freqset->add_option("--out", fs.out, "Output path (certificate goes to <out>.cert)");

    unsigned seed = 7;
    auto* selftest = app.add_subcommand("selftest", "Quick numerical consistency checks");
    selftest->add_option("--seed", seed, "Seed for the random test data");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (*inpaint) return cmd_inpaint(ia);
        if (*features) return cmd_features(fa);
        if (*approx) {
            aa.scale_given = scale_opt->count() > 0;
            return cmd_approx(aa);
        }
        if (*freqset) return cmd_freqset(fs);
        if (*selftest) return cmd_selftest(seed);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kOk;
}
