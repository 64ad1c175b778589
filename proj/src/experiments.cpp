#include "se2n/experiments.hpp"

#include <cmath>
#include <random>

#include "se2n/diffusion.hpp"
#include "se2n/errors.hpp"
#include "se2n/kernels.hpp"
#include "se2n/ncft.hpp"
#include "se2n/repr.hpp"

namespace se2n {

void NormsConfig::validate() const {
    for (double r : radii)
        if (!(r > 0.0)) throw InputError("norms: ring radii must be positive");
    if (N < 1 || rings < 1 || per_ring < 1) throw InputError("norms: N, rings and per_ring must be positive");
    if (!(spacing > 0.0) || !(e_factor > 0.0) || !(scale > 0.0) || !(alpha > 0.0)) throw InputError("norms: spacing, scale and alpha must be positive");
}

double sample_image(const Image& f, double x1, double x2) {
    const double f1 = std::floor(x1), f2 = std::floor(x2);
    const double t1 = x1 - f1, t2 = x2 - f2;
    const int a1 = wrap(static_cast<long>(f1), f.width), b1 = wrap(static_cast<long>(f1) + 1, f.width);
    const int a2 = wrap(static_cast<long>(f2), f.height), b2 = wrap(static_cast<long>(f2) + 1, f.height);
    return (1 - t1) * (1 - t2) * f.at(a1, a2) + t1 * (1 - t2) * f.at(b1, a2) + (1 - t1) * t2 * f.at(a1, b2) +
           t1 * t2 * f.at(b1, b2);
}

double first_well_posed_spacing(int N, int rings, int per_ring, double start, double growth, int steps,
                                double max_cond) {
    if (!(start > 0.0) || !(growth > 1.0)) throw InputError("spacing search needs start > 0 and growth > 1");
    double s = start;
    for (int i = 0; i < steps; ++i, s *= growth) {
        const FrequencySet F = FrequencySet::polar_grid(N, rings, per_ring, s);
        SpatialSampleSet E;
        E.N = N;
        E.slice_points = F.slice_freqs;
        try {
            FourierBesselOperator(E, F).interpolate(CMat::Zero(N, E.P()), max_cond);
            return s;
        } catch (const IllPosed&) {
        }
    }
    return 0.0;
}

NormsResult run_norms(const Image& f, const NormsConfig& cfg) {
    cfg.validate();
    FrequencySet F = FrequencySet::polar_grid(cfg.N, cfg.rings, cfg.per_ring, cfg.spacing);
    if (!cfg.radii.empty()) {
        F.slice_freqs.clear();
        F.depth.clear();
        for (double r : cfg.radii)
            for (int a = 0; a < cfg.per_ring; ++a) {
                F.slice_freqs.push_back(polar(r, kTwoPi / cfg.N * (a + 0.5) / cfg.per_ring));
                F.depth.push_back(1);
            }
    }
    SpatialSampleSet E;
    E.N = cfg.N;
    for (const auto& l : F.slice_freqs) E.slice_points.push_back(l * cfg.e_factor);
    return run_norms(f, cfg, F, E);
}

NormsResult run_norms(const Image& f, const NormsConfig& cfg, const FrequencySet& F, const SpatialSampleSet& E) {
    cfg.validate();
    if (F.N != E.N) throw DimensionError("norms: E and F have different N");
    NormsResult r;
    r.F = F;
    r.E = E;
    const int P = r.E.P();
    const int N = F.N;
    r.samples = CMat(N, P);
    const double c1 = f.width / 2, c2 = f.height / 2;
    for (int m = 0; m < N; ++m)
        for (int j = 0; j < P; ++j) {
            const Vec2 y = rotate_k(r.E.slice_points[j], m, N) * cfg.scale;
            r.samples(m, j) = sample_image(f, c1 + y.x, c2 + y.y);
        }
    r.image_norm = r.samples.norm();

    FourierBesselOperator op(r.E, r.F);
    auto row = [&](const APCoefficients& c, NormsRow& out, CMat* eval) {
        out.coefficients = c.norm();
        const CMat e = op.evaluate(c);
        out.evaluated = e.norm();
        out.rotated = op.evaluate(ap_rotate(c, cfg.rotation)).norm();
        out.translated = op.evaluate(ap_translate(c, r.F, cfg.xi)).norm();
        if (eval) *eval = e;
    };
    r.interp_coeffs = op.interpolate(r.samples);
    row(r.interp_coeffs, r.interpolation, nullptr);
    r.approx_coeffs = op.approximate(r.samples, weight_profile(r.F, cfg.alpha), cfg.paper_sign);
    row(r.approx_coeffs, r.approximation, &r.approx_eval);
    return r;
}

Image synthetic_scene(int M, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> pos(0.25 * M, 0.75 * M), width(0.04 * M, 0.12 * M), amp(0.3, 0.8);
    struct Blob {
        double x, y, sx, sy, a;
    };
    std::vector<Blob> blobs;
    for (int i = 0; i < 5; ++i) blobs.push_back({pos(rng), pos(rng), width(rng), width(rng), amp(rng)});
    Image img(M, M);
    double hi = 0.0;
    for (int y = 0; y < M; ++y)
        for (int x = 0; x < M; ++x) {
            double v = 0.1 + 0.1 * x / M;
            for (const auto& b : blobs) {
                const double dx = (x - b.x) / b.sx, dy = (y - b.y) / b.sy;
                v += b.a * std::exp(-0.5 * (dx * dx + dy * dy));
            }
            img.at(x, y) = v;
            hi = std::max(hi, v);
        }
    for (auto& v : img.v) v /= hi;
    return img;
}

Image stripe_image(int M) {
    Image img(M, M);
    const int lo = M / 2 - M / 16, hi = M / 2 + M / 16;
    for (int y = 0; y < M; ++y)
        for (int x = 0; x < M; ++x) img.at(x, y) = (y >= lo && y < hi) ? 0.9 : 0.15;
    return img;
}

Image stripe_gap_mask(int M) {
    Image mask(M, M);
    for (int y = 0; y < M; ++y) mask.at(M / 2, y) = 1.0;
    return mask;
}

namespace {

double max_abs(const CMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

std::vector<SelfCheck> run_selftest(unsigned seed) {
    std::vector<SelfCheck> out;
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);

    {
        const int N = 5;
        double err = 0.0;
        for (int t = 0; t < 10; ++t) {
            const Vec2 l{g(rng), g(rng)};
            const GroupElement a{static_cast<long>(t), {g(rng), g(rng)}}, b{3L * t + 1, {g(rng), g(rng)}};
            const IrredRep rep(l, N);
            const CMat A = rep_matrix(rep, a), B = rep_matrix(rep, b);
            err = std::max(err, max_abs(A * A.adjoint() - CMat::Identity(N, N)));
            err = std::max(err, max_abs(rep_matrix(rep, compose(a, b, N)) - A * B));
        }
        out.push_back({"representation unitarity and homomorphism", err < 1e-11, err, 1e-11});
    }
    {
        const int N = 4, M = 8;
        GroupFunction f(N, M);
        for (auto& v : f.values) v = {g(rng), g(rng)};
        const GroupFunction back = ncft_inverse(ncft_forward(f), M);
        double err = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i) err = std::max(err, std::abs(back.values[i] - f.values[i]));
        out.push_back({"ncft round trip", err < 1e-10, err, 1e-10});
    }
    if (kernels::avx2_available()) {
        const std::size_t n = 37;
        std::vector<cplx> a(n), b(n), c(n), o1(n), o2(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = {g(rng), g(rng)}, b[i] = {g(rng), g(rng)}, c[i] = {g(rng), g(rng)};
        kernels::scalar::cmul(a.data(), b.data(), o1.data(), n, true);
        kernels::avx2::cmul(a.data(), b.data(), o2.data(), n, true);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(o1[i] - o2[i]));
        err = std::max(err, std::abs(kernels::scalar::triple_sum(a.data(), b.data(), c.data(), n) -
                                     kernels::avx2::triple_sum(a.data(), b.data(), c.data(), n)));
        out.push_back({"avx2 kernels match scalar", err < 1e-12, err, 1e-12});
    }
    {
        const int M = 16;
        GroupFunction psi(4, M);
        for (auto& v : psi.values) v = std::abs(g(rng));
        DiffusionParams p;
        p.N = 4;
        p.beta = 2.0;
        p.T = 0.2;
        p.steps = 20;
        const GroupFunction e = evolve_spatial(psi, p);
        cplx m0 = 0.0, m1 = 0.0;
        for (std::size_t i = 0; i < psi.values.size(); ++i) m0 += psi.values[i], m1 += e.values[i];
        const double rel = std::abs(m1 - m0) / std::abs(m0);
        out.push_back({"diffusion mass conservation", rel < 1e-8, rel, 1e-8});
    }
    {
        const Vec2 l{0.7, -0.3}, y{1.1, 0.4};
        const int N = 6;
        cplx direct = 0.0;
        for (int r = 0; r < N; ++r)
            direct += std::polar(1.0, dot(l, rotate_k(y, r, N))) * std::polar(1.0, -kTwoPi * 2 * r / N);
        const double err = std::abs(direct - gen_bessel(2, l, y, N));
        out.push_back({"generalized bessel sum", err < 1e-12, err, 1e-12});
    }
    return out;
}

}  // namespace se2n
