#include "se2n/lift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "se2n/errors.hpp"
#include "se2n/fft.hpp"
#include "se2n/kernels.hpp"
#include "se2n/ncft.hpp"
#include "se2n/parallel.hpp"

namespace se2n {

namespace {

int centered(int p, int M) { return p >= (M + 1) / 2 ? p - M : p; }

Vec2 lattice_freq(std::size_t idx, int M) {
    const int p1 = static_cast<int>(idx % M), p2 = static_cast<int>(idx / M);
    return from_lattice(centered(p1, M), centered(p2, M), M);
}

void check_shapes(const Wavelet& psi, const Image& f) {
    if (!f.square()) throw DimensionError("lift: image must be square");
    if (psi.M != f.width) throw DimensionError("lift: wavelet and image sizes differ");
}

}  // namespace

Wavelet Wavelet::from_values(std::vector<cplx> values, int M) {
    if (values.size() != static_cast<std::size_t>(M) * M) throw DimensionError("wavelet: size is not M*M");
    double n2 = 0.0;
    for (auto& v : values) n2 += std::norm(v);
    if (n2 <= 0.0) throw DegenerateInput("wavelet must have nonzero norm");
    Wavelet w;
    w.M = M;
    w.spectrum = fft2(values, M);
    w.values = std::move(values);
    return w;
}

Wavelet Wavelet::gaussian(int M, double sigma) {
    std::vector<cplx> v(static_cast<std::size_t>(M) * M);
    for (int i2 = 0; i2 < M; ++i2)
        for (int i1 = 0; i1 < M; ++i1) {
            const double a = centered(i1, M), b = centered(i2, M);
            v[static_cast<std::size_t>(i2) * M + i1] = std::exp(-(a * a + b * b) / (2 * sigma * sigma));
        }
    return from_values(std::move(v), M);
}

Wavelet Wavelet::delta(int M) {
    std::vector<cplx> v(static_cast<std::size_t>(M) * M, 0.0);
    v[0] = 1.0;
    return from_values(std::move(v), M);
}

cplx Wavelet::spectrum_at(const Vec2& lambda) const { return se2n::spectrum_at(spectrum.data(), M, lambda); }

CVec Wavelet::psi_star_orbit(const Vec2& lambda, int N) const {
    CVec out(N);
    for (int i = 0; i < N; ++i) out[i] = std::conj(spectrum_at(rotate_k(lambda, i, N)));
    return out;
}

double Wavelet::health(int N) const {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& g : canonical_grid(N, M)) lo = std::min(lo, psi_star_orbit(g.lambda, N).norm());
    return lo;
}

GroupFunction wavelet_lift(const Wavelet& psi, const Image& f, int N) {
    check_shapes(psi, f);
    const int M = f.width;
    const auto F = fft2(f);
    GroupFunction out(N, M);
    parallel_for(N, [&](std::size_t kk) {
        const int k = static_cast<int>(kk);
        std::vector<cplx> w(out.plane());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = psi.spectrum_at(rotate_k(lattice_freq(i, M), -k, N));
        cplx* dst = out.layer(k);
        kernels::cmul(F.data(), w.data(), dst, w.size(), true);
        fft2_inplace(dst, M, true);
    });
    return out;
}

GroupFunction almost_lift(const Wavelet& psi, const Image& f, int N) {
    check_shapes(psi, f);
    const int M = f.width;
    const auto F = fft2(f);
    GroupFunction out(N, M);
    parallel_for(N, [&](std::size_t kk) {
        const int k = static_cast<int>(kk);
        std::vector<cplx> a(out.plane()), w(out.plane());
        for (std::size_t i = 0; i < w.size(); ++i) {
            const Vec2 mu = lattice_freq(i, M);
            a[i] = spectrum_at(F.data(), M, rotate_k(mu, k, N));
            w[i] = psi.spectrum_at(rotate_k(mu, -k, N));
        }
        cplx* dst = out.layer(k);
        kernels::cmul(a.data(), w.data(), dst, w.size(), true);
        fft2_inplace(dst, M, true);
    });
    return out;
}

namespace {

// Central difference along one axis, skipping samples flagged in bad.
double masked_diff(double c, double lo, double hi, bool cbad, bool lobad, bool hibad) {
    if (!lobad && !hibad) return 0.5 * (hi - lo);
    if (cbad) return 0.0;
    if (!hibad) return hi - c;
    if (!lobad) return c - lo;
    return 0.0;
}

GroupFunction gradient_lift_impl(const Image& f, int N, const std::vector<char>* bad, double critical_tol) {
    if (!f.square()) throw DimensionError("gradient lift: image must be square");
    const int M = f.width;
    if (bad && bad->size() != f.v.size()) throw DimensionError("gradient lift: mask size differs from image");
    GroupFunction out(N, M);
    const bool fold = N % 2 == 0;
    const int layers = fold ? N / 2 : N;
    const double period = fold ? kPi : kTwoPi;
    auto isbad = [&](int j1, int j2) { return bad && (*bad)[static_cast<std::size_t>(j2) * M + j1] != 0; };
    for (int i2 = 0; i2 < M; ++i2)
        for (int i1 = 0; i1 < M; ++i1) {
            const double v = f.at(i1, i2);
            const int l1 = (i1 + M - 1) % M, r1 = (i1 + 1) % M, l2 = (i2 + M - 1) % M, r2 = (i2 + 1) % M;
            const bool cb = isbad(i1, i2);
            const double d1 = masked_diff(v, f.at(l1, i2), f.at(r1, i2), cb, isbad(l1, i2), isbad(r1, i2));
            const double d2 = masked_diff(v, f.at(i1, l2), f.at(i1, r2), cb, isbad(i1, l2), isbad(i1, r2));
            if (std::abs(d1) < critical_tol && std::abs(d2) < critical_tol) {
                for (int k = 0; k < N; ++k) out.at(k, i1, i2) = v / N;
                continue;
            }
            // (cos theta, sin theta) proportional to (d2, -d1)
            double theta = std::fmod(std::atan2(-d1, d2), period);
            if (theta < 0) theta += period;
            int best = 0;
            double bestd = std::numeric_limits<double>::infinity();
            for (int k = 0; k < layers; ++k) {
                double d = std::abs(theta - kTwoPi * k / N);
                d = std::min(d, period - d);
                if (d < bestd - 1e-12) {
                    bestd = d;
                    best = k;
                }
            }
            out.at(best, i1, i2) = v;
        }
    return out;
}

}  // namespace

GroupFunction gradient_lift(const Image& f, int N, double critical_tol) {
    return gradient_lift_impl(f, N, nullptr, critical_tol);
}

GroupFunction gradient_lift_masked(const Image& f, int N, const std::vector<char>& bad, double critical_tol) {
    return gradient_lift_impl(f, N, &bad, critical_tol);
}

Vec2 geometric_center(const Image& f, double tol) {
    double s = 0.0, s1 = 0.0, s2 = 0.0;
    const double o1 = f.width / 2, o2 = f.height / 2;
    for (int i2 = 0; i2 < f.height; ++i2)
        for (int i1 = 0; i1 < f.width; ++i1) {
            const double v = f.at(i1, i2);
            s += v;
            s1 += (i1 - o1) * v;
            s2 += (i2 - o2) * v;
        }
    if (std::abs(s) <= tol * f.v.size()) throw NotCenterable("image average is zero; geometric center undefined");
    return {s1 / s, s2 / s};
}

Image translate_fourier(const Image& f, const Vec2& shift) {
    if (!f.square()) throw DimensionError("translate: image must be square");
    const int M = f.width;
    auto F = fft2(f);
    for (std::size_t i = 0; i < F.size(); ++i) F[i] *= std::polar(1.0, -dot(lattice_freq(i, M), shift));
    fft2_inplace(F.data(), M, true);
    Image out(M, M);
    for (std::size_t i = 0; i < F.size(); ++i) out.v[i] = F[i].real();
    return out;
}

CenteredImage center_geometric(const Image& f, double tol) {
    const Vec2 c = geometric_center(f, tol);
    return {translate_fourier(f, -c), c};
}

}  // namespace se2n
