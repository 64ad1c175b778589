#include "se2n/diffusion.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

#include "se2n/errors.hpp"
#include "se2n/fft.hpp"
#include "se2n/kernels.hpp"
#include "se2n/lift.hpp"
#include "se2n/parallel.hpp"

namespace se2n {

void DiffusionParams::validate() const {
    if (N < 1) throw InputError("diffusion: N must be positive");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw InputError("diffusion: beta must be nonnegative");
    if (!(T >= 0.0) || !std::isfinite(T)) throw InputError("diffusion: time must be nonnegative");
    if (steps < 1) throw InputError("diffusion: steps must be >= 1");
}

CirculantMatrix jump_generator(int N, double beta) {
    CirculantMatrix c;
    c.generator = CVec::Zero(N);
    if (N == 1) return c;
    c.generator[0] = -beta;
    c.generator[1] += beta / 2;
    c.generator[N - 1] += beta / 2;
    return c;
}

Eigen::MatrixXd hat_delta(const Vec2& lambda, const DiffusionParams& p) {
    const int N = p.N;
    Eigen::MatrixXd m = jump_generator(N, p.beta).dense().real();
    for (int k = 0; k < N; ++k) {
        const double th = kTwoPi * k / N;
        const double s = lambda.x * std::cos(th) + lambda.y * std::sin(th);
        m(k, k) -= 0.5 * s * s;
    }
    return m;
}

double spatial_symbol(int r, int N, int p1, int p2, int M, bool paper_coefficients) {
    const double th = kTwoPi * r / N;
    const double s1 = std::sin(kTwoPi * p1 / M), s2 = std::sin(kTwoPi * p2 / M);
    return std::cos(th) * s1 + (paper_coefficients ? std::cos(th) : std::sin(th)) * s2;
}

Eigen::MatrixXd spatial_generator(int p1, int p2, int M, const DiffusionParams& p) {
    const int N = p.N;
    Eigen::MatrixXd g = jump_generator(N, p.beta).dense().real();
    for (int r = 0; r < N; ++r) {
        const double a = spatial_symbol(r, N, p1, p2, M, p.paper_coefficients);
        g(r, r) -= 0.5 * M * a * a;
    }
    return g;
}

namespace {

// Crank-Nicolson for N <= 2 where the cyclic solver does not apply.
void cn_dense(const Eigen::MatrixXd& G, double dt, int steps, CVec& x) {
    const int N = static_cast<int>(G.rows());
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
    const Eigen::MatrixXd step = (I - 0.5 * dt * G).partialPivLu().solve(I + 0.5 * dt * G);
    for (int s = 0; s < steps; ++s) x = step.cast<cplx>() * x;
}

}  // namespace

GroupFunction evolve_spatial(const GroupFunction& psi0, const DiffusionParams& p) {
    p.validate();
    if (psi0.N != p.N) throw DimensionError("evolve_spatial: layer count differs from N");
    const int N = p.N, M = psi0.M;
    const std::size_t P = psi0.plane();
    const double dt = p.T / p.steps;
    GroupFunction out = psi0;
    if (p.T == 0.0) return out;
    for (int k = 0; k < N; ++k) fft2_inplace(out.layer(k), M, false);

    const std::size_t chunk = 512;
    const std::size_t nchunks = (P + chunk - 1) / chunk;
    parallel_for(nchunks, [&](std::size_t c) {
        const std::size_t lo = c * chunk, hi = std::min(P, lo + chunk), n = hi - lo;
        if (N <= 2) {
            for (std::size_t i = lo; i < hi; ++i) {
                const Eigen::MatrixXd G = spatial_generator(static_cast<int>(i % M), static_cast<int>(i / M), M, p);
                CVec x(N);
                for (int r = 0; r < N; ++r) x[r] = out.layer(r)[i];
                cn_dense(G, dt, p.steps, x);
                for (int r = 0; r < N; ++r) out.layer(r)[i] = x[r];
            }
            return;
        }
        std::vector<double> g(static_cast<std::size_t>(N) * n);
        for (std::size_t q = 0; q < n; ++q) {
            const int p1 = static_cast<int>((lo + q) % M), p2 = static_cast<int>((lo + q) / M);
            for (int r = 0; r < N; ++r) {
                const double a = spatial_symbol(r, N, p1, p2, M, p.paper_coefficients);
                g[r * n + q] = -p.beta - 0.5 * M * a * a;
            }
        }
        const kernels::CnPlan plan = kernels::cn_prepare(N, n, g.data(), p.beta / 2, dt);
        std::vector<double> x(static_cast<std::size_t>(N) * 2 * n);
        for (int r = 0; r < N; ++r)
            for (std::size_t q = 0; q < n; ++q) {
                const cplx v = out.layer(r)[lo + q];
                x[r * 2 * n + 2 * q] = v.real();
                x[r * 2 * n + 2 * q + 1] = v.imag();
            }
        kernels::cn_advance(plan, x.data(), p.steps);
        for (int r = 0; r < N; ++r)
            for (std::size_t q = 0; q < n; ++q)
                out.layer(r)[lo + q] = cplx(x[r * 2 * n + 2 * q], x[r * 2 * n + 2 * q + 1]);
    });

    for (int k = 0; k < N; ++k) fft2_inplace(out.layer(k), M, true);
    return out;
}

Eigen::MatrixXd ap_generator(const Vec2& lambda, int N, double beta) {
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(N * N, N * N);
    for (int k = 0; k < N; ++k)
        for (int n = 0; n < N; ++n) {
            const int row = k * N + n;
            const double th = kTwoPi * wrap(k + n, N) / N;
            const double s = lambda.x * std::cos(th) + lambda.y * std::sin(th);
            G(row, row) += -s * s - beta;
            G(row, wrap(k + 1, N) * N + wrap(n - 1, N)) += beta / 2;
            G(row, wrap(k - 1, N) * N + wrap(n + 1, N)) += beta / 2;
        }
    return G;
}

APCoefficients evolve_ap(const APCoefficients& c, const FrequencySet& F, const DiffusionParams& p) {
    p.validate();
    if (!c.group) throw DimensionError("evolve_ap needs group-type coefficients");
    if (c.N != p.N || c.N != F.N || c.Q != F.Q()) throw DimensionError("evolve_ap: shapes disagree");
    const int N = c.N;
    APCoefficients out = c;
    parallel_for(c.Q, [&](std::size_t qq) {
        const int q = static_cast<int>(qq);
        const Eigen::MatrixXd E = (p.T * ap_generator(F.slice_freqs[q], N, p.beta)).exp();
        CVec v(N * N);
        for (int k = 0; k < N; ++k)
            for (int n = 0; n < N; ++n) v[k * N + n] = c(k, n, q);
        const CVec w = E.cast<cplx>() * v;
        for (int k = 0; k < N; ++k)
            for (int n = 0; n < N; ++n) out(k, n, q) = w[k * N + n];
    });
    return out;
}

MaskState MaskState::from_zeros(const Image& f) {
    if (!f.square()) throw DimensionError("mask: image must be square");
    MaskState m;
    m.M = f.width;
    m.bad.resize(f.v.size());
    for (std::size_t i = 0; i < f.v.size(); ++i) m.bad[i] = f.v[i] == 0.0;
    return m;
}

MaskState MaskState::from_mask(const Image& mask) {
    if (!mask.square()) throw DimensionError("mask: image must be square");
    MaskState m;
    m.M = mask.width;
    m.bad.resize(mask.v.size());
    for (std::size_t i = 0; i < mask.v.size(); ++i) m.bad[i] = mask.v[i] != 0.0;
    return m;
}

std::size_t MaskState::bad_count() const { return static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1)); }

namespace {

double total_mass(const GroupFunction& psi) {
    double s = 0.0;
    for (const auto& v : psi.values) s += v.real();
    return s;
}

std::vector<double> layer_max(const GroupFunction& psi) {
    std::vector<double> h(psi.plane(), -INFINITY);
    for (int k = 0; k < psi.N; ++k) {
        const cplx* l = psi.layer(k);
        for (std::size_t i = 0; i < h.size(); ++i) h[i] = std::max(h[i], l[i].real());
    }
    return h;
}

}  // namespace

Image inpaint_masked(const Image& f, const MaskState& mask, const DiffusionParams& p, int n_intervals,
                     InpaintReport* report) {
    p.validate();
    if (!f.square()) throw DimensionError("inpaint: image must be square");
    if (mask.M != f.width || mask.bad.size() != f.v.size()) throw DimensionError("inpaint: mask size differs from image");
    if (n_intervals < 1) throw InputError("inpaint: need at least one interval");
    const std::size_t nbad0 = mask.bad_count();
    if (nbad0 == f.v.size()) throw DegenerateInput("inpaint: every pixel is corrupted");
    const int M = f.width;

    Image f0 = f;
    for (auto& v : f0.v) v = std::max(v, kEpsilonFloor);
    GroupFunction psi = gradient_lift_masked(f0, p.N, mask.bad);
    // Mixing reference: h(x, 0) on the original good set; pixels that join the
    // good set later keep h at the round they joined.
    std::vector<double> href = layer_max(psi);
    std::vector<char> bad = mask.bad;

    InpaintReport rep;
    rep.bad_counts.push_back(nbad0);
    DiffusionParams sub = p;
    sub.T = p.T / n_intervals;
    sub.steps = std::max(1, p.steps / n_intervals);
    for (int r = 0; r < n_intervals; ++r) {
        const double m0 = total_mass(psi);
        psi = evolve_spatial(psi, sub);
        const double m1 = total_mass(psi);
        rep.mass_residual = std::max(rep.mass_residual, std::abs(m1 - m0) / std::max(std::abs(m0), 1e-300));

        const std::vector<double> ht = layer_max(psi);
        for (std::size_t i = 0; i < ht.size(); ++i) {
            if (bad[i]) continue;
            // Guard against vanishing maxima, where the mixing factor is undefined.
            const double sigma = ht[i] > 1e-12 ? 0.5 * (href[i] + ht[i]) / ht[i] : 1.0;
            for (int k = 0; k < psi.N; ++k) psi.layer(k)[i] *= sigma;
        }

        const Image fr = project(psi);
        std::vector<std::size_t> grow;
        for (int i2 = 0; i2 < M; ++i2)
            for (int i1 = 0; i1 < M; ++i1) {
                const std::size_t idx = static_cast<std::size_t>(i2) * M + i1;
                if (!bad[idx]) continue;
                bool edge = false;
                double avg = 0.0;
                for (int d2 = -1; d2 <= 1; ++d2)
                    for (int d1 = -1; d1 <= 1; ++d1) {
                        const int j1 = (i1 + d1 + M) % M, j2 = (i2 + d2 + M) % M;
                        avg += fr.at(j1, j2);
                        if ((d1 || d2) && !bad[static_cast<std::size_t>(j2) * M + j1]) edge = true;
                    }
                if (edge && fr.at(i1, i2) >= avg / 9.0) grow.push_back(idx);
            }
        for (auto idx : grow) {
            bad[idx] = 0;
            href[idx] = ht[idx];
        }
        rep.bad_counts.push_back(static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1)));
    }

    Image out = project(psi);
    // Affine map sending the 5th and 95th percentiles of the projection to
    // those of the input, both taken over the originally good pixels. Columns
    // with a single dominant layer gain mass under the mixing step, so the
    // extremes of the projection are not reliable.
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < out.v.size(); ++i) {
        if (mask.bad[i]) continue;
        xs.push_back(out.v[i]);
        ys.push_back(f0.v[i]);
    }
    auto quantile = [](std::vector<double>& v, double q) {
        auto it = v.begin() + static_cast<std::ptrdiff_t>(q * (v.size() - 1));
        std::nth_element(v.begin(), it, v.end());
        return *it;
    };
    const double xl = quantile(xs, 0.05), xh = quantile(xs, 0.95);
    const double yl = quantile(ys, 0.05), yh = quantile(ys, 0.95);
    double a = 1.0, b = 0.0;
    if (xh - xl > 1e-12 && yh - yl > 1e-12) {
        a = (yh - yl) / (xh - xl);
        b = yl - a * xl;
    } else {
        b = quantile(ys, 0.5) - quantile(xs, 0.5);
    }
    for (auto& v : out.v) v = std::clamp(a * v + b, 0.0, 1.0);
    rep.affine_scale = a;
    rep.affine_offset = b;
    if (report) *report = rep;
    return out;
}

}  // namespace se2n
