#include "se2n/ncft.hpp"

#include <cmath>

#include "se2n/errors.hpp"
#include "se2n/fft.hpp"
#include "se2n/parallel.hpp"
#include "se2n/zn_core.hpp"

namespace se2n {

PlanarSpectrum PlanarSpectrum::of(const Image& f) {
    return {f.width, fft2(f)};
}

PlanarSpectrum PlanarSpectrum::of(const std::vector<cplx>& f, int M) { return {M, fft2(f, M)}; }

cplx PlanarSpectrum::at(const Vec2& lambda) const { return spectrum_at(F.data(), M, lambda); }

CVec orbit_vector(const PlanarSpectrum& F, const Vec2& lambda, int N) {
    CVec out(N);
    for (int k = 0; k < N; ++k) out[k] = F.at(rotate_k(lambda, k, N));
    return out;
}

LayerSpectra LayerSpectra::of(const GroupFunction& f) {
    LayerSpectra s;
    s.N = f.N;
    s.M = f.M;
    s.layers.resize(f.N);
    parallel_for(f.N, [&](std::size_t k) {
        s.layers[k].assign(f.layer(static_cast<int>(k)), f.layer(static_cast<int>(k)) + f.plane());
        fft2_inplace(s.layers[k].data(), f.M, false);
    });
    return s;
}

CMat ncft_matrix(const LayerSpectra& s, const Vec2& lambda) {
    const int N = s.N;
    CMat m(N, N);
    for (int j = 0; j < N; ++j) {
        const Vec2 mu = rotate_k(lambda, j, N);
        for (int i = 0; i < N; ++i) m(i, j) = spectrum_at(s.layers[wrap(j - i, N)].data(), s.M, mu);
    }
    return m;
}

bool lattice_closed(int N) { return N >= 1 && 4 % N == 0; }

std::vector<GridNode> canonical_grid(int N, int M) {
    if (N < 1 || M < 2) throw DimensionError("canonical grid needs N >= 1, M >= 2");
    auto centered = [M](int p) { return p >= (M + 1) / 2 ? p - M : p; };
    const double w0 = 1.0 / (static_cast<double>(M) * M);
    const double sector = kTwoPi / N;
    auto in_slice = [&](int c1, int c2) {
        double a = std::atan2(static_cast<double>(c2), static_cast<double>(c1));
        if (a < 0) a += kTwoPi;
        return a < sector - 1e-12;
    };
    std::vector<GridNode> nodes;
    if (!lattice_closed(N)) {
        for (int p2 = 0; p2 < M; ++p2)
            for (int p1 = 0; p1 < M; ++p1) {
                if (p1 == 0 && p2 == 0) continue;
                const int c1 = centered(p1), c2 = centered(p2);
                if (!in_slice(c1, c2)) continue;
                nodes.push_back({from_lattice(c1, c2, M), c1, c2, 1, w0});
            }
        return nodes;
    }
    const long step = 4 / N;  // quarter turns per generator
    std::vector<char> seen(static_cast<std::size_t>(M) * M, 0);
    seen[0] = 1;
    for (int p2 = 0; p2 < M; ++p2)
        for (int p1 = 0; p1 < M; ++p1) {
            if (seen[static_cast<std::size_t>(p2) * M + p1]) continue;
            std::vector<std::pair<int, int>> orbit;
            for (int l = 0; l < N; ++l) {
                int o1, o2;
                rotate_index_quarter(step * l, M, p1, p2, o1, o2);
                bool dup = false;
                for (auto& q : orbit) dup |= (q.first == o1 && q.second == o2);
                if (!dup) orbit.emplace_back(o1, o2);
                seen[static_cast<std::size_t>(o2) * M + o1] = 1;
            }
            // Representative: the orbit point (in generation order) inside the slice, else the first.
            std::pair<int, int> rep = orbit.front();
            for (auto& q : orbit)
                if (in_slice(centered(q.first), centered(q.second))) {
                    rep = q;
                    break;
                }
            const int c1 = centered(rep.first), c2 = centered(rep.second);
            const int stab = N / static_cast<int>(orbit.size());
            nodes.push_back({from_lattice(c1, c2, M), c1, c2, stab, w0 / stab});
        }
    return nodes;
}

std::pair<long long, long long> SpectralField::key(const Vec2& lambda) const {
    if (M <= 0) return {std::llround(lambda.x * 1e9), std::llround(lambda.y * 1e9)};
    const Vec2 p = to_lattice(lambda, M);
    const long long period = static_cast<long long>(M) * 1000000LL;
    auto k = [&](double v) {
        long long r = std::llround(v * 1e6) % period;
        return r < 0 ? r + period : r;
    };
    return {k(p.x), k(p.y)};
}

void SpectralField::add(const GridNode& node, CMat m) {
    const std::size_t idx = mats.size();
    nodes.push_back(node);
    mats.push_back(std::move(m));
    for (int l = N - 1; l >= 0; --l) index_[key(rotate_k(node.lambda, l, N))] = {idx, l};
}

bool SpectralField::contains(const Vec2& lambda) const { return index_.count(key(lambda)) > 0; }

CMat SpectralField::matrix(const Vec2& lambda) const {
    if (lambda.norm() < 1e-12 && zero_slot.size() == N && M > 0) {
        const CVec means = idft_zn(zero_slot);
        CMat z(N, N);
        const double area = static_cast<double>(M) * M;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) z(i, j) = area * means[wrap(j - i, N)];
        return z;
    }
    auto it = index_.find(key(lambda));
    if (it != index_.end()) {
        const CMat& base = mats[it->second.first];
        const int l = it->second.second;
        CMat out(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) out(i, j) = base(wrap(i + l, N), wrap(j + l, N));
        return out;
    }
    if (source) return source(lambda);
    throw IncompleteField("spectral field has no entry for the requested frequency");
}

SpectralField SpectralField::from_function(int N, std::function<CMat(const Vec2&)> fn) {
    SpectralField f;
    f.N = N;
    f.source = std::move(fn);
    return f;
}

SpectralField ncft_forward(const GroupFunction& f) {
    auto spectra = std::make_shared<LayerSpectra>(LayerSpectra::of(f));
    const int N = f.N, M = f.M;
    SpectralField out;
    out.N = N;
    out.M = M;
    const auto grid = canonical_grid(N, M);
    std::vector<CMat> mats(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { mats[i] = ncft_matrix(*spectra, grid[i].lambda); });
    for (std::size_t i = 0; i < grid.size(); ++i) out.add(grid[i], std::move(mats[i]));
    CVec means(N);
    const double area = static_cast<double>(M) * M;
    for (int k = 0; k < N; ++k) means[k] = spectra->layers[k][0] / area;
    out.zero_slot = dft_zn(means);
    out.zero_weight = area;
    out.source = [spectra](const Vec2& l) { return ncft_matrix(*spectra, l); };
    return out;
}

GroupFunction ncft_inverse(const SpectralField& F, int M) {
    const int N = F.N;
    if (F.M != M) throw IncompleteField("spectral field was built for a different grid size");
    const auto grid = canonical_grid(N, M);
    if (F.size() != grid.size() || F.zero_slot.size() != N)
        throw IncompleteField("spectral field does not cover the canonical grid");
    const CVec means = idft_zn(F.zero_slot);
    const double area = static_cast<double>(M) * M;
    GroupFunction out(N, M);
    if (lattice_closed(N)) {
        // Scatter each entry back onto the lattice: layer j - i at R_j lambda.
        std::vector<std::vector<cplx>> layers(N, std::vector<cplx>(out.plane(), 0.0));
        const long step = 4 / N;
        for (std::size_t n = 0; n < F.size(); ++n) {
            const GridNode& g = F.nodes[n];
            const CMat& m = F.mats[n];
            for (int j = 0; j < N; ++j) {
                int o1, o2;
                rotate_index_quarter(step * j, M, wrap(g.p1, M), wrap(g.p2, M), o1, o2);
                const std::size_t at = static_cast<std::size_t>(o2) * M + o1;
                for (int i = 0; i < N; ++i) layers[wrap(j - i, N)][at] += m(i, j) / static_cast<double>(g.stabilizer);
            }
        }
        for (int k = 0; k < N; ++k) {
            layers[k][0] = area * means[k];
            fft2_inplace(layers[k].data(), M, true);
            std::copy(layers[k].begin(), layers[k].end(), out.layer(k));
        }
        return out;
    }
    // Direct trace sum: f(k, x) = mean_k + sum_lambda w tr(F(lambda) T^lambda(k, x)).
    parallel_for(N, [&](std::size_t kk) {
        const int k = static_cast<int>(kk);
        cplx* dst = out.layer(k);
        for (std::size_t i = 0; i < out.plane(); ++i) dst[i] = means[k];
        for (std::size_t n = 0; n < F.size(); ++n) {
            const GridNode& g = F.nodes[n];
            const CMat& m = F.mats[n];
            for (int j = 0; j < N; ++j) {
                const Vec2 mu = rotate_k(g.lambda, j + k, N);
                const cplx c = g.weight * m(j, wrap(j + k, N));
                for (int i2 = 0; i2 < M; ++i2)
                    for (int i1 = 0; i1 < M; ++i1)
                        dst[static_cast<std::size_t>(i2) * M + i1] += c * std::polar(1.0, mu.x * i1 + mu.y * i2);
            }
        }
    });
    return out;
}

double plancherel_norm2(const SpectralField& F) {
    double s = F.zero_weight * F.zero_slot.squaredNorm();
    for (std::size_t n = 0; n < F.size(); ++n) s += F.nodes[n].weight * F.mats[n].squaredNorm();
    return s;
}

CMat ft_of_lift(const CVec& psi_star, const CVec& f_orbit) {
    if (psi_star.size() != f_orbit.size()) throw DimensionError("ft_of_lift: orbit lengths differ");
    return psi_star * f_orbit.transpose();
}

}  // namespace se2n
