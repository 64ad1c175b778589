#include "se2n/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "se2n/errors.hpp"
#include "se2n/fft.hpp"
#include "se2n/lift.hpp"

namespace se2n {

namespace {

const double kHexY = std::sqrt(3.0) / 2.0;

bool in_slice(const Vec2& p, int N) {
    double a = std::atan2(p.y, p.x);
    if (a < -1e-12) a += kTwoPi;
    return a < kTwoPi / N - 1e-9;
}

double angle0(const Vec2& p) {
    double a = std::atan2(p.y, p.x);
    return a < -1e-12 ? a + kTwoPi : std::max(a, 0.0);
}

bool in_window(const Vec2& p, int g) { return std::abs(p.x) <= g + 1e-9 && std::abs(p.y) <= g + 1e-9; }

bool radial_less(const Vec2& a, const Vec2& b) {
    const double ra = a.norm(), rb = b.norm();
    if (std::abs(ra - rb) > 1e-9) return ra < rb;
    return angle0(a) < angle0(b) - 1e-12;
}

std::pair<long long, long long> key(const Vec2& l) { return {std::llround(l.x * 1e6), std::llround(l.y * 1e6)}; }

}  // namespace

void InvariantConfig::validate() const {
    if (N < 2) throw InputError("features: N must be >= 2");
    if (grid_half < 1) throw InputError("features: window half-size must be >= 1");
}

std::vector<Vec2> hex_window(int g) {
    std::vector<Vec2> pts;
    const int V = static_cast<int>(std::floor(g / kHexY + 1e-9));
    for (int v = -V; v <= V; ++v) {
        const int u0 = static_cast<int>(std::ceil(-g - 0.5 * v - 1e-9));
        const int u1 = static_cast<int>(std::floor(g - 0.5 * v + 1e-9));
        for (int u = u0; u <= u1; ++u) pts.push_back({u + 0.5 * v, v * kHexY});
    }
    std::sort(pts.begin(), pts.end(), radial_less);
    return pts;
}

FeatureLayout hex_layout(int N, int g) {
    FeatureLayout L;
    L.N = N;
    const auto window = hex_window(g);
    L.singles.push_back({0.0, 0.0});
    std::vector<Vec2> slice;
    for (const auto& p : window)
        if (p.norm() > 1e-9 && in_slice(p, N)) slice.push_back(p);
    L.singles.insert(L.singles.end(), slice.begin(), slice.end());
    for (const auto& a : slice)
        for (const auto& b : window) {
            if (b.norm() > a.norm() + 1e-9) break;  // window is sorted by radius
            if (!in_window(a + b, g)) continue;
            L.pairs.push_back({a, b});
        }
    return L;
}

Image pad_square(const Image& f) {
    const int S = std::max(f.width, f.height);
    if (f.width == S && f.height == S) return f;
    Image out(S, S);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) out.at(x, y) = f.at(x, y);
    return out;
}

namespace {

// Centered, normalized lattice spectrum; the DC value is kept apart so that
// interpolation near the origin does not leak the mean into other frequencies.
struct CenteredSpectrum {
    int M = 0;
    std::vector<cplx> F;
    cplx dc;

    CVec orbit(const Vec2& bins, int N) const {
        CVec out(N);
        if (bins.norm() < 1e-9) {
            out.setConstant(dc);
            return out;
        }
        const Vec2 l = bins * (kTwoPi / M);
        for (int k = 0; k < N; ++k) out[k] = spectrum_at(F.data(), M, rotate_k(l, k, N));
        return out;
    }
};

CenteredSpectrum centered_spectrum(const Image& gray, const InvariantConfig& cfg) {
    if (gray.width < 32 || gray.height < 32) throw DimensionError("features: image must be at least 32 x 32");
    const Image sq = pad_square(gray);
    const int M = sq.width;
    CenteredSpectrum s;
    s.M = M;
    s.F = fft2(sq);
    const double norm = 1.0 / (static_cast<double>(M) * M);
    for (auto& v : s.F) v *= norm;
    if (cfg.center) {
        const Vec2 c = geometric_center(sq);
        auto centered = [M](int p) { return p >= (M + 1) / 2 ? p - M : p; };
        for (int p2 = 0; p2 < M; ++p2)
            for (int p1 = 0; p1 < M; ++p1)
                s.F[static_cast<std::size_t>(p2) * M + p1] *=
                    std::polar(1.0, dot(from_lattice(centered(p1), centered(p2), M), c));
    }
    s.dc = s.F[0];
    s.F[0] = 0.0;
    return s;
}

}  // namespace

FeatureVector feature_pipeline(const Image& gray, const InvariantConfig& cfg) {
    cfg.validate();
    const CenteredSpectrum s = centered_spectrum(gray, cfg);
    const FeatureLayout layout = hex_layout(cfg.N, cfg.grid_half);
    return reduced_invariants([&](const Vec2& l) { return s.orbit(l, cfg.N); }, layout, cfg.kind, cfg.moduli_only);
}

std::vector<CVec> window_orbits(const Image& gray, const InvariantConfig& cfg) {
    cfg.validate();
    const CenteredSpectrum s = centered_spectrum(gray, cfg);
    const FeatureLayout layout = hex_layout(cfg.N, cfg.grid_half);
    std::vector<CVec> out;
    for (std::size_t i = 1; i < layout.singles.size(); ++i) out.push_back(s.orbit(layout.singles[i], cfg.N));
    return out;
}

HexImage resample_hex(const Image& gray, double radius) {
    const Image sq = pad_square(gray);
    const int M = sq.width;
    HexImage h;
    h.radius = radius;
    h.M = M;
    const double c = M / 2;
    const int J = static_cast<int>(std::ceil(radius / kHexY)) + 1;
    const int I = static_cast<int>(std::ceil(radius)) + J;
    for (int j = -J; j <= J; ++j)
        for (int i = -I; i <= I; ++i) {
            const Vec2 p{i + 0.5 * j, j * kHexY};
            if (p.norm() > radius + 1e-9) continue;
            const double x = c + p.x, y = c + p.y;
            const int x0 = static_cast<int>(std::floor(x)), y0 = static_cast<int>(std::floor(y));
            const double tx = x - x0, ty = y - y0;
            auto px = [&](int a, int b) { return (a < 0 || b < 0 || a >= M || b >= M) ? 0.0 : sq.at(a, b); };
            const double v = (1 - tx) * (1 - ty) * px(x0, y0) + tx * (1 - ty) * px(x0 + 1, y0) +
                             (1 - tx) * ty * px(x0, y0 + 1) + tx * ty * px(x0 + 1, y0 + 1);
            h.index.emplace_back(i, j);
            h.values.push_back(v);
        }
    return h;
}

HexImage rotate_hex(const HexImage& h, long k) {
    std::map<std::pair<int, int>, std::size_t> pos;
    for (std::size_t n = 0; n < h.index.size(); ++n) pos[h.index[n]] = n;
    HexImage out = h;
    const long m = wrap(k, 6);
    for (std::size_t n = 0; n < h.index.size(); ++n) {
        int i = h.index[n].first, j = h.index[n].second;
        for (long r = 0; r < m; ++r) {
            const int ni = -j, nj = i + j;
            i = ni;
            j = nj;
        }
        auto it = pos.find({i, j});
        if (it == pos.end()) throw NumericalError("hex rotation left the sample disk");
        out.values[it->second] = h.values[n];
    }
    return out;
}

FeatureVector hex_features(const HexImage& h, const InvariantConfig& cfg) {
    cfg.validate();
    std::vector<Vec2> pts(h.index.size());
    for (std::size_t n = 0; n < pts.size(); ++n)
        pts[n] = {h.index[n].first + 0.5 * h.index[n].second, h.index[n].second * kHexY};
    Vec2 c{0.0, 0.0};
    if (cfg.center) {
        double s = 0.0;
        for (std::size_t n = 0; n < pts.size(); ++n) {
            s += h.values[n];
            c += pts[n] * h.values[n];
        }
        if (std::abs(s) < 1e-12) throw NotCenterable("hex image has zero mean");
        c = c * (1.0 / s);
    }
    const double norm = 1.0 / (static_cast<double>(h.M) * h.M);
    std::map<std::pair<long long, long long>, cplx> cache;
    auto spectrum = [&](const Vec2& l) {
        auto k = key(l);
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
        cplx acc = 0.0;
        for (std::size_t n = 0; n < pts.size(); ++n) acc += h.values[n] * std::polar(1.0, -dot(l, pts[n]));
        acc *= norm * std::polar(1.0, dot(l, c));
        cache.emplace(k, acc);
        return acc;
    };
    const double bin = kTwoPi / h.M;
    auto orbit = [&](const Vec2& bins) {
        CVec out(cfg.N);
        for (int k = 0; k < cfg.N; ++k) out[k] = spectrum(rotate_k(bins * bin, k, cfg.N));
        return out;
    };
    return reduced_invariants(orbit, hex_layout(cfg.N, cfg.grid_half), cfg.kind, cfg.moduli_only);
}

void write_features_csv(std::ostream& os, const std::vector<std::string>& ids, const std::vector<FeatureVector>& fvs) {
    std::size_t dim = 0;
    for (const auto& f : fvs) dim = std::max(dim, f.values.size());
    os << "id,kind,dim";
    for (std::size_t i = 0; i < dim; ++i) os << ",v" << i;
    os << '\n';
    os.precision(17);
    for (std::size_t r = 0; r < fvs.size(); ++r) {
        os << ids[r] << ',' << kind_name(fvs[r].kind) << ',' << fvs[r].values.size();
        for (double v : fvs[r].values) os << ',' << v;
        os << '\n';
    }
}

int nearest_neighbor(const std::vector<FeatureVector>& train, const std::vector<int>& labels, const FeatureVector& q) {
    if (train.empty() || train.size() != labels.size()) throw InputError("1-NN: empty or mislabeled training set");
    double best = std::numeric_limits<double>::infinity();
    int lab = labels[0];
    for (std::size_t i = 0; i < train.size(); ++i) {
        if (train[i].values.size() != q.values.size()) throw DimensionError("1-NN: feature lengths differ");
        double d = 0.0;
        for (std::size_t j = 0; j < q.values.size(); ++j) d += (train[i].values[j] - q.values[j]) * (train[i].values[j] - q.values[j]);
        if (d < best) {
            best = d;
            lab = labels[i];
        }
    }
    return lab;
}

double one_nn_accuracy(const std::vector<FeatureVector>& train, const std::vector<int>& train_labels,
                       const std::vector<FeatureVector>& test, const std::vector<int>& test_labels) {
    if (test.empty()) return 0.0;
    std::size_t ok = 0;
    for (std::size_t i = 0; i < test.size(); ++i) ok += nearest_neighbor(train, train_labels, test[i]) == test_labels[i];
    return static_cast<double>(ok) / test.size();
}

}  // namespace se2n
