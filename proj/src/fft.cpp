#include "se2n/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "se2n/errors.hpp"

namespace se2n {

namespace {

std::mutex g_plan_mu;

fftw_plan plan_for(int M, bool inverse) {
    static std::map<std::pair<int, bool>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mu);
    auto key = std::make_pair(M, inverse);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto* buf = fftw_alloc_complex(static_cast<std::size_t>(M) * M);
    fftw_plan p = fftw_plan_dft_2d(M, M, buf, buf, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!p) throw NumericalError("fftw planning failed");
    cache.emplace(key, p);
    return p;
}

double snap(double v) {
    const double r = std::round(v);
    return std::abs(v - r) < 1e-9 ? r : v;
}

}  // namespace

void fft2_inplace(cplx* data, int M, bool inverse) {
    if (M < 1) throw DimensionError("fft2: empty grid");
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan_for(M, inverse), d, d);
    if (inverse) {
        const double s = 1.0 / (static_cast<double>(M) * M);
        for (std::size_t i = 0; i < static_cast<std::size_t>(M) * M; ++i) data[i] *= s;
    }
}

std::vector<cplx> fft2(const std::vector<cplx>& f, int M) {
    if (f.size() != static_cast<std::size_t>(M) * M) throw DimensionError("fft2: size is not M*M");
    std::vector<cplx> out = f;
    fft2_inplace(out.data(), M, false);
    return out;
}

std::vector<cplx> ifft2(const std::vector<cplx>& F, int M) {
    if (F.size() != static_cast<std::size_t>(M) * M) throw DimensionError("ifft2: size is not M*M");
    std::vector<cplx> out = F;
    fft2_inplace(out.data(), M, true);
    return out;
}

std::vector<cplx> fft2(const Image& f) {
    if (!f.square()) throw DimensionError("fft2: image must be square");
    std::vector<cplx> c(f.v.begin(), f.v.end());
    fft2_inplace(c.data(), f.width, false);
    return c;
}

Vec2 to_lattice(const Vec2& lambda, int M) { return lambda * (M / kTwoPi); }
Vec2 from_lattice(double p1, double p2, int M) { return Vec2{p1, p2} * (kTwoPi / M); }

cplx sample_bilinear(const cplx* spec, int M, double p1, double p2) {
    p1 = snap(p1);
    p2 = snap(p2);
    const double f1 = std::floor(p1), f2 = std::floor(p2);
    const double t1 = p1 - f1, t2 = p2 - f2;
    const int a1 = wrap(static_cast<long>(f1), M), a2 = wrap(static_cast<long>(f2), M);
    const int b1 = (a1 + 1) % M, b2 = (a2 + 1) % M;
    auto at = [&](int i1, int i2) { return spec[static_cast<std::size_t>(i2) * M + i1]; };
    cplx v = (1 - t1) * (1 - t2) * at(a1, a2);
    if (t1 != 0.0) v += t1 * (1 - t2) * at(b1, a2);
    if (t2 != 0.0) v += (1 - t1) * t2 * at(a1, b2);
    if (t1 != 0.0 && t2 != 0.0) v += t1 * t2 * at(b1, b2);
    return v;
}

cplx spectrum_at(const cplx* spec, int M, const Vec2& lambda) {
    const Vec2 p = to_lattice(lambda, M);
    return sample_bilinear(spec, M, p.x, p.y);
}

}  // namespace se2n
