#include "se2n/grid.hpp"

#include <cmath>

#include "se2n/errors.hpp"

namespace se2n {

namespace {

long exact_quarters(long k, int N) {
    const long m = wrap(k, N);
    if ((4 * m) % N != 0) throw Unsupported("grid-exact rotation needs k * 2pi/N to be a multiple of pi/2");
    return 4 * m / N;
}

int exact_shift(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-9) throw Unsupported("grid-exact translation needs integer pixel offsets");
    return static_cast<int>(r);
}

}  // namespace

void rotate_index_quarter(long quarters, int M, int i1, int i2, int& o1, int& o2) {
    int a = i1, b = i2;
    for (long q = 0; q < wrap(quarters, 4); ++q) {
        const int t = a;
        a = -b;
        b = t;
    }
    o1 = wrap(a, M);
    o2 = wrap(b, M);
}

Image planar_action(const GroupElement& g, int N, const Image& f) {
    if (!f.square()) throw DimensionError("planar action needs a square image");
    const int M = f.width;
    const long q = exact_quarters(g.k, N);
    const int s1 = exact_shift(g.x.x), s2 = exact_shift(g.x.y);
    Image out(M, M);
    // out(y) = f(R_{-k}(y - x))
    for (int i2 = 0; i2 < M; ++i2)
        for (int i1 = 0; i1 < M; ++i1) {
            int o1, o2;
            rotate_index_quarter(-q, M, i1 - s1, i2 - s2, o1, o2);
            out.at(i1, i2) = f.at(o1, o2);
        }
    return out;
}

GroupFunction left_action(const GroupElement& g, const GroupFunction& psi) {
    const int N = psi.N, M = psi.M;
    const long q = exact_quarters(g.k, N);
    const int s1 = exact_shift(g.x.x), s2 = exact_shift(g.x.y);
    GroupFunction out(N, M);
    for (int k = 0; k < N; ++k) {
        const int src = wrap(k - g.k, N);
        for (int i2 = 0; i2 < M; ++i2)
            for (int i1 = 0; i1 < M; ++i1) {
                int o1, o2;
                rotate_index_quarter(-q, M, i1 - s1, i2 - s2, o1, o2);
                out.at(k, i1, i2) = psi.at(src, o1, o2);
            }
    }
    return out;
}

Image project(const GroupFunction& psi) {
    Image out(psi.M, psi.M);
    for (int k = 0; k < psi.N; ++k) {
        const cplx* l = psi.layer(k);
        for (std::size_t i = 0; i < psi.plane(); ++i) out.v[i] += l[i].real();
    }
    return out;
}

Image real_part(const GroupFunction& psi, int k) {
    Image out(psi.M, psi.M);
    const cplx* l = psi.layer(k);
    for (std::size_t i = 0; i < psi.plane(); ++i) out.v[i] = l[i].real();
    return out;
}

}  // namespace se2n
