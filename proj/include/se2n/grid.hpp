#pragma once

#include <vector>

#include "se2n/repr.hpp"
#include "se2n/types.hpp"

namespace se2n {

// Real image, row-major: value(i1, i2) = v[i2 * width + i1], i1 horizontal.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> v;

    Image() = default;
    Image(int w, int h, double fill = 0.0) : width(w), height(h), v(static_cast<std::size_t>(w) * h, fill) {}

    double& at(int i1, int i2) { return v[static_cast<std::size_t>(i2) * width + i1]; }
    double at(int i1, int i2) const { return v[static_cast<std::size_t>(i2) * width + i1]; }
    bool square() const { return width == height; }
};

// psi(k, x) on N layers of an M x M periodic grid: values[k*M*M + i2*M + i1].
struct GroupFunction {
    int N = 0;
    int M = 0;
    std::vector<cplx> values;

    GroupFunction() = default;
    GroupFunction(int n, int m) : N(n), M(m), values(static_cast<std::size_t>(n) * m * m) {}

    std::size_t plane() const { return static_cast<std::size_t>(M) * M; }
    cplx* layer(int k) { return values.data() + k * plane(); }
    const cplx* layer(int k) const { return values.data() + k * plane(); }
    cplx& at(int k, int i1, int i2) { return values[k * plane() + static_cast<std::size_t>(i2) * M + i1]; }
    cplx at(int k, int i1, int i2) const { return values[k * plane() + static_cast<std::size_t>(i2) * M + i1]; }
};

// Exact pixel rotation by k quarter turns about index (0,0), periodic.
void rotate_index_quarter(long quarters, int M, int i1, int i2, int& o1, int& o2);

// pi(k, x) f(y) = f(R_{-k}(y - x)). Grid-exact: N | 4 and integer x only.
Image planar_action(const GroupElement& a, int N, const Image& f);
// Lambda(k0, x0) psi(k, x) = psi(k - k0, R_{-k0}(x - x0)), same restriction.
GroupFunction left_action(const GroupElement& a, const GroupFunction& psi);

// Pointwise sum over layers (real part).
Image project(const GroupFunction& psi);

Image real_part(const GroupFunction& psi, int k);

}  // namespace se2n
