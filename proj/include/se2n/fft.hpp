#pragma once

#include <vector>

#include "se2n/grid.hpp"
#include "se2n/types.hpp"

namespace se2n {

// F(p) = sum_i f(i) e^{-2 pi i <p, i> / M}, storage p2*M + p1.
std::vector<cplx> fft2(const std::vector<cplx>& f, int M);
// Inverse including the 1/M^2 factor.
std::vector<cplx> ifft2(const std::vector<cplx>& F, int M);
std::vector<cplx> fft2(const Image& f);
void fft2_inplace(cplx* data, int M, bool inverse);

// Lattice coordinate of a frequency in rad/pixel: p = lambda * M / (2 pi).
Vec2 to_lattice(const Vec2& lambda, int M);
Vec2 from_lattice(double p1, double p2, int M);

// Periodic bilinear interpolation at lattice coordinates (p1, p2).
// Coordinates within 1e-9 of an integer are snapped so on-lattice reads are exact.
cplx sample_bilinear(const cplx* spec, int M, double p1, double p2);
cplx spectrum_at(const cplx* spec, int M, const Vec2& lambda);

}  // namespace se2n
