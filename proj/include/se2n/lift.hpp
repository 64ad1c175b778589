#pragma once

#include <vector>

#include "se2n/grid.hpp"
#include "se2n/types.hpp"

namespace se2n {

// Planar mother wavelet on the M x M periodic grid with its cached 2-D DFT.
struct Wavelet {
    int M = 0;
    std::vector<cplx> values;
    std::vector<cplx> spectrum;

    static Wavelet from_values(std::vector<cplx> values, int M);
    // Isotropic Gaussian centered at pixel (0,0), periodic distance.
    static Wavelet gaussian(int M, double sigma = 2.0);
    // One-pixel mass at the origin.
    static Wavelet delta(int M);

    cplx spectrum_at(const Vec2& lambda) const;
    // psi*_lambda(i) = conj Psi^(R_i lambda).
    CVec psi_star_orbit(const Vec2& lambda, int N) const;
    // min over the canonical grid of ||psi*_lambda||; > 0 means the lift is injective on the grid.
    double health(int N) const;
};

// Layer k: f convolved with the k-rotated involuted wavelet,
// FT(mu) = conj Psi^(R_{-k} mu) f^(mu).
GroupFunction wavelet_lift(const Wavelet& psi, const Image& f, int N);

// Layer k: FT(mu) = f^(R_k mu) conj Psi^(R_{-k} mu).
GroupFunction almost_lift(const Wavelet& psi, const Image& f, int N);

// Places f(x) on the layer whose angle matches the level-line direction at x;
// critical points get f(x)/N on every layer.
GroupFunction gradient_lift(const Image& f, int N, double critical_tol = 1e-9);
// Same, with derivatives taken only from pixels not flagged in bad (one-sided
// at the mask boundary, zero when both neighbours are flagged).
GroupFunction gradient_lift_masked(const Image& f, int N, const std::vector<char>& bad, double critical_tol = 1e-9);

struct CenteredImage {
    Image image;
    Vec2 center;
};

// Pixel coordinates measured from index M/2.
Vec2 geometric_center(const Image& f, double tol = 1e-12);
// out(x) = f(x - shift), subpixel via Fourier phase.
Image translate_fourier(const Image& f, const Vec2& shift);
CenteredImage center_geometric(const Image& f, double tol = 1e-12);

}  // namespace se2n
