#pragma once

#include <cstddef>
#include <vector>

#include "se2n/apfun.hpp"
#include "se2n/grid.hpp"
#include "se2n/zn_core.hpp"

namespace se2n {

struct DiffusionParams {
    int N = 30;
    double beta = 25.0;
    double T = 1.0;
    int steps = 1;
    // Use the printed double-cosine spatial symbol instead of cos/sin.
    bool paper_coefficients = false;

    void validate() const;
};

// Xi_N = -beta I + beta/2 (S + S^{-1}) as a circulant (N = 1 gives 0).
CirculantMatrix jump_generator(int N, double beta);

// -1/2 diag_k((lambda1 cos theta_k + lambda2 sin theta_k)^2) + Xi_N.
Eigen::MatrixXd hat_delta(const Vec2& lambda, const DiffusionParams& p);

// Spatial symbol of the discretized direction field at DFT bin (p1, p2).
double spatial_symbol(int r, int N, int p1, int p2, int M, bool paper_coefficients);
// Generator of the decoupled per-bin system: Xi_N - (M/2) diag_r(a_r^2).
Eigen::MatrixXd spatial_generator(int p1, int p2, int M, const DiffusionParams& p);

// Crank-Nicolson on every DFT bin with the cyclic Thomas solver.
GroupFunction evolve_spatial(const GroupFunction& psi0, const DiffusionParams& p);

// Generator of the AP-coefficient system for one frequency, index k*N + n.
Eigen::MatrixXd ap_generator(const Vec2& lambda, int N, double beta);
APCoefficients evolve_ap(const APCoefficients& c, const FrequencySet& F, const DiffusionParams& p);

struct MaskState {
    int M = 0;
    std::vector<char> bad;  // 1 = corrupted

    static MaskState from_zeros(const Image& f);
    // Nonzero mask pixels are corrupted.
    static MaskState from_mask(const Image& mask);
    std::size_t bad_count() const;
};

struct InpaintReport {
    std::vector<std::size_t> bad_counts;  // after each round, starting with the initial count
    double mass_residual = 0.0;            // max relative change of total mass over one evolution
    double affine_scale = 1.0;
    double affine_offset = 0.0;
};

inline constexpr double kEpsilonFloor = 1.0 / 255.0;

Image inpaint_masked(const Image& f, const MaskState& mask, const DiffusionParams& p, int n_intervals = 10,
                     InpaintReport* report = nullptr);

}  // namespace se2n
