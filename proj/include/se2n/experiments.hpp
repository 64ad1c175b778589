#pragma once

#include <string>
#include <vector>

#include "se2n/apfun.hpp"
#include "se2n/grid.hpp"

namespace se2n {

// F is a polar grid and E = e_factor * F; spatial points map to pixels as
// center + scale * y.
struct NormsConfig {
    int N = 8;
    int rings = 8;
    int per_ring = 4;
    double spacing = 0.25;
    std::vector<double> radii;  // explicit ring radii; overrides rings and spacing when set
    double e_factor = 1.0;
    double scale = 12.0;
    double alpha = 100.0;
    long rotation = 3;         // gamma = rotation * 2pi/N
    Vec2 xi{0.3, 0.5};         // translation, in the units of E
    bool paper_sign = false;

    void validate() const;
};

struct NormsRow {
    double coefficients = 0.0;
    double evaluated = 0.0;
    double rotated = 0.0;
    double translated = 0.0;
};

struct NormsResult {
    double image_norm = 0.0;  // samples on E
    NormsRow interpolation;
    NormsRow approximation;
    APCoefficients interp_coeffs;
    APCoefficients approx_coeffs;
    CMat samples;
    CMat approx_eval;
    FrequencySet F;
    SpatialSampleSet E;
};

// Smallest spacing start * growth^k (k < steps) at which every interpolation
// block of the E = F polar grid passes the max_cond gate; 0 if none does.
double first_well_posed_spacing(int N, int rings, int per_ring, double start = 0.5, double growth = 1.02,
                                int steps = 400, double max_cond = 1e12);

// Periodic bilinear sample of an image at pixel coordinates (x1 horizontal).
double sample_image(const Image& f, double x1, double x2);

NormsResult run_norms(const Image& f, const NormsConfig& cfg);
// Explicit sets; the grid fields of cfg are ignored.
NormsResult run_norms(const Image& f, const NormsConfig& cfg, const FrequencySet& F, const SpatialSampleSet& E);

// Smooth test scene: a few Gaussian blobs and a ramp, values in [0,1].
Image synthetic_scene(int M, unsigned seed);
// Horizontal bright stripe (0.9) on a flat background (0.15).
Image stripe_image(int M);
// One-pixel vertical column through the stripe; 1 = corrupted.
Image stripe_gap_mask(int M);

struct SelfCheck {
    std::string name;
    bool ok = false;
    double value = 0.0;
    double threshold = 0.0;
};

// Fast internal consistency checks used by the CLI.
std::vector<SelfCheck> run_selftest(unsigned seed = 7);

}  // namespace se2n
