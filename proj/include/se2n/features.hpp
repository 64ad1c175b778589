#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "se2n/grid.hpp"
#include "se2n/invariants.hpp"

namespace se2n {

struct InvariantConfig {
    int N = 6;
    int grid_half = 8;  // window |x|, |y| <= grid_half DFT bins
    InvariantKind kind = InvariantKind::RPSBS;
    bool center = true;
    bool moduli_only = false;

    void validate() const;
};

// Hexagonal frequency lattice with spacing one bin, inside the square window.
// Points are in bin units.
std::vector<Vec2> hex_window(int grid_half);
// Singles: origin plus window points in the slice [0, 2pi/N); pairs: l1 in the
// slice (non-zero), l2 in the window with |l2| <= |l1|, l1 + l2 in the window.
// Sorted by (|l1|, angle l1, |l2|, angle l2). Units: bins.
FeatureLayout hex_layout(int N, int grid_half);

// Zero-pads to a square of side max(w, h).
Image pad_square(const Image& f);

// Grayscale image -> normalized, centered spectrum -> orbit vectors on the hex
// window -> reduced invariants. Frequencies in the returned layout are bins.
FeatureVector feature_pipeline(const Image& gray, const InvariantConfig& cfg);

// Image sampled on the hexagonal pixel lattice i a + j b (a = (1,0),
// b = (1/2, sqrt 3/2)) inside a disk, so 60-degree rotations permute samples.
struct HexImage {
    double radius = 0.0;
    int M = 0;  // side of the square image it came from (sets the bin size)
    std::vector<std::pair<int, int>> index;
    std::vector<double> values;
};

HexImage resample_hex(const Image& gray, double radius);
HexImage rotate_hex(const HexImage& h, long k);  // by k * 60 degrees
FeatureVector hex_features(const HexImage& h, const InvariantConfig& cfg);

// Orbit vectors of a real image on the window (for cyclicity diagnostics).
std::vector<CVec> window_orbits(const Image& gray, const InvariantConfig& cfg);

void write_features_csv(std::ostream& os, const std::vector<std::string>& ids, const std::vector<FeatureVector>& fvs);

// 1-NN on Euclidean distance; smoke-test evaluator only.
int nearest_neighbor(const std::vector<FeatureVector>& train, const std::vector<int>& labels, const FeatureVector& q);
double one_nn_accuracy(const std::vector<FeatureVector>& train, const std::vector<int>& train_labels,
                       const std::vector<FeatureVector>& test, const std::vector<int>& test_labels);

}  // namespace se2n
