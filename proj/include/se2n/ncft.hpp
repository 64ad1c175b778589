#pragma once

#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "se2n/grid.hpp"
#include "se2n/types.hpp"

namespace se2n {

// 2-D DFT of a planar function, evaluated anywhere by periodic bilinear interpolation.
struct PlanarSpectrum {
    int M = 0;
    std::vector<cplx> F;

    static PlanarSpectrum of(const Image& f);
    static PlanarSpectrum of(const std::vector<cplx>& f, int M);
    cplx at(const Vec2& lambda) const;
};

// out[k] = F(R_k lambda).
CVec orbit_vector(const PlanarSpectrum& F, const Vec2& lambda, int N);

// Per-layer 2-D DFTs of a group function.
struct LayerSpectra {
    int N = 0;
    int M = 0;
    std::vector<std::vector<cplx>> layers;

    static LayerSpectra of(const GroupFunction& f);
};

// f^(T^lambda), entry (i, j) = F(f(j - i))(R_j lambda).
CMat ncft_matrix(const LayerSpectra& s, const Vec2& lambda);

// One representative per rotation orbit of the M x M DFT lattice (lambda != 0).
struct GridNode {
    Vec2 lambda;       // rad/pixel
    int p1 = 0, p2 = 0;  // centered lattice coordinates
    int stabilizer = 1;
    double weight = 0.0;
};

// For N | 4 the lattice is rotation-closed and orbits are enumerated exactly;
// otherwise the nodes are the lattice points with angle in [0, 2pi/N).
std::vector<GridNode> canonical_grid(int N, int M);
bool lattice_closed(int N);

struct SpectralField {
    int N = 0;
    int M = 0;
    std::vector<GridNode> nodes;
    std::vector<CMat> mats;
    CVec zero_slot;            // dft_zn of the layer means
    double zero_weight = 0.0;  // Parseval weight of the zero slot
    // Fallback for frequencies outside the table (e.g. rotated sums); may be empty.
    std::function<CMat(const Vec2&)> source;

    void add(const GridNode& node, CMat m);
    bool contains(const Vec2& lambda) const;
    // Full matrix at any frequency in the table, at a rotation of a table
    // entry (f^(T^{R_l lambda}))_{ij} = f^(T^lambda)_{i+l, j+l}, or via source.
    CMat matrix(const Vec2& lambda) const;
    std::size_t size() const { return mats.size(); }

    static SpectralField from_function(int N, std::function<CMat(const Vec2&)> fn);

private:
    std::map<std::pair<long long, long long>, std::pair<std::size_t, int>> index_;
    std::pair<long long, long long> key(const Vec2& lambda) const;
};

SpectralField ncft_forward(const GroupFunction& f);
GroupFunction ncft_inverse(const SpectralField& F, int M);

// Sum over the field of weight * ||F(lambda)||_HS^2, including the zero slot.
double plancherel_norm2(const SpectralField& F);

// Entry (i, j) = psi_star[i] * f_orbit[j].
CMat ft_of_lift(const CVec& psi_star, const CVec& f_orbit);

}  // namespace se2n
