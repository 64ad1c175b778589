#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "se2n/types.hpp"

namespace se2n {

// Q frequencies in the canonical slice; the full set is their N rotations,
// plus the origin when has_origin is set (sums that cancel in Algorithm 1).
struct FrequencySet {
    int N = 1;
    std::vector<Vec2> slice_freqs;
    std::vector<int> depth;  // generation at which each point appeared (Algorithm 1), else 1
    bool has_origin = false;

    int Q() const { return static_cast<int>(slice_freqs.size()); }
    std::vector<Vec2> full() const;  // index n*Q + q holds R_n slice_freqs[q]; origin excluded
    // Slice index q and rotation n with lambda = R_n slice_freqs[q]; false if absent.
    bool locate(const Vec2& lambda, int& q, int& n, double tol = 1e-9) const;
    bool contains(const Vec2& lambda, double tol = 1e-9) const;

    static FrequencySet from_points(int N, const std::vector<Vec2>& pts, double dedup_tol = 1e-9);
    // xi_j e^{i omega_j}: radii 1..rings scaled by spacing, per ring `per_ring` angles in [0, 2pi/N).
    static FrequencySet polar_grid(int N, int rings, int per_ring, double spacing);
    static FrequencySet roots_of_unity(int N);
};

struct SpatialSampleSet {
    int N = 1;
    std::vector<Vec2> slice_points;

    int P() const { return static_cast<int>(slice_points.size()); }
};

// Planar: h(n, q), stored [n*Q + q]; f(x) = sum_q sum_n h(n,q) e^{i<R_n lambda_q, x>}.
// Group: h(k, n, q), stored [(k*N + n)*Q + q];
// f(k, x) = sum_q sum_n h(k,n,q) e^{i<R_{-(n+k)} lambda_q, x>}.
struct APCoefficients {
    int N = 0;
    int Q = 0;
    bool group = false;
    std::vector<cplx> data;

    static APCoefficients planar(int N, int Q);
    static APCoefficients group_type(int N, int Q);

    cplx& operator()(int n, int q) { return data[static_cast<std::size_t>(n) * Q + q]; }
    cplx operator()(int n, int q) const { return data[static_cast<std::size_t>(n) * Q + q]; }
    cplx& operator()(int k, int n, int q) { return data[(static_cast<std::size_t>(k) * N + n) * Q + q]; }
    cplx operator()(int k, int n, int q) const { return data[(static_cast<std::size_t>(k) * N + n) * Q + q]; }

    CMat matrix() const;  // planar N x Q
    static APCoefficients from_matrix(const CMat& m);
    double norm() const;
};

struct FourierBesselBlock {
    int n_hat = 0;
    CMat matrix;  // P x Q, entry (j, q) = J_{n_hat}(lambda_q, y_j)
};

// Block-diagonal Fourier-Bessel operator. Factorizations are cached per
// (mode, weights) and reused by later solves.
class FourierBesselOperator {
public:
    FourierBesselOperator(const SpatialSampleSet& E, const FrequencySet& F);
    ~FourierBesselOperator();

    int N() const { return N_; }
    int P() const { return P_; }
    int Q() const { return Q_; }
    const std::vector<FourierBesselBlock>& blocks() const { return blocks_; }

    // samples(m, j) = f(R_m y_j)
    CMat evaluate(const APCoefficients& c) const;
    APCoefficients interpolate(const CMat& samples, double max_cond = 1e12) const;
    // Per block (J*J + diag d^2) w = J* s, or with the minus sign when paper_sign is set.
    APCoefficients approximate(const CMat& samples, const Eigen::MatrixXd& d, bool paper_sign = false) const;
    std::vector<double> condition_numbers() const;

    // Number of block factorizations computed (N per new key) and cache reuses.
    std::size_t factorizations() const;
    std::size_t cache_hits() const;

private:
    struct Factor;
    const std::vector<Factor>& factors(const std::vector<double>& key, int mode, double max_cond,
                                       const Eigen::MatrixXd* d, bool paper_sign) const;
    CMat dft_rows(const CMat& m, bool inverse) const;

    int N_, P_, Q_;
    std::vector<FourierBesselBlock> blocks_;
    mutable std::mutex mu_;
    mutable std::map<std::vector<double>, std::vector<Factor>> cache_;
    mutable std::size_t factorizations_ = 0;
    mutable std::size_t hits_ = 0;
};

std::vector<FourierBesselBlock> build_fb_operator(const SpatialSampleSet& E, const FrequencySet& F);

CMat ap_evaluate(const APCoefficients& c, const FrequencySet& F, const SpatialSampleSet& E);
APCoefficients ap_interpolate(const CMat& samples, const SpatialSampleSet& E, const FrequencySet& F);
APCoefficients ap_approximate(const CMat& samples, const SpatialSampleSet& E, const FrequencySet& F,
                              const Eigen::MatrixXd& d, bool paper_sign = false);
// Planar function value at an arbitrary point.
cplx ap_value(const APCoefficients& c, const FrequencySet& F, const Vec2& x);
// tau_xi f(x) = f(x - xi)
APCoefficients ap_translate(const APCoefficients& c, const FrequencySet& F, const Vec2& xi);
// (R_h f)(x) = f(R_{-h} x): h(n, q) -> h(n - h, q)
APCoefficients ap_rotate(const APCoefficients& c, long h);
// Orbit vector of the planar function at lambda in the full set: out[k] = coefficient at R_k lambda.
CVec ap_orbit(const APCoefficients& c, const FrequencySet& F, const Vec2& lambda);

// d(Lambda) = alpha/10 for |Lambda| <= 1, alpha for |Lambda| <= 3/2, 100 alpha beyond; N x Q.
Eigen::MatrixXd weight_profile(const FrequencySet& F, double alpha);

// Algorithm 1: F_k = {lambda + mu} u F_{k-1}, quotiented to the slice.
FrequencySet gen_freqset(const FrequencySet& seed, int depth, double dedup_tol = 1e-9, std::size_t cap = 200000);

struct Admissibility {
    bool admissible = false;
    std::vector<Vec2> f1;  // slice representatives of F~_1 (rotation-closed)
    std::vector<Vec2> f2;
    std::string reason;
};

Admissibility is_admissible(const FrequencySet& F, double tol = 1e-9);

struct APCenter {
    Vec2 center;
    APCoefficients centered;
    bool ambiguous = false;
    double objective = 0.0;
};

// Search region K = disk of the given radius around the origin.
APCenter center_ap(const APCoefficients& c, const FrequencySet& F, double radius, double rho_tol = 1e-12);

// Plain-text sets, one point per line: "xi omega" (or "rho alpha").
void write_polar_points(std::ostream& os, const std::vector<Vec2>& pts);
std::vector<Vec2> read_polar_points(std::istream& is);
void save_frequency_set(const std::string& path, const FrequencySet& F);
FrequencySet load_frequency_set(const std::string& path, int N);
// 16-byte header (int64 N, int64 Q), then little-endian complex128 [n][q].
void save_coefficients(const std::string& path, const APCoefficients& c);
APCoefficients load_coefficients(const std::string& path);

}  // namespace se2n
