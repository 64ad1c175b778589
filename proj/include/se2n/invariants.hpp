#pragma once

#include <functional>
#include <string>
#include <vector>

#include "se2n/ncft.hpp"
#include "se2n/types.hpp"

namespace se2n {

enum class InvariantKind { PS, BS, RPS, RBS, RPSBS };

InvariantKind parse_kind(const std::string& s);
const char* kind_name(InvariantKind k);

// Reference feature lengths at N = 6; the enumeration behind them is not known.
inline constexpr int kTableDimPS = 136;
inline constexpr int kTableDimBS = 717;
inline constexpr int kTableDimRPS = 816;
inline constexpr int kTableDimRBS = 4417;
inline constexpr int kTableDimRPSBS = 1533;

CMat kron(const CMat& a, const CMat& b);

CMat ps_matrix(const SpectralField& F, const Vec2& lambda);
// f^(T1 (x) T2) = A* (+)_h f^(T^{lambda1 + R_h lambda2}) A
CMat tensor_transform(const SpectralField& F, const Vec2& l1, const Vec2& l2);
CMat bs_matrix(const SpectralField& F, const Vec2& l1, const Vec2& l2);
CMat rbs_matrix(const SpectralField& F, const Vec2& l1, const Vec2& l2, long k);

// Reduced scalars, <u, v> = sum u conj(v).
cplx ps_reduced(const CVec& a);
cplx rps_reduced(const CVec& a, long h);                           // <a, S^h a>
cplx bs_reduced(const CVec& a, const CVec& b, const CVec& c);      // <a b, c>
cplx rbs_reduced(const CVec& a, const CVec& b, const CVec& c, long h);  // <a S^h b, c>

struct FrequencyPair {
    Vec2 l1, l2;
};

struct FeatureLayout {
    int N = 0;
    std::vector<Vec2> singles;
    std::vector<FrequencyPair> pairs;
};

using OrbitFn = std::function<CVec(const Vec2&)>;

struct FeatureVector {
    InvariantKind kind = InvariantKind::PS;
    int N = 0;
    std::vector<double> values;
    std::size_t singles = 0;
    std::size_t pairs = 0;
};

// Each complex scalar becomes (re, im), or (|z|, 0) in moduli mode. Order:
// PS/RPS over singles (RPS: h = 0..N-1 inner), BS/RBS over pairs, RPSBS = RPS then BS.
FeatureVector reduced_invariants(const OrbitFn& orbit, const FeatureLayout& layout, InvariantKind kind,
                                 bool moduli_only = false);
std::size_t feature_length(const FeatureLayout& layout, InvariantKind kind);

double relative_distance(const std::vector<double>& a, const std::vector<double>& b);

struct WeakCyclicity {
    double fraction = 0.0;        // cyclic (odd N) or R-cyclic (even N) fraction
    double plain_fraction = 0.0;  // complex cyclicity of the full orbit vector
    std::vector<char> flags;
    std::vector<char> plain_flags;
};

WeakCyclicity weak_cyclicity_report(const std::vector<CVec>& orbits, double tol = 1e-9);

}  // namespace se2n
