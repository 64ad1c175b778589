#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "se2n/apfun.hpp"
#include "se2n/errors.hpp"
#include "se2n/repr.hpp"

using namespace se2n;
using oracle::max_abs;

namespace {

FrequencySet random_freqs(int N, int Q, double rmin, double rmax) {
    FrequencySet F;
    F.N = N;
    for (int q = 0; q < Q; ++q) {
        F.slice_freqs.push_back(polar(oracle::uniform(rmin, rmax), oracle::uniform(0.0, kTwoPi / N)));
        F.depth.push_back(1);
    }
    return F;
}

SpatialSampleSet random_points(int N, int P, double rmin, double rmax) {
    SpatialSampleSet E;
    E.N = N;
    for (int j = 0; j < P; ++j) E.slice_points.push_back(polar(oracle::uniform(rmin, rmax), oracle::uniform(0.0, kTwoPi / N)));
    return E;
}

APCoefficients random_coeffs(int N, int Q) {
    APCoefficients c = APCoefficients::planar(N, Q);
    for (auto& v : c.data) v = oracle::cgauss();
    return c;
}

double min_gap(const FrequencySet& F) {
    const auto pts = F.full();
    double g = 1e300;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) g = std::min(g, (pts[i] - pts[j]).norm());
    return g;
}

}  // namespace

TEST_CASE("generalized Bessel values") {
    CHECK(std::abs(gen_bessel(0, {0.0, 0.0}, {1.0, 2.0}, 7) - 7.0) < 1e-14);
    CHECK(std::abs(gen_bessel(3, {1.0, 0.0}, {0.0, 0.0}, 7)) < 1e-14);
    // depends only on xi * rho and alpha - omega
    const Vec2 l1 = polar(2.0, 0.3), y1 = polar(1.5, 1.1);
    const Vec2 l2 = polar(1.0, 0.7), y2 = polar(3.0, 1.5);
    for (int n = 0; n < 6; ++n) CHECK(std::abs(gen_bessel(n, l1, y1, 6) - gen_bessel(n, l2, y2, 6)) < 1e-12);
    // large N approaches the classical Bessel function
    const int N = 256;
    for (int n = 0; n < 3; ++n)
        for (double z : {0.5, 2.0, 5.0}) {
            const cplx lhs = kTwoPi / N * gen_bessel(n, {z, 0.0}, {1.0, 0.0}, N);
            const cplx rhs = kTwoPi * std::pow(cplx(0, 1), n) * oracle::bessel_j(n, z);
            CHECK(std::abs(lhs - rhs) < 1e-2 * std::abs(rhs));
        }
}

TEST_CASE("Fourier-Bessel blocks") {
    FrequencySet F;
    F.N = 1;
    F.slice_freqs = {polar(1.3, 0.4)};
    F.depth = {1};
    SpatialSampleSet E{1, {polar(0.7, 2.0)}};
    const auto blocks = build_fb_operator(E, F);
    REQUIRE(blocks.size() == 1);
    CHECK(std::abs(blocks[0].matrix(0, 0) - std::polar(1.0, 1.3 * 0.7 * std::cos(2.0 - 0.4))) < 1e-14);

    const FrequencySet G = random_freqs(5, 3, 0.5, 2.0);
    const SpatialSampleSet D = random_points(5, 4, 0.5, 2.0);
    const auto b = build_fb_operator(D, G);
    for (int n = 0; n < 5; ++n)
        for (int j = 0; j < 4; ++j)
            for (int q = 0; q < 3; ++q)
                CHECK(std::abs(b[n].matrix(j, q) - gen_bessel(n, G.slice_freqs[q], D.slice_points[j], 5)) < 1e-13);
    CHECK_THROWS_AS(build_fb_operator(SpatialSampleSet{5, {}}, G), DimensionError);
}

TEST_CASE("evaluation matches the double exponential sum") {
    for (int t = 0; t < 10; ++t) {
        const FrequencySet F = random_freqs(8, 24, 0.2, 3.0);
        const SpatialSampleSet E = random_points(8, 24, 0.2, 5.0);
        const APCoefficients c = random_coeffs(8, 24);
        const CMat fast = ap_evaluate(c, F, E), slow = oracle::ap_samples(c, F, E);
        CHECK(max_abs(fast - slow) < 1e-9 * max_abs(slow));
    }
    const FrequencySet F = random_freqs(4, 3, 0.5, 1.5);
    const SpatialSampleSet E = random_points(4, 2, 0.5, 1.5);
    CHECK(max_abs(ap_evaluate(APCoefficients::planar(4, 3), F, E)) == 0.0);
    // single coefficient
    APCoefficients d = APCoefficients::planar(4, 3);
    d(2, 1) = 1.0;
    const CMat s = ap_evaluate(d, F, E);
    for (int m = 0; m < 4; ++m)
        for (int j = 0; j < 2; ++j) {
            const cplx e = std::polar(1.0, dot(rotate_k(F.slice_freqs[1], 2, 4), rotate_k(E.slice_points[j], m, 4)));
            CHECK(std::abs(s(m, j) - e) < 1e-12);
        }
    CHECK(std::abs(ap_value(d, F, rotate_k(E.slice_points[1], 3, 4)) - s(3, 1)) < 1e-12);
}

TEST_CASE("rotating coefficients permutes sample rows") {
    const FrequencySet F = random_freqs(6, 5, 0.3, 2.0);
    const SpatialSampleSet E = random_points(6, 7, 0.3, 4.0);
    const APCoefficients c = random_coeffs(6, 5);
    const CMat s = ap_evaluate(c, F, E);
    for (long h = 0; h < 6; ++h) {
        const CMat r = ap_evaluate(ap_rotate(c, h), F, E);
        for (int m = 0; m < 6; ++m)
            for (int j = 0; j < 7; ++j) CHECK(std::abs(r(m, j) - s(wrap(m - h, 6), j)) < 1e-12);
    }
}

TEST_CASE("interpolation round trip and ill-posedness") {
    int well = 0;
    for (int t = 0; t < 20; ++t) {
        const FrequencySet F = random_freqs(5, 4, 1.0, 3.0);
        const SpatialSampleSet E = random_points(5, 4, 1.0, 3.0);
        FourierBesselOperator op(E, F);
        const auto cn = op.condition_numbers();
        if (*std::max_element(cn.begin(), cn.end()) >= 1e8) continue;
        ++well;
        const APCoefficients c = random_coeffs(5, 4);
        const CMat s = op.evaluate(c);
        const APCoefficients back = op.interpolate(s);
        for (std::size_t i = 0; i < c.data.size(); ++i) CHECK(std::abs(back.data[i] - c.data[i]) < 1e-7);
        CHECK(max_abs(op.evaluate(back) - s) < 1e-8 * s.norm());
        CHECK(max_abs(op.interpolate(CMat::Zero(5, 4)).matrix()) == 0.0);
        // d = 0 approximation coincides with interpolation
        const APCoefficients a = op.approximate(s, Eigen::MatrixXd::Zero(5, 4));
        for (std::size_t i = 0; i < c.data.size(); ++i) CHECK(std::abs(a.data[i] - back.data[i]) < 1e-6);
    }
    CHECK(well >= 5);

    // two identical frequencies make every block singular
    FrequencySet F = random_freqs(4, 2, 1.0, 2.0);
    F.slice_freqs[1] = F.slice_freqs[0];
    const SpatialSampleSet E = random_points(4, 2, 1.0, 2.0);
    CHECK_THROWS_AS(ap_interpolate(CMat::Ones(4, 2), E, F), IllPosed);
    CHECK_THROWS_AS(ap_interpolate(CMat::Ones(4, 3), random_points(4, 3, 1, 2), F), DimensionError);
}

TEST_CASE("ridge path shrinks coefficients") {
    const FrequencySet F = random_freqs(4, 4, 0.5, 2.0);
    const SpatialSampleSet E = random_points(4, 6, 0.5, 3.0);
    const CMat s = oracle::random_cmat(4, 6);
    double prev = 1e300;
    for (double d : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        const Eigen::MatrixXd D = Eigen::MatrixXd::Constant(4, 4, d);
        const APCoefficients c = ap_approximate(s, E, F, D);
        CHECK(c.norm() < prev);
        prev = c.norm();
        // dense oracle: min ||s - ev c||^2 + sum d^2 |w|^2 with w the unitary Z_N DFT of c along n,
        // so the penalty is d^2 ||c||^2 for uniform d
        const int N = 4, Q = 4, P = 6;
        CMat A(N * P, N * Q);
        for (int n = 0; n < N; ++n)
            for (int q = 0; q < Q; ++q) {
                APCoefficients e = APCoefficients::planar(N, Q);
                e(n, q) = 1.0;
                const CMat col = oracle::ap_samples(e, F, E);
                for (int m = 0; m < N; ++m)
                    for (int j = 0; j < P; ++j) A(m * P + j, n * Q + q) = col(m, j);
            }
        CVec b(N * P);
        for (int m = 0; m < N; ++m)
            for (int j = 0; j < P; ++j) b[m * P + j] = s(m, j);
        const CMat lhs = A.adjoint() * A + d * d * CMat::Identity(N * Q, N * Q);
        const CVec x = lhs.ldlt().solve(A.adjoint() * b);
        for (int n = 0; n < N; ++n)
            for (int q = 0; q < Q; ++q) CHECK(std::abs(x[n * Q + q] - c(n, q)) < 1e-8 * (1 + std::abs(x[n * Q + q])));
    }
    CHECK_THROWS_AS(ap_approximate(s, E, F, Eigen::MatrixXd::Constant(4, 4, -1.0)), InputError);
}

TEST_CASE("factorizations are cached") {
    const FrequencySet F = random_freqs(5, 3, 0.5, 2.0);
    const SpatialSampleSet E = random_points(5, 4, 0.5, 2.0);
    FourierBesselOperator op(E, F);
    const Eigen::MatrixXd D = weight_profile(F, 100.0);
    for (int t = 0; t < 4; ++t) op.approximate(oracle::random_cmat(5, 4), D);
    CHECK(op.factorizations() == 5);  // one per block
    CHECK(op.cache_hits() == 3);
}

TEST_CASE("weight profile") {
    FrequencySet F;
    F.N = 2;
    F.slice_freqs = {{0.5, 0.0}, {1.0, 0.0}, {1.2, 0.3}, {1.5, 0.0}, {2.0, 0.1}};
    F.depth.assign(5, 1);
    const Eigen::MatrixXd d = weight_profile(F, 100.0);
    CHECK(d.rows() == 2);
    for (int n = 0; n < 2; ++n) {
        CHECK(d(n, 0) == 10.0);
        CHECK(d(n, 1) == 10.0);
        CHECK(d(n, 2) == 100.0);
        CHECK(d(n, 3) == 100.0);
        CHECK(d(n, 4) == 10000.0);
    }
}

TEST_CASE("translation of coefficients") {
    const FrequencySet F = random_freqs(6, 4, 0.3, 2.0);
    const APCoefficients c = random_coeffs(6, 4);
    const APCoefficients same = ap_translate(c, F, {0, 0});
    CHECK(max_abs(same.matrix() - c.matrix()) == 0.0);
    const Vec2 xi{0.7, -1.3}, eta{-0.2, 0.4};
    const APCoefficients t = ap_translate(c, F, xi);
    for (int k = 0; k < 5; ++k) {
        const Vec2 y = oracle::random_vec(2.0);
        CHECK(std::abs(ap_value(t, F, y) - ap_value(c, F, y - xi)) < 1e-11);
    }
    const APCoefficients tt = ap_translate(ap_translate(c, F, xi), F, eta);
    CHECK(max_abs(tt.matrix() - ap_translate(c, F, xi + eta).matrix()) < 1e-12);
}

TEST_CASE("orbit of an AP function") {
    const FrequencySet F = random_freqs(5, 3, 0.5, 2.0);
    const APCoefficients c = random_coeffs(5, 3);
    const Vec2 l = rotate_k(F.slice_freqs[2], 3, 5);
    const CVec o = ap_orbit(c, F, l);
    for (int k = 0; k < 5; ++k) CHECK(o[k] == c(wrap(3 + k, 5), 2));
    CHECK_THROWS_AS(ap_orbit(c, F, {9.0, 9.0}), InvalidFrequency);
}

TEST_CASE("Algorithm 1 on roots of unity") {
    const FrequencySet F = gen_freqset(FrequencySet::roots_of_unity(4), 3);
    for (const auto& p : F.full()) {
        CHECK(std::abs(p.x - std::round(p.x)) < 1e-12);
        CHECK(std::abs(p.y - std::round(p.y)) < 1e-12);
        CHECK(F.contains(-p));
    }
    CHECK(F.has_origin);  // e^{i pi/2} + e^{-i pi/2} = 2 cos(pi/2) = 0
    CHECK(F.contains({2.0, 0.0}));
    CHECK(F.contains({1.0, 1.0}));

    const FrequencySet F6 = gen_freqset(FrequencySet::roots_of_unity(6), 2);
    CHECK(F6.contains({2 * std::cos(kTwoPi / 6), 0.0}));
    for (const auto& p : F6.full()) CHECK(F6.contains(-p));

    double prev = 1e300;
    for (int depth = 1; depth <= 4; ++depth) {
        const double g = min_gap(gen_freqset(FrequencySet::roots_of_unity(5), depth));
        if (depth > 1) CHECK(g < prev - 1e-9);
        prev = g;
    }
    CHECK_THROWS_AS(gen_freqset(FrequencySet::roots_of_unity(7), 6, 1e-9, 50), CapExceeded);
}

TEST_CASE("admissibility") {
    for (int N : {3, 4, 5, 6}) {
        const FrequencySet prev = gen_freqset(FrequencySet::roots_of_unity(N), 1);
        const FrequencySet F = gen_freqset(FrequencySet::roots_of_unity(N), 2);
        const Admissibility a = is_admissible(F);
        CHECK(a.admissible);
        CHECK_FALSE(a.f1.empty());
        for (const auto& p : prev.slice_freqs) {
            bool found = false;
            for (const auto& q : a.f1) found |= (p - q).norm() < 1e-9;
            CHECK(found);
        }
    }
    FrequencySet single;
    single.N = 3;
    single.slice_freqs = {{1.0, 0.2}};
    single.depth = {1};
    CHECK_FALSE(is_admissible(single).admissible);
    FrequencySet empty;
    empty.N = 3;
    CHECK(is_admissible(empty).admissible);
}

TEST_CASE("AP centering") {
    FrequencySet F;
    F.N = 3;
    F.slice_freqs = {polar(1.0, 0.3), polar(1.4, 1.5)};
    F.depth = {1, 1};
    APCoefficients c = APCoefficients::planar(3, 2);
    for (auto& v : c.data) v = oracle::uniform(0.5, 1.5);
    const APCenter c0 = center_ap(c, F, 1.0);
    CHECK(c0.center.norm() < 1e-8);
    const Vec2 xi{0.21, -0.13};
    const APCenter c1 = center_ap(ap_translate(c, F, xi), F, 1.0);
    CHECK((c1.center - c0.center - xi).norm() < 1e-4);
    CHECK(max_abs(c1.centered.matrix() - c.matrix()) < 1e-6);
    c(1, 0) = 0.0;
    CHECK_THROWS_AS(center_ap(c, F, 1.0), NotCenterable);
}

TEST_CASE("serialization") {
    const FrequencySet F = random_freqs(4, 5, 0.5, 2.0);
    const std::string fpath = "apfun_test_freqs.txt", cpath = "apfun_test_coeffs.bin";
    save_frequency_set(fpath, F);
    const FrequencySet G = load_frequency_set(fpath, 4);
    REQUIRE(G.Q() == 5);
    for (int q = 0; q < 5; ++q) CHECK((G.slice_freqs[q] - F.slice_freqs[q]).norm() < 1e-12);
    const APCoefficients c = random_coeffs(4, 5);
    save_coefficients(cpath, c);
    const APCoefficients d = load_coefficients(cpath);
    CHECK(d.N == 4);
    CHECK(d.Q == 5);
    CHECK(max_abs(d.matrix() - c.matrix()) == 0.0);
    {
        std::ofstream os(cpath, std::ios::binary);
        os << "short";
    }
    CHECK_THROWS_AS(load_coefficients(cpath), IoError);
    std::istringstream bad("1.0 x\n");
    CHECK_THROWS_AS(read_polar_points(bad), IoError);
    std::remove(fpath.c_str());
    std::remove(cpath.c_str());
}
