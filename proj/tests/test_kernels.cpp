#include <doctest.h>

#include "oracles.hpp"
#include "se2n/errors.hpp"
#include "se2n/kernels.hpp"

using namespace se2n;
namespace K = se2n::kernels;

namespace {

std::vector<cplx> random_buffer(std::size_t n) {
    std::vector<cplx> v(n);
    for (auto& z : v) z = oracle::cgauss();
    return v;
}

struct CnCase {
    int N;
    std::size_t pairs;
    std::vector<double> g;
    double off;
    double dt;
    std::vector<double> x;
};

CnCase random_cn(int N, std::size_t pairs) {
    CnCase c{N, pairs, std::vector<double>(N * pairs), 0.7, 0.05, std::vector<double>(2 * N * pairs)};
    for (auto& v : c.g) v = -std::abs(5.0 * oracle::gauss()) - 1.4;
    for (auto& v : c.x) v = oracle::gauss();
    return c;
}

// Dense Crank-Nicolson on each pair independently.
std::vector<double> dense_cn(const CnCase& c, int steps) {
    std::vector<double> out = c.x;
    const int N = c.N;
    for (std::size_t q = 0; q < c.pairs; ++q) {
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(N, N);
        for (int r = 0; r < N; ++r) {
            G(r, r) = c.g[r * c.pairs + q];
            G(r, (r + 1) % N) += c.off;
            G(r, (r + N - 1) % N) += c.off;
        }
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
        const Eigen::MatrixXd step = (I - 0.5 * c.dt * G).lu().solve(I + 0.5 * c.dt * G);
        for (int lane = 0; lane < 2; ++lane) {
            Eigen::VectorXd v(N);
            for (int r = 0; r < N; ++r) v[r] = c.x[r * 2 * c.pairs + 2 * q + lane];
            for (int s = 0; s < steps; ++s) v = step * v;
            for (int r = 0; r < N; ++r) out[r * 2 * c.pairs + 2 * q + lane] = v[r];
        }
    }
    return out;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("isa selection") {
    K::force_isa(K::Isa::Scalar);
    CHECK(K::active_isa() == K::Isa::Scalar);
    CHECK(std::string(K::isa_name(K::Isa::Scalar)) == "scalar");
    if (K::avx2_available()) {
        K::force_isa(K::Isa::Avx2);
        CHECK(K::active_isa() == K::Isa::Avx2);
    }
    K::reset_isa();
    MESSAGE("active isa: " << std::string(K::isa_name(K::active_isa())));
}

TEST_CASE("scalar cmul and triple_sum against direct loops") {
    for (std::size_t n : {0u, 1u, 3u, 8u, 17u, 1000u}) {
        const auto a = random_buffer(n), b = random_buffer(n), c = random_buffer(n);
        std::vector<cplx> o(n), oc(n);
        K::scalar::cmul(a.data(), b.data(), o.data(), n, false);
        K::scalar::cmul(a.data(), b.data(), oc.data(), n, true);
        cplx t = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(o[i] - a[i] * b[i]) < 1e-14);
            CHECK(std::abs(oc[i] - a[i] * std::conj(b[i])) < 1e-14);
            t += a[i] * b[i] * std::conj(c[i]);
        }
        CHECK(std::abs(K::scalar::triple_sum(a.data(), b.data(), c.data(), n) - t) < 1e-11 * (1.0 + n));
    }
}

TEST_CASE("avx2 kernels match scalar") {
    if (!K::avx2_available()) {
        MESSAGE("no AVX2 on this machine; skipped");
        return;
    }
    for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 16u, 33u, 1001u}) {
        const auto a = random_buffer(n), b = random_buffer(n), c = random_buffer(n);
        for (bool conj : {false, true}) {
            std::vector<cplx> o1(n), o2(n);
            K::scalar::cmul(a.data(), b.data(), o1.data(), n, conj);
            K::avx2::cmul(a.data(), b.data(), o2.data(), n, conj);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(o1[i] - o2[i]) < 1e-14);
        }
        const cplx s1 = K::scalar::triple_sum(a.data(), b.data(), c.data(), n);
        const cplx s2 = K::avx2::triple_sum(a.data(), b.data(), c.data(), n);
        CHECK(std::abs(s1 - s2) < 1e-12 * (1.0 + n));
    }
    for (int N : {3, 4, 7, 30})
        for (std::size_t pairs : {1u, 2u, 3u, 5u, 64u}) {
            const CnCase c = random_cn(N, pairs);
            const K::CnPlan plan = K::cn_prepare(N, pairs, c.g.data(), c.off, c.dt);
            std::vector<double> x1 = c.x, x2 = c.x;
            K::scalar::cn_advance(plan, x1.data(), 7);
            K::avx2::cn_advance(plan, x2.data(), 7);
            CHECK(max_diff(x1, x2) < 1e-13);
        }
}

TEST_CASE("cyclic Crank-Nicolson against a dense solve") {
    for (int N : {3, 4, 6, 12})
        for (std::size_t pairs : {1u, 3u}) {
            const CnCase c = random_cn(N, pairs);
            const K::CnPlan plan = K::cn_prepare(N, pairs, c.g.data(), c.off, c.dt);
            std::vector<double> x = c.x;
            K::scalar::cn_advance(plan, x.data(), 10);
            CHECK(max_diff(x, dense_cn(c, 10)) < 1e-12);
            std::vector<double> y = c.x;
            K::cn_advance(plan, y.data(), 10);
            CHECK(max_diff(x, y) < 1e-13);
        }
    const std::vector<double> g(2, -1.0);
    CHECK_THROWS_AS(K::cn_prepare(2, 1, g.data(), 0.5, 0.1), Unsupported);
}
