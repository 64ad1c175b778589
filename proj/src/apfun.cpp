#include "se2n/apfun.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "se2n/errors.hpp"
#include "se2n/parallel.hpp"
#include "se2n/repr.hpp"
#include "se2n/zn_core.hpp"

namespace se2n {

std::vector<Vec2> FrequencySet::full() const {
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(N) * Q());
    for (int n = 0; n < N; ++n)
        for (const auto& l : slice_freqs) out.push_back(rotate_k(l, n, N));
    return out;
}

bool FrequencySet::locate(const Vec2& lambda, int& q, int& n, double tol) const {
    const CanonicalFrequency c = canonicalize(lambda, N);
    for (int i = 0; i < Q(); ++i)
        if ((slice_freqs[i] - c.lambda).norm() <= tol) {
            q = i;
            n = c.offset;
            return true;
        }
    // Boundary cases: fall back to the rotated set.
    for (int r = 0; r < N; ++r)
        for (int i = 0; i < Q(); ++i)
            if ((rotate_k(slice_freqs[i], r, N) - lambda).norm() <= tol) {
                q = i;
                n = r;
                return true;
            }
    return false;
}

bool FrequencySet::contains(const Vec2& lambda, double tol) const {
    if (lambda.norm() <= tol) return has_origin;
    int q, n;
    return locate(lambda, q, n, tol);
}

FrequencySet FrequencySet::from_points(int N, const std::vector<Vec2>& pts, double dedup_tol) {
    FrequencySet F;
    F.N = N;
    for (const auto& p : pts) {
        if (p.norm() <= dedup_tol) {
            F.has_origin = true;
            continue;
        }
        if (F.contains(p, dedup_tol)) continue;
        F.slice_freqs.push_back(canonicalize(p, N).lambda);
        F.depth.push_back(1);
    }
    return F;
}

FrequencySet FrequencySet::polar_grid(int N, int rings, int per_ring, double spacing) {
    FrequencySet F;
    F.N = N;
    for (int r = 1; r <= rings; ++r)
        for (int a = 0; a < per_ring; ++a) {
            F.slice_freqs.push_back(polar(spacing * r, kTwoPi / N * (a + 0.5) / per_ring));
            F.depth.push_back(1);
        }
    return F;
}

FrequencySet FrequencySet::roots_of_unity(int N) {
    FrequencySet F;
    F.N = N;
    F.slice_freqs = {Vec2{1.0, 0.0}};
    F.depth = {1};
    return F;
}

APCoefficients APCoefficients::planar(int N, int Q) {
    return {N, Q, false, std::vector<cplx>(static_cast<std::size_t>(N) * Q)};
}

APCoefficients APCoefficients::group_type(int N, int Q) {
    return {N, Q, true, std::vector<cplx>(static_cast<std::size_t>(N) * N * Q)};
}

CMat APCoefficients::matrix() const {
    if (group) throw DimensionError("matrix view is for planar coefficients");
    CMat m(N, Q);
    for (int n = 0; n < N; ++n)
        for (int q = 0; q < Q; ++q) m(n, q) = (*this)(n, q);
    return m;
}

APCoefficients APCoefficients::from_matrix(const CMat& m) {
    APCoefficients c = planar(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int n = 0; n < c.N; ++n)
        for (int q = 0; q < c.Q; ++q) c(n, q) = m(n, q);
    return c;
}

double APCoefficients::norm() const {
    double s = 0.0;
    for (const auto& v : data) s += std::norm(v);
    return std::sqrt(s);
}

std::vector<FourierBesselBlock> build_fb_operator(const SpatialSampleSet& E, const FrequencySet& F) {
    if (E.P() == 0 || F.Q() == 0) throw DimensionError("Fourier-Bessel operator needs nonempty E and F");
    if (E.N != F.N) throw DimensionError("E and F use different rotation orders");
    const int N = F.N;
    std::vector<FourierBesselBlock> blocks(N);
    parallel_for(N, [&](std::size_t nh) {
        CMat J(E.P(), F.Q());
        for (int j = 0; j < E.P(); ++j)
            for (int q = 0; q < F.Q(); ++q)
                J(j, q) = gen_bessel(static_cast<long>(nh), F.slice_freqs[q], E.slice_points[j], N);
        blocks[nh] = {static_cast<int>(nh), std::move(J)};
    });
    return blocks;
}

struct FourierBesselOperator::Factor {
    Eigen::PartialPivLU<CMat> lu;
    bool normal = false;  // solves the normal equations (J* applied to the rhs first)
};

FourierBesselOperator::FourierBesselOperator(const SpatialSampleSet& E, const FrequencySet& F)
    : N_(F.N), P_(E.P()), Q_(F.Q()), blocks_(build_fb_operator(E, F)) {}

FourierBesselOperator::~FourierBesselOperator() = default;

CMat FourierBesselOperator::dft_rows(const CMat& m, bool inverse) const {
    const CMat D = dft_matrix(N_);
    return inverse ? CMat(D.adjoint() * m) : CMat(D * m);
}

CMat FourierBesselOperator::evaluate(const APCoefficients& c) const {
    if (c.group || c.N != N_ || c.Q != Q_) throw DimensionError("evaluate: coefficient shape does not match the operator");
    const CMat fh = dft_rows(c.matrix(), false);
    CMat fs(N_, P_);
    parallel_for(N_, [&](std::size_t n) { fs.row(n) = (blocks_[n].matrix * fh.row(n).transpose()).transpose(); });
    return dft_rows(fs, true);
}

const std::vector<FourierBesselOperator::Factor>& FourierBesselOperator::factors(
    const std::vector<double>& key, int mode, double max_cond, const Eigen::MatrixXd* d, bool paper_sign) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
        ++hits_;
        return it->second;
    }
    std::vector<Factor> fs(N_);
    for (int n = 0; n < N_; ++n) {
        const CMat& J = blocks_[n].matrix;
        if (mode == 0) {
            fs[n].lu.compute(J);
            const double rc = fs[n].lu.rcond();
            if (!(rc > 0.0) || 1.0 / rc > max_cond) {
                std::ostringstream msg;
                msg << "interpolation block n_hat=" << n << " is singular (condition estimate "
                    << (rc > 0.0 ? 1.0 / rc : INFINITY) << ")";
                throw IllPosed(n, msg.str());
            }
        } else {
            CMat A = J.adjoint() * J;
            const double sg = paper_sign ? -1.0 : 1.0;
            for (int q = 0; q < Q_; ++q) A(q, q) += sg * (*d)(n, q) * (*d)(n, q);
            fs[n].lu.compute(A);
            fs[n].normal = true;
            const double rc = fs[n].lu.rcond();
            if (!(rc > 1e-15)) throw IllPosed(n, "regularized normal equations are singular at n_hat=" + std::to_string(n));
        }
        ++factorizations_;
    }
    return cache_.emplace(key, std::move(fs)).first->second;
}

APCoefficients FourierBesselOperator::interpolate(const CMat& samples, double max_cond) const {
    if (P_ != Q_) throw DimensionError("interpolation needs |E| = |F| (P = Q)");
    if (samples.rows() != N_ || samples.cols() != P_) throw DimensionError("interpolate: samples must be N x P");
    const auto& fs = factors({0.0, max_cond}, 0, max_cond, nullptr, false);
    const CMat s = dft_rows(samples, false);
    CMat w(N_, Q_);
    parallel_for(N_, [&](std::size_t n) { w.row(n) = fs[n].lu.solve(CVec(s.row(n).transpose())).transpose(); });
    return APCoefficients::from_matrix(dft_rows(w, true));
}

APCoefficients FourierBesselOperator::approximate(const CMat& samples, const Eigen::MatrixXd& d, bool paper_sign) const {
    if (samples.rows() != N_ || samples.cols() != P_) throw DimensionError("approximate: samples must be N x P");
    if (d.rows() != N_ || d.cols() != Q_) throw DimensionError("approximate: weights must be N x Q");
    if ((d.array() < 0.0).any()) throw InputError("approximation weights must be nonnegative");
    std::vector<double> key{paper_sign ? 2.0 : 1.0};
    key.insert(key.end(), d.data(), d.data() + d.size());
    const auto& fs = factors(key, 1, 0.0, &d, paper_sign);
    const CMat s = dft_rows(samples, false);
    CMat w(N_, Q_);
    parallel_for(N_, [&](std::size_t n) {
        const CVec rhs = blocks_[n].matrix.adjoint() * s.row(n).transpose();
        w.row(n) = fs[n].lu.solve(rhs).transpose();
    });
    return APCoefficients::from_matrix(dft_rows(w, true));
}

std::vector<double> FourierBesselOperator::condition_numbers() const {
    std::vector<double> out(N_);
    parallel_for(N_, [&](std::size_t n) {
        Eigen::JacobiSVD<CMat> svd(blocks_[n].matrix);
        const auto& sv = svd.singularValues();
        out[n] = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    });
    return out;
}

std::size_t FourierBesselOperator::factorizations() const {
    std::lock_guard<std::mutex> lock(mu_);
    return factorizations_;
}

std::size_t FourierBesselOperator::cache_hits() const {
    std::lock_guard<std::mutex> lock(mu_);
    return hits_;
}

CMat ap_evaluate(const APCoefficients& c, const FrequencySet& F, const SpatialSampleSet& E) {
    return FourierBesselOperator(E, F).evaluate(c);
}

APCoefficients ap_interpolate(const CMat& samples, const SpatialSampleSet& E, const FrequencySet& F) {
    return FourierBesselOperator(E, F).interpolate(samples);
}

APCoefficients ap_approximate(const CMat& samples, const SpatialSampleSet& E, const FrequencySet& F,
                              const Eigen::MatrixXd& d, bool paper_sign) {
    return FourierBesselOperator(E, F).approximate(samples, d, paper_sign);
}

cplx ap_value(const APCoefficients& c, const FrequencySet& F, const Vec2& x) {
    cplx acc = 0.0;
    for (int n = 0; n < c.N; ++n)
        for (int q = 0; q < c.Q; ++q) acc += c(n, q) * std::polar(1.0, dot(rotate_k(F.slice_freqs[q], n, c.N), x));
    return acc;
}

APCoefficients ap_translate(const APCoefficients& c, const FrequencySet& F, const Vec2& xi) {
    if (c.Q != F.Q() || c.N != F.N) throw DimensionError("translate: coefficients do not match the frequency set");
    APCoefficients out = c;
    if (!c.group) {
        for (int n = 0; n < c.N; ++n)
            for (int q = 0; q < c.Q; ++q) out(n, q) *= std::polar(1.0, -dot(rotate_k(F.slice_freqs[q], n, c.N), xi));
        return out;
    }
    for (int k = 0; k < c.N; ++k)
        for (int n = 0; n < c.N; ++n)
            for (int q = 0; q < c.Q; ++q)
                out(k, n, q) *= std::polar(1.0, -dot(rotate_k(F.slice_freqs[q], -(n + k), c.N), xi));
    return out;
}

APCoefficients ap_rotate(const APCoefficients& c, long h) {
    if (c.group) throw Unsupported("coefficient rotation is implemented for planar coefficients");
    APCoefficients out = c;
    for (int n = 0; n < c.N; ++n)
        for (int q = 0; q < c.Q; ++q) out(n, q) = c(wrap(n - h, c.N), q);
    return out;
}

CVec ap_orbit(const APCoefficients& c, const FrequencySet& F, const Vec2& lambda) {
    int q, n;
    if (!F.locate(lambda, q, n)) throw InvalidFrequency("frequency is not in the AP frequency set");
    CVec out(c.N);
    for (int k = 0; k < c.N; ++k) out[k] = c(wrap(k + n, c.N), q);
    return out;
}

Eigen::MatrixXd weight_profile(const FrequencySet& F, double alpha) {
    Eigen::MatrixXd d(F.N, F.Q());
    for (int q = 0; q < F.Q(); ++q) {
        const double r = F.slice_freqs[q].norm();
        const double v = r <= 1.0 ? alpha / 10.0 : (r <= 1.5 ? alpha : 100.0 * alpha);
        d.col(q).setConstant(v);
    }
    return d;
}

// ---- text and binary IO ----

void write_polar_points(std::ostream& os, const std::vector<Vec2>& pts) {
    os.precision(17);
    for (const auto& p : pts) {
        double a = p.angle();
        if (a < 0) a += kTwoPi;
        os << p.norm() << ' ' << a << '\n';
    }
}

std::vector<Vec2> read_polar_points(std::istream& is) {
    std::vector<Vec2> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double r, a;
        if (!(ls >> r >> a)) throw IoError("malformed point on line " + std::to_string(lineno));
        if (r < 0) throw IoError("negative radius on line " + std::to_string(lineno));
        pts.push_back(polar(r, a));
    }
    return pts;
}

void save_frequency_set(const std::string& path, const FrequencySet& F) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path);
    os << "# N " << F.N << "\n";
    if (F.has_origin) os << "# origin\n";
    write_polar_points(os, F.slice_freqs);
}

FrequencySet load_frequency_set(const std::string& path, int N) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    FrequencySet F = FrequencySet::from_points(N, read_polar_points(buf));
    if (buf.str().find("# origin") != std::string::npos) F.has_origin = true;
    return F;
}

void save_coefficients(const std::string& path, const APCoefficients& c) {
    if (c.group) throw Unsupported("coefficient files hold planar coefficients");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path);
    const std::int64_t hdr[2] = {c.N, c.Q};
    os.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
    os.write(reinterpret_cast<const char*>(c.data.data()), static_cast<std::streamsize>(c.data.size() * sizeof(cplx)));
    if (!os) throw IoError("short write to " + path);
}

APCoefficients load_coefficients(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot read " + path);
    std::int64_t hdr[2];
    if (!is.read(reinterpret_cast<char*>(hdr), sizeof hdr)) throw IoError("truncated header in " + path);
    if (hdr[0] < 1 || hdr[1] < 0 || hdr[0] > (1 << 20) || hdr[1] > (1 << 26)) throw IoError("implausible header in " + path);
    APCoefficients c = APCoefficients::planar(static_cast<int>(hdr[0]), static_cast<int>(hdr[1]));
    if (!is.read(reinterpret_cast<char*>(c.data.data()), static_cast<std::streamsize>(c.data.size() * sizeof(cplx))))
        throw IoError("truncated coefficient data in " + path);
    return c;
}

}  // namespace se2n
