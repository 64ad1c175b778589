#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "se2n/apfun.hpp"
#include "se2n/errors.hpp"
#include "se2n/repr.hpp"

namespace se2n {

namespace {

// Integer coordinates w.r.t. {1, b} for the rotation orders whose orbits of
// lattice points stay on the lattice.
struct Lattice {
    int N = 0;
    Vec2 b;
    bool valid = false;

    explicit Lattice(int n) : N(n) {
        switch (n) {
            case 1: case 2: case 4: b = {0.0, 1.0}; valid = true; break;
            case 3: b = {-0.5, std::sqrt(3.0) / 2}; valid = true; break;
            case 6: b = {0.5, std::sqrt(3.0) / 2}; valid = true; break;
            default: break;
        }
    }

    bool encode(const Vec2& p, long& a, long& c) const {
        const double cb = p.y / b.y;
        const double ca = p.x - cb * b.x;
        a = std::lround(ca);
        c = std::lround(cb);
        return std::abs(ca - a) < 1e-9 && std::abs(cb - c) < 1e-9;
    }
    Vec2 decode(long a, long c) const { return Vec2{1.0, 0.0} * static_cast<double>(a) + b * static_cast<double>(c); }

    void rot(long& a, long& c) const {
        long na = a, nc = c;
        switch (N) {
            case 1: break;
            case 2: na = -a; nc = -c; break;
            case 4: na = -c; nc = a; break;
            case 3: na = -c; nc = a - c; break;
            case 6: na = -c; nc = a + c; break;
        }
        a = na;
        c = nc;
    }
};

bool in_slice(const Vec2& p, int N) {
    double a = std::atan2(p.y, p.x);
    const double sector = kTwoPi / N;
    if (a < -1e-12) a += kTwoPi;
    return a < sector - 1e-12;
}

// Slice representatives with deduplication: exact integer keys on a lattice,
// otherwise tolerance hashing of canonical float representatives.
class SliceSet {
public:
    SliceSet(int N, double tol, bool exact) : N_(N), tol_(tol), lat_(N), exact_(exact && lat_.valid) {}

    bool exact() const { return exact_; }

    // Canonical representative; false if p is (numerically) zero.
    bool canonical(const Vec2& p, Vec2& rep, std::pair<long, long>& key) const {
        if (p.norm() <= tol_) return false;
        if (exact_) {
            long a, c;
            if (!lat_.encode(p, a, c)) throw DimensionError("point left the lattice");
            for (int r = 0; r < N_; ++r) {
                const Vec2 v = lat_.decode(a, c);
                if (in_slice(v, N_)) {
                    rep = v;
                    key = {a, c};
                    return true;
                }
                lat_.rot(a, c);
            }
            throw NumericalError("no lattice rotation lands in the slice");
        }
        rep = canonicalize(p, N_).lambda;
        key = {std::llround(rep.x / (4 * tol_)), std::llround(rep.y / (4 * tol_))};
        return true;
    }

    // Index of the stored representative matching p, or -1.
    long find(const Vec2& p) const {
        Vec2 rep;
        std::pair<long, long> key;
        if (!canonical(p, rep, key)) return -2;  // origin
        if (exact_) {
            auto it = exact_map_.find(key);
            return it == exact_map_.end() ? -1 : it->second;
        }
        for (long dx = -1; dx <= 1; ++dx)
            for (long dy = -1; dy <= 1; ++dy) {
                auto it = cells_.find(hash(key.first + dx, key.second + dy));
                if (it == cells_.end()) continue;
                for (long idx : it->second)
                    if ((pts_[idx] - rep).norm() <= tol_) return idx;
            }
        return -1;
    }

    // Returns the index, inserting when new; -2 for the origin.
    long insert(const Vec2& p, bool& added) {
        added = false;
        const long f = find(p);
        if (f != -1) return f;
        Vec2 rep;
        std::pair<long, long> key;
        canonical(p, rep, key);
        const long idx = static_cast<long>(pts_.size());
        pts_.push_back(rep);
        if (exact_) exact_map_[key] = idx;
        else cells_[hash(key.first, key.second)].push_back(idx);
        added = true;
        return idx;
    }

    const std::vector<Vec2>& points() const { return pts_; }

private:
    static long long hash(long a, long b) { return static_cast<long long>(a) * 1000003LL + b; }

    int N_;
    double tol_;
    Lattice lat_;
    bool exact_;
    std::vector<Vec2> pts_;
    std::map<std::pair<long, long>, long> exact_map_;
    std::unordered_map<long long, std::vector<long>> cells_;
};

bool seed_on_lattice(const FrequencySet& F) {
    Lattice lat(F.N);
    if (!lat.valid) return false;
    for (const auto& p : F.slice_freqs) {
        long a, c;
        if (!lat.encode(p, a, c)) return false;
    }
    return true;
}

}  // namespace

FrequencySet gen_freqset(const FrequencySet& seed, int depth, double dedup_tol, std::size_t cap) {
    if (depth < 1) throw InputError("Algorithm 1 depth must be >= 1");
    const int N = seed.N;
    SliceSet set(N, dedup_tol, seed_on_lattice(seed));
    std::vector<int> gen;
    bool origin = seed.has_origin;
    bool added;
    for (const auto& p : seed.slice_freqs) {
        if (set.insert(p, added) == -2) origin = true;
        if (added) gen.push_back(1);
    }
    for (int k = 2; k <= depth; ++k) {
        const std::vector<Vec2> reps = set.points();  // F_{k-1}
        std::vector<Vec2> full;
        full.reserve(reps.size() * N);
        for (int r = 0; r < N; ++r)
            for (const auto& p : reps) full.push_back(rotate_k(p, r, N));
        // Rotation invariance: sums lambda + mu with lambda a representative cover all of F_{k-1} + F_{k-1}.
        for (const auto& l : reps)
            for (const auto& m : full) {
                if (set.insert(l + m, added) == -2) origin = true;
                if (added) {
                    gen.push_back(k);
                    if (set.points().size() > cap)
                        throw CapExceeded("Algorithm 1 exceeded the cap of " + std::to_string(cap) + " slice points");
                }
            }
    }
    FrequencySet out;
    out.N = N;
    out.slice_freqs = set.points();
    out.depth = gen;
    out.has_origin = origin;
    return out;
}

Admissibility is_admissible(const FrequencySet& F, double tol) {
    Admissibility res;
    const int N = F.N;
    if (F.Q() == 0) {
        res.admissible = true;
        res.reason = "empty set";
        return res;
    }
    SliceSet set(N, tol, seed_on_lattice(F));
    bool added;
    for (const auto& p : F.slice_freqs) set.insert(p, added);
    auto member = [&](const Vec2& p) {
        const long f = set.find(p);
        return f >= 0 || (f == -2 && F.has_origin);
    };
    std::vector<int> order(F.Q());
    std::iota(order.begin(), order.end(), 0);
    auto depth_of = [&](int q) { return q < static_cast<int>(F.depth.size()) ? F.depth[q] : 1; };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const Vec2 &pa = F.slice_freqs[a], &pb = F.slice_freqs[b];
        if (depth_of(a) != depth_of(b)) return depth_of(a) < depth_of(b);
        if (std::abs(pa.norm() - pb.norm()) > tol) return pa.norm() < pb.norm();
        return pa.angle() < pb.angle();
    });
    std::vector<Vec2> f1_full;
    std::vector<char> in_f1(F.Q(), 0);
    for (int q : order) {
        const Vec2 o = F.slice_freqs[q];
        std::vector<Vec2> cand = f1_full;
        for (int r = 0; r < N; ++r) cand.push_back(rotate_k(o, r, N));
        // New pairs reduce, by rotation invariance, to o + y for y in the enlarged set.
        bool ok = true;
        for (const auto& y : cand)
            if (!member(o + y)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        f1_full = std::move(cand);
        in_f1[q] = 1;
        res.f1.push_back(o);
    }
    for (int q = 0; q < F.Q(); ++q)
        if (!in_f1[q]) res.f2.push_back(F.slice_freqs[q]);
    if (res.f1.empty()) {
        res.reason = "no rotation orbit is closed under rotated sums";
        return res;
    }
    // Coverage: every lambda in F~_2 is lambda1 + R_k lambda2 with lambda1, lambda2 in F~_1.
    SliceSet sums(N, tol, set.exact());
    for (const auto& a : res.f1)
        for (const auto& y : f1_full) sums.insert(a + y, added);
    for (const auto& p : res.f2)
        if (sums.find(p) < 0) {
            res.reason = "a frequency outside F~_1 is not a rotated sum of F~_1 elements";
            return res;
        }
    res.admissible = true;
    res.reason = "ok";
    return res;
}

}  // namespace se2n
