#include <algorithm>
#include <cmath>
#include <limits>

#include "se2n/apfun.hpp"
#include "se2n/errors.hpp"

namespace se2n {

namespace {

struct Term {
    double m;  // negated phase of the coefficient, in turns
    Vec2 a;    // R_n lambda / 2pi
};

double turns_dist(double t) { return t - std::round(t); }

double objective(const std::vector<Term>& terms, const Vec2& y) {
    double s = 0.0;
    for (const auto& t : terms) {
        const double d = turns_dist(t.m - dot(t.a, y));
        s += d * d;
    }
    return s;
}

// Majorize-minimize: freeze the torus wraps at y, solve the resulting linear
// least squares exactly, repeat until the step is below 1e-8.
Vec2 descend(const std::vector<Term>& terms, Vec2 y, double radius) {
    for (int it = 0; it < 200; ++it) {
        double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
        for (const auto& t : terms) {
            const double w = std::round(t.m - dot(t.a, y));
            const double r = t.m - w;
            a11 += t.a.x * t.a.x;
            a12 += t.a.x * t.a.y;
            a22 += t.a.y * t.a.y;
            b1 += t.a.x * r;
            b2 += t.a.y * r;
        }
        const double det = a11 * a22 - a12 * a12;
        if (std::abs(det) < 1e-300) break;
        Vec2 next{(a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det};
        if (next.norm() > radius) next = next * (radius / next.norm());
        const double step = (next - y).norm();
        y = next;
        if (step < 1e-8) break;
    }
    return y;
}

}  // namespace

APCenter center_ap(const APCoefficients& c, const FrequencySet& F, double radius, double rho_tol) {
    if (c.group) throw Unsupported("center_ap works on planar coefficients");
    if (c.N != F.N || c.Q != F.Q()) throw DimensionError("center_ap: coefficients do not match the frequency set");
    if (!(radius > 0)) throw InputError("center_ap: search radius must be positive");
    double rho_max = 0.0;
    for (const auto& v : c.data) rho_max = std::max(rho_max, std::abs(v));
    std::vector<Term> terms;
    for (int n = 0; n < c.N; ++n)
        for (int q = 0; q < c.Q; ++q) {
            const cplx v = c(n, q);
            if (!(std::abs(v) > rho_tol * std::max(rho_max, 1e-300)))
                throw NotCenterable("a coefficient vanishes; the AP center is undefined");
            terms.push_back({-std::arg(v) / kTwoPi, rotate_k(F.slice_freqs[q], n, c.N) * (1.0 / kTwoPi)});
        }
    struct Cand {
        Vec2 y;
        double obj;
    };
    std::vector<Cand> cands;
    const int S = 64;
    for (int i = 0; i < S; ++i)
        for (int j = 0; j < S; ++j) {
            const Vec2 seed{radius * (-1.0 + 2.0 * (i + 0.5) / S), radius * (-1.0 + 2.0 * (j + 0.5) / S)};
            if (seed.norm() > radius) continue;
            const Vec2 y = descend(terms, seed, radius);
            const double o = objective(terms, y);
            bool dup = false;
            for (auto& cd : cands)
                if ((cd.y - y).norm() < 1e-6) {
                    dup = true;
                    break;
                }
            if (!dup) cands.push_back({y, o});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.obj < b.obj; });
    APCenter res;
    res.center = cands.front().y;
    res.objective = cands.front().obj;
    if (cands.size() > 1 && cands[1].obj <= res.objective + 1e-9 * std::max(1.0, res.objective)) res.ambiguous = true;
    res.centered = ap_translate(c, F, -res.center);
    return res;
}

}  // namespace se2n
