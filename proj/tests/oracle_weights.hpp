// Test-only brute-force multiplicity oracle, independent of the Freudenthal
// recursion: the signed Weyl-group sum against the bounded-depth partition
// function of the affine positive roots (imaginary roots counted with
// multiplicity rank-1). Group elements are enumerated breadth-first on the
// orbit of lambda + rho, pruned once the affine coordinate of
// lambda + rho - w(lambda + rho) exceeds the depth window.
#pragma once

#include "zastava/affine_weights.hpp"
#include "zastava/matrix.hpp"

#include <functional>
#include <optional>

#include <map>
#include <set>
#include <vector>

namespace zastava_test {

using namespace zastava;

struct OrbitPoint {
    long level;
    WeightCoords fin;
    long energy; // integral throughout the orbit of lambda + rho
    int sign;
};

// multiplicity of lambda - sum c_i alpha_i via the alternating sum
// m = sum_w sgn(w) P(w(lambda+rho) - (mu+rho)), P the colored partition
// function over positive roots of coordinate depth <= window
inline Integer oracle_multiplicity(int n, const AffineWeight& lambda, const std::vector<long>& c,
                                   long window) {
    RootSystem fin = RootSystem::simply_laced('A', n - 1);
    WeightCoords theta(n - 1, 0);
    for (int j = 0; j < n - 1; ++j)
        for (int i = 0; i < n - 1; ++i) theta[j] += fin.cartan[i][j] * fin.marks[i];

    const long h_dual = n;
    OrbitPoint start;
    start.level = lambda.level + h_dual;
    start.fin.assign(n - 1, 0);
    for (int i = 0; i < n - 1; ++i) start.fin[i] = lambda.finite[i] + 1;
    start.energy = 0; // energies are tracked relative to lambda + rho
    start.sign = 1;

    // affine coordinates of (lambda + rho) - x for orbit points x
    auto coords_of_diff = [&](const OrbitPoint& x) -> std::optional<std::vector<long>> {
        std::vector<long> cc(n, 0);
        long c0 = -x.energy; // (lambda+rho) has energy 0 in this bookkeeping
        if (c0 < 0) return std::nullopt;
        cc[0] = c0;
        // finite: start.fin - x.fin + c0 * theta = C^T (c_1..c_{n-1})
        Mat cm(n - 1, n - 1), rhs(n - 1, 1);
        for (int i = 0; i < n - 1; ++i) {
            rhs.at(i, 0) = rat(start.fin[i] - x.fin[i] + c0 * theta[i]);
            for (int j = 0; j < n - 1; ++j) cm.at(i, j) = rat(fin.cartan[j][i]);
        }
        auto sol = solve_linear(cm, rhs);
        if (!sol) return std::nullopt;
        for (int i = 1; i <= n - 1; ++i) {
            const Rational& v = sol->particular.at(i - 1, 0);
            if (!is_integer(v) || v < 0) return std::nullopt;
            cc[i] = to_long(v);
        }
        return cc;
    };

    // breadth-first over the orbit with depth pruning
    std::map<std::pair<WeightCoords, long>, int> visited; // (fin, energy) -> sign
    std::vector<OrbitPoint> queue{start};
    visited[{start.fin, start.energy}] = 1;
    std::vector<OrbitPoint> all{start};
    while (!queue.empty()) {
        std::vector<OrbitPoint> next;
        for (const OrbitPoint& x : queue) {
            for (int i = 0; i <= n - 1; ++i) {
                OrbitPoint y = x;
                y.sign = -x.sign;
                if (i >= 1) {
                    long a = x.fin[i - 1];
                    for (int j = 0; j < n - 1; ++j) y.fin[j] -= a * fin.cartan[i - 1][j];
                } else {
                    long a = x.level;
                    for (int j = 0; j < n - 1; ++j) a -= fin.marks[j] * x.fin[j];
                    // subtract a * alpha_0 = a * (-theta, energy 1)
                    for (int j = 0; j < n - 1; ++j) y.fin[j] += a * theta[j];
                    y.energy -= a;
                }
                if (-y.energy > window) continue; // depth beyond the window
                auto key = std::make_pair(y.fin, y.energy);
                if (visited.count(key)) continue;
                visited[key] = y.sign;
                next.push_back(y);
                all.push_back(y);
            }
        }
        queue = std::move(next);
    }

    // colored partition function over roots of coordinate depth <= window
    struct Root {
        std::vector<long> c;
        long mult;
    };
    std::vector<Root> roots;
    {
        std::vector<std::vector<long>> finites;
        for (int i = 1; i <= n - 1; ++i)
            for (int j = i; j <= n - 1; ++j) {
                std::vector<long> cc(n, 0);
                for (int t = i; t <= j; ++t) cc[t] = 1;
                finites.push_back(cc);
            }
        for (const auto& f : finites) roots.push_back({f, 1});
        for (long m = 1; m <= window; ++m) {
            std::vector<long> dm(n, m);
            roots.push_back({dm, n - 1});
            for (const auto& f : finites) {
                std::vector<long> plus = dm, minus = dm;
                bool ok = true;
                for (int i = 0; i < n; ++i) {
                    plus[i] += f[i];
                    minus[i] -= f[i];
                    if (minus[i] < 0) ok = false;
                }
                roots.push_back({plus, 1});
                if (ok) roots.push_back({minus, 1});
            }
        }
    }
    std::map<std::vector<long>, Integer> pmemo;
    std::function<Integer(std::vector<long>, std::size_t)> part = [&](std::vector<long> target,
                                                                      std::size_t idx) -> Integer {
        bool zero = true;
        for (long x : target)
            if (x != 0) zero = false;
        if (zero) return 1;
        if (idx >= roots.size()) return 0;
        // memo on (target, idx) flattened
        std::vector<long> key = target;
        key.push_back(static_cast<long>(idx));
        auto it = pmemo.find(key);
        if (it != pmemo.end()) return it->second;
        Integer total = 0;
        // use root idx j times; multiplicity mult means j copies choose colors:
        // the generating function (1 - q)^{-mult} contributes C(j + mult - 1, mult - 1)
        for (long j = 0;; ++j) {
            std::vector<long> rest = target;
            bool ok = true;
            for (int i = 0; i < n; ++i) {
                rest[i] -= j * roots[idx].c[i];
                if (rest[i] < 0) ok = false;
            }
            if (!ok) break;
            Integer ways = 1;
            for (long t = 1; t < roots[idx].mult; ++t) ways = ways * (j + t) / t;
            total += ways * part(rest, idx + 1);
        }
        pmemo[key] = total;
        return total;
    };

    Integer m = 0;
    for (const OrbitPoint& x : all) {
        OrbitPoint shifted = x;
        // want coords of w(lambda+rho) - (mu + rho) = (x - start) + (lambda - mu)
        auto base = coords_of_diff(shifted);
        if (!base) continue;
        std::vector<long> cc(n);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            cc[i] = c[i] - (*base)[i];
            if (cc[i] < 0) ok = false;
        }
        if (!ok) continue;
        m += Integer(x.sign) * part(cc, 0);
    }
    return m;
}

} // namespace zastava_test
