#include "zastava/affine_weights.hpp"

#include "zastava/matrix.hpp"

#include <algorithm>
#include <functional>

namespace zastava {

bool is_level_dominant(const WeightCoords& finite, long k, const RootSystem& rs) {
    return is_dominant(finite) && highest_root_pairing(rs, finite) <= k;
}

WeightCoords dominant_representative(WeightCoords a, long k, const RootSystem& rs) {
    if (k < 1) throw DataError("dominant_representative needs k >= 1");
    // fold to the dominant cone, then reflect in the affine wall; the squared
    // norm strictly drops on each affine step, so this terminates
    for (;;) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i < rs.rank; ++i)
                if (a[i] < 0) {
                    a = reflect(rs, i, a);
                    changed = true;
                }
        }
        long pairing = highest_root_pairing(rs, a);
        if (pairing <= k) return a;
        // a -> a - (pairing - k) * theta^vee, the level-k reflection in the
        // highest-root wall composed with a translation
        long c = pairing - k;
        std::vector<long> theta_coroot(rs.marks.begin(), rs.marks.end()); // simply laced
        a = translate(rs, a, theta_coroot, -c);
    }
}

std::vector<std::vector<long>> affine_cartan(int n) {
    if (n < 1) throw DataError("affine_cartan needs n >= 1");
    if (n == 1) return {{0}}; // degenerate convention: w - Cv = w
    std::vector<std::vector<long>> c(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) {
        c[i][i] = 2;
        c[i][(i + 1) % n] -= 1;
        c[i][(i + n - 1) % n] -= 1;
    }
    return c;
}

std::vector<long> w_minus_cv(const std::vector<long>& v, long framing, int k) {
    if (static_cast<int>(v.size()) != k) throw DataError("v must have k entries");
    auto c = affine_cartan(k);
    std::vector<long> out(k, 0);
    out[0] = framing;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) out[i] -= c[i][j] * v[j];
    return out;
}

bool nakajima_dominance(const std::vector<long>& v, long framing, int k) {
    if (static_cast<int>(v.size()) != k) throw DataError("v must have k entries");
    for (long x : v)
        if (x < 0) throw DataError("v entries must be nonnegative");
    bool by_list = true;
    if (k >= 2) {
        for (int i = 0; i < k; ++i) {
            long lhs = v[(i + k - 1) % k] + v[(i + 1) % k] + (i == 0 ? framing : 0);
            if (lhs < 2 * v[i]) by_list = false;
        }
    }
    bool by_cartan = true;
    for (long x : w_minus_cv(v, framing, k))
        if (x < 0) by_cartan = false;
    if (by_list != by_cartan)
        throw std::logic_error("dominance inequality list disagrees with the Cartan form");
    return by_list;
}

// --- Freudenthal ------------------------------------------------------------

namespace {

struct AffineCtx {
    int n;            // rank of the cyclic type, finite part A_{n-1}
    RootSystem fin;   // A_{n-1}
    WeightCoords theta_fin; // finite highest root in fundamental coords

    explicit AffineCtx(int n_) : n(n_), fin(RootSystem::simply_laced('A', n_ - 1)) {
        theta_fin.assign(n - 1, 0);
        for (int j = 0; j < n - 1; ++j)
            for (int i = 0; i < n - 1; ++i) theta_fin[j] += fin.cartan[i][j] * rs_mark(i);
    }
    long rs_mark(int i) const { return fin.marks[i]; }

    // finite part (fundamental coords) and energy of sum_i c_i alpha_i
    std::pair<WeightCoords, long> root_combo(const std::vector<long>& c) const {
        WeightCoords f(n - 1, 0);
        for (int i = 1; i <= n - 1; ++i)
            for (int j = 0; j < n - 1; ++j) f[j] += c[i] * fin.cartan[i - 1][j];
        for (int j = 0; j < n - 1; ++j) f[j] -= c[0] * theta_fin[j];
        return {f, c[0]};
    }

    // invariant pairing of affine weights/roots carried as
    // (level, finite fundamental coords, energy)
    Rational pair(long lv1, const WeightCoords& f1, const Rational& e1, long lv2, const WeightCoords& f2,
                  const Rational& e2) const {
        Rational s = (n >= 2) ? form_inner(fin, f1, f2) : Rational(0);
        return s + Rational(lv1) * e2 + Rational(lv2) * e1;
    }
};

struct PosRoot {
    std::vector<long> coords; // over the affine simple roots, node 0 first
    WeightCoords finite;      // finite part in fundamental coords
    long energy;              // delta-degree
    long mult;                // 1 for real, n-1 for imaginary
    bool imaginary;
};

std::vector<PosRoot> positive_roots_below(const AffineCtx& cx, const std::vector<long>& bound) {
    const int n = cx.n;
    std::vector<PosRoot> out;
    long m0max = bound[0];
    // finite positive roots of A_{n-1}: alpha_i + ... + alpha_j, 1 <= i <= j <= n-1
    std::vector<std::vector<long>> finites;
    for (int i = 1; i <= n - 1; ++i)
        for (int j = i; j <= n - 1; ++j) {
            std::vector<long> c(n, 0);
            for (int t = i; t <= j; ++t) c[t] = 1;
            finites.push_back(c);
        }
    auto fits = [&](const std::vector<long>& c) {
        for (int i = 0; i < n; ++i)
            if (c[i] > bound[i]) return false;
        return true;
    };
    auto push_real = [&](const std::vector<long>& c) {
        if (!fits(c)) return;
        auto [f, en] = cx.root_combo(c);
        out.push_back({c, f, en, 1, false});
    };
    for (const auto& f : finites) push_real(f); // m = 0, positive finite
    for (long m = 1; m <= m0max; ++m) {
        std::vector<long> dm(n, m);
        for (const auto& f : finites) {
            std::vector<long> plus = dm, minus = dm;
            for (int i = 0; i < n; ++i) {
                plus[i] += f[i];
                minus[i] -= f[i];
            }
            push_real(plus);
            push_real(minus);
        }
        if (fits(dm)) {
            auto [ff, en] = cx.root_combo(dm);
            out.push_back({dm, ff, en, n - 1, true});
        }
    }
    return out;
}

} // namespace

MultValue weight_multiplicity_coords(int n, const AffineWeight& lambda, const std::vector<long>& c,
                                     long depth_cap) {
    if (n < 2) throw DataError("multiplicities need rank >= 2");
    if (static_cast<int>(lambda.finite.size()) != n - 1) throw DataError("lambda has wrong rank");
    if (static_cast<int>(c.size()) != n) throw DataError("coordinate vector has wrong rank");
    AffineCtx cx(n);
    if (!is_level_dominant(lambda.finite, lambda.level, cx.fin))
        throw DataError("lambda must be level-dominant");
    for (long x : c)
        if (x < 0) return {false, 0};
    if (c[0] > depth_cap) return {true, 0};

    const long h_dual = n;
    WeightCoords rho_fin(n - 1, 1);

    std::map<std::vector<long>, Integer> memo;
    std::function<Integer(const std::vector<long>&)> mult = [&](const std::vector<long>& cc) -> Integer {
        for (long x : cc)
            if (x < 0) return 0;
        bool zero = true;
        for (long x : cc)
            if (x != 0) zero = false;
        if (zero) return 1;
        auto it = memo.find(cc);
        if (it != memo.end()) return it->second;

        auto [df, de] = cx.root_combo(cc);
        WeightCoords mu_fin(n - 1);
        for (int i = 0; i < n - 1; ++i) mu_fin[i] = lambda.finite[i] - df[i];
        Rational mu_energy = lambda.energy - de;

        // denominator <lambda + mu + 2 rho, lambda - mu>
        WeightCoords sum_fin(n - 1);
        for (int i = 0; i < n - 1; ++i) sum_fin[i] = lambda.finite[i] + mu_fin[i] + 2 * rho_fin[i];
        Rational denom = cx.pair(2 * lambda.level + 2 * h_dual, sum_fin, lambda.energy + mu_energy, 0, df,
                                 Rational(de));
        Rational num = 0;
        for (const PosRoot& alpha : positive_roots_below(cx, cc)) {
            for (long j = 1;; ++j) {
                std::vector<long> cc2(cc);
                bool ok = true;
                for (int i = 0; i < cx.n; ++i) {
                    cc2[i] -= j * alpha.coords[i];
                    if (cc2[i] < 0) ok = false;
                }
                if (!ok) break;
                Integer m2 = mult(cc2);
                if (m2 == 0) continue;
                WeightCoords arg_fin(n - 1);
                for (int i = 0; i < n - 1; ++i) arg_fin[i] = mu_fin[i] + j * alpha.finite[i];
                Rational pairing = cx.pair(lambda.level, arg_fin, mu_energy + Rational(j * alpha.energy), 0,
                                           alpha.finite, Rational(alpha.energy));
                num += Rational(2 * alpha.mult) * Rational(m2) * pairing;
            }
        }
        Integer value;
        if (num == 0) {
            value = 0;
        } else {
            if (denom == 0) throw std::logic_error("vanishing Freudenthal denominator with nonzero numerator");
            Rational v = num / denom;
            if (!is_integer(v) || v < 0)
                throw std::logic_error("Freudenthal recursion produced a non-integer multiplicity");
            value = v.get_num();
        }
        memo[cc] = value;
        return value;
    };
    return {false, mult(c)};
}

std::optional<std::vector<long>> root_coords(int n, const AffineWeight& lambda, const AffineWeight& nu) {
    if (lambda.level != nu.level) throw DataError("level mismatch");
    AffineCtx cx(n);
    Rational de = lambda.energy - nu.energy;
    if (!is_integer(de) || de < 0) return std::nullopt;
    long c0 = to_long(de);
    // finite: lambda_fin - nu_fin + c0 * theta = sum_{i>=1} c_i alpha_i
    WeightCoords target(n - 1);
    for (int i = 0; i < n - 1; ++i)
        target[i] = lambda.finite[i] - nu.finite[i] + c0 * cx.theta_fin[i];
    // solve C^T x = target over the integers, x >= 0
    Mat cmat(n - 1, n - 1), rhs(n - 1, 1);
    for (int i = 0; i < n - 1; ++i) {
        rhs.at(i, 0) = rat(target[i]);
        for (int j = 0; j < n - 1; ++j) cmat.at(i, j) = rat(cx.fin.cartan[j][i]);
    }
    auto sol = solve_linear(cmat, rhs);
    if (!sol) return std::nullopt;
    std::vector<long> c(n, 0);
    c[0] = c0;
    for (int i = 1; i <= n - 1; ++i) {
        const Rational& x = sol->particular.at(i - 1, 0);
        if (!is_integer(x) || x < 0) return std::nullopt;
        c[i] = to_long(x);
    }
    return c;
}

MultValue weight_multiplicity(int n, const AffineWeight& lambda, const AffineWeight& nu, long depth_cap) {
    auto c = root_coords(n, lambda, nu);
    if (!c) return {false, 0};
    return weight_multiplicity_coords(n, lambda, *c, depth_cap);
}

std::vector<long> level_rank_transpose(const std::vector<long>& c) {
    const int k = static_cast<int>(c.size());
    long level = 0;
    for (long x : c) {
        if (x < 0) throw DataError("transpose input must be dominant (nonnegative components)");
        level += x;
    }
    const long n = level;
    if (n < 1) throw DataError("transpose needs a positive level");
    // gap coordinates -> partition rows pi_i = sum_{j >= i} c_j, i = 1..k-1
    std::vector<long> pi;
    for (int i = 1; i <= k - 1; ++i) {
        long s = 0;
        for (int j = i; j <= k - 1; ++j) s += c[j];
        pi.push_back(s);
    }
    // conjugate partition, padded to n rows
    std::vector<long> conj(n, 0);
    for (long j = 1; j <= n; ++j)
        conj[j - 1] = static_cast<long>(std::count_if(pi.begin(), pi.end(), [&](long p) { return p >= j; }));
    std::vector<long> out(n, 0);
    out[0] = k - conj[0] + conj[n - 1];
    for (long j = 1; j <= n - 1; ++j) out[j] = conj[j - 1] - conj[j];
    return out;
}

LambdaMuAlpha lambda_mu_alpha(const std::vector<long>& v, long framing, int k, const Rational& a,
                              EnergyForm form) {
    if (!nakajima_dominance(v, framing, k)) throw DataError("non-dominant v");
    const int n = static_cast<int>(framing);
    if (n < 1) throw DataError("framing must be >= 1");
    std::vector<long> wcv = w_minus_cv(v, framing, k);
    std::vector<long> lam_comps = level_rank_transpose(wcv); // length framing, sums to k

    LambdaMuAlpha out;
    out.mu.level = k;
    out.mu.finite.assign(std::max(0, n - 1), 0);
    out.mu.energy = 0;
    out.lambda.level = k;
    out.lambda.finite.assign(lam_comps.begin() + 1, lam_comps.end());

    Rational norm2 = 0;
    if (n >= 2) {
        RootSystem fin = RootSystem::simply_laced('A', n - 1);
        norm2 = form_inner(fin, out.lambda.finite, out.lambda.finite);
        if (form == EnergyForm::Killing) norm2 = norm2 * Rational(2 * n);
    }
    out.lambda.energy = (a - norm2 / 2) / Rational(k);

    // alpha = lambda - mu over the affine simple roots
    out.alpha.assign(n, 0);
    out.alpha_integral = false;
    auto c = (n >= 2) ? root_coords(n, out.lambda, out.mu)
                      : (is_integer(out.lambda.energy) && out.lambda.energy >= 0
                             ? std::optional<std::vector<long>>(std::vector<long>{to_long(out.lambda.energy)})
                             : std::nullopt);
    if (c) {
        out.alpha_integral = true;
        // public order (alpha_1, ..., alpha_N): affine node last
        for (int i = 1; i <= n - 1; ++i) out.alpha[i - 1] = (*c)[i];
        out.alpha[n - 1] = (*c)[0];
        for (long x : out.alpha)
            if (x > v[0])
                throw DataError("alpha exceeds the componentwise bound (v_0, ..., v_0); "
                                "inconsistent instanton number");
    }
    return out;
}

MultTable mult_predictions(int n, const AffineWeight& lambda, const std::vector<long>& alpha, long depth_cap) {
    if (static_cast<int>(alpha.size()) != n) throw DataError("alpha has wrong rank");
    MultTable table;
    table.depth_cap = depth_cap;
    table.alpha = alpha;
    std::vector<long> beta(n, 0);
    std::function<void(int)> walk = [&](int pos) {
        if (pos == n) {
            // c = alpha - beta, reordered with the affine node first
            std::vector<long> c(n, 0);
            c[0] = alpha[n - 1] - beta[n - 1];
            for (int i = 1; i <= n - 1; ++i) c[i] = alpha[i - 1] - beta[i - 1];
            table.entries[beta] = weight_multiplicity_coords(n, lambda, c, depth_cap);
            return;
        }
        for (long b = 0; b <= alpha[pos]; ++b) {
            beta[pos] = b;
            walk(pos + 1);
        }
    };
    walk(0);
    return table;
}

bool good_vector(const std::vector<long>& v, long framing, int k, long depth_cap) {
    if (!nakajima_dominance(v, framing, k)) return false;
    if (k == 1) return true; // degenerate cyclic rank: dominance is the whole criterion
    AffineWeight vacuum;
    vacuum.level = framing;
    vacuum.finite.assign(k - 1, 0);
    vacuum.energy = 0;
    MultValue m = weight_multiplicity_coords(k, vacuum, v, depth_cap);
    if (m.truncated) throw DataError("depth cap too small to decide goodness");
    return m.value > 0;
}

Rational orbit_dim(const RootSystem& rs, const WeightCoords& dominant) {
    if (!is_dominant(dominant)) throw DataError("orbit_dim needs a dominant weight");
    return pairing_two_rho(rs, dominant);
}

Rational conv_dim(const RootSystem& rs, const WeightCoords& l1, const WeightCoords& l2,
                  const WeightCoords& l3) {
    WeightCoords s(rs.rank);
    for (int i = 0; i < rs.rank; ++i) s[i] = l1[i] + l2[i] + l3[i];
    return pairing_two_rho(rs, s) / 2;
}

} // namespace zastava
