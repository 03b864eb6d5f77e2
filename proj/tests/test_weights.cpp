#include <doctest.h>

#include "oracle_weights.hpp"
#include "zastava/affine_weights.hpp"
#include "zastava/rng.hpp"

#include <functional>
#include <set>

using namespace zastava;
using zastava_test::oracle_multiplicity;

TEST_CASE("level dominance") {
    RootSystem a1 = RootSystem::simply_laced('A', 1);
    CHECK(is_level_dominant({0}, 0, a1));
    CHECK(is_level_dominant({2}, 2, a1)); // alpha-coroot pairs to 2 with the root
    CHECK(!is_level_dominant({2}, 1, a1));
    CHECK(!is_level_dominant({-1}, 5, a1));
}

TEST_CASE("dominant representative examples in rank 1") {
    RootSystem a1 = RootSystem::simply_laced('A', 1);
    // coroot coordinates m correspond to a = 2m
    CHECK(dominant_representative({4}, 2, a1) == WeightCoords{0});  // 2 alpha^vee -> 0
    CHECK(dominant_representative({6}, 2, a1) == WeightCoords{2});  // 3 alpha^vee -> alpha^vee
    CHECK(dominant_representative({2}, 2, a1) == WeightCoords{2});  // already dominant
    CHECK(dominant_representative({-2}, 2, a1) == WeightCoords{2}); // reflect
}

TEST_CASE("dominant representative is idempotent and unique in the orbit box") {
    for (int rank = 1; rank <= 2; ++rank) {
        RootSystem rs = RootSystem::simply_laced('A', rank);
        for (long k = 1; k <= 3; ++k) {
            // BFS over the orbit within the box |m_i| <= 6 in coroot coords
            std::function<void(const WeightCoords&)> check_one = [&](const WeightCoords& start) {
                WeightCoords rep = dominant_representative(start, k, rs);
                CHECK(is_level_dominant(rep, k, rs));
                CHECK(dominant_representative(rep, k, rs) == rep);

                auto in_box = [&](const WeightCoords& a) {
                    for (const Rational& m : coroot_coords(rs, a))
                        if (m < -6 || m > 6) return false;
                    return true;
                };
                std::set<WeightCoords> seen;
                std::vector<WeightCoords> queue{start};
                seen.insert(start);
                std::set<WeightCoords> dominant_found;
                while (!queue.empty()) {
                    WeightCoords cur = queue.back();
                    queue.pop_back();
                    if (is_level_dominant(cur, k, rs)) dominant_found.insert(cur);
                    std::vector<WeightCoords> nexts;
                    for (int i = 0; i < rs.rank; ++i) nexts.push_back(reflect(rs, i, cur));
                    for (int i = 0; i < rs.rank; ++i) {
                        std::vector<long> unit(rs.rank, 0);
                        unit[i] = 1;
                        nexts.push_back(translate(rs, cur, unit, k));
                        nexts.push_back(translate(rs, cur, unit, -k));
                    }
                    for (const auto& nx : nexts)
                        if (in_box(nx) && seen.insert(nx).second) queue.push_back(nx);
                }
                CHECK(dominant_found.size() == 1);
                CHECK(*dominant_found.begin() == rep);
            };
            // a few starting points in coroot coordinates
            for (long m0 = -2; m0 <= 2; ++m0) {
                std::vector<long> m(rank, 0);
                m[0] = m0;
                if (rank == 2) m[1] = (m0 + 3) % 2;
                WeightCoords a = translate(rs, WeightCoords(rank, 0), m, 1);
                check_one(a);
            }
        }
    }
}

TEST_CASE("cyclic affine Cartan matrices") {
    CHECK(affine_cartan(1) == std::vector<std::vector<long>>{{0}});
    CHECK(affine_cartan(2) == std::vector<std::vector<long>>{{2, -2}, {-2, 2}});
    auto c3 = affine_cartan(3);
    CHECK(c3[0] == std::vector<long>{2, -1, -1});
    CHECK(c3[1] == std::vector<long>{-1, 2, -1});
    for (int n = 2; n <= 5; ++n)
        for (const auto& row : affine_cartan(n)) {
            long s = 0;
            for (long x : row) s += x;
            CHECK(s == 0);
        }
}

TEST_CASE("framed dominance criterion") {
    CHECK(nakajima_dominance({0, 0, 0}, 2, 3));
    CHECK(nakajima_dominance({2, 1, 1}, 2, 3)); // 3>=2, 3>=2, 4>=4
    CHECK(!nakajima_dominance({2, 0}, 2, 2));   // 2v_0 = 4 > v_1 + v_1 + N = 2
    CHECK(nakajima_dominance({1}, 3, 1));       // degenerate rank: always dominant
}

TEST_CASE("framed dominance agrees with the Cartan form exhaustively") {
    for (int k = 1; k <= 4; ++k) {
        std::vector<long> v(k, 0);
        std::function<void(int)> walk = [&](int pos) {
            if (pos == k) {
                for (long framing = 1; framing <= 3; ++framing)
                    CHECK_NOTHROW(nakajima_dominance(v, framing, k)); // internal cross-check throws on mismatch
                return;
            }
            for (long x = 0; x <= 5; ++x) {
                v[pos] = x;
                walk(pos + 1);
            }
        };
        walk(0);
    }
}

TEST_CASE("weight multiplicities: highest weight and off-cone weights") {
    AffineWeight lambda{1, {0}, 0}; // rank-2 vacuum at level 1
    CHECK(weight_multiplicity_coords(2, lambda, {0, 0}, 5).value == 1);
    AffineWeight above{1, {0}, 1};
    CHECK(weight_multiplicity(2, lambda, above, 5).value == 0); // not below lambda
    AffineWeight same_level_off{1, {1}, 0};
    CHECK(weight_multiplicity(2, lambda, same_level_off, 5).value == 0);
    CHECK(weight_multiplicity_coords(2, lambda, {7, 7}, 5).truncated);
}

TEST_CASE("rank-2 level-1 multiplicities match the lattice-model values") {
    // string of the vacuum module: mult(lambda - j*alpha - d*delta + ...) is
    // the partition count p(d - j^2); coordinates c = (d, d - j)
    AffineWeight lambda{1, {0}, 0};
    auto m = [&](long c0, long c1) { return weight_multiplicity_coords(2, lambda, {c0, c1}, 8).value; };
    CHECK(m(1, 1) == 1); // p(1)
    CHECK(m(2, 2) == 2); // p(2)
    CHECK(m(3, 3) == 3); // p(3)
    CHECK(m(4, 4) == 5); // p(4)
    CHECK(m(1, 0) == 1); // j = 1: p(0)
    CHECK(m(2, 1) == 1); // j = 1: p(1)
    CHECK(m(3, 1) == 0); // j = 2: p(-1)
    CHECK(m(4, 2) == 1); // j = 2: p(0)
}

TEST_CASE("the recursion agrees with the brute-force oracle at small depth") {
    std::vector<std::pair<int, long>> cases = {{2, 1}, {2, 2}, {3, 1}};
    for (auto [n, level] : cases) {
        // all level-dominant highest weights
        std::vector<WeightCoords> lams;
        std::function<void(WeightCoords, int)> gen = [&](WeightCoords cur, int pos) {
            if (pos == n - 1) {
                RootSystem fin = RootSystem::simply_laced('A', n - 1);
                if (is_level_dominant(cur, level, fin)) lams.push_back(cur);
                return;
            }
            for (long x = 0; x <= level; ++x) {
                cur[pos] = x;
                gen(cur, pos + 1);
            }
        };
        gen(WeightCoords(n - 1, 0), 0);
        for (const auto& lfin : lams) {
            AffineWeight lambda{level, lfin, 0};
            std::vector<long> c(n, 0);
            std::function<void(int)> walk = [&](int pos) {
                if (pos == n) {
                    MultValue mv = weight_multiplicity_coords(n, lambda, c, 2);
                    if (!mv.truncated) CHECK(mv.value == oracle_multiplicity(n, lambda, c, 2));
                    return;
                }
                long cap = (pos == 0) ? 2 : 4;
                for (long x = 0; x <= cap; ++x) {
                    c[pos] = x;
                    walk(pos + 1);
                }
            };
            walk(0);
        }
    }
}

TEST_CASE("level-rank transpose") {
    CHECK(level_rank_transpose({3}) == std::vector<long>{1, 0, 0});       // k=1 vacuum
    CHECK(level_rank_transpose({2, 0}) == std::vector<long>{2, 0});       // rank-2 level-2 vacuum
    CHECK(level_rank_transpose({0, 2}) == std::vector<long>{2, 0});       // computed by hand
    CHECK(level_rank_transpose({1, 1}) == std::vector<long>{1, 1});
    CHECK(level_rank_transpose({1, 1, 1}) == std::vector<long>{1, 1, 1}); // symmetric case
}

TEST_CASE("lambda-mu-alpha bookkeeping") {
    // vacuum: v = 0, a = 0
    auto vac = lambda_mu_alpha({0, 0}, 2, 2, rat(0));
    CHECK(vac.lambda == vac.mu);
    CHECK(vac.alpha_integral);
    for (long x : vac.alpha) CHECK(x == 0);

    // the small interesting case: N = 2, k = 2, v = (1,1), a = 2
    auto lma = lambda_mu_alpha({1, 1}, 2, 2, rat(2));
    CHECK(lma.lambda.level == 2);
    CHECK(lma.lambda.finite == WeightCoords{0});
    CHECK(lma.lambda.energy == rat(1));
    CHECK(lma.alpha_integral);
    CHECK(lma.alpha == std::vector<long>{1, 1});

    // non-dominant v is rejected
    CHECK_THROWS_AS(lambda_mu_alpha({2, 0}, 2, 2, rat(0)), DataError);
    // an inconsistent instanton number violates the componentwise bound
    CHECK_THROWS_AS(lambda_mu_alpha({1, 1}, 2, 2, rat(6)), DataError);
}

TEST_CASE("energy-form flag only rescales the quadratic term") {
    // vacuum case: both normalizations give lambda = mu
    for (auto form : {EnergyForm::Basic, EnergyForm::Killing}) {
        auto vac = lambda_mu_alpha({0, 0}, 2, 2, rat(0), form);
        CHECK(vac.lambda == vac.mu);
    }
    // a case with nonzero finite part: the energies differ by the scaled norm
    auto basic = lambda_mu_alpha({1, 0}, 3, 2, rat(4), EnergyForm::Basic);
    auto killing = lambda_mu_alpha({1, 0}, 3, 2, rat(4), EnergyForm::Killing);
    CHECK(basic.lambda.finite == killing.lambda.finite);
    CHECK(basic.lambda.energy != killing.lambda.energy);
}

TEST_CASE("prediction tables") {
    auto lma = lambda_mu_alpha({1, 1}, 2, 2, rat(2));
    MultTable t = mult_predictions(2, lma.lambda, lma.alpha, 6);
    CHECK(t.entries.size() == 4);
    CHECK(t.entries.at({1, 1}).value == 1); // beta = alpha row
    for (const auto& [beta, mv] : t.entries) {
        CHECK(!mv.truncated);
        // c = alpha - beta reordered, affine node first
        std::vector<long> c = {lma.alpha[1] - beta[1], lma.alpha[0] - beta[0]};
        CHECK(mv.value == oracle_multiplicity(2, lma.lambda, c, 6));
    }
}

TEST_CASE("goodness composite predicate") {
    CHECK(good_vector({0, 0}, 2, 2));
    CHECK(good_vector({1, 1}, 2, 2));
    CHECK(!good_vector({2, 0}, 2, 2)); // dominance fails
    CHECK(good_vector({1}, 2, 1));     // degenerate rank
    // two-sided agreement on a small box: dominance + vacuum-side
    // nonvanishing matches the transposed-side weight criterion
    for (long v0 = 0; v0 <= 2; ++v0)
        for (long v1 = 0; v1 <= 2; ++v1) {
            std::vector<long> v = {v0, v1};
            if (!nakajima_dominance(v, 2, 2)) continue;
            bool side_k = good_vector(v, 2, 2);
            // transposed side: an instanton number in a small range makes
            // alpha integral, and then the vacuum weight appears in the
            // lambda module
            bool side_n = false;
            for (long a = 0; a <= 12 && !side_n; ++a) {
                try {
                    auto lma = lambda_mu_alpha(v, 2, 2, rat(a));
                    if (!lma.alpha_integral) continue;
                    std::vector<long> c = {lma.alpha[1], lma.alpha[0]};
                    MultValue mv = weight_multiplicity_coords(2, lma.lambda, c, 12);
                    if (!mv.truncated && mv.value > 0) side_n = true;
                } catch (const DataError&) {
                    // bound violation: this a is not the matched one
                }
            }
            CHECK(side_k == side_n);
        }
}

TEST_CASE("orbit dimension pairings") {
    RootSystem a1 = RootSystem::simply_laced('A', 1);
    CHECK(orbit_dim(a1, {0}) == rat(0));
    CHECK(orbit_dim(a1, {2}) == rat(2)); // alpha-coroot pairs to 2 with 2*rho-hat
    RootSystem a2 = RootSystem::simply_laced('A', 2);
    CHECK(orbit_dim(a2, {1, 1}) == rat(4)); // highest root of A_2

    // integrality of the half-pairing on triples with integral sum
    Rng rng(12);
    for (int t = 0; t < 20; ++t) {
        WeightCoords l1(2), l2(2), l3(2);
        for (int i = 0; i < 2; ++i) {
            l1[i] = rng.uniform(0, 3);
            l2[i] = rng.uniform(0, 3);
        }
        // choose l3 so the sum lies in the coroot lattice
        bool found = false;
        for (long x = 0; x <= 3 && !found; ++x)
            for (long y = 0; y <= 3 && !found; ++y) {
                l3 = {x, y};
                WeightCoords s = {l1[0] + l2[0] + x, l1[1] + l2[1] + y};
                bool integral = true;
                for (const Rational& m : coroot_coords(a2, s))
                    if (!is_integer(m)) integral = false;
                if (integral) found = true;
            }
        REQUIRE(found);
        Rational cd = conv_dim(a2, l1, l2, l3);
        CHECK(is_integer(cd));
    }
}

TEST_CASE("simply-laced utilities extend beyond type A") {
    RootSystem d4 = RootSystem::simply_laced('D', 4);
    CHECK(orbit_dim(d4, {0, 1, 0, 0}) == rat(10)); // highest root of D_4
    RootSystem e6 = RootSystem::simply_laced('E', 6);
    WeightCoords theta_e6(6, 0);
    // the highest root pairs to 2 with itself
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 6; ++i) theta_e6[j] += e6.cartan[i][j] * e6.marks[i];
    CHECK(highest_root_pairing(e6, theta_e6) == 2);
}
