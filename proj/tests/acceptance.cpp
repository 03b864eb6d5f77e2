// Acceptance suite: runs every acceptance criterion at its stated size and
// tolerance (exact zero unless noted) and prints one PASS/FAIL line per
// criterion. Exits nonzero if any criterion fails.
#include "zastava/affine_weights.hpp"
#include "zastava/blowup.hpp"
#include "zastava/equivariant.hpp"
#include "zastava/maps.hpp"
#include "zastava/monad.hpp"
#include "zastava/random_module.hpp"
#include "zastava/stability.hpp"

#include "oracle_weights.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace zastava;
using zastava_test::oracle_multiplicity;

namespace {

int failures = 0;

void report(int number, const std::string& label, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << label;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DimVector chainsaw_dims(int N, const std::vector<int>& d) {
    QuiverShape s{QuiverKind::Chainsaw, N, 1};
    DimVector out = zero_dims(s);
    for (int l = 1; l <= N; ++l) out.d[{l, 0}] = d[l - 1];
    return out;
}

DimVector dented_dims(int N, const std::vector<int>& d) {
    QuiverShape s{QuiverKind::DentedChainsaw, N, 1};
    DimVector out = zero_dims(s);
    for (int l = 0; l <= N; ++l) out.d[{l, 0}] = d[l];
    return out;
}

// --- criterion 1: classical expansion identity ------------------------------

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;
    Rng rng(101);
    for (int t = 0; t < 200 && ok; ++t) {
        int d = static_cast<int>(rng.uniform(1, 4)), n = static_cast<int>(rng.uniform(1, 4));
        Mat a = random_int_matrix(d, d, rng, 6);
        Mat b = random_int_matrix(d, d, rng, 6);
        Mat p = random_int_matrix(d, n, rng, 6);
        Mat q = random_int_matrix(n, d, rng, 6);
        MonadPair pair = build_adhm_monad(a, b, p, q);
        PolyMat dc = verify_complex(pair);
        MatPoly expect = adhm_commutator_poly(pair, a, b, p, q);
        const MatPoly* got = dc.block(0, 0);
        MatPoly residue = got ? (*got - expect) : -expect;
        if (!residue.is_zero()) {
            ok = false;
            why = "expansion mismatch at trial " + std::to_string(t);
        }
        if (t % 4 == 0) {
            AdhmData ad = random_adhm(d, n, 5000 + t);
            if (!verify_complex(build_adhm_monad(ad.a, ad.b, ad.p, ad.q)).is_zero()) {
                ok = false;
                why = "relation-satisfying data with nonzero composite";
            }
        }
    }
    double dt = seconds_since(t0);
    if (dt >= 10.0) {
        ok = false;
        why = "runtime " + std::to_string(dt) + "s exceeds 10s";
    }
    std::ostringstream detail;
    detail << "200 expansions, d<=4, framing<=4, " << dt << "s";
    report(1, "classical monad expansion equals t*x*(AB-BA+pq)", ok, why.empty() ? detail.str() : why);
}

// --- criterion 2: the two chainsaw monads are complexes ----------------------

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;
    Rng pick(202);
    int built = 0;
    for (int t = 0; t < 100 && ok; ++t) {
        int N = static_cast<int>(pick.uniform(1, 3));
        std::vector<int> dd;
        for (int l = 0; l < N; ++l) dd.push_back(static_cast<int>(pick.uniform(1, 3)));
        QuiverModule m = random_module(chainsaw_dims(N, dd), 9000 + t);
        if (!verify_complex(build_stack_monad(m)).is_zero()) {
            ok = false;
            why = "orbifold-line composite nonzero at trial " + std::to_string(t);
        }
        if (ok && !verify_complex(build_weighted_monad(m)).is_zero()) {
            ok = false;
            why = "weighted composite nonzero at trial " + std::to_string(t);
        }
        ++built;
        if (ok && t % 10 == 0) {
            // perturb each relation in turn (each edge sits in exactly one):
            // the composite must become nonzero every time
            for (int l = 0; l <= N - 1 && ok; ++l) {
                QuiverModule bad = m;
                bad.arrows[{ArrowKind::B, l, 0}].at(0, 0) += 1;
                if (relations_hold(bad)) continue; // degenerate perturbation, skip
                if (verify_complex(build_stack_monad(bad)).is_zero() ||
                    verify_complex(build_weighted_monad(bad)).is_zero()) {
                    ok = false;
                    why = "perturbed relation left the composite zero";
                }
            }
        }
    }
    double dt = seconds_since(t0);
    if (dt >= 60.0) {
        ok = false;
        why = "runtime " + std::to_string(dt) + "s exceeds 60s";
    }
    std::ostringstream detail;
    detail << built << " modules, N<=3, dims<=3, " << dt << "s";
    report(2, "orbifold-line and weighted monads compose to zero exactly", ok, why.empty() ? detail.str() : why);
}

// --- criterion 3: blowup identities ------------------------------------------

void criterion3() {
    bool ok = true;
    std::string why;
    int count = 0;
    Rng pick(303);
    for (int t = 0; t < 24 && ok; ++t) {
        int N = static_cast<int>(pick.uniform(1, 3));
        std::vector<int> dd(N + 1, 0);
        int j = 1 + static_cast<int>(pick.uniform(0, 1));
        dd[0] = dd[N] = j;
        for (int l = 1; l < N; ++l) dd[l] = 1 + static_cast<int>(pick.uniform(0, 1));
        QuiverModule m = random_module(dented_dims(N, dd), 11000 + t);
        BlowupResiduals res = verify_blowup_identities(build_blowup_data(m));
        if (!res.kappa1_gamma_zero || !res.kappa2_gamma_zero || !res.middle_in_image) {
            ok = false;
            why = "identity failed at trial " + std::to_string(t);
        }
        ++count;
    }
    report(3, "blowup monad identities hold exactly in the dual-graded model", ok,
           why.empty() ? std::to_string(count) + " modules, N<=3, dims<=2" : why);
}

// --- criterion 4: map well-definedness ----------------------------------------

void criterion4() {
    bool ok = true;
    std::string why;
    auto fail = [&](const std::string& w) {
        ok = false;
        why = w;
    };
    Rng pick(404);
    // rotate: literal identity of the N-fold composite
    for (int N = 1; N <= 4 && ok; ++N) {
        std::vector<int> dd;
        for (int l = 0; l < N; ++l) dd.push_back(1 + (l % 2));
        QuiverModule m = random_module(chainsaw_dims(N, dd), 12000 + N);
        QuiverModule acc = m;
        for (int i = 0; i < N; ++i) acc = rotate(acc);
        if (!(acc == m)) fail("rotate^N is not the identity at N=" + std::to_string(N));
    }
    // psi_direct_image on 100 graded modules, including dims that are not
    // of the distinguished form
    for (int t = 0; t < 100 && ok; ++t) {
        int N = 1 + t % 3, k = 1 + (t / 3) % 3;
        std::vector<int> base(N, 1 + t % 2);
        QuiverModule g;
        if (t % 3 == 2 && k >= 2) {
            QuiverShape s{QuiverKind::ChainsawFixed, N, k};
            DimVector d = zero_dims(s);
            for (const VertexId& v : vertex_list(s)) d.d[v] = (v.r == 0) ? 2 : 1; // chain-valid
            g = random_module(d, 13700 + t);
        } else if (t % 2 == 0) {
            g = random_module(dim_tilde_of(chainsaw_dims(N, base), k), 13000 + t);
        } else {
            g = embed_chainsaw_graded(random_module(chainsaw_dims(N, base), 13500 + t), k);
        }
        if (!relations_hold(psi_direct_image(g))) fail("direct image broke relations at t=" + std::to_string(t));
    }
    // blowdown on 100 dented modules
    for (int t = 0; t < 100 && ok; ++t) {
        int N = 1 + t % 3;
        std::vector<int> dd(N + 1, 1 + t % 2);
        QuiverModule m = random_module(dented_dims(N, dd), 14000 + t);
        if (!relations_hold(blowdown_pi(m))) fail("blowdown broke relations at t=" + std::to_string(t));
    }
    // graded blowdown and the composite on 100 rift modules, mixing
    // constant and non-constant columns
    for (int t = 0; t < 100 && ok; ++t) {
        int N = 1 + t % 3, k = 1 + (t / 3) % 3;
        QuiverShape s{QuiverKind::Rift, N, k};
        DimVector d = zero_dims(s);
        for (const VertexId& v : vertex_list(s))
            d.d[v] = 1 + (v.r + t + ((t % 4 == 3) ? v.l : 0)) % 2;
        QuiverModule m = random_module(d, 15000 + t);
        QuiverModule mid = psi_k(m);
        if (!relations_hold(mid)) fail("graded blowdown broke relations at t=" + std::to_string(t));
        if (ok && !relations_hold(pi_k(m))) fail("composite broke relations at t=" + std::to_string(t));
    }
    report(4, "inter-quiver maps send relation-satisfying modules to relation-satisfying modules", ok,
           why.empty() ? "rotate N<=4; 100 modules per map" : why);
}

// --- criterion 5: open-piece round trip ----------------------------------------

void criterion5() {
    bool ok = true;
    std::string why;
    int done = 0;
    for (int t = 0; t < 50 && ok; ++t) {
        int k = 1 + t % 3, N = 1 + (t / 3) % 3;
        std::vector<int> v;
        for (int r = 0; r < k; ++r) v.push_back(1 + (t + r) % 2);
        NakajimaCyclicModule n = random_nakajima(k, N, v, 16000 + t);
        QuiverModule m = phi_inverse_generator(n);
        if (!(phi_open(m) == n)) {
            ok = false;
            why = "round trip failed at t=" + std::to_string(t);
            break;
        }
        NakajimaCyclicModule img = phi_open(m);
        auto bare = nakajima_moment_residuals(img, false);
        for (int r = 1; r < k; ++r)
            if (!bare[r].is_zero()) {
                ok = false;
                why = "nonzero residual at vertex r=" + std::to_string(r);
            }
        auto full = nakajima_moment_residuals(img, true);
        for (int r = 0; r < k; ++r)
            if (!full[r].is_zero()) {
                ok = false;
                why = "recorded-convention residual nonzero at r=" + std::to_string(r);
            }
        ++done;
    }
    report(5, "open-piece dictionary round trips exactly with the recorded framing convention", ok,
           why.empty() ? std::to_string(done) + " cyclic inputs, k<=3, framing<=3, v<=2" : why);
}

// --- criterion 6: equivariance -------------------------------------------------

void criterion6() {
    bool ok = true;
    std::string why;
    auto fail = [&](const std::string& w) {
        ok = false;
        why = w;
    };
    // action preserves relations and generation stability
    for (int t = 0; t < 100 && ok; ++t) {
        int N = 1 + t % 3, k = 1 + (t / 3) % 3;
        std::vector<int> dd(N, 1 + t % 2);
        QuiverModule m = random_module(chainsaw_dims(N, dd), 17000 + t);
        auto c = gamma_act(m, k, 1 + t % (k * N));
        for (const auto& r : relation_residuals(c))
            if (!r.is_zero()) fail("twisted module broke relations at t=" + std::to_string(t));
        if (ok && is_gen_stable(c) != is_gen_stable(m)) fail("stability changed under the action");
    }
    // decomposition recovers the grading dimensions
    for (int t = 0; t < 8 && ok; ++t) {
        int N = 1 + t % 2, k = 2 + t % 2;
        QuiverModule base = random_module(chainsaw_dims(N, std::vector<int>(N, 1 + t % 2)), 18000 + t);
        QuiverModule flat = forget_grading(embed_chainsaw_graded(base, k));
        Rng rng(t);
        GaugeElement h = random_gauge<Rational>(flat.dims, rng);
        QuiverModule hidden = gauge_act(h, flat);
        auto g = find_fixing_gauge(hidden, k);
        if (!g) {
            fail("fixing gauge not found at t=" + std::to_string(t));
            break;
        }
        Eigendecomposition dec = eigendecompose(hidden, *g, k);
        if (!(dec.graded.dims == dim_tilde_of(base.dims, k))) fail("grading dims not recovered");
        if (ok && !(reassemble_graded(dec) == hidden)) fail("reassembly failed");
    }
    // defect classes of distinguished vectors vanish, exhaustively
    for (int N = 1; N <= 3 && ok; ++N)
        for (int k = 1; k <= 3 && ok; ++k) {
            std::vector<int> dd(N, 0);
            std::function<void(int)> walk = [&](int pos) {
                if (!ok) return;
                if (pos == N) {
                    if (!defect_class(dim_tilde_of(chainsaw_dims(N, dd), k)).is_zero())
                        fail("nonzero defect class of a distinguished vector");
                    return;
                }
                for (int x = 0; x <= 3; ++x) {
                    dd[pos] = x;
                    walk(pos + 1);
                }
            };
            walk(0);
        }
    report(6, "cyclic action preserves structure; decompositions and defect classes are consistent", ok, why);
}

// --- criterion 7: framed dominance vs Cartan form -------------------------------

void criterion7() {
    bool ok = true;
    std::string why;
    long checked = 0;
    for (int k = 1; k <= 4 && ok; ++k) {
        std::vector<long> v(k, 0);
        std::function<void(int)> walk = [&](int pos) {
            if (!ok) return;
            if (pos == k) {
                for (long framing = 1; framing <= 3; ++framing) {
                    try {
                        nakajima_dominance(v, framing, k); // throws on any disagreement
                    } catch (const std::exception& e) {
                        ok = false;
                        why = e.what();
                    }
                    ++checked;
                }
                return;
            }
            for (long x = 0; x <= 5 && ok; ++x) {
                v[pos] = x;
                walk(pos + 1);
            }
        };
        walk(0);
    }
    report(7, "dominance inequality list agrees with the affine Cartan form", ok,
           why.empty() ? std::to_string(checked) + " vectors, entries<=5, k<=4, zero disagreements" : why);
}

// --- criterion 8: multiplicity oracle agreement ---------------------------------

void criterion8() {
    bool ok = true;
    std::string why;
    long compared = 0;
    std::vector<std::pair<int, long>> cases = {{2, 1}, {2, 2}, {3, 1}};
    for (auto [n, level] : cases) {
        if (!ok) break;
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
            if (!ok) break;
            AffineWeight lambda{level, lfin, 0};
            std::vector<long> c(n, 0);
            std::function<void(int)> walk = [&](int pos) {
                if (!ok) return;
                if (pos == n) {
                    MultValue mv = weight_multiplicity_coords(n, lambda, c, 3);
                    if (mv.truncated) return;
                    Integer oracle = oracle_multiplicity(n, lambda, c, 3);
                    ++compared;
                    if (mv.value != oracle) {
                        ok = false;
                        std::ostringstream os;
                        os << "mismatch at rank " << n << " level " << level << ": recursion "
                           << mv.value.get_str() << " vs oracle " << oracle.get_str();
                        why = os.str();
                    }
                    return;
                }
                long cap = (pos == 0) ? 3 : 6;
                for (long x = 0; x <= cap && ok; ++x) {
                    c[pos] = x;
                    walk(pos + 1);
                }
            };
            walk(0);
        }
    }
    // prediction table for the distinguished small case
    if (ok) {
        auto lma = lambda_mu_alpha({1, 1}, 2, 2, rat(2));
        MultTable t = mult_predictions(2, lma.lambda, lma.alpha, 6);
        if (!(t.entries.at({1, 1}).value == 1)) {
            ok = false;
            why = "beta = alpha entry is not 1";
        }
        for (const auto& [beta, mv] : t.entries) {
            std::vector<long> c = {lma.alpha[1] - beta[1], lma.alpha[0] - beta[0]};
            if (mv.value != oracle_multiplicity(2, lma.lambda, c, 6)) {
                ok = false;
                why = "prediction table disagrees with the oracle";
            }
        }
    }
    report(8, "Freudenthal-type recursion agrees with the brute-force character oracle", ok,
           why.empty() ? std::to_string(compared) + " weights at depth <= 3, plus the prediction table" : why);
}

// --- criterion 9: dominant-alcove uniqueness ------------------------------------

void criterion9() {
    bool ok = true;
    std::string why;
    long orbits = 0;
    for (int rank = 1; rank <= 2 && ok; ++rank) {
        RootSystem rs = RootSystem::simply_laced('A', rank);
        for (long k = 1; k <= 3 && ok; ++k) {
            std::vector<long> m(rank, 0);
            std::function<void(int)> walk = [&](int pos) {
                if (!ok) return;
                if (pos == rank) {
                    WeightCoords start = translate(rs, WeightCoords(rank, 0), m, 1);
                    WeightCoords rep = dominant_representative(start, k, rs);
                    if (!is_level_dominant(rep, k, rs)) {
                        ok = false;
                        why = "representative is not level-dominant";
                        return;
                    }
                    // BFS in the radius-6 coroot box
                    auto in_box = [&](const WeightCoords& a) {
                        for (const Rational& mm : coroot_coords(rs, a))
                            if (mm < -6 || mm > 6) return false;
                        return true;
                    };
                    std::set<WeightCoords> seen{start};
                    std::vector<WeightCoords> queue{start};
                    std::set<WeightCoords> dominants;
                    while (!queue.empty()) {
                        WeightCoords cur = queue.back();
                        queue.pop_back();
                        if (is_level_dominant(cur, k, rs)) dominants.insert(cur);
                        std::vector<WeightCoords> nexts;
                        for (int i = 0; i < rank; ++i) nexts.push_back(reflect(rs, i, cur));
                        for (int i = 0; i < rank; ++i) {
                            std::vector<long> unit(rank, 0);
                            unit[i] = 1;
                            nexts.push_back(translate(rs, cur, unit, k));
                            nexts.push_back(translate(rs, cur, unit, -k));
                        }
                        for (const auto& nx : nexts)
                            if (in_box(nx) && seen.insert(nx).second) queue.push_back(nx);
                    }
                    ++orbits;
                    if (dominants.size() != 1 || !(*dominants.begin() == rep)) {
                        ok = false;
                        why = "orbit box does not contain exactly the representative";
                    }
                    return;
                }
                for (long x = -2; x <= 2 && ok; ++x) {
                    m[pos] = x;
                    walk(pos + 1);
                }
            };
            walk(0);
        }
    }
    report(9, "each affine orbit meets the level-dominant alcove exactly once", ok,
           why.empty() ? std::to_string(orbits) + " orbits, ranks 1-2, k<=3, radius-6 box" : why);
}

// --- criterion 10: stability coherence ------------------------------------------

void criterion10() {
    bool ok = true;
    std::string why;
    int decided = 0, witnesses = 0;
    for (int t = 0; t < 30 && ok; ++t) {
        DimVector d;
        if (t % 3 == 0) {
            d = dented_dims(2, {1, 1, 1});
        } else if (t % 3 == 1) {
            QuiverShape s{QuiverKind::Rift, 2, 2};
            d = zero_dims(s);
            for (const VertexId& v : vertex_list(s)) d.d[v] = 1;
        } else {
            d = dented_dims(1, {1, 1});
        }
        QuiverModule m = (t < 9) ? zero_module<Rational>(d) : random_module(d, 20000 + t);
        if (t >= 9 && t % 2 == 0) {
            // sparsify: keep relations trivially by zeroing everything
            m = zero_module<Rational>(d);
            Rng rng(t);
            m.arrows[{ArrowKind::P, 1, 0}] = random_int_matrix(d.at(1, 0), 1, rng);
        }
        StabilityParam p = make_zeta(d, ZetaFlavor::Minus);
        StabilityVerdict vs = check_slope_stability(m, p, SlopeMode::Stable);
        StabilityVerdict vss = check_slope_stability(m, p, SlopeMode::Semistable);
        if (vs.kind != VerdictKind::Unknown && vss.kind != VerdictKind::Unknown && vs.kind != vss.kind) {
            ok = false;
            why = "stable and semistable verdicts disagree at t=" + std::to_string(t);
        }
        for (const auto* v : {&vs, &vss}) {
            if (v->kind == VerdictKind::Unknown) continue;
            ++decided;
            if (v->witness) {
                ++witnesses;
                auto j = verdict_to_json(*v);
                SubmoduleWitness w = witness_from_json(j.at("witness"), d.shape);
                SlopeMode mode = (v == &vs) ? SlopeMode::Stable : SlopeMode::Semistable;
                if (!revalidate_witness(m, p, mode, w)) {
                    ok = false;
                    why = "witness failed revalidation at t=" + std::to_string(t);
                }
            }
        }
    }
    if (decided == 0) {
        ok = false;
        why = "no decided instances";
    }
    report(10, "perturbed-parameter verdicts coincide across modes; witnesses revalidate", ok,
           why.empty() ? std::to_string(decided) + " decided verdicts, " + std::to_string(witnesses) +
                             " witnesses revalidated"
                       : why);
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (failures) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
}
