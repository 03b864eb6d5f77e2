// Command-line front end: batch generation, validation, maps, fixed-point
// decomposition, stability checks, monad verification and weight tables.
// All randomness flows from --seed; every file-producing run writes a
// sidecar manifest with input/output digests, so identical manifests imply
// identical outputs.
#include "zastava/affine_weights.hpp"
#include "zastava/blowup.hpp"
#include "zastava/equivariant.hpp"
#include "zastava/maps.hpp"
#include "zastava/monad.hpp"
#include "zastava/random_module.hpp"
#include "zastava/serialize.hpp"
#include "zastava/stability.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>
#include <iostream>
#include <sstream>

using namespace zastava;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_manifest(const std::string& command, const json& params, std::uint64_t seed,
                    const std::vector<std::string>& inputs, const std::vector<std::string>& outputs) {
    if (outputs.empty()) return;
    json m;
    m["command"] = command;
    m["seed"] = seed;
    m["params"] = params;
    m["version"] = kVersion;
    json ins = json::object(), outs = json::object();
    for (const auto& p : inputs) ins[p] = fnv1a_digest(read_file(p));
    for (const auto& p : outputs) outs[p] = fnv1a_digest(read_file(p));
    m["inputs"] = ins;
    m["outputs"] = outs;
    std::ofstream out(outputs.front() + ".manifest.json");
    out << m.dump(2) << "\n";
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoi(tok));
    }
    return out;
}

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    for (int x : parse_int_list(s)) out.push_back(x);
    return out;
}

DimVector parse_dims(const QuiverShape& shape, const std::string& text) {
    DimVector dims = zero_dims(shape);
    std::vector<std::vector<int>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(parse_int_list(row));
    int expected_rows = shape.graded() ? shape.k : 1;
    if (static_cast<int>(rows.size()) != expected_rows)
        throw DataError("expected " + std::to_string(expected_rows) + " dimension row(s)");
    int l0 = shape.dented() ? 0 : 1;
    for (int r = 0; r < expected_rows; ++r) {
        if (static_cast<int>(rows[r].size()) != shape.N + 1 - l0)
            throw DataError("dimension row " + std::to_string(r) + " must list d_" + std::to_string(l0) +
                            "..d_" + std::to_string(shape.N));
        for (int l = l0; l <= shape.N; ++l) dims.d[{l, r}] = rows[r][l - l0];
    }
    validate_dims(dims);
    return dims;
}

json check_one(const std::string& path) {
    QuiverModule m = load_module_file(path);
    json r;
    r["input"] = path;
    r["shape"] = kind_name(m.shape.kind);
    auto residuals = relation_residuals(m);
    bool all_zero = true;
    json per = json::array();
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        bool z = residuals[i].is_zero();
        per.push_back(z);
        if (!z) all_zero = false;
    }
    r["residuals_zero"] = all_zero;
    r["residuals"] = per;
    if (m.shape.kind == QuiverKind::Chainsaw || m.shape.kind == QuiverKind::ChainsawFixed)
        r["gen_stable"] = is_gen_stable(m);
    else
        r["gen_stable"] = nullptr;
    return r;
}

AffineWeight parse_affine_weight(long level, const std::string& finite, const std::string& energy) {
    AffineWeight w;
    w.level = level;
    w.finite = finite.empty() ? WeightCoords{} : parse_long_list(finite);
    w.energy = rational_from_string(energy);
    return w;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolbox for chainsaw-type quiver modules"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "master random seed (all randomness flows from it)");

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "generate a relation-satisfying module");
    std::string gen_shape, gen_dims, gen_out;
    int gen_N = 1, gen_k = 1;
    gen->add_option("--shape", gen_shape, "chainsaw | chainsaw_fixed | dented_chainsaw | rift")->required();
    gen->add_option("--N", gen_N, "number of columns")->required();
    gen->add_option("--k", gen_k, "cyclic rank (graded shapes)");
    gen->add_option("--dims", gen_dims, "rows r separated by ';', entries d_l comma-separated")->required();
    gen->add_option("--out", gen_out, "output module file")->required();

    // --- check ---
    auto* check = app.add_subcommand("check", "residual summary and generation-stability verdict");
    std::vector<std::string> check_in;
    int jobs = 1;
    check->add_option("inputs", check_in, "module files")->required();
    check->add_option("--jobs", jobs, "parallel workers for multiple inputs");

    // --- map ---
    auto* mapc = app.add_subcommand("map", "apply an inter-quiver map");
    std::string map_name, map_in, map_out;
    mapc->add_option("--name", map_name, "rotate | psi | blowdown | psik | pik")->required();
    mapc->add_option("--in", map_in)->required();
    mapc->add_option("--out", map_out)->required();

    // --- fixed ---
    auto* fixedc = app.add_subcommand("fixed", "fixed-point gauge and eigen-decomposition");
    std::string fixed_in, fixed_out;
    int fixed_k = 1;
    fixedc->add_option("--in", fixed_in)->required();
    fixedc->add_option("--k", fixed_k, "cyclic order")->required();
    fixedc->add_option("--out", fixed_out, "write the graded module with its grading");

    // --- stability ---
    auto* stab = app.add_subcommand("stability", "slope (semi)stability verdict");
    std::string stab_in, stab_flavor = "minus", stab_mode = "semistable";
    stab->add_option("--in", stab_in)->required();
    stab->add_option("--flavor", stab_flavor, "bullet | minus");
    stab->add_option("--mode", stab_mode, "stable | semistable");

    // --- monad ---
    auto* monadc = app.add_subcommand("monad", "build a monad pair / blowup data and verify it");
    std::string monad_builder, monad_in;
    bool monad_dump = false;
    monadc->add_option("--builder", monad_builder, "adhm | stack | weighted | blowup")->required();
    monadc->add_option("--in", monad_in)->required();
    monadc->add_flag("--dump", monad_dump, "emit the full symbolic matrices");

    // --- nakajima ---
    auto* nak = app.add_subcommand("nakajima", "framed dominance / goodness of a cyclic dimension vector");
    std::string nak_v;
    long nak_N = 1;
    int nak_k = 1;
    nak->add_option("--v", nak_v, "comma-separated v_0..v_{k-1}")->required();
    nak->add_option("--N", nak_N)->required();
    nak->add_option("--k", nak_k)->required();

    // --- mult ---
    auto* multc = app.add_subcommand("mult", "weight multiplicity in an integrable module");
    long mult_level = 1, mult_depth = 6;
    int mult_rank = 2;
    std::string mult_lfin, mult_lenergy = "0", mult_nfin, mult_nenergy = "0";
    multc->add_option("--rank", mult_rank, "cyclic rank n (finite part A_{n-1})")->required();
    multc->add_option("--level", mult_level)->required();
    multc->add_option("--lambda", mult_lfin, "finite part of lambda, comma-separated fundamental coords");
    multc->add_option("--lambda-energy", mult_lenergy);
    multc->add_option("--nu", mult_nfin, "finite part of nu");
    multc->add_option("--nu-energy", mult_nenergy);
    multc->add_option("--depth", mult_depth);

    // --- predict ---
    auto* pred = app.add_subcommand("predict", "multiplicity prediction table for (v, N, k, a)");
    std::string pred_v;
    long pred_N = 1, pred_depth = 6;
    int pred_k = 1;
    std::string pred_a = "0";
    pred->add_option("--v", pred_v)->required();
    pred->add_option("--N", pred_N)->required();
    pred->add_option("--k", pred_k)->required();
    pred->add_option("--a", pred_a, "instanton number");
    pred->add_option("--depth", pred_depth);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*gen) {
            QuiverShape shape{kind_from_name(gen_shape), gen_N, gen_k};
            validate_shape(shape);
            DimVector dims = parse_dims(shape, gen_dims);
            QuiverModule m = random_module(dims, seed);
            save_module_file(gen_out, m);
            json params = {{"shape", gen_shape}, {"N", gen_N}, {"k", gen_k}, {"dims", gen_dims}};
            write_manifest("gen", params, seed, {}, {gen_out});
            std::cout << "wrote " << gen_out << "\n";
        } else if (*check) {
            // worker pool over the inputs; results are merged in input order
            std::vector<json> results(check_in.size());
            std::atomic<std::size_t> next{0};
            std::exception_ptr first_error;
            std::mutex err_mu;
            int workers = std::clamp<int>(jobs, 1, static_cast<int>(check_in.size()));
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (std::size_t i; (i = next.fetch_add(1)) < check_in.size();) {
                        try {
                            results[i] = check_one(check_in[i]);
                        } catch (...) {
                            std::lock_guard<std::mutex> lock(err_mu);
                            if (!first_error) first_error = std::current_exception();
                        }
                    }
                });
            for (auto& t : pool) t.join();
            if (first_error) std::rethrow_exception(first_error);
            bool ok = true;
            for (const json& r : results) {
                std::cout << r.dump(2) << "\n";
                if (!r["residuals_zero"].get<bool>()) ok = false;
            }
            if (!ok) return 4;
        } else if (*mapc) {
            QuiverModule m = load_module_file(map_in);
            QuiverModule out;
            if (map_name == "rotate") out = rotate(m);
            else if (map_name == "psi") out = psi_direct_image(m);
            else if (map_name == "blowdown") out = blowdown_pi(m);
            else if (map_name == "psik") out = psi_k(m);
            else if (map_name == "pik") out = pi_k(m);
            else throw DataError("unknown map '" + map_name + "'");
            save_module_file(map_out, out);
            json params = {{"name", map_name}};
            write_manifest("map", params, seed, {map_in}, {map_out});
            std::cout << "wrote " << map_out << "\n";
        } else if (*fixedc) {
            QuiverModule m = load_module_file(fixed_in);
            auto g = find_fixing_gauge(m, fixed_k);
            json out;
            out["fixed"] = static_cast<bool>(g);
            if (g) {
                Eigendecomposition dec = eigendecompose(m, *g, fixed_k);
                out["graded_module"] = module_to_json(dec.graded);
                json grading = json::object();
                for (const auto& [v, P] : dec.grading.basis_change) {
                    json gv;
                    gv["basis"] = mat_to_json(P);
                    gv["sizes"] = dec.grading.block_sizes.at(v);
                    grading[std::to_string(v.l)] = gv;
                }
                out["grading"] = grading;
            }
            if (!fixed_out.empty() && g) {
                std::ofstream f(fixed_out);
                f << out.dump(2) << "\n";
                f.close();
                write_manifest("fixed", {{"k", fixed_k}}, seed, {fixed_in}, {fixed_out});
                std::cout << "wrote " << fixed_out << "\n";
            } else {
                std::cout << out.dump(2) << "\n";
            }
        } else if (*stab) {
            QuiverModule m = load_module_file(stab_in);
            ZetaFlavor flavor = (stab_flavor == "bullet") ? ZetaFlavor::Bullet : ZetaFlavor::Minus;
            SlopeMode mode = (stab_mode == "stable") ? SlopeMode::Stable : SlopeMode::Semistable;
            StabilityParam p = make_zeta(m.dims, flavor);
            SearchBudget budget;
            budget.seed = seed ^ 0x5eedULL;
            StabilityVerdict v = check_slope_stability(m, p, mode, budget);
            std::cout << verdict_to_json(v).dump(2) << "\n";
        } else if (*monadc) {
            if (monad_builder == "adhm") {
                json j = json::parse(read_file(monad_in));
                int d = static_cast<int>(j.at("A").size());
                int n = d > 0 ? static_cast<int>(j.at("p")[0].size()) : static_cast<int>(j.at("q").size());
                Mat a = mat_from_json(j.at("A"), d, d), b = mat_from_json(j.at("B"), d, d);
                Mat p = mat_from_json(j.at("p"), d, n), q = mat_from_json(j.at("q"), n, d);
                MonadPair pair = build_adhm_monad(a, b, p, q);
                PolyMat res = verify_complex(pair);
                if (monad_dump) std::cout << "C:\n" << pair.c.dump() << "D:\n" << pair.d.dump();
                std::cout << "complex_zero: " << (res.is_zero() ? "true" : "false") << "\n";
                if (!res.is_zero()) std::cout << res.dump();
            } else if (monad_builder == "stack" || monad_builder == "weighted") {
                QuiverModule m = load_module_file(monad_in);
                MonadPair pair = (monad_builder == "stack") ? build_stack_monad(m) : build_weighted_monad(m);
                PolyMat res = verify_complex(pair);
                if (monad_dump) std::cout << "C:\n" << pair.c.dump() << "D:\n" << pair.d.dump();
                std::cout << "complex_zero: " << (res.is_zero() ? "true" : "false") << "\n";
                if (!res.is_zero()) std::cout << res.dump();
            } else if (monad_builder == "blowup") {
                QuiverModule m = load_module_file(monad_in);
                BlowupData data = build_blowup_data(m);
                BlowupResiduals res = verify_blowup_identities(data);
                if (monad_dump) {
                    std::cout << "gamma:\n" << data.gamma.dump();
                    std::cout << "gamma':\n" << data.gamma_prime.dump();
                    std::cout << "beta:\n" << data.beta.dump();
                    std::cout << "kappa1:\n" << kappa_dump(data.kappa1, m.shape.N);
                    std::cout << "kappa2:\n" << kappa_dump(data.kappa2, m.shape.N);
                }
                std::cout << "kappa1_gamma_zero: " << res.kappa1_gamma_zero << "\n"
                          << "kappa2_gamma_zero: " << res.kappa2_gamma_zero << "\n"
                          << "middle_in_image: " << res.middle_in_image << "\n";
                if (!res.all_hold()) return 4;
            } else {
                throw DataError("unknown builder '" + monad_builder + "'");
            }
        } else if (*nak) {
            std::vector<long> v = parse_long_list(nak_v);
            bool dom = nakajima_dominance(v, nak_N, nak_k);
            json out;
            out["dominant"] = dom;
            out["w_minus_cv"] = w_minus_cv(v, nak_N, nak_k);
            out["good"] = dom ? json(good_vector(v, nak_N, nak_k)) : json(false);
            std::cout << out.dump(2) << "\n";
        } else if (*multc) {
            AffineWeight lambda = parse_affine_weight(mult_level, mult_lfin, mult_lenergy);
            AffineWeight nu = parse_affine_weight(mult_level, mult_nfin, mult_nenergy);
            MultValue mv = weight_multiplicity(mult_rank, lambda, nu, mult_depth);
            if (mv.truncated)
                std::cout << "truncated (depth cap " << mult_depth << ")\n";
            else
                std::cout << "multiplicity: " << mv.value.get_str() << "\n";
        } else if (*pred) {
            std::vector<long> v = parse_long_list(pred_v);
            LambdaMuAlpha lma = lambda_mu_alpha(v, pred_N, pred_k, rational_from_string(pred_a));
            json out;
            out["lambda_level"] = lma.lambda.level;
            out["lambda_finite"] = lma.lambda.finite;
            out["lambda_energy"] = rational_to_string(lma.lambda.energy);
            out["alpha_integral"] = lma.alpha_integral;
            out["alpha"] = lma.alpha;
            if (!lma.alpha_integral) {
                std::cout << out.dump(2) << "\n";
                std::cout << "alpha is not an integral root combination; no table\n";
                return 4;
            }
            MultTable table = mult_predictions(static_cast<int>(pred_N), lma.lambda, lma.alpha, pred_depth);
            json rows = json::array();
            for (const auto& [beta, mv] : table.entries) {
                json row;
                row["beta"] = beta;
                if (mv.truncated)
                    row["m"] = "truncated";
                else
                    row["m"] = mv.value.get_str();
                rows.push_back(row);
            }
            out["table"] = rows;
            std::cout << out.dump(2) << "\n";
            // aligned text table
            for (const auto& [beta, mv] : table.entries) {
                std::cout << "beta=(";
                for (std::size_t i = 0; i < beta.size(); ++i)
                    std::cout << (i ? "," : "") << beta[i];
                std::cout << ")  m=" << (mv.truncated ? std::string("?") : mv.value.get_str()) << "\n";
            }
        }
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const ComputationError& e) {
        std::cerr << "computation error (" << e.error_class << "): " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
