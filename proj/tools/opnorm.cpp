// Command-line front end: r->p operator norms, CLT experiments, structural
// diagnostics, and the l_r Grothendieck value, over Matrix Market inputs or
// seeded random ensembles.
//
// Exit codes: 0 success, 1 input/config error, 2 structural (reducible),
// 3 numerical (degenerate or no convergence), 4 acceptance threshold violated.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "opnorm/boyd.hpp"
#include "opnorm/diagnostics.hpp"
#include "opnorm/ensembles.hpp"
#include "opnorm/mmio.hpp"
#include "opnorm/oracle.hpp"
#include "opnorm/spectral.hpp"
#include "opnorm/stats.hpp"

namespace {

using nlohmann::json;
using namespace opnorm;

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

int env_threads() {
    const char* s = std::getenv("OPNORM_THREADS");
    if (!s) return 0;
    int v = std::atoi(s);
    return v > 0 ? v : 0;
}

void write_atomic(const std::string& path, const std::string& content) {
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush()) throw ParseError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

template <typename T>
T require_field(const json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key)) throw ParseError("config: missing field " + path + key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError("config: bad value at " + path + key + ": " + e.what());
    }
}

template <typename T>
T optional_field(const json& j, const std::string& path, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError("config: bad value at " + path + key + ": " + e.what());
    }
}

EnsembleSpec parse_ensemble(const json& j, const std::string& path) {
    EnsembleSpec spec;
    spec.family = family_from_string(require_field<std::string>(j, path, "family"));
    spec.n = require_field<int>(j, path, "n");
    spec.mu = optional_field<double>(j, path, "mu", 0.0);
    spec.sigma2 = optional_field<double>(j, path, "sigma2", -1.0);
    spec.seed = optional_field<uint64_t>(j, path, "seed", 0);
    if (j.contains("table")) {
        for (const auto& row : j.at("table")) {
            if (!row.is_array() || row.size() != 2) {
                throw ParseError("config: " + path + "table entries must be [value, prob] pairs");
            }
            spec.table.emplace_back(row[0].get<double>(), row[1].get<double>());
        }
    }
    if (j.contains("diagonal")) {
        const json& d = j.at("diagonal");
        DiagonalLaw law;
        law.family = family_from_string(require_field<std::string>(d, path + "diagonal.", "family"));
        law.mean = optional_field<double>(d, path + "diagonal.", "mean", 0.0);
        law.variance = optional_field<double>(d, path + "diagonal.", "variance", 0.0);
        if (d.contains("table")) {
            for (const auto& row : d.at("table")) {
                law.table.emplace_back(row[0].get<double>(), row[1].get<double>());
            }
        }
        spec.diagonal = law;
    }
    if (j.contains("profile_path")) {
        SymMatrix grid = read_matrix_market(j.at("profile_path").get<std::string>());
        if (grid.n() != spec.n) throw ParseError("config: profile grid dimension != n");
        spec.profile = grid.data();
    }
    return spec;
}

struct CltConfig {
    EnsembleSpec ensemble;
    double r = 2.0, p = 2.0;
    int replicates = 0;
    CltMode mode = CltMode::hom;
    CltOptions options;
    std::string out_csv;
    std::string out_json;
    std::optional<double> thr_mean_abs;
    std::optional<double> thr_variance_dev;
    std::optional<double> thr_ks_pvalue_min;
};

CltConfig load_clt_config(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw ParseError("cannot open config " + config_path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("config parse error in " + config_path + ": " + e.what());
    }
    CltConfig cfg;
    if (!j.contains("ensemble")) throw ParseError("config: missing field ensemble");
    cfg.ensemble = parse_ensemble(j.at("ensemble"), "ensemble.");
    if (j.contains("norm")) {
        cfg.r = require_field<double>(j.at("norm"), "norm.", "r");
        cfg.p = require_field<double>(j.at("norm"), "norm.", "p");
    }
    cfg.replicates = require_field<int>(j, "", "replicates");
    std::string mode = optional_field<std::string>(j, "", "mode", "hom");
    if (mode == "hom") {
        cfg.mode = CltMode::hom;
    } else if (mode == "inhom") {
        cfg.mode = CltMode::inhom;
    } else {
        throw ParseError("config: mode must be hom or inhom");
    }
    cfg.options.power.tol = optional_field<double>(j, "", "tol", 1e-10);
    cfg.options.power.max_iter = optional_field<int>(j, "", "max_iter", 10000);
    if (j.contains("diagnostics")) {
        const json& d = j.at("diagnostics");
        cfg.options.compute_linf = optional_field<bool>(d, "diagnostics.", "linf", true);
        cfg.options.compute_lambda2 = optional_field<bool>(d, "diagnostics.", "lambda2", true);
        cfg.options.lambda2_tol = optional_field<double>(d, "diagnostics.", "lambda2_tol", 1e-6);
    }
    cfg.out_csv = optional_field<std::string>(j, "", "out_csv", "clt.csv");
    cfg.out_json = optional_field<std::string>(j, "", "out_json", "clt_summary.json");
    if (j.contains("thresholds")) {
        const json& t = j.at("thresholds");
        if (t.contains("mean_abs")) cfg.thr_mean_abs = t.at("mean_abs").get<double>();
        if (t.contains("variance_dev")) cfg.thr_variance_dev = t.at("variance_dev").get<double>();
        if (t.contains("ks_pvalue_min")) cfg.thr_ks_pvalue_min = t.at("ks_pvalue_min").get<double>();
    }
    return cfg;
}

int cmd_norm(const std::string& matrix_path, double r, double p, double tol, int max_iter,
             const std::string& dump_path) {
    SymMatrix A = read_matrix_market(matrix_path);
    NormParams params(r, p);
    PowerOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    PowerResult res = compute_norm(A, params, opts);
    std::cout << "gamma=" << fmt(res.gamma) << "\n";
    std::cout << "iterations=" << res.iterations << "\n";
    std::cout << "residual=" << fmt(res.residual) << "\n";
    if (!dump_path.empty()) {
        std::ostringstream os;
        for (double vi : res.v) os << fmt(vi) << "\n";
        write_atomic(dump_path, os.str());
        std::cout << "maximizer_file=" << dump_path << "\n";
    }
    return 0;
}

int cmd_clt(const CltConfig& cfg) {
    NormParams params(cfg.r, cfg.p);
    CltRun run = run_clt_experiment(cfg.ensemble, params, cfg.replicates, cfg.mode, cfg.options);

    std::ostringstream csv;
    write_csv(csv, run);
    write_atomic(cfg.out_csv, csv.str());

    bool thresholds_ok = true;
    nlohmann::ordered_json summary;
    summary["replicates"] = run.summary.replicates;
    summary["mean"] = run.summary.mean;
    summary["variance"] = run.summary.variance;
    summary["ks_distance"] = run.summary.ks_distance;
    summary["ks_pvalue"] = run.summary.ks_pvalue;
    summary["centering"] = run.summary.centering;
    summary["scaling"] = run.summary.scaling;
    summary["n"] = run.meta.n;
    summary["r"] = run.meta.r;
    summary["p"] = run.meta.p;
    summary["mu"] = run.meta.mu;
    summary["sigma2"] = run.meta.sigma2;
    summary["mode"] = cfg.mode == CltMode::hom ? "hom" : "inhom";
    summary["samples"] = run.summary.samples;
    if (cfg.thr_mean_abs || cfg.thr_variance_dev || cfg.thr_ks_pvalue_min) {
        nlohmann::ordered_json checks;
        if (cfg.thr_mean_abs) {
            bool ok = std::abs(run.summary.mean) <= *cfg.thr_mean_abs;
            checks["mean_abs_ok"] = ok;
            thresholds_ok = thresholds_ok && ok;
        }
        if (cfg.thr_variance_dev) {
            bool ok = std::abs(run.summary.variance - 2.0) <= *cfg.thr_variance_dev;
            checks["variance_dev_ok"] = ok;
            thresholds_ok = thresholds_ok && ok;
        }
        if (cfg.thr_ks_pvalue_min) {
            bool ok = run.summary.ks_pvalue > *cfg.thr_ks_pvalue_min;
            checks["ks_pvalue_ok"] = ok;
            thresholds_ok = thresholds_ok && ok;
        }
        checks["all_ok"] = thresholds_ok;
        summary["threshold_checks"] = checks;
    }
    write_atomic(cfg.out_json, summary.dump(2) + "\n");

    std::cout << "replicates=" << run.summary.replicates << "\n";
    std::cout << "mean=" << fmt(run.summary.mean) << "\n";
    std::cout << "variance=" << fmt(run.summary.variance) << "\n";
    std::cout << "ks_distance=" << fmt(run.summary.ks_distance) << "\n";
    std::cout << "ks_pvalue=" << fmt(run.summary.ks_pvalue) << "\n";
    std::cout << "centering=" << fmt(run.summary.centering) << "\n";
    std::cout << "scaling=" << fmt(run.summary.scaling) << "\n";
    std::cout << "csv=" << cfg.out_csv << "\n";
    std::cout << "json=" << cfg.out_json << "\n";
    return thresholds_ok ? 0 : 4;
}

int cmd_diagnose(const std::string& matrix_path, const std::string& config_path, double r, double p,
                 double mu_flag, double tol, int max_iter, int subsets, uint64_t seed, bool as_csv) {
    std::optional<SymMatrix> A;
    double mu = mu_flag;
    double sigma2 = -1.0;
    if (!matrix_path.empty()) {
        A = read_matrix_market(matrix_path);
    } else if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ParseError("cannot open config " + config_path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ParseError("config parse error: " + std::string(e.what()));
        }
        EnsembleSpec spec =
            parse_ensemble(j.contains("ensemble") ? j.at("ensemble") : j, "ensemble.").normalized();
        A = sample(spec);
        if (mu <= 0.0) mu = spec.mu;
        sigma2 = spec.sigma2;
    } else {
        throw ParseError("diagnose: need --matrix or --config");
    }

    const int n = A->n();
    double mu_hat = 0.0, var_hat = 0.0;
    A->offdiag_moments(mu_hat, var_hat);
    if (mu <= 0.0) mu = mu_hat;
    if (sigma2 < 0.0) sigma2 = var_hat;
    if (!(mu > 0.0)) throw DomainError("diagnose: entry mean is zero; pass --mu");
    double K_hat = estimate_K_hat(*A);
    double eps = epsilon_n(n, mu, K_hat);
    double delta = default_delta_n(n, mu, eps, K_hat);

    IrreducibilityReport irr = irreducible(*A);
    RegularityReport reg = almost_regular(*A, mu, eps);
    RegularityReport wb = well_balanced_sampled(*A, mu, eps, delta, subsets, seed);
    reg.wb_samples = wb.wb_samples;
    reg.wb_violations = wb.wb_violations;
    reg.K_hat = K_hat;

    if (!irr.irreducible) {
        std::cout << "irreducible=0\n";
        std::cout << "witness=" << irr.describe() << "\n";
        std::cout << "[regularity]\n";
        std::cout << "eps_achieved=" << fmt(reg.eps_achieved) << "\n";
        std::cout << "eps_target=" << fmt(reg.eps_target) << "\n";
        std::cout << "almost_regular=" << (reg.almost_regular ? 1 : 0) << "\n";
        std::cerr << "error: " << irr.describe() << "\n";
        return 2;
    }

    NormParams params(r, p);
    PowerOptions popts;
    popts.tol = tol;
    popts.max_iter = max_iter;
    PowerResult res = compute_norm(*A, params, popts);
    MaximizerReport mrep = maximizer_bound(*A, params, res.v, mu, K_hat);
    SpectralReport srep = check_bounds(*A, params, res, mu, sigma2);

    if (as_csv) {
        std::cout << "n,r,p,mu,K_hat,eps_achieved,eps_target,almost_regular,wb_samples,"
                     "wb_violations,linf_dist,bound,within_bound,regime,lambda_big2,lambda2_B,"
                     "gamma_p,contraction_ratio,lambda2_bound_ok,lambda_big2_bound_ok,gap_warning\n";
        std::cout << n << "," << fmt(r) << "," << fmt(p) << "," << fmt(mu) << "," << fmt(K_hat)
                  << "," << fmt(reg.eps_achieved) << "," << fmt(reg.eps_target) << ","
                  << (reg.almost_regular ? 1 : 0) << "," << reg.wb_samples << ","
                  << reg.wb_violations << "," << fmt(mrep.linf_dist) << "," << fmt(mrep.bound)
                  << "," << (mrep.within_bound ? 1 : 0) << ","
                  << (mrep.regime == MaximizerReport::Regime::p_lt_r ? "p_lt_r" : "p_eq_r") << ","
                  << fmt(srep.lambda_big2) << "," << fmt(srep.lambda2_B) << ","
                  << fmt(srep.gamma_p) << "," << fmt(srep.contraction_ratio) << ","
                  << (srep.lambda2_bound_ok ? 1 : 0) << "," << (srep.lambda_big2_bound_ok ? 1 : 0)
                  << "," << (srep.gap_warning ? 1 : 0) << "\n";
        return 0;
    }

    std::cout << "irreducible=1\n";
    std::cout << "[regularity]\n";
    std::cout << "eps_achieved=" << fmt(reg.eps_achieved) << "\n";
    std::cout << "eps_target=" << fmt(reg.eps_target) << "\n";
    std::cout << "almost_regular=" << (reg.almost_regular ? 1 : 0) << "\n";
    std::cout << "wb_samples=" << reg.wb_samples << "\n";
    std::cout << "wb_violations=" << reg.wb_violations << "\n";
    std::cout << "K_hat=" << fmt(reg.K_hat) << "\n";
    std::cout << "[maximizer]\n";
    std::cout << "linf_dist=" << fmt(mrep.linf_dist) << "\n";
    std::cout << "bound=" << fmt(mrep.bound) << "\n";
    std::cout << "within_bound=" << (mrep.within_bound ? 1 : 0) << "\n";
    std::cout << "regime=" << (mrep.regime == MaximizerReport::Regime::p_lt_r ? "p_lt_r" : "p_eq_r")
              << "\n";
    std::cout << "[spectral]\n";
    std::cout << "lambda_big2=" << fmt(srep.lambda_big2) << "\n";
    std::cout << "lambda2_B=" << fmt(srep.lambda2_B) << "\n";
    std::cout << "gamma_p=" << fmt(srep.gamma_p) << "\n";
    std::cout << "contraction_ratio=" << fmt(srep.contraction_ratio) << "\n";
    std::cout << "lambda2_bound_ok=" << (srep.lambda2_bound_ok ? 1 : 0) << "\n";
    std::cout << "lambda_big2_bound_ok=" << (srep.lambda_big2_bound_ok ? 1 : 0) << "\n";
    std::cout << "gap_warning=" << (srep.gap_warning ? 1 : 0) << "\n";
    return 0;
}

int cmd_grothendieck(const std::string& matrix_path, double r, double tol, int max_iter) {
    SymMatrix A = read_matrix_market(matrix_path);
    PowerOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    double m = grothendieck_mr(A, r, opts);
    std::cout << "m_r=" << fmt(m) << "\n";
    return 0;
}

int cmd_derivcheck(int n, double mu, double r, double p, double h) {
    NormParams params(r, p);
    DerivCheckReport rep = derivative_check(n, mu, params, h);
    std::cout << "grad_fd=" << fmt(rep.grad_fd) << "\n";
    std::cout << "grad_theory=" << fmt(rep.grad_theory) << "\n";
    std::cout << "hess_diag_fd=" << fmt(rep.hess_diag_fd) << "\n";
    std::cout << "hess_diag_theory=" << fmt(rep.hess_diag_theory) << "\n";
    std::cout << "rel_err_grad=" << fmt(rep.rel_err_grad) << "\n";
    std::cout << "rel_err_hess=" << fmt(rep.rel_err_hess) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"r->p operator norms of symmetric nonnegative matrices"};
    app.require_subcommand(1);

    std::string matrix_path, config_path, dump_path, out_prefix;
    double r = 2.0, p = 2.0, tol = 1e-10, h = 1e-3, mu = 0.0;
    int max_iter = 10000, n = 200, subsets = 200;
    uint64_t seed = 1;
    int replicates_override = -1;
    long long seed_override = -1;
    std::string mode_override;
    bool as_csv = false;

    CLI::App* c_norm = app.add_subcommand("norm", "compute ||A||_{r->p} and the maximizer");
    c_norm->add_option("--matrix", matrix_path, "Matrix Market file")->required();
    c_norm->add_option("--r", r, "row exponent r")->required();
    c_norm->add_option("--p", p, "column exponent p")->required();
    c_norm->add_option("--tol", tol, "stopping tolerance");
    c_norm->add_option("--max-iter", max_iter, "iteration budget");
    c_norm->add_option("--dump-maximizer", dump_path, "write the maximizer to this file");

    CLI::App* c_clt = app.add_subcommand("clt", "Monte Carlo normality experiment");
    c_clt->add_option("--config", config_path, "JSON config")->required();
    c_clt->add_option("--replicates", replicates_override, "override replicate count");
    c_clt->add_option("--seed", seed_override, "override master seed");
    c_clt->add_option("--r", r, "override r");
    c_clt->add_option("--p", p, "override p");
    c_clt->add_option("--tol", tol, "override tolerance");
    c_clt->add_option("--max-iter", max_iter, "override iteration budget");
    c_clt->add_option("--mode", mode_override, "hom or inhom");
    c_clt->add_option("--out", out_prefix, "output prefix (writes PREFIX.csv, PREFIX.json)");

    CLI::App* c_diag = app.add_subcommand("diagnose", "regularity/maximizer/spectral reports");
    c_diag->add_option("--matrix", matrix_path, "Matrix Market file");
    c_diag->add_option("--config", config_path, "ensemble JSON config");
    c_diag->add_option("--r", r, "row exponent r");
    c_diag->add_option("--p", p, "column exponent p");
    c_diag->add_option("--mu", mu, "entry mean (default: estimated)");
    c_diag->add_option("--tol", tol, "norm tolerance");
    c_diag->add_option("--max-iter", max_iter, "iteration budget");
    c_diag->add_option("--subsets", subsets, "well-balancedness probes");
    c_diag->add_option("--seed", seed, "subset sampling seed");
    c_diag->add_flag("--csv", as_csv, "emit one CSV row instead of key=value blocks");

    CLI::App* c_groth = app.add_subcommand("grothendieck", "M_r(A) = ||A||_{r->r*}, r >= 2");
    c_groth->add_option("--matrix", matrix_path, "Matrix Market file")->required();
    c_groth->add_option("--r", r, "exponent r >= 2")->required();
    c_groth->add_option("--tol", tol, "stopping tolerance");
    c_groth->add_option("--max-iter", max_iter, "iteration budget");

    CLI::App* c_deriv = app.add_subcommand("derivcheck", "finite-difference derivative constants");
    c_deriv->add_option("--n", n, "dimension");
    c_deriv->add_option("--mu", mu, "entry mean")->required();
    c_deriv->add_option("--r", r, "row exponent r")->required();
    c_deriv->add_option("--p", p, "column exponent p")->required();
    c_deriv->add_option("--step", h, "finite-difference step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    try {
        if (c_norm->parsed()) return cmd_norm(matrix_path, r, p, tol, max_iter, dump_path);
        if (c_clt->parsed()) {
            CltConfig cfg = load_clt_config(config_path);
            if (replicates_override > 0) cfg.replicates = replicates_override;
            if (seed_override >= 0) cfg.ensemble.seed = static_cast<uint64_t>(seed_override);
            if (c_clt->count("--r")) cfg.r = r;
            if (c_clt->count("--p")) cfg.p = p;
            if (c_clt->count("--tol")) cfg.options.power.tol = tol;
            if (c_clt->count("--max-iter")) cfg.options.power.max_iter = max_iter;
            if (!mode_override.empty()) {
                if (mode_override == "hom") {
                    cfg.mode = CltMode::hom;
                } else if (mode_override == "inhom") {
                    cfg.mode = CltMode::inhom;
                } else {
                    throw ParseError("--mode must be hom or inhom");
                }
            }
            if (!out_prefix.empty()) {
                cfg.out_csv = out_prefix + ".csv";
                cfg.out_json = out_prefix + ".json";
            }
            cfg.options.threads = env_threads();
            return cmd_clt(cfg);
        }
        if (c_diag->parsed()) {
            return cmd_diagnose(matrix_path, config_path, r, p, mu, tol, max_iter, subsets, seed,
                                as_csv);
        }
        if (c_groth->parsed()) return cmd_grothendieck(matrix_path, r, tol, max_iter);
        if (c_deriv->parsed()) return cmd_derivcheck(n, mu, r, p, h);
    } catch (const ReducibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
