#include "opnorm/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

#include "opnorm/diagnostics.hpp"
#include "opnorm/rng.hpp"
#include "opnorm/spectral.hpp"

namespace opnorm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr uint64_t kReplicateTag = 0x52455053ull;

double shift_coefficient(const NormParams& params) {
    return params.p - 1.0 + 1.0 / (params.r - 1.0);
}

bool accepts_power_iteration(const SymMatrix& A) {
    if (A.n() == 2 && A(0, 1) > 0.0) return true;
    return irreducible(A).irreducible;
}

}  // namespace

double alpha_n(int n, double mu, double sigma2, const NormParams& params, double zeta) {
    if (!(mu > 0.0)) throw DomainError("alpha_n: mu must be positive");
    return (n - 1) * mu + zeta + shift_coefficient(params) * sigma2 / (2.0 * mu);
}

double alpha_n_inhom(int n, double mu, double sigma2_sum, const NormParams& params) {
    if (!(mu > 0.0)) throw DomainError("alpha_n_inhom: mu must be positive");
    return (n - 1) * mu +
           shift_coefficient(params) * sigma2_sum / (static_cast<double>(n) * n * mu);
}

double eta(const SymMatrix& A, const NormParams& params) {
    Vec w = apply_W(A, params, uniform_start(A.n(), params.r));
    return lq_norm(params.p, matvec(A, w));
}

double clt_statistic(const SymMatrix& A, const NormParams& params, double mu, double sigma2,
                     CltMode mode, double sigma2_sum, const PowerOptions& opts, double zeta) {
    if (!(mu > 0.0)) throw DomainError("clt_statistic: mu must be positive");
    const int n = A.n();
    PowerResult res = compute_norm(A, params, opts);
    double gamma_scaled =
        std::pow(static_cast<double>(n), -(1.0 / params.p - 1.0 / params.r)) * res.gamma;
    if (mode == CltMode::hom) {
        if (!(sigma2 > 0.0)) throw DomainError("clt_statistic: sigma must be positive");
        return (gamma_scaled - alpha_n(n, mu, sigma2, params, zeta)) / std::sqrt(sigma2);
    }
    if (!(sigma2_sum > 0.0)) throw DomainError("clt_statistic: sigma2_sum must be positive");
    // The inhomogeneous fluctuation scale reduces to sigma for a constant
    // variance profile (sum over i<j of sigma^2 is then n(n-1) sigma^2 / 2).
    return static_cast<double>(n) *
           (gamma_scaled - zeta - alpha_n_inhom(n, mu, sigma2_sum, params)) /
           std::sqrt(2.0 * sigma2_sum);
}

CltRun run_clt_experiment(const EnsembleSpec& raw_spec, const NormParams& params, int replicates,
                          CltMode mode, const CltOptions& opts) {
    if (replicates < 2) throw DomainError("run_clt_experiment: replicates must be >= 2");
    const EnsembleSpec spec = raw_spec.normalized();
    const int n = spec.n;
    const double sigma = std::sqrt(spec.sigma2);

    double sigma2_sum = 0.0;
    if (spec.profile) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double m = (*spec.profile)[static_cast<size_t>(i) * n + j];
                sigma2_sum += m * m * spec.sigma2;
            }
        }
    } else {
        sigma2_sum = 0.5 * static_cast<double>(n) * (n - 1) * spec.sigma2;
    }

    const double zeta = spec.diagonal ? spec.diagonal->mean : 0.0;
    const double centering = mode == CltMode::hom
                                 ? alpha_n(n, spec.mu, spec.sigma2, params, zeta)
                                 : zeta + alpha_n_inhom(n, spec.mu, sigma2_sum, params);
    const double scaling =
        mode == CltMode::hom ? sigma : std::sqrt(2.0 * sigma2_sum) / static_cast<double>(n);
    if (!(scaling > 0.0)) throw DomainError("run_clt_experiment: zero fluctuation scale");
    const double nscale = std::pow(static_cast<double>(n), -(1.0 / params.p - 1.0 / params.r));
    const double uniform_entry = std::pow(static_cast<double>(n), -1.0 / params.r);

    CltRun run;
    run.meta = CltRunMeta{n, params.r, params.p, spec.mu, spec.sigma2};
    run.rows.resize(replicates);

    auto run_one = [&](int rep) {
        SymMatrix A = SymMatrix::zero(1);
        uint64_t used_seed = 0;
        bool ok = false;
        for (int attempt = 0; attempt < 4; ++attempt) {
            used_seed = mix64(spec.seed, kReplicateTag, static_cast<uint64_t>(rep) * 4 + attempt);
            EnsembleSpec rspec = spec;
            rspec.seed = used_seed;
            A = sample(rspec);
            if (accepts_power_iteration(A)) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ReducibleError("run_clt_experiment: replicate " + std::to_string(rep) +
                                 " failed the irreducibility check 4 times (counted failure)");
        }
        PowerResult res = compute_norm(A, params, opts.power);
        RepRecord rec;
        rec.replicate = rep;
        rec.seed = used_seed;
        rec.irreducible_flag = true;
        rec.gamma = res.gamma;
        rec.gamma_scaled = nscale * res.gamma;
        rec.alpha = centering;
        rec.statistic = (rec.gamma_scaled - centering) / scaling;
        rec.eta_value = eta(A, params);
        rec.eta_gap = std::abs(res.gamma - rec.eta_value);
        if (opts.compute_linf) {
            double worst = 0.0;
            for (double vi : res.v) worst = std::max(worst, std::abs(vi - uniform_entry));
            rec.linf_dist = worst;
        } else {
            rec.linf_dist = std::nan("");
        }
        rec.lambda_big2 = opts.compute_lambda2
                              ? lambda_big2(A, opts.lambda2_tol, opts.lambda2_max_iter)
                              : std::nan("");
        run.rows[rep] = rec;
    };

    int threads = opts.threads > 0 ? opts.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, replicates));

    if (threads == 1) {
        for (int rep = 0; rep < replicates; ++rep) run_one(rep);
    } else {
        std::atomic<int> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                int rep = next.fetch_add(1);
                if (rep >= replicates || failed.load()) return;
                try {
                    run_one(rep);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }

    CltSummary& s = run.summary;
    s.replicates = replicates;
    s.centering = centering;
    s.scaling = scaling;
    s.samples.reserve(replicates);
    for (const RepRecord& rec : run.rows) s.samples.push_back(rec.statistic);
    double mean = 0.0;
    for (double x : s.samples) mean += x;
    mean /= replicates;
    double var = 0.0;
    for (double x : s.samples) var += (x - mean) * (x - mean);
    var /= (replicates - 1);
    s.mean = mean;
    s.variance = var;
    s.ks_distance = ks_distance(s.samples, 0.0, 2.0);
    s.ks_pvalue = ks_pvalue(s.ks_distance, replicates);
    return run;
}

DerivCheckReport derivative_check(int n, double mu, const NormParams& params, double h) {
    if (n < 2) throw DomainError("derivative_check: n must be >= 2");
    if (!(mu > 0.0)) throw DomainError("derivative_check: mu must be positive");
    if (!(h > 0.0) || h >= mu) throw DomainError("derivative_check: need 0 < h < mu");

    auto eta_at = [&](double delta) {
        std::vector<double> a(static_cast<size_t>(n) * n, mu);
        for (int i = 0; i < n; ++i) a[static_cast<size_t>(i) * n + i] = 0.0;
        a[1] = mu + delta;  // entry (0,1)
        a[static_cast<size_t>(n)] = mu + delta;  // mirror entry (1,0)
        return eta(SymMatrix(n, std::move(a)), params);
    };

    const double eta0 = eta_at(0.0);
    auto fd = [&](double step, double& grad, double& hess) {
        double ep = eta_at(step);
        double em = eta_at(-step);
        grad = (ep - em) / (2.0 * step);
        hess = (ep - 2.0 * eta0 + em) / (step * step);
    };
    double grad_h = 0.0, hess_h = 0.0, grad_h2 = 0.0, hess_h2 = 0.0;
    fd(h, grad_h, hess_h);
    fd(0.5 * h, grad_h2, hess_h2);
    if (std::abs(grad_h - grad_h2) > 0.1 * std::max(std::abs(grad_h2), 1e-300)) {
        throw DomainError("derivative_check: step h is unstable (half-step gradient disagrees by >10%)");
    }

    const double scale = std::pow(static_cast<double>(n), 1.0 / params.p - 1.0 / params.r - 1.0);
    DerivCheckReport rep;
    rep.grad_fd = grad_h;
    rep.grad_theory = 2.0 * scale;
    rep.hess_diag_fd = hess_h;
    rep.hess_diag_theory = 2.0 * shift_coefficient(params) * scale / (n * mu);
    rep.rel_err_grad = std::abs(rep.grad_fd - rep.grad_theory) / std::abs(rep.grad_theory);
    rep.rel_err_hess = std::abs(rep.hess_diag_fd - rep.hess_diag_theory) / std::abs(rep.hess_diag_theory);
    return rep;
}

double grothendieck_mr(const SymMatrix& A, double r, const PowerOptions& opts) {
    if (!(r >= 2.0)) throw DomainError("grothendieck_mr: r must be >= 2");
    NormParams params(r, holder_conjugate(r));
    return compute_norm(A, params, opts).gamma;
}

double normal_cdf(double x, double mean, double variance) {
    return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * variance));
}

double ks_distance(const std::vector<double>& samples, double mean, double variance) {
    if (samples.empty()) throw DomainError("ks_distance: no samples");
    std::vector<double> s = samples;
    std::sort(s.begin(), s.end());
    const double m = static_cast<double>(s.size());
    double d = 0.0;
    for (size_t i = 0; i < s.size(); ++i) {
        double F = normal_cdf(s[i], mean, variance);
        d = std::max(d, F - static_cast<double>(i) / m);
        d = std::max(d, static_cast<double>(i + 1) / m - F);
    }
    return d;
}

double ks_pvalue(double distance, int num_samples) {
    if (num_samples < 1) throw DomainError("ks_pvalue: need samples");
    double lambda = std::sqrt(static_cast<double>(num_samples)) * distance;
    if (lambda < 1e-10) return 1.0;
    if (lambda < 1.18) {
        double t = std::exp(-kPi * kPi / (8.0 * lambda * lambda));
        double sum = t * (1.0 + std::pow(t, 8.0) + std::pow(t, 24.0));
        double q = 1.0 - std::sqrt(2.0 * kPi) / lambda * sum;
        return std::clamp(q, 0.0, 1.0);
    }
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = 2.0 * (k % 2 == 1 ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

void write_csv(std::ostream& out, const CltRun& run) {
    out << "replicate,seed,n,r,p,mu,sigma2,gamma_scaled,alpha_n,statistic,eta_gap,linf_dist,"
           "lambda_big2,irreducible\n";
    char buf[512];
    for (const RepRecord& rec : run.rows) {
        std::snprintf(buf, sizeof(buf),
                      "%d,%llu,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                      rec.replicate, static_cast<unsigned long long>(rec.seed), run.meta.n,
                      run.meta.r, run.meta.p, run.meta.mu, run.meta.sigma2, rec.gamma_scaled,
                      rec.alpha, rec.statistic, rec.eta_gap, rec.linf_dist, rec.lambda_big2,
                      rec.irreducible_flag ? 1 : 0);
        out << buf;
    }
}

}  // namespace opnorm
