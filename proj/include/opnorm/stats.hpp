#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "opnorm/boyd.hpp"
#include "opnorm/core.hpp"
#include "opnorm/ensembles.hpp"

namespace opnorm {

enum class CltMode { hom, inhom };

struct CltSummary {
    int replicates = 0;
    std::vector<double> samples;  // centered/scaled statistic per replicate
    double mean = 0.0;
    double variance = 0.0;      // unbiased sample variance
    double ks_distance = 0.0;   // sup distance to the Normal(0,2) CDF
    double ks_pvalue = 0.0;     // asymptotic Kolmogorov p-value
    double centering = 0.0;     // alpha_n
    double scaling = 0.0;       // divisor applied to the centered norm
};

struct RepRecord {
    int replicate = 0;
    uint64_t seed = 0;
    double gamma = 0.0;         // ||A||_{r->p} as computed
    double gamma_scaled = 0.0;  // n^{-(1/p-1/r)} gamma
    double alpha = 0.0;
    double statistic = 0.0;
    double eta_value = 0.0;
    double eta_gap = 0.0;  // |gamma - eta|
    double linf_dist = 0.0;
    double lambda_big2 = 0.0;
    bool irreducible_flag = false;
};

struct CltOptions {
    PowerOptions power;
    bool compute_linf = true;
    bool compute_lambda2 = true;
    double lambda2_tol = 1e-6;
    int lambda2_max_iter = 20000;
    int threads = 0;  // 0 = hardware concurrency
};

struct CltRunMeta {
    int n = 0;
    double r = 0.0, p = 0.0, mu = 0.0, sigma2 = 0.0;
};

struct CltRun {
    CltRunMeta meta;
    CltSummary summary;
    std::vector<RepRecord> rows;
};

/// CLT centering (n-1) mu + zeta + (p-1 + 1/(r-1)) sigma2 / (2 mu).
double alpha_n(int n, double mu, double sigma2, const NormParams& params, double zeta = 0.0);

/// Inhomogeneous centering with sigma2_sum = sum_{i<j} sigma^2(i,j):
/// (n-1) mu + (p-1 + 1/(r-1)) sigma2_sum / (n^2 mu).
double alpha_n_inhom(int n, double mu, double sigma2_sum, const NormParams& params);

/// One nonlinear power step from the uniform vector:
/// ||A Psi_{r*}(A^T Psi_p(A 1))||_p / ||Psi_{r*}(A^T Psi_p(A 1))||_r.
double eta(const SymMatrix& A, const NormParams& params);

/// hom:   (n^{-(1/p-1/r)} gamma - alpha_n) / sigma
/// inhom: n (n^{-(1/p-1/r)} gamma - alpha_n_inhom) / sqrt(2 sigma2_sum),
/// which matches the homogeneous statistic up to O(1/n) when the profile is
/// constant. zeta shifts the centering when the diagonal entries have a law
/// with positive mean.
double clt_statistic(const SymMatrix& A, const NormParams& params, double mu, double sigma2,
                     CltMode mode, double sigma2_sum = 0.0, const PowerOptions& opts = {},
                     double zeta = 0.0);

/// Monte Carlo harness: `replicates` independent matrices on seed-derived
/// streams, one statistic each, aggregated into a CltSummary. A replicate
/// whose sample fails the irreducibility check is resampled at most 3 times,
/// then the run aborts. Replicates execute in parallel; results are
/// reproducible regardless of the worker count.
CltRun run_clt_experiment(const EnsembleSpec& spec, const NormParams& params, int replicates,
                          CltMode mode, const CltOptions& opts = {});

struct DerivCheckReport {
    double grad_fd = 0.0;
    double grad_theory = 0.0;  // 2 n^{1/p - 1/r - 1}
    double hess_diag_fd = 0.0;
    double hess_diag_theory = 0.0;  // 2 (p-1 + 1/(r-1)) n^{1/p-1/r-1} / (n mu)
    double rel_err_grad = 0.0;
    double rel_err_hess = 0.0;
};

/// Central finite differences of eta at mu (J_n - I_n) in one upper-triangle
/// coordinate (the mirror entry moves with it). An internal half-step
/// comparison rejects h when the gradient estimates disagree by more than 10%.
DerivCheckReport derivative_check(int n, double mu, const NormParams& params, double h);

/// M_r(A) = ||A||_{r -> r*} for r >= 2 (and nonnegative A with irreducible A^T A).
double grothendieck_mr(const SymMatrix& A, double r, const PowerOptions& opts = {});

// Normal(mean, variance) CDF, Kolmogorov-Smirnov sup distance against it, and
// the asymptotic Kolmogorov p-value.
double normal_cdf(double x, double mean, double variance);
double ks_distance(const std::vector<double>& samples, double mean, double variance);
double ks_pvalue(double distance, int num_samples);

/// CSV rows, column order pinned:
/// replicate,seed,n,r,p,mu,sigma2,gamma_scaled,alpha_n,statistic,eta_gap,linf_dist,lambda_big2,irreducible
void write_csv(std::ostream& out, const CltRun& run);

}  // namespace opnorm
