#pragma once

#include "opnorm/boyd.hpp"
#include "opnorm/core.hpp"

namespace opnorm {

struct SpectralReport {
    double lambda_big2 = 0.0;       // largest singular value of A restricted to 1-perp
    double lambda2_B = 0.0;         // second eigenvalue of the linearized operator B
    double gamma_p = 0.0;           // gamma^p, the top eigenvalue of B
    double contraction_ratio = 0.0; // (p-1) lambda2 / ((r-1) gamma^p)
    bool lambda2_bound_ok = false;      // lambda2 <= 2 mu^{p-2} n^{p(r-1)/r - 1} Lambda2^2
    bool lambda_big2_bound_ok = false;  // Lambda2 <= 3 sqrt(n) sigma + mu (+ diagonal term)
    bool gap_warning = false;           // lambda2 close to gamma^p
};

/// sqrt of the top eigenvalue of P A^T A P with P the projector onto the
/// orthogonal complement of the all-ones vector; power iteration with
/// re-projection every step, relative tolerance tol.
double lambda_big2(const SymMatrix& A, double tol = 1e-8, int max_iter = 50000);

/// Second-largest eigenvalue of B at the converged maximizer v, found by the
/// similarity transform D = diag(v_i^{(r-2)/2}) to the ordinary symmetric
/// problem C = D^{-1} A^T diag(|Av|^{p-2}) A D^{-1}, deflating the top
/// eigenvector D v, then power iteration.
double lambda2_B(const SymMatrix& A, const NormParams& params, const Vec& v, double tol = 1e-8,
                 int max_iter = 50000);

// Also returns the eigenvector candidate mapped back to B coordinates
// (v-orthogonal to v); used to verify the deflation.
std::pair<double, Vec> lambda2_B_with_vector(const SymMatrix& A, const NormParams& params,
                                             const Vec& v, double tol = 1e-8, int max_iter = 50000);

/// Evaluates both spectral inequalities for a converged norm computation and
/// records the contraction ratio. diag_mean/diag_var enter only when the
/// matrix has a nonzero diagonal.
SpectralReport check_bounds(const SymMatrix& A, const NormParams& params,
                            const PowerResult& result, double mu, double sigma2,
                            double diag_mean = 0.0, double diag_var = 0.0);

}  // namespace opnorm
